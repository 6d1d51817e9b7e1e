//! Triangulation of moving objects: split the time domain where the carrier
//! arrangement changes, triangulate each piece while following every vertex
//! through time, then join pieces that continue one another.

mod carrier;
mod merge;
mod partition;
mod recover;
mod triangulate;

use thiserror::Error;

use crate::exact_arith::{rat, Rational};
use crate::planar_geom::Triangle;
use crate::st_model::{snapshot_atomic, validate_geometric, AtomicObject, GeometricObject, ModelError, TimeInterval};

pub use carrier::{moving_carrier, pair_events, triple_events, MovingCarrier, MovingSegment};
pub use merge::merge;
pub use partition::{partition, sample_time, EventList};
pub use recover::recover_affinity;
pub use triangulate::triangulate_steps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("degenerate moving segment")]
    DegenerateSegment,
    #[error("reference corners do not span the plane")]
    SingularFrame,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Canonical triangulation of a moving object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    pub atoms: Vec<AtomicObject>,
    pub partition: Vec<TimeInterval>,
}

impl NormalForm {
    pub fn to_object(&self, id: impl Into<String>) -> GeometricObject {
        GeometricObject::new(id, self.atoms.clone())
    }

    /// Atoms whose domain contains `tau`.
    pub fn alive_at(&self, tau: &Rational) -> impl Iterator<Item = &AtomicObject> + '_ {
        let tau = tau.clone();
        self.atoms.iter().filter(move |a| a.domain.contains(&tau))
    }

    /// Canonical snapshot triangles at `tau`, sorted.
    pub fn snapshot(&self, tau: &Rational) -> Vec<Triangle> {
        let mut out: Vec<Triangle> =
            self.atoms.iter().filter_map(|a| snapshot_atomic(a, tau)).map(|t| t.canonical()).collect();
        out.sort();
        out
    }
}

/// Default accuracy for snapshots at irrational event times.
pub fn default_epsilon() -> Rational {
    rat(1, 1 << 32)
}

pub fn t_st(g: &GeometricObject) -> Result<NormalForm, PipelineError> {
    t_st_with(g, &default_epsilon())
}

pub fn t_st_with(g: &GeometricObject, eps: &Rational) -> Result<NormalForm, PipelineError> {
    validate_geometric(g)?;
    let chi = partition(g);
    let atoms = triangulate_steps(g, &chi, eps);
    if chi.times.len() <= 1 {
        let mut atoms = atoms;
        atoms.sort_by(merge::canonical_cmp);
        return Ok(NormalForm { atoms, partition: chi.elements() });
    }
    Ok(merge(atoms, &chi))
}

/// Whether both objects have the same normal form, ignoring object ids.
pub fn normal_form_equal(g1: &GeometricObject, g2: &GeometricObject) -> Result<bool, PipelineError> {
    let anonymous = |nf: NormalForm| NormalForm {
        atoms: nf.atoms.into_iter().map(|a| AtomicObject { source_id: None, ..a }).collect(),
        partition: nf.partition,
    };
    Ok(anonymous(t_st(g1)?) == anonymous(t_st(g2)?))
}
