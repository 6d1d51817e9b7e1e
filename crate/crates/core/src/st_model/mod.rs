//! Atomic and geometric objects moving under time-dependent affinities,
//! their snapshots, and validity checks.

mod affinity;
mod interval;
pub mod json;

use std::fmt;

use thiserror::Error;

use crate::exact_arith::{Rational, TimeValue};
use crate::planar_geom::{StaticAffinity, Triangle};

pub use affinity::{MovingPoint, TimeDepAffinity};
pub use interval::TimeInterval;

/// A reference triangle moving under `transform` during `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicObject {
    pub triangle: Triangle,
    pub domain: TimeInterval,
    pub transform: TimeDepAffinity,
    /// Id of the geometric object the atom was derived from.
    pub source_id: Option<String>,
    /// Set when the triangle was rounded from an irrational event time.
    pub approximate: bool,
}

impl AtomicObject {
    pub fn new(triangle: Triangle, domain: TimeInterval, transform: TimeDepAffinity) -> Self {
        AtomicObject { triangle, domain, transform, source_id: None, approximate: false }
    }

    /// The same atom seen through the static map `alpha`.
    pub fn then_static(&self, alpha: &StaticAffinity) -> Self {
        AtomicObject { transform: self.transform.then_static(alpha), ..self.clone() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeometricObject {
    pub id: String,
    pub atoms: Vec<AtomicObject>,
}

impl GeometricObject {
    pub fn new(id: impl Into<String>, atoms: Vec<AtomicObject>) -> Self {
        GeometricObject { id: id.into(), atoms }
    }

    pub fn then_static(&self, alpha: &StaticAffinity) -> Self {
        GeometricObject { id: self.id.clone(), atoms: self.atoms.iter().map(|a| a.then_static(alpha)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyDomain,
    PoleInDomain { entry: &'static str, at: TimeValue },
    SingularAt(TimeValue),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyDomain => write!(f, "empty-domain"),
            Violation::PoleInDomain { entry, at } => write!(f, "pole-in-domain ({entry} at {at})"),
            Violation::SingularAt(t) => write!(f, "singular-at-{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("geometric object has no atoms")]
    EmptyObject,
    #[error("atom {atom} is invalid: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    InvalidAtom { atom: usize, violations: Vec<Violation> },
}

/// Checks that no coefficient has a pole and the determinant does not
/// vanish anywhere in the domain.
pub fn validate_atomic(o: &AtomicObject) -> Result<(), Vec<Violation>> {
    if !o.domain.is_well_formed() {
        return Err(vec![Violation::EmptyDomain]);
    }
    let (poles, singular) = o.transform.defects_on(&o.domain);
    let mut v: Vec<Violation> = poles.into_iter().map(|(entry, at)| Violation::PoleInDomain { entry, at }).collect();
    v.extend(singular.into_iter().map(Violation::SingularAt));
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

pub fn validate_geometric(g: &GeometricObject) -> Result<(), ModelError> {
    for (i, a) in g.atoms.iter().enumerate() {
        validate_atomic(a).map_err(|violations| ModelError::InvalidAtom { atom: i, violations })?;
    }
    Ok(())
}

/// The moved triangle at `tau`, or `None` outside the domain. The atom must
/// be valid.
pub fn snapshot_atomic(o: &AtomicObject, tau: &Rational) -> Option<Triangle> {
    if !o.domain.contains(tau) {
        return None;
    }
    let f = o.transform.at(tau).expect("valid atom has no pole in its domain");
    Some(f.apply_triangle(&o.triangle))
}

pub fn snapshot_geometric(g: &GeometricObject, tau: &Rational) -> Vec<Triangle> {
    g.atoms.iter().filter_map(|a| snapshot_atomic(a, tau)).collect()
}

/// Smallest interval containing every atom's domain.
pub fn time_domain(g: &GeometricObject) -> Result<TimeInterval, ModelError> {
    let mut it = g.atoms.iter();
    let first = it.next().ok_or(ModelError::EmptyObject)?;
    let mut d = first.domain.clone();
    for a in it {
        let o = &a.domain;
        match o.lo.cmp(&d.lo) {
            std::cmp::Ordering::Less => {
                d.lo = o.lo.clone();
                d.closed_lo = o.closed_lo;
            }
            std::cmp::Ordering::Equal => d.closed_lo |= o.closed_lo,
            std::cmp::Ordering::Greater => {}
        }
        match o.hi.cmp(&d.hi) {
            std::cmp::Ordering::Greater => {
                d.hi = o.hi.clone();
                d.closed_hi = o.closed_hi;
            }
            std::cmp::Ordering::Equal => d.closed_hi |= o.closed_hi,
            std::cmp::Ordering::Less => {}
        }
    }
    Ok(d)
}

/// Trajectories of the three reference corners.
pub fn moving_corners(o: &AtomicObject) -> [MovingPoint; 3] {
    o.triangle.corners().clone().map(|c| {
        let (fx, fy) = o.transform.trajectory(&c);
        MovingPoint { fx, fy, domain: o.domain.clone() }
    })
}
