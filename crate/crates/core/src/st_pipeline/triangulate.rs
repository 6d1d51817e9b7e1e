use std::collections::HashMap;

use crate::exact_arith::{Rational, RationalFunction, TimeValue};
use crate::planar_geom::Triangle;
use crate::spatial_tri::{triangulate_snapshot, CornerRef, LineRef, VertexSource};
use crate::st_model::{AtomicObject, GeometricObject, TimeDepAffinity, TimeInterval};

use super::carrier::line_through;
use super::partition::{sample_time, EventList};
use super::recover::recover_from;

type Moving = (RationalFunction, RationalFunction);

/// Replays snapshot vertex recipes on the moving corners of the atoms.
struct Replay<'a> {
    corners: &'a [[Moving; 3]],
    memo: HashMap<VertexSource, Moving>,
}

impl Replay<'_> {
    fn corner(&self, c: CornerRef) -> &Moving {
        &self.corners[c.triangle][c.corner]
    }

    fn line(&self, l: LineRef) -> [RationalFunction; 3] {
        let p = self.corner(l.0);
        let q = self.corner(l.1);
        line_through((&p.0, &p.1), (&q.0, &q.1))
    }

    fn vertex(&mut self, s: &VertexSource) -> Moving {
        if let Some(m) = self.memo.get(s) {
            return m.clone();
        }
        let m = match s {
            VertexSource::Corner(c) => self.corner(*c).clone(),
            VertexSource::Crossing(l1, l2) => {
                let [a1, b1, c1] = self.line(*l1);
                let [a2, b2, c2] = self.line(*l2);
                let det = &(&a1 * &b2) - &(&a2 * &b1);
                let x = &(&c1 * &b2) - &(&c2 * &b1);
                let y = &(&a1 * &c2) - &(&a2 * &c1);
                let x = x.checked_div(&det).expect("lines cross at the sample time");
                let y = y.checked_div(&det).expect("lines cross at the sample time");
                (x, y)
            }
            VertexSource::Mean(parts) => {
                let mut sx = RationalFunction::zero();
                let mut sy = RationalFunction::zero();
                for p in parts {
                    let (x, y) = self.vertex(p);
                    sx = &sx + &x;
                    sy = &sy + &y;
                }
                let inv = Rational::new(1.into(), parts.len().into());
                (sx.scale(&inv), sy.scale(&inv))
            }
        };
        self.memo.insert(s.clone(), m.clone());
        m
    }
}

fn tagged(mut a: AtomicObject, g: &GeometricObject, approximate: bool) -> AtomicObject {
    a.source_id = Some(g.id.clone());
    a.approximate = approximate;
    a
}

/// Triangulation of the snapshot at an event time. Irrational times are
/// replaced by a rational within `eps` and the atoms flagged approximate.
fn event_atoms(g: &GeometricObject, tau: &TimeValue, eps: &Rational) -> Vec<AtomicObject> {
    let (at, approximate) = match tau {
        TimeValue::Exact(r) => (r.clone(), false),
        _ => (tau.approx(eps), true),
    };
    let snaps: Vec<Triangle> = g
        .atoms
        .iter()
        .filter(|a| a.domain.contains_value(tau))
        .map(|a| a.transform.at(&at).expect("no pole near a domain point").apply_triangle(&a.triangle))
        .collect();
    triangulate_snapshot(&snaps)
        .triangles
        .into_iter()
        .map(|t| tagged(AtomicObject::new(t, TimeInterval::point(tau.clone()), TimeDepAffinity::identity()), g, approximate))
        .collect()
}

/// Atoms alive on the open interval `domain`, cut from the snapshot at its
/// sample time with every vertex followed through time.
fn interval_atoms(g: &GeometricObject, domain: &TimeInterval) -> Vec<AtomicObject> {
    let tau = sample_time(&domain.lo, &domain.hi);
    let alive: Vec<&AtomicObject> = g.atoms.iter().filter(|a| a.domain.contains(&tau)).collect();
    let snaps: Vec<Triangle> = alive
        .iter()
        .map(|a| a.transform.at(&tau).expect("valid atom").apply_triangle(&a.triangle))
        .collect();
    let corners: Vec<[Moving; 3]> =
        alive.iter().map(|a| a.triangle.corners().clone().map(|c| a.transform.trajectory(&c))).collect();
    let st = triangulate_snapshot(&snaps);
    let mut replay = Replay { corners: &corners, memo: HashMap::new() };
    st.triangles
        .into_iter()
        .zip(&st.sources)
        .map(|(t, src)| {
            let moving = src.clone().map(|s| replay.vertex(&s));
            debug_assert!(moving
                .iter()
                .zip(t.corners())
                .all(|(m, p)| m.0.eval(&tau).as_ref() == Ok(&p.x) && m.1.eval(&tau).as_ref() == Ok(&p.y)));
            let f = recover_from(&t, &moving).expect("snapshot triangles are recoverable");
            tagged(AtomicObject::new(t, domain.clone(), f), g, false)
        })
        .collect()
}

/// Triangulates `g` separately on every element of the partition `chi`.
pub fn triangulate_steps(g: &GeometricObject, chi: &EventList, eps: &Rational) -> Vec<AtomicObject> {
    let mut out = Vec::new();
    for element in chi.elements() {
        if element.is_point() {
            out.extend(event_atoms(g, &element.lo, eps));
        } else {
            out.extend(interval_atoms(g, &element));
        }
    }
    out
}
