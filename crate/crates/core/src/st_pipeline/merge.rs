use std::cmp::Ordering;
use std::collections::HashMap;

use crate::exact_arith::{Rational, RationalFunction, TimeValue};
use crate::planar_geom::{build_subdivision, face_vertex_mean, Location, Triangle};
use crate::st_model::{AtomicObject, TimeDepAffinity, TimeInterval};

use super::partition::{sample_time, EventList};
use super::recover::recover_from;
use super::NormalForm;

type Moving = (RationalFunction, RationalFunction);

fn trajectories(a: &AtomicObject) -> [Moving; 3] {
    a.triangle.corners().clone().map(|c| a.transform.trajectory(&c))
}

/// Distinct corner trajectories of every atom, as a sorted multiset.
fn trajectory_keys(atoms: &[AtomicObject]) -> Vec<Vec<Moving>> {
    let mut keys: Vec<Vec<Moving>> = atoms
        .iter()
        .map(|a| {
            let mut k = trajectories(a).to_vec();
            k.sort();
            k.dedup();
            k
        })
        .collect();
    keys.sort();
    keys
}

/// Whether the transform has no pole and a nonzero determinant at `tau`.
fn defined_at(f: &TimeDepAffinity, tau: &TimeValue) -> bool {
    let det = f.det();
    f.entries().iter().all(|(_, e)| tau.sign_of(e.den()) != 0) && tau.sign_of(det.num()) != 0
}

/// Whether the limits at `tau` of the interval atoms are exactly the point
/// atoms, one to one. Full limit triangles are matched by locating their
/// vertex mean in the subdivision of the point atoms.
fn limits_match(interval: &[AtomicObject], point: &[AtomicObject], tau: &Rational) -> bool {
    if interval.len() != point.len() {
        return false;
    }
    let tv = TimeValue::Exact(tau.clone());
    let mut limits = Vec::with_capacity(interval.len());
    for a in interval {
        if !defined_at(&a.transform, &tv) {
            return false;
        }
        limits.push(a.transform.at(tau).expect("checked").apply_triangle(&a.triangle).canonical());
    }
    let full: Vec<&Triangle> = point.iter().map(|a| &a.triangle).filter(|t| t.is_full()).collect();
    let sub = build_subdivision(&full.iter().map(|t| (*t).clone()).collect::<Vec<_>>());
    let mut by_face: HashMap<usize, usize> = HashMap::new();
    for (i, t) in full.iter().enumerate() {
        if let Location::Face(f) = sub.locate(&face_vertex_mean(t.corners())) {
            by_face.insert(f, i);
        }
    }
    let mut degenerate: HashMap<Triangle, usize> = HashMap::new();
    for a in point.iter().filter(|a| !a.triangle.is_full()) {
        *degenerate.entry(a.triangle.clone()).or_default() += 1;
    }
    let mut used = vec![false; full.len()];
    for t in limits {
        if t.is_full() {
            let Location::Face(f) = sub.locate(&face_vertex_mean(t.corners())) else { return false };
            let Some(&i) = by_face.get(&f) else { return false };
            if used[i] || *full[i] != t {
                return false;
            }
            used[i] = true;
        } else {
            match degenerate.get_mut(&t) {
                Some(n) if *n > 0 => *n -= 1,
                _ => return false,
            }
        }
    }
    true
}

/// Whether two intervals meeting at `tau` carry the same moving triangles
/// and those stay well defined at `tau`.
fn continues_through(left: &[AtomicObject], right: &[AtomicObject], tau: &TimeValue) -> bool {
    left.iter().all(|a| defined_at(&a.transform, tau)) && trajectory_keys(left) == trajectory_keys(right)
}

/// Re-expresses an interval atom relative to its snapshot at the sample time
/// of its domain.
fn rebase(a: &AtomicObject) -> AtomicObject {
    if a.domain.is_point() {
        return a.clone();
    }
    let tau = sample_time(&a.domain.lo, &a.domain.hi);
    let moving = trajectories(a);
    let at = |m: &Moving| crate::planar_geom::Point::new(m.0.eval(&tau).expect("pole-free"), m.1.eval(&tau).expect("pole-free"));
    let t = Triangle::new(at(&moving[0]), at(&moving[1]), at(&moving[2]));
    let order = t.canonical_order();
    let moving = order.map(|i| moving[i].clone());
    let t = t.canonical();
    let transform = recover_from(&t, &moving).expect("valid atoms stay nondegenerate");
    AtomicObject { triangle: t, transform, ..a.clone() }
}

pub(crate) fn canonical_cmp(x: &AtomicObject, y: &AtomicObject) -> Ordering {
    (&x.domain, &x.triangle, &x.transform, x.approximate, &x.source_id).cmp(&(
        &y.domain,
        &y.triangle,
        &y.transform,
        y.approximate,
        &y.source_id,
    ))
}

struct Element {
    domain: TimeInterval,
    atoms: Vec<AtomicObject>,
}

/// Greedily joins neighbouring partition elements, left to right, whenever
/// their atoms continue one another, then rebases and sorts the atoms.
pub fn merge(atoms: Vec<AtomicObject>, chi: &EventList) -> NormalForm {
    let elements = chi.elements();
    let mut groups: Vec<Vec<AtomicObject>> = vec![Vec::new(); elements.len()];
    for a in atoms {
        let i = elements.binary_search(&a.domain).expect("atom domains are partition elements");
        groups[i].push(a);
    }
    let mut groups = groups.into_iter();
    let mut nf = NormalForm::default();
    let mut flush = |e: Element| {
        for mut a in e.atoms {
            a.domain = e.domain.clone();
            nf.atoms.push(rebase(&a));
        }
        nf.partition.push(e.domain);
    };
    let Some(first) = groups.next() else { return NormalForm::default() };
    let mut cur = Element { domain: elements[0].clone(), atoms: first };
    let mut i = 1;
    while i < elements.len() {
        let next = &elements[i];
        let atoms = groups.next().expect("one group per element");
        if next.is_point() {
            let tau = &next.lo;
            let joined = match tau {
                TimeValue::Exact(r) => limits_match(&cur.atoms, &atoms, r),
                _ => false,
            };
            if joined {
                cur.domain.closed_hi = true;
                i += 1;
                continue;
            }
            if !tau.is_exact() && i + 1 < elements.len() {
                let after = groups.next().expect("one group per element");
                if continues_through(&cur.atoms, &after, tau) {
                    cur.domain.hi = elements[i + 1].hi.clone();
                    cur.domain.closed_hi = false;
                    i += 2;
                    continue;
                }
                flush(std::mem::replace(&mut cur, Element { domain: next.clone(), atoms }));
                flush(std::mem::replace(&mut cur, Element { domain: elements[i + 1].clone(), atoms: after }));
                i += 2;
                continue;
            }
            flush(std::mem::replace(&mut cur, Element { domain: next.clone(), atoms }));
        } else if cur.domain.is_point() {
            let joined = match &next.lo {
                TimeValue::Exact(r) => limits_match(&atoms, &cur.atoms, r),
                _ => false,
            };
            if joined {
                cur = Element {
                    domain: TimeInterval::new(next.lo.clone(), next.hi.clone(), true, false),
                    atoms,
                };
            } else {
                flush(std::mem::replace(&mut cur, Element { domain: next.clone(), atoms }));
            }
        } else if continues_through(&cur.atoms, &atoms, &next.lo) {
            cur.domain.hi = next.hi.clone();
            cur.domain.closed_hi = false;
        } else {
            flush(std::mem::replace(&mut cur, Element { domain: next.clone(), atoms }));
        }
        i += 1;
    }
    flush(cur);
    nf.atoms.sort_by(canonical_cmp);
    nf
}
