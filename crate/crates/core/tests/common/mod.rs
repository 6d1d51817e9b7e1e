#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stnf_core::exact_arith::{int, rat, Polynomial, Rational, RationalFunction, TimeValue};
use stnf_core::planar_geom::{Point, StaticAffinity, Triangle};
use stnf_core::st_model::{AtomicObject, GeometricObject, TimeDepAffinity, TimeInterval};

pub fn lin(c0: i64, c1: i64) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_i64(&[c0, c1]))
}

pub fn running() -> GeometricObject {
    let d = TimeInterval::closed(int(0), int(4));
    GeometricObject::new(
        "running",
        vec![
            AtomicObject::new(Triangle::from_i64([(-1, 0), (1, 0), (0, 2)]), d.clone(), TimeDepAffinity::identity()),
            AtomicObject::new(
                Triangle::from_i64([(-3, 1), (-1, 1), (-2, 3)]),
                d,
                TimeDepAffinity::translation(RationalFunction::t(), RationalFunction::zero()),
            ),
        ],
    )
}

fn rectangle(split: [[(i64, i64); 3]; 2]) -> GeometricObject {
    let f = TimeDepAffinity::translation(lin(2, 2), lin(-1, -1));
    let d = TimeInterval::closed(int(0), int(4));
    GeometricObject::new(
        "rect",
        split.into_iter().map(|t| AtomicObject::new(Triangle::from_i64(t), d.clone(), f.clone())).collect(),
    )
}

pub fn rect_a() -> GeometricObject {
    rectangle([[(0, 0), (2, 0), (2, -1)], [(0, 0), (0, -1), (2, -1)]])
}

pub fn rect_b() -> GeometricObject {
    rectangle([[(0, 0), (2, 0), (0, -1)], [(2, 0), (2, -1), (0, -1)]])
}

/// A moving pole with a fixed sign above it, drawn with degenerate atoms,
/// next to a full triangle it slides into.
pub fn sign() -> GeometricObject {
    let d = TimeInterval::closed(int(0), int(3));
    GeometricObject::new(
        "sign",
        vec![
            AtomicObject::new(
                Triangle::segment(Point::from_i64(0, 0), Point::from_i64(0, 2)),
                d.clone(),
                TimeDepAffinity::translation(RationalFunction::t(), RationalFunction::zero()),
            ),
            AtomicObject::new(Triangle::point(Point::from_i64(1, 3)), d.clone(), TimeDepAffinity::identity()),
            AtomicObject::new(Triangle::from_i64([(2, 0), (4, 0), (3, 2)]), d, TimeDepAffinity::identity()),
        ],
    )
}

fn random_triangle(rng: &mut ChaCha8Rng, span: i64) -> Triangle {
    loop {
        let mut c = || (rng.gen_range(-span..=span), rng.gen_range(-span..=span));
        let t = Triangle::from_i64([c(), c(), c()]);
        if t.is_full() {
            return t;
        }
    }
}

/// Translation along a line, optionally combined with a uniform scaling by
/// `1 + t/k`, which keeps the determinant positive for `t >= 0`.
fn random_motion(rng: &mut ChaCha8Rng) -> TimeDepAffinity {
    let mut f = TimeDepAffinity::translation(
        lin(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
        lin(rng.gen_range(-2..=2), rng.gen_range(-2..=2)),
    );
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(2..=4);
        let s = RationalFunction::from_poly(Polynomial::new(vec![int(1), rat(1, k)]));
        f.a11 = s.clone();
        f.a22 = s;
    }
    f
}

/// Two random moving triangles with overlapping domains inside `[0, 3]`.
pub fn random_pair(seed: u64) -> GeometricObject {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = (0..2)
        .map(|i| {
            let lo = if i == 0 { 0 } else { rng.gen_range(0..=1) };
            let hi = rng.gen_range(2..=3);
            AtomicObject::new(random_triangle(&mut rng, 4), TimeInterval::closed(int(lo), int(hi)), random_motion(&mut rng))
        })
        .collect();
    GeometricObject::new(format!("random-{seed}"), atoms)
}

pub fn random_affinity(rng: &mut ChaCha8Rng) -> StaticAffinity {
    loop {
        let mut r = |n: i64| Rational::new(rng.gen_range(-n..=n).into(), rng.gen_range(1..=3).into());
        let a = StaticAffinity { a11: r(4), a12: r(4), a21: r(4), a22: r(4), b1: r(6), b2: r(6) };
        if a.det() != int(0) {
            return a;
        }
    }
}

pub fn random_triangles(rng: &mut ChaCha8Rng, m: usize) -> Vec<Triangle> {
    (0..m).map(|_| random_triangle(rng, 50)).collect()
}

/// Every object the acceptance criteria run over.
pub fn test_objects() -> Vec<GeometricObject> {
    let mut v = vec![running(), rect_a(), rect_b(), sign()];
    v.extend((1..=3).map(random_pair));
    v
}

/// `k` rational times spread over a partition element: the value itself for
/// a rational singleton, interior points plus closed rational ends otherwise.
pub fn sample_times(d: &TimeInterval, k: usize) -> Vec<Rational> {
    if d.is_point() {
        return d.lo.as_exact().cloned().into_iter().collect();
    }
    let inner = |t: &TimeValue, up: bool| match t {
        TimeValue::Exact(r) => r.clone(),
        _ => {
            let (a, b) = t.refine(&rat(1, 1 << 20));
            if up { b } else { a }
        }
    };
    let (lo, hi) = (inner(&d.lo, true), inner(&d.hi, false));
    let steps = Rational::from_integer((k + 1).into());
    let mut out: Vec<Rational> =
        (1..=k).map(|i| &lo + (&hi - &lo) * Rational::from_integer(i.into()) / &steps).collect();
    for (end, closed) in [(&d.lo, d.closed_lo), (&d.hi, d.closed_hi)] {
        if let (true, Some(r)) = (closed, end.as_exact()) {
            out.push(r.clone());
        }
    }
    out.retain(|t| d.contains(t));
    out
}
