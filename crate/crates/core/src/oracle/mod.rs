//! Brute-force checks for triangulations: exact union area, exact point
//! membership and pairwise interior disjointness. Nothing here touches the
//! arrangement or subdivision code; only the point and triangle value types
//! are shared.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_arith::Rational;
use crate::planar_geom::{Point, Triangle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub point: Point,
    pub in_input: bool,
    pub in_output: bool,
    /// The point lies on an edge of some triangle of either set, where the
    /// two sets may legitimately disagree about closedness of pieces.
    pub on_edge: bool,
}

impl MembershipVerdict {
    pub fn agrees(&self) -> bool {
        self.in_input == self.in_output
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn side(o: &Point, a: &Point, b: &Point) -> Ordering {
    cross(o, a, b).cmp(&Rational::zero())
}

fn within(a: &Rational, lo: &Rational, hi: &Rational) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo <= a && a <= hi
}

fn on_closed_segment(a: &Point, b: &Point, p: &Point) -> bool {
    side(a, b, p) == Ordering::Equal && within(&p.x, &a.x, &b.x) && within(&p.y, &a.y, &b.y)
}

fn is_full(t: &Triangle) -> bool {
    let c = t.corners();
    side(&c[0], &c[1], &c[2]) != Ordering::Equal
}

/// Closed membership, for full and degenerate triangles alike.
pub fn triangle_contains(t: &Triangle, p: &Point) -> bool {
    let c = t.corners();
    if !is_full(t) {
        return (0..3).any(|i| on_closed_segment(&c[i], &c[(i + 1) % 3], p));
    }
    let s = [side(&c[0], &c[1], p), side(&c[1], &c[2], p), side(&c[2], &c[0], p)];
    !(s.contains(&Ordering::Less) && s.contains(&Ordering::Greater))
}

pub fn set_contains(s: &[Triangle], p: &Point) -> bool {
    s.iter().any(|t| triangle_contains(t, p))
}

/// Exact bounding box of a triangle, as `(min x, max x, min y, max y)`.
struct Bounds<'a> {
    triangle: &'a Triangle,
    x: (&'a Rational, &'a Rational),
    y: (&'a Rational, &'a Rational),
}

fn bounds(s: &[Triangle]) -> Vec<Bounds<'_>> {
    s.iter()
        .map(|t| {
            let c = t.corners();
            let range = |f: fn(&Point) -> &Rational| {
                let v = [f(&c[0]), f(&c[1]), f(&c[2])];
                (*v.iter().min().unwrap(), *v.iter().max().unwrap())
            };
            Bounds { triangle: t, x: range(|p| &p.x), y: range(|p| &p.y) }
        })
        .collect()
}

/// Whether `p` lies in the set and whether it lies on some triangle's edge.
fn locate(s: &[Bounds<'_>], p: &Point) -> (bool, bool) {
    let (mut inside, mut on_edge) = (false, false);
    for b in s {
        if p.x < *b.x.0 || *b.x.1 < p.x || p.y < *b.y.0 || *b.y.1 < p.y {
            continue;
        }
        let c = b.triangle.corners();
        if !is_full(b.triangle) {
            let hit = (0..3).any(|i| on_closed_segment(&c[i], &c[(i + 1) % 3], p));
            inside |= hit;
            on_edge |= hit;
            continue;
        }
        let sides = [side(&c[0], &c[1], p), side(&c[1], &c[2], p), side(&c[2], &c[0], p)];
        if sides.contains(&Ordering::Less) && sides.contains(&Ordering::Greater) {
            continue;
        }
        inside = true;
        on_edge |= sides.contains(&Ordering::Equal);
    }
    (inside, on_edge)
}

/// Counter-clockwise corners of a full triangle.
fn ccw(t: &Triangle) -> [Point; 3] {
    let c = t.corners().clone();
    if side(&c[0], &c[1], &c[2]) == Ordering::Less {
        [c[0].clone(), c[2].clone(), c[1].clone()]
    } else {
        c
    }
}

/// Whether the open interiors of `a` and `b` are disjoint. Two convex
/// polygons have disjoint interiors exactly when an edge line of one leaves
/// the other entirely on its closed outer side.
pub fn interiors_disjoint(a: &Triangle, b: &Triangle) -> bool {
    if !is_full(a) || !is_full(b) {
        return true;
    }
    let (pa, pb) = (ccw(a), ccw(b));
    let separates = |edge: &[Point; 3], other: &[Point; 3]| {
        (0..3).any(|i| {
            let (p, q) = (&edge[i], &edge[(i + 1) % 3]);
            other.iter().all(|r| side(p, q, r) != Ordering::Greater)
        })
    };
    separates(&pa, &pb) || separates(&pb, &pa)
}

/// The first pair of triangles whose interiors overlap.
pub fn first_overlap(s: &[Triangle]) -> Option<(usize, usize)> {
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if !interiors_disjoint(&s[i], &s[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// X coordinate of the crossing of two closed segments, if they meet in a
/// single point.
fn crossing_x(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Option<Rational> {
    let d = (&p2.x - &p1.x) * (&q2.y - &q1.y) - (&p2.y - &p1.y) * (&q2.x - &q1.x);
    if d.is_zero() {
        return None;
    }
    let s = ((&q1.x - &p1.x) * (&q2.y - &q1.y) - (&q1.y - &p1.y) * (&q2.x - &q1.x)) / &d;
    let u = ((&q1.x - &p1.x) * (&p2.y - &p1.y) - (&q1.y - &p1.y) * (&p2.x - &p1.x)) / &d;
    let unit = |v: &Rational| !v.is_negative() && *v <= Rational::from_integer(1.into());
    (unit(&s) && unit(&u)).then(|| &p1.x + &s * (&p2.x - &p1.x))
}

fn y_at(p: &Point, q: &Point, x: &Rational) -> Rational {
    &p.y + (&q.y - &p.y) * (x - &p.x) / (&q.x - &p.x)
}

/// The two lower-to-upper x-ordered edges of `t` that are not vertical.
fn sloped_edges(t: &Triangle) -> Vec<(Point, Point)> {
    let c = t.corners();
    (0..3)
        .map(|i| {
            let (p, q) = (c[i].clone(), c[(i + 1) % 3].clone());
            if p.x <= q.x { (p, q) } else { (q, p) }
        })
        .filter(|(p, q)| p.x != q.x)
        .collect()
}

fn boxes_meet(a: &(Point, Point), b: &(Point, Point)) -> bool {
    let y_range = |e: &(Point, Point)| if e.0.y <= e.1.y { (e.0.y.clone(), e.1.y.clone()) } else { (e.1.y.clone(), e.0.y.clone()) };
    let ((alo, ahi), (blo, bhi)) = (y_range(a), y_range(b));
    a.0.x <= b.1.x && b.0.x <= a.1.x && alo <= bhi && blo <= ahi
}

/// Exact area of the union of the full triangles in `s`, by cutting the
/// plane into vertical slabs at every corner and edge crossing. Inside a
/// slab no edges cross and every triangle spans it fully or not at all, so
/// each triangle covers one trapezoid and the union is found by merging
/// their vertical extents.
pub fn union_area(s: &[Triangle]) -> Rational {
    let full: Vec<Vec<(Point, Point)>> = s.iter().filter(|t| is_full(t)).map(sloped_edges).collect();
    let edges: Vec<&(Point, Point)> = full.iter().flatten().collect();
    let mut xs: Vec<Rational> = edges.iter().flat_map(|(p, q)| [p.x.clone(), q.x.clone()]).collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !boxes_meet(edges[i], edges[j]) {
                continue;
            }
            if let Some(x) = crossing_x(&edges[i].0, &edges[i].1, &edges[j].0, &edges[j].1) {
                xs.push(x);
            }
        }
    }
    xs.sort();
    xs.dedup();
    let two = Rational::from_integer(2.into());
    let mut area = Rational::zero();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let xm = (x0 + x1) / &two;
        // Each spanning triangle as (bottom, top), each edge as (y at xm, y at x0, y at x1).
        let mut extents: Vec<[(Rational, Rational, Rational); 2]> = full
            .iter()
            .filter_map(|t| {
                let mut cut: Vec<_> = t
                    .iter()
                    .filter(|(p, q)| p.x <= *x0 && *x1 <= q.x)
                    .map(|(p, q)| (y_at(p, q, &xm), y_at(p, q, x0), y_at(p, q, x1)))
                    .collect();
                cut.sort();
                (cut.len() == 2).then(|| [cut[0].clone(), cut[1].clone()])
            })
            .collect();
        extents.sort();
        let mut run: Option<[(Rational, Rational, Rational); 2]> = None;
        let mut close = |r: &[(Rational, Rational, Rational); 2]| {
            area += (x1 - x0) * ((&r[1].1 - &r[0].1) + (&r[1].2 - &r[0].2)) / &two;
        };
        for e in extents {
            match &mut run {
                Some(r) if e[0].0 <= r[1].0 => {
                    if e[1].0 > r[1].0 {
                        r[1] = e[1].clone();
                    }
                }
                _ => {
                    if let Some(r) = run.take() {
                        close(&r);
                    }
                    run = Some(e);
                }
            }
        }
        if let Some(r) = run {
            close(&r);
        }
    }
    area
}

/// `k` pseudo-random rational points in a box around both sets, each with
/// its exact membership in either set.
pub fn membership_sample(s_in: &[Triangle], s_out: &[Triangle], k: usize, seed: u64) -> Vec<MembershipVerdict> {
    let corners: Vec<&Point> = s_in.iter().chain(s_out).flat_map(|t| t.corners().iter()).collect();
    let (mut lo, mut hi) = match corners.first() {
        Some(p) => ((p.x.clone(), p.y.clone()), (p.x.clone(), p.y.clone())),
        None => ((Rational::zero(), Rational::zero()), (Rational::zero(), Rational::zero())),
    };
    for p in &corners {
        lo = (lo.0.min(p.x.clone()), lo.1.min(p.y.clone()));
        hi = (hi.0.max(p.x.clone()), hi.1.max(p.y.clone()));
    }
    let margin = (&hi.0 - &lo.0).max(&hi.1 - &lo.1) / Rational::from_integer(8.into())
        + Rational::from_integer(1.into());
    let (x0, y0) = (&lo.0 - &margin, &lo.1 - &margin);
    let (w, h) = (&hi.0 - &x0 + &margin, &hi.1 - &y0 + &margin);
    // An odd prime denominator keeps samples off most lattice-aligned edges.
    const STEPS: i64 = 1_000_003;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coord = |base: &Rational, span: &Rational| {
        base + span * Rational::new(rng.gen_range(0..=STEPS).into(), STEPS.into())
    };
    let (b_in, b_out) = (bounds(s_in), bounds(s_out));
    (0..k)
        .map(|_| {
            let point = Point::new(coord(&x0, &w), coord(&y0, &h));
            let (in_input, edge_in) = locate(&b_in, &point);
            let (in_output, edge_out) = locate(&b_out, &point);
            MembershipVerdict { in_input, in_output, on_edge: edge_in || edge_out, point }
        })
        .collect()
}

/// Whether two triangle sets agree on every sampled point off their edges.
pub fn membership_agrees(s_in: &[Triangle], s_out: &[Triangle], k: usize, seed: u64) -> bool {
    membership_sample(s_in, s_out, k, seed).iter().all(|v| v.on_edge || v.agrees())
}

/// Equality of two snapshots as sets of canonical triangles.
pub fn same_snapshot(a: &[Triangle], b: &[Triangle]) -> bool {
    let canon = |s: &[Triangle]| {
        let mut v: Vec<Triangle> = s.iter().map(Triangle::canonical).collect();
        v.sort();
        v.dedup();
        v
    };
    canon(a) == canon(b)
}
