use std::collections::HashMap;

use crate::exact_arith::{midpoint, simplest_between_values, Polynomial, Rational, RationalFunction, TimeValue};
use crate::planar_geom::{orientation, Degeneracy, Orientation, Point};
use crate::st_model::{moving_corners, GeometricObject, MovingPoint, TimeInterval};

use super::carrier::{moving_carrier, pair_events, MovingCarrier, MovingSegment};

/// Strictly ascending event times.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EventList {
    pub times: Vec<TimeValue>,
}

impl EventList {
    pub fn from_unsorted(mut times: Vec<TimeValue>) -> Self {
        times.sort();
        times.dedup();
        EventList { times }
    }

    /// Points and open intervals in time order: `{τ1}, ]τ1, τ2[, {τ2}, …`.
    pub fn elements(&self) -> Vec<TimeInterval> {
        let mut out = Vec::new();
        for (i, t) in self.times.iter().enumerate() {
            if i > 0 {
                out.push(TimeInterval::open(self.times[i - 1].clone(), t.clone()));
            }
            out.push(TimeInterval::point(t.clone()));
        }
        out
    }
}

/// A rational strictly between `lo < hi`: the midpoint when both are
/// rational, otherwise the simplest rational in between.
pub fn sample_time(lo: &TimeValue, hi: &TimeValue) -> Rational {
    match (lo, hi) {
        (TimeValue::Exact(a), TimeValue::Exact(b)) => midpoint(a, b),
        _ => simplest_between_values(lo, hi),
    }
}

struct MovingParts {
    carriers: Vec<MovingCarrier>,
    /// Corners of degenerate atoms, which are not crossings of two carriers.
    loose: Vec<MovingPoint>,
}

type Moving = (RationalFunction, RationalFunction);

fn sample_of(d: &TimeInterval) -> Rational {
    if d.is_point() {
        d.lo.as_exact().cloned().unwrap_or_else(|| d.lo.approx(&Rational::new(1.into(), (1u64 << 32).into())))
    } else {
        sample_time(&d.lo, &d.hi)
    }
}

fn side_at(p: &Moving, q: &Moving, r: &Moving, tau: &Rational) -> Orientation {
    let at = |m: &Moving| Point::new(m.0.eval(tau).expect("pole-free"), m.1.eval(tau).expect("pole-free"));
    orientation(&at(p), &at(q), &at(r))
}

/// Edges of full atoms, each with the moving corners and a flag telling
/// whether another atom lies across the same moving edge throughout the
/// domain. Such an edge is interior to the union and never bounds it.
fn full_edges(g: &GeometricObject) -> Vec<(MovingSegment, bool)> {
    struct Edge {
        atom: usize,
        seg: MovingSegment,
        third: Moving,
        ends: (Moving, Moving),
    }
    let mut edges: Vec<Edge> = Vec::new();
    for (n, atom) in g.atoms.iter().enumerate() {
        if atom.triangle.degeneracy() != Degeneracy::Full {
            continue;
        }
        let corners = moving_corners(atom);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let m = |c: &MovingPoint| (c.fx.clone(), c.fy.clone());
            let (a, b) = (m(&corners[i]), m(&corners[j]));
            let ends = if a <= b { (a, b) } else { (b, a) };
            edges.push(Edge {
                atom: n,
                seg: MovingSegment { from: corners[i].clone(), to: corners[j].clone() },
                third: m(&corners[k]),
                ends,
            });
        }
    }
    let mut by_ends: HashMap<&(Moving, Moving), Vec<usize>> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        by_ends.entry(&e.ends).or_default().push(i);
    }
    edges
        .iter()
        .map(|e| {
            let domain = &g.atoms[e.atom].domain;
            let tau = sample_of(domain);
            let side = side_at(&e.ends.0, &e.ends.1, &e.third, &tau);
            let shielded = by_ends[&e.ends].iter().map(|&o| &edges[o]).any(|o| {
                o.atom != e.atom
                    && g.atoms[o.atom].domain.covers(domain)
                    && side_at(&e.ends.0, &e.ends.1, &o.third, &tau) == side.reversed()
            });
            (e.seg.clone(), shielded)
        })
        .collect()
}

fn moving_parts(g: &GeometricObject) -> MovingParts {
    let mut carriers: Vec<MovingCarrier> = full_edges(g)
        .into_iter()
        .filter(|(_, shielded)| !shielded)
        .map(|(seg, _)| moving_carrier(&seg).expect("valid atoms keep their corners apart"))
        .collect();
    let mut loose: Vec<MovingPoint> = Vec::new();
    for atom in &g.atoms {
        let corners = moving_corners(atom);
        match atom.triangle.degeneracy() {
            Degeneracy::Full => {}
            Degeneracy::Segment => {
                let (i, j) = atom.triangle.segment_corners();
                let seg = MovingSegment { from: corners[i].clone(), to: corners[j].clone() };
                carriers.push(moving_carrier(&seg).expect("valid atoms keep their corners apart"));
                loose.push(corners[i].clone());
                loose.push(corners[j].clone());
            }
            Degeneracy::Point => loose.push(corners[0].clone()),
        }
    }
    carriers.sort();
    carriers.dedup();
    loose.sort_by(|p, q| (&p.fx, &p.fy, &p.domain).cmp(&(&q.fx, &q.fy, &q.domain)));
    loose.dedup();
    MovingParts { carriers, loose }
}

fn roots_of_function(f: &RationalFunction, domain: &TimeInterval) -> Vec<TimeValue> {
    if f.is_zero() {
        Vec::new()
    } else {
        domain.roots_of(f.num())
    }
}

fn is_static(c: &MovingCarrier) -> bool {
    c.a.is_constant() && c.b.is_constant() && c.c.is_constant()
}

/// Pair and triple events of carriers all alive on the open interval `span`.
fn carrier_events(alive: &[&MovingCarrier], span: &TimeInterval, times: &mut Vec<TimeValue>) {
    let n = alive.len();
    let mut ab = vec![vec![Polynomial::zero(); n]; n];
    let mut ac = ab.clone();
    let mut bc = ab.clone();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (alive[i], alive[j]);
            ab[i][j] = &(&p.a * &q.b) - &(&q.a * &p.b);
            ac[i][j] = &(&p.a * &q.c) - &(&q.a * &p.c);
            bc[i][j] = &(&p.b * &q.c) - &(&q.b * &p.c);
            times.extend(pair_events(p, q, span));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if is_static(alive[i]) && is_static(alive[j]) && is_static(alive[k]) {
                    continue;
                }
                let c = alive[i];
                let det = &(&(&c.a * &bc[j][k]) - &(&c.b * &ac[j][k])) + &(&c.c * &ab[j][k]);
                if !det.is_zero() {
                    times.extend(span.roots_of(&det));
                }
            }
        }
    }
}

/// The event times of `g`: domain endpoints, moments where carrier
/// intersections appear or vanish or three carriers meet, and moments where
/// a corner of a degenerate atom meets a carrier or another such corner.
/// Edges interior to the union throughout are left out.
pub fn partition(g: &GeometricObject) -> EventList {
    let mut ends: Vec<TimeValue> = Vec::new();
    for a in &g.atoms {
        ends.push(a.domain.lo.clone());
        ends.push(a.domain.hi.clone());
    }
    ends.sort();
    ends.dedup();
    let mut times = ends.clone();
    let MovingParts { carriers, loose } = moving_parts(g);
    // Every domain is a union of endpoints and the open spans between
    // consecutive endpoints, so events only need finding inside spans.
    for w in ends.windows(2) {
        let span = TimeInterval::open(w[0].clone(), w[1].clone());
        let alive: Vec<&MovingCarrier> = carriers.iter().filter(|c| c.domain.covers(&span)).collect();
        carrier_events(&alive, &span, &mut times);
        let points: Vec<&MovingPoint> = loose.iter().filter(|p| p.domain.covers(&span)).collect();
        for (i, p) in points.iter().enumerate() {
            for c in &alive {
                times.extend(roots_of_function(&c.offset_of((&p.fx, &p.fy)), &span));
            }
            for q in &points[i + 1..] {
                let dx = &p.fx - &q.fx;
                let dy = &p.fy - &q.fy;
                if dx.is_zero() && dy.is_zero() {
                    continue;
                }
                times.extend(span.roots_of(&dx.num().gcd(dy.num())));
            }
        }
    }
    EventList::from_unsorted(times)
}
