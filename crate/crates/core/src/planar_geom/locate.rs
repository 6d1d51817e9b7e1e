//! Slab decomposition point location over a [`Dcel`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::dcel::{Dcel, FaceId, HalfEdgeId, VertexId, OUTER_FACE};
use super::point::Point;
use crate::exact_arith::{midpoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Face(FaceId),
    /// On the relative interior of the edge of this half-edge.
    Edge(HalfEdgeId),
    Vertex(VertexId),
}

/// Vertical slabs between consecutive vertex abscissae; inside each slab
/// the crossing edges are totally ordered bottom to top.
#[derive(Clone, Debug)]
pub struct SlabLocator {
    xs: Vec<Rational>,
    /// Left-to-right half-edges crossing slab `i`, i.e. `]xs[i], xs[i+1][`.
    slabs: Vec<Vec<HalfEdgeId>>,
    /// Vertical half-edges (pointing up) keyed by abscissa.
    verticals: BTreeMap<Rational, Vec<HalfEdgeId>>,
}

fn y_at(dcel: &Dcel, h: HalfEdgeId, x: &Rational) -> Rational {
    let p = dcel.origin_point(h);
    let q = dcel.dest_point(h);
    &p.y + (&q.y - &p.y) * (x - &p.x) / (&q.x - &p.x)
}

impl SlabLocator {
    pub fn new(dcel: &Dcel) -> Self {
        let mut xs: Vec<Rational> = dcel.vertices.iter().map(|v| v.point.x.clone()).collect();
        xs.sort();
        xs.dedup();
        let mut slabs: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); xs.len().saturating_sub(1)];
        let mut verticals: BTreeMap<Rational, Vec<HalfEdgeId>> = BTreeMap::new();
        for h in 0..dcel.half_edges.len() {
            let p = dcel.origin_point(h);
            let q = dcel.dest_point(h);
            if p.x == q.x {
                if p.y < q.y {
                    verticals.entry(p.x.clone()).or_default().push(h);
                }
                continue;
            }
            if p.x > q.x {
                continue;
            }
            let i0 = xs.binary_search(&p.x).unwrap();
            let i1 = xs.binary_search(&q.x).unwrap();
            for slab in &mut slabs[i0..i1] {
                slab.push(h);
            }
        }
        for (i, slab) in slabs.iter_mut().enumerate() {
            let m = midpoint(&xs[i], &xs[i + 1]);
            let mut keyed: Vec<(Rational, HalfEdgeId)> = slab.iter().map(|&h| (y_at(dcel, h, &m), h)).collect();
            keyed.sort();
            *slab = keyed.into_iter().map(|(_, h)| h).collect();
        }
        SlabLocator { xs, slabs, verticals }
    }

    pub fn locate(&self, dcel: &Dcel, p: &Point) -> Location {
        if let Some(v) = dcel.vertex_at(p) {
            return Location::Vertex(v);
        }
        if let Some(vs) = self.verticals.get(&p.x) {
            for &h in vs {
                if dcel.origin_point(h).y < p.y && p.y < dcel.dest_point(h).y {
                    return Location::Edge(h);
                }
            }
        }
        // A point on a slab boundary is located in the slab to its right,
        // where the edges are still ordered at that abscissa.
        let slab = match self.xs.binary_search(&p.x) {
            Ok(i) => i,
            Err(0) => return Location::Face(OUTER_FACE),
            Err(i) => i - 1,
        };
        let Some(edges) = self.slabs.get(slab) else {
            return Location::Face(OUTER_FACE);
        };
        let mut lo = 0usize;
        let mut hi = edges.len();
        // Find the number of edges strictly below p.
        while lo < hi {
            let mid = (lo + hi) / 2;
            let h = edges[mid];
            match y_at(dcel, h, &p.x).cmp(&p.y) {
                Ordering::Equal => return Location::Edge(h),
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
            }
        }
        if lo == 0 {
            Location::Face(OUTER_FACE)
        } else {
            Location::Face(dcel.half_edges[edges[lo - 1]].face)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn seg(a: (i64, i64), b: (i64, i64)) -> (Point, Point) {
        (Point::from_i64(a.0, a.1), Point::from_i64(b.0, b.1))
    }

    #[test]
    fn square_locations() {
        let segs = vec![seg((0, 0), (2, 0)), seg((2, 0), (2, 2)), seg((2, 2), (0, 2)), seg((0, 2), (0, 0))];
        let d = Dcel::from_segments(&segs);
        let loc = SlabLocator::new(&d);
        let inner = d.bounded_faces().next().unwrap();
        assert_eq!(loc.locate(&d, &Point::new(rat(1, 2), rat(1, 2))), Location::Face(inner));
        assert_eq!(loc.locate(&d, &Point::from_i64(3, 1)), Location::Face(OUTER_FACE));
        assert_eq!(loc.locate(&d, &Point::from_i64(1, 3)), Location::Face(OUTER_FACE));
        assert!(matches!(loc.locate(&d, &Point::from_i64(1, 0)), Location::Edge(_)));
        assert!(matches!(loc.locate(&d, &Point::from_i64(0, 1)), Location::Edge(_)));
        assert!(matches!(loc.locate(&d, &Point::from_i64(2, 2)), Location::Vertex(_)));
        // On the slab boundary x = 0, outside the square.
        assert_eq!(loc.locate(&d, &Point::from_i64(0, 5)), Location::Face(OUTER_FACE));
    }
}
