//! The subdivision of the plane induced by the edges of a set of triangles,
//! with faces flagged by whether they are covered by the triangles.

use std::collections::VecDeque;

use super::dcel::{Dcel, FaceId, HalfEdgeId, VertexId, OUTER_FACE};
use super::line::Line;
use super::locate::{Location, SlabLocator};
use super::point::{orientation, Orientation, Point};
use super::triangle::{Degeneracy, Triangle};

/// Where an arrangement segment came from: corners `a` and `b` of input
/// triangle `triangle`. `a == b` for point triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentSource {
    pub triangle: usize,
    pub a: usize,
    pub b: usize,
    pub degeneracy: Degeneracy,
}

#[derive(Clone, Debug)]
pub struct PlanarSubdivision {
    pub dcel: Dcel,
    /// Indexed by face; true when the face is covered by a full triangle.
    pub inside: Vec<bool>,
    pub sources: Vec<SegmentSource>,
    pub triangles: Vec<Triangle>,
    locator: SlabLocator,
    isolated_face: Vec<Option<FaceId>>,
}

/// Segments contributed by each triangle: its three edges when full, the
/// spanned segment when collinear, and a zero-length segment for a point.
fn triangle_segments(triangles: &[Triangle]) -> (Vec<(Point, Point)>, Vec<SegmentSource>) {
    let mut segs = Vec::new();
    let mut sources = Vec::new();
    for (i, t) in triangles.iter().enumerate() {
        let deg = t.degeneracy();
        let pairs: Vec<(usize, usize)> = match deg {
            Degeneracy::Full => vec![(0, 1), (1, 2), (2, 0)],
            Degeneracy::Segment => vec![t.segment_corners()],
            Degeneracy::Point => vec![(0, 0)],
        };
        for (a, b) in pairs {
            segs.push((t.corner(a).clone(), t.corner(b).clone()));
            sources.push(SegmentSource { triangle: i, a, b, degeneracy: deg });
        }
    }
    (segs, sources)
}

pub fn build_subdivision(triangles: &[Triangle]) -> PlanarSubdivision {
    let (segs, sources) = triangle_segments(triangles);
    let dcel = Dcel::from_segments(&segs);
    let locator = SlabLocator::new(&dcel);

    // Coverage count changes by one per full triangle edge crossed.
    let delta = |h: HalfEdgeId| -> i64 {
        let he = &dcel.half_edges[h];
        he.tags
            .iter()
            .filter(|&&s| sources[s].degeneracy == Degeneracy::Full)
            .map(|&s| {
                let src = &sources[s];
                let third = 3 - src.a - src.b;
                let t = &triangles[src.triangle];
                match orientation(dcel.origin_point(h), dcel.dest_point(h), t.corner(third)) {
                    Orientation::Ccw => 1,
                    Orientation::Cw => -1,
                    Orientation::Collinear => 0,
                }
            })
            .sum()
    };
    let mut by_face: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); dcel.faces.len()];
    for (h, he) in dcel.half_edges.iter().enumerate() {
        by_face[he.face].push(h);
    }
    let mut count: Vec<Option<i64>> = vec![None; dcel.faces.len()];
    count[OUTER_FACE] = Some(0);
    let mut queue = VecDeque::from([OUTER_FACE]);
    while let Some(f) = queue.pop_front() {
        let c = count[f].unwrap();
        for &h in &by_face[f] {
            let g = dcel.half_edges[dcel.half_edges[h].twin].face;
            if count[g].is_none() {
                count[g] = Some(c - delta(h));
                queue.push_back(g);
            }
        }
    }
    let inside = count.iter().map(|c| c.unwrap_or(0) > 0).collect();
    let mut isolated_face = vec![None; dcel.vertices.len()];
    for (f, face) in dcel.faces.iter().enumerate() {
        for &v in &face.isolated {
            isolated_face[v] = Some(f);
        }
    }
    PlanarSubdivision { dcel, inside, sources, triangles: triangles.to_vec(), locator, isolated_face }
}

impl PlanarSubdivision {
    pub fn locate(&self, p: &Point) -> Location {
        self.locator.locate(&self.dcel, p)
    }

    /// Faces around a vertex, or the containing face of an isolated vertex.
    pub fn faces_around(&self, v: VertexId) -> Vec<FaceId> {
        let Some(start) = self.dcel.vertices[v].incident else {
            return self.isolated_face[v].into_iter().collect();
        };
        let mut out = Vec::new();
        let mut h = start;
        loop {
            out.push(self.dcel.half_edges[h].face);
            h = self.dcel.half_edges[self.dcel.half_edges[h].prev].twin;
            if h == start {
                break;
            }
        }
        out
    }

    fn edge_faces(&self, h: HalfEdgeId) -> [FaceId; 2] {
        [self.dcel.half_edges[h].face, self.dcel.half_edges[self.dcel.half_edges[h].twin].face]
    }

    /// Whether `p` lies in the closed region covered by full triangles.
    pub fn covered(&self, p: &Point) -> bool {
        match self.locate(p) {
            Location::Face(f) => self.inside[f],
            Location::Edge(h) => self.edge_faces(h).iter().any(|&f| self.inside[f]),
            Location::Vertex(v) => self.faces_around(v).iter().any(|&f| self.inside[f]),
        }
    }

    /// Whether `p` lies in the open covered region.
    pub fn covered_interior(&self, p: &Point) -> bool {
        match self.locate(p) {
            Location::Face(f) => self.inside[f],
            Location::Edge(h) => self.edge_faces(h).iter().all(|&f| self.inside[f]),
            Location::Vertex(v) => self.faces_around(v).iter().all(|&f| self.inside[f]),
        }
    }

    /// Even half-edge ids of the edges that lie on the boundary of the
    /// union: not covered on both sides.
    pub fn boundary_edges(&self) -> Vec<HalfEdgeId> {
        (0..self.dcel.half_edges.len())
            .step_by(2)
            .filter(|&h| !self.edge_faces(h).iter().all(|&f| self.inside[f]))
            .collect()
    }

    /// Indices into `sources` of the segments containing a boundary edge.
    pub fn boundary_sources(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.boundary_edges().into_iter().flat_map(|h| self.dcel.half_edges[h].tags.iter().copied()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn segment(&self, s: usize) -> (&Point, &Point) {
        let src = &self.sources[s];
        let t = &self.triangles[src.triangle];
        (t.corner(src.a), t.corner(src.b))
    }
}

/// Triangle edges and degenerate segments that contain part of the boundary
/// of the union of `triangles`, each with its carrier, without duplicates.
pub fn boundary_segments(triangles: &[Triangle]) -> Vec<(Point, Point, Line)> {
    let sub = build_subdivision(triangles);
    let mut out: Vec<(Point, Point, Line)> = sub
        .boundary_sources()
        .into_iter()
        .map(|s| {
            let (p, q) = sub.segment(s);
            let (p, q) = if p <= q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
            let l = Line::through(&p, &q).expect("boundary edges have positive length");
            (p, q, l)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn single_triangle() {
        let t = Triangle::from_i64([(0, 0), (2, 0), (0, 2)]);
        let sub = build_subdivision(std::slice::from_ref(&t));
        assert_eq!(sub.inside.iter().filter(|&&b| b).count(), 1);
        assert_eq!(boundary_segments(&[t]).len(), 3);
    }

    #[test]
    fn square_diagonal_excluded() {
        let s = [Triangle::from_i64([(0, 0), (2, 0), (2, 2)]), Triangle::from_i64([(0, 0), (0, 2), (2, 2)])];
        let sub = build_subdivision(&s);
        assert_eq!(sub.inside.iter().filter(|&&b| b).count(), 2);
        let b = boundary_segments(&s);
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|(p, q, _)| !(p == &Point::from_i64(0, 0) && q == &Point::from_i64(2, 2))));
        assert!(sub.covered_interior(&Point::from_i64(1, 1)));
        assert!(sub.covered(&Point::from_i64(2, 1)));
        assert!(!sub.covered_interior(&Point::from_i64(2, 1)));
        assert!(!sub.covered(&Point::new(rat(5, 2), rat(1, 1))));
    }

    #[test]
    fn overlapping_triangles_count_once() {
        let s = [Triangle::from_i64([(0, 0), (4, 0), (0, 4)]), Triangle::from_i64([(1, 1), (2, 1), (1, 2)])];
        let sub = build_subdivision(&s);
        assert!(sub.covered_interior(&Point::new(rat(5, 4), rat(5, 4))));
        // The small triangle is interior, so only the big one's edges bound the union.
        assert_eq!(boundary_segments(&s).len(), 3);
    }

    #[test]
    fn degenerate_segment_outside_is_boundary() {
        let s = [Triangle::from_i64([(0, 0), (2, 0), (0, 2)]), Triangle::from_i64([(3, 0), (5, 0), (5, 0)])];
        assert_eq!(boundary_segments(&s).len(), 4);
        let inside = [Triangle::from_i64([(0, 0), (4, 0), (0, 4)]), Triangle::from_i64([(1, 1), (2, 1), (2, 1)])];
        assert_eq!(boundary_segments(&inside).len(), 3);
    }
}
