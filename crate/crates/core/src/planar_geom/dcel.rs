//! Half-edge representation of the planar subdivision induced by a set of
//! closed segments.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::point::{on_segment, Point};
use crate::exact_arith::Rational;

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type FaceId = usize;

/// The unbounded face always has id 0.
pub const OUTER_FACE: FaceId = 0;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub point: Point,
    /// Some outgoing half-edge; `None` for isolated vertices.
    pub incident: Option<HalfEdgeId>,
    /// Indices of the input segments passing through this vertex.
    pub tags: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub twin: HalfEdgeId,
    /// Face on the left.
    pub face: FaceId,
    pub next: HalfEdgeId,
    pub prev: HalfEdgeId,
    /// Indices of the input segments containing this edge.
    pub tags: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Face {
    /// Outer boundary cycle, counter-clockwise; `None` for the unbounded face.
    pub boundary: Option<HalfEdgeId>,
    /// One half-edge on each inner boundary component.
    pub holes: Vec<HalfEdgeId>,
    pub isolated: Vec<VertexId>,
}

#[derive(Clone, Debug, Default)]
pub struct Dcel {
    pub vertices: Vec<Vertex>,
    pub half_edges: Vec<HalfEdge>,
    pub faces: Vec<Face>,
    index: HashMap<Point, VertexId>,
}

impl Dcel {
    /// Builds the arrangement of closed segments. A segment whose endpoints
    /// coincide contributes a vertex only. Half-edge and vertex tags refer to
    /// positions in `segments`.
    pub fn from_segments(segments: &[(Point, Point)]) -> Dcel {
        let mut on_seg: Vec<Vec<Point>> = segments.iter().map(|(p, q)| vec![p.clone(), q.clone()]).collect();
        for (i, j, pts) in pairwise_intersections(segments) {
            for p in pts {
                on_seg[i].push(p.clone());
                on_seg[j].push(p);
            }
        }

        let mut dcel = Dcel::default();
        let mut piece_index: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        let mut pieces: Vec<(VertexId, VertexId, Vec<usize>)> = Vec::new();
        for (tag, pts) in on_seg.iter_mut().enumerate() {
            pts.sort();
            pts.dedup();
            let ids: Vec<VertexId> = pts.iter().map(|p| dcel.vertex_for(p)).collect();
            for &v in &ids {
                let tags = &mut dcel.vertices[v].tags;
                if tags.last() != Some(&tag) {
                    tags.push(tag);
                }
            }
            for w in ids.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                let k = *piece_index.entry(key).or_insert_with(|| {
                    pieces.push((key.0, key.1, Vec::new()));
                    pieces.len() - 1
                });
                let tags = &mut pieces[k].2;
                if tags.last() != Some(&tag) {
                    tags.push(tag);
                }
            }
        }

        for (k, (u, v, tags)) in pieces.into_iter().enumerate() {
            for (origin, twin) in [(u, 2 * k + 1), (v, 2 * k)] {
                dcel.half_edges.push(HalfEdge { origin, twin, face: OUTER_FACE, next: 0, prev: 0, tags: tags.clone() });
            }
        }
        dcel.link();
        dcel.assign_faces();
        dcel
    }

    fn vertex_for(&mut self, p: &Point) -> VertexId {
        if let Some(&v) = self.index.get(p) {
            return v;
        }
        let v = self.vertices.len();
        self.vertices.push(Vertex { point: p.clone(), incident: None, tags: Vec::new() });
        self.index.insert(p.clone(), v);
        v
    }

    pub fn vertex_at(&self, p: &Point) -> Option<VertexId> {
        self.index.get(p).copied()
    }

    pub fn dest(&self, h: HalfEdgeId) -> VertexId {
        self.half_edges[self.half_edges[h].twin].origin
    }

    pub fn origin_point(&self, h: HalfEdgeId) -> &Point {
        &self.vertices[self.half_edges[h].origin].point
    }

    pub fn dest_point(&self, h: HalfEdgeId) -> &Point {
        &self.vertices[self.dest(h)].point
    }

    fn direction(&self, h: HalfEdgeId) -> Point {
        self.dest_point(h) - self.origin_point(h)
    }

    /// Sorts the outgoing half-edges of every vertex by angle and sets
    /// `next`/`prev` so that each face lies to the left of its edges.
    fn link(&mut self) {
        let mut outgoing: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); self.vertices.len()];
        for (h, he) in self.half_edges.iter().enumerate() {
            outgoing[he.origin].push(h);
        }
        let mut pos = vec![0usize; self.half_edges.len()];
        for (v, list) in outgoing.iter_mut().enumerate() {
            let dirs: HashMap<HalfEdgeId, Point> = list.iter().map(|&h| (h, self.direction(h))).collect();
            list.sort_by(|a, b| angle_cmp(&dirs[a], &dirs[b]));
            for (i, &h) in list.iter().enumerate() {
                pos[h] = i;
            }
            self.vertices[v].incident = list.first().copied();
        }
        for h in 0..self.half_edges.len() {
            let t = self.half_edges[h].twin;
            let v = self.half_edges[t].origin;
            let list = &outgoing[v];
            let n = list[(pos[t] + list.len() - 1) % list.len()];
            self.half_edges[h].next = n;
            self.half_edges[n].prev = h;
        }
    }

    /// Half-edges of the cycle through `h`, following `next`.
    pub fn cycle(&self, h: HalfEdgeId) -> Vec<HalfEdgeId> {
        let mut out = vec![h];
        let mut e = self.half_edges[h].next;
        while e != h {
            out.push(e);
            e = self.half_edges[e].next;
        }
        out
    }

    fn cycle_area2(&self, cycle: &[HalfEdgeId]) -> Rational {
        cycle.iter().fold(Rational::zero(), |acc, &h| acc + self.origin_point(h).cross(self.dest_point(h)))
    }

    fn assign_faces(&mut self) {
        let n = self.half_edges.len();
        let mut cycle_of = vec![usize::MAX; n];
        let mut cycles: Vec<(Vec<HalfEdgeId>, Rational)> = Vec::new();
        for h in 0..n {
            if cycle_of[h] != usize::MAX {
                continue;
            }
            let c = self.cycle(h);
            for &e in &c {
                cycle_of[e] = cycles.len();
            }
            let a = self.cycle_area2(&c);
            cycles.push((c, a));
        }

        let comp = self.component_labels();

        self.faces = vec![Face::default()];
        let mut face_of_cycle = vec![OUTER_FACE; cycles.len()];
        for (i, (c, a)) in cycles.iter().enumerate() {
            if a.is_positive() {
                face_of_cycle[i] = self.faces.len();
                self.faces.push(Face { boundary: Some(c[0]), ..Face::default() });
            }
        }
        let bounded: Vec<usize> = (0..cycles.len()).filter(|&i| cycles[i].1.is_positive()).collect();
        let bounded_face = face_of_cycle.clone();
        let enclosing = |p: &Point, own: Option<usize>, this: &Dcel| -> FaceId {
            let mut best: Option<(usize, &Rational)> = None;
            for &i in &bounded {
                let (c, a) = &cycles[i];
                if Some(comp[this.half_edges[c[0]].origin]) == own {
                    continue;
                }
                if best.is_some_and(|(_, b)| a >= b) {
                    continue;
                }
                let poly: Vec<&Point> = c.iter().map(|&h| this.origin_point(h)).collect();
                if point_in_polygon(p, &poly) {
                    best = Some((i, a));
                }
            }
            best.map_or(OUTER_FACE, |(i, _)| bounded_face[i])
        };
        for (i, (c, a)) in cycles.iter().enumerate() {
            if a.is_positive() {
                continue;
            }
            let lowest = c.iter().map(|&h| self.half_edges[h].origin).min_by(|&u, &v| self.vertices[u].point.cmp(&self.vertices[v].point)).unwrap();
            let f = enclosing(&self.vertices[lowest].point, Some(comp[lowest]), self);
            face_of_cycle[i] = f;
            self.faces[f].holes.push(c[0]);
        }
        let isolated: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.vertices[v].incident.is_none()).collect();
        for v in isolated {
            let f = enclosing(&self.vertices[v].point, Some(comp[v]), self);
            self.faces[f].isolated.push(v);
        }
        for h in 0..n {
            self.half_edges[h].face = face_of_cycle[cycle_of[h]];
        }
    }

    pub fn num_edges(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Vertices of the outer boundary of a bounded face, counter-clockwise.
    pub fn face_points(&self, f: FaceId) -> Vec<Point> {
        match self.faces[f].boundary {
            Some(h) => self.cycle(h).iter().map(|&e| self.origin_point(e).clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (1..self.faces.len()).filter(|&f| self.faces[f].boundary.is_some())
    }

    /// Smallest vertex id of the connected component of each vertex.
    fn component_labels(&self) -> Vec<VertexId> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for he in &self.half_edges {
            let a = find(&mut parent, he.origin);
            let b = find(&mut parent, self.half_edges[he.twin].origin);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..self.vertices.len()).map(|v| find(&mut parent, v)).collect()
    }

    /// Number of connected components, isolated vertices included.
    pub fn components(&self) -> usize {
        self.component_labels().iter().enumerate().filter(|(v, c)| v == *c).count()
    }

    /// Checks the structural invariants: twin involution, `next`/`prev`
    /// inverse, chained endpoints, consistent faces, and Euler's formula
    /// `V - E + F = 1 + C`.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (h, he) in self.half_edges.iter().enumerate() {
            if self.half_edges[he.twin].twin != h || he.twin == h {
                return Err(format!("twin of twin of {h} is not {h}"));
            }
            if self.half_edges[he.next].prev != h || self.half_edges[he.prev].next != h {
                return Err(format!("next/prev mismatch at {h}"));
            }
            if self.half_edges[he.next].origin != self.dest(h) {
                return Err(format!("next of {h} does not start at its destination"));
            }
            if self.half_edges[he.next].face != he.face {
                return Err(format!("face changes along the cycle of {h}"));
            }
        }
        for (f, face) in self.faces.iter().enumerate() {
            if let Some(h) = face.boundary {
                if self.half_edges[h].face != f {
                    return Err(format!("boundary of face {f} is not incident to it"));
                }
                if !self.cycle_area2(&self.cycle(h)).is_positive() {
                    return Err(format!("outer boundary of face {f} is not counter-clockwise"));
                }
            }
            for &h in &face.holes {
                if self.half_edges[h].face != f {
                    return Err(format!("hole of face {f} is not incident to it"));
                }
            }
        }
        let v = self.vertices.len() as i64;
        let e = self.num_edges() as i64;
        let f = self.faces.len() as i64;
        let c = self.components() as i64;
        if v - e + f != 1 + c {
            return Err(format!("Euler characteristic: V={v} E={e} F={f} C={c}"));
        }
        Ok(())
    }
}

fn half_plane(d: &Point) -> u8 {
    if d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise angular order of direction vectors starting at angle 0.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    half_plane(a).cmp(&half_plane(b)).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Strict interior test by ray crossing; `p` must not lie on the boundary.
fn point_in_polygon(p: &Point, poly: &[&Point]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Intersection points of every pair of segments whose bounding boxes meet,
/// found with a sweep over `x`. Collinear overlaps report the endpoints
/// lying on the other segment.
fn pairwise_intersections(segments: &[(Point, Point)]) -> Vec<(usize, usize, Vec<Point>)> {
    let bbox: Vec<(&Rational, &Rational, &Rational, &Rational)> = segments
        .iter()
        .map(|(p, q)| {
            let (x0, x1) = if p.x <= q.x { (&p.x, &q.x) } else { (&q.x, &p.x) };
            let (y0, y1) = if p.y <= q.y { (&p.y, &q.y) } else { (&q.y, &p.y) };
            (x0, x1, y0, y1)
        })
        .collect();
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by(|&a, &b| bbox[a].0.cmp(bbox[b].0).then(a.cmp(&b)));
    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if bbox[j].0 > bbox[i].1 {
                break;
            }
            if bbox[j].2 > bbox[i].3 || bbox[i].2 > bbox[j].3 {
                continue;
            }
            let pts = segment_intersection(&segments[i], &segments[j]);
            if !pts.is_empty() {
                out.push((i.min(j), i.max(j), pts));
            }
        }
    }
    out
}

fn segment_intersection(s: &(Point, Point), u: &(Point, Point)) -> Vec<Point> {
    let (p1, q1) = s;
    let (p2, q2) = u;
    let r = q1 - p1;
    let w = q2 - p2;
    let d = r.cross(&w);
    if !d.is_zero() {
        let diff = p2 - p1;
        let t = diff.cross(&w) / &d;
        let v = diff.cross(&r) / &d;
        let zero = Rational::zero();
        let one = Rational::from_integer(1.into());
        if t >= zero && t <= one && v >= zero && v <= one {
            return vec![p1 + &r.scale(&t)];
        }
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in [p2, q2] {
        if on_segment(p1, q1, p) {
            out.push(p.clone());
        }
    }
    for p in [p1, q1] {
        if on_segment(p2, q2, p) {
            out.push(p.clone());
        }
    }
    out
}
