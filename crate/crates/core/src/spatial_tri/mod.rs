//! Affine-invariant triangulation of a snapshot: fan every face of the
//! boundary-line arrangement that lies in the input from its vertex mean,
//! and keep lower-dimensional leftovers as segments and points.

use std::collections::{BTreeMap, HashMap};

use crate::planar_geom::{
    arrangement_dcel, build_subdivision, convex_hull, face_vertex_mean, Degeneracy, Dcel, Line, PlanarSubdivision,
    Point, Triangle, VertexId,
};

/// Corner `corner` of input triangle `triangle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CornerRef {
    pub triangle: usize,
    pub corner: usize,
}

/// The line through two input corners, smaller reference first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineRef(pub CornerRef, pub CornerRef);

impl LineRef {
    pub fn new(a: CornerRef, b: CornerRef) -> Self {
        if a <= b {
            LineRef(a, b)
        } else {
            LineRef(b, a)
        }
    }
}

/// How an output vertex is obtained from the input corners. Replaying the
/// recipe on moving corners yields the moving vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexSource {
    Corner(CornerRef),
    Crossing(LineRef, LineRef),
    Mean(Vec<VertexSource>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SnapshotTriangulation {
    /// Canonical triangles in canonical order.
    pub triangles: Vec<Triangle>,
    /// Per triangle, the sources of its corners in canonical corner order.
    pub sources: Vec<[VertexSource; 3]>,
    /// Per triangle, the face walk (or segment, or point) it was cut from.
    pub walks: Vec<Vec<Point>>,
}

impl SnapshotTriangulation {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

struct Carriers {
    /// Deduplicated boundary lines with a representative corner pair.
    lines: Vec<Line>,
    refs: Vec<LineRef>,
}

struct Builder<'a> {
    input: &'a [Triangle],
    corner_of: HashMap<&'a Point, CornerRef>,
    out: Vec<(Triangle, [VertexSource; 3], Vec<Point>)>,
}

impl<'a> Builder<'a> {
    fn new(input: &'a [Triangle]) -> Self {
        let mut corner_of: HashMap<&Point, CornerRef> = HashMap::new();
        for (i, t) in input.iter().enumerate() {
            for (k, p) in t.corners().iter().enumerate() {
                corner_of.entry(p).or_insert(CornerRef { triangle: i, corner: k });
            }
        }
        Builder { input, corner_of, out: Vec::new() }
    }

    /// Source of `p` given candidate lines through it, best first.
    fn source(&self, p: &Point, through: &[(Line, LineRef)]) -> VertexSource {
        if let Some(&c) = self.corner_of.get(p) {
            return VertexSource::Corner(c);
        }
        for (i, (l1, r1)) in through.iter().enumerate() {
            for (l2, r2) in &through[i + 1..] {
                if !l1.is_parallel(l2) {
                    return VertexSource::Crossing(*r1, *r2);
                }
            }
        }
        panic!("vertex {p} is neither an input corner nor a crossing of two lines");
    }

    fn emit(&mut self, t: Triangle, sources: [VertexSource; 3], walk: Vec<Point>) {
        let order = t.canonical_order();
        let canon = t.canonical();
        let src = order.map(|i| sources[i].clone());
        self.out.push((canon, src, walk));
    }

    fn carriers(&self, sub: &PlanarSubdivision) -> Carriers {
        let mut by_line: BTreeMap<Line, LineRef> = BTreeMap::new();
        for s in sub.boundary_sources() {
            let src = sub.sources[s];
            if src.degeneracy == Degeneracy::Point {
                continue;
            }
            let (p, q) = sub.segment(s);
            let line = Line::through(p, q).expect("positive-length segment");
            let r = LineRef::new(
                CornerRef { triangle: src.triangle, corner: src.a },
                CornerRef { triangle: src.triangle, corner: src.b },
            );
            by_line.entry(line).and_modify(|e| *e = (*e).min(r)).or_insert(r);
        }
        let (lines, refs) = by_line.into_iter().unzip();
        Carriers { lines, refs }
    }

    fn fan_faces(&mut self, sub: &PlanarSubdivision, carriers: &Carriers) {
        // Hull of the union itself, so that any representation of the same
        // union yields the same arrangement.
        let mut hull_pts: Vec<Point> = Vec::new();
        for h in sub.boundary_edges() {
            hull_pts.push(sub.dcel.origin_point(h).clone());
            hull_pts.push(sub.dcel.dest_point(h).clone());
        }
        let hull = convex_hull(&hull_pts);
        let Ok(arr) = arrangement_dcel(&carriers.lines, &hull) else {
            return;
        };
        let n = hull.len();
        let hull_refs: Vec<LineRef> =
            (0..n).map(|i| LineRef::new(self.corner_of[&hull[i]], self.corner_of[&hull[(i + 1) % n]])).collect();
        let dcel = &arr.dcel;
        let lines_through = |v: VertexId| -> Vec<(Line, LineRef)> {
            let mut carrier_tags: Vec<usize> = Vec::new();
            let mut hull_tags: Vec<usize> = Vec::new();
            for &tag in &dcel.vertices[v].tags {
                match arr.tag_line[tag] {
                    Some(j) => carrier_tags.push(j),
                    None => hull_tags.push(tag),
                }
            }
            carrier_tags.sort();
            carrier_tags.dedup();
            let mut out: Vec<(Line, LineRef)> =
                carrier_tags.into_iter().map(|j| (carriers.lines[j].clone(), carriers.refs[j])).collect();
            for tag in hull_tags {
                let line = Line::through(&hull[tag], &hull[(tag + 1) % n]).unwrap();
                out.push((line, hull_refs[tag]));
            }
            out
        };
        for f in dcel.bounded_faces().collect::<Vec<_>>() {
            let walk = face_walk(dcel, f);
            let pts: Vec<Point> = walk.iter().map(|&v| dcel.vertices[v].point.clone()).collect();
            let mean = face_vertex_mean(&pts);
            if !sub.covered_interior(&mean) {
                continue;
            }
            let srcs: Vec<VertexSource> =
                walk.iter().zip(&pts).map(|(&v, p)| self.source(p, &lines_through(v))).collect();
            let mean_src = VertexSource::Mean(srcs.clone());
            let k = pts.len();
            for i in 0..k {
                let j = (i + 1) % k;
                let t = Triangle::new(mean.clone(), pts[i].clone(), pts[j].clone());
                self.emit(t, [mean_src.clone(), srcs[i].clone(), srcs[j].clone()], pts.clone());
            }
        }
    }

    /// Degenerate segments outside the covered region, merged into maximal
    /// collinear runs and split where carriers cross them.
    fn residue_segments(&mut self, sub: &PlanarSubdivision, carriers: &Carriers) -> Vec<(Point, Point)> {
        let dcel = &sub.dcel;
        let mut runs_by_line: BTreeMap<usize, Vec<(Point, Point)>> = BTreeMap::new();
        for h in sub.boundary_edges() {
            let he = &dcel.half_edges[h];
            let faces = [he.face, dcel.half_edges[he.twin].face];
            if faces.iter().any(|&f| sub.inside[f]) {
                continue;
            }
            let (p, q) = (dcel.origin_point(h), dcel.dest_point(h));
            let (p, q) = if p <= q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
            let line = Line::through(&p, &q).unwrap();
            let j = carriers.lines.binary_search(&line).expect("degenerate boundary piece has a carrier");
            runs_by_line.entry(j).or_default().push((p, q));
        }
        let mut emitted = Vec::new();
        for (j, mut pieces) in runs_by_line {
            pieces.sort();
            let mut runs: Vec<(Point, Point)> = Vec::new();
            for (p, q) in pieces {
                match runs.last_mut() {
                    Some(last) if last.1 == p => last.1 = q,
                    _ => runs.push((p, q)),
                }
            }
            let line = &carriers.lines[j];
            for (lo, hi) in runs {
                let mut cuts: Vec<Point> = vec![lo.clone(), hi.clone()];
                for other in &carriers.lines {
                    if let Some(x) = line.intersect(other) {
                        if lo < x && x < hi {
                            cuts.push(x);
                        }
                    }
                }
                cuts.sort();
                cuts.dedup();
                for w in cuts.windows(2) {
                    let through: Vec<(Line, LineRef)> = std::iter::once((line.clone(), carriers.refs[j]))
                        .chain(
                            carriers
                                .lines
                                .iter()
                                .zip(&carriers.refs)
                                .filter(|(l, _)| *l != line)
                                .map(|(l, r)| (l.clone(), *r)),
                        )
                        .collect();
                    let a = self.source(&w[0], &filter_through(&through, &w[0]));
                    let b = self.source(&w[1], &filter_through(&through, &w[1]));
                    let t = Triangle::segment(w[0].clone(), w[1].clone());
                    self.emit(t, [a, b.clone(), b], vec![w[0].clone(), w[1].clone()]);
                    emitted.push((w[0].clone(), w[1].clone()));
                }
            }
        }
        emitted
    }

    fn isolated_points(&mut self, sub: &PlanarSubdivision, segments: &[(Point, Point)]) {
        let mut seen: Vec<&Point> = Vec::new();
        for t in self.input {
            if t.degeneracy() != Degeneracy::Point {
                continue;
            }
            let p = t.corner(0);
            if seen.contains(&p) || sub.covered(p) {
                continue;
            }
            if segments.iter().any(|(a, b)| crate::planar_geom::on_segment(a, b, p)) {
                continue;
            }
            seen.push(p);
            let s = VertexSource::Corner(self.corner_of[p]);
            self.out.push((Triangle::point(p.clone()), [s.clone(), s.clone(), s], vec![p.clone()]));
        }
    }
}

fn filter_through(lines: &[(Line, LineRef)], p: &Point) -> Vec<(Line, LineRef)> {
    lines.iter().filter(|(l, _)| l.contains(p)).cloned().collect()
}

/// Vertices of a bounded face in counter-clockwise order.
fn face_walk(dcel: &Dcel, f: usize) -> Vec<VertexId> {
    let h = dcel.faces[f].boundary.expect("bounded face");
    dcel.cycle(h).into_iter().map(|e| dcel.half_edges[e].origin).collect()
}

/// Triangulates the union of `input`, recording for every output corner how
/// it derives from the input corners.
pub fn triangulate_snapshot(input: &[Triangle]) -> SnapshotTriangulation {
    if input.is_empty() {
        return SnapshotTriangulation::default();
    }
    let sub = build_subdivision(input);
    let mut b = Builder::new(input);
    let carriers = b.carriers(&sub);
    if input.iter().any(Triangle::is_full) {
        b.fan_faces(&sub, &carriers);
    }
    let segs = b.residue_segments(&sub, &carriers);
    b.isolated_points(&sub, &segs);
    let mut out = b.out;
    out.sort_by(|x, y| x.0.cmp(&y.0));
    let mut result = SnapshotTriangulation::default();
    for (t, s, w) in out {
        result.triangles.push(t);
        result.sources.push(s);
        result.walks.push(w);
    }
    result
}

/// Output size bound factor: at most `SIZE_BOUND_FACTOR * m^2` triangles for
/// `m` input triangles.
pub const SIZE_BOUND_FACTOR: usize = 81;

/// Output size of the triangulation of `input` and the quadratic bound it
/// must respect.
pub fn count_bound_check(input: &[Triangle]) -> (usize, usize) {
    let m = input.len();
    let size = triangulate_snapshot(input).len();
    let bound = SIZE_BOUND_FACTOR * m * m;
    assert!(size <= bound, "{size} triangles exceed the bound {bound}");
    (size, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn square_fanned_from_centre() {
        let s = [Triangle::from_i64([(0, 0), (2, 0), (2, 2)]), Triangle::from_i64([(0, 0), (0, 2), (2, 2)])];
        let out = triangulate_snapshot(&s);
        let mut expected: Vec<Triangle> = [
            [(0, 0), (2, 0), (1, 1)],
            [(2, 0), (2, 2), (1, 1)],
            [(2, 2), (0, 2), (1, 1)],
            [(0, 2), (0, 0), (1, 1)],
        ]
        .iter()
        .map(|c| Triangle::from_i64(*c).canonical())
        .collect();
        expected.sort();
        assert_eq!(out.triangles, expected);
    }

    #[test]
    fn single_triangle_fan() {
        let t = Triangle::new(Point::from_i64(0, 0), Point::from_i64(1, 0), Point::new(rat(1, 2), rat(1, 1)));
        let out = triangulate_snapshot(&[t]);
        assert_eq!(out.len(), 3);
        let m = Point::new(rat(1, 2), rat(1, 3));
        assert!(out.triangles.iter().all(|t| t.corners().contains(&m)));
        assert!(out.sources.iter().all(|s| matches!(s[0], VertexSource::Mean(_))
            || matches!(s[1], VertexSource::Mean(_))
            || matches!(s[2], VertexSource::Mean(_))));
    }

    #[test]
    fn empty_and_degenerate_inputs() {
        assert!(triangulate_snapshot(&[]).is_empty());
        let seg = Triangle::from_i64([(0, 0), (2, 0), (2, 0)]);
        let pt = Triangle::from_i64([(5, 5), (5, 5), (5, 5)]);
        let on_seg = Triangle::from_i64([(1, 0), (1, 0), (1, 0)]);
        let out = triangulate_snapshot(&[seg.clone(), pt.clone(), on_seg]);
        assert_eq!(out.triangles, vec![seg.canonical(), pt]);
    }

    #[test]
    fn segment_split_where_it_enters_a_triangle() {
        let tri = Triangle::from_i64([(0, 0), (2, 0), (0, 2)]);
        let seg = Triangle::from_i64([(-2, 1), (4, 1), (4, 1)]);
        let out = triangulate_snapshot(&[tri, seg]);
        let segs: Vec<&Triangle> = out.triangles.iter().filter(|t| t.degeneracy() == Degeneracy::Segment).collect();
        assert_eq!(segs.len(), 2);
        assert!(segs.contains(&&Triangle::from_i64([(-2, 1), (0, 1), (0, 1)])));
        assert!(segs.contains(&&Triangle::from_i64([(1, 1), (4, 1), (4, 1)])));
    }

    #[test]
    fn size_bound_holds_for_one_triangle() {
        assert_eq!(count_bound_check(&[Triangle::from_i64([(0, 0), (1, 0), (0, 1)])]), (3, 81));
    }
}
