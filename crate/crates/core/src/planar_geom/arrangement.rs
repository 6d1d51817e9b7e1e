//! Arrangement of lines clipped to a convex polygon.

use thiserror::Error;

use super::dcel::Dcel;
use super::line::Line;
use super::point::{on_segment, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate input handled upstream: the bounding hull has no interior")]
    DegenerateHull,
}

/// Part of `line` inside the convex polygon `hull` (counter-clockwise), or
/// `None` when it misses the interior.
pub fn clip_to_hull(line: &Line, hull: &[Point]) -> Option<(Point, Point)> {
    let mut hits: Vec<Point> = Vec::new();
    let n = hull.len();
    for i in 0..n {
        let p = &hull[i];
        let q = &hull[(i + 1) % n];
        let edge = Line::through(p, q)?;
        if &edge == line {
            return None;
        }
        if let Some(x) = edge.intersect(line) {
            if on_segment(p, q, &x) {
                hits.push(x);
            }
        }
    }
    let lo = hits.iter().min()?.clone();
    let hi = hits.iter().max()?.clone();
    (lo != hi).then_some((lo, hi))
}

/// Arrangement of lines inside a hull. Each DCEL tag names the segment it
/// came from: `tag_line[tag]` is `Some(j)` for `lines[j]` and `None` for a
/// hull edge.
#[derive(Clone, Debug)]
pub struct LineArrangement {
    pub dcel: Dcel,
    pub tag_line: Vec<Option<usize>>,
}

/// Half-edge structure of the arrangement of `lines` inside `hull`. Lines
/// on a hull edge or missing the hull interior contribute nothing beyond
/// the hull itself.
pub fn arrangement_dcel(lines: &[Line], hull: &[Point]) -> Result<LineArrangement, GeomError> {
    if hull.len() < 3 {
        return Err(GeomError::DegenerateHull);
    }
    let n = hull.len();
    let mut segs: Vec<(Point, Point)> = Vec::new();
    let mut tag_line = Vec::new();
    for i in 0..n {
        segs.push((hull[i].clone(), hull[(i + 1) % n].clone()));
        let edge = Line::through(&hull[i], &hull[(i + 1) % n]).unwrap();
        tag_line.push(lines.iter().position(|l| l == &edge));
    }
    for (j, l) in lines.iter().enumerate() {
        if let Some(s) = clip_to_hull(l, hull) {
            segs.push(s);
            tag_line.push(Some(j));
        }
    }
    Ok(LineArrangement { dcel: Dcel::from_segments(&segs), tag_line })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar_geom::hull::convex_hull;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_i64(x, y)).collect()
    }

    #[test]
    fn empty_arrangement_is_the_hull() {
        let hull = pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let d = arrangement_dcel(&[], &hull).unwrap().dcel;
        d.check_invariants().unwrap();
        assert_eq!(d.vertices.len(), 4);
        assert_eq!(d.num_edges(), 4);
        assert_eq!(d.bounded_faces().count(), 1);
    }

    #[test]
    fn two_crossing_lines() {
        let hull = pts(&[(-10, -10), (10, -10), (10, 10), (-10, 10)]);
        let lines = [
            Line::through(&Point::from_i64(0, 0), &Point::from_i64(1, 1)).unwrap(),
            Line::through(&Point::from_i64(0, 0), &Point::from_i64(1, -1)).unwrap(),
        ];
        let d = arrangement_dcel(&lines, &hull).unwrap().dcel;
        d.check_invariants().unwrap();
        assert_eq!(d.bounded_faces().count(), 4);
    }

    #[test]
    fn degenerate_hull_rejected() {
        let hull = convex_hull(&pts(&[(0, 0), (1, 1), (2, 2)]));
        assert_eq!(arrangement_dcel(&[], &hull).unwrap_err(), GeomError::DegenerateHull);
    }
}
