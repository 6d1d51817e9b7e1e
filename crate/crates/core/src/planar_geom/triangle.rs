use std::cmp::Ordering;
use std::fmt;

use super::point::{area2, orientation, Orientation, Point};
use crate::exact_arith::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degeneracy {
    Full,
    Segment,
    Point,
}

/// Three corners, possibly collinear or coincident.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    corners: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Self {
        Triangle { corners: [a, b, c] }
    }

    pub fn from_i64(c: [(i64, i64); 3]) -> Self {
        Triangle::new(
            Point::from_i64(c[0].0, c[0].1),
            Point::from_i64(c[1].0, c[1].1),
            Point::from_i64(c[2].0, c[2].1),
        )
    }

    pub fn segment(a: Point, b: Point) -> Self {
        Triangle::new(a, b.clone(), b)
    }

    pub fn point(p: Point) -> Self {
        Triangle::new(p.clone(), p.clone(), p)
    }

    pub fn corners(&self) -> &[Point; 3] {
        &self.corners
    }

    pub fn corner(&self, i: usize) -> &Point {
        &self.corners[i]
    }

    pub fn degeneracy(&self) -> Degeneracy {
        let [a, b, c] = &self.corners;
        if orientation(a, b, c) != Orientation::Collinear {
            Degeneracy::Full
        } else if a == b && b == c {
            Degeneracy::Point
        } else {
            Degeneracy::Segment
        }
    }

    pub fn is_full(&self) -> bool {
        self.degeneracy() == Degeneracy::Full
    }

    /// Twice the signed area.
    pub fn area2(&self) -> Rational {
        area2(&self.corners[0], &self.corners[1], &self.corners[2])
    }

    /// Lexicographically smallest and largest corner; for a segment these
    /// are its endpoints.
    pub fn extent(&self) -> (&Point, &Point) {
        let lo = self.corners.iter().min().unwrap();
        let hi = self.corners.iter().max().unwrap();
        (lo, hi)
    }

    /// Indices of the two corners spanning a segment triangle.
    pub fn segment_corners(&self) -> (usize, usize) {
        let lo = (0..3).min_by(|&i, &j| self.corners[i].cmp(&self.corners[j]).then(i.cmp(&j))).unwrap();
        let hi = (0..3).max_by(|&i, &j| self.corners[i].cmp(&self.corners[j]).then(j.cmp(&i))).unwrap();
        (lo, hi)
    }

    /// Corner permutation giving the canonical layout: counter-clockwise
    /// from the lexicographic minimum for full triangles, `[min, max, max]`
    /// for segments.
    pub fn canonical_order(&self) -> [usize; 3] {
        match self.degeneracy() {
            Degeneracy::Full => {
                let m = (0..3).min_by(|&i, &j| self.corners[i].cmp(&self.corners[j])).unwrap();
                let ccw = self.area2() > Rational::from_integer(0.into());
                if ccw {
                    [m, (m + 1) % 3, (m + 2) % 3]
                } else {
                    [m, (m + 2) % 3, (m + 1) % 3]
                }
            }
            Degeneracy::Segment => {
                let (lo, hi) = self.segment_corners();
                [lo, hi, hi]
            }
            Degeneracy::Point => [0, 0, 0],
        }
    }

    pub fn canonical(&self) -> Triangle {
        let [i, j, k] = self.canonical_order();
        Triangle::new(self.corners[i].clone(), self.corners[j].clone(), self.corners[k].clone())
    }

    /// Corners sorted lexicographically; the primary ordering key.
    pub fn sorted_corners(&self) -> [&Point; 3] {
        let mut c = [&self.corners[0], &self.corners[1], &self.corners[2]];
        c.sort();
        c
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point) -> bool {
        let [a, b, c] = &self.corners;
        match self.degeneracy() {
            Degeneracy::Full => {
                let s = [orientation(a, b, p), orientation(b, c, p), orientation(c, a, p)];
                let has_ccw = s.contains(&Orientation::Ccw);
                let has_cw = s.contains(&Orientation::Cw);
                !(has_ccw && has_cw)
            }
            Degeneracy::Segment => {
                let (lo, hi) = self.extent();
                super::point::on_segment(lo, hi, p)
            }
            Degeneracy::Point => a == p,
        }
    }
}

impl PartialOrd for Triangle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triangle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sorted_corners().cmp(&other.sorted_corners()).then_with(|| self.corners.cmp(&other.corners))
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.corners[0], self.corners[1], self.corners[2])
    }
}
