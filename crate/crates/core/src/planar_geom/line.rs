use std::fmt;

use num_traits::{One, Signed, Zero};

use super::point::Point;
use crate::exact_arith::{format_rational, Rational};

/// The line `a x + b y = c`, scaled so that the first nonzero of `(a, b)` is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Self> {
        let k = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return None;
        };
        if k.is_one() {
            return Some(Line { a, b, c });
        }
        Some(Line { a: a / &k, b: b / &k, c: c / &k })
    }

    /// Line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Option<Self> {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Line::new(a, b, c)
    }

    /// Sign of `a x + b y - c` at `p`.
    pub fn side(&self, p: &Point) -> i8 {
        let v = &self.a * &p.x + &self.b * &p.y - &self.c;
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.side(p) == 0
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &self.b * &other.c) / &det;
        let y = (&self.a * &other.c - &self.c * &other.a) / &det;
        Some(Point { x, y })
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x + {} y = {}", format_rational(&self.a), format_rational(&self.b), format_rational(&self.c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    #[test]
    fn canonical_scaling() {
        let l = Line::through(&Point::from_i64(0, 2), &Point::from_i64(1, 4)).unwrap();
        assert_eq!(l, Line { a: int(1), b: rat(-1, 2), c: int(-1) });
        let h = Line::through(&Point::from_i64(5, 1), &Point::from_i64(-2, 1)).unwrap();
        assert_eq!(h, Line { a: int(0), b: int(1), c: int(1) });
        assert!(Line::through(&Point::from_i64(1, 1), &Point::from_i64(1, 1)).is_none());
    }

    #[test]
    fn crossing() {
        let l1 = Line::through(&Point::from_i64(0, 0), &Point::from_i64(2, 2)).unwrap();
        let l2 = Line::through(&Point::from_i64(0, 2), &Point::from_i64(2, 0)).unwrap();
        assert_eq!(l1.intersect(&l2), Some(Point::from_i64(1, 1)));
        assert!(l1.intersect(&l1).is_none());
    }
}
