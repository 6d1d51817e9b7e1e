use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{Signed, Zero};

use crate::exact_arith::{format_rational, int, Rational};

/// A point of the plane with exact rational coordinates.
///
/// The derived order is lexicographic, `x` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Point { x: int(x), y: int(y) }
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point { x: &self.x * k, y: &self.y * k }
    }

    /// z-component of the cross product of `self` and `other` as vectors.
    pub fn cross(&self, other: &Point) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// Quarter turn counter-clockwise, as a vector.
    pub fn rot90(&self) -> Point {
        Point { x: -&self.y, y: self.x.clone() }
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of `pqr`.
pub fn area2(p: &Point, q: &Point, r: &Point) -> Rational {
    (q - p).cross(&(r - p))
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let d = area2(p, q, r);
    if d.is_zero() {
        Orientation::Collinear
    } else if d.is_positive() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// Whether `r` lies on the closed segment `pq`.
pub fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    if orientation(p, q, r) != Orientation::Collinear {
        return false;
    }
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    lo <= r && r <= hi
}

/// Arithmetic mean of a nonempty list of points.
pub fn face_vertex_mean(walk: &[Point]) -> Point {
    assert!(!walk.is_empty(), "empty face walk");
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    for p in walk {
        sx += &p.x;
        sy += &p.y;
    }
    let n = int(walk.len() as i64);
    Point { x: sx / &n, y: sy / n }
}
