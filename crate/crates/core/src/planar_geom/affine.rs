use num_traits::{One, Zero};

use super::point::Point;
use super::triangle::Triangle;
use crate::exact_arith::Rational;

/// Time-independent affine map `(x, y) -> (a11 x + a12 y + b1, a21 x + a22 y + b2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaticAffinity {
    pub a11: Rational,
    pub a12: Rational,
    pub a21: Rational,
    pub a22: Rational,
    pub b1: Rational,
    pub b2: Rational,
}

impl StaticAffinity {
    pub fn identity() -> Self {
        StaticAffinity {
            a11: Rational::one(),
            a12: Rational::zero(),
            a21: Rational::zero(),
            a22: Rational::one(),
            b1: Rational::zero(),
            b2: Rational::zero(),
        }
    }

    pub fn det(&self) -> Rational {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point {
            x: &self.a11 * &p.x + &self.a12 * &p.y + &self.b1,
            y: &self.a21 * &p.x + &self.a22 * &p.y + &self.b2,
        }
    }

    pub fn apply_triangle(&self, t: &Triangle) -> Triangle {
        let [a, b, c] = t.corners();
        Triangle::new(self.apply(a), self.apply(b), self.apply(c))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &StaticAffinity) -> StaticAffinity {
        StaticAffinity {
            a11: &self.a11 * &other.a11 + &self.a12 * &other.a21,
            a12: &self.a11 * &other.a12 + &self.a12 * &other.a22,
            a21: &self.a21 * &other.a11 + &self.a22 * &other.a21,
            a22: &self.a21 * &other.a12 + &self.a22 * &other.a22,
            b1: &self.a11 * &other.b1 + &self.a12 * &other.b2 + &self.b1,
            b2: &self.a21 * &other.b1 + &self.a22 * &other.b2 + &self.b2,
        }
    }

    pub fn inverse(&self) -> Option<StaticAffinity> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let a11 = &self.a22 / &d;
        let a12 = -&self.a12 / &d;
        let a21 = -&self.a21 / &d;
        let a22 = &self.a11 / &d;
        let b1 = -(&a11 * &self.b1 + &a12 * &self.b2);
        let b2 = -(&a21 * &self.b1 + &a22 * &self.b2);
        Some(StaticAffinity { a11, a12, a21, a22, b1, b2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    #[test]
    fn inverse_round_trip() {
        let f = StaticAffinity { a11: int(2), a12: int(1), a21: int(0), a22: int(1), b1: int(1), b2: int(-3) };
        let g = f.inverse().unwrap();
        assert_eq!(f.compose(&g), StaticAffinity::identity());
        let p = Point::new(rat(1, 3), rat(-2, 7));
        assert_eq!(g.apply(&f.apply(&p)), p);
    }
}
