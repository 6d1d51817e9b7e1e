use std::fmt;

use crate::exact_arith::{ArithError, Rational, RationalFunction, TimeValue};
use crate::planar_geom::{Point, StaticAffinity};

use super::interval::TimeInterval;

/// `(x, y, t) -> (a11 x + a12 y + b1, a21 x + a22 y + b2)` with rational
/// functions of `t` as coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeDepAffinity {
    pub a11: RationalFunction,
    pub a12: RationalFunction,
    pub a21: RationalFunction,
    pub a22: RationalFunction,
    pub b1: RationalFunction,
    pub b2: RationalFunction,
}

impl TimeDepAffinity {
    pub fn identity() -> Self {
        Self::from_static(&StaticAffinity::identity())
    }

    pub fn from_static(a: &StaticAffinity) -> Self {
        TimeDepAffinity {
            a11: a.a11.clone().into(),
            a12: a.a12.clone().into(),
            a21: a.a21.clone().into(),
            a22: a.a22.clone().into(),
            b1: a.b1.clone().into(),
            b2: a.b2.clone().into(),
        }
    }

    /// `(x + dx(t), y + dy(t))`
    pub fn translation(dx: RationalFunction, dy: RationalFunction) -> Self {
        TimeDepAffinity { b1: dx, b2: dy, ..Self::identity() }
    }

    pub fn entries(&self) -> [(&'static str, &RationalFunction); 6] {
        [("a11", &self.a11), ("a12", &self.a12), ("a21", &self.a21), ("a22", &self.a22), ("b1", &self.b1), ("b2", &self.b2)]
    }

    pub fn det(&self) -> RationalFunction {
        &(&self.a11 * &self.a22) - &(&self.a12 * &self.a21)
    }

    pub fn at(&self, tau: &Rational) -> Result<StaticAffinity, ArithError> {
        Ok(StaticAffinity {
            a11: self.a11.eval(tau)?,
            a12: self.a12.eval(tau)?,
            a21: self.a21.eval(tau)?,
            a22: self.a22.eval(tau)?,
            b1: self.b1.eval(tau)?,
            b2: self.b2.eval(tau)?,
        })
    }

    pub fn apply(&self, p: &Point, tau: &Rational) -> Result<Point, ArithError> {
        Ok(self.at(tau)?.apply(p))
    }

    /// Trajectory of a fixed point under the map.
    pub fn trajectory(&self, p: &Point) -> (RationalFunction, RationalFunction) {
        let x = RationalFunction::constant(p.x.clone());
        let y = RationalFunction::constant(p.y.clone());
        let fx = &(&(&self.a11 * &x) + &(&self.a12 * &y)) + &self.b1;
        let fy = &(&(&self.a21 * &x) + &(&self.a22 * &y)) + &self.b2;
        (fx, fy)
    }

    /// `alpha ∘ self`
    pub fn then_static(&self, alpha: &StaticAffinity) -> Self {
        let k = |r: &Rational| RationalFunction::constant(r.clone());
        let lin = |c1: &Rational, c2: &Rational, f: &RationalFunction, g: &RationalFunction| {
            &(&k(c1) * f) + &(&k(c2) * g)
        };
        TimeDepAffinity {
            a11: lin(&alpha.a11, &alpha.a12, &self.a11, &self.a21),
            a12: lin(&alpha.a11, &alpha.a12, &self.a12, &self.a22),
            a21: lin(&alpha.a21, &alpha.a22, &self.a11, &self.a21),
            a22: lin(&alpha.a21, &alpha.a22, &self.a12, &self.a22),
            b1: &lin(&alpha.a11, &alpha.a12, &self.b1, &self.b2) + &k(&alpha.b1),
            b2: &lin(&alpha.a21, &alpha.a22, &self.b1, &self.b2) + &k(&alpha.b2),
        }
    }

    /// Poles of any coefficient and zeros of the determinant restricted to
    /// `domain`, as `(poles, singular)`.
    pub fn defects_on(&self, domain: &TimeInterval) -> (Vec<(&'static str, TimeValue)>, Vec<TimeValue>) {
        let mut poles = Vec::new();
        for (name, f) in self.entries() {
            for r in domain.roots_of(f.den()) {
                poles.push((name, r));
            }
        }
        let det = self.det();
        let singular = if det.is_zero() { vec![domain.lo.clone()] } else { domain.roots_of(det.num()) };
        (poles, singular)
    }
}

impl fmt::Display for TimeDepAffinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}) x + ({}) y + {}, ({}) x + ({}) y + {})",
            self.a11, self.a12, self.b1, self.a21, self.a22, self.b2
        )
    }
}

/// A point whose coordinates are rational functions of time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingPoint {
    pub fx: RationalFunction,
    pub fy: RationalFunction,
    pub domain: TimeInterval,
}

impl MovingPoint {
    pub fn eval(&self, tau: &Rational) -> Result<Point, ArithError> {
        Ok(Point::new(self.fx.eval(tau)?, self.fy.eval(tau)?))
    }
}
