//! Quotients of polynomials kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use super::ArithError;

/// `num(t) / den(t)` in canonical form: `gcd(num, den) = 1`, `den` monic,
/// and the zero function is `0 / 1`. Structural equality is therefore
/// equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Canonicalizing constructor. Panics if `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn try_new(num: Polynomial, den: Polynomial) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lc = Rational::one() / den.leading().unwrap();
        Ok(RationalFunction { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    /// The identity function `t`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::t())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn eval(&self, tau: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(tau);
        if d.is_zero() {
            return Err(ArithError::Pole(tau.clone()));
        }
        Ok(self.num.eval(tau) / d)
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::new(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, k: &Rational) -> RationalFunction {
        if k.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RationalFunction { num: &self.num * &rhs.num, den: Polynomial::one() };
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn canonical_form() {
        let f = RationalFunction::new(p(&[2, 2]), p(&[2]));
        assert_eq!(f, RationalFunction::from_poly(p(&[1, 1])));
        let g = RationalFunction::new(p(&[-1, 0, 1]), p(&[-1, 1]));
        assert_eq!(g, RationalFunction::from_poly(p(&[1, 1])));
        let h = RationalFunction::new(p(&[1]), p(&[0, -2]));
        assert_eq!(h.den(), &Polynomial::t());
        assert_eq!(h.num(), &Polynomial::constant(rat(-1, 2)));
    }

    #[test]
    fn arithmetic() {
        let t = RationalFunction::t();
        let one = RationalFunction::one();
        assert_eq!(&t + &one, RationalFunction::from_poly(p(&[1, 1])));
        let inv = one.checked_div(&t).unwrap();
        assert_eq!(&inv * &t, one);
        assert_eq!(&(&inv + &inv) - &inv, inv);
        assert_eq!(one.checked_div(&RationalFunction::zero()), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let f = RationalFunction::from_poly(p(&[7, 1]));
        assert_eq!(f.eval(&int(0)).unwrap(), int(7));
        let g = RationalFunction::from_poly(p(&[-3, 1]));
        assert_eq!(g.eval(&rat(1, 4)).unwrap(), rat(-11, 4));
        let h = RationalFunction::new(p(&[1]), p(&[-3, 1]));
        assert_eq!(h.eval(&int(3)), Err(ArithError::Pole(int(3))));
    }
}
