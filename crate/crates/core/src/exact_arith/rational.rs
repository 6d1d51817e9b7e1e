//! Helpers around [`BigRational`], the scalar type used everywhere in the crate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// `BigRational` keeps itself reduced with a positive denominator, which is
/// exactly the invariant the model needs.
pub type Rational = BigRational;

/// Builds `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Formats as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `n/d`, or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if whole_digits.is_empty() { "0" } else { whole_digits }, frac);
        let mut n: BigInt = digits.parse().ok()?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Rational::new(n, d));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge operands before converting.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Decimal rendering of `r` rounded to `digits` fractional digits
/// (round half away from zero). Trailing zeros are trimmed.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let half = rat(1, 2);
    let rounded = if scaled.is_negative() {
        -((-scaled + half).floor())
    } else {
        (scaled + half).floor()
    };
    let n = rounded.to_integer();
    let negative = n.is_negative();
    let (q, rem) = n.abs().div_rem(&scale);
    let mut out = String::new();
    if negative && !(q.is_zero() && rem.is_zero()) {
        out.push('-');
    }
    out.push_str(&q.to_string());
    if digits > 0 && !rem.is_zero() {
        let frac = format!("{:0>width$}", rem.to_string(), width = digits);
        out.push('.');
        out.push_str(frac.trim_end_matches('0'));
    }
    out
}

/// Number of fractional decimal digits needed so that one unit in the last
/// place is at most `eps`.
pub fn digits_for_epsilon(eps: &Rational) -> usize {
    let mut digits = 0usize;
    let mut unit = int(1);
    let ten = int(10);
    while &unit > eps && digits < 64 {
        unit /= &ten;
        digits += 1;
    }
    digits
}

/// The rational with the smallest denominator strictly between `lo` and `hi`
/// (ties among integers go to the one closest to zero).
///
/// `below(q)` must answer whether `q <= lo` and `above(q)` whether `q >= hi`;
/// this lets the same search run against exact endpoints and against
/// algebraic numbers known only through comparisons.
pub fn simplest_between_by<B, A>(floor_lo: BigInt, below: B, above: A) -> Rational
where
    B: Fn(&Rational) -> bool,
    A: Fn(&Rational) -> bool,
{
    // Integers first.
    let first_int = floor_lo.clone() + BigInt::one();
    let first = Rational::from_integer(first_int.clone());
    if !above(&first) {
        // Some integer lies inside; pick the one nearest to zero.
        if first_int.is_positive() || first_int.is_zero() {
            return first;
        }
        // Interval reaches into the negatives: zero or the largest integer
        // below hi is closest to zero.
        let zero = Rational::zero();
        if !below(&zero) && !above(&zero) {
            return zero;
        }
        let mut k = first_int;
        let mut step = BigInt::one();
        // Gallop towards zero while staying inside.
        loop {
            let cand = &k + &step;
            if cand.is_positive() || above(&Rational::from_integer(cand.clone())) {
                if step.is_one() {
                    return Rational::from_integer(k);
                }
                step = BigInt::one();
            } else {
                k = cand;
                step *= 2;
            }
        }
    }
    // Stern-Brocot descent inside (floor_lo, floor_lo + 1).
    let base = Rational::from_integer(floor_lo);
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut rp, mut rq) = (BigInt::one(), BigInt::one());
    let frac = |p: &BigInt, q: &BigInt| &base + Rational::new(p.clone(), q.clone());
    loop {
        let mp = &lp + &rp;
        let mq = &lq + &rq;
        let m = frac(&mp, &mq);
        if below(&m) {
            // Largest k with (lp + k rp)/(lq + k rq) <= lo.
            let k = gallop(|k| below(&frac(&(&lp + k * &rp), &(&lq + k * &rq))));
            lp += &k * &rp;
            lq += &k * &rq;
        } else if above(&m) {
            let k = gallop(|k| above(&frac(&(&rp + k * &lp), &(&rq + k * &lq))));
            rp += &k * &lp;
            rq += &k * &lq;
        } else {
            return m;
        }
    }
}

/// Largest k >= 1 with `pred(k)`, given `pred(1)` and monotone decreasing truth.
fn gallop<P: Fn(&BigInt) -> bool>(pred: P) -> BigInt {
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(2);
    while pred(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    // pred(lo) true, pred(hi) false
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if pred(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest-denominator rational in the open interval `]lo, hi[`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    simplest_between_by(
        lo.floor().to_integer(),
        |q| q.cmp(lo) != Ordering::Greater,
        |q| q.cmp(hi) != Ordering::Less,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rat(-11, 4)), "-11/4");
        assert_eq!(format_rational(&int(4)), "4");
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&rat(-11, 4), 10), "-2.75");
        assert_eq!(to_decimal(&rat(2, 3), 2), "0.67");
        assert_eq!(to_decimal(&rat(-1, 1000), 2), "0");
        assert_eq!(digits_for_epsilon(&rat(1, 1 << 32)), 10);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-5, 2), &rat(3, 2)), int(0));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 2)), int(-2));
        assert_eq!(simplest_between(&int(2), &int(3)), rat(5, 2));
        assert_eq!(simplest_between(&rat(1414, 1000), &rat(1415, 1000)), rat(58, 41));
        assert_eq!(simplest_between(&rat(1, 1000), &rat(1, 999)), rat(2, 1999));
    }
}
