//! Event times: exact rationals, or real roots of square-free polynomials
//! carried by an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{Polynomial, SturmChain};
use super::rational::{format_rational, midpoint, simplest_between, simplest_between_by, to_decimal, Rational};
use super::ArithError;

/// A real time value.
///
/// `Algebraic` always denotes an irrational number: its polynomial is
/// square-free with exactly one root in the open interval `]lo, hi[`, the
/// endpoints are not roots, and a rational root would have been reported as
/// `Exact` instead.
#[derive(Clone, Debug)]
pub enum TimeValue {
    Exact(Rational),
    Algebraic { poly: Polynomial, lo: Rational, hi: Rational },
}

impl TimeValue {
    pub fn exact(r: Rational) -> Self {
        TimeValue::Exact(r)
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            TimeValue::Exact(r) => Some(r),
            TimeValue::Algebraic { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TimeValue::Exact(_))
    }

    /// Builds the unique root of `poly` in `]lo, hi[`, normalizing the
    /// representation and detecting rational roots.
    ///
    /// `poly` must be square-free with exactly one root in the open interval.
    pub fn from_isolating(poly: &Polynomial, lo: Rational, hi: Rational) -> Self {
        let sturm = SturmChain::new(poly);
        let (mut lo, mut hi) = (lo, hi);
        debug_assert_eq!(sturm.count_open(&lo, &hi), 1);
        if poly.sign_at(&lo) == 0 {
            let mut c = hi.clone();
            loop {
                let m = midpoint(&lo, &c);
                if poly.sign_at(&m) != 0 && sturm.count_open(&lo, &m) == 0 {
                    lo = m;
                    break;
                }
                c = m;
            }
        }
        if poly.sign_at(&hi) == 0 {
            let mut c = lo.clone();
            loop {
                let m = midpoint(&c, &hi);
                if poly.sign_at(&m) != 0 && sturm.count_open(&m, &hi) == 0 {
                    hi = m;
                    break;
                }
                c = m;
            }
        }
        if poly.degree() == Some(1) {
            let c = poly.coeffs();
            return TimeValue::Exact(-&c[0] / &c[1]);
        }
        // Distinct rationals with denominators at most `d` are at least
        // 1/d^2 apart, so once the interval is that narrow its simplest
        // rational is the only candidate root.
        let d = poly.primitive_integer().pop().unwrap();
        let d2 = Rational::from_integer(&d * &d);
        let width = Rational::one() / d2;
        let s_lo = poly.sign_at(&lo);
        while &hi - &lo >= width {
            let m = midpoint(&lo, &hi);
            let s = poly.sign_at(&m);
            if s == 0 {
                return TimeValue::Exact(m);
            }
            if s == s_lo {
                lo = m;
            } else {
                hi = m;
            }
        }
        let cand = simplest_between(&lo, &hi);
        if poly.sign_at(&cand) == 0 {
            return TimeValue::Exact(cand);
        }
        TimeValue::Algebraic { poly: poly.monic(), lo, hi }
    }

    /// A closed rational interval of width at most `eps` containing the value.
    pub fn refine(&self, eps: &Rational) -> (Rational, Rational) {
        match self {
            TimeValue::Exact(r) => (r.clone(), r.clone()),
            TimeValue::Algebraic { poly, lo, hi } => {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                let s_lo = poly.sign_at(&lo);
                while &hi - &lo > *eps {
                    let m = midpoint(&lo, &hi);
                    let s = poly.sign_at(&m);
                    if s == 0 {
                        return (m.clone(), m);
                    }
                    if s == s_lo {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Same value with the isolating interval halved.
    fn bisected(&self) -> TimeValue {
        match self {
            TimeValue::Exact(_) => self.clone(),
            TimeValue::Algebraic { poly, lo, hi } => {
                let m = midpoint(lo, hi);
                let s = poly.sign_at(&m);
                if s == 0 {
                    TimeValue::Exact(m)
                } else if s == poly.sign_at(lo) {
                    TimeValue::Algebraic { poly: poly.clone(), lo: m, hi: hi.clone() }
                } else {
                    TimeValue::Algebraic { poly: poly.clone(), lo: lo.clone(), hi: m }
                }
            }
        }
    }

    /// Rational approximation within `eps` of the value.
    pub fn approx(&self, eps: &Rational) -> Rational {
        match self {
            TimeValue::Exact(r) => r.clone(),
            TimeValue::Algebraic { .. } => {
                let (lo, hi) = self.refine(eps);
                midpoint(&lo, &hi)
            }
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            TimeValue::Exact(r) => r.floor().to_integer(),
            TimeValue::Algebraic { .. } => {
                let mut v = self.clone();
                loop {
                    if let TimeValue::Algebraic { lo, hi, .. } = &v {
                        let f = lo.floor().to_integer();
                        if Rational::from_integer(&f + BigInt::one()) >= *hi {
                            return f;
                        }
                    } else {
                        return v.floor();
                    }
                    v = v.bisected();
                }
            }
        }
    }

    /// Sign of `q` at this value.
    pub fn sign_of(&self, q: &Polynomial) -> i8 {
        match self {
            TimeValue::Exact(r) => q.sign_at(r),
            TimeValue::Algebraic { poly, lo, hi } => {
                if q.is_zero() {
                    return 0;
                }
                let g = poly.gcd(q);
                if !g.is_constant() && SturmChain::new(&g).count_open(lo, hi) > 0 {
                    return 0;
                }
                // q has no root at the value; shrink until q has no root in
                // the isolating interval, then its sign is constant there.
                let qs = SturmChain::new(&q.square_free());
                let mut v = self.clone();
                loop {
                    match &v {
                        TimeValue::Exact(r) => return q.sign_at(r),
                        TimeValue::Algebraic { lo, hi, .. } => {
                            if qs.count_open(lo, hi) == 0 {
                                return q.sign_at(&midpoint(lo, hi));
                            }
                        }
                    }
                    v = v.bisected();
                }
            }
        }
    }

    /// Fixed-point decimal rendering with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let eps = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits + 1));
        to_decimal(&self.approx(&eps), digits)
    }
}

/// Exact comparison of two time values.
pub fn tv_compare(a: &TimeValue, b: &TimeValue) -> Ordering {
    use TimeValue::*;
    match (a, b) {
        (Exact(x), Exact(y)) => x.cmp(y),
        (Algebraic { .. }, Exact(r)) => compare_algebraic_exact(a, r),
        (Exact(r), Algebraic { .. }) => compare_algebraic_exact(b, r).reverse(),
        (Algebraic { poly: p, .. }, Algebraic { poly: q, .. }) => {
            let g = p.gcd(q);
            let sturm = (!g.is_constant()).then(|| SturmChain::new(&g));
            let (mut a, mut b) = (a.clone(), b.clone());
            loop {
                let (Algebraic { lo: alo, hi: ahi, .. }, Algebraic { lo: blo, hi: bhi, .. }) = (&a, &b)
                else {
                    return tv_compare(&a, &b);
                };
                if ahi <= blo {
                    return Ordering::Less;
                }
                if bhi <= alo {
                    return Ordering::Greater;
                }
                if let Some(s) = &sturm {
                    let olo = alo.max(blo);
                    let ohi = ahi.min(bhi);
                    // Overlap endpoints are endpoints of one of the intervals,
                    // hence non-roots of that value's polynomial.
                    if s.count_open(olo, ohi) > 0 {
                        return Ordering::Equal;
                    }
                }
                a = a.bisected();
                b = b.bisected();
            }
        }
    }
}

fn compare_algebraic_exact(a: &TimeValue, r: &Rational) -> Ordering {
    let TimeValue::Algebraic { poly, lo, hi } = a else { unreachable!() };
    if r <= lo {
        return Ordering::Greater;
    }
    if r >= hi {
        return Ordering::Less;
    }
    let s = poly.sign_at(r);
    if s == 0 {
        Ordering::Equal
    } else if s == poly.sign_at(lo) {
        // No sign change on ]lo, r], so the root lies above r.
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl PartialEq for TimeValue {
    fn eq(&self, other: &Self) -> bool {
        tv_compare(self, other) == Ordering::Equal
    }
}

impl Eq for TimeValue {}

impl PartialOrd for TimeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TimeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        tv_compare(self, other)
    }
}

impl From<Rational> for TimeValue {
    fn from(r: Rational) -> Self {
        TimeValue::Exact(r)
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeValue::Exact(r) => write!(f, "{}", format_rational(r)),
            TimeValue::Algebraic { poly, lo, hi } => {
                write!(f, "root({}; {}..{})", poly, format_rational(lo), format_rational(hi))
            }
        }
    }
}

/// Every distinct real root of `p` in the closed range `[lo, hi]`, ascending.
pub fn poly_real_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<TimeValue>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::IndeterminateRoots);
    }
    let mut out = Vec::new();
    if p.is_constant() || lo > hi {
        return Ok(out);
    }
    let sf = p.square_free();
    if sf.sign_at(lo) == 0 {
        out.push(TimeValue::Exact(lo.clone()));
    }
    if lo == hi {
        return Ok(out);
    }
    let sturm = SturmChain::new(&sf);
    let mut interior = Vec::new();
    isolate(&sf, &sturm, lo.clone(), hi.clone(), &mut interior);
    out.extend(interior);
    if sf.sign_at(hi) == 0 {
        out.push(TimeValue::Exact(hi.clone()));
    }
    Ok(out)
}

/// Pushes the roots in `]a, b[` in ascending order.
fn isolate(sf: &Polynomial, sturm: &SturmChain, a: Rational, b: Rational, out: &mut Vec<TimeValue>) {
    match sturm.count_open(&a, &b) {
        0 => {}
        1 => out.push(TimeValue::from_isolating(sf, a, b)),
        _ => {
            let m = midpoint(&a, &b);
            let root_at_m = sf.sign_at(&m) == 0;
            isolate(sf, sturm, a, m.clone(), out);
            if root_at_m {
                out.push(TimeValue::Exact(m.clone()));
            }
            isolate(sf, sturm, m, b, out);
        }
    }
}

/// Simplest rational strictly between two time values, `lo < hi`.
pub fn simplest_between_values(lo: &TimeValue, hi: &TimeValue) -> Rational {
    if let (TimeValue::Exact(a), TimeValue::Exact(b)) = (lo, hi) {
        return simplest_between(a, b);
    }
    simplest_between_by(
        lo.floor(),
        |q| tv_compare(&TimeValue::Exact(q.clone()), lo) != Ordering::Greater,
        |q| tv_compare(&TimeValue::Exact(q.clone()), hi) != Ordering::Less,
    )
}
