use std::cmp::Ordering;
use std::fmt;

use crate::exact_arith::{poly_real_roots, Polynomial, Rational, TimeValue};

/// A time point or an interval with independently open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeInterval {
    pub lo: TimeValue,
    pub hi: TimeValue,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl TimeInterval {
    pub fn new(lo: TimeValue, hi: TimeValue, closed_lo: bool, closed_hi: bool) -> Self {
        TimeInterval { lo, hi, closed_lo, closed_hi }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo.into(), hi.into(), true, true)
    }

    pub fn open(lo: TimeValue, hi: TimeValue) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn point(t: TimeValue) -> Self {
        Self::new(t.clone(), t, true, true)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Whether the bounds describe a nonempty set.
    pub fn is_well_formed(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.closed_lo && self.closed_hi,
            Ordering::Greater => false,
        }
    }

    pub fn contains_value(&self, t: &TimeValue) -> bool {
        let above = match self.lo.cmp(t) {
            Ordering::Less => true,
            Ordering::Equal => self.closed_lo,
            Ordering::Greater => false,
        };
        above
            && match t.cmp(&self.hi) {
                Ordering::Less => true,
                Ordering::Equal => self.closed_hi,
                Ordering::Greater => false,
            }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.contains_value(&TimeValue::Exact(t.clone()))
    }

    /// Whether `other` is a subset of `self`.
    pub fn covers(&self, other: &TimeInterval) -> bool {
        let lo_ok = match self.lo.cmp(&other.lo) {
            Ordering::Less => true,
            Ordering::Equal => self.closed_lo || !other.closed_lo,
            Ordering::Greater => false,
        };
        let hi_ok = match other.hi.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.closed_hi || !other.closed_hi,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    pub fn intersect(&self, other: &TimeInterval) -> Option<TimeInterval> {
        let (lo, closed_lo) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.closed_lo),
            Ordering::Greater => (self.lo.clone(), self.closed_lo),
            Ordering::Equal => (self.lo.clone(), self.closed_lo && other.closed_lo),
        };
        let (hi, closed_hi) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.closed_hi),
            Ordering::Greater => (other.hi.clone(), other.closed_hi),
            Ordering::Equal => (self.hi.clone(), self.closed_hi && other.closed_hi),
        };
        let r = TimeInterval { lo, hi, closed_lo, closed_hi };
        r.is_well_formed().then_some(r)
    }

    /// Rational bounds of a closed interval containing `self`.
    pub fn rational_hull(&self) -> (Rational, Rational) {
        let one = Rational::from_integer(1.into());
        (self.lo.refine(&one).0, self.hi.refine(&one).1)
    }

    /// Distinct real roots of `p` inside the interval, ascending.
    pub fn roots_of(&self, p: &Polynomial) -> Vec<TimeValue> {
        if p.is_constant() {
            return Vec::new();
        }
        let (a, b) = self.rational_hull();
        poly_real_roots(p, &a, &b)
            .expect("nonconstant polynomial")
            .into_iter()
            .filter(|r| self.contains_value(r))
            .collect()
    }
}

impl PartialOrd for TimeInterval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by start (closed before open), then by end (open before closed).
impl Ord for TimeInterval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(other.closed_lo.cmp(&self.closed_lo))
            .then_with(|| self.hi.cmp(&other.hi))
            .then(self.closed_hi.cmp(&other.closed_hi))
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() && self.closed_lo && self.closed_hi {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.closed_lo { "[" } else { "]" },
            self.lo,
            self.hi,
            if self.closed_hi { "]" } else { "[" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    #[test]
    fn membership_respects_flags() {
        let i = TimeInterval::new(int(0).into(), rat(1, 2).into(), true, false);
        assert!(i.contains(&int(0)));
        assert!(!i.contains(&rat(1, 2)));
        assert!(i.contains(&rat(1, 4)));
        assert_eq!(i.to_string(), "[0, 1/2[");
        assert_eq!(TimeInterval::point(int(2).into()).to_string(), "{2}");
    }

    #[test]
    fn intersection_and_cover() {
        let a = TimeInterval::closed(int(0), int(4));
        let b = TimeInterval::open(int(2).into(), int(6).into());
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, TimeInterval::new(int(2).into(), int(4).into(), false, true));
        assert!(a.covers(&c));
        assert!(!b.covers(&a));
        let d = TimeInterval::open(int(4).into(), int(5).into());
        assert!(a.intersect(&d).is_none());
    }
}
