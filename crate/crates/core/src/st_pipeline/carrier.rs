use std::fmt;

use crate::exact_arith::{Polynomial, RationalFunction, TimeValue};
use crate::st_model::{MovingPoint, TimeInterval};

use super::PipelineError;

/// A segment whose endpoints move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingSegment {
    pub from: MovingPoint,
    pub to: MovingPoint,
}

/// The moving line `a(t) x + b(t) y = c(t)`. Denominators are cleared and
/// common factors removed, and the first nonzero of `b`, `a` is monic, so
/// equal moving lines have equal coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MovingCarrier {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
    pub domain: TimeInterval,
}

fn lcm(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let g = p.gcd(q);
    &p.div_rem(&g).0 * q
}

/// Coefficients of the line through two moving points, as rational
/// functions without normalisation.
pub fn line_through(p: (&RationalFunction, &RationalFunction), q: (&RationalFunction, &RationalFunction)) -> [RationalFunction; 3] {
    let a = q.1 - p.1;
    let b = p.0 - q.0;
    let c = &(&a * p.0) + &(&b * p.1);
    [a, b, c]
}

impl MovingCarrier {
    fn from_raw(raw: [RationalFunction; 3], domain: TimeInterval) -> Self {
        let den = raw.iter().fold(Polynomial::one(), |acc, f| lcm(&acc, f.den()));
        let mut polys = raw.map(|f| f.num() * &den.div_rem(f.den()).0);
        let g = polys.iter().fold(Polynomial::zero(), |acc, p| acc.gcd(p));
        let lead = if polys[1].is_zero() { &polys[0] } else { &polys[1] };
        let norm = &g * &Polynomial::constant(lead.div_rem(&g).0.leading().expect("nonzero").clone());
        polys = polys.map(|p| p.div_rem(&norm).0);
        let [a, b, c] = polys;
        MovingCarrier { a, b, c, domain }
    }

    /// `(slope, intercept)` of `y = slope x + intercept`, unless the line is
    /// vertical throughout.
    pub fn slope_intercept(&self) -> Option<(RationalFunction, RationalFunction)> {
        if self.b.is_zero() {
            return None;
        }
        let b = RationalFunction::from_poly(self.b.clone());
        let slope = (-&RationalFunction::from_poly(self.a.clone())).checked_div(&b).ok()?;
        let intercept = RationalFunction::from_poly(self.c.clone()).checked_div(&b).ok()?;
        Some((slope, intercept))
    }

    /// Value of `a x + b y − c` at a moving point, up to a nonzero factor.
    pub fn offset_of(&self, p: (&RationalFunction, &RationalFunction)) -> RationalFunction {
        let k = |q: &Polynomial| RationalFunction::from_poly(q.clone());
        &(&(&k(&self.a) * p.0) + &(&k(&self.b) * p.1)) - &k(&self.c)
    }
}

impl fmt::Display for MovingCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope_intercept() {
            Some((m, k)) => write!(f, "y = ({m}) x + {k}"),
            None => {
                let a = RationalFunction::from_poly(self.a.clone());
                let c = RationalFunction::from_poly(self.c.clone()).checked_div(&a).map_err(|_| fmt::Error)?;
                write!(f, "x = {c}")
            }
        }
    }
}

pub fn moving_carrier(seg: &MovingSegment) -> Result<MovingCarrier, PipelineError> {
    if seg.from.fx == seg.to.fx && seg.from.fy == seg.to.fy {
        return Err(PipelineError::DegenerateSegment);
    }
    let raw = line_through((&seg.from.fx, &seg.from.fy), (&seg.to.fx, &seg.to.fy));
    Ok(MovingCarrier::from_raw(raw, seg.from.domain.clone()))
}

/// Times in `domain` at which the intersection of two carriers appears or
/// disappears: zeros of their determinant, or, for carriers that stay
/// parallel, the moments they coincide.
pub fn pair_events(c1: &MovingCarrier, c2: &MovingCarrier, domain: &TimeInterval) -> Vec<TimeValue> {
    let det = &(&c1.a * &c2.b) - &(&c2.a * &c1.b);
    if !det.is_zero() {
        return domain.roots_of(&det);
    }
    let m1 = &(&c1.a * &c2.c) - &(&c2.a * &c1.c);
    let m2 = &(&c1.b * &c2.c) - &(&c2.b * &c1.c);
    if m1.is_zero() && m2.is_zero() {
        return Vec::new();
    }
    domain.roots_of(&m1.gcd(&m2))
}

/// Times in `domain` at which three carriers pass through one point, unless
/// they always do.
pub fn triple_events(c1: &MovingCarrier, c2: &MovingCarrier, c3: &MovingCarrier, domain: &TimeInterval) -> Vec<TimeValue> {
    let minor = |p: &Polynomial, q: &Polynomial, r: &Polynomial, s: &Polynomial| &(p * s) - &(q * r);
    let det = &(&(&c1.a * &minor(&c2.b, &c2.c, &c3.b, &c3.c)) - &(&c1.b * &minor(&c2.a, &c2.c, &c3.a, &c3.c)))
        + &(&c1.c * &minor(&c2.a, &c2.b, &c3.a, &c3.b));
    if det.is_zero() {
        return Vec::new();
    }
    domain.roots_of(&det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat, Rational};

    fn closed04() -> TimeInterval {
        TimeInterval::closed(int(0), int(4))
    }

    fn mp(fx: RationalFunction, fy: RationalFunction) -> MovingPoint {
        MovingPoint { fx, fy, domain: closed04() }
    }

    fn k(n: i64) -> RationalFunction {
        RationalFunction::constant(int(n))
    }

    fn shifted(n: i64) -> RationalFunction {
        &k(n) + &RationalFunction::t()
    }

    fn seg(p: (RationalFunction, RationalFunction), q: (RationalFunction, RationalFunction)) -> MovingCarrier {
        moving_carrier(&MovingSegment { from: mp(p.0, p.1), to: mp(q.0, q.1) }).unwrap()
    }

    /// Carriers of the edges of the two running triangles, the second one
    /// translated by `t` along x.
    fn running() -> Vec<MovingCarrier> {
        vec![
            seg((k(-1), k(0)), (k(1), k(0))),
            seg((k(-1), k(0)), (k(0), k(2))),
            seg((k(0), k(2)), (k(1), k(0))),
            seg((shifted(-3), k(1)), (shifted(-1), k(1))),
            seg((shifted(-3), k(1)), (shifted(-2), k(3))),
            seg((shifted(-2), k(3)), (shifted(-1), k(1))),
        ]
    }

    fn exact(r: Rational) -> TimeValue {
        TimeValue::Exact(r)
    }

    #[test]
    fn moving_carrier_slopes() {
        let c = running();
        let (m, b) = c[4].slope_intercept().unwrap();
        assert_eq!(m, k(2));
        assert_eq!(b, &k(7) - &(&RationalFunction::t() * &k(2)));
        let (m, b) = c[0].slope_intercept().unwrap();
        assert!(m.is_zero() && b.is_zero());
        let diag = seg((k(0), k(0)), (RationalFunction::t(), RationalFunction::t()));
        let (m, b) = diag.slope_intercept().unwrap();
        assert_eq!((m, b), (k(1), k(0)));
    }

    #[test]
    fn degenerate_segment_rejected() {
        let p = mp(RationalFunction::t(), k(1));
        assert_eq!(moving_carrier(&MovingSegment { from: p.clone(), to: p }), Err(PipelineError::DegenerateSegment));
    }

    #[test]
    fn pair_events_of_running_example() {
        let c = running();
        let d = closed04();
        assert_eq!(pair_events(&c[1], &c[4], &d), vec![exact(rat(5, 2))]);
        assert_eq!(pair_events(&c[2], &c[5], &d), vec![exact(rat(3, 2))]);
        assert!(pair_events(&c[0], &c[3], &d).is_empty());
        assert!(pair_events(&c[1], &c[3], &d).is_empty());
    }

    #[test]
    fn triple_events_of_running_example() {
        let c = running();
        let d = closed04();
        assert_eq!(triple_events(&c[1], &c[3], &c[5], &d), vec![exact(rat(1, 2))]);
        assert_eq!(triple_events(&c[2], &c[3], &c[4], &d), vec![exact(rat(7, 2))]);
        let through_origin = [
            seg((k(0), k(0)), (k(1), k(0))),
            seg((k(0), k(0)), (k(0), k(1))),
            seg((k(0), k(0)), (k(1), k(1))),
        ];
        assert!(triple_events(&through_origin[0], &through_origin[1], &through_origin[2], &d).is_empty());
    }

    #[test]
    fn equal_lines_have_equal_coefficients() {
        let a = seg((k(0), k(0)), (k(2), k(2)));
        let b = seg((k(5), k(5)), (k(-1), k(-1)));
        assert_eq!(a, b);
        let scaled = seg((k(0), k(0)), (&RationalFunction::t() + &k(1), &RationalFunction::t() + &k(1)));
        assert_eq!((scaled.a, scaled.b, scaled.c), (a.a, a.b, a.c));
    }
}
