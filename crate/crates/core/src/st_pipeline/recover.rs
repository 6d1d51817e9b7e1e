use crate::exact_arith::{Rational, RationalFunction};
use crate::planar_geom::{Degeneracy, Point, Triangle};
use crate::st_model::{MovingPoint, TimeDepAffinity};

use super::PipelineError;

type Moving = (RationalFunction, RationalFunction);

fn k(r: &Rational) -> RationalFunction {
    RationalFunction::constant(r.clone())
}

fn sub(p: &Moving, q: &Moving) -> Moving {
    (&p.0 - &q.0, &p.1 - &q.1)
}

/// The affinity taking the reference corners `r` to the moving corners `p`.
fn solve_frame(r: [&Point; 3], p: [&Moving; 3]) -> Result<TimeDepAffinity, PipelineError> {
    let u = r[1] - r[0];
    let v = r[2] - r[0];
    let det = u.cross(&v);
    if det == Rational::from_integer(0.into()) {
        return Err(PipelineError::SingularFrame);
    }
    // Inverse of the matrix with columns u, v.
    let inv = [[&v.y / &det, -(&v.x / &det)], [-(&u.y / &det), &u.x / &det]];
    let pu = sub(p[1], p[0]);
    let pv = sub(p[2], p[0]);
    let row = |pu: &RationalFunction, pv: &RationalFunction, col: usize| {
        &(pu * &k(&inv[0][col])) + &(pv * &k(&inv[1][col]))
    };
    let a11 = row(&pu.0, &pv.0, 0);
    let a12 = row(&pu.0, &pv.0, 1);
    let a21 = row(&pu.1, &pv.1, 0);
    let a22 = row(&pu.1, &pv.1, 1);
    let b1 = &p[0].0 - &(&(&a11 * &k(&r[0].x)) + &(&a12 * &k(&r[0].y)));
    let b2 = &p[0].1 - &(&(&a21 * &k(&r[0].x)) + &(&a22 * &k(&r[0].y)));
    Ok(TimeDepAffinity { a11, a12, a21, a22, b1, b2 })
}

/// The time-dependent affinity mapping each corner of `reference` onto the
/// matching moving corner. Segments get their frame completed by a quarter
/// turn; points move by pure translation.
pub fn recover_affinity(reference: &Triangle, corners: &[MovingPoint; 3]) -> Result<TimeDepAffinity, PipelineError> {
    let m: [Moving; 3] = corners.clone().map(|c| (c.fx, c.fy));
    recover_from(reference, &m)
}

pub(crate) fn recover_from(reference: &Triangle, m: &[Moving; 3]) -> Result<TimeDepAffinity, PipelineError> {
    let r = reference.corners();
    match reference.degeneracy() {
        Degeneracy::Full => solve_frame([&r[0], &r[1], &r[2]], [&m[0], &m[1], &m[2]]),
        Degeneracy::Segment => {
            let (i, j) = reference.segment_corners();
            let third = &r[i] + &(&r[j] - &r[i]).rot90();
            let d = sub(&m[j], &m[i]);
            let moving_third = (&m[i].0 - &d.1, &m[i].1 + &d.0);
            solve_frame([&r[i], &r[j], &third], [&m[i], &m[j], &moving_third])
        }
        Degeneracy::Point => Ok(TimeDepAffinity::translation(&m[0].0 - &k(&r[0].x), &m[0].1 - &k(&r[0].y))),
    }
}
