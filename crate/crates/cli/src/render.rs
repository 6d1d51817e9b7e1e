use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use stnf_core::exact_arith::{digits_for_epsilon, format_rational, to_decimal, Rational, TimeValue};
use stnf_core::planar_geom::{Degeneracy, Point, Triangle};
use stnf_core::st_model::time_domain;
use stnf_core::st_pipeline::NormalForm;

use crate::commands::{load, normal_form, CliError, RunConfig};

const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2"];

/// Frame times: `k` evenly spaced rationals from `lo` to `hi`, or the
/// midpoint for a single frame.
fn frame_times(lo: &Rational, hi: &Rational, k: usize) -> Vec<Rational> {
    if k == 1 {
        return vec![(lo + hi) / Rational::from_integer(2.into())];
    }
    let steps = Rational::from_integer((k - 1).into());
    (0..k).map(|i| lo + (hi - lo) * Rational::from_integer(i.into()) / &steps).collect()
}

fn rational_end(t: &TimeValue, eps: &Rational) -> Rational {
    t.as_exact().cloned().unwrap_or_else(|| t.approx(eps))
}

struct Frame {
    time: Rational,
    /// Snapshot triangles with the index of the object they belong to.
    pieces: Vec<(usize, Triangle)>,
}

fn bounds(frames: &[Frame]) -> Option<(Point, Point)> {
    let mut it = frames.iter().flat_map(|f| f.pieces.iter().flat_map(|(_, t)| t.corners().iter()));
    let first = it.next()?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for p in it {
        lo = Point::new(lo.x.min(p.x.clone()), lo.y.min(p.y.clone()));
        hi = Point::new(hi.x.max(p.x.clone()), hi.y.max(p.y.clone()));
    }
    Some((lo, hi))
}

fn svg(frame: &Frame, view: &(Point, Point), digits: usize) -> String {
    let d = |r: &Rational| to_decimal(r, digits);
    // SVG's y axis points down; flip it.
    let xy = |p: &Point| format!("{},{}", d(&p.x), d(&-&p.y));
    let (lo, hi) = view;
    let pad = ((&hi.x - &lo.x).max(&hi.y - &lo.y) / Rational::from_integer(20.into()))
        .max(Rational::new(1.into(), 10.into()));
    let (x0, y0) = (&lo.x - &pad, -&hi.y - &pad);
    let (w, h) = (&hi.x - &lo.x + &pad + &pad, &hi.y - &lo.y + &pad + &pad);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"480\" height=\"480\">",
        d(&x0),
        d(&y0),
        d(&w),
        d(&h)
    );
    let _ = writeln!(s, "<title>t = {}</title>", format_rational(&frame.time));
    let stroke = "stroke=\"#222\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"";
    for (obj, t) in &frame.pieces {
        let colour = PALETTE[obj % PALETTE.len()];
        let c = t.corners();
        match t.degeneracy() {
            Degeneracy::Full => {
                let _ = writeln!(
                    s,
                    "<polygon points=\"{} {} {}\" fill=\"{colour}\" fill-opacity=\"0.7\" {stroke}/>",
                    xy(&c[0]),
                    xy(&c[1]),
                    xy(&c[2])
                );
            }
            Degeneracy::Segment => {
                let (i, j) = t.segment_corners();
                let (p, q) = (&c[i], &c[j]);
                let _ = writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\"/>",
                    d(&p.x),
                    d(&-&p.y),
                    d(&q.x),
                    d(&-&q.y)
                );
            }
            Degeneracy::Point => {
                let r = &pad / Rational::from_integer(4.into());
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{colour}\"/>",
                    d(&c[0].x),
                    d(&-&c[0].y),
                    d(&r)
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn render(input: &Path, k: usize, out: &Path, config: &RunConfig) -> Result<ExitCode, CliError> {
    let doc = load(input)?;
    let mut forms: Vec<NormalForm> = Vec::new();
    let mut span: Option<(Rational, Rational)> = None;
    for r in doc.records() {
        forms.push(normal_form(&r.object, config)?);
        if let Ok(dom) = time_domain(&r.object) {
            let (lo, hi) = (rational_end(&dom.lo, &config.epsilon), rational_end(&dom.hi, &config.epsilon));
            span = Some(match span {
                Some((a, b)) => (a.min(lo), b.max(hi)),
                None => (lo, hi),
            });
        }
    }
    let (lo, hi) = span.unwrap_or_default();
    let frames: Vec<Frame> = frame_times(&lo, &hi, k)
        .into_iter()
        .map(|time| {
            let pieces = forms.iter().enumerate().flat_map(|(i, nf)| nf.snapshot(&time).into_iter().map(move |t| (i, t))).collect();
            Frame { time, pieces }
        })
        .collect();
    let view = bounds(&frames).unwrap_or((Point::from_i64(0, 0), Point::from_i64(1, 1)));
    let digits = digits_for_epsilon(&config.epsilon);
    fs::create_dir_all(out).map_err(CliError::Write)?;
    for (i, f) in frames.iter().enumerate() {
        fs::write(out.join(format!("frame_{i:04}.svg")), svg(f, &view, digits)).map_err(CliError::Write)?;
    }
    println!("wrote {} frames to {}", frames.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stnf_core::exact_arith::{int, rat};

    #[test]
    fn nine_frames_over_the_running_domain() {
        let t = frame_times(&int(0), &int(4), 9);
        assert_eq!(t, (0..9).map(|i| rat(i, 2)).collect::<Vec<_>>());
        assert_eq!(frame_times(&int(0), &int(4), 1), vec![int(2)]);
    }

    #[test]
    fn svg_flips_y_and_uses_decimals() {
        let f = Frame { time: rat(1, 3), pieces: vec![(0, Triangle::from_i64([(0, 0), (1, 0), (0, 1)]))] };
        let view = (Point::from_i64(0, 0), Point::from_i64(1, 1));
        let s = svg(&f, &view, 4);
        assert!(s.contains("points=\"0,0 1,0 0,-1\""), "{s}");
        assert!(s.contains("<title>t = 1/3</title>"));
    }
}
