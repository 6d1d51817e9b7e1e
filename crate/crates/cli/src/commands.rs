use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use thiserror::Error;

use stnf_core::exact_arith::{format_rational, Rational, TimeValue};
use stnf_core::oracle::membership_sample;
use stnf_core::planar_geom::Triangle;
use stnf_core::st_model::json::{
    atom_to_json, document_to_string, parse_document, time_value_json, triangles_json, Document, JsonError,
    ObjectRecord,
};
use stnf_core::st_model::{snapshot_geometric, validate_atomic, validate_geometric, AtomicObject, GeometricObject};
use stnf_core::st_pipeline::{partition as event_list, sample_time, t_st_with, NormalForm, PipelineError};

pub struct RunConfig {
    pub epsilon: Rational,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: JsonError },
    #[error("{0}")]
    Write(std::io::Error),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } => 2,
            CliError::Write(_) | CliError::Pipeline(_) => 1,
        }
    }
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: name.clone(), source })?;
    parse_document(&text).map_err(|source| CliError::Parse { path: name, source })
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).map_err(CliError::Write)
}

fn shaped<T>(doc: &Document, items: Vec<T>) -> serde_json::Value
where
    T: Into<serde_json::Value>,
{
    let mut values: Vec<serde_json::Value> = items.into_iter().map(Into::into).collect();
    match doc {
        Document::Single(_) => values.pop().unwrap_or_default(),
        Document::List(_) => serde_json::Value::Array(values),
    }
}

pub fn validate(input: &Path) -> Result<ExitCode, CliError> {
    let doc = load(input)?;
    let mut report = String::new();
    let mut all_ok = true;
    for r in doc.records() {
        for (i, a) in r.object.atoms.iter().enumerate() {
            match validate_atomic(a) {
                Ok(()) => report.push_str(&format!("{} atom {i}: ok\n", r.object.id)),
                Err(v) => {
                    all_ok = false;
                    let v: Vec<String> = v.iter().map(ToString::to_string).collect();
                    report.push_str(&format!("{} atom {i}: {}\n", r.object.id, v.join(", ")));
                }
            }
        }
    }
    emit(&report)?;
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn partition(input: &Path) -> Result<ExitCode, CliError> {
    let doc = load(input)?;
    let mut lists = Vec::new();
    for r in doc.records() {
        validate_geometric(&r.object).map_err(PipelineError::from)?;
        let chi = event_list(&r.object);
        lists.push(serde_json::Value::Array(chi.times.iter().map(time_value_json).collect()));
    }
    emit(&format!("{}\n", shaped(&doc, lists)))?;
    Ok(ExitCode::SUCCESS)
}

/// Normal form of one object; an object without atoms has the empty one.
pub fn normal_form(g: &GeometricObject, config: &RunConfig) -> Result<NormalForm, CliError> {
    if g.atoms.is_empty() {
        return Ok(NormalForm::default());
    }
    Ok(t_st_with(g, &config.epsilon)?)
}

pub fn triangulate(input: &Path, out: Option<&Path>, config: &RunConfig) -> Result<ExitCode, CliError> {
    let doc = load(input)?;
    let result = doc.try_map(|r| {
        let nf = normal_form(&r.object, config)?;
        Ok::<_, CliError>(ObjectRecord { object: nf.to_object(r.object.id.clone()), partition: Some(nf.partition) })
    })?;
    let text = document_to_string(&result);
    match out {
        Some(path) => fs::write(path, text).map_err(CliError::Write)?,
        None => emit(&text)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn anonymous(nf: NormalForm) -> NormalForm {
    NormalForm {
        atoms: nf.atoms.into_iter().map(|a| AtomicObject { source_id: None, ..a }).collect(),
        partition: nf.partition,
    }
}

/// Sample times of every partition element: the event time itself for
/// exact singletons, a rational inside every open interval.
fn probe_times(nf: &NormalForm) -> Vec<Rational> {
    nf.partition
        .iter()
        .filter_map(|d| match (&d.lo, d.is_point()) {
            (TimeValue::Exact(t), true) => Some(t.clone()),
            (_, true) => None,
            _ => Some(sample_time(&d.lo, &d.hi)),
        })
        .collect()
}

/// A sampled time and point covered by exactly one of the two normal forms.
fn membership_witness(a: &NormalForm, b: &NormalForm, seed: u64) -> Option<(Rational, String)> {
    let mut times = probe_times(a);
    times.extend(probe_times(b));
    times.sort();
    times.dedup();
    times.into_iter().find_map(|t| {
        let (sa, sb): (Vec<Triangle>, Vec<Triangle>) = (a.snapshot(&t), b.snapshot(&t));
        membership_sample(&sa, &sb, 200, seed)
            .into_iter()
            .find(|v| !v.on_edge && !v.agrees())
            .map(|v| (t, v.point.to_string()))
    })
}

pub fn diff(first: &Path, second: &Path, config: &RunConfig) -> Result<ExitCode, CliError> {
    let (d1, d2) = (load(first)?, load(second)?);
    let (r1, r2) = (d1.records(), d2.records());
    if r1.len() != r2.len() {
        emit(&format!("object counts differ: {} vs {}\n", r1.len(), r2.len()))?;
        return Ok(ExitCode::from(1));
    }
    let mut report = String::new();
    for (x, y) in r1.iter().zip(r2) {
        let a = anonymous(normal_form(&x.object, config)?);
        let b = anonymous(normal_form(&y.object, config)?);
        if a == b {
            continue;
        }
        report.push_str(&format!("{} and {} differ\n", x.object.id, y.object.id));
        if a.partition != b.partition {
            let show = |nf: &NormalForm| nf.partition.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            report.push_str(&format!("< partition {}\n> partition {}\n", show(&a), show(&b)));
        }
        let i = a.atoms.iter().zip(&b.atoms).position(|(p, q)| p != q).unwrap_or(a.atoms.len().min(b.atoms.len()));
        let show = |nf: &NormalForm| nf.atoms.get(i).map_or("none".to_string(), |at| atom_to_json(at).to_string());
        report.push_str(&format!("first differing atom {i}:\n< {}\n> {}\n", show(&a), show(&b)));
        match membership_witness(&a, &b, config.seed) {
            Some((t, p)) => report.push_str(&format!("snapshots differ at t = {}, point {p}\n", format_rational(&t))),
            None => report.push_str("sampled snapshots cover the same points\n"),
        }
        emit(&report)?;
        return Ok(ExitCode::from(1));
    }
    emit("same normal form\n")?;
    Ok(ExitCode::SUCCESS)
}

pub fn snapshot(input: &Path, time: &Rational) -> Result<ExitCode, CliError> {
    let doc = load(input)?;
    let mut lists = Vec::new();
    for r in doc.records() {
        validate_geometric(&r.object).map_err(PipelineError::from)?;
        let mut s: Vec<Triangle> = snapshot_geometric(&r.object, time).iter().map(Triangle::canonical).collect();
        s.sort();
        lists.push(triangles_json(&s));
    }
    emit(&format!("{}\n", shaped(&doc, lists)))?;
    Ok(ExitCode::SUCCESS)
}
