//! JSON interchange format for geometric objects and normal forms.
//!
//! Rationals are `[numerator, denominator]` pairs whose parts are JSON
//! integers when they fit in an `i64` and decimal strings otherwise. An
//! irrational time is `{"poly": [coefficients…], "iso": [lo, hi]}` with the
//! coefficients in ascending order and exactly one root in `]lo, hi[`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::exact_arith::{Polynomial, Rational, RationalFunction, SturmChain, TimeValue};
use crate::planar_geom::{Point, Triangle};

use super::{AtomicObject, GeometricObject, TimeDepAffinity, TimeInterval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for JsonError {}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends the position to its message; keep it only once.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        JsonError { line: e.line(), column: e.column(), message }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntJson {
    Small(i64),
    Big(String),
}

fn int_to_json(n: &BigInt) -> IntJson {
    match n.to_i64() {
        Some(v) => IntJson::Small(v),
        None => IntJson::Big(n.to_string()),
    }
}

fn int_from_json<E: serde::de::Error>(n: IntJson) -> Result<BigInt, E> {
    match n {
        IntJson::Small(v) => Ok(v.into()),
        IntJson::Big(s) => s.parse().map_err(|_| E::custom(format!("invalid integer {s:?}"))),
    }
}

struct Rat(Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [int_to_json(self.0.numer()), int_to_json(self.0.denom())].serialize(s)
    }
}

type RawRat = [IntJson; 2];

fn rat_from_raw<E: serde::de::Error>([n, den]: RawRat) -> Result<Rational, E> {
    let (n, den) = (int_from_json::<E>(n)?, int_from_json::<E>(den)?);
    if den.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(Rational::new(n, den))
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        rat_from_raw(RawRat::deserialize(d)?).map(Rat)
    }
}

fn rats(v: &[Rational]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn poly_of(v: Vec<Rat>) -> Polynomial {
    Polynomial::new(v.into_iter().map(|r| r.0).collect())
}

// Parts stay raw so that the untagged match does not hide their errors.
#[derive(Deserialize)]
#[serde(untagged)]
enum TimeRepr {
    Exact(RawRat),
    Algebraic { poly: Vec<RawRat>, iso: [RawRat; 2] },
}

#[derive(Serialize)]
struct AlgebraicJson {
    poly: Vec<Rat>,
    iso: [Rat; 2],
}

struct Time(TimeValue);

impl Serialize for Time {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            TimeValue::Exact(r) => Rat(r.clone()).serialize(s),
            TimeValue::Algebraic { poly, lo, hi } => {
                AlgebraicJson { poly: rats(poly.coeffs()), iso: [Rat(lo.clone()), Rat(hi.clone())] }.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for Time {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match TimeRepr::deserialize(d)? {
            TimeRepr::Exact(r) => Ok(Time(TimeValue::Exact(rat_from_raw(r)?))),
            TimeRepr::Algebraic { poly, iso: [lo, hi] } => {
                let coeffs = poly.into_iter().map(rat_from_raw).collect::<Result<Vec<_>, D::Error>>()?;
                let p = Polynomial::new(coeffs);
                let (lo, hi) = (rat_from_raw::<D::Error>(lo)?, rat_from_raw::<D::Error>(hi)?);
                if p.is_zero() || lo >= hi {
                    return Err(D::Error::custom("time needs a nonzero polynomial and lo < hi"));
                }
                let p = p.square_free();
                if SturmChain::new(&p).count_open(&lo, &hi) != 1 {
                    return Err(D::Error::custom("isolating interval must hold exactly one root"));
                }
                Ok(Time(TimeValue::from_isolating(&p, lo, hi)))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalJson {
    lo: Time,
    hi: Time,
    closed_lo: bool,
    closed_hi: bool,
}

impl IntervalJson {
    fn from_domain(d: &TimeInterval) -> Self {
        IntervalJson {
            lo: Time(d.lo.clone()),
            hi: Time(d.hi.clone()),
            closed_lo: d.closed_lo,
            closed_hi: d.closed_hi,
        }
    }

    fn into_domain<E: serde::de::Error>(self) -> Result<TimeInterval, E> {
        let d = TimeInterval::new(self.lo.0, self.hi.0, self.closed_lo, self.closed_hi);
        if !d.is_well_formed() {
            return Err(E::custom(format!("empty time interval {d}")));
        }
        Ok(d)
    }
}

struct Domain(TimeInterval);

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntervalJson::from_domain(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        IntervalJson::deserialize(d)?.into_domain().map(Domain)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFunRepr {
    num: Vec<Rat>,
    den: Vec<Rat>,
}

struct RatFun(RationalFunction);

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFunRepr { num: rats(self.0.num().coeffs()), den: rats(self.0.den().coeffs()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFunRepr::deserialize(d)?;
        RationalFunction::try_new(poly_of(r.num), poly_of(r.den))
            .map(RatFun)
            .map_err(|_| D::Error::custom("zero denominator polynomial"))
    }
}

#[derive(Serialize, Deserialize)]
struct TransformJson {
    a11: RatFun,
    a12: RatFun,
    a21: RatFun,
    a22: RatFun,
    b1: RatFun,
    b2: RatFun,
}

type PointJson = [Rat; 2];

#[derive(Serialize, Deserialize)]
struct AtomJson {
    triangle: [PointJson; 3],
    interval: Domain,
    transform: TransformJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source_id: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    approximate: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectJson {
    id: String,
    atoms: Vec<AtomJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<Domain>>,
}

fn point_json(p: &Point) -> PointJson {
    [Rat(p.x.clone()), Rat(p.y.clone())]
}

fn triangle_json(t: &Triangle) -> [PointJson; 3] {
    let c = t.corners();
    [point_json(&c[0]), point_json(&c[1]), point_json(&c[2])]
}

fn triangle_of(c: [PointJson; 3]) -> Triangle {
    let [a, b, c] = c.map(|[x, y]| Point::new(x.0, y.0));
    Triangle::new(a, b, c)
}

fn atom_json(a: &AtomicObject) -> AtomJson {
    let f = &a.transform;
    let rf = |e: &RationalFunction| RatFun(e.clone());
    AtomJson {
        triangle: triangle_json(&a.triangle),
        interval: Domain(a.domain.clone()),
        transform: TransformJson {
            a11: rf(&f.a11),
            a12: rf(&f.a12),
            a21: rf(&f.a21),
            a22: rf(&f.a22),
            b1: rf(&f.b1),
            b2: rf(&f.b2),
        },
        source_id: a.source_id.clone(),
        approximate: a.approximate,
    }
}

fn atom_of(a: AtomJson) -> AtomicObject {
    let t = a.transform;
    AtomicObject {
        triangle: triangle_of(a.triangle),
        domain: a.interval.0,
        transform: TimeDepAffinity { a11: t.a11.0, a12: t.a12.0, a21: t.a21.0, a22: t.a22.0, b1: t.b1.0, b2: t.b2.0 },
        source_id: a.source_id,
        approximate: a.approximate,
    }
}

/// A geometric object as stored on disk, with the partition when the file
/// holds a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectRecord {
    pub object: GeometricObject,
    pub partition: Option<Vec<TimeInterval>>,
}

impl ObjectRecord {
    fn to_json(&self) -> ObjectJson {
        ObjectJson {
            id: self.object.id.clone(),
            atoms: self.object.atoms.iter().map(atom_json).collect(),
            partition: self.partition.as_ref().map(|p| p.iter().cloned().map(Domain).collect()),
        }
    }

    fn from_json(o: ObjectJson) -> Self {
        ObjectRecord {
            object: GeometricObject::new(o.id, o.atoms.into_iter().map(atom_of).collect()),
            partition: o.partition.map(|p| p.into_iter().map(|d| d.0).collect()),
        }
    }
}

/// A file holds either one object or a list of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Single(ObjectRecord),
    List(Vec<ObjectRecord>),
}

impl Document {
    pub fn records(&self) -> &[ObjectRecord] {
        match self {
            Document::Single(r) => std::slice::from_ref(r),
            Document::List(v) => v,
        }
    }

    /// The same shape with every record replaced through `f`.
    pub fn try_map<E>(&self, f: impl FnMut(&ObjectRecord) -> Result<ObjectRecord, E>) -> Result<Document, E> {
        let mut f = f;
        Ok(match self {
            Document::Single(r) => Document::Single(f(r)?),
            Document::List(v) => Document::List(v.iter().map(f).collect::<Result<_, _>>()?),
        })
    }
}

pub fn parse_document(text: &str) -> Result<Document, JsonError> {
    if text.trim_start().starts_with('[') {
        let v: Vec<ObjectJson> = serde_json::from_str(text)?;
        Ok(Document::List(v.into_iter().map(ObjectRecord::from_json).collect()))
    } else {
        let o: ObjectJson = serde_json::from_str(text)?;
        Ok(Document::Single(ObjectRecord::from_json(o)))
    }
}

/// Pretty-printed JSON with a trailing newline; equal documents give equal
/// bytes.
pub fn document_to_string(doc: &Document) -> String {
    let mut s = match doc {
        Document::Single(r) => serde_json::to_string_pretty(&r.to_json()),
        Document::List(v) => serde_json::to_string_pretty(&v.iter().map(ObjectRecord::to_json).collect::<Vec<_>>()),
    }
    .expect("plain data serializes");
    s.push('\n');
    s
}

pub fn time_value_json(t: &TimeValue) -> Value {
    serde_json::to_value(Time(t.clone())).expect("plain data serializes")
}

pub fn triangles_json(ts: &[Triangle]) -> Value {
    serde_json::to_value(ts.iter().map(triangle_json).collect::<Vec<_>>()).expect("plain data serializes")
}

pub fn atom_to_json(a: &AtomicObject) -> Value {
    serde_json::to_value(atom_json(a)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    fn running() -> GeometricObject {
        let d = TimeInterval::closed(int(0), int(4));
        GeometricObject::new(
            "running",
            vec![
                AtomicObject::new(Triangle::from_i64([(-1, 0), (1, 0), (0, 2)]), d.clone(), TimeDepAffinity::identity()),
                AtomicObject::new(
                    Triangle::from_i64([(-3, 1), (-1, 1), (-2, 3)]),
                    d,
                    TimeDepAffinity::translation(RationalFunction::t(), RationalFunction::zero()),
                ),
            ],
        )
    }

    #[test]
    fn round_trip() {
        let doc = Document::Single(ObjectRecord { object: running(), partition: None });
        let text = document_to_string(&doc);
        assert_eq!(parse_document(&text).unwrap(), doc);
        assert_eq!(document_to_string(&parse_document(&text).unwrap()), text);
    }

    #[test]
    fn round_trip_with_partition_and_algebraic_time() {
        let sqrt2 = TimeValue::from_isolating(&Polynomial::from_i64(&[-2, 0, 1]), int(1), int(2));
        let mut a = running().atoms[0].clone();
        a.domain = TimeInterval::new(int(0).into(), sqrt2.clone(), true, false);
        a.source_id = Some("x".into());
        a.approximate = true;
        let rec = ObjectRecord {
            object: GeometricObject::new("nf", vec![a]),
            partition: Some(vec![TimeInterval::point(sqrt2)]),
        };
        let doc = Document::List(vec![rec]);
        let text = document_to_string(&doc);
        assert_eq!(parse_document(&text).unwrap(), doc);
    }

    #[test]
    fn big_integers_become_strings() {
        let big = Rational::new(BigInt::from(10).pow(30u32), 7.into());
        let v = time_value_json(&TimeValue::Exact(big.clone()));
        assert_eq!(v, serde_json::json!(["1000000000000000000000000000000", 7]));
        let back: Rat = serde_json::from_value(v).unwrap();
        assert_eq!(back.0, big);
        assert_eq!(time_value_json(&TimeValue::Exact(rat(-1, 2))), serde_json::json!([-1, 2]));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_document("{\n  \"id\": \"a\",\n  \"atoms\": [,]\n}").unwrap_err();
        assert_eq!((e.line, e.column), (3, 13));
    }

    #[test]
    fn semantic_errors_are_rejected() {
        let atom = |den: &str| {
            format!(
                r#"{{"id":"a","atoms":[{{"triangle":[[[0,1],[0,1]],[[1,1],[0,1]],[[0,1],[1,1]]],
                "interval":{{"lo":[0,1],"hi":[1,{den}],"closed_lo":true,"closed_hi":true}},
                "transform":{{"a11":{{"num":[[1,1]],"den":[[1,1]]}},"a12":{{"num":[],"den":[[1,1]]}},
                "a21":{{"num":[],"den":[[1,1]]}},"a22":{{"num":[[1,1]],"den":[[1,1]]}},
                "b1":{{"num":[],"den":[[1,1]]}},"b2":{{"num":[],"den":[[1,1]]}}}}}}]}}"#
            )
        };
        assert!(parse_document(&atom("1")).is_ok());
        let e = parse_document(&atom("0")).unwrap_err();
        assert!(e.message.contains("zero denominator"), "{e}");
        assert_eq!(e.line, 2);
        let e = parse_document(&atom("-1")).unwrap_err();
        assert!(e.message.contains("empty time interval"), "{e}");
    }

    #[test]
    fn iso_must_isolate_one_root() {
        let ok: Result<Time, _> = serde_json::from_str(r#"{"poly":[[-2,1],[0,1],[1,1]],"iso":[[1,1],[2,1]]}"#);
        assert!(ok.is_ok());
        let two: Result<Time, _> = serde_json::from_str(r#"{"poly":[[-2,1],[0,1],[1,1]],"iso":[[-2,1],[2,1]]}"#);
        assert!(two.is_err());
    }
}
