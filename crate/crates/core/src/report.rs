//! Row and report types shared by the tables, the CLI and the HTTP service,
//! plus the 17-significant-digit number rendering they all use.

use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

/// Renders `v` with 17 significant digits, which round-trips every binary64.
///
/// Magnitudes in `[1e-5, 1e17)` are written positionally; everything else in
/// scientific form. Both forms are valid JSON numbers.
pub fn fmt17(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "NaN".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if v == 0.0 {
        return format!("{sign}0.0000000000000000");
    }
    if (-5..17).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            format!("{sign}{}.{}", &digits[..split], &digits[split..])
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("{sign}0.{zeros}{digits}")
        }
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

fn raw(v: f64) -> Box<RawValue> {
    let text = if v.is_finite() { fmt17(v) } else { "null".to_string() };
    RawValue::from_string(text).expect("fmt17 emits valid JSON numbers")
}

pub fn ser17<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*v).serialize(s)
}

pub fn ser17_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => raw(*v).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn ser17_points<S: Serializer>(pts: &[(f64, f64)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for &(x, y) in pts {
        seq.serialize_element(&[raw(x), raw(y)])?;
    }
    seq.end()
}

fn ser17_map<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &raw(*v))?;
    }
    map.end()
}

/// Table parameter: a count `n` or a step `h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Count(u64),
    Step(f64),
}

impl Param {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Param::Count(n) => n as f64,
            Param::Step(h) => h,
        }
    }

    pub fn render(&self) -> String {
        match *self {
            Param::Count(n) => n.to_string(),
            Param::Step(h) => fmt17(h),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Param::Count(n) => s.serialize_u64(n),
            Param::Step(h) => ser17(&h, s),
        }
    }
}

/// One row of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    #[serde(rename = "n")]
    pub param: Param,
    #[serde(serialize_with = "ser17")]
    pub value: f64,
    /// `value − reference`.
    #[serde(serialize_with = "ser17")]
    pub error: f64,
    /// Certified bound on `|error|`, when one is available.
    #[serde(serialize_with = "ser17_opt")]
    pub bound: Option<f64>,
}

impl ConvergenceRecord {
    pub fn new(param: Param, value: f64, reference: f64, bound: Option<f64>) -> Self {
        ConvergenceRecord { param, value, error: value - reference, bound }
    }

    pub fn bound_holds(&self) -> bool {
        self.bound.is_none_or(|b| self.error.abs() <= b)
    }
}

pub const CSV_HEADER: [&str; 4] = ["n", "value", "error", "bound"];

/// Writes records as CSV with the header `n,value,error,bound`.
pub fn write_csv<W: std::io::Write>(rows: &[ConvergenceRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.param.render(),
            fmt17(r.value),
            fmt17(r.error),
            r.bound.map(fmt17).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Stretch,
    Compound,
    Series,
    Euler,
    LogInverse,
}

/// Outcome of one e-estimation run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub method: Method,
    #[serde(serialize_with = "ser17_map")]
    pub parameters: BTreeMap<String, f64>,
    #[serde(serialize_with = "ser17")]
    pub estimate: f64,
    /// `estimate − E_REF`.
    #[serde(serialize_with = "ser17")]
    pub error_vs_reference: f64,
    #[serde(serialize_with = "ser17_opt")]
    pub certificate: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FigureId {
    ExpStretch,
    Reflect,
    InverseDerivative,
    Napier,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curve {
    pub label: String,
    #[serde(serialize_with = "ser17_points")]
    pub points: Vec<(f64, f64)>,
}

impl Curve {
    pub fn new(label: impl Into<String>, mut points: Vec<(f64, f64)>) -> Self {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        Curve { label: label.into(), points }
    }

    pub fn is_valid(&self) -> bool {
        self.points.iter().all(|(x, y)| x.is_finite() && y.is_finite())
            && self.points.windows(2).all(|w| w[0].0 <= w[1].0)
    }
}

/// Sampled curves behind one figure; data only, no rendering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureData {
    pub figure_id: FigureId,
    pub curves: Vec<Curve>,
}

impl FigureData {
    pub fn curve(&self, label: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.label == label)
    }
}
