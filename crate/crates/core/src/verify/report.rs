//! Check records, outcomes and the CSV / JSON report writers.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::ser::{Error as _, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Seventeen significant digits, or a token for non-finite values.
pub fn fmt17(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        serde_json::value::RawValue::from_string(fmt17(*x)).map_err(S::Error::custom)?.serialize(s)
    } else {
        s.serialize_str(&fmt17(*x))
    }
}

struct F17(f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_f64(&self.0, s)
    }
}

fn ser_vec<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&F17(*x))?;
    }
    seq.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    /// A converged sample violates its bound.
    Fail,
    /// A solver did not converge; excluded from the bound statistics.
    Soft,
    /// The hypothesis of an implication is not met.
    Vacuous,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Soft => "soft",
            Outcome::Vacuous => "vacuous",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckRecord {
    pub suite: String,
    pub check: String,
    pub index: usize,
    #[serde(serialize_with = "ser_vec")]
    pub inputs: Vec<f64>,
    pub quantities: Vec<Quantity>,
    #[serde(serialize_with = "ser_f64")]
    pub ratio: f64,
    #[serde(serialize_with = "ser_f64")]
    pub lower: f64,
    #[serde(serialize_with = "ser_f64")]
    pub upper: f64,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
    pub outcome: Outcome,
    pub diagnostics: String,
}

impl BoundCheckRecord {
    /// A bound check `lower - tolerance <= ratio <= upper + tolerance`.
    pub fn bound(check: &str, ratio: f64, lower: f64, upper: f64, tolerance: f64) -> Self {
        let mut r = Self {
            suite: String::new(),
            check: check.into(),
            index: 0,
            inputs: Vec::new(),
            quantities: Vec::new(),
            ratio,
            lower,
            upper,
            tolerance,
            outcome: Outcome::Pass,
            diagnostics: String::new(),
        };
        r.outcome = r.judged();
        r
    }

    pub fn vacuous(check: &str, lower: f64, upper: f64, tolerance: f64, reason: &str) -> Self {
        let mut r = Self::bound(check, f64::NAN, lower, upper, tolerance);
        r.outcome = Outcome::Vacuous;
        r.diagnostics = reason.into();
        r
    }

    pub fn soft(check: &str, lower: f64, upper: f64, tolerance: f64, error: &Error) -> Self {
        let mut r = Self::bound(check, f64::NAN, lower, upper, tolerance);
        r.outcome = Outcome::Soft;
        r.diagnostics = error.to_string();
        r
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.quantities.push(Quantity { name: name.into(), value });
        self
    }

    pub fn with_inputs(mut self, inputs: &[f64]) -> Self {
        self.inputs = inputs.to_vec();
        self
    }

    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|q| q.name == name).map(|q| q.value)
    }

    /// Pass or fail from the stored ratio, bounds and tolerance.
    pub fn judged(&self) -> Outcome {
        let ok = self.ratio >= self.lower - self.tolerance && self.ratio <= self.upper + self.tolerance;
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// The stored outcome agrees with the stored numbers.
    pub fn is_consistent(&self) -> bool {
        match self.outcome {
            Outcome::Soft | Outcome::Vacuous => true,
            o => o == self.judged(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check: String,
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub soft: usize,
    pub vacuous: usize,
    #[serde(serialize_with = "ser_f64")]
    pub min_ratio: f64,
    #[serde(serialize_with = "ser_f64")]
    pub max_ratio: f64,
}

/// Per-check counts and the extremal ratios over decided samples, in order
/// of first appearance.
pub fn summarize(records: &[BoundCheckRecord]) -> Vec<CheckSummary> {
    let mut out: Vec<CheckSummary> = Vec::new();
    for r in records {
        let pos = match out.iter().position(|s| s.check == r.check) {
            Some(p) => p,
            None => {
                out.push(CheckSummary {
                    check: r.check.clone(),
                    total: 0,
                    pass: 0,
                    fail: 0,
                    soft: 0,
                    vacuous: 0,
                    min_ratio: f64::INFINITY,
                    max_ratio: f64::NEG_INFINITY,
                });
                out.len() - 1
            }
        };
        let s = &mut out[pos];
        s.total += 1;
        match r.outcome {
            Outcome::Pass => s.pass += 1,
            Outcome::Fail => s.fail += 1,
            Outcome::Soft => s.soft += 1,
            Outcome::Vacuous => s.vacuous += 1,
        }
        if matches!(r.outcome, Outcome::Pass | Outcome::Fail) {
            s.min_ratio = s.min_ratio.min(r.ratio);
            s.max_ratio = s.max_ratio.max(r.ratio);
        }
    }
    out
}

/// Report header: run parameters and the constants in force.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportHeader {
    pub model: String,
    pub suite: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Vec<Quantity>,
    pub constants: Vec<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub header: ReportHeader,
    pub records: Vec<BoundCheckRecord>,
    pub summary: Vec<CheckSummary>,
}

pub const CSV_COLUMNS: [&str; 11] = [
    "suite",
    "check",
    "index",
    "inputs",
    "quantities",
    "ratio",
    "lower",
    "upper",
    "tolerance",
    "outcome",
    "diagnostics",
];

impl Report {
    pub fn hard_failures(&self) -> usize {
        self.summary.iter().map(|s| s.fail).sum()
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut out = serde_json::to_vec_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        out.push(b'\n');
        Ok(out)
    }

    /// CSV with `#`-prefixed header lines followed by the fixed column row.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        let h = &self.header;
        let mut preamble = format!("# model={} suite={} samples={} seed={}\n", h.model, h.suite, h.samples, h.seed);
        for q in h.constants.iter().chain(&h.tolerances) {
            let _ = writeln!(preamble, "# {}={}", q.name, fmt17(q.value));
        }
        out.extend_from_slice(preamble.as_bytes());
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_COLUMNS).map_err(io)?;
        for r in &self.records {
            let inputs = r.inputs.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(" ");
            let quantities =
                r.quantities.iter().map(|q| format!("{}={}", q.name, fmt17(q.value))).collect::<Vec<_>>().join(" ");
            w.write_record([
                r.suite.clone(),
                r.check.clone(),
                r.index.to_string(),
                inputs,
                quantities,
                fmt17(r.ratio),
                fmt17(r.lower),
                fmt17(r.upper),
                fmt17(r.tolerance),
                r.outcome.as_str().to_string(),
                r.diagnostics.clone(),
            ])
            .map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn write(&self, path: &Path, format: super::Format) -> Result<()> {
        let bytes = match format {
            super::Format::Csv => self.to_csv()?,
            super::Format::Json => self.to_json()?,
        };
        let mut f = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        f.write_all(&bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(f64::INFINITY), "inf");
        let r = BoundCheckRecord::bound("x", 0.1, 0.0, 1.0, 0.0);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"ratio\":1.0000000000000001e-1"), "{json}");
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["ratio"].as_f64(), Some(0.1));
    }

    #[test]
    fn outcome_recomputes() {
        let r = BoundCheckRecord::bound("x", 1.0005, 0.0, 1.0, 1e-3);
        assert_eq!(r.outcome, Outcome::Pass);
        let r = BoundCheckRecord::bound("x", 1.002, 0.0, 1.0, 1e-3);
        assert_eq!(r.outcome, Outcome::Fail);
        assert!(r.is_consistent());
    }
}
