//! Seeded batch verification of the comparisons between boundary metrics
//! and Gromov products.
//!
//! Every sample draws from its own ChaCha stream keyed by `(seed, suite,
//! index)`, so reports are reproducible byte for byte regardless of the
//! evaluation order.

mod checks;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::batch::map_indexed;
use crate::corr::{random_heis_point, spherical_solve, BoundaryChart, SphereOptions};
use crate::error::{Error, Result};
use crate::hypmodel::{plane_delta, ray_endpoint, sampling, ModelSpace};

pub use checks::{
    check_axioms, check_equiradial, check_lemma1, check_lemma_chain, check_real_identities, check_solvers, check_thm1,
    check_thm2, horizontal_direction, opposite_ideal, perturbed_ideal, sample_heis_disk, AxiomSample,
};
pub use report::{
    fmt17, summarize, BoundCheckRecord, CheckSummary, Outcome, Quantity, Report, ReportHeader, CSV_COLUMNS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModelChoice {
    #[value(name = "real-h2")]
    RealH2,
    #[value(name = "real-h3")]
    RealH3,
    #[value(name = "complex-h2")]
    ComplexH2,
}

impl ModelChoice {
    pub fn space(self) -> ModelSpace {
        match self {
            ModelChoice::RealH2 => ModelSpace::real(2),
            ModelChoice::RealH3 => ModelSpace::real(3),
            ModelChoice::ComplexH2 => ModelSpace::complex(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelChoice::RealH2 => "real-h2",
            ModelChoice::RealH3 => "real-h3",
            ModelChoice::ComplexH2 => "complex-h2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Thm1,
    Thm2,
    Lemmas,
    Axioms,
    Equiradial,
    Solvers,
    Lemma1,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 7] =
        [Suite::Thm1, Suite::Thm2, Suite::Lemmas, Suite::Axioms, Suite::Equiradial, Suite::Solvers, Suite::Lemma1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Lemmas => "lemmas",
            Suite::Axioms => "axioms",
            Suite::Equiradial => "equiradial",
            Suite::Solvers => "solvers",
            Suite::Lemma1 => "lemma1",
            Suite::All => "all",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::SINGLE.to_vec(),
            s => vec![s],
        }
    }

    fn stream_id(self) -> u64 {
        Self::SINGLE.iter().position(|&s| s == self).map_or(0, |p| p as u64 + 1)
    }

    fn needs_diameter(self) -> bool {
        matches!(self, Suite::Thm2 | Suite::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// The explicit constants, all derived from the hyperbolicity constant of
/// the real hyperbolic plane, plus the measured boundary diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PaperConstants {
    pub delta: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c2_prime: f64,
    pub c2_doubleprime: Option<f64>,
    pub diameter: Option<f64>,
}

impl PaperConstants {
    pub fn new(diameter: Option<f64>) -> Self {
        let delta = plane_delta();
        let c1 = 2.0 * (-(1.0 + delta)).exp();
        let c2 = (17.0 * delta.sinh()).sqrt();
        let c3 = ((2.0 + 3.0 * delta).sinh() / 2.0).ln();
        let c2_prime = c2 * c3.exp();
        let c2_doubleprime = diameter.map(|d| (d * (1.0 + delta).exp()).max(c2_prime));
        Self { delta, c1, c2, c3, c2_prime, c2_doubleprime, diameter }
    }

    /// `d_inf` below which the visual Gromov product is at least `1 + delta`.
    pub fn lemma10_threshold(&self) -> f64 {
        2.0 * (-(2.0 + self.delta)).exp()
    }

    /// Largest deviation of the stored constants from a fresh derivation.
    pub fn integrity_error(&self) -> f64 {
        let fresh = Self::new(self.diameter);
        let pairs = [
            (self.delta, fresh.delta),
            (self.c1, fresh.c1),
            (self.c2, fresh.c2),
            (self.c3, fresh.c3),
            (self.c2_prime, fresh.c2_prime),
            (self.c2_doubleprime.unwrap_or(0.0), fresh.c2_doubleprime.unwrap_or(0.0)),
        ];
        pairs.iter().fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Boundary diameter of the visual metric at the origin: the largest
    /// coarse (upper bound) visual distance over `samples` random pairs,
    /// plus five percent.
    pub fn measure_diameter(model: ModelSpace, samples: usize, seed: u64) -> Result<f64> {
        let o = model.origin();
        let opts = SphereOptions::coarse(8);
        let values = map_indexed(samples, |i| {
            let mut rng = stream(seed, 0xd1a, i);
            let xi = sampling::ideal(model, &mut rng);
            let eta = sampling::ideal(model, &mut rng);
            spherical_solve(&o, &xi, &eta, &opts).map(|s| s.upper_bound).unwrap_or(f64::NAN)
        });
        let max = values.iter().copied().filter(|v| v.is_finite()).fold(0.0f64, f64::max);
        if samples > 0 && max == 0.0 {
            return Err(Error::OptimizerConvergence { residual: f64::NAN });
        }
        Ok(1.05 * max)
    }

    fn as_quantities(&self) -> Vec<Quantity> {
        let mut q = vec![
            Quantity { name: "delta".into(), value: self.delta },
            Quantity { name: "c1".into(), value: self.c1 },
            Quantity { name: "c2".into(), value: self.c2 },
            Quantity { name: "c3".into(), value: self.c3 },
            Quantity { name: "c2_prime".into(), value: self.c2_prime },
        ];
        if let (Some(d), Some(c)) = (self.diameter, self.c2_doubleprime) {
            q.push(Quantity { name: "diameter".into(), value: d });
            q.push(Quantity { name: "c2_doubleprime".into(), value: c });
        }
        q
    }
}

/// Named tolerances with defaults: 1e-6 on closed-form identities and 1e-3
/// on optimizer-backed quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        let entries = [
            ("closed_form", 1e-6),
            ("optimizer", 1e-3),
            ("ptolemy", 1e-9),
            ("consistency", 1e-6),
            ("distortion", 1e-6),
        ];
        Self(entries.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Config(format!("tolerance {name} must be a nonnegative number")));
        }
        match self.0.get_mut(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::Config(format!("unknown tolerance {name}"))),
        }
    }

    /// Parses `name=value`.
    pub fn apply(&mut self, assignment: &str) -> Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected name=value, got {assignment}")))?;
        let value: f64 = value.trim().parse().map_err(|_| Error::Config(format!("bad tolerance value {value}")))?;
        self.set(name.trim(), value)
    }

    fn as_quantities(&self) -> Vec<Quantity> {
        self.0.iter().map(|(k, v)| Quantity { name: k.clone(), value: *v }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub model: ModelChoice,
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Pairs used to measure the boundary diameter.
    pub diameter_samples: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            model: ModelChoice::ComplexH2,
            suite: Suite::All,
            samples: 100,
            seed: 0,
            tolerances: Tolerances::default(),
            diameter_samples: 10_000,
            output: None,
            format: Format::Json,
        }
    }
}

/// Random stream for one sample.
pub fn stream(seed: u64, suite: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 40) | index as u64);
    rng
}

/// Per-suite chart: random center and basepoint from the suite's setup stream.
fn suite_chart(model: ModelSpace, seed: u64, suite: Suite) -> Result<BoundaryChart> {
    let mut rng = stream(seed, suite.stream_id(), usize::MAX >> 24);
    let o = sampling::point(model, 1.0, &mut rng);
    let center = ray_endpoint(&sampling::unit_tangent(&o, &mut rng))?;
    BoundaryChart::from_center(center, o)
}

fn run_one(config: &VerifyConfig, suite: Suite, constants: &PaperConstants) -> Result<Vec<BoundCheckRecord>> {
    let model = config.model.space();
    let tol = &config.tolerances;
    let chart = suite_chart(model, config.seed, suite)?;
    let o = model.origin();
    let sample = |i: usize| -> Vec<BoundCheckRecord> {
        let mut rng = stream(config.seed, suite.stream_id(), i);
        match suite {
            Suite::Thm1 => {
                let (p, q) = match i % 3 {
                    0 => (sample_heis_disk(model, 1.0, &mut rng), sample_heis_disk(model, 1.0, &mut rng)),
                    1 => (sample_heis_disk(model, 10.0, &mut rng), sample_heis_disk(model, 10.0, &mut rng)),
                    _ => {
                        let lambda = rng.random_range(-2.0f64..2.0).exp();
                        let (p, q) = (sample_heis_disk(model, 1.0, &mut rng), sample_heis_disk(model, 1.0, &mut rng));
                        (
                            crate::heisen::dilation(lambda, &p).unwrap_or(p),
                            crate::heisen::dilation(lambda, &q).unwrap_or(q),
                        )
                    }
                };
                match (chart.ideal(&p), chart.ideal(&q)) {
                    (Ok(xi), Ok(eta)) => vec![check_thm1(&xi, &eta, &chart, constants, tol)],
                    (Err(e), _) | (_, Err(e)) => {
                        vec![BoundCheckRecord::soft("thm1", constants.c1, constants.c2, tol.get("optimizer"), &e)]
                    }
                }
            }
            Suite::Thm2 => {
                let xi = sampling::ideal(model, &mut rng);
                let eta = if i.is_multiple_of(2) {
                    Ok(sampling::ideal(model, &mut rng))
                } else {
                    let eps = (-rng.random_range(0.0..5.0f64)).exp();
                    perturbed_ideal(&o, &xi, eps, &mut rng)
                };
                let eta = match eta {
                    Ok(e) => e,
                    Err(e) => return vec![BoundCheckRecord::soft("thm2", constants.c1, f64::NAN, 0.0, &e)],
                };
                let mut out = vec![check_thm2(&xi, &eta, &o, constants, tol)];
                if !model.is_complex() {
                    out.extend(check_real_identities(&xi, &eta, &o, tol));
                }
                out
            }
            Suite::Lemmas => {
                let xi = sampling::ideal(model, &mut rng);
                let eta = if i.is_multiple_of(4) {
                    Ok(sampling::ideal(model, &mut rng))
                } else {
                    let eps = (-rng.random_range(2.0..6.0f64)).exp();
                    perturbed_ideal(&o, &xi, eps, &mut rng)
                };
                match eta {
                    Ok(eta) => check_lemma_chain(&xi, &eta, &o, constants, tol),
                    Err(e) => vec![BoundCheckRecord::soft("lemma9", 0.0, constants.c3, 0.0, &e)],
                }
            }
            Suite::Axioms => {
                let s = AxiomSample::draw(model, &chart, &mut rng);
                check_axioms(&s, constants, tol)
            }
            Suite::Equiradial => {
                let tri = [0; 3].map(|_| sampling::ideal(model, &mut rng));
                let levels = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                check_equiradial([&tri[0], &tri[1], &tri[2]], levels, constants, tol)
            }
            Suite::Solvers => {
                let p = random_heis_point(model, 1.5, &mut rng);
                let q = random_heis_point(model, 1.5, &mut rng);
                let x = sampling::point(model, 3.0, &mut rng);
                let local = sampling::point(model, 1.0, &mut rng);
                let center = ray_endpoint(&sampling::unit_tangent(&local, &mut rng));
                match center.and_then(|c| BoundaryChart::from_center(c, local)) {
                    Ok(bc) => check_solvers(&p, &q, &x, &bc, rng.random()),
                    Err(e) => vec![BoundCheckRecord::soft("chart_isometry", 0.0, 1e-5, 0.0, &e)],
                }
            }
            Suite::Lemma1 => {
                let p = random_heis_point(model, 1.5, &mut rng);
                let v = horizontal_direction(model, &mut rng);
                let length = rng.random_range(0.1..2.0);
                check_lemma1(&chart, &p, &v, length)
            }
            Suite::All => unreachable!("expanded by the caller"),
        }
    };
    let batches = map_indexed(config.samples, sample);
    let mut out = Vec::new();
    for (i, batch) in batches.into_iter().enumerate() {
        for mut r in batch {
            r.suite = suite.name().into();
            r.index = i;
            out.push(r);
        }
    }
    Ok(out)
}

/// Runs the configured suites and writes the report when an output path is
/// set. Solver failures become soft records; bound violations are hard.
pub fn run_suite(config: &VerifyConfig) -> Result<Report> {
    let diameter = if config.suite.needs_diameter() && config.samples > 0 {
        Some(PaperConstants::measure_diameter(config.model.space(), config.diameter_samples, config.seed)?)
    } else {
        None
    };
    let constants = PaperConstants::new(diameter);
    if constants.integrity_error() > 1e-12 {
        return Err(Error::Config("constant derivation is inconsistent".into()));
    }
    let mut records = Vec::new();
    for suite in config.suite.members() {
        records.extend(run_one(config, suite, &constants)?);
    }
    let summary = summarize(&records);
    let report = Report {
        header: ReportHeader {
            model: config.model.name().into(),
            suite: config.suite.name().into(),
            samples: config.samples,
            seed: config.seed,
            tolerances: config.tolerances.as_quantities(),
            constants: constants.as_quantities(),
        },
        records,
        summary,
    };
    if let Some(path) = &config.output {
        report.write(path, config.format)?;
    }
    Ok(report)
}
