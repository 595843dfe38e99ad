//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankone::corr::{horospherical_distance, BoundaryChart, HoroMethod};
use rankone::hypmodel::{
    busemann_product_closed_form, direction_to_ideal, gromov_product_ideal, ray_endpoint, sampling, ModelSpace,
};
use rankone::verify::{run_suite, CheckSummary, ModelChoice, Report, Suite, VerifyConfig};

const SEED: u64 = 1;

type Criterion = (&'static str, Box<dyn Fn() -> Verdict>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn config(model: ModelChoice, suite: Suite, samples: usize) -> VerifyConfig {
    VerifyConfig { model, suite, samples, seed: SEED, ..VerifyConfig::default() }
}

fn summary<'a>(report: &'a Report, check: &str) -> Option<&'a CheckSummary> {
    report.summary.iter().find(|s| s.check == check)
}

/// No bound violations, at least one decided sample, and solver failures on
/// at most one percent of the samples.
fn judge(report: &Report, checks: &[&str]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in checks {
        match summary(report, name) {
            Some(s) => {
                let ok = s.fail == 0 && s.pass > 0 && s.soft * 100 <= s.total;
                pass &= ok;
                parts.push(format!(
                    "{name} pass={} fail={} soft={} vacuous={} range=[{:.6e}, {:.6e}]",
                    s.pass, s.fail, s.soft, s.vacuous, s.min_ratio, s.max_ratio
                ));
            }
            None => {
                pass = false;
                parts.push(format!("{name} missing"));
            }
        }
    }
    Verdict { pass, detail: parts.join("; ") }
}

fn run(model: ModelChoice, suite: Suite, samples: usize, checks: &[&str]) -> Verdict {
    match run_suite(&config(model, suite, samples)) {
        Ok(report) => judge(&report, checks),
        Err(e) => Verdict { pass: false, detail: format!("run failed: {e}") },
    }
}

fn axioms(checks: &[&str]) -> Verdict {
    static REPORT: OnceLock<std::result::Result<Report, String>> = OnceLock::new();
    let report = REPORT
        .get_or_init(|| run_suite(&config(ModelChoice::ComplexH2, Suite::Axioms, 1000)).map_err(|e| e.to_string()));
    match report {
        Ok(r) => judge(r, checks),
        Err(e) => Verdict { pass: false, detail: format!("run failed: {e}") },
    }
}

fn real_exactness() -> Verdict {
    let mut worst_horo = 0.0f64;
    let mut worst_chord = 0.0f64;
    let mut errors = 0;
    for n in [2, 3] {
        let model = ModelSpace::real(n);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + n as u64);
        let o = sampling::point(model, 1.0, &mut rng);
        let bc =
            match ray_endpoint(&sampling::unit_tangent(&o, &mut rng)).and_then(|c| BoundaryChart::from_center(c, o)) {
                Ok(bc) => bc,
                Err(e) => return Verdict { pass: false, detail: format!("chart: {e}") },
            };
        let origin = model.origin();
        for _ in 0..1000 {
            let xi = sampling::ideal(model, &mut rng);
            let eta = sampling::ideal(model, &mut rng);
            let horo = horospherical_distance(&bc, &xi, &eta, HoroMethod::Heis)
                .map(|d| (d * busemann_product_closed_form(&xi, &eta, bc.chart()).exp() - 1.0).abs());
            let chord = (|| {
                let u = direction_to_ideal(&origin, &xi)?;
                let v = direction_to_ideal(&origin, &eta)?;
                let g = gromov_product_ideal(&xi, &eta, &origin)?;
                Ok::<f64, rankone::Error>(((-g).exp() - 0.5 * u.sub(&v).norm()).abs())
            })();
            match (horo, chord) {
                (Ok(h), Ok(c)) => {
                    worst_horo = worst_horo.max(h);
                    worst_chord = worst_chord.max(c);
                }
                _ => errors += 1,
            }
        }
    }
    Verdict {
        pass: errors == 0 && worst_horo <= 1e-6 && worst_chord <= 1e-6,
        detail: format!(
            "2000 pairs, max |d_b e^g - 1| = {worst_horo:.3e}, max chord gap = {worst_chord:.3e}, errors = {errors}"
        ),
    }
}

fn determinism() -> Verdict {
    let cfg = config(ModelChoice::ComplexH2, Suite::All, 6);
    let cfg = VerifyConfig { diameter_samples: 50, ..cfg };
    let bytes = |c: &VerifyConfig| run_suite(c).and_then(|r| Ok((r.to_json()?, r.to_csv()?)));
    match (bytes(&cfg), bytes(&cfg)) {
        (Ok(a), Ok(b)) => Verdict {
            pass: a == b,
            detail: format!("json {} bytes, csv {} bytes, identical = {}", a.0.len(), a.1.len(), a == b),
        },
        (Err(e), _) | (_, Err(e)) => Verdict { pass: false, detail: format!("run failed: {e}") },
    }
}

fn main() -> ExitCode {
    let complex = ModelChoice::ComplexH2;
    let criteria: Vec<Criterion> = vec![
        ("horospherical comparison, 500 pairs", Box::new(move || run(complex, Suite::Thm1, 500, &["thm1"]))),
        ("visual comparison, 200 pairs", Box::new(move || run(complex, Suite::Thm2, 200, &["thm2"]))),
        ("real hyperbolic exactness", Box::new(real_exactness)),
        (
            "Euclidean-horospherical ratio and fiber constancy, 1000 samples",
            Box::new(|| axioms(&["lemma2_ratio", "lemma2_fiber"])),
        ),
        ("horosphere sandwich, 1000 pairs", Box::new(|| axioms(&["thm5_sandwich"]))),
        (
            "hyperbolicity triples and Ptolemy, 1000 samples",
            Box::new(|| axioms(&["delta_point", "delta_point_busemann", "delta_ideal", "delta_busemann", "ptolemy"])),
        ),
        (
            "equiradial points, 200 ideal triangles",
            Box::new(move || run(complex, Suite::Equiradial, 200, &["lemma3", "lemma4", "prop1", "lemma8"])),
        ),
        (
            "solver integrity, 200 samples",
            Box::new(move || run(complex, Suite::Solvers, 200, &["cc_agreement", "busemann_limit", "chart_isometry"])),
        ),
        (
            "horosphere-to-sphere map, 100 segments",
            Box::new(move || {
                run(complex, Suite::Lemma1, 100, &["lemma1_conformal", "lemma1_horizontal", "lemma1_length"])
            }),
        ),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({:.1} s) {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
