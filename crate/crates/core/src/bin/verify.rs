//! Command-line front end for the verification harness.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rankone::verify::{run_suite, Format, ModelChoice, Suite, Tolerances, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "verify", about = "Check boundary metric bounds on seeded samples")]
struct Args {
    #[arg(long, value_enum, default_value = "complex-h2")]
    model: ModelChoice,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Override a tolerance, `name=value`; repeatable.
    #[arg(long = "tolerance")]
    tolerances: Vec<String>,
    /// Random pairs used to measure the boundary diameter.
    #[arg(long, default_value_t = 10_000)]
    diameter_samples: usize,
}

fn main() -> ExitCode {
    env_logger::init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let mut tolerances = Tolerances::default();
    for t in &args.tolerances {
        if let Err(e) = tolerances.apply(t) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let config = VerifyConfig {
        model: args.model,
        suite: args.suite,
        samples: args.samples,
        seed: args.seed,
        tolerances,
        diameter_samples: args.diameter_samples,
        output: args.output,
        format: args.format,
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for s in &report.summary {
        println!(
            "{:<22} total {:>5}  pass {:>5}  fail {:>3}  soft {:>3}  vacuous {:>4}  ratio [{:.6e}, {:.6e}]",
            s.check, s.total, s.pass, s.fail, s.soft, s.vacuous, s.min_ratio, s.max_ratio
        );
    }
    if report.hard_failures() > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
