//! `cheshire`: run Zeno-cavity weak-value scenarios and the built-in
//! verification suite from the command line.
//!
//! Exit codes: 0 success, 1 bad usage or configuration, 2 verification
//! failure, 3 numerical anomaly.

mod config;
mod output;
mod registry;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cheshire_core::cycle::{self, CycleConfig};
use cheshire_core::verify::{self, CheckResult, Status};
use cheshire_core::C64;

use config::{CliError, KeySpec, ScenarioConfig};

#[derive(Parser)]
#[command(name = "cheshire", version, about = "Weak values in a spin-dependent Zeno cavity")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Run one scenario and write its series and summary tables.
    Run {
        /// Scenario name; see `list-scenarios`.
        scenario: String,
        /// Configuration file of KEY = VALUE lines (# comments allowed).
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        /// Single KEY=VALUE override; repeatable, later values win.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Directory the two output files are written into.
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
        /// Seed echoed into the output header (reserved for randomized runs).
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run the verification suite and print one pass/fail row per gate.
    Verify {
        /// Configuration file of KEY = VALUE lines (# comments allowed).
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        /// Single KEY=VALUE override; repeatable, later values win.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Seed of the randomized-invariants gate.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// List every scenario with its configuration keys and defaults.
    ListScenarios,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes; anything else is bad usage.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.verb {
        Verb::Run { scenario, config, set, out, seed } => {
            run_verb(&scenario, config.as_deref(), &set, &out, seed)
        }
        Verb::Verify { config, set, seed } => verify_verb(config.as_deref(), &set, seed),
        Verb::ListScenarios => {
            list_scenarios();
            Ok(ExitCode::SUCCESS)
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("{e}");
        ExitCode::from(e.exit_code())
    })
}

/// Validates, computes, and only then touches the filesystem, so an invalid
/// configuration never leaves output behind.
fn run_verb(
    name: &str,
    config_path: Option<&Path>,
    sets: &[String],
    out_dir: &Path,
    seed: u64,
) -> Result<ExitCode, CliError> {
    let scenario = registry::find(name)?;
    let mut config = ScenarioConfig::load(config_path, sets, seed)?;
    config.finalize(scenario.keys())?;
    let output = scenario.run(&config)?;

    let preamble = output::preamble(scenario.name(), &config);
    std::fs::create_dir_all(out_dir).map_err(|e| {
        CliError::Validation(format!("cannot create {}: {e}", out_dir.display()))
    })?;
    let write = |suffix: &str, table: &output::Table| -> Result<PathBuf, CliError> {
        let path = out_dir.join(format!("{}-{suffix}.tsv", scenario.name()));
        std::fs::write(&path, table.render(&preamble))
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    };
    let series_path = write("series", &output.series)?;
    let summary_path = write("summary", &output.summary)?;
    println!("wrote {}", series_path.display());
    println!("wrote {}", summary_path.display());
    Ok(ExitCode::SUCCESS)
}

const VERIFY_KEYS: &[KeySpec] = &[
    KeySpec {
        key: "alpha",
        default: "0.01",
        doc: "cavity rotation per period for the zeno-contrast row",
    },
    KeySpec {
        key: "n_total",
        default: "auto",
        doc: "periods of the zeno-contrast row; auto = floor(pi / (2 alpha))",
    },
    KeySpec {
        key: "round_trip_phase_rad",
        default: "0",
        doc: "right-arm phase of the zeno-contrast row; nonzero breaks the contrast",
    },
    KeySpec {
        key: "continuum",
        default: "true",
        doc: "false skips the long continuum gate and marks its row skipped",
    },
];

fn verify_verb(config_path: Option<&Path>, sets: &[String], seed: u64) -> Result<ExitCode, CliError> {
    let mut config = ScenarioConfig::load(config_path, sets, seed)?;
    config.finalize(VERIFY_KEYS)?;
    let alpha = config.f64("alpha")?;
    let phase = config.f64("round_trip_phase_rad")?;
    let continuum = config.flag("continuum")?;
    let auto = CycleConfig::new(alpha)
        .map_err(|e| CliError::Validation(e.to_string()))?
        .n_total;
    let n_total = config.usize_or_auto("n_total", auto)?;
    let mut cavity = CycleConfig::with_n_total(alpha, n_total)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    cavity.round_trip_phase = C64::from_polar(1.0, phase);

    let mut results = verify::run_all(!continuum, seed);
    results.push(zeno_contrast_check(&cavity));
    let mut failed = false;
    for result in &results {
        println!("[{}] {:02} {:<28} {}", result.status, result.id, result.name, result.detail);
        failed |= !result.passed();
    }
    Ok(if failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

/// Row 11: the configured cavity must empty its left side of spin-up
/// (conditional weight <= alpha) while keeping spin-down there
/// (>= 1 - 2 alpha). A corrupted round-trip phase breaks the first bound.
fn zeno_contrast_check(cavity: &CycleConfig) -> CheckResult {
    let alpha = cavity.alpha;
    let (status, detail) = match cycle::zeno_contrast(cavity) {
        Ok(contrast) => {
            let up_ok = contrast.up_left_conditional <= alpha;
            let down_ok = contrast.down_left_conditional >= 1.0 - 2.0 * alpha;
            let status = if up_ok && down_ok { Status::Pass } else { Status::Fail };
            let detail = format!(
                "up-left weight {:.3e} (bound {alpha}), down-left weight {:.5} (bound {:.3})",
                contrast.up_left_conditional,
                contrast.down_left_conditional,
                1.0 - 2.0 * alpha
            );
            (status, detail)
        }
        Err(e) => (Status::Fail, e.to_string()),
    };
    CheckResult { id: 11, name: "zeno-contrast", status, detail }
}

fn list_scenarios() {
    for scenario in registry::registry() {
        println!("{:<18} {}", scenario.name(), scenario.summary());
        for key in scenario.keys() {
            println!("    {:<22} default {:<8} {}", key.key, key.default, key.doc);
        }
    }
}
