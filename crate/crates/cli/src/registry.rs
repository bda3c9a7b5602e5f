//! Scenario registry: each named experiment is a strategy behind a common
//! trait, so the CLI dispatches by name without knowing any physics.

use cheshire_core::continuum::{
    calibrate_barrier, run_two_state, spin_x, spin_y, transmission_probability,
    weak_series_from_histories, ContinuumConfig, ContinuumError, Region,
};
use cheshire_core::cycle::{self, CycleConfig};
use cheshire_core::entangled::{self, BellReading, EntangledConfig};
use cheshire_core::hilbert::{sigma_z, Operator, PauliAxis};
use cheshire_core::pointer::{inferred_weak_value, PointerState};
use cheshire_core::tsvf::{static_mode_spin_layout, static_two_state, TwoStateVector};
use cheshire_core::C64;

use crate::config::{CliError, KeySpec, ScenarioConfig};
use crate::output::ScenarioOutput;

/// A runnable experiment with a declared configuration schema.
pub trait Scenario {
    /// Registry key used on the command line.
    fn name(&self) -> &'static str;
    /// One-line description for `list-scenarios`.
    fn summary(&self) -> &'static str;
    /// Every configuration key the scenario accepts.
    fn keys(&self) -> &'static [KeySpec];
    /// Computes the full output; runs only after the config validated.
    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput, CliError>;
}

/// All registered scenarios in display order.
pub fn registry() -> Vec<Box<dyn Scenario>> {
    vec![
        Box::new(CheshireStatic),
        Box::new(ZenoCavity),
        Box::new(EntangledCurrent),
        Box::new(ContinuumOracle),
        Box::new(PointerReadout),
    ]
}

/// Looks a scenario up by its registry key.
pub fn find(name: &str) -> Result<Box<dyn Scenario>, CliError> {
    let mut all = registry();
    match all.iter().position(|s| s.name() == name) {
        Some(index) => Ok(all.swap_remove(index)),
        None => {
            let known: Vec<&str> = all.iter().map(|s| s.name()).collect();
            Err(CliError::Validation(format!(
                "unknown scenario '{name}'; known scenarios: {}",
                known.join(", ")
            )))
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn anomaly(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

/// Continuum setup errors: calibration outcomes count as anomalies, the
/// rest as configuration problems.
fn continuum_setup(e: ContinuumError) -> CliError {
    match e {
        ContinuumError::UnreachableTransmission { .. }
        | ContinuumError::CalibrationFailed { .. } => anomaly(e),
        _ => invalid(e),
    }
}

/// Static pre/post-selection: position and spin weak values separate.
struct CheshireStatic;

impl Scenario for CheshireStatic {
    fn name(&self) -> &'static str {
        "cheshire-static"
    }

    fn summary(&self) -> &'static str {
        "weak values of the static two-state vector: the position sits right while the spin sits left"
    }

    fn keys(&self) -> &'static [KeySpec] {
        &[]
    }

    fn run(&self, _config: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
        let layout = static_mode_spin_layout();
        let tsv = static_two_state();
        let pi_l = Operator::projector(layout.clone(), "mode", &[0]).map_err(anomaly)?;
        let pi_r = Operator::projector(layout.clone(), "mode", &[1]).map_err(anomaly)?;
        let sz = Operator::from_factor(layout.clone(), "spin", &sigma_z()).map_err(anomaly)?;
        let sz_l = sz.dot(&pi_l).map_err(anomaly)?;
        let sz_r = sz.dot(&pi_r).map_err(anomaly)?;
        let cases: [(&Operator, f64, &str); 5] = [
            (&pi_l, 0.0, "pi_L"),
            (&pi_r, 1.0, "pi_R"),
            (&sz, 1.0, "sigma_z"),
            (&sz_l, 1.0, "pi_L.sigma_z"),
            (&sz_r, 0.0, "pi_R.sigma_z"),
        ];
        let mut out = ScenarioOutput::new();
        for (op, target, label) in cases {
            let w = tsv.weak_value(op).map_err(anomaly)?;
            out.series_point(0, label, w);
            out.gauge(label, w.re, target, 1.0e-12, (w - target).norm() <= 1.0e-12);
        }
        let overlap = tsv.forward.inner(&tsv.backward).map_err(anomaly)?;
        out.info("overlap-probability", overlap.norm_sqr());
        Ok(out)
    }
}

/// Single spin in the spin-dependent Zeno cavity: exact weak-value series.
struct ZenoCavity;

impl Scenario for ZenoCavity {
    fn name(&self) -> &'static str {
        "zeno-cavity"
    }

    fn summary(&self) -> &'static str {
        "exact cavity weak-value series with escape tracking and the Zeno contrast"
    }

    fn keys(&self) -> &'static [KeySpec] {
        &[
            KeySpec {
                key: "alpha",
                default: "0.01",
                doc: "spin rotation per period in radians, 0 < alpha < 0.2",
            },
            KeySpec {
                key: "n_total",
                default: "auto",
                doc: "periods to run; auto = floor(pi / (2 alpha))",
            },
            KeySpec {
                key: "round_trip_phase_rad",
                default: "0",
                doc: "extra phase picked up on the right arm each period",
            },
        ]
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
        let alpha = config.f64("alpha")?;
        let phase = config.f64("round_trip_phase_rad")?;
        let auto = CycleConfig::new(alpha).map_err(invalid)?.n_total;
        let n_total = config.usize_or_auto("n_total", auto)?;
        let mut cavity = CycleConfig::with_n_total(alpha, n_total).map_err(invalid)?;
        cavity.round_trip_phase = C64::from_polar(1.0, phase);

        let forward = cycle::forward_trajectory(&cavity).map_err(anomaly)?;
        let backward = cycle::post_select_left(&cavity).map_err(anomaly)?;
        let ops = [
            (cycle::pi_left_sigma(&cavity, PauliAxis::Z), "pi_L.sigma_z"),
            (cycle::pi_right_sigma(&cavity, PauliAxis::Z), "pi_R.sigma_z"),
            (cycle::pi_right_sigma(&cavity, PauliAxis::X), "pi_R.sigma_x"),
            (cycle::pi_right_sigma(&cavity, PauliAxis::Y), "pi_R.sigma_y"),
            (cycle::sigma_op(&cavity, PauliAxis::Z), "sigma_z"),
        ];
        let mut out = ScenarioOutput::new();
        let mut transfer = 0.0;
        for (op, label) in &ops {
            let series =
                cycle::weak_series_from(&cavity, &forward, &backward, op, label).map_err(anomaly)?;
            for &(n, w) in &series.values {
                out.series_point(n, label, w);
            }
            if *label == "pi_R.sigma_x" {
                transfer = cycle::cumulative_spin_transfer(&series);
            }
        }

        let probability = cycle::post_selection_probability(&cavity).map_err(anomaly)?;
        out.info("post-selection-probability", probability);
        let target = cycle::spin_transfer_target(alpha);
        out.gauge(
            "cumulative-spin-transfer",
            transfer,
            target,
            0.05,
            (transfer / target - 1.0).abs() <= 0.05,
        );
        let contrast = cycle::zeno_contrast(&cavity).map_err(anomaly)?;
        out.bound(
            "zeno-up-left-conditional",
            contrast.up_left_conditional,
            alpha,
            contrast.up_left_conditional <= alpha,
        );
        out.bound(
            "zeno-down-left-conditional",
            contrast.down_left_conditional,
            1.0 - 2.0 * alpha,
            contrast.down_left_conditional >= 1.0 - 2.0 * alpha,
        );
        Ok(out)
    }
}

/// Two spins in the cavity: the weak current builds Bell entanglement.
struct EntangledCurrent;

impl Scenario for EntangledCurrent {
    fn name(&self) -> &'static str {
        "entangled-current"
    }

    fn summary(&self) -> &'static str {
        "pair weak values and the entanglement built by a quarter revolution"
    }

    fn keys(&self) -> &'static [KeySpec] {
        &[
            KeySpec {
                key: "alpha",
                default: "0.01",
                doc: "per-spin rotation per period in radians, 0 < alpha < 0.2",
            },
            KeySpec {
                key: "n_total",
                default: "auto",
                doc: "periods to run; auto = floor(pi / (2 alpha))",
            },
            KeySpec {
                key: "round_trip_phase_rad",
                default: "0",
                doc: "extra phase picked up on the right arm each period",
            },
        ]
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
        let alpha = config.f64("alpha")?;
        let phase = config.f64("round_trip_phase_rad")?;
        let auto = EntangledConfig::new(alpha).map_err(invalid)?.n_total;
        let n_total = config.usize_or_auto("n_total", auto)?;
        let mut cavity = EntangledConfig::with_n_total(alpha, n_total).map_err(invalid)?;
        cavity.round_trip_phase = C64::from_polar(1.0, phase);

        let ops = [
            (entangled::pi_right(&cavity), "pi_R"),
            (
                entangled::pi_right(&cavity)
                    .dot(&entangled::sigma_pair(&cavity, PauliAxis::Z))
                    .map_err(anomaly)?,
                "pi_R.sigma_zz",
            ),
            (
                entangled::pi_right(&cavity)
                    .dot(&entangled::sigma_pair(&cavity, PauliAxis::X))
                    .map_err(anomaly)?,
                "pi_R.sigma_xx",
            ),
            (entangled::sigma_pair(&cavity, PauliAxis::Z), "sigma_zz"),
        ];
        let mut out = ScenarioOutput::new();
        for (op, label) in &ops {
            let series = entangled::entangled_weak_series(&cavity, op, label).map_err(anomaly)?;
            for &(n, w) in &series.values {
                out.series_point(n, label, w);
            }
        }

        let states = entangled::forward_trajectory(&cavity).map_err(anomaly)?;
        let initial = entangled::post_select_electron_left(&cavity, &states[0]).map_err(anomaly)?;
        let s0 = entangled::entanglement_entropy(&initial).map_err(anomaly)?;
        let last_state = &states[cavity.n_total];
        let p_left = last_state
            .state
            .marginal_probability("mode", cycle::MODE_L)
            .map_err(anomaly)?;
        let last = entangled::post_select_electron_left(&cavity, last_state).map_err(anomaly)?;
        let entropy = entangled::entanglement_entropy(&last).map_err(anomaly)?;
        let fidelity = entangled::bell_fidelity(&last, BellReading::Antiparallel).map_err(anomaly)?;
        out.info("post-selection-probability", p_left);
        out.info("entanglement-entropy-initial", s0);
        out.bound("entanglement-entropy", entropy, 0.99, entropy >= 0.99);
        out.bound("bell-fidelity", fidelity, 0.99, fidelity >= 0.99);
        Ok(out)
    }
}

/// Continuum oracle: plane-wave barrier calibration, optionally the full
/// split-step two-state run cross-validated against the discrete model.
struct ContinuumOracle;

impl Scenario for ContinuumOracle {
    fn name(&self) -> &'static str {
        "continuum-oracle"
    }

    fn summary(&self) -> &'static str {
        "barrier calibration against sin^2(alpha); full=true adds the split-step cavity run"
    }

    fn keys(&self) -> &'static [KeySpec] {
        &[
            KeySpec {
                key: "alpha",
                default: "0.1",
                doc: "target per-pass rotation in radians, 0 < alpha < 0.32",
            },
            KeySpec {
                key: "n_points",
                default: "2048",
                doc: "grid points of the split-step run",
            },
            KeySpec {
                key: "full",
                default: "false",
                doc: "true runs the full two-state propagation (minutes, not seconds)",
            },
        ]
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
        let alpha = config.f64("alpha")?;
        let n_points = config.usize("n_points")?;
        let full = config.flag("full")?;

        let barrier = calibrate_barrier(alpha, 2.0, 1.0).map_err(continuum_setup)?;
        let transmission = transmission_probability(2.0, 1.0, barrier.height, barrier.width);
        let target = alpha.sin().powi(2);
        let deviation = (transmission / target - 1.0).abs();
        let mut out = ScenarioOutput::new();
        out.info("barrier-height", barrier.height);
        out.info("barrier-width", barrier.width);
        out.gauge("transmission", transmission, target, 1.0e-3, deviation <= 1.0e-3);

        if full {
            let continuum = ContinuumConfig::with_resolution(alpha, n_points).map_err(continuum_setup)?;
            let histories = run_two_state(&continuum).map_err(anomaly)?;
            let xs = weak_series_from_histories(&histories, spin_x(), Region::Right);
            let ys = weak_series_from_histories(&histories, spin_y(), Region::Right);
            let discrete_config =
                CycleConfig::with_n_total(alpha, continuum.n_cycles).map_err(invalid)?;
            let discrete = cycle::weak_series(
                &discrete_config,
                &cycle::pi_right_sigma(&discrete_config, PauliAxis::X),
                "pi_R.sigma_x",
            )
            .map_err(anomaly)?;
            let mut difference = 0.0;
            let mut scale = 0.0;
            for &(n, w) in &xs {
                out.series_point(n, "pi_R.sigma_x", w);
                out.series_point(n, "pi_R.sigma_x.discrete", discrete.at(n));
                difference += (w - discrete.at(n)).norm_sqr();
                scale += discrete.at(n).norm_sqr();
            }
            for &(n, w) in &ys {
                out.series_point(n, "pi_R.sigma_y", w);
            }
            let rms = (difference / scale).sqrt();
            out.gauge("series-rms", rms, 0.0, 0.10, rms <= 0.10);
            out.info("alpha-effective", histories.alpha_effective);
            out.info("period", histories.period);
            out.info("post-selection-probability", histories.post_selection_probability);
            out.info("absorbed-up", histories.absorbed_up);
            out.info("absorbed-down", histories.absorbed_down);
        }
        Ok(out)
    }
}

/// Gaussian pointer readout of the right x-current on a halving g ladder.
struct PointerReadout;

impl Scenario for PointerReadout {
    fn name(&self) -> &'static str {
        "pointer-readout"
    }

    fn summary(&self) -> &'static str {
        "weak measurement pointer shifts converging quadratically to the weak value"
    }

    fn keys(&self) -> &'static [KeySpec] {
        &[
            KeySpec {
                key: "alpha",
                default: "0.1",
                doc: "spin rotation per period in radians, 0 < alpha < 0.2",
            },
            KeySpec {
                key: "n",
                default: "10",
                doc: "cycle the pointer couples at",
            },
            KeySpec {
                key: "g",
                default: "0.02",
                doc: "largest coupling of the halving ladder",
            },
            KeySpec {
                key: "levels",
                default: "4",
                doc: "ladder size (couplings g, g/2, ...), 1..=16",
            },
        ]
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
        let alpha = config.f64("alpha")?;
        let n = config.usize("n")?;
        let g0 = config.f64("g")?;
        let levels = config.usize("levels")?;
        if !g0.is_finite() || g0 <= 0.0 {
            return Err(CliError::Validation(format!(
                "key 'g': coupling must be positive and finite, got {g0}"
            )));
        }
        if levels == 0 || levels > 16 {
            return Err(CliError::Validation(format!(
                "key 'levels': expected 1..=16, got {levels}"
            )));
        }
        let cavity = CycleConfig::with_n_total(alpha, n).map_err(invalid)?;
        let forward = cycle::closed_form_forward(&cavity, n);
        let backward = cycle::closed_form_backward(&cavity);
        let op = cycle::pi_right_sigma(&cavity, PauliAxis::X);
        let target = TwoStateVector::new(forward.clone(), backward.clone(), n as i64)
            .map_err(anomaly)?
            .weak_value(&op)
            .map_err(anomaly)?;
        let pointer = PointerState::standard();

        let mut out = ScenarioOutput::new();
        let mut residuals = Vec::with_capacity(levels);
        for level in 0..levels {
            let g = g0 / f64::powi(2.0, level as i32);
            let inferred =
                inferred_weak_value(&forward, &backward, &op, g, &pointer).map_err(anomaly)?;
            let residual = (inferred - target).norm();
            out.series_point(level, "coupling", C64::new(g, 0.0));
            out.series_point(level, "inferred-weak-value", inferred);
            out.series_point(level, "residual", C64::new(residual, 0.0));
            residuals.push(residual);
        }
        out.info("target-re", target.re);
        out.info("target-im", target.im);
        for level in 1..levels {
            let ratio = residuals[level - 1] / residuals[level];
            out.gauge(
                &format!("residual-ratio-{level}"),
                ratio,
                4.0,
                0.5,
                (3.5..=4.5).contains(&ratio),
            );
        }
        Ok(out)
    }
}
