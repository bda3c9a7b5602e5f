//! Discrete per-period model of the spin-dependent Zeno cavity.
//!
//! A particle bounces in a box split by a weakly transmitting barrier
//! (mixing angle `alpha`; transmission per encounter `sin²(alpha)`). The
//! right wall reflects spin-up (adding `round_trip_phase` once per period)
//! but is transparent to spin-down, whose right-side amplitude exits the
//! cavity each period. Escaped amplitude is routed into a fresh orthogonal
//! escape mode `E_k` (`k` = the cycle at which it passed the wall), which
//! keeps the evolution exactly unitary and makes the incoherence of the
//! escaping channel structural rather than approximate.
//!
//! One period consists of the wall action (mid-period) followed by the
//! barrier scattering; states are sampled immediately after the
//! scattering. With the default phase the spin-up amplitudes accumulate
//! coherently, `cos(n·alpha)` on the left and `sin(n·alpha)` on the
//! right, while the spin-down left amplitude decays as `cosⁿ(alpha)`.
//!
//! The backward trajectory conditions on finding the particle on the left
//! with spin down after `n_total` periods. Reversal uses barrier
//! reciprocity — the transmitted amplitude is `sin(alpha)` in both time
//! directions — so a backward period applies the escape-clearing adjoint
//! of the wall action followed by the same left/right rotation. The weak
//! series at cycle `n` (the mid-period measurement window) pairs the
//! forward state after the `n`-th scattering with the backward state that
//! has not yet undone it (trajectory element `n − 1`).

use crate::hilbert::{pauli, HilbertError, Operator, PauliAxis, StateVector, SubsystemLayout};
use crate::tsvf::{TsvfError, TwoStateVector};
use crate::C64;
use ndarray::{Array1, Array2};
use thiserror::Error;

/// Upper end of the weak-barrier regime.
pub const MAX_ALPHA: f64 = 0.2;

/// Mode index of the left half of the cavity.
pub const MODE_L: usize = 0;
/// Mode index of the right half of the cavity.
pub const MODE_R: usize = 1;

/// Mode index of the escape mode filled during `cycle` (1-based).
pub fn escape_mode(cycle: usize) -> usize {
    cycle + 1
}

/// Spin index up.
pub const SPIN_UP: usize = 0;
/// Spin index down.
pub const SPIN_DOWN: usize = 1;

/// Errors from cavity-model construction and trajectories.
#[derive(Debug, Error)]
pub enum CycleError {
    #[error("alpha = {0} outside the weak-barrier range (0, 0.2)")]
    InvalidAlpha(f64),
    #[error("n_total must be >= 1")]
    InvalidNTotal,
    #[error("round_trip_phase must be unimodular (|phase| = 1 within 1e-12)")]
    NonUnimodularPhase,
    #[error("cycle {cycle} exceeds the {n_total} escape slots")]
    EscapeSlotsExhausted { cycle: usize, n_total: usize },
    #[error("escape cycle index {0} outside 1..=n_total")]
    InvalidEscapeCycle(usize),
    #[error("left amplitude is zero; cannot post-select on the left")]
    ZeroLeftAmplitude,
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Tsvf(#[from] TsvfError),
}

/// Parameters of the discrete cavity run.
#[derive(Debug, Clone)]
pub struct CycleConfig {
    /// Barrier mixing angle in radians; transmission = sin²(alpha).
    pub alpha: f64,
    /// Number of periods simulated (default ⌊π/(2·alpha)⌋).
    pub n_total: usize,
    /// Route escaping amplitude into orthogonal modes (true, unitary) or
    /// discard it (false, lossy bookkeeping).
    pub track_escapes: bool,
    /// Phase acquired by the right-side spin-up amplitude once per period.
    pub round_trip_phase: C64,
}

impl CycleConfig {
    /// Default cycle count for a mixing angle: ⌊π/(2·alpha)⌋, the point
    /// where the coherent spin-up accumulation reaches the right side.
    pub fn default_n_total(alpha: f64) -> usize {
        (std::f64::consts::PI / (2.0 * alpha)).floor() as usize
    }

    /// Config with the default cycle count, escape tracking on, and unit
    /// round-trip phase.
    pub fn new(alpha: f64) -> Result<Self, CycleError> {
        let cfg = Self {
            alpha,
            n_total: Self::default_n_total(alpha),
            track_escapes: true,
            round_trip_phase: C64::new(1.0, 0.0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Config with an explicit cycle count.
    pub fn with_n_total(alpha: f64, n_total: usize) -> Result<Self, CycleError> {
        let mut cfg = Self::new(alpha)?;
        cfg.n_total = n_total;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every invariant of the parameter set.
    pub fn validate(&self) -> Result<(), CycleError> {
        if !(self.alpha > 0.0 && self.alpha < MAX_ALPHA) {
            return Err(CycleError::InvalidAlpha(self.alpha));
        }
        if self.n_total < 1 {
            return Err(CycleError::InvalidNTotal);
        }
        if (self.round_trip_phase.norm() - 1.0).abs() > 1e-12 {
            return Err(CycleError::NonUnimodularPhase);
        }
        Ok(())
    }

    /// Cavity layout: `{L, R, E_1..E_n_total}` ⊗ spin.
    pub fn layout(&self) -> SubsystemLayout {
        SubsystemLayout::new(&[("mode", self.n_total + 2), ("spin", 2)])
            .expect("cavity layout is well-formed")
    }

    fn flat(&self, mode: usize, spin: usize) -> usize {
        mode * 2 + spin
    }
}

/// A cavity state tagged with the number of completed periods.
#[derive(Debug, Clone)]
pub struct CavityState {
    pub cycle: usize,
    pub state: StateVector,
}

impl CavityState {
    /// Amplitude on `(mode, spin)`.
    pub fn amplitude(&self, config: &CycleConfig, mode: usize, spin: usize) -> C64 {
        self.state.amplitudes[config.flat(mode, spin)]
    }

    /// Checks the state invariants: unit norm (when escapes are tracked)
    /// and exactly zero spin-up amplitude in every escape mode.
    pub fn check_invariants(&self, config: &CycleConfig) -> Result<(), CycleError> {
        if config.track_escapes && (self.state.norm() - 1.0).abs() > 1e-10 {
            return Err(CycleError::Hilbert(HilbertError::DimensionMismatch {
                expected: 1,
                actual: 0,
            }));
        }
        for k in 1..=config.n_total {
            let amp = self.amplitude(config, escape_mode(k), SPIN_UP);
            if amp.norm() != 0.0 {
                return Err(CycleError::InvalidEscapeCycle(k));
            }
        }
        Ok(())
    }
}

/// 2×2 barrier rotation on `(L, R)`:
/// `|L> -> cos(alpha)|L> + sin(alpha)|R>`, `|R> -> -sin(alpha)|L> + cos(alpha)|R>`.
pub fn barrier_matrix(alpha: f64) -> Array2<C64> {
    let (s, c) = alpha.sin_cos();
    let mut m = Array2::zeros((2, 2));
    m[(0, 0)] = C64::new(c, 0.0);
    m[(0, 1)] = C64::new(-s, 0.0);
    m[(1, 0)] = C64::new(s, 0.0);
    m[(1, 1)] = C64::new(c, 0.0);
    m
}

/// Barrier scattering on the full cavity layout: the `(L, R)` rotation for
/// both spins, identity on all escape modes.
pub fn barrier_scatter(config: &CycleConfig) -> Operator {
    let layout = config.layout();
    let dim = layout.dim();
    let mut m: Array2<C64> = Array2::eye(dim);
    let b = barrier_matrix(config.alpha);
    for spin in [SPIN_UP, SPIN_DOWN] {
        let l = config.flat(MODE_L, spin);
        let r = config.flat(MODE_R, spin);
        m[(l, l)] = b[(0, 0)];
        m[(l, r)] = b[(0, 1)];
        m[(r, l)] = b[(1, 0)];
        m[(r, r)] = b[(1, 1)];
    }
    Operator { layout, matrix: m }
}

/// Mid-period right-wall action during `cycle`: spin-up on the right picks
/// up the round-trip phase; spin-down on the right exits into `E_cycle`
/// (swap when escapes are tracked, deletion otherwise).
pub fn wall_action(config: &CycleConfig, cycle: usize) -> Result<Operator, CycleError> {
    if cycle < 1 || cycle > config.n_total {
        return Err(CycleError::EscapeSlotsExhausted {
            cycle,
            n_total: config.n_total,
        });
    }
    let layout = config.layout();
    let dim = layout.dim();
    let mut m: Array2<C64> = Array2::eye(dim);
    let r_up = config.flat(MODE_R, SPIN_UP);
    m[(r_up, r_up)] = config.round_trip_phase;
    let r_dn = config.flat(MODE_R, SPIN_DOWN);
    m[(r_dn, r_dn)] = C64::new(0.0, 0.0);
    if config.track_escapes {
        let e_dn = config.flat(escape_mode(cycle), SPIN_DOWN);
        m[(e_dn, e_dn)] = C64::new(0.0, 0.0);
        m[(e_dn, r_dn)] = C64::new(1.0, 0.0);
        m[(r_dn, e_dn)] = C64::new(1.0, 0.0);
    }
    Ok(Operator { layout, matrix: m })
}

/// In-place wall action on raw amplitudes (adjoint conjugates the phase;
/// the tracked swap is its own inverse, the lossy deletion its own
/// adjoint).
fn wall_in_place(config: &CycleConfig, amps: &mut Array1<C64>, cycle: usize, adjoint: bool) {
    let phase = if adjoint {
        config.round_trip_phase.conj()
    } else {
        config.round_trip_phase
    };
    let r_up = config.flat(MODE_R, SPIN_UP);
    amps[r_up] *= phase;
    let r_dn = config.flat(MODE_R, SPIN_DOWN);
    if config.track_escapes {
        let e_dn = config.flat(escape_mode(cycle), SPIN_DOWN);
        amps.swap(r_dn, e_dn);
    } else {
        amps[r_dn] = C64::new(0.0, 0.0);
    }
}

/// In-place barrier rotation on raw amplitudes, both spins.
fn barrier_in_place(config: &CycleConfig, amps: &mut Array1<C64>) {
    let (s, c) = config.alpha.sin_cos();
    for spin in [SPIN_UP, SPIN_DOWN] {
        let l = config.flat(MODE_L, spin);
        let r = config.flat(MODE_R, spin);
        let (al, ar) = (amps[l], amps[r]);
        amps[l] = al * c - ar * s;
        amps[r] = al * s + ar * c;
    }
}

/// One full period sampled after the scattering: wall action, then barrier.
/// Built column-by-column from the same in-place maps `step` uses.
pub fn one_period_map(config: &CycleConfig, cycle: usize) -> Result<Operator, CycleError> {
    if cycle < 1 || cycle > config.n_total {
        return Err(CycleError::EscapeSlotsExhausted {
            cycle,
            n_total: config.n_total,
        });
    }
    let layout = config.layout();
    let dim = layout.dim();
    let mut m: Array2<C64> = Array2::zeros((dim, dim));
    for j in 0..dim {
        let mut col: Array1<C64> = Array1::zeros(dim);
        col[j] = C64::new(1.0, 0.0);
        wall_in_place(config, &mut col, cycle, false);
        barrier_in_place(config, &mut col);
        for i in 0..dim {
            m[(i, j)] = col[i];
        }
    }
    Ok(Operator { layout, matrix: m })
}

/// Initial state: localized on the left with spin along +x,
/// `(|L,up> + |L,down>)/√2`.
pub fn initial_state(config: &CycleConfig) -> CavityState {
    let layout = config.layout();
    let mut amplitudes: Array1<C64> = Array1::zeros(layout.dim());
    let h = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    amplitudes[config.flat(MODE_L, SPIN_UP)] = h;
    amplitudes[config.flat(MODE_L, SPIN_DOWN)] = h;
    CavityState {
        cycle: 0,
        state: StateVector { layout, amplitudes },
    }
}

/// Advances a cavity state by one period.
pub fn step(config: &CycleConfig, state: &CavityState) -> Result<CavityState, CycleError> {
    let cycle = state.cycle + 1;
    if cycle > config.n_total {
        return Err(CycleError::EscapeSlotsExhausted {
            cycle,
            n_total: config.n_total,
        });
    }
    let mut amps = state.state.amplitudes.clone();
    wall_in_place(config, &mut amps, cycle, false);
    barrier_in_place(config, &mut amps);
    Ok(CavityState {
        cycle,
        state: StateVector {
            layout: state.state.layout.clone(),
            amplitudes: amps,
        },
    })
}

/// The exact forward trajectory: element `n` is the state after `n`
/// periods, for `n = 0..=n_total`.
pub fn forward_trajectory(config: &CycleConfig) -> Result<Vec<CavityState>, CycleError> {
    config.validate()?;
    let mut states = Vec::with_capacity(config.n_total + 1);
    states.push(initial_state(config));
    for _ in 0..config.n_total {
        let next = step(config, states.last().expect("nonempty"))?;
        states.push(next);
    }
    Ok(states)
}

/// The closed-form approximate forward state after `n` periods: coherent
/// spin-up accumulation `(cos(n·alpha), sin(n·alpha))` and an
/// `n`-independent spin-down part `(cos(alpha), sin(alpha))`, all over √2.
/// Cumulative spin-down leakage factors are deliberately dropped.
pub fn closed_form_forward(config: &CycleConfig, n: usize) -> StateVector {
    let layout = config.layout();
    let mut amplitudes: Array1<C64> = Array1::zeros(layout.dim());
    let h = 1.0 / 2.0_f64.sqrt();
    let (sn, cn) = (n as f64 * config.alpha).sin_cos();
    let (s, c) = config.alpha.sin_cos();
    amplitudes[config.flat(MODE_L, SPIN_UP)] = C64::new(h * cn, 0.0);
    amplitudes[config.flat(MODE_R, SPIN_UP)] = C64::new(h * sn, 0.0);
    amplitudes[config.flat(MODE_L, SPIN_DOWN)] = C64::new(h * c, 0.0);
    amplitudes[config.flat(MODE_R, SPIN_DOWN)] = C64::new(h * s, 0.0);
    StateVector { layout, amplitudes }
}

/// The closed-form backward state, independent of the cycle index:
/// `cos(alpha)|L,down> + sin(alpha)|R,down>`.
pub fn closed_form_backward(config: &CycleConfig) -> StateVector {
    let layout = config.layout();
    let mut amplitudes: Array1<C64> = Array1::zeros(layout.dim());
    let (s, c) = config.alpha.sin_cos();
    amplitudes[config.flat(MODE_L, SPIN_DOWN)] = C64::new(c, 0.0);
    amplitudes[config.flat(MODE_R, SPIN_DOWN)] = C64::new(s, 0.0);
    StateVector { layout, amplitudes }
}

/// Backward state at cycle `n` given the state one period later, using the
/// reciprocity gauge: clear the period-`n + 1` escape slot back into the
/// right side, then rotate with the forward barrier matrix.
fn backward_step(
    config: &CycleConfig,
    later: &StateVector,
    cycle_from: usize,
) -> Result<StateVector, CycleError> {
    let mut amps = later.amplitudes.clone();
    wall_in_place(config, &mut amps, cycle_from, true);
    barrier_in_place(config, &mut amps);
    Ok(StateVector {
        layout: later.layout.clone(),
        amplitudes: amps,
    })
}

/// Backward trajectory from post-selecting `|L,down>` after `n_total`
/// periods: element `n` is the backward state at cycle `n`, ending with
/// exactly `|L,down>` at `n_total`. The element at cycle `n − 1` is the
/// state the mid-period weak measurement at cycle `n` pairs with.
pub fn post_select_left(config: &CycleConfig) -> Result<Vec<StateVector>, CycleError> {
    config.validate()?;
    let layout = config.layout();
    let seed = StateVector::basis_state(layout, &[MODE_L, SPIN_DOWN])?;
    backward_trajectory_from(config, seed)
}

/// Backward trajectory for the position-only post-selection variant: the
/// seed is the forward state at `n_total` projected onto the left mode and
/// renormalized (spin left unmeasured).
pub fn post_select_position_only(config: &CycleConfig) -> Result<Vec<StateVector>, CycleError> {
    let forward = forward_trajectory(config)?;
    let last = &forward[config.n_total].state;
    let mut amplitudes: Array1<C64> = Array1::zeros(last.amplitudes.len());
    for spin in [SPIN_UP, SPIN_DOWN] {
        let idx = config.flat(MODE_L, spin);
        amplitudes[idx] = last.amplitudes[idx];
    }
    let seed = StateVector {
        layout: last.layout.clone(),
        amplitudes,
    };
    if seed.norm() == 0.0 {
        return Err(CycleError::ZeroLeftAmplitude);
    }
    backward_trajectory_from(config, seed.normalized()?)
}

fn backward_trajectory_from(
    config: &CycleConfig,
    seed: StateVector,
) -> Result<Vec<StateVector>, CycleError> {
    let n = config.n_total;
    let mut states = vec![seed; n + 1];
    for cycle in (0..n).rev() {
        states[cycle] = backward_step(config, &states[cycle + 1], cycle + 1)?;
    }
    Ok(states)
}

/// Probability of the `|L,down>` post-selection on the exact trajectory.
pub fn post_selection_probability(config: &CycleConfig) -> Result<f64, CycleError> {
    let forward = forward_trajectory(config)?;
    let amp = forward[config.n_total].amplitude(config, MODE_L, SPIN_DOWN);
    Ok(amp.norm_sqr())
}

/// Pairs the forward state after the `n`-th scattering with the backward
/// state that has not yet undone it (`n >= 1`).
pub fn two_state_at(
    forward: &[CavityState],
    backward: &[StateVector],
    n: usize,
) -> Result<TwoStateVector, CycleError> {
    Ok(TwoStateVector::new(
        forward[n].state.clone(),
        backward[n - 1].clone(),
        n as i64,
    )?)
}

/// A time-indexed complex weak-value series, one entry per cycle.
#[derive(Debug, Clone)]
pub struct WeakValueSeries {
    pub operator_label: String,
    /// `(cycle index n, weak value)` for `n = 1..=n_total`.
    pub values: Vec<(usize, C64)>,
}

impl WeakValueSeries {
    /// The weak value at cycle `n`.
    pub fn at(&self, n: usize) -> C64 {
        self.values[n - 1].1
    }
}

/// Weak-value series of `op` from the exact forward and backward
/// trajectories.
pub fn weak_series(
    config: &CycleConfig,
    op: &Operator,
    label: &str,
) -> Result<WeakValueSeries, CycleError> {
    let forward = forward_trajectory(config)?;
    let backward = post_select_left(config)?;
    weak_series_from(config, &forward, &backward, op, label)
}

/// Weak-value series of `op` from precomputed trajectories.
pub fn weak_series_from(
    config: &CycleConfig,
    forward: &[CavityState],
    backward: &[StateVector],
    op: &Operator,
    label: &str,
) -> Result<WeakValueSeries, CycleError> {
    let mut values = Vec::with_capacity(config.n_total);
    for n in 1..=config.n_total {
        let tsv = two_state_at(forward, backward, n)?;
        values.push((n, tsv.weak_value(op)?));
    }
    Ok(WeakValueSeries {
        operator_label: label.to_string(),
        values,
    })
}

/// Weak-value series of `op` under the closed-form states.
pub fn closed_form_weak_series(
    config: &CycleConfig,
    op: &Operator,
    label: &str,
) -> Result<WeakValueSeries, CycleError> {
    config.validate()?;
    let backward = closed_form_backward(config);
    let mut values = Vec::with_capacity(config.n_total);
    for n in 1..=config.n_total {
        let tsv = TwoStateVector::new(closed_form_forward(config, n), backward.clone(), n as i64)?;
        values.push((n, tsv.weak_value(op)?));
    }
    Ok(WeakValueSeries {
        operator_label: label.to_string(),
        values,
    })
}

/// Projector onto the left mode.
pub fn pi_left(config: &CycleConfig) -> Operator {
    Operator::projector(config.layout(), "mode", &[MODE_L]).expect("left projector")
}

/// Projector onto the right mode.
pub fn pi_right(config: &CycleConfig) -> Operator {
    Operator::projector(config.layout(), "mode", &[MODE_R]).expect("right projector")
}

/// Projector onto escape mode `E_k`.
pub fn pi_escape(config: &CycleConfig, k: usize) -> Result<Operator, CycleError> {
    if k < 1 || k > config.n_total {
        return Err(CycleError::InvalidEscapeCycle(k));
    }
    Ok(Operator::projector(
        config.layout(),
        "mode",
        &[escape_mode(k)],
    )?)
}

/// Spin operator on the cavity layout.
pub fn sigma_op(config: &CycleConfig, axis: PauliAxis) -> Operator {
    Operator::from_factor(config.layout(), "spin", &pauli(axis)).expect("spin operator")
}

/// Product `pi_L · sigma_axis`.
pub fn pi_left_sigma(config: &CycleConfig, axis: PauliAxis) -> Operator {
    pi_left(config)
        .dot(&sigma_op(config, axis))
        .expect("same layout")
}

/// Product `pi_R · sigma_axis`.
pub fn pi_right_sigma(config: &CycleConfig, axis: PauliAxis) -> Operator {
    pi_right(config)
        .dot(&sigma_op(config, axis))
        .expect("same layout")
}

/// Sum of the real parts of a series — the cumulative transfer carried by
/// the operator across the run.
pub fn cumulative_spin_transfer(series: &WeakValueSeries) -> f64 {
    series.values.iter().map(|(_, w)| w.re).sum()
}

/// Target value of the cumulative right-side x-spin transfer over the
/// default run length: sin(alpha)/alpha.
pub fn spin_transfer_target(alpha: f64) -> f64 {
    alpha.sin() / alpha
}

/// Consistency report between the x and y right-side spin currents.
#[derive(Debug, Clone)]
pub struct HeisenbergReport {
    /// max over n of `|W_y(n) + i·W_x(n)|` with closed-form states.
    pub identity_deviation_closed: f64,
    /// max over n of `|W_y(n) + i·W_x(n)|` with exact trajectories.
    pub identity_deviation_exact: f64,
    /// max over n of `|W_exact(n) - W_closed(n)| / (|W_closed(n)|·n·alpha²)`
    /// for the y series (the exact model tracks the closed form to
    /// O(n·alpha²) relative error).
    pub max_relative_gap_scaled: f64,
    pub series_x_exact: WeakValueSeries,
    pub series_y_exact: WeakValueSeries,
    pub series_x_closed: WeakValueSeries,
    pub series_y_closed: WeakValueSeries,
}

/// Computes both right-side spin-current series and checks the quadrature
/// identity `W(pi_R sigma_y) = -i · W(pi_R sigma_x)` cycle by cycle.
pub fn heisenberg_consistency(config: &CycleConfig) -> Result<HeisenbergReport, CycleError> {
    let forward = forward_trajectory(config)?;
    let backward = post_select_left(config)?;
    let op_x = pi_right_sigma(config, PauliAxis::X);
    let op_y = pi_right_sigma(config, PauliAxis::Y);
    let series_x_exact = weak_series_from(config, &forward, &backward, &op_x, "pi_R sigma_x")?;
    let series_y_exact = weak_series_from(config, &forward, &backward, &op_y, "pi_R sigma_y")?;
    let series_x_closed = closed_form_weak_series(config, &op_x, "pi_R sigma_x")?;
    let series_y_closed = closed_form_weak_series(config, &op_y, "pi_R sigma_y")?;

    let i = C64::new(0.0, 1.0);
    let mut dev_closed: f64 = 0.0;
    let mut dev_exact: f64 = 0.0;
    let mut gap_scaled: f64 = 0.0;
    for n in 1..=config.n_total {
        dev_closed = dev_closed.max((series_y_closed.at(n) + i * series_x_closed.at(n)).norm());
        dev_exact = dev_exact.max((series_y_exact.at(n) + i * series_x_exact.at(n)).norm());
        let closed = series_y_closed.at(n);
        if closed.norm() > 0.0 {
            let rel = (series_y_exact.at(n) - closed).norm() / closed.norm();
            gap_scaled = gap_scaled.max(rel / (n as f64 * config.alpha * config.alpha));
        }
    }
    Ok(HeisenbergReport {
        identity_deviation_closed: dev_closed,
        identity_deviation_exact: dev_exact,
        max_relative_gap_scaled: gap_scaled,
        series_x_exact,
        series_y_exact,
        series_x_closed,
        series_y_closed,
    })
}

/// Sector-conditional left-side survival after the full run.
#[derive(Debug, Clone, Copy)]
pub struct ZenoContrast {
    /// P(left | spin-up sector) after n_total periods.
    pub up_left_conditional: f64,
    /// P(left | spin-down sector) after n_total periods.
    pub down_left_conditional: f64,
}

/// Left-side survival per spin sector: with the default phase the spin-up
/// sector vacates the left side (≤ alpha) while spin-down survives there
/// (≥ 1 − 2·alpha) — the Zeno contrast between the two wall behaviours.
pub fn zeno_contrast(config: &CycleConfig) -> Result<ZenoContrast, CycleError> {
    let forward = forward_trajectory(config)?;
    let last = &forward[config.n_total];
    let up = last.amplitude(config, MODE_L, SPIN_UP).norm_sqr();
    let down = last.amplitude(config, MODE_L, SPIN_DOWN).norm_sqr();
    // Each spin sector starts with probability 1/2.
    Ok(ZenoContrast {
        up_left_conditional: up / 0.5,
        down_left_conditional: down / 0.5,
    })
}
