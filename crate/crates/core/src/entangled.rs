//! Two-spin variant of the Zeno cavity: electron mode ⊗ electron spin ⊗
//! wall spin.
//!
//! The right wall couples to the product of the two z-spins: parallel
//! sectors (up-up, down-down) are reflected and accumulate coherently,
//! exactly like spin-up in the single-spin cavity; antiparallel sectors
//! escape through the wall into fresh orthogonal modes, like spin-down.
//! Post-selecting the electron on the left after the full run therefore
//! suppresses the parallel sectors (they have rotated away from the left
//! side) and leaves the two spins close to the antiparallel Bell state
//! `(|up,down> + |down,up>)/√2`.
//!
//! Period structure, escape bookkeeping, backward (reciprocity-gauge)
//! evolution and the weak-series pairing are identical to [`crate::cycle`];
//! the post-selection here is on the electron position alone.

use crate::cycle::{CycleError, WeakValueSeries, MODE_L, MODE_R};
use crate::hilbert::{pauli, Operator, PauliAxis, StateVector, SubsystemLayout};
use crate::tsvf::TwoStateVector;
use crate::C64;
use ndarray::{Array1, Array2};

/// Mode index of the escape mode filled during `cycle` (1-based).
pub fn escape_mode(cycle: usize) -> usize {
    cycle + 1
}

/// Parameters of the entangled cavity run; same conventions as
/// [`crate::cycle::CycleConfig`].
#[derive(Debug, Clone)]
pub struct EntangledConfig {
    pub alpha: f64,
    pub n_total: usize,
    pub track_escapes: bool,
    pub round_trip_phase: C64,
}

impl EntangledConfig {
    /// Config with the default cycle count ⌊π/(2·alpha)⌋.
    pub fn new(alpha: f64) -> Result<Self, CycleError> {
        let cfg = Self {
            alpha,
            n_total: crate::cycle::CycleConfig::default_n_total(alpha),
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
        crate::cycle::CycleConfig {
            alpha: self.alpha,
            n_total: self.n_total,
            track_escapes: self.track_escapes,
            round_trip_phase: self.round_trip_phase,
        }
        .validate()
    }

    /// Layout `{L, R, E_1..E_n_total}` ⊗ spin1 ⊗ spin2.
    pub fn layout(&self) -> SubsystemLayout {
        SubsystemLayout::new(&[("mode", self.n_total + 2), ("spin1", 2), ("spin2", 2)])
            .expect("entangled layout is well-formed")
    }

    fn flat(&self, mode: usize, s1: usize, s2: usize) -> usize {
        (mode * 2 + s1) * 2 + s2
    }
}

/// Cavity ⊗ two-spin state tagged with the completed period count.
#[derive(Debug, Clone)]
pub struct EntangledState {
    pub cycle: usize,
    pub state: StateVector,
}

impl EntangledState {
    /// Amplitude on `(mode, s1, s2)`.
    pub fn amplitude(&self, config: &EntangledConfig, mode: usize, s1: usize, s2: usize) -> C64 {
        self.state.amplitudes[config.flat(mode, s1, s2)]
    }
}

/// Initial state: electron on the left, both spins along +x.
pub fn initial_state(config: &EntangledConfig) -> EntangledState {
    let layout = config.layout();
    let mut amplitudes: Array1<C64> = Array1::zeros(layout.dim());
    let q = C64::new(0.5, 0.0);
    for s1 in 0..2 {
        for s2 in 0..2 {
            amplitudes[config.flat(MODE_L, s1, s2)] = q;
        }
    }
    EntangledState {
        cycle: 0,
        state: StateVector { layout, amplitudes },
    }
}

/// Mid-period wall action: parallel z-sectors on the right pick up the
/// round-trip phase; antiparallel sectors on the right exit into `E_cycle`.
fn wall_in_place(config: &EntangledConfig, amps: &mut Array1<C64>, cycle: usize, adjoint: bool) {
    let phase = if adjoint {
        config.round_trip_phase.conj()
    } else {
        config.round_trip_phase
    };
    for s1 in 0..2 {
        for s2 in 0..2 {
            let r = config.flat(MODE_R, s1, s2);
            if s1 == s2 {
                amps[r] *= phase;
            } else if config.track_escapes {
                let e = config.flat(escape_mode(cycle), s1, s2);
                amps.swap(r, e);
            } else {
                amps[r] = C64::new(0.0, 0.0);
            }
        }
    }
}

/// Barrier rotation on `(L, R)` for every spin sector.
fn barrier_in_place(config: &EntangledConfig, amps: &mut Array1<C64>) {
    let (s, c) = config.alpha.sin_cos();
    for s1 in 0..2 {
        for s2 in 0..2 {
            let l = config.flat(MODE_L, s1, s2);
            let r = config.flat(MODE_R, s1, s2);
            let (al, ar) = (amps[l], amps[r]);
            amps[l] = al * c - ar * s;
            amps[r] = al * s + ar * c;
        }
    }
}

/// One full period: wall action, then barrier scattering.
pub fn step2(config: &EntangledConfig, state: &EntangledState) -> Result<EntangledState, CycleError> {
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
    Ok(EntangledState {
        cycle,
        state: StateVector {
            layout: state.state.layout.clone(),
            amplitudes: amps,
        },
    })
}

/// One-period map as a dense operator, built from the in-place maps.
pub fn one_period_map(config: &EntangledConfig, cycle: usize) -> Result<Operator, CycleError> {
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

/// Exact forward trajectory, elements at cycles `0..=n_total`.
pub fn forward_trajectory(config: &EntangledConfig) -> Result<Vec<EntangledState>, CycleError> {
    config.validate()?;
    let mut states = Vec::with_capacity(config.n_total + 1);
    states.push(initial_state(config));
    for _ in 0..config.n_total {
        let next = step2(config, states.last().expect("nonempty"))?;
        states.push(next);
    }
    Ok(states)
}

/// Projects the electron onto the left mode and returns the renormalized
/// residual two-spin state (layout `spin1 ⊗ spin2`).
pub fn post_select_electron_left(
    config: &EntangledConfig,
    state: &EntangledState,
) -> Result<StateVector, CycleError> {
    let layout = SubsystemLayout::new(&[("spin1", 2), ("spin2", 2)])?;
    let mut amplitudes: Array1<C64> = Array1::zeros(4);
    for s1 in 0..2 {
        for s2 in 0..2 {
            amplitudes[s1 * 2 + s2] = state.amplitude(config, MODE_L, s1, s2);
        }
    }
    let projected = StateVector { layout, amplitudes };
    if projected.norm() == 0.0 {
        return Err(CycleError::ZeroLeftAmplitude);
    }
    Ok(projected.normalized()?)
}

/// Von Neumann entropy (base 2) of either reduced spin of a two-qubit
/// state; input is normalized internally.
pub fn entanglement_entropy(two_spin: &StateVector) -> Result<f64, CycleError> {
    let psi = two_spin.normalized()?;
    // Reduced density matrix of the first spin.
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, row) in rho.iter_mut().enumerate() {
        for (j, element) in row.iter_mut().enumerate() {
            for k in 0..2 {
                *element += psi.amplitudes[i * 2 + k] * psi.amplitudes[j * 2 + k].conj();
            }
        }
    }
    let trace = rho[0][0].re + rho[1][1].re;
    let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let lambdas = [(trace + disc) / 2.0, (trace - disc) / 2.0];
    let mut entropy = 0.0;
    for l in lambdas {
        let p = l.clamp(0.0, 1.0);
        if p > 0.0 {
            entropy -= p * p.log2();
        }
    }
    Ok(entropy)
}

/// Which Bell state a fidelity is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellReading {
    /// `(|up,down> + |down,up>)/√2` — the state the dynamics produce.
    Antiparallel,
    /// `(|up,up> + |down,down>)/√2` — the competing reading, reported for
    /// comparison.
    Parallel,
}

/// Squared overlap of a two-qubit state with the chosen Bell state.
pub fn bell_fidelity(two_spin: &StateVector, reading: BellReading) -> Result<f64, CycleError> {
    let psi = two_spin.normalized()?;
    let h = 1.0 / 2.0_f64.sqrt();
    let bell = match reading {
        BellReading::Antiparallel => [0.0, h, h, 0.0],
        BellReading::Parallel => [h, 0.0, 0.0, h],
    };
    let overlap: C64 = psi
        .amplitudes
        .iter()
        .zip(bell)
        .map(|(a, b)| a * b)
        .sum();
    Ok(overlap.norm_sqr())
}

/// Backward trajectory for the position-only post-selection: seed = final
/// forward state projected on the left mode (spins untouched),
/// renormalized; reversal in the reciprocity gauge as in [`crate::cycle`].
pub fn backward_trajectory(config: &EntangledConfig) -> Result<Vec<StateVector>, CycleError> {
    let forward = forward_trajectory(config)?;
    let last = &forward[config.n_total].state;
    let mut amplitudes: Array1<C64> = Array1::zeros(last.amplitudes.len());
    for s1 in 0..2 {
        for s2 in 0..2 {
            let idx = config.flat(MODE_L, s1, s2);
            amplitudes[idx] = last.amplitudes[idx];
        }
    }
    let seed = StateVector {
        layout: last.layout.clone(),
        amplitudes,
    };
    if seed.norm() == 0.0 {
        return Err(CycleError::ZeroLeftAmplitude);
    }
    let seed = seed.normalized()?;
    let n = config.n_total;
    let mut states = vec![seed; n + 1];
    for cycle in (0..n).rev() {
        let mut amps = states[cycle + 1].amplitudes.clone();
        wall_in_place(config, &mut amps, cycle + 1, true);
        barrier_in_place(config, &mut amps);
        states[cycle] = StateVector {
            layout: states[cycle + 1].layout.clone(),
            amplitudes: amps,
        };
    }
    Ok(states)
}

/// Weak-value series of `op` over the entangled run (pairing as in the
/// single-spin cavity: cycle `n` uses backward element `n − 1`).
pub fn entangled_weak_series(
    config: &EntangledConfig,
    op: &Operator,
    label: &str,
) -> Result<WeakValueSeries, CycleError> {
    let forward = forward_trajectory(config)?;
    let backward = backward_trajectory(config)?;
    let mut values = Vec::with_capacity(config.n_total);
    for n in 1..=config.n_total {
        let tsv = TwoStateVector::new(forward[n].state.clone(), backward[n - 1].clone(), n as i64)?;
        values.push((n, tsv.weak_value(op)?));
    }
    Ok(WeakValueSeries {
        operator_label: label.to_string(),
        values,
    })
}

/// Projector onto the left mode.
pub fn pi_left(config: &EntangledConfig) -> Operator {
    Operator::projector(config.layout(), "mode", &[MODE_L]).expect("left projector")
}

/// Projector onto the right mode.
pub fn pi_right(config: &EntangledConfig) -> Operator {
    Operator::projector(config.layout(), "mode", &[MODE_R]).expect("right projector")
}

/// Projector onto escape mode `E_k`.
pub fn pi_escape(config: &EntangledConfig, k: usize) -> Result<Operator, CycleError> {
    if k < 1 || k > config.n_total {
        return Err(CycleError::InvalidEscapeCycle(k));
    }
    Ok(Operator::projector(
        config.layout(),
        "mode",
        &[escape_mode(k)],
    )?)
}

/// Pauli operator on the first spin.
pub fn sigma_first(config: &EntangledConfig, axis: PauliAxis) -> Operator {
    Operator::from_factor(config.layout(), "spin1", &pauli(axis)).expect("spin1 operator")
}

/// Pauli operator on the second spin.
pub fn sigma_second(config: &EntangledConfig, axis: PauliAxis) -> Operator {
    Operator::from_factor(config.layout(), "spin2", &pauli(axis)).expect("spin2 operator")
}

/// Joint correlator `sigma_axis^(1) · sigma_axis^(2)`.
pub fn sigma_pair(config: &EntangledConfig, axis: PauliAxis) -> Operator {
    sigma_first(config, axis)
        .dot(&sigma_second(config, axis))
        .expect("same layout")
}
