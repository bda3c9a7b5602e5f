//! Strang-split spectral propagator on a hard-walled grid.
//!
//! The kinetic factor is applied in a sine basis realized by odd extension and
//! a length-`2N` FFT: the basis functions vanish on the half-offset Dirichlet
//! planes just outside the first and last grid points, and the kinetic phase
//! `exp(-i dt k^2 / 2m)` is exact per mode. Potential phases are applied
//! pointwise; values are clamped so the per-step phase stays below
//! [`WALL_PHASE_CAP`], because a phase `v dt` past `pi` aliases mod `2 pi` and
//! a nominal hard wall can silently turn into a well or a transparent dip.
//! The clamped height is still far above any packet energy the stability
//! limit admits, so wall blocks stay fully reflective. Complex absorption
//! enters as a real damping factor per step.

use super::{ContinuumConfig, ContinuumError, SpinorField};
use crate::tsvf::Direction;
use crate::C64;
use ndarray::Array1;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Permitted norm drift per step with the absorber off (rounding noise only;
/// a violation signals a defective multiplier, not accumulation error).
const NORM_DRIFT_PER_STEP: f64 = 1.0e-9;

/// Largest per-step potential phase `v dt` (radians). Values above it are
/// clamped to `WALL_PHASE_CAP / dt` before the phase factor is built.
pub const WALL_PHASE_CAP: f64 = 2.5;

pub struct Propagator {
    n: usize,
    dt: f64,
    direction: Direction,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    buf: Vec<C64>,
    scratch: Vec<C64>,
    kin_full: Vec<C64>,
    kin_half: Vec<C64>,
    pot_up: Vec<C64>,
    pot_down: Vec<C64>,
    /// `1 - exp(-2 eta dt)` per point, for exact absorbed-probability tallies.
    loss_up: Vec<f64>,
    loss_down: Vec<f64>,
    absorbing: bool,
    steps_taken: usize,
    /// Probability removed from each component by the absorber so far.
    pub absorbed_up: f64,
    pub absorbed_down: f64,
}

impl Propagator {
    /// Build a propagator from explicit potentials and absorber profiles.
    ///
    /// `direction` selects the sign of every unitary phase; absorption damps
    /// in either direction (rewinding an absorbing channel is not unitary).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dx: f64,
        mass: f64,
        dt: f64,
        direction: Direction,
        potential_up: &Array1<f64>,
        potential_down: &Array1<f64>,
        absorber_up: &Array1<f64>,
        absorber_down: &Array1<f64>,
    ) -> Self {
        let n = potential_up.len();
        assert_eq!(n, potential_down.len());
        assert_eq!(n, absorber_up.len());
        assert_eq!(n, absorber_down.len());
        let sign = match direction {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        };
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(2 * n);
        let ifft = planner.plan_fft_inverse(2 * n);
        let scratch_len = fft.get_inplace_scratch_len().max(ifft.get_inplace_scratch_len());
        let kinetic = |fraction: f64| -> Vec<C64> {
            (0..2 * n)
                .map(|m| {
                    let mode = m.min(2 * n - m) as f64;
                    let k = std::f64::consts::PI * mode / (n as f64 * dx);
                    C64::from_polar(1.0, -sign * fraction * dt * k * k / (2.0 * mass))
                })
                .collect()
        };
        let phase = |v: &Array1<f64>, eta: &Array1<f64>| -> Vec<C64> {
            v.iter()
                .zip(eta.iter())
                .map(|(&v, &e)| {
                    let v = v.min(WALL_PHASE_CAP / dt);
                    C64::from_polar((-e * dt).exp(), -sign * v * dt)
                })
                .collect()
        };
        let loss = |eta: &Array1<f64>| -> Vec<f64> {
            eta.iter().map(|&e| 1.0 - (-2.0 * e * dt).exp()).collect()
        };
        let absorbing = absorber_up.iter().chain(absorber_down.iter()).any(|&e| e > 0.0);
        Self {
            n,
            dt,
            direction,
            fft,
            ifft,
            buf: vec![C64::new(0.0, 0.0); 2 * n],
            scratch: vec![C64::new(0.0, 0.0); scratch_len],
            kin_full: kinetic(1.0),
            kin_half: kinetic(0.5),
            pot_up: phase(potential_up, absorber_up),
            pot_down: phase(potential_down, absorber_down),
            loss_up: loss(absorber_up),
            loss_down: loss(absorber_down),
            absorbing,
            steps_taken: 0,
            absorbed_up: 0.0,
            absorbed_down: 0.0,
        }
    }

    /// Assemble the cavity propagator of a config (absorber on the down
    /// component only) with the supplied snapped time step.
    pub fn for_config(config: &ContinuumConfig, dt: f64, direction: Direction) -> Self {
        let zero = Array1::zeros(config.n_points);
        Self::new(
            config.dx,
            config.mass,
            dt,
            direction,
            &config.potential_up(),
            &config.potential_down(),
            &zero,
            &config.absorber(),
        )
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn apply_kinetic(&mut self, psi: &mut Array1<C64>, half: bool) {
        let n = self.n;
        let psi = psi.as_slice_mut().expect("contiguous field");
        for (j, &p) in psi.iter().enumerate() {
            self.buf[j] = p;
            self.buf[2 * n - 1 - j] = -p;
        }
        self.fft.process_with_scratch(&mut self.buf, &mut self.scratch);
        let mult = if half { &self.kin_half } else { &self.kin_full };
        for (b, m) in self.buf.iter_mut().zip(mult.iter()) {
            *b *= *m;
        }
        self.ifft.process_with_scratch(&mut self.buf, &mut self.scratch);
        let scale = 1.0 / (2 * n) as f64;
        for (p, b) in psi.iter_mut().zip(self.buf.iter()) {
            *p = b * scale;
        }
    }

    fn apply_potential(&mut self, field: &mut SpinorField) {
        if self.absorbing {
            let mut lost_up = 0.0;
            for (a, &l) in field.up.iter().zip(self.loss_up.iter()) {
                if l > 0.0 {
                    lost_up += a.norm_sqr() * l;
                }
            }
            let mut lost_down = 0.0;
            for (a, &l) in field.down.iter().zip(self.loss_down.iter()) {
                if l > 0.0 {
                    lost_down += a.norm_sqr() * l;
                }
            }
            self.absorbed_up += lost_up;
            self.absorbed_down += lost_down;
        }
        for (a, m) in field.up.iter_mut().zip(self.pot_up.iter()) {
            *a *= *m;
        }
        for (a, m) in field.down.iter_mut().zip(self.pot_down.iter()) {
            *a *= *m;
        }
    }

    /// Advance `steps` Strang steps, fusing interior kinetic half-steps.
    pub fn advance(&mut self, field: &mut SpinorField, steps: usize) -> Result<(), ContinuumError> {
        if steps == 0 {
            return Ok(());
        }
        let norm_before = field.norm_sqr();
        self.apply_kinetic(&mut field.up, true);
        self.apply_kinetic(&mut field.down, true);
        self.apply_potential(field);
        for _ in 1..steps {
            self.apply_kinetic(&mut field.up, false);
            self.apply_kinetic(&mut field.down, false);
            self.apply_potential(field);
        }
        self.apply_kinetic(&mut field.up, true);
        self.apply_kinetic(&mut field.down, true);
        self.steps_taken += steps;
        field.time += match self.direction {
            Direction::Forward => steps as f64 * self.dt,
            Direction::Backward => -(steps as f64) * self.dt,
        };
        let norm_after = field.norm_sqr();
        if !norm_after.is_finite() {
            return Err(ContinuumError::NormAnomaly { step: self.steps_taken, norm_sqr: norm_after });
        }
        if !self.absorbing {
            let drift = (norm_after - norm_before).abs();
            if drift > NORM_DRIFT_PER_STEP * steps as f64 * norm_before.max(1.0e-300) {
                return Err(ContinuumError::NormAnomaly { step: self.steps_taken, norm_sqr: norm_after });
            }
        } else if norm_after > norm_before * (1.0 + NORM_DRIFT_PER_STEP * steps as f64) {
            return Err(ContinuumError::NormAnomaly { step: self.steps_taken, norm_sqr: norm_after });
        }
        Ok(())
    }
}
