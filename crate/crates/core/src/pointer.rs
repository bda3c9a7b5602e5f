//! Von Neumann pointer readout: weak impulse coupling, post-selection, and
//! recovery of weak values from conditional pointer moments.
//!
//! The coupling `exp(-i g A ⊗ P)` translates a Gaussian pointer by `g·a` on
//! each eigenbranch `a` of the observable. After post-selecting the system,
//! the conditional pointer mean shifts by `g·Re⟨A⟩_w + O(g²)` and the
//! conditional momentum mean by a spread-dependent multiple of `Im⟨A⟩_w`.
//! The momentum proportionality constant is not hard-coded: it is measured
//! on a reference qubit whose weak value is `−i` by construction, so the
//! readout stays faithful to this crate's weak-value orientation
//! (`weak_value` of [`crate::tsvf::TwoStateVector`]).
//!
//! Joint states keep one projected system branch per distinct eigenvalue.
//! With at most [`ANALYTIC_EIGENVALUE_LIMIT`] eigenvalues the pointer
//! moments use closed-form Gaussian overlaps; beyond that the pointer is
//! sampled on a grid and moments are computed by quadrature.

use crate::hilbert::{HilbertError, Operator, StateVector};
use crate::linalg::{spectral_decomposition, LinalgError};
use crate::C64;
use ndarray::{Array1, Array2};
use thiserror::Error;

/// Most eigenbranches the closed-form Gaussian representation will carry.
pub const ANALYTIC_EIGENVALUE_LIMIT: usize = 8;
/// Default floor on the post-selection probability.
pub const DEFAULT_PROBABILITY_FLOOR: f64 = 1e-12;
/// Grid points used by the quadrature representation.
pub const GRID_POINTS: usize = 16384;
/// Hermiticity / clustering tolerances handed to the eigensolver.
const SPECTRAL_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PointerError {
    #[error("pointer spread must be positive, got {0}")]
    InvalidSpread(f64),
    #[error("coupling strength must be nonzero and finite, got {0}")]
    InvalidCoupling(f64),
    #[error("post-selection probability {probability:.3e} below floor {floor:.3e}")]
    LowProbability { probability: f64, floor: f64 },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Gaussian pointer: mean `q0`, position spread `sigma_q`, zero mean
/// momentum.
#[derive(Debug, Clone)]
pub struct PointerState {
    pub q0: f64,
    pub sigma_q: f64,
}

impl PointerState {
    pub fn new(q0: f64, sigma_q: f64) -> Result<Self, PointerError> {
        if !sigma_q.is_finite() || sigma_q <= 0.0 {
            return Err(PointerError::InvalidSpread(sigma_q));
        }
        Ok(Self { q0, sigma_q })
    }

    /// Unit-spread pointer centered at the origin.
    pub fn standard() -> Self {
        Self { q0: 0.0, sigma_q: 1.0 }
    }

    /// Normalized Gaussian wavefunction centered at `mean`.
    fn wave(&self, q: f64, mean: f64) -> f64 {
        let var = self.sigma_q * self.sigma_q;
        (2.0 * std::f64::consts::PI * var).powf(-0.25)
            * (-(q - mean) * (q - mean) / (4.0 * var)).exp()
    }
}

/// One eigenbranch of the coupled joint state: the projected (unnormalized)
/// system component whose pointer is shifted by `g·eigenvalue`.
#[derive(Debug, Clone)]
pub struct Branch {
    pub eigenvalue: f64,
    pub system: StateVector,
}

#[derive(Debug, Clone)]
struct PointerGrid {
    qs: Array1<f64>,
    /// Row `a` holds the shifted pointer wave of branch `a` on `qs`.
    waves: Array2<f64>,
}

/// System ⊗ pointer state after the impulse coupling.
#[derive(Debug, Clone)]
pub struct JointState {
    pub g: f64,
    pub pointer: PointerState,
    pub branches: Vec<Branch>,
    grid: Option<PointerGrid>,
}

/// Conditional pointer moments after post-selection.
#[derive(Debug, Clone, Copy)]
pub struct PointerReadout {
    /// Mean pointer position minus the initial mean `q0`.
    pub position_shift: f64,
    /// Mean pointer momentum (initially zero).
    pub momentum_shift: f64,
    /// Probability of the post-selection given the coupled state.
    pub probability: f64,
}

fn build_grid(pointer: &PointerState, shifts: &[f64]) -> PointerGrid {
    let max_shift = shifts.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
    let extent = max_shift + 12.0 * pointer.sigma_q;
    let lo = pointer.q0 - extent;
    let hi = pointer.q0 + extent;
    let dq = (hi - lo) / (GRID_POINTS as f64 - 1.0);
    let qs = Array1::from_iter((0..GRID_POINTS).map(|j| lo + dq * j as f64));
    let mut waves = Array2::zeros((shifts.len(), GRID_POINTS));
    for (a, shift) in shifts.iter().enumerate() {
        let mean = pointer.q0 + shift;
        for (j, &q) in qs.iter().enumerate() {
            waves[(a, j)] = pointer.wave(q, mean);
        }
    }
    PointerGrid { qs, waves }
}

/// Applies the impulse coupling `exp(-i·g·op ⊗ P)` to `system ⊗ pointer`.
///
/// Each eigenbranch of `op` keeps its amplitude and gains a pointer
/// translation by `g·eigenvalue`.
pub fn couple(
    system: &StateVector,
    op: &Operator,
    g: f64,
    pointer: &PointerState,
) -> Result<JointState, PointerError> {
    if !g.is_finite() {
        return Err(PointerError::InvalidCoupling(g));
    }
    PointerState::new(pointer.q0, pointer.sigma_q)?;
    let spectral = spectral_decomposition(op, SPECTRAL_TOL, CLUSTER_TOL)?;
    let branches: Vec<Branch> = spectral
        .into_iter()
        .map(|term| {
            Ok(Branch {
                eigenvalue: term.eigenvalue,
                system: term.projector.apply(system)?,
            })
        })
        .collect::<Result<_, PointerError>>()?;
    let grid = if branches.len() > ANALYTIC_EIGENVALUE_LIMIT {
        let shifts: Vec<f64> = branches.iter().map(|b| g * b.eigenvalue).collect();
        Some(build_grid(pointer, &shifts))
    } else {
        None
    };
    Ok(JointState {
        g,
        pointer: pointer.clone(),
        branches,
        grid,
    })
}

/// Same as [`couple`] but always uses the quadrature representation;
/// exists so the two readout paths can be compared on small problems.
pub fn couple_on_grid(
    system: &StateVector,
    op: &Operator,
    g: f64,
    pointer: &PointerState,
) -> Result<JointState, PointerError> {
    let mut joint = couple(system, op, g, pointer)?;
    if joint.grid.is_none() {
        let shifts: Vec<f64> = joint.branches.iter().map(|b| g * b.eigenvalue).collect();
        joint.grid = Some(build_grid(pointer, &shifts));
    }
    Ok(joint)
}

/// Post-selection amplitudes `⟨backward|Π_a|forward⟩` per branch.
fn branch_amplitudes(joint: &JointState, backward: &StateVector) -> Result<Vec<C64>, PointerError> {
    joint
        .branches
        .iter()
        .map(|b| Ok(backward.inner(&b.system)?))
        .collect()
}

fn analytic_readout(joint: &JointState, betas: &[C64]) -> PointerReadout {
    let var = joint.pointer.sigma_q * joint.pointer.sigma_q;
    let mut prob = 0.0;
    let mut mean_q = 0.0;
    let mut mean_p = 0.0;
    for (a, beta_a) in betas.iter().enumerate() {
        let qa = joint.g * joint.branches[a].eigenvalue;
        for (b, beta_b) in betas.iter().enumerate() {
            let qb = joint.g * joint.branches[b].eigenvalue;
            let weight = beta_a.conj() * beta_b;
            let overlap = (-(qa - qb) * (qa - qb) / (8.0 * var)).exp();
            prob += (weight * overlap).re;
            mean_q += (weight * overlap).re * (joint.pointer.q0 + (qa + qb) / 2.0);
            // ⟨G_a|p̂|G_b⟩ = i·(q_a − q_b)/(4σ²)·overlap.
            mean_p += (weight * C64::new(0.0, (qa - qb) / (4.0 * var)) * overlap).re;
        }
    }
    PointerReadout {
        position_shift: mean_q / prob - joint.pointer.q0,
        momentum_shift: mean_p / prob,
        probability: prob,
    }
}

fn grid_readout(joint: &JointState, grid: &PointerGrid, betas: &[C64]) -> PointerReadout {
    let n = grid.qs.len();
    let dq = grid.qs[1] - grid.qs[0];
    let mut chi: Array1<C64> = Array1::zeros(n);
    for (a, beta) in betas.iter().enumerate() {
        for j in 0..n {
            chi[j] += beta * grid.waves[(a, j)];
        }
    }
    let mut prob = 0.0;
    let mut mean_q = 0.0;
    for j in 0..n {
        let w = chi[j].norm_sqr();
        prob += w * dq;
        mean_q += grid.qs[j] * w * dq;
    }
    // ⟨p⟩ = Im ∫ χ* χ′ dq with a central-difference derivative.
    let mut mean_p = 0.0;
    for j in 1..n - 1 {
        let dchi = (chi[j + 1] - chi[j - 1]) / (2.0 * dq);
        mean_p += (chi[j].conj() * dchi).im * dq;
    }
    PointerReadout {
        position_shift: mean_q / prob - joint.pointer.q0,
        momentum_shift: mean_p / prob,
        probability: prob,
    }
}

/// Projects the system factor of `joint` onto `backward` and returns the
/// conditional pointer moments and the post-selection probability.
pub fn post_select_readout(
    joint: &JointState,
    backward: &StateVector,
) -> Result<PointerReadout, PointerError> {
    post_select_readout_with_floor(joint, backward, DEFAULT_PROBABILITY_FLOOR)
}

/// [`post_select_readout`] with an explicit probability floor.
pub fn post_select_readout_with_floor(
    joint: &JointState,
    backward: &StateVector,
    floor: f64,
) -> Result<PointerReadout, PointerError> {
    let betas = branch_amplitudes(joint, backward)?;
    let readout = match &joint.grid {
        Some(grid) => grid_readout(joint, grid, &betas),
        None => analytic_readout(joint, &betas),
    };
    if readout.probability.is_nan() || readout.probability < floor {
        return Err(PointerError::LowProbability {
            probability: readout.probability,
            floor,
        });
    }
    Ok(readout)
}

/// Conditional pointer probability density sampled at `qs`.
pub fn conditional_pointer_density(
    joint: &JointState,
    backward: &StateVector,
    qs: &[f64],
) -> Result<Vec<f64>, PointerError> {
    let betas = branch_amplitudes(joint, backward)?;
    let mut density = Vec::with_capacity(qs.len());
    for &q in qs {
        let mut chi = C64::new(0.0, 0.0);
        for (a, beta) in betas.iter().enumerate() {
            let mean = joint.pointer.q0 + joint.g * joint.branches[a].eigenvalue;
            chi += beta * joint.pointer.wave(q, mean);
        }
        density.push(chi.norm_sqr());
    }
    Ok(density)
}

/// Number of strict local maxima of `density` at least `rel_threshold`
/// times the global maximum.
pub fn count_modes(density: &[f64], rel_threshold: f64) -> usize {
    let peak = density.iter().fold(0.0_f64, |m, &v| m.max(v));
    if peak <= 0.0 {
        return 0;
    }
    density
        .windows(3)
        .filter(|w| w[1] > w[0] && w[1] > w[2] && w[1] >= rel_threshold * peak)
        .count()
}

/// Reads a weak value off the pointer: `Re` from the position shift, `Im`
/// from the momentum shift with a constant calibrated on a reference qubit
/// whose weak value is `−i` in this crate's orientation. Accurate to
/// `O(g²)`.
pub fn inferred_weak_value(
    forward: &StateVector,
    backward: &StateVector,
    op: &Operator,
    g: f64,
    pointer: &PointerState,
) -> Result<C64, PointerError> {
    if g == 0.0 || !g.is_finite() {
        return Err(PointerError::InvalidCoupling(g));
    }
    let joint = couple(forward, op, g, pointer)?;
    let readout = post_select_readout(&joint, backward)?;
    let re = readout.position_shift / g;
    let im = momentum_calibration(g, pointer)? * readout.momentum_shift / g;
    Ok(C64::new(re, im))
}

/// Measures the momentum-shift-per-unit-`Im` constant on a qubit with
/// forward `(|0⟩+|1⟩)/√2`, backward `(|0⟩+i|1⟩)/√2` and observable `σ_z`,
/// for which the weak value is exactly `−i` in this crate's orientation.
fn momentum_calibration(g: f64, pointer: &PointerState) -> Result<f64, PointerError> {
    let layout = crate::hilbert::SubsystemLayout::new(&[("spin", 2)])?;
    let h = 1.0 / 2.0_f64.sqrt();
    let forward = StateVector::new(
        layout.clone(),
        Array1::from(vec![C64::new(h, 0.0), C64::new(h, 0.0)]),
    )?;
    let backward = StateVector::new(
        layout.clone(),
        Array1::from(vec![C64::new(h, 0.0), C64::new(0.0, h)]),
    )?;
    let op = Operator::from_factor(layout, "spin", &crate::hilbert::sigma_z())?;
    let joint = couple(&forward, &op, g, pointer)?;
    let readout = post_select_readout(&joint, &backward)?;
    // Known Im⟨σ_z⟩_w = −1 for this pair.
    Ok(-g / readout.momentum_shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::SubsystemLayout;

    #[test]
    fn eigenstate_shifts_exactly() {
        let layout = SubsystemLayout::new(&[("spin", 2)]).unwrap();
        let up = StateVector::basis_state(layout.clone(), &[0]).unwrap();
        let op = Operator::from_factor(layout, "spin", &crate::hilbert::sigma_z()).unwrap();
        let joint = couple(&up, &op, 0.3, &PointerState::standard()).unwrap();
        let readout = post_select_readout(&joint, &up).unwrap();
        assert!((readout.position_shift - 0.3).abs() < 1e-12);
        assert!(readout.momentum_shift.abs() < 1e-12);
        assert!((readout.probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_coupling_leaves_pointer_alone() {
        let layout = SubsystemLayout::new(&[("spin", 2)]).unwrap();
        let h = 1.0 / 2.0_f64.sqrt();
        let plus = StateVector::new(
            layout.clone(),
            Array1::from(vec![C64::new(h, 0.0), C64::new(h, 0.0)]),
        )
        .unwrap();
        let op = Operator::from_factor(layout, "spin", &crate::hilbert::sigma_z()).unwrap();
        let joint = couple(&plus, &op, 0.0, &PointerState::standard()).unwrap();
        let readout = post_select_readout(&joint, &plus).unwrap();
        assert!(readout.position_shift.abs() < 1e-12);
        assert!(readout.momentum_shift.abs() < 1e-12);
        assert!((readout.probability - 1.0).abs() < 1e-12);
    }
}
