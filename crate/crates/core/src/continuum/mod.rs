//! Continuum oracle: a spin-dependent Zeno cavity integrated on a position grid.
//!
//! One spatial dimension, two spin components. The cavity is bounded by a high
//! sampled potential block on the left (both spins) and an equally high block on
//! the right that the up component alone sees; a thin tunnelling barrier sits at
//! the cavity midpoint. The down component escapes past the right block into a
//! quadratic complex absorbing ramp. All three reflectors are placed so the
//! up-sector Hamiltonian is exactly parity symmetric about the barrier centre:
//! the Zeno rotation is first-order sensitive to any phase detuning between the
//! two half-cavities, and sub-grid wall placement would otherwise detune it by
//! far more than the rotation angle per period.
//!
//! Propagation is Strang-split with a spectral sine basis (hard Dirichlet edges
//! behind the potential blocks), so kinetic and potential phases are applied
//! exactly and norm is conserved to rounding when the absorber is off.

mod barrier;
mod propagator;
mod two_state;

pub use barrier::{calibrate_barrier, transmission_amplitude, transmission_probability, BarrierParams, TRANSMISSION_FLOOR};
pub use propagator::{Propagator, WALL_PHASE_CAP};
pub use two_state::{measure_period, refine_barrier_on_grid, run_two_state, weak_series_from_histories, ContinuumSample, TwoStateHistories};

use crate::C64;
use ndarray::Array1;
use thiserror::Error;

/// Hard ceiling on the per-encounter rotation angle (`sin^2 alpha < 0.1`).
pub const MAX_CONTINUUM_ALPHA: f64 = 0.32;
/// Stability bound on `dt * (kinetic scale + potential scale)`.
pub const STABILITY_LIMIT: f64 = 0.1;
/// Minimum clearance, in packet widths, between the packet centre and the
/// nearest reflector or the barrier.
pub const MIN_CLEARANCE_SIGMAS: f64 = 3.3;
/// Minimum absorber opacity `2/(3 v) * strength * width` (single-pass
/// attenuation `exp(-9)`; double for the round trip off the grid edge).
pub const MIN_ABSORBER_OPACITY: f64 = 9.0;

#[derive(Debug, Error)]
pub enum ContinuumError {
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("stability product dt*(K+V) = {product:.3e} exceeds {limit}")]
    StabilityViolated { product: f64, limit: f64 },
    #[error("packet clearance {clearance_sigmas:.2} sigma below minimum {minimum}")]
    PacketDoesNotFit { clearance_sigmas: f64, minimum: f64 },
    #[error("grid of {n_points} points cannot hold the requested layout ({needed} needed)")]
    GridTooSmall { n_points: usize, needed: usize },
    #[error("absorber opacity {opacity:.2} below minimum {minimum}")]
    AbsorberTooWeak { opacity: f64, minimum: f64 },
    #[error("transmission target {target:.3e} below reachable floor {floor:.1e}")]
    UnreachableTransmission { target: f64, floor: f64 },
    #[error("calibration failed: {detail}")]
    CalibrationFailed { detail: String },
    #[error("norm anomaly at step {step}: norm^2 = {norm_sqr:.12}")]
    NormAnomaly { step: usize, norm_sqr: f64 },
    #[error("post-selection support is empty")]
    PostSelectionEmpty,
    #[error("period detection found no autocorrelation peak inside the search window")]
    PeriodNotFound,
}

/// Partition of the grid used by regional weak values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Left half-cavity: strictly left of the barrier centre.
    Left,
    /// Right half-cavity: barrier centre up to the spin-up wall.
    Right,
    /// Beyond the spin-up wall: the escape lane and the absorber.
    Tail,
}

/// Grid geometry derived from a [`ContinuumConfig`].
///
/// Grid points sit at `x_j = (j - j_barrier) * dx` (half-offset Dirichlet
/// planes behind the blocks). `j < j_wall` is blocked for both spins,
/// `j >= j_up_wall` for the up spin only, and the absorber ramps over
/// `j >= j_absorber`.
#[derive(Debug, Clone)]
pub struct GridLayout {
    pub dx: f64,
    pub n_points: usize,
    pub j_wall: usize,
    pub j_barrier: usize,
    pub j_up_wall: usize,
    pub j_absorber: usize,
    pub barrier_points: usize,
}

impl GridLayout {
    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - self.j_barrier as f64) * self.dx
    }

    pub fn xs(&self) -> Array1<f64> {
        Array1::from_iter((0..self.n_points).map(|j| self.x(j)))
    }

    /// Wall-plane-to-barrier-centre distance (equal on both sides by parity).
    pub fn half_cavity(&self) -> f64 {
        (self.j_barrier - self.j_wall + 1) as f64 * self.dx
    }

    /// Index range covered by a [`Region`].
    pub fn region_range(&self, region: Region) -> std::ops::Range<usize> {
        match region {
            Region::Left => 0..self.j_barrier,
            Region::Right => self.j_barrier..self.j_up_wall,
            Region::Tail => self.j_up_wall..self.n_points,
        }
    }

    /// Sampled barrier window: `barrier_points` points centred on `j_barrier`.
    pub fn barrier_range(&self) -> std::ops::Range<usize> {
        let half = self.barrier_points / 2;
        (self.j_barrier - half)..(self.j_barrier + half + 1)
    }
}

/// Parameters of a spin-dependent Zeno-cavity run.
///
/// Geometry is stored in grid units (point counts) so that the left wall, the
/// barrier centre and the up-spin wall stay parity aligned for every `dx`; all
/// physical lengths derive from `dx` via [`ContinuumConfig::layout`].
#[derive(Debug, Clone)]
pub struct ContinuumConfig {
    /// Target per-encounter rotation angle; the barrier is calibrated so a
    /// single encounter transmits `sin^2 alpha` of the probability.
    pub alpha: f64,
    /// Number of compared periods; the forward run lasts `n_cycles + 1`.
    pub n_cycles: usize,
    pub mass: f64,
    /// Packet carrier momentum.
    pub p0: f64,
    /// Packet momentum spread (position width `1/(2 delta_p)`).
    pub delta_p: f64,
    /// Height of the wall blocks (left wall and the up-spin right wall).
    pub wall_height: f64,
    /// Tunnelling barrier height; refined on the grid before a run.
    pub barrier_height: f64,
    /// Tunnelling barrier width (sampled to an odd point count).
    pub barrier_width: f64,
    pub n_points: usize,
    /// Grid spacing.
    pub dx: f64,
    /// Target time step; a run snaps it so one measured period is an integer
    /// number of steps.
    pub dt: f64,
    /// Points in the left wall block.
    pub wall_points: usize,
    /// Points strictly between the wall block and the barrier centre.
    pub half_cavity_points: usize,
    /// Points between the up-spin wall and the absorber ramp.
    pub gap_points: usize,
    /// Peak of the quadratic absorbing ramp.
    pub absorber_strength: f64,
}

impl ContinuumConfig {
    /// Desk-scale defaults for a per-encounter angle `alpha`, sized so that
    /// dispersion, tail leakage and runtime stay within the documented budget.
    pub fn for_alpha(alpha: f64) -> Result<Self, ContinuumError> {
        Self::with_resolution(alpha, 2048)
    }

    /// [`ContinuumConfig::for_alpha`] at an explicit grid resolution; the
    /// physical span is unchanged, so more points buy a finer `dx`.
    pub fn with_resolution(alpha: f64, n_points: usize) -> Result<Self, ContinuumError> {
        if !(alpha > 0.0 && alpha < MAX_CONTINUUM_ALPHA) {
            return Err(ContinuumError::InvalidParameter { name: "alpha", value: alpha });
        }
        let n_cycles = (std::f64::consts::FRAC_PI_2 / alpha).floor() as usize;
        let mass = 1.0;
        let p0 = 2.0;
        // Packet width: the oldest field in a run is (2 n + 1) periods old and
        // must stay a bounded multiple of its initial width.
        let sigma = 3.5 * (2 * n_cycles + 1) as f64 / (p0 * 1.05);
        let delta_p = 1.0 / (2.0 * sigma);
        // Span budget: two half-cavities of 3.5 sigma + 3.5 sigma, a gap and an
        // absorber ramp. Solve dx so everything fits in n_points.
        let wall_points = 8usize;
        let gap_len = 0.4 * sigma;
        let absorber_len = 1.6 * sigma;
        let span = 14.0 * sigma + gap_len + absorber_len;
        let dx = span / (n_points - wall_points - 2) as f64;
        let half_cavity_points = (7.0 * sigma / dx).round() as usize - 1;
        let gap_points = (gap_len / dx).round() as usize;
        let energy = p0 * p0 / (2.0 * mass);
        let barrier = calibrate_barrier(alpha, energy, mass)?;
        let mut config = Self {
            alpha,
            n_cycles,
            mass,
            p0,
            delta_p,
            wall_height: 1.0e4,
            barrier_height: barrier.height,
            barrier_width: barrier.width,
            n_points,
            dx,
            dt: 0.0,
            wall_points,
            half_cavity_points,
            gap_points,
            absorber_strength: 0.5,
        };
        let kinetic = (config.p0 + 5.0 * config.delta_p).powi(2) / (2.0 * config.mass);
        config.dt = 0.95 * STABILITY_LIMIT / (kinetic + config.barrier_height.max(config.absorber_strength));
        config.validate()?;
        Ok(config)
    }

    pub fn sigma_x(&self) -> f64 {
        1.0 / (2.0 * self.delta_p)
    }

    pub fn energy(&self) -> f64 {
        self.p0 * self.p0 / (2.0 * self.mass)
    }

    /// Initial packet centre: the midpoint of the left half-cavity.
    pub fn x0(&self) -> f64 {
        -0.5 * self.layout().half_cavity()
    }

    /// Nominal round-trip period `2 m L / p0` (runs use the measured one).
    pub fn nominal_period(&self) -> f64 {
        2.0 * self.mass * self.layout().half_cavity() / self.p0
    }

    pub fn layout(&self) -> GridLayout {
        let j_wall = self.wall_points;
        let j_barrier = j_wall + self.half_cavity_points;
        let j_up_wall = 2 * j_barrier - j_wall + 1;
        let j_absorber = j_up_wall + self.gap_points;
        let mut barrier_points = (self.barrier_width / self.dx).round().max(1.0) as usize;
        if barrier_points.is_multiple_of(2) {
            barrier_points += 1;
        }
        GridLayout {
            dx: self.dx,
            n_points: self.n_points,
            j_wall,
            j_barrier,
            j_up_wall,
            j_absorber,
            barrier_points,
        }
    }

    pub fn validate(&self) -> Result<(), ContinuumError> {
        let positive: [(&'static str, f64); 8] = [
            ("mass", self.mass),
            ("p0", self.p0),
            ("delta_p", self.delta_p),
            ("wall_height", self.wall_height),
            ("barrier_height", self.barrier_height),
            ("barrier_width", self.barrier_width),
            ("dx", self.dx),
            ("dt", self.dt),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(ContinuumError::InvalidParameter { name, value });
            }
        }
        if !(self.alpha > 0.0 && self.alpha < MAX_CONTINUUM_ALPHA) {
            return Err(ContinuumError::InvalidParameter { name: "alpha", value: self.alpha });
        }
        if self.n_cycles == 0 {
            return Err(ContinuumError::InvalidParameter { name: "n_cycles", value: 0.0 });
        }
        if self.delta_p > self.p0 / 10.0 {
            return Err(ContinuumError::InvalidParameter { name: "delta_p", value: self.delta_p });
        }
        if self.barrier_height <= self.energy() {
            return Err(ContinuumError::InvalidParameter {
                name: "barrier_height",
                value: self.barrier_height,
            });
        }
        let layout = self.layout();
        let needed = layout.j_absorber + (0.5 * self.sigma_x() / self.dx) as usize;
        if layout.j_absorber >= self.n_points || needed >= self.n_points {
            return Err(ContinuumError::GridTooSmall { n_points: self.n_points, needed });
        }
        if layout.barrier_range().start <= layout.j_wall
            || layout.barrier_range().end >= layout.j_up_wall
        {
            return Err(ContinuumError::GridTooSmall {
                n_points: self.n_points,
                needed: layout.barrier_points + 2 * self.half_cavity_points,
            });
        }
        let kinetic = (self.p0 + 5.0 * self.delta_p).powi(2) / (2.0 * self.mass);
        let potential = self.barrier_height.max(self.absorber_strength);
        let product = self.dt * (kinetic + potential);
        if product > STABILITY_LIMIT {
            return Err(ContinuumError::StabilityViolated { product, limit: STABILITY_LIMIT });
        }
        // The wall must dominate the packet energy after phase clamping.
        let effective_wall = self.wall_height.min(propagator::WALL_PHASE_CAP / self.dt);
        if self.p0 > (2.0 * self.mass * effective_wall).sqrt() / 5.0 {
            return Err(ContinuumError::InvalidParameter { name: "p0", value: self.p0 });
        }
        // The packet must fit in the left half-cavity with room to spare: its
        // centre sits halfway between the wall plane and the barrier.
        let clearance = 0.5 * layout.half_cavity() / self.sigma_x();
        if clearance < MIN_CLEARANCE_SIGMAS {
            return Err(ContinuumError::PacketDoesNotFit {
                clearance_sigmas: clearance,
                minimum: MIN_CLEARANCE_SIGMAS,
            });
        }
        let width = (self.n_points - layout.j_absorber) as f64 * self.dx;
        let speed = self.p0 / self.mass;
        let opacity = 2.0 * self.absorber_strength * width / (3.0 * speed);
        if opacity < MIN_ABSORBER_OPACITY {
            return Err(ContinuumError::AbsorberTooWeak { opacity, minimum: MIN_ABSORBER_OPACITY });
        }
        Ok(())
    }

    /// Potential seen by the up component (walls both sides + barrier).
    pub fn potential_up(&self) -> Array1<f64> {
        let layout = self.layout();
        let mut v = Array1::zeros(self.n_points);
        for j in 0..layout.j_wall {
            v[j] = self.wall_height;
        }
        for j in layout.j_up_wall..self.n_points {
            v[j] = self.wall_height;
        }
        for j in layout.barrier_range() {
            v[j] = self.barrier_height;
        }
        v
    }

    /// Potential seen by the down component (left wall + barrier only).
    pub fn potential_down(&self) -> Array1<f64> {
        let layout = self.layout();
        let mut v = Array1::zeros(self.n_points);
        for j in 0..layout.j_wall {
            v[j] = self.wall_height;
        }
        for j in layout.barrier_range() {
            v[j] = self.barrier_height;
        }
        v
    }

    /// Quadratic absorbing ramp (applied to the down component only).
    pub fn absorber(&self) -> Array1<f64> {
        let layout = self.layout();
        let mut eta = Array1::zeros(self.n_points);
        let width = (self.n_points - layout.j_absorber) as f64;
        for j in layout.j_absorber..self.n_points {
            let s = (j - layout.j_absorber) as f64 / width;
            eta[j] = self.absorber_strength * s * s;
        }
        eta
    }
}

/// Two-component wavefunction on the grid, tagged with its physical time.
#[derive(Debug, Clone)]
pub struct SpinorField {
    pub up: Array1<C64>,
    pub down: Array1<C64>,
    pub time: f64,
}

impl SpinorField {
    pub fn zero(n_points: usize) -> Self {
        Self { up: Array1::zeros(n_points), down: Array1::zeros(n_points), time: 0.0 }
    }

    /// Normalized Gaussian packet `exp(-(x-x0)^2/(4 sigma^2) + i p0 x)` with
    /// spin amplitudes `(a_up, a_down)`.
    pub fn gaussian(layout: &GridLayout, x0: f64, p0: f64, sigma: f64, a_up: C64, a_down: C64) -> Self {
        let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25) * layout.dx.sqrt();
        let envelope: Array1<C64> = Array1::from_iter((0..layout.n_points).map(|j| {
            let x = layout.x(j);
            let amp = norm * (-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp();
            C64::from_polar(amp, p0 * x)
        }));
        let mut field = Self::zero(layout.n_points);
        field.up = envelope.mapv(|e| e * a_up);
        field.down = envelope.mapv(|e| e * a_down);
        field
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.iter().chain(self.down.iter()).map(|a| a.norm_sqr()).sum()
    }

    pub fn up_norm_sqr(&self) -> f64 {
        self.up.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn down_norm_sqr(&self) -> f64 {
        self.down.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability carried by a region (both spin components).
    pub fn probability_in(&self, layout: &GridLayout, region: Region) -> f64 {
        let range = layout.region_range(region);
        self.up.slice(ndarray::s![range.clone()]).iter().map(|a| a.norm_sqr()).sum::<f64>()
            + self.down.slice(ndarray::s![range]).iter().map(|a| a.norm_sqr()).sum::<f64>()
    }

    /// Probability carried by one spin component inside a region.
    pub fn spin_probability_in(&self, layout: &GridLayout, region: Region, up: bool) -> f64 {
        let range = layout.region_range(region);
        let component = if up { &self.up } else { &self.down };
        component.slice(ndarray::s![range]).iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>` over the whole grid (self conjugated).
    pub fn inner(&self, other: &Self) -> C64 {
        self.up
            .iter()
            .zip(other.up.iter())
            .chain(self.down.iter().zip(other.down.iter()))
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Sharp post-selection on "left of the barrier, spin down": zero the
    /// spin-up component everywhere and the spin-down component at and right
    /// of the barrier centre, then renormalize.
    pub fn post_select_left_down(&self, layout: &GridLayout) -> Result<Self, ContinuumError> {
        let mut field = self.clone();
        field.up.fill(C64::new(0.0, 0.0));
        for j in layout.j_barrier..layout.n_points {
            field.down[j] = C64::new(0.0, 0.0);
        }
        let norm_sqr = field.norm_sqr();
        if norm_sqr <= 1.0e-24 {
            return Err(ContinuumError::PostSelectionEmpty);
        }
        let scale = norm_sqr.sqrt().recip();
        field.up.mapv_inplace(|a| a * scale);
        field.down.mapv_inplace(|a| a * scale);
        Ok(field)
    }
}

/// Regional weak value `int_region conj(forward) (op backward) / int conj(forward) backward`
/// for a spin operator `op` given as a 2x2 matrix `[[uu, ud], [du, dd]]`.
pub fn regional_weak_value(
    forward: &SpinorField,
    backward: &SpinorField,
    op: [[C64; 2]; 2],
    layout: &GridLayout,
    region: Region,
) -> C64 {
    let range = layout.region_range(region);
    let mut numerator = C64::new(0.0, 0.0);
    for j in range {
        let bu = op[0][0] * backward.up[j] + op[0][1] * backward.down[j];
        let bd = op[1][0] * backward.up[j] + op[1][1] * backward.down[j];
        numerator += forward.up[j].conj() * bu + forward.down[j].conj() * bd;
    }
    numerator / forward.inner(backward)
}

/// Spin operators in the `(up, down)` basis as 2x2 arrays.
pub fn spin_identity() -> [[C64; 2]; 2] {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    [[one, zero], [zero, one]]
}

pub fn spin_x() -> [[C64; 2]; 2] {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    [[zero, one], [one, zero]]
}

pub fn spin_y() -> [[C64; 2]; 2] {
    let i = C64::new(0.0, 1.0);
    let zero = C64::new(0.0, 0.0);
    [[zero, -i], [i, zero]]
}

pub fn spin_z() -> [[C64; 2]; 2] {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    [[one, zero], [zero, -one]]
}
