//! Plane-wave transfer matrix for the rectangular tunnelling barrier and the
//! calibration that picks barrier parameters for a target encounter angle.

use super::ContinuumError;
use crate::C64;

/// Smallest calibratable transmission probability.
pub const TRANSMISSION_FLOOR: f64 = 1.0e-6;
/// Relative tolerance of the calibrated transmission.
const CALIBRATION_RTOL: f64 = 1.0e-5;
/// Barrier height convention: the calibration fixes `V_b = HEIGHT_RATIO * E`
/// and solves for the width (the transmission pins only one of the two).
const HEIGHT_RATIO: f64 = 1.2;

/// Rectangular-barrier parameters produced by [`calibrate_barrier`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierParams {
    pub height: f64,
    pub width: f64,
}

/// Complex transmission amplitude of a rectangular barrier for a plane wave of
/// energy `e < height`.
pub fn transmission_amplitude(energy: f64, mass: f64, height: f64, width: f64) -> C64 {
    let k = (2.0 * mass * energy).sqrt();
    let kappa = (2.0 * mass * (height - energy)).sqrt();
    let kw = kappa * width;
    let asym = (kappa * kappa - k * k) / (2.0 * k * kappa);
    let denom = C64::new(kw.cosh(), asym * kw.sinh());
    C64::from_polar(1.0, -k * width) / denom
}

/// Transmission probability of a rectangular barrier for a plane wave of
/// energy `e < height`.
pub fn transmission_probability(energy: f64, mass: f64, height: f64, width: f64) -> f64 {
    let k2 = 2.0 * mass * energy;
    let kappa2 = 2.0 * mass * (height - energy);
    let s = (kappa2.sqrt() * width).sinh();
    1.0 / (1.0 + (k2 + kappa2).powi(2) / (4.0 * k2 * kappa2) * s * s)
}

/// Pick `(V_b, w)` so the plane-wave transmission at `energy` equals
/// `sin^2(target_alpha)`.
///
/// The height is fixed at `1.2 * energy` (the family has one free parameter;
/// that member keeps the evanescent depth well above typical grid spacings)
/// and the width is bisected, using that the transmission is strictly
/// monotone decreasing in the width.
pub fn calibrate_barrier(target_alpha: f64, energy: f64, mass: f64) -> Result<BarrierParams, ContinuumError> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(ContinuumError::InvalidParameter { name: "energy", value: energy });
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(ContinuumError::InvalidParameter { name: "mass", value: mass });
    }
    let target = target_alpha.sin().powi(2);
    if !(target > 0.0 && target < 0.1) {
        return Err(ContinuumError::InvalidParameter { name: "target_alpha", value: target_alpha });
    }
    if target < TRANSMISSION_FLOOR {
        return Err(ContinuumError::UnreachableTransmission { target, floor: TRANSMISSION_FLOOR });
    }
    let height = HEIGHT_RATIO * energy;
    let kappa = (2.0 * mass * (height - energy)).sqrt();
    let mut lo = 0.0;
    let mut hi = 1.0 / kappa;
    let mut guard = 0;
    while transmission_probability(energy, mass, height, hi) > target {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(ContinuumError::CalibrationFailed {
                detail: format!("no width bracket for transmission {target:.3e}"),
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let t = transmission_probability(energy, mass, height, mid);
        if t > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if (t - target).abs() <= CALIBRATION_RTOL * target {
            return Ok(BarrierParams { height, width: mid });
        }
    }
    Err(ContinuumError::CalibrationFailed {
        detail: format!("width bisection did not converge for transmission {target:.3e}"),
    })
}
