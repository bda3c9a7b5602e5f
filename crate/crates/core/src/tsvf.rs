//! Two-state (forward/backward) vectors and weak values.
//!
//! A [`TwoStateVector`] pairs the forward-evolving state (prepared in the
//! past) with the backward-evolving state (conditioned on a future
//! post-selection) at a common time slice. The weak value of an operator
//! `A` is
//!
//! ```text
//!     W(A) = <forward| A |backward> / <forward|backward>
//! ```
//!
//! with the forward state conjugated in the bra. `W` is invariant under
//! rescaling of either state, equals 1 for the identity, and is linear in
//! `A`; it is generally complex, and its real and imaginary parts govern
//! the position and momentum response of a weakly coupled pointer (see
//! [`crate::pointer`]).

use crate::hilbert::{HilbertError, Operator, StateVector, SubsystemLayout};
use crate::C64;
use ndarray::Array1;
use thiserror::Error;

/// Relative overlap floor below which weak values are refused.
pub const DEFAULT_OVERLAP_FLOOR: f64 = 1e-10;

/// Tolerance for the unitarity check in [`TwoStateVector::evolve`].
const UNITARY_TOL: f64 = 1e-8;

/// Errors from two-state-vector operations.
#[derive(Debug, Error)]
pub enum TsvfError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("forward/backward overlap too small: |<f|b>| = {overlap:.3e} < {floor:.3e} * |f||b|")]
    OverlapTooSmall { overlap: f64, floor: f64 },
    #[error("evolution operator is not unitary within {0:.1e}")]
    NonUnitary(f64),
}

/// Time direction for [`TwoStateVector::evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Forward and backward states sharing one time slice.
#[derive(Debug, Clone)]
pub struct TwoStateVector {
    /// Integer label of the common time slice.
    pub time_index: i64,
    pub forward: StateVector,
    pub backward: StateVector,
}

impl TwoStateVector {
    /// Pairs a forward and a backward state; layouts must agree.
    pub fn new(
        forward: StateVector,
        backward: StateVector,
        time_index: i64,
    ) -> Result<Self, TsvfError> {
        if forward.layout != backward.layout {
            return Err(HilbertError::LayoutMismatch.into());
        }
        Ok(Self {
            time_index,
            forward,
            backward,
        })
    }

    /// Overlap `<forward|backward>`.
    pub fn overlap(&self) -> Result<C64, TsvfError> {
        Ok(self.forward.inner(&self.backward)?)
    }

    /// Weak value of `op` with the default relative overlap floor.
    pub fn weak_value(&self, op: &Operator) -> Result<C64, TsvfError> {
        self.weak_value_with_floor(op, DEFAULT_OVERLAP_FLOOR)
    }

    /// Weak value of `op`; errors if `|<f|b>| < floor * |f| * |b|`.
    pub fn weak_value_with_floor(&self, op: &Operator, floor: f64) -> Result<C64, TsvfError> {
        let denom = self.overlap()?;
        let scale = self.forward.norm() * self.backward.norm();
        if denom.norm() < floor * scale {
            return Err(TsvfError::OverlapTooSmall {
                overlap: denom.norm(),
                floor,
            });
        }
        let num = self.forward.inner(&op.apply(&self.backward)?)?;
        Ok(num / denom)
    }

    /// Moves the common time slice one step: `Forward` applies `u` to both
    /// states and increments the index; `Backward` applies `u†` to both and
    /// decrements it.
    pub fn evolve(&self, u: &Operator, direction: Direction) -> Result<Self, TsvfError> {
        if !u.is_unitary(UNITARY_TOL) {
            return Err(TsvfError::NonUnitary(UNITARY_TOL));
        }
        let (op, delta) = match direction {
            Direction::Forward => (u.clone(), 1),
            Direction::Backward => (u.adjoint(), -1),
        };
        Ok(Self {
            time_index: self.time_index + delta,
            forward: op.apply(&self.forward)?,
            backward: op.apply(&self.backward)?,
        })
    }
}

/// Layout of the static mode/spin gedanken setup: two modes ⊗ spin-1/2.
pub fn static_mode_spin_layout() -> SubsystemLayout {
    SubsystemLayout::new(&[("mode", 2), ("spin", 2)]).expect("static layout")
}

/// Pre-selected state of the static setup:
/// `(|L,up> + |L,down> + |R,up> - |R,down>) / 2`.
pub fn static_preselected() -> StateVector {
    let layout = static_mode_spin_layout();
    let h = C64::new(0.5, 0.0);
    StateVector::new(layout, Array1::from(vec![h, h, h, -h])).expect("static preselected")
}

/// Post-selected state of the static setup:
/// `(|L,up> - |L,down> + |R,up> - |R,down>) / 2`.
pub fn static_postselected() -> StateVector {
    let layout = static_mode_spin_layout();
    let h = C64::new(0.5, 0.0);
    StateVector::new(layout, Array1::from(vec![h, -h, h, -h])).expect("static postselected")
}

/// The static pre/post-selected pair at time slice 0. Its weak values put
/// the particle entirely in one mode and its spin entirely in the other:
/// `W(P_L) = 0`, `W(P_R) = 1`, `W(sigma_z) = W(sigma_z P_L) = 1`,
/// `W(sigma_z P_R) = 0`.
pub fn static_two_state() -> TwoStateVector {
    TwoStateVector::new(static_preselected(), static_postselected(), 0)
        .expect("static two-state vector")
}
