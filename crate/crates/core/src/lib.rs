//! Simulation toolkit for pre- and post-selected quantum dynamics in a
//! spin-dependent Zeno cavity.
//!
//! The crate models a particle whose spin-up component is blocked by a
//! repeatedly-probed barrier (quantum Zeno regime) while its spin-down
//! component leaks through, and analyses the resulting two-state
//! (forward/backward) description: weak values of mode projectors, spin
//! operators and their products, a gedanken spin-current bookkeeping, an
//! entangled two-spin variant, a continuum split-operator oracle, and a
//! Gaussian-pointer weak-measurement readout.
//!
//! Layers:
//! - [`hilbert`]: dense finite-dimensional state vectors, operators and
//!   tensor-product layouts.
//! - [`tsvf`]: two-state (forward + backward) vectors and weak values.
//! - [`linalg`]: Hermitian eigendecomposition (cyclic Jacobi) used by the
//!   pointer model.
//! - [`random`]: seeded random states/operators for randomized checks.
//! - [`cycle`]: the discrete per-period cavity model and its weak-value
//!   series.
//! - [`entangled`]: the two-spin variant and entanglement diagnostics.
//! - [`pointer`]: Gaussian pointer coupling and conditional readout.
//! - [`continuum`]: 1-D split-operator wavepacket oracle for the cavity.
//! - [`verify`]: the pinned verification suite.

pub mod continuum;
pub mod cycle;
pub mod entangled;
pub mod hilbert;
pub mod linalg;
pub mod pointer;
pub mod random;
pub mod tsvf;
pub mod verify;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
