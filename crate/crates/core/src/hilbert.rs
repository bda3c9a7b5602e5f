//! Dense finite-dimensional Hilbert-space primitives.
//!
//! States and operators are tagged with a [`SubsystemLayout`] naming the
//! ordered tensor factors. The first-listed factor varies slowest in the
//! flat amplitude index (row-major composite indexing), so for a layout
//! `[("mode", 2), ("spin", 2)]` the basis order is
//! `|m0 s0>, |m0 s1>, |m1 s0>, |m1 s1>`.

use ndarray::linalg::kron;
use ndarray::{array, Array1, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Errors from layout/state/operator construction and algebra.
#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("empty layout")]
    EmptyLayout,
    #[error("factor `{0}` has zero dimension")]
    ZeroDimension(String),
    #[error("duplicate factor name `{0}`")]
    DuplicateFactor(String),
    #[error("unknown factor `{0}`")]
    UnknownFactor(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("layout mismatch between operands")]
    LayoutMismatch,
    #[error("index {index} out of range for factor `{factor}` (dimension {dim})")]
    IndexOutOfRange {
        factor: String,
        index: usize,
        dim: usize,
    },
    #[error("operator matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot normalize a zero vector")]
    ZeroNorm,
}

/// Ordered list of named tensor factors; first-listed varies slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemLayout {
    factors: Vec<(String, usize)>,
}

impl SubsystemLayout {
    /// Builds a layout from `(name, dimension)` pairs.
    pub fn new(factors: &[(&str, usize)]) -> Result<Self, HilbertError> {
        if factors.is_empty() {
            return Err(HilbertError::EmptyLayout);
        }
        let mut seen: Vec<&str> = Vec::new();
        for &(name, dim) in factors {
            if dim == 0 {
                return Err(HilbertError::ZeroDimension(name.to_string()));
            }
            if seen.contains(&name) {
                return Err(HilbertError::DuplicateFactor(name.to_string()));
            }
            seen.push(name);
        }
        Ok(Self {
            factors: factors
                .iter()
                .map(|&(name, dim)| (name.to_string(), dim))
                .collect(),
        })
    }

    /// Total Hilbert-space dimension (product of factor dimensions).
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|&(_, d)| d).product()
    }

    /// The `(name, dimension)` pairs in order.
    pub fn factors(&self) -> &[(String, usize)] {
        &self.factors
    }

    /// Position of a factor in the layout.
    pub fn position(&self, name: &str) -> Result<usize, HilbertError> {
        self.factors
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| HilbertError::UnknownFactor(name.to_string()))
    }

    /// Dimension of a named factor.
    pub fn factor_dim(&self, name: &str) -> Result<usize, HilbertError> {
        Ok(self.factors[self.position(name)?].1)
    }

    /// Stride of a factor in the flat index (product of later dimensions).
    pub fn stride(&self, name: &str) -> Result<usize, HilbertError> {
        let pos = self.position(name)?;
        Ok(self.factors[pos + 1..].iter().map(|&(_, d)| d).product())
    }

    /// Flat index of a composite basis state, one index per factor.
    pub fn flat_index(&self, indices: &[usize]) -> Result<usize, HilbertError> {
        if indices.len() != self.factors.len() {
            return Err(HilbertError::DimensionMismatch {
                expected: self.factors.len(),
                actual: indices.len(),
            });
        }
        let mut flat = 0;
        for ((name, dim), &idx) in self.factors.iter().zip(indices) {
            if idx >= *dim {
                return Err(HilbertError::IndexOutOfRange {
                    factor: name.clone(),
                    index: idx,
                    dim: *dim,
                });
            }
            flat = flat * dim + idx;
        }
        Ok(flat)
    }

    /// Per-factor indices of a flat basis index.
    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &(_, dim)) in out.iter_mut().zip(self.factors.iter()).rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        out
    }

    /// Concatenation of two layouts (factor names must stay unique).
    pub fn join(&self, other: &Self) -> Result<Self, HilbertError> {
        let mut factors = self.factors.clone();
        for (name, dim) in &other.factors {
            if factors.iter().any(|(n, _)| n == name) {
                return Err(HilbertError::DuplicateFactor(name.clone()));
            }
            factors.push((name.clone(), *dim));
        }
        Ok(Self { factors })
    }
}

/// A pure state: amplitudes over the composite basis of a layout.
#[derive(Debug, Clone)]
pub struct StateVector {
    pub layout: SubsystemLayout,
    pub amplitudes: Array1<C64>,
}

impl StateVector {
    /// Wraps amplitudes, checking the length against the layout.
    pub fn new(layout: SubsystemLayout, amplitudes: Array1<C64>) -> Result<Self, HilbertError> {
        if amplitudes.len() != layout.dim() {
            return Err(HilbertError::DimensionMismatch {
                expected: layout.dim(),
                actual: amplitudes.len(),
            });
        }
        Ok(Self { layout, amplitudes })
    }

    /// The zero vector.
    pub fn zero(layout: SubsystemLayout) -> Self {
        let dim = layout.dim();
        Self {
            layout,
            amplitudes: Array1::zeros(dim),
        }
    }

    /// Computational basis state with one index per factor.
    pub fn basis_state(layout: SubsystemLayout, indices: &[usize]) -> Result<Self, HilbertError> {
        let flat = layout.flat_index(indices)?;
        let mut state = Self::zero(layout);
        state.amplitudes[flat] = C64::new(1.0, 0.0);
        Ok(state)
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Unit-norm copy; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self, HilbertError> {
        let n = self.norm();
        if n == 0.0 {
            return Err(HilbertError::ZeroNorm);
        }
        Ok(Self {
            layout: self.layout.clone(),
            amplitudes: self.amplitudes.mapv(|z| z / n),
        })
    }

    /// Inner product `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C64, HilbertError> {
        if self.layout != other.layout {
            return Err(HilbertError::LayoutMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability that measuring `factor` yields `index`.
    pub fn marginal_probability(&self, factor: &str, index: usize) -> Result<f64, HilbertError> {
        let pos = self.layout.position(factor)?;
        let dim = self.layout.factor_dim(factor)?;
        if index >= dim {
            return Err(HilbertError::IndexOutOfRange {
                factor: factor.to_string(),
                index,
                dim,
            });
        }
        let mut p = 0.0;
        for (flat, amp) in self.amplitudes.iter().enumerate() {
            if self.layout.unflatten(flat)[pos] == index {
                p += amp.norm_sqr();
            }
        }
        Ok(p)
    }

    /// Tensor product; layouts are concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self, HilbertError> {
        let layout = self.layout.join(&other.layout)?;
        let mut amplitudes = Array1::zeros(layout.dim());
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in other.amplitudes.iter().enumerate() {
                amplitudes[i * other.dim() + j] = a * b;
            }
        }
        Ok(Self { layout, amplitudes })
    }
}

/// A linear operator on the composite space of a layout.
#[derive(Debug, Clone)]
pub struct Operator {
    pub layout: SubsystemLayout,
    pub matrix: Array2<C64>,
}

impl Operator {
    /// Wraps a matrix, checking shape against the layout.
    pub fn new(layout: SubsystemLayout, matrix: Array2<C64>) -> Result<Self, HilbertError> {
        let (rows, cols) = matrix.dim();
        if rows != cols {
            return Err(HilbertError::NotSquare { rows, cols });
        }
        if rows != layout.dim() {
            return Err(HilbertError::DimensionMismatch {
                expected: layout.dim(),
                actual: rows,
            });
        }
        Ok(Self { layout, matrix })
    }

    /// Identity on the layout.
    pub fn identity(layout: SubsystemLayout) -> Self {
        let dim = layout.dim();
        Self {
            layout,
            matrix: Array2::eye(dim),
        }
    }

    /// Embeds a single-factor matrix as `I ⊗ .. ⊗ m ⊗ .. ⊗ I`.
    pub fn from_factor(
        layout: SubsystemLayout,
        factor: &str,
        m: &Array2<C64>,
    ) -> Result<Self, HilbertError> {
        let pos = layout.position(factor)?;
        let fdim = layout.factor_dim(factor)?;
        let (rows, cols) = m.dim();
        if rows != cols {
            return Err(HilbertError::NotSquare { rows, cols });
        }
        if rows != fdim {
            return Err(HilbertError::DimensionMismatch {
                expected: fdim,
                actual: rows,
            });
        }
        let pre: usize = layout.factors()[..pos].iter().map(|&(_, d)| d).product();
        let post: usize = layout.factors()[pos + 1..]
            .iter()
            .map(|&(_, d)| d)
            .product();
        let matrix = kron(&kron(&Array2::eye(pre), m), &Array2::eye(post));
        Ok(Self { layout, matrix })
    }

    /// Projector onto a set of basis indices of one factor.
    pub fn projector(
        layout: SubsystemLayout,
        factor: &str,
        indices: &[usize],
    ) -> Result<Self, HilbertError> {
        let fdim = layout.factor_dim(factor)?;
        let mut small = Array2::zeros((fdim, fdim));
        for &idx in indices {
            if idx >= fdim {
                return Err(HilbertError::IndexOutOfRange {
                    factor: factor.to_string(),
                    index: idx,
                    dim: fdim,
                });
            }
            small[(idx, idx)] = C64::new(1.0, 0.0);
        }
        Self::from_factor(layout, factor, &small)
    }

    /// Applies the operator to a state.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector, HilbertError> {
        if self.layout != state.layout {
            return Err(HilbertError::LayoutMismatch);
        }
        Ok(StateVector {
            layout: state.layout.clone(),
            amplitudes: self.matrix.dot(&state.amplitudes),
        })
    }

    /// Operator product `self · other` (apply `other` first).
    pub fn dot(&self, other: &Self) -> Result<Self, HilbertError> {
        if self.layout != other.layout {
            return Err(HilbertError::LayoutMismatch);
        }
        Ok(Self {
            layout: self.layout.clone(),
            matrix: self.matrix.dot(&other.matrix),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: self.matrix.t().mapv(|z| z.conj()),
        }
    }

    /// Tensor product; layouts are concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self, HilbertError> {
        Ok(Self {
            layout: self.layout.join(&other.layout)?,
            matrix: kron(&self.matrix, &other.matrix),
        })
    }

    /// Max-entry deviation from `self = self†`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let adj = self.adjoint();
        max_abs_diff(&self.matrix, &adj.matrix) <= tol
    }

    /// Max-entry deviation of `self·self†` from the identity.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = self.matrix.dot(&self.adjoint().matrix);
        let eye: Array2<C64> = Array2::eye(self.matrix.nrows());
        max_abs_diff(&prod, &eye) <= tol
    }

    /// Expectation value `<state|self|state>`.
    pub fn expectation(&self, state: &StateVector) -> Result<C64, HilbertError> {
        state.inner(&self.apply(state)?)
    }
}

fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Tensor product of a sequence of states in declared order; a single
/// state is returned unchanged.
pub fn tensor_all(states: &[StateVector]) -> Result<StateVector, HilbertError> {
    let (first, rest) = states.split_first().ok_or(HilbertError::EmptyLayout)?;
    let mut out = first.clone();
    for s in rest {
        out = out.tensor(s)?;
    }
    Ok(out)
}

/// Pauli axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The 2×2 Pauli matrix for an axis.
pub fn pauli(axis: PauliAxis) -> Array2<C64> {
    match axis {
        PauliAxis::X => sigma_x(),
        PauliAxis::Y => sigma_y(),
        PauliAxis::Z => sigma_z(),
    }
}

/// Pauli X on a two-dimensional factor (basis: index 0 = up, 1 = down).
pub fn sigma_x() -> Array2<C64> {
    array![
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
    ]
}

/// Pauli Y: `sigma_y |up> = i |down>`, `sigma_y |down> = -i |up>`.
pub fn sigma_y() -> Array2<C64> {
    array![
        [C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]
    ]
}

/// Pauli Z: diagonal `(+1, -1)`.
pub fn sigma_z() -> Array2<C64> {
    array![
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]
    ]
}

/// 2x2 identity.
pub fn eye2() -> Array2<C64> {
    Array2::eye(2)
}
