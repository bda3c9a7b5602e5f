//! Hermitian eigendecomposition via the cyclic complex Jacobi method.
//!
//! Sized for the small operators that appear in pointer couplings (products
//! of projectors and spin operators have at most a handful of distinct
//! eigenvalues); no attempt is made at large-scale performance.

use crate::hilbert::{Operator, SubsystemLayout};
use crate::C64;
use ndarray::Array2;
use thiserror::Error;

/// Errors from the eigensolver.
#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian within {0:.1e}")]
    NotHermitian(f64),
    #[error("Jacobi sweep did not converge in {0} sweeps")]
    NoConvergence(usize),
}

/// Eigenvalues (ascending) with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Array2<C64>,
}

const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Diagonalizes a Hermitian matrix. Off-diagonal mass is driven below
/// `tol * |A|_F` by cyclic Jacobi rotations.
pub fn eigh(matrix: &Array2<C64>, tol: f64) -> Result<EigenDecomposition, LinalgError> {
    let n = matrix.nrows();
    for i in 0..n {
        for j in 0..n {
            if (matrix[(i, j)] - matrix[(j, i)].conj()).norm() > HERMITIAN_TOL {
                return Err(LinalgError::NotHermitian(HERMITIAN_TOL));
            }
        }
    }
    let mut a = matrix.clone();
    let mut w: Array2<C64> = Array2::eye(n);
    let frob = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = if frob > 0.0 { tol * frob } else { tol };

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut w, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(LinalgError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| a[(k, k)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut eigenvectors = Array2::zeros((n, n));
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, col)] = w[(row, k)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &Array2<C64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing `a[(p, q)]`: `A <- V† A V`,
/// `W <- W V` with `V` unitary and supported on rows/columns `p`, `q`.
fn rotate(a: &mut Array2<C64>, w: &mut Array2<C64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // V[p][p] = c, V[p][q] = s, V[q][p] = -s e^{-i phi}, V[q][q] = c e^{-i phi}.
    let vc = C64::new(c, 0.0);
    let vs = C64::new(s, 0.0);
    let e_m = phase.conj();
    let n = a.nrows();

    // Columns of A and W: B <- B V.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = vc * akp - vs * e_m * akq;
        a[(k, q)] = vs * akp + vc * e_m * akq;
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = vc * wkp - vs * e_m * wkq;
        w[(k, q)] = vs * wkp + vc * e_m * wkq;
    }
    // Rows of A: A <- V† A.
    let e_p = phase;
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vc * apk - vs * e_p * aqk;
        a[(q, k)] = vs * apk + vc * e_p * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// One term of a spectral decomposition: a distinct eigenvalue and the
/// projector onto its eigenspace.
#[derive(Debug, Clone)]
pub struct SpectralTerm {
    pub eigenvalue: f64,
    pub projector: Operator,
}

/// Spectral decomposition of a Hermitian operator. Eigenvalues closer than
/// `cluster_tol` are merged into one eigenspace (their mean is reported),
/// so projector products and degenerate spectra stay exact.
pub fn spectral_decomposition(
    op: &Operator,
    tol: f64,
    cluster_tol: f64,
) -> Result<Vec<SpectralTerm>, LinalgError> {
    let decomp = eigh(&op.matrix, tol)?;
    let n = decomp.eigenvalues.len();
    let mut terms: Vec<SpectralTerm> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && decomp.eigenvalues[end] - decomp.eigenvalues[end - 1] <= cluster_tol {
            end += 1;
        }
        let mean =
            decomp.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
        let mut proj: Array2<C64> = Array2::zeros((n, n));
        for k in start..end {
            for i in 0..n {
                for j in 0..n {
                    proj[(i, j)] +=
                        decomp.eigenvectors[(i, k)] * decomp.eigenvectors[(j, k)].conj();
                }
            }
        }
        terms.push(SpectralTerm {
            eigenvalue: mean,
            projector: Operator {
                layout: op.layout.clone(),
                matrix: proj,
            },
        });
        start = end;
    }
    Ok(terms)
}

/// Convenience: spectral decomposition on a named layout (checks shape).
pub fn spectral_decomposition_on(
    layout: &SubsystemLayout,
    matrix: &Array2<C64>,
    tol: f64,
    cluster_tol: f64,
) -> Result<Vec<SpectralTerm>, LinalgError> {
    let op = Operator {
        layout: layout.clone(),
        matrix: matrix.clone(),
    };
    spectral_decomposition(&op, tol, cluster_tol)
}
