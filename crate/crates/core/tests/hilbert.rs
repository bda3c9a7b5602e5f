//! Oracle tests for the Hilbert-space primitives: basis ordering, Pauli
//! algebra, embedding by enumeration, projector completeness, and the
//! inner-product orientation.

use cheshire_core::hilbert::{
    sigma_x, sigma_y, sigma_z, Operator, StateVector, SubsystemLayout,
};
use cheshire_core::C64;
use ndarray::{array, Array1, Array2};

const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn assert_close(a: C64, b: C64, tol: f64) {
    assert!(
        (a - b).norm() <= tol,
        "expected {b}, got {a} (|diff| = {})",
        (a - b).norm()
    );
}

/// Mode ⊗ spin with the first factor slowest: |L>⊗(|up>+|down>)/√2 has
/// amplitudes (1/√2, 1/√2, 0, 0).
#[test]
fn basis_ordering_mode_slowest() {
    let mode = SubsystemLayout::new(&[("mode", 2)]).unwrap();
    let spin = SubsystemLayout::new(&[("spin", 2)]).unwrap();
    let left = StateVector::basis_state(mode, &[0]).unwrap();
    let sqrt_half = 1.0 / 2.0_f64.sqrt();
    let x_plus = StateVector::new(
        spin,
        Array1::from(vec![c(sqrt_half, 0.0), c(sqrt_half, 0.0)]),
    )
    .unwrap();
    let joint = left.tensor(&x_plus).unwrap();
    let expected = [sqrt_half, sqrt_half, 0.0, 0.0];
    for (amp, want) in joint.amplitudes.iter().zip(expected) {
        assert_close(*amp, c(want, 0.0), TOL);
    }
    // Basis state (mode=1, spin=0) sits at flat index 2.
    let r_up = StateVector::basis_state(joint.layout.clone(), &[1, 0]).unwrap();
    assert_close(r_up.amplitudes[2], c(1.0, 0.0), TOL);
    assert_eq!(r_up.norm(), 1.0);
}

/// sigma_x · sigma_y = i · sigma_z, squares are the identity, and
/// {sigma_x, sigma_y} = 0.
#[test]
fn pauli_algebra() {
    let i = c(0.0, 1.0);
    let xy = sigma_x().dot(&sigma_y());
    let iz = sigma_z().mapv(|z| i * z);
    for (a, b) in xy.iter().zip(iz.iter()) {
        assert_close(*a, *b, TOL);
    }
    for m in [sigma_x(), sigma_y(), sigma_z()] {
        let sq = m.dot(&m);
        let eye: Array2<C64> = Array2::eye(2);
        for (a, b) in sq.iter().zip(eye.iter()) {
            assert_close(*a, *b, TOL);
        }
    }
    let anti = sigma_x().dot(&sigma_y()) + sigma_y().dot(&sigma_x());
    for a in anti.iter() {
        assert_close(*a, c(0.0, 0.0), TOL);
    }
}

/// sigma_y |up> = i |down>, so <down|sigma_y|up> = i; inner is
/// conjugate-linear in its first argument.
#[test]
fn inner_orientation() {
    let spin = SubsystemLayout::new(&[("spin", 2)]).unwrap();
    let up = StateVector::basis_state(spin.clone(), &[0]).unwrap();
    let down = StateVector::basis_state(spin.clone(), &[1]).unwrap();
    let sy = Operator::new(spin.clone(), sigma_y()).unwrap();
    let got = down.inner(&sy.apply(&up).unwrap()).unwrap();
    assert_close(got, c(0.0, 1.0), TOL);

    let scaled = StateVector::new(spin, up.amplitudes.mapv(|z| c(0.0, 2.0) * z)).unwrap();
    let lhs = scaled.inner(&down).unwrap();
    let rhs = c(0.0, -2.0) * up.inner(&down).unwrap();
    assert_close(lhs, rhs, TOL);
    // <a|b> = conj(<b|a>)
    let psi = StateVector::new(
        scaled.layout.clone(),
        array![c(0.3, 0.4), c(-0.1, 0.9)],
    )
    .unwrap();
    let phi = StateVector::new(
        scaled.layout.clone(),
        array![c(-0.7, 0.2), c(0.5, -0.5)],
    )
    .unwrap();
    assert_close(
        psi.inner(&phi).unwrap(),
        phi.inner(&psi).unwrap().conj(),
        TOL,
    );
}

/// Embedding sigma_z on the middle factor of a three-qubit layout gives a
/// diagonal with sign (-1)^(middle index); embeds on distinct factors
/// commute and their product has sign (-1)^(a+b).
#[test]
fn embed_by_enumeration() {
    let layout = SubsystemLayout::new(&[("a", 2), ("b", 2), ("c", 2)]).unwrap();
    let zb = Operator::from_factor(layout.clone(), "b", &sigma_z()).unwrap();
    for flat in 0..8 {
        let idx = layout.unflatten(flat);
        let want = if idx[1] == 0 { 1.0 } else { -1.0 };
        assert_close(zb.matrix[(flat, flat)], c(want, 0.0), TOL);
        for other in 0..8 {
            if other != flat {
                assert_close(zb.matrix[(flat, other)], c(0.0, 0.0), TOL);
            }
        }
    }
    let za = Operator::from_factor(layout.clone(), "a", &sigma_z()).unwrap();
    let ab = za.dot(&zb).unwrap();
    let ba = zb.dot(&za).unwrap();
    for flat in 0..8 {
        let idx = layout.unflatten(flat);
        let want = if (idx[0] + idx[1]).is_multiple_of(2) { 1.0 } else { -1.0 };
        assert_close(ab.matrix[(flat, flat)], c(want, 0.0), TOL);
        assert_close(ba.matrix[(flat, flat)], c(want, 0.0), TOL);
    }
    // Off-diagonal embed: sigma_x on "c" flips the fastest index.
    let xc = Operator::from_factor(layout.clone(), "c", &sigma_x()).unwrap();
    for flat in 0..8 {
        assert_close(xc.matrix[(flat, flat ^ 1)], c(1.0, 0.0), TOL);
    }
}

/// Mode projectors are Hermitian, idempotent, mutually orthogonal, and sum
/// to the identity.
#[test]
fn projector_completeness() {
    let layout = SubsystemLayout::new(&[("mode", 3), ("spin", 2)]).unwrap();
    let mut sum = Array2::<C64>::zeros((6, 6));
    for m in 0..3 {
        let p = Operator::projector(layout.clone(), "mode", &[m]).unwrap();
        assert!(p.is_hermitian(TOL));
        let p2 = p.dot(&p).unwrap();
        for (a, b) in p2.matrix.iter().zip(p.matrix.iter()) {
            assert_close(*a, *b, TOL);
        }
        for other in 0..3 {
            if other != m {
                let q = Operator::projector(layout.clone(), "mode", &[other]).unwrap();
                let pq = p.dot(&q).unwrap();
                for v in pq.matrix.iter() {
                    assert_close(*v, c(0.0, 0.0), TOL);
                }
            }
        }
        sum += &p.matrix;
    }
    let eye: Array2<C64> = Array2::eye(6);
    for (a, b) in sum.iter().zip(eye.iter()) {
        assert_close(*a, *b, TOL);
    }
}

/// Hermiticity/unitarity classification on known matrices.
#[test]
fn hermitian_unitary_checks() {
    let spin = SubsystemLayout::new(&[("spin", 2)]).unwrap();
    let sy = Operator::new(spin.clone(), sigma_y()).unwrap();
    assert!(sy.is_hermitian(TOL));
    assert!(sy.is_unitary(TOL));

    let alpha = 0.3_f64;
    let rot = Operator::new(
        spin.clone(),
        array![
            [c(alpha.cos(), 0.0), c(-alpha.sin(), 0.0)],
            [c(alpha.sin(), 0.0), c(alpha.cos(), 0.0)]
        ],
    )
    .unwrap();
    assert!(rot.is_unitary(TOL));
    assert!(!rot.is_hermitian(1e-3));

    let diag = Operator::new(
        spin,
        array![
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(2.0, 0.0)]
        ],
    )
    .unwrap();
    assert!(diag.is_hermitian(TOL));
    assert!(!diag.is_unitary(1e-3));
}

/// Expectation values and marginal probabilities on hand-built states.
#[test]
fn expectation_and_marginals() {
    let spin = SubsystemLayout::new(&[("spin", 2)]).unwrap();
    let up = StateVector::basis_state(spin.clone(), &[0]).unwrap();
    let sz = Operator::new(spin.clone(), sigma_z()).unwrap();
    assert_close(sz.expectation(&up).unwrap(), c(1.0, 0.0), TOL);

    let sqrt_half = 1.0 / 2.0_f64.sqrt();
    let x_plus = StateVector::new(
        spin.clone(),
        array![c(sqrt_half, 0.0), c(sqrt_half, 0.0)],
    )
    .unwrap();
    let sx = Operator::new(spin, sigma_x()).unwrap();
    assert_close(sx.expectation(&x_plus).unwrap(), c(1.0, 0.0), TOL);

    // (|L,up> + |R,down>)/√2: P(mode=L) = P(spin=down) = 1/2.
    let layout = SubsystemLayout::new(&[("mode", 2), ("spin", 2)]).unwrap();
    let bell = StateVector::new(
        layout,
        array![c(sqrt_half, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(sqrt_half, 0.0)],
    )
    .unwrap();
    assert!((bell.marginal_probability("mode", 0).unwrap() - 0.5).abs() < TOL);
    assert!((bell.marginal_probability("spin", 1).unwrap() - 0.5).abs() < TOL);
}

/// Mismatched layouts and out-of-range indices are rejected.
#[test]
fn error_paths() {
    let spin = SubsystemLayout::new(&[("spin", 2)]).unwrap();
    let mode = SubsystemLayout::new(&[("mode", 2)]).unwrap();
    let up = StateVector::basis_state(spin.clone(), &[0]).unwrap();
    let left = StateVector::basis_state(mode, &[0]).unwrap();
    assert!(up.inner(&left).is_err());

    let sz = Operator::new(spin.clone(), sigma_z()).unwrap();
    assert!(sz.apply(&left).is_err());
    assert!(StateVector::basis_state(spin.clone(), &[2]).is_err());
    assert!(Operator::from_factor(spin.clone(), "mode", &sigma_z()).is_err());
    assert!(StateVector::zero(spin).normalized().is_err());
}

/// A unitary embed preserves inner products.
#[test]
fn unitary_preserves_inner() {
    let layout = SubsystemLayout::new(&[("mode", 2), ("spin", 2)]).unwrap();
    let alpha = 0.7_f64;
    let rot = array![
        [c(alpha.cos(), 0.0), c(-alpha.sin(), 0.0)],
        [c(alpha.sin(), 0.0), c(alpha.cos(), 0.0)]
    ];
    let u = Operator::from_factor(layout.clone(), "mode", &rot).unwrap();
    assert!(u.is_unitary(TOL));
    let a = StateVector::new(
        layout.clone(),
        array![c(0.1, 0.2), c(0.3, -0.4), c(-0.5, 0.6), c(0.7, 0.0)],
    )
    .unwrap();
    let b = StateVector::new(
        layout,
        array![c(-0.2, 0.1), c(0.0, 0.9), c(0.4, 0.4), c(-0.3, -0.3)],
    )
    .unwrap();
    let before = a.inner(&b).unwrap();
    let after = u.apply(&a).unwrap().inner(&u.apply(&b).unwrap()).unwrap();
    assert_close(after, before, TOL);
}
