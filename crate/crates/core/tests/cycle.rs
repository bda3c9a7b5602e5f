//! Oracle tests for the discrete Zeno-cavity model: scattering matrix
//! values, exact trajectory amplitudes, backward-trajectory shape, the
//! closed-form weak-value series, exact-vs-closed-form error bounds, the
//! cumulative spin transfer, and the x/y quadrature identity.

use cheshire_core::cycle::{
    barrier_matrix, barrier_scatter, closed_form_forward,
    closed_form_weak_series, cumulative_spin_transfer, escape_mode, forward_trajectory,
    heisenberg_consistency, initial_state, one_period_map, pi_escape, pi_left, pi_left_sigma,
    pi_right, pi_right_sigma, post_select_left, post_select_position_only,
    post_selection_probability, sigma_op, spin_transfer_target, step, two_state_at, weak_series,
    weak_series_from, wall_action, zeno_contrast, CycleConfig, CycleError, WeakValueSeries,
    MODE_L, MODE_R, SPIN_DOWN, SPIN_UP,
};
use cheshire_core::hilbert::PauliAxis;
use cheshire_core::tsvf::TwoStateVector;
use cheshire_core::C64;

fn assert_close(a: C64, b: C64, tol: f64) {
    assert!(
        (a - b).norm() <= tol,
        "expected {b}, got {a} (|diff| = {})",
        (a - b).norm()
    );
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Barrier limits and the alpha = 0.01 matrix elements.
#[test]
fn barrier_matrix_values() {
    let id = barrier_matrix(0.0);
    assert_close(id[(0, 0)], re(1.0), 1e-15);
    assert_close(id[(1, 0)], re(0.0), 1e-15);

    let swap = barrier_matrix(std::f64::consts::FRAC_PI_2);
    // |L> -> |R>, |R> -> -|L>.
    assert_close(swap[(1, 0)], re(1.0), 1e-15);
    assert_close(swap[(0, 1)], re(-1.0), 1e-15);
    assert!(swap[(0, 0)].norm() < 1e-15);

    let weak = barrier_matrix(0.01);
    assert_close(weak[(0, 0)], re(0.99995), 1e-7);
    assert_close(weak[(1, 0)], re(0.00999983), 1e-8);
}

/// The embedded scattering operator and per-period maps are unitary; the
/// escape-discarding variant of the wall action is not.
#[test]
fn period_maps_are_unitary() {
    let cfg = CycleConfig::new(0.07).unwrap();
    assert!(barrier_scatter(&cfg).is_unitary(1e-12));
    for cycle in 1..=cfg.n_total {
        assert!(wall_action(&cfg, cycle).unwrap().is_unitary(1e-12));
        assert!(one_period_map(&cfg, cycle).unwrap().is_unitary(1e-12));
    }
    let lossy = CycleConfig {
        track_escapes: false,
        ..cfg
    };
    assert!(!wall_action(&lossy, 1).unwrap().is_unitary(1e-3));
}

/// The in-place step, the period-map operator, and the factored
/// barrier·wall product all agree.
#[test]
fn step_matches_period_map() {
    let cfg = CycleConfig::new(0.07).unwrap();
    let mut state = initial_state(&cfg);
    for cycle in 1..=cfg.n_total {
        let map = one_period_map(&cfg, cycle).unwrap();
        let factored = barrier_scatter(&cfg)
            .dot(&wall_action(&cfg, cycle).unwrap())
            .unwrap();
        for (a, b) in map.matrix.iter().zip(factored.matrix.iter()) {
            assert_close(*a, *b, 1e-14);
        }
        let via_map = map.apply(&state.state).unwrap();
        state = step(&cfg, &state).unwrap();
        for (a, b) in state.state.amplitudes.iter().zip(via_map.amplitudes.iter()) {
            assert_close(*a, *b, 1e-14);
        }
    }
}

/// One bare scattering on the initial state puts (cos a, sin a)/√2 on
/// (L, R) for each spin component.
#[test]
fn single_scattering_amplitudes() {
    let cfg = CycleConfig::new(0.1).unwrap();
    let scattered = barrier_scatter(&cfg).apply(&initial_state(&cfg).state).unwrap();
    let h = 1.0 / 2.0_f64.sqrt();
    let (s, c) = (0.1_f64.sin(), 0.1_f64.cos());
    for spin in [SPIN_UP, SPIN_DOWN] {
        assert_close(scattered.amplitudes[MODE_L * 2 + spin], re(h * c), 1e-14);
        assert_close(scattered.amplitudes[MODE_R * 2 + spin], re(h * s), 1e-14);
    }
}

/// Exact forward amplitudes after n periods: coherent spin-up rotation,
/// spin-down decay cosⁿa on the left, fresh cosⁿ⁻¹a·sin a on the right,
/// escape record cosᵏ⁻²a·sin a, and E_1 structurally empty.
#[test]
fn forward_amplitudes_pattern() {
    let alpha = 0.05_f64;
    let cfg = CycleConfig::new(alpha).unwrap();
    let traj = forward_trajectory(&cfg).unwrap();
    let h = 1.0 / 2.0_f64.sqrt();
    let (s, c) = alpha.sin_cos();

    // n = 0 is the initial state exactly.
    assert_close(traj[0].amplitude(&cfg, MODE_L, SPIN_UP), re(h), 1e-15);
    assert_close(traj[0].amplitude(&cfg, MODE_L, SPIN_DOWN), re(h), 1e-15);

    for (n, state) in traj.iter().enumerate().skip(1) {
        assert_eq!(state.cycle, n);
        state.check_invariants(&cfg).unwrap();
        assert!((state.state.norm() - 1.0).abs() < 1e-10);
        let (sn, cn) = (n as f64 * alpha).sin_cos();
        assert_close(state.amplitude(&cfg, MODE_L, SPIN_UP), re(h * cn), 1e-12);
        assert_close(state.amplitude(&cfg, MODE_R, SPIN_UP), re(h * sn), 1e-12);
        assert_close(
            state.amplitude(&cfg, MODE_L, SPIN_DOWN),
            re(h * c.powi(n as i32)),
            1e-12,
        );
        assert_close(
            state.amplitude(&cfg, MODE_R, SPIN_DOWN),
            re(h * c.powi(n as i32 - 1) * s),
            1e-12,
        );
        // Escape record: E_1 empty; E_k holds cos^(k-2) a · sin a / √2.
        assert_close(state.amplitude(&cfg, escape_mode(1), SPIN_DOWN), re(0.0), 1e-15);
        for k in 2..=n {
            assert_close(
                state.amplitude(&cfg, escape_mode(k), SPIN_DOWN),
                re(h * c.powi(k as i32 - 2) * s),
                1e-12,
            );
        }
        for k in (n + 1)..=cfg.n_total {
            assert_close(state.amplitude(&cfg, escape_mode(k), SPIN_DOWN), re(0.0), 1e-15);
        }
    }
}

/// Stepping past n_total runs out of escape slots.
#[test]
fn step_beyond_horizon_errors() {
    let cfg = CycleConfig::with_n_total(0.1, 3).unwrap();
    let traj = forward_trajectory(&cfg).unwrap();
    match step(&cfg, &traj[3]) {
        Err(CycleError::EscapeSlotsExhausted { cycle: 4, n_total: 3 }) => {}
        other => panic!("expected EscapeSlotsExhausted, got {other:?}"),
    }
}

/// Exact-vs-closed-form overlap at the end of the default run, and the
/// right-side spin-up probability at n·alpha ≈ π/2.
#[test]
fn forward_closed_form_comparison() {
    let cfg = CycleConfig::new(0.01).unwrap();
    let traj = forward_trajectory(&cfg).unwrap();
    let n = cfg.n_total;
    let overlap = traj[n]
        .state
        .inner(&closed_form_forward(&cfg, n))
        .unwrap()
        .norm();
    assert!(overlap >= 0.99, "overlap {overlap} < 0.99");
    // Analytic value (1 + cos^(n-1) a)/2.
    let expect = (1.0 + 0.01_f64.cos().powi(n as i32 - 1)) / 2.0;
    assert!((overlap - expect).abs() < 1e-10);

    let p_right_up = traj[n].amplitude(&cfg, MODE_R, SPIN_UP).norm_sqr();
    assert!((p_right_up - 0.5).abs() <= cfg.alpha);
}

/// Backward trajectory: exactly |L,down> at n_total, the closed-form
/// (cos a, sin a) pair one step earlier, and the escape component two
/// steps back; all elements stay normalized and spin-down.
#[test]
fn backward_trajectory_shape() {
    let alpha = 0.05_f64;
    let cfg = CycleConfig::new(alpha).unwrap();
    let bwd = post_select_left(&cfg).unwrap();
    let n = cfg.n_total;
    let (s, c) = alpha.sin_cos();

    let at = |state: &cheshire_core::hilbert::StateVector, mode: usize, spin: usize| {
        state.amplitudes[mode * 2 + spin]
    };

    assert_close(at(&bwd[n], MODE_L, SPIN_DOWN), re(1.0), 1e-15);
    assert!((bwd[n].norm() - 1.0).abs() < 1e-12);

    assert_close(at(&bwd[n - 1], MODE_L, SPIN_DOWN), re(c), 1e-14);
    assert_close(at(&bwd[n - 1], MODE_R, SPIN_DOWN), re(s), 1e-14);

    assert_close(at(&bwd[n - 2], MODE_L, SPIN_DOWN), re(c * c), 1e-14);
    assert_close(at(&bwd[n - 2], MODE_R, SPIN_DOWN), re(c * s), 1e-14);
    assert_close(
        at(&bwd[n - 2], escape_mode(n - 1), SPIN_DOWN),
        re(s),
        1e-14,
    );

    for state in &bwd {
        assert!((state.norm() - 1.0).abs() < 1e-10);
        for mode in 0..(cfg.n_total + 2) {
            assert_close(at(state, mode, SPIN_UP), re(0.0), 1e-15);
        }
    }
}

/// Post-selection statistics at alpha = 0.01: probability 0.5 within 0.02
/// (analytically cos^(2n) a / 2) and near-perfect spin-down purity of the
/// conditional left state.
#[test]
fn post_selection_statistics() {
    let cfg = CycleConfig::new(0.01).unwrap();
    let p = post_selection_probability(&cfg).unwrap();
    assert!((p - 0.5).abs() <= 0.02, "post-selection probability {p}");
    let expect = 0.01_f64.cos().powi(2 * cfg.n_total as i32) / 2.0;
    assert!((p - expect).abs() < 1e-12);

    let traj = forward_trajectory(&cfg).unwrap();
    let last = &traj[cfg.n_total];
    let l_up = last.amplitude(&cfg, MODE_L, SPIN_UP).norm_sqr();
    let l_dn = last.amplitude(&cfg, MODE_L, SPIN_DOWN).norm_sqr();
    let purity = l_dn / (l_up + l_dn);
    assert!(purity >= 1.0 - 3.0 * cfg.alpha, "left spin-down purity {purity}");
}

/// Position-only post-selection: backward seed keeps both spins, and its
/// spin-down weight matches the forward left-side spin purity.
#[test]
fn position_only_post_selection() {
    let cfg = CycleConfig::new(0.01).unwrap();
    let bwd = post_select_position_only(&cfg).unwrap();
    let n = cfg.n_total;
    let seed = &bwd[n];
    assert!((seed.norm() - 1.0).abs() < 1e-12);
    let up = seed.amplitudes[MODE_L * 2 + SPIN_UP].norm_sqr();
    let dn = seed.amplitudes[MODE_L * 2 + SPIN_DOWN].norm_sqr();
    assert!(dn >= 1.0 - 3.0 * cfg.alpha);
    assert!((up + dn - 1.0).abs() < 1e-12);
}

/// Closed-form weak values at alpha = 0.01 for every cycle n ≤ 157:
/// W(sigma_z) = −1, W(pi_L sigma_z) = −cos²a, W(pi_R sigma_z) = −sin²a,
/// W(pi_R sigma_x)(n) = sin a · sin(n a), all at machine precision.
#[test]
fn closed_form_series_values() {
    let alpha = 0.01_f64;
    let cfg = CycleConfig::new(alpha).unwrap();
    assert_eq!(cfg.n_total, 157);
    let (s, c) = alpha.sin_cos();

    let sz = closed_form_weak_series(&cfg, &sigma_op(&cfg, PauliAxis::Z), "sigma_z").unwrap();
    let lz =
        closed_form_weak_series(&cfg, &pi_left_sigma(&cfg, PauliAxis::Z), "pi_L sigma_z").unwrap();
    let rz =
        closed_form_weak_series(&cfg, &pi_right_sigma(&cfg, PauliAxis::Z), "pi_R sigma_z").unwrap();
    let rx =
        closed_form_weak_series(&cfg, &pi_right_sigma(&cfg, PauliAxis::X), "pi_R sigma_x").unwrap();

    for n in 1..=cfg.n_total {
        assert_close(sz.at(n), re(-1.0), 1e-12);
        assert_close(lz.at(n), re(-c * c), 1e-12);
        assert_close(rz.at(n), re(-s * s), 1e-12);
        assert_close(rx.at(n), re(s * (n as f64 * alpha).sin()), 1e-12);
    }
}

/// The exact trajectories reproduce the closed-form series within relative
/// error 5·n·a² at every cycle, for all four series.
#[test]
fn exact_vs_closed_form_bound() {
    let alpha = 0.01_f64;
    let cfg = CycleConfig::new(alpha).unwrap();
    let forward = forward_trajectory(&cfg).unwrap();
    let backward = post_select_left(&cfg).unwrap();

    let ops = [
        (sigma_op(&cfg, PauliAxis::Z), "sigma_z"),
        (pi_left_sigma(&cfg, PauliAxis::Z), "pi_L sigma_z"),
        (pi_right_sigma(&cfg, PauliAxis::Z), "pi_R sigma_z"),
        (pi_right_sigma(&cfg, PauliAxis::X), "pi_R sigma_x"),
    ];
    for (op, label) in &ops {
        let exact = weak_series_from(&cfg, &forward, &backward, op, label).unwrap();
        let closed = closed_form_weak_series(&cfg, op, label).unwrap();
        for n in 1..=cfg.n_total {
            let rel = (exact.at(n) - closed.at(n)).norm() / closed.at(n).norm();
            let bound = 5.0 * n as f64 * alpha * alpha;
            assert!(
                rel <= bound,
                "{label} at n = {n}: relative error {rel} > {bound}"
            );
        }
    }
}

/// The worst-case exact-vs-closed-form gap of the x-current series shrinks
/// monotonically as alpha decreases.
#[test]
fn closed_form_gap_monotone_in_alpha() {
    let mut gaps = Vec::new();
    for &alpha in &[0.05, 0.02, 0.01, 0.005] {
        let cfg = CycleConfig::new(alpha).unwrap();
        let op = pi_right_sigma(&cfg, PauliAxis::X);
        let exact = weak_series(&cfg, &op, "pi_R sigma_x").unwrap();
        let closed = closed_form_weak_series(&cfg, &op, "pi_R sigma_x").unwrap();
        let gap = (1..=cfg.n_total)
            .map(|n| (exact.at(n) - closed.at(n)).norm() / closed.at(n).norm())
            .fold(0.0, f64::max);
        gaps.push(gap);
    }
    for pair in gaps.windows(2) {
        assert!(
            pair[1] < pair[0],
            "gap did not shrink with alpha: {gaps:?}"
        );
    }
    assert!(gaps[0] < 0.1 && gaps[3] > 0.0);
}

/// Cumulative x-spin transfer approaches sin(a)/a; an all-zero series sums
/// to zero.
#[test]
fn cumulative_transfer() {
    for &alpha in &[0.01, 0.05, 0.1] {
        let cfg = CycleConfig::new(alpha).unwrap();
        let op = pi_right_sigma(&cfg, PauliAxis::X);
        let series = weak_series(&cfg, &op, "pi_R sigma_x").unwrap();
        let total = cumulative_spin_transfer(&series);
        let target = spin_transfer_target(alpha);
        assert!(
            (total - target).abs() / target <= 0.05,
            "alpha = {alpha}: transfer {total} vs target {target}"
        );
    }
    let zero = WeakValueSeries {
        operator_label: "zero".into(),
        values: vec![(1, re(0.0)), (2, re(0.0))],
    };
    assert_eq!(cumulative_spin_transfer(&zero), 0.0);
}

/// Quadrature identity W(pi_R sigma_y) = −i·W(pi_R sigma_x): machine-exact
/// for closed forms and the exact model, and the exact y series tracks the
/// closed form within 5·n·a² relative error.
#[test]
fn heisenberg_identity() {
    let cfg = CycleConfig::new(0.01).unwrap();
    let report = heisenberg_consistency(&cfg).unwrap();
    assert!(report.identity_deviation_closed <= 1e-10);
    assert!(report.identity_deviation_exact <= 1e-12);
    assert!(report.max_relative_gap_scaled <= 5.0);

    // No evolution: both currents vanish at cycle 0.
    let forward = forward_trajectory(&cfg).unwrap();
    let backward = post_select_left(&cfg).unwrap();
    let tsv = TwoStateVector::new(forward[0].state.clone(), backward[0].clone(), 0).unwrap();
    assert_close(tsv.weak_value(&pi_right_sigma(&cfg, PauliAxis::X)).unwrap(), re(0.0), 1e-14);
    assert_close(tsv.weak_value(&pi_right_sigma(&cfg, PauliAxis::Y)).unwrap(), re(0.0), 1e-14);
}

/// Projector sum rule at several cycles: left + right + escapes = whole.
#[test]
fn projector_sum_rule() {
    let cfg = CycleConfig::new(0.05).unwrap();
    let forward = forward_trajectory(&cfg).unwrap();
    let backward = post_select_left(&cfg).unwrap();
    let sx = sigma_op(&cfg, PauliAxis::X);
    for n in [1, cfg.n_total / 2, cfg.n_total] {
        let tsv = two_state_at(&forward, &backward, n).unwrap();
        let whole = tsv.weak_value(&sx).unwrap();
        let mut sum = tsv
            .weak_value(&pi_left(&cfg).dot(&sx).unwrap())
            .unwrap()
            + tsv.weak_value(&pi_right(&cfg).dot(&sx).unwrap()).unwrap();
        for k in 1..=cfg.n_total {
            sum += tsv
                .weak_value(&pi_escape(&cfg, k).unwrap().dot(&sx).unwrap())
                .unwrap();
        }
        assert_close(sum, whole, 1e-12);
    }
}

/// Zeno contrast: the spin-up sector vacates the left side while spin-down
/// survives there; a corrupted round-trip phase destroys the accumulation.
#[test]
fn zeno_contrast_and_corruption() {
    let cfg = CycleConfig::new(0.01).unwrap();
    let contrast = zeno_contrast(&cfg).unwrap();
    assert!(contrast.up_left_conditional <= cfg.alpha);
    assert!(contrast.down_left_conditional >= 1.0 - 2.0 * cfg.alpha);

    let corrupted = CycleConfig {
        round_trip_phase: C64::new(-1.0, 0.0),
        ..cfg
    };
    let broken = zeno_contrast(&corrupted).unwrap();
    assert!(
        broken.up_left_conditional > 0.9,
        "alternating phase should freeze the spin-up sector on the left, got {}",
        broken.up_left_conditional
    );
}

/// Discarding escapes (track_escapes = false) loses exactly the escaped
/// weight: the norm decays while L/R amplitudes match the tracked run.
#[test]
fn lossy_bookkeeping() {
    let tracked = CycleConfig::new(0.1).unwrap();
    let lossy = CycleConfig {
        track_escapes: false,
        ..tracked.clone()
    };
    let a = forward_trajectory(&tracked).unwrap();
    let b = forward_trajectory(&lossy).unwrap();
    let n = tracked.n_total;
    assert!((a[n].state.norm() - 1.0).abs() < 1e-12);
    assert!(b[n].state.norm() < 1.0 - 1e-4);
    for mode in [MODE_L, MODE_R] {
        for spin in [SPIN_UP, SPIN_DOWN] {
            assert_close(
                b[n].amplitude(&lossy, mode, spin),
                a[n].amplitude(&tracked, mode, spin),
                1e-13,
            );
        }
    }
    // Lost weight equals the tracked escape weight.
    let escaped: f64 = (1..=n)
        .map(|k| a[n].amplitude(&tracked, escape_mode(k), SPIN_DOWN).norm_sqr())
        .sum();
    assert!((b[n].state.norm().powi(2) + escaped - 1.0).abs() < 1e-12);
}
