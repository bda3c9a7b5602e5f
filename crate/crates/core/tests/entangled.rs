use cheshire_core::cycle::{CycleError, MODE_L, MODE_R};
use cheshire_core::entangled::{
    backward_trajectory, bell_fidelity, entangled_weak_series, entanglement_entropy, escape_mode,
    forward_trajectory, initial_state, one_period_map, pi_escape, pi_left, pi_right,
    post_select_electron_left, sigma_first, sigma_pair, sigma_second, step2, BellReading,
    EntangledConfig, EntangledState,
};
use cheshire_core::hilbert::{PauliAxis, StateVector};
use cheshire_core::C64;
use ndarray::Array1;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Closed-form post-selected two-spin data: Bell fidelity and entropy from
/// the exact sector amplitudes c_n = cos(n·alpha) (parallel) and cosⁿalpha
/// (antiparallel).
fn closed_form_entropy(alpha: f64, n: usize) -> f64 {
    let r = (n as f64 * alpha).cos() / alpha.cos().powi(n as i32);
    let dev = r / (1.0 + r * r);
    let mut h = 0.0;
    for lambda in [0.5 + dev, 0.5 - dev] {
        if lambda > 0.0 {
            h -= lambda * lambda.log2();
        }
    }
    h
}

#[test]
fn forward_amplitude_pattern() {
    let alpha = 0.05;
    let config = EntangledConfig::with_n_total(alpha, 9).unwrap();
    let states = forward_trajectory(&config).unwrap();
    let (s, c) = alpha.sin_cos();
    for (n, state) in states.iter().enumerate() {
        assert_eq!(state.cycle, n);
        assert!(close(state.state.norm(), 1.0, 1e-12));
        let na = n as f64 * alpha;
        for (s1, s2) in [(0usize, 0usize), (1, 1)] {
            // Parallel sectors rotate coherently and never escape.
            assert!(close(state.amplitude(&config, MODE_L, s1, s2).re, 0.5 * na.cos(), 1e-12));
            assert!(close(state.amplitude(&config, MODE_R, s1, s2).re, 0.5 * na.sin(), 1e-12));
            for k in 1..=config.n_total {
                assert_eq!(
                    state.amplitude(&config, escape_mode(k), s1, s2),
                    C64::new(0.0, 0.0)
                );
            }
        }
        for (s1, s2) in [(0usize, 1usize), (1, 0)] {
            // Antiparallel sectors leak through the wall each period.
            assert!(close(
                state.amplitude(&config, MODE_L, s1, s2).re,
                0.5 * c.powi(n as i32),
                1e-12
            ));
            let expect_r = if n == 0 { 0.0 } else { 0.5 * c.powi(n as i32 - 1) * s };
            assert!(close(state.amplitude(&config, MODE_R, s1, s2).re, expect_r, 1e-12));
            assert!(state.amplitude(&config, MODE_R, s1, s2).norm() <= s + 1e-12);
            assert_eq!(state.amplitude(&config, escape_mode(1), s1, s2), C64::new(0.0, 0.0));
            for k in 2..=config.n_total {
                let expect = if k <= n { 0.5 * c.powi(k as i32 - 2) * s } else { 0.0 };
                assert!(close(state.amplitude(&config, escape_mode(k), s1, s2).re, expect, 1e-12));
            }
        }
    }
}

#[test]
fn pure_antiparallel_decay() {
    let alpha = 0.08;
    let config = EntangledConfig::with_n_total(alpha, 12).unwrap();
    let mut state = EntangledState {
        cycle: 0,
        state: StateVector::basis_state(config.layout(), &[MODE_L, 0, 1]).unwrap(),
    };
    for n in 1..=config.n_total {
        state = step2(&config, &state).unwrap();
        assert!(close(
            state.amplitude(&config, MODE_L, 0, 1).re,
            alpha.cos().powi(n as i32),
            1e-12
        ));
        assert!(close(state.state.norm(), 1.0, 1e-12));
    }
    // Everything that left L sits on R plus the escape ladder.
    let on_l: f64 = state.amplitude(&config, MODE_L, 0, 1).norm_sqr();
    let elsewhere: f64 = state.state.norm().powi(2) - on_l;
    assert!(close(elsewhere, 1.0 - alpha.cos().powi(24), 1e-12));
    // n = 0 means untouched input: the trajectory starts at the exact
    // initial state.
    let trajectory = forward_trajectory(&config).unwrap();
    assert_eq!(trajectory[0].cycle, 0);
    assert_eq!(
        trajectory[0].state.amplitudes,
        initial_state(&config).state.amplitudes
    );
}

#[test]
fn step_beyond_horizon_errors() {
    let config = EntangledConfig::with_n_total(0.1, 3).unwrap();
    let mut state = initial_state(&config);
    for _ in 0..3 {
        state = step2(&config, &state).unwrap();
    }
    assert!(matches!(
        step2(&config, &state),
        Err(CycleError::EscapeSlotsExhausted { cycle: 4, n_total: 3 })
    ));
}

#[test]
fn one_period_map_unitary_with_sector_blocks() {
    let config = EntangledConfig::with_n_total(0.07, 5).unwrap();
    let map = one_period_map(&config, 2).unwrap();
    assert!(map.is_unitary(1e-12));
    // The wall couples only position to the z-spin sector, so the map never
    // mixes distinct (spin1, spin2) assignments.
    let dim = config.layout().dim();
    for i in 0..dim {
        for j in 0..dim {
            if (i % 4) != (j % 4) {
                assert_eq!(map.matrix[(i, j)], C64::new(0.0, 0.0));
            }
        }
    }
    // Map applied to the initial state reproduces step2.
    let state = initial_state(&config);
    let via_map = map.apply(&state.state).unwrap();
    let via_step = step2(&config, &state).unwrap();
    for (a, b) in via_map.amplitudes.iter().zip(via_step.state.amplitudes.iter()) {
        assert!((a - b).norm() < 1e-13);
    }
}

#[test]
fn exchange_symmetry() {
    let config = EntangledConfig::new(0.1).unwrap();
    let states = forward_trajectory(&config).unwrap();
    for state in &states {
        for mode in 0..config.n_total + 2 {
            let a = state.amplitude(&config, mode, 0, 1);
            let b = state.amplitude(&config, mode, 1, 0);
            assert_eq!(a, b);
        }
    }
    let last = post_select_electron_left(&config, states.last().unwrap()).unwrap();
    assert_eq!(last.amplitudes[1], last.amplitudes[2]);
    assert_eq!(last.amplitudes[0], last.amplitudes[3]);
}

#[test]
fn post_selection_bell_fidelity_and_entropy() {
    let config = EntangledConfig::new(0.01).unwrap();
    let n = config.n_total;
    assert_eq!(n, 157);
    let states = forward_trajectory(&config).unwrap();

    // At n = 0 the projection returns the product state: zero entropy.
    let at_zero = post_select_electron_left(&config, &states[0]).unwrap();
    assert!(entanglement_entropy(&at_zero).unwrap().abs() <= 1e-12);
    assert!(close(bell_fidelity(&at_zero, BellReading::Antiparallel).unwrap(), 0.5, 1e-12));

    // At n_total (n·alpha ≈ π/2) the spins are nearly maximally entangled.
    let last = post_select_electron_left(&config, &states[n]).unwrap();
    let fid_anti = bell_fidelity(&last, BellReading::Antiparallel).unwrap();
    let fid_par = bell_fidelity(&last, BellReading::Parallel).unwrap();
    let entropy = entanglement_entropy(&last).unwrap();
    assert!(fid_anti >= 0.99);
    assert!(entropy >= 0.99);
    assert!(fid_par <= 0.01);

    // Closed forms from the exact sector amplitudes.
    let c_n = (n as f64 * 0.01).cos();
    let c_pow = 0.01_f64.cos().powi(n as i32);
    let fid_expect = c_pow * c_pow / (c_n * c_n + c_pow * c_pow);
    assert!(close(fid_anti, fid_expect, 1e-12));
    assert!(close(fid_par, 1.0 - fid_expect, 1e-12));
    assert!(close(entropy, closed_form_entropy(0.01, n), 1e-10));

    // Halfway through (n·alpha = π/4) the entanglement is strictly partial.
    let halfway = post_select_electron_left(&config, &states[79]).unwrap();
    let h = entanglement_entropy(&halfway).unwrap();
    assert!(h > 0.05 && h < 0.95);
    assert!(close(h, closed_form_entropy(0.01, 79), 1e-10));
    assert!(close(h, 0.187837, 1e-6));
}

#[test]
fn entropy_monotone_in_cycle_count() {
    for alpha in [0.05, 0.01] {
        let config = EntangledConfig::new(alpha).unwrap();
        let states = forward_trajectory(&config).unwrap();
        let entropies: Vec<f64> = states
            .iter()
            .map(|s| entanglement_entropy(&post_select_electron_left(&config, s).unwrap()).unwrap())
            .collect();
        for w in entropies.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        assert!(entropies[0].abs() <= 1e-12);
        assert!(entropies[1].abs() <= 1e-12);
        assert!(entropies[config.n_total] > 0.9);
    }
}

#[test]
fn zero_left_amplitude_is_rejected() {
    let config = EntangledConfig::with_n_total(0.1, 3).unwrap();
    let state = EntangledState {
        cycle: 0,
        state: StateVector::basis_state(config.layout(), &[MODE_R, 0, 0]).unwrap(),
    };
    assert!(matches!(
        post_select_electron_left(&config, &state),
        Err(CycleError::ZeroLeftAmplitude)
    ));
}

#[test]
fn backward_trajectory_shape() {
    let config = EntangledConfig::new(0.1).unwrap();
    let n = config.n_total;
    let backward = backward_trajectory(&config).unwrap();
    assert_eq!(backward.len(), n + 1);
    for state in &backward {
        assert!(close(state.norm(), 1.0, 1e-12));
    }
    // Seed: left-mode projection of the forward end state, i.e. the Bell-like
    // mixture c_N (↑↑ + ↓↓) + cosᴺalpha (↑↓ + ↑↓) normalized.
    let c_n = (n as f64 * 0.1).cos();
    let c_pow = 0.1_f64.cos().powi(n as i32);
    let z = (2.0 * (c_n * c_n + c_pow * c_pow)).sqrt();
    let seed = &backward[n];
    let get = |mode: usize, s1: usize, s2: usize| seed.amplitudes[(mode * 2 + s1) * 2 + s2];
    assert!(close(get(MODE_L, 0, 0).re, c_n / z, 1e-12));
    assert!(close(get(MODE_L, 1, 1).re, c_n / z, 1e-12));
    assert!(close(get(MODE_L, 0, 1).re, c_pow / z, 1e-12));
    assert!(close(get(MODE_L, 1, 0).re, c_pow / z, 1e-12));
    assert!(close(get(MODE_R, 0, 0).norm(), 0.0, 1e-12));
}

#[test]
fn weak_series_identity_and_sum_rule() {
    let config = EntangledConfig::new(0.1).unwrap();
    let ident = cheshire_core::hilbert::Operator::identity(config.layout());
    let w_id = entangled_weak_series(&config, &ident, "I").unwrap();
    for (_, v) in &w_id.values {
        assert!((v - C64::new(1.0, 0.0)).norm() <= 1e-12);
    }
    let mut sums = vec![C64::new(0.0, 0.0); config.n_total];
    let mut projectors = vec![pi_left(&config), pi_right(&config)];
    for k in 1..=config.n_total {
        projectors.push(pi_escape(&config, k).unwrap());
    }
    for p in &projectors {
        let series = entangled_weak_series(&config, p, "pi").unwrap();
        for (i, (_, v)) in series.values.iter().enumerate() {
            sums[i] += v;
        }
    }
    for sum in sums {
        assert!((sum - C64::new(1.0, 0.0)).norm() <= 1e-10);
    }
}

#[test]
fn entangled_current_grows_from_nothing() {
    let config = EntangledConfig::new(0.01).unwrap();
    let n = config.n_total;
    let s2 = 0.01_f64.sin().powi(2);
    let pr = pi_right(&config);
    let zz_op = pr.dot(&sigma_pair(&config, PauliAxis::Z)).unwrap();
    let xx_op = pr.dot(&sigma_pair(&config, PauliAxis::X)).unwrap();
    let w_pr = entangled_weak_series(&config, &pr, "pi_R").unwrap();
    let w_zz = entangled_weak_series(&config, &zz_op, "pi_R zz").unwrap();
    let w_xx = entangled_weak_series(&config, &xx_op, "pi_R xx").unwrap();

    // Both spins start along +x and every map commutes with σ_x⊗σ_x, so the
    // correlated current coincides with the bare right-side presence.
    for ((_, a), (_, b)) in w_xx.values.iter().zip(&w_pr.values) {
        assert!((a - b).norm() <= 1e-14);
    }

    // The real series start near zero (continuation of "nothing at n = 0")
    // and build up gradually toward midrun.
    let half = n.div_ceil(2);
    for series in [&w_xx, &w_zz] {
        for (_, v) in &series.values {
            assert!(v.im.abs() <= 1e-14);
        }
        for i in 1..half {
            assert!(series.values[i].1.re >= series.values[i - 1].1.re - 1e-14);
        }
        // Symmetric arch: the drain mirrors the build-up.
        for i in 0..n {
            assert!((series.values[i].1 - series.values[n - 1 - i].1).norm() <= 1e-12);
        }
    }
    let xx_first = w_xx.values[0].1.re;
    let xx_peak = w_xx.values[half - 1].1.re;
    assert!(xx_first.abs() <= 3.0 * s2);
    assert!(xx_peak >= 3.0 * xx_first);

    // The zz correlator starts at −sin²alpha (antiparallel sectors dominate
    // the right side early on) and climbs by the parallel-sector arch.
    let zz_first = w_zz.values[0].1.re;
    let zz_peak = w_zz.values[half - 1].1.re;
    assert!((zz_first + s2).abs() <= 0.1 * s2);
    assert!(zz_peak - zz_first >= 3.5e-4);
}

#[test]
fn single_spin_current_tracks_closed_form() {
    let config = EntangledConfig::new(0.01).unwrap();
    let s = 0.01_f64.sin();
    let op = pi_right(&config)
        .dot(&sigma_first(&config, PauliAxis::X))
        .unwrap();
    let series = entangled_weak_series(&config, &op, "pi_R x1").unwrap();
    let mut prev = f64::MIN;
    for (cycle, v) in &series.values {
        let expect = s * (*cycle as f64 * 0.01).sin();
        let rel = (v.re - expect).abs() / expect;
        assert!(rel <= 0.1);
        if *cycle >= 10 {
            assert!(rel <= 0.02);
        }
        assert!(v.re >= prev - 1e-14);
        prev = v.re;
    }
    // The two single-spin currents agree by exchange symmetry.
    let op2 = pi_right(&config)
        .dot(&sigma_second(&config, PauliAxis::X))
        .unwrap();
    let series2 = entangled_weak_series(&config, &op2, "pi_R x2").unwrap();
    for ((_, a), (_, b)) in series.values.iter().zip(&series2.values) {
        assert!((a - b).norm() <= 1e-13);
    }
}

#[test]
fn config_validation() {
    assert!(EntangledConfig::new(0.0).is_err());
    assert!(EntangledConfig::new(0.25).is_err());
    assert!(EntangledConfig::with_n_total(0.1, 0).is_err());
    let mut config = EntangledConfig::new(0.1).unwrap();
    config.round_trip_phase = C64::new(2.0, 0.0);
    assert!(config.validate().is_err());
    let config = EntangledConfig::new(0.1).unwrap();
    assert_eq!(config.layout().dim(), (config.n_total + 2) * 4);
    // Escape amplitudes live where the layout says they do.
    let state = initial_state(&config);
    assert_eq!(state.state.amplitudes.len(), config.layout().dim());
    let amps: Array1<C64> = state.state.amplitudes;
    assert_eq!(amps[0], C64::new(0.5, 0.0));
}
