mod common;

use dirac_barrier::oracle::solve_amplitudes;
use dirac_barrier::regime::boundary_energies;
use dirac_barrier::transfer::factor_determinants;
use dirac_barrier::{
    alpha_beta, classify, full_matrix, scatter, wave_vector, Error, MatrixRange, PotentialConfig,
    RegionId, Zone,
};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = PotentialConfig> {
    (0.5f64..2.0, 2.2f64..5.0, 2.2f64..6.0, 0.3f64..3.0, 0.3f64..3.0).prop_map(
        |(m, vm, gap, ap, am)| {
            let v_minus = vm * m;
            let v_plus = v_minus + gap * m;
            PotentialConfig::new(m, v_plus, v_minus, ap / m, am / m).unwrap()
        },
    )
}

/// Configuration plus an energy in `(1.001 m, V+ + 4 m)` clear of every
/// boundary energy.
fn config_and_energy() -> impl Strategy<Value = (PotentialConfig, f64)> {
    config().prop_flat_map(|cfg| {
        let m = cfg.mass();
        (Just(cfg), 1.001 * m..cfg.v_plus() + 4.0 * m)
    })
    .prop_filter("clear of boundary energies", |(cfg, e)| {
        boundary_energies(cfg).iter().all(|b| (e - b).abs() > 1e-6 * cfg.mass())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn dispersion_relation((cfg, e) in config_and_energy()) {
        let m = cfg.mass();
        for region in RegionId::ALL {
            let k = wave_vector(e, region, &cfg).unwrap();
            let de = e - cfg.potential(region);
            let lhs = k * k + de * de;
            prop_assert!((lhs.re - m * m).abs() < 1e-9 * m * m && lhs.im.abs() < 1e-9 * m * m);
            prop_assert!(k.re >= 0.0 && k.im >= 0.0);
            prop_assert!(k.re == 0.0 || k.im == 0.0);
        }
    }

    #[test]
    fn alpha_beta_product_is_unit((cfg, e) in config_and_energy()) {
        for region in RegionId::ALL {
            let (a, b) = alpha_beta(e, region, &cfg).unwrap();
            let p = a * b;
            let de = e - cfg.potential(region);
            let expected = if de.abs() < cfg.mass() { 1.0 } else { -1.0 };
            prop_assert!((p.re - expected).abs() < 1e-12 && p.im.abs() < 1e-12, "{p} at {e}");
        }
    }

    #[test]
    fn classification_is_consistent((cfg, e) in config_and_energy()) {
        let (range, zone) = classify(e, &cfg).unwrap();
        let (lo, hi) = range.bounds(&cfg);
        prop_assert!(e > lo && e < hi);
        prop_assert!(zone.contains(e, &cfg));
        let expected_range = if e < cfg.v_minus() {
            MatrixRange::RangeI
        } else if e < cfg.v_plus() {
            MatrixRange::RangeII
        } else {
            MatrixRange::RangeIII
        };
        prop_assert_eq!(range, expected_range);
        prop_assert_eq!(Zone::ALL.iter().filter(|z| z.contains(e, &cfg)).count(), 1);
    }

    #[test]
    fn flux_and_symmetry((cfg, e) in config_and_energy()) {
        let s = scatter(e, &cfg).unwrap();
        prop_assert!((s.t2 + s.r2 - 1.0).abs() < 1e-10, "flux {} at {e}", s.t2 + s.r2);
        let m = full_matrix(e, &cfg).unwrap();
        let (diag, off) = m.conjugate_symmetry_deviation();
        let scale = m.max_norm();
        prop_assert!(diag <= 1e-10 * scale.max(1.0));
        prop_assert!(off <= 1e-10 * scale.max(1.0));
        prop_assert!((s.t2 - 1.0 / (1.0 + m.m21.norm_sqr())).abs() < 1e-10);
    }

    #[test]
    fn factor_determinants_multiply_to_one((cfg, e) in config_and_energy()) {
        let dets = factor_determinants(e, &cfg).unwrap();
        let prod = dets.iter().product::<dirac_barrier::Complex64>();
        prop_assert!((prod - 1.0).norm() < 1e-12);
    }

    #[test]
    fn scaling_leaves_transmission_unchanged((cfg, e) in config_and_energy(), lambda in 0.25f64..4.0) {
        let scaled = cfg.rescaled(lambda).unwrap();
        let a = scatter(e, &cfg).unwrap();
        let b = scatter(e * lambda, &scaled).unwrap();
        prop_assert!((a.t - b.t).norm() < 1e-9, "{} vs {}", a.t, b.t);
        prop_assert_eq!(a.zone, b.zone);
    }

    #[test]
    fn matches_boundary_matching((cfg, e) in config_and_energy()) {
        let t = scatter(e, &cfg).unwrap().t;
        let oracle = solve_amplitudes(e, &cfg).unwrap();
        prop_assert!((t - oracle.transmission()).norm() < 1e-10);
        prop_assert!((t.norm_sqr() + oracle.reflection().norm_sqr() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn oracle_agreement_across_all_ranges() {
    use rand::{Rng, SeedableRng};
    let cfg = common::reference();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut per_range = [0usize; 3];
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 1000 {
        let e: f64 = rng.gen_range(1.001..12.0);
        if boundary_energies(&cfg).iter().any(|b| (e - b).abs() < 1e-6) {
            continue;
        }
        let s = scatter(e, &cfg).unwrap();
        per_range[s.range as usize] += 1;
        worst = worst.max((s.t - solve_amplitudes(e, &cfg).unwrap().transmission()).norm());
        n += 1;
    }
    assert!(worst < 1e-10, "worst {worst:e}");
    assert!(per_range.iter().all(|&c| c > 100), "{per_range:?}");
}

#[test]
fn continuous_across_range_boundaries() {
    let cfg = common::reference();
    for v in [cfg.v_minus(), cfg.v_plus()] {
        let below = scatter(v - 1e-6, &cfg).unwrap().t;
        let above = scatter(v + 1e-6, &cfg).unwrap().t;
        assert!((below - above).norm() < 1e-4, "jump at {v}: {below} vs {above}");
    }
}

#[test]
fn rejects_energies_at_and_below_threshold() {
    let cfg = common::reference();
    assert!(matches!(scatter(0.9, &cfg), Err(Error::BelowThreshold { .. })));
    for e in boundary_energies(&cfg) {
        assert!(scatter(e, &cfg).is_err(), "{e}");
    }
}
