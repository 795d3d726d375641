use double_delta::bound_states::{bound_energies, WellPair};
use double_delta::numerics::{bisect, dedupe_and_sort, Bracket};
use double_delta::scattering::{amplitudes, coefficients};
use double_delta::{energy_of_k, k_of_energy, DeltaPair};
use num_complex::Complex64;
use proptest::prelude::*;

fn strength() -> impl Strategy<Value = f64> {
    -40.0..40.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn unitarity(v1 in strength(), v2 in strength(), a in 0.01..10.0f64, e in 1e-8..1e4f64) {
        let row = coefficients(&DeltaPair::new(v1, v2, a).unwrap(), e).unwrap();
        prop_assert!((row.reflection.unwrap() + row.transmission - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transmission_is_mirror_invariant(v1 in strength(), v2 in strength(), a in 0.01..10.0f64, e in 1e-4..1e3f64) {
        let pot = DeltaPair::new(v1, v2, a).unwrap();
        let t = coefficients(&pot, e).unwrap().transmission;
        let t_swapped = coefficients(&pot.swapped(), e).unwrap().transmission;
        prop_assert!((t - t_swapped).abs() < 1e-12);
    }

    #[test]
    fn amplitude_norms_sum_to_one(v1 in strength(), v2 in strength(), a in 0.01..10.0f64, k in 1e-3..30.0f64) {
        let amp = amplitudes(&DeltaPair::new(v1, v2, a).unwrap(), k).unwrap();
        prop_assert!((amp.rho.norm_sqr() + amp.tau.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn energy_round_trip(e in -1e4..1e4f64) {
        let back = energy_of_k(k_of_energy(e));
        prop_assert!((back.re - e).abs() <= 1e-12 * e.abs().max(1.0));
        prop_assert_eq!(back.im, 0.0);
    }

    #[test]
    fn dedupe_is_idempotent(points in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 0..40), tol in 1e-8..0.5f64) {
        let roots: Vec<Complex64> = points.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let once = dedupe_and_sort(&roots, tol);
        prop_assert_eq!(dedupe_and_sort(&once, tol), once.clone());
        prop_assert!(once.windows(2).all(|w| w[0].re <= w[1].re));
    }

    #[test]
    fn bisection_stays_in_bracket(c in -5.0..5.0f64, lo in -10.0..-5.0f64, hi in 5.0..10.0f64) {
        let f = |x: f64| (x - c) * (1.0 + x * x);
        let b = Bracket::new(f, lo, hi).unwrap();
        let r = bisect(f, &b, 1e-12);
        prop_assert!(b.contains(r.root.re));
        prop_assert!((r.root.re - c).abs() < 1e-10);
    }

    #[test]
    fn ground_state_deepens_with_depth(u1 in 0.1..30.0f64, u2 in 0.1..30.0f64, a in 0.05..5.0f64, du in 0.01..5.0f64) {
        let e0 = bound_energies(&WellPair::new(u1, u2, a).unwrap()).unwrap()[0];
        let e0_deeper = bound_energies(&WellPair::new(u1, u2 + du, a).unwrap()).unwrap()[0];
        prop_assert!(e0_deeper <= e0 + 1e-12 * e0.abs());
    }

    #[test]
    fn ground_state_between_single_and_merged(u1 in 0.1..30.0f64, u2 in 0.1..30.0f64, a in 0.01..20.0f64) {
        let e0 = bound_energies(&WellPair::new(u1, u2, a).unwrap()).unwrap()[0];
        let single = -0.25 * u1.max(u2).powi(2);
        let merged = -0.25 * (u1 + u2).powi(2);
        prop_assert!(e0 <= single * (1.0 - 1e-12) + 1e-12 && e0 >= merged * (1.0 + 1e-12));
    }

    #[test]
    fn level_count_follows_threshold(u1 in 0.5..20.0f64, u2 in 0.5..20.0f64, a in 0.01..5.0f64) {
        let a_star = 1.0 / u1 + 1.0 / u2;
        prop_assume!((a - a_star).abs() > 1e-6);
        let n = bound_energies(&WellPair::new(u1, u2, a).unwrap()).unwrap().len();
        prop_assert_eq!(n, if a > a_star { 2 } else { 1 });
    }
}
