//! Checks against values computed outside this crate (50-digit arithmetic)
//! and against an argument-principle count of the pole function's zeros.

use std::f64::consts::PI;

use double_delta::bound_states::{bound_energies, wall_limit_eigenvalue, WellPair};
use double_delta::complex_spectra::{
    hardbox_even_eigenvalues, perfect_transmission_energies, resonance_residual, resonances,
};
use double_delta::DeltaPair;
use num_complex::Complex64;

fn pair(v1: f64, v2: f64, a: f64) -> DeltaPair {
    DeltaPair::new(v1, v2, a).unwrap()
}

/// Zeros of `f` inside the rectangle, from the total change of `arg f` along
/// its boundary. `n` samples per side.
fn winding_number<F: Fn(Complex64) -> Complex64>(f: F, re: (f64, f64), im: (f64, f64), n: usize) -> i64 {
    let corners = [
        Complex64::new(re.0, im.0),
        Complex64::new(re.1, im.0),
        Complex64::new(re.1, im.1),
        Complex64::new(re.0, im.1),
    ];
    let mut total = 0.0;
    let mut prev = f(corners[0]).arg();
    for side in 0..4 {
        let (from, to) = (corners[side], corners[(side + 1) % 4]);
        for j in 1..=n {
            let z = from + (to - from) * (j as f64 / n as f64);
            let arg = f(z).arg();
            let mut d = arg - prev;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            total += d;
            prev = arg;
        }
    }
    (total / (2.0 * PI)).round() as i64
}

#[test]
fn winding_counts_polynomial_zeros() {
    let f = |z: Complex64| (z - Complex64::new(1.0, -1.0)) * (z - Complex64::new(2.0, -0.5)) * (z + 3.0);
    assert_eq!(winding_number(f, (0.0, 3.0), (-2.0, 0.0), 2000), 2);
    assert_eq!(winding_number(f, (-4.0, 3.0), (-2.0, 1.0), 2000), 3);
    assert_eq!(winding_number(f, (4.0, 5.0), (-2.0, 1.0), 2000), 0);
}

#[test]
fn resonance_count_matches_argument_principle() {
    for (v1, v2, a) in [(3.0, 3.0, 1.0), (-3.0, 2.9, 1.0), (30.0, 29.0, 1.0), (1.0, 4.0, 2.0)] {
        let pot = pair(v1, v2, a);
        let (re, im) = ((0.05, 12.0), (-6.0, -0.001));
        let expected = winding_number(|k| resonance_residual(&pot, k), re, im, 40_000);
        let found = resonances(&pot, 8)
            .unwrap()
            .iter()
            .filter(|r| r.k.re() > re.0 && r.k.re() < re.1 && r.k.im() > im.0 && r.k.im() < im.1)
            .count() as i64;
        assert_eq!(found, expected, "({v1}, {v2}, {a})");
        assert!(expected >= 3);
    }
}

#[test]
fn symmetric_wells_bound_states() {
    let e = bound_energies(&WellPair::new(5.0, 5.0, 1.0).unwrap()).unwrap();
    assert!((e[0] + 7.14316001160411).abs() < 1e-10);
    assert!((e[1] + 4.98009160091279).abs() < 1e-10);
}

#[test]
fn well_next_to_barrier() {
    let e = bound_energies(&WellPair::new(5.0, -5.0, 1.0).unwrap()).unwrap();
    assert_eq!(e.len(), 1);
    assert!((e[0] + 6.20715869392992).abs() < 1e-10);
}

#[test]
fn far_apart_wells_are_independent() {
    let e = bound_energies(&WellPair::new(11.0, 12.0, 10.0).unwrap()).unwrap();
    assert!((e[0] + 36.0).abs() < 1e-9);
    assert!((e[1] + 30.25).abs() < 1e-9);
}

#[test]
fn wall_limit_value() {
    let e = wall_limit_eigenvalue(4.0, 1.0).unwrap();
    assert!((e + 3.84295329311213).abs() < 1e-11);
}

#[test]
fn first_resonance_of_symmetric_barriers() {
    let r = resonances(&pair(3.0, 3.0, 1.0), 1).unwrap()[0];
    assert!((r.k.re() - 2.05071268184229).abs() < 1e-10);
    assert!((r.k.im() + 0.432594753007865).abs() < 1e-10);
}

#[test]
fn first_pt_of_symmetric_wells() {
    let pt = perfect_transmission_energies(&pair(-5.0, -5.0, 1.0), 1).unwrap();
    assert!((pt[0].k.re() - 4.172596710659593).abs() < 1e-10);
    assert!((pt[0].energy.re - 17.4105633098073).abs() < 1e-9);
}

#[test]
fn hardbox_levels() {
    let expected = [4.72899836465117, 25.0364658165102, 64.6168834697278, 123.866736940071];
    let got = hardbox_even_eigenvalues(3.0, 1.0, 4).unwrap();
    for (g, e) in got.iter().zip(expected) {
        assert!((g - e).abs() < 1e-9, "{g} vs {e}");
    }
}

#[test]
fn deep_resonance_string_has_no_holes() {
    // Short separation and a weak second delta push the string to Im k ≈ -40.
    let pot = pair(3.69462318720378, -0.20806788185363623, 0.13527296430902944);
    let res = resonances(&pot, 6).unwrap();
    for w in res.windows(2) {
        assert!(w[1].k.re() - w[0].k.re() < 1.5 * PI / pot.a());
    }
    assert!((res[3].k.re() - 113.5795995979731).abs() < 1e-8);
}
