//! Reflection and transmission through the double delta potential.
//!
//! With `ψ = A e^{ikx} + B e^{-ikx}` on the left and `F e^{ikx}` on the right,
//! the amplitudes are `ρ = B/A` and `τ = F/A`:
//!
//! ```text
//! ρ = [2ik(v1 e^{-ika} + v2 e^{ika}) + 2i v1 v2 sin ka] / D
//! τ = -4k² e^{-ika} / D
//! D = (2ik - v1)(2ik - v2) e^{-ika} - v1 v2 e^{ika}
//! ```
//!
//! `D e^{ika}` is evaluated as `-4k² - 2ik(v1 + v2) - v1 v2 (e^{2ika} - 1)` with
//! an `expm1`, which keeps the `k -> 0` limit accurate where both `ρ` and `τ`
//! turn into `0/0`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::potential::{ComplexWaveNumber, DeltaPair};

/// Denominators smaller than this are treated as a pole.
pub const POLE_TOL: f64 = 1e-14;

/// Relative tolerance for landing on a zero-energy critical manifold.
pub const CRITICAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub rho: Complex64,
    pub tau: Complex64,
}

impl AmplitudePair {
    pub fn reflection(&self) -> f64 {
        self.rho.norm_sqr()
    }

    pub fn transmission(&self) -> f64 {
        self.tau.norm_sqr()
    }
}

/// One row of an energy scan. `reflection` is `None` below threshold, where
/// only the continued transmission is reported. A pole shows up as an
/// infinite transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub energy: f64,
    pub reflection: Option<f64>,
    pub transmission: f64,
}

/// `e^z - 1` without cancellation for small `|z|`.
pub(crate) fn expm1c(z: Complex64) -> Complex64 {
    let half = (0.5 * z.im).sin();
    let cis_m1 = Complex64::new(-2.0 * half * half, z.im.sin());
    let growth = z.re.exp_m1();
    Complex64::new(growth, 0.0) * (cis_m1 + 1.0) + cis_m1
}

/// `D e^{ika} = (2ik - v1)(2ik - v2) - v1 v2 e^{2ika}`. Its zeros are the poles
/// of both amplitudes: bound states at `k = ip`, resonances below the real axis.
pub fn pole_function(pot: &DeltaPair, k: Complex64) -> Complex64 {
    let (v1, v2, a) = (pot.v1(), pot.v2(), pot.a());
    let i = Complex64::i();
    -4.0 * k * k - 2.0 * i * k * (v1 + v2) - v1 * v2 * expm1c(2.0 * i * k * a)
}

/// `d/dk` of [`pole_function`].
pub fn pole_function_derivative(pot: &DeltaPair, k: Complex64) -> Complex64 {
    let (v1, v2, a) = (pot.v1(), pot.v2(), pot.a());
    let i = Complex64::i();
    -8.0 * k - 2.0 * i * (v1 + v2) - 2.0 * i * a * v1 * v2 * (2.0 * i * k * a).exp()
}

/// Numerator of `ρ`, whose zeros are the perfect-transmission points.
pub fn reflection_numerator(pot: &DeltaPair, k: Complex64) -> Complex64 {
    let (v1, v2, a) = (pot.v1(), pot.v2(), pot.a());
    let i = Complex64::i();
    let ika = i * k * a;
    2.0 * i * k * (v1 * (-ika).exp() + v2 * ika.exp()) + 2.0 * i * v1 * v2 * (k * a).sin()
}

/// `d/dk` of [`reflection_numerator`].
pub fn reflection_numerator_derivative(pot: &DeltaPair, k: Complex64) -> Complex64 {
    let (v1, v2, a) = (pot.v1(), pot.v2(), pot.a());
    let i = Complex64::i();
    let (em, ep) = ((-i * k * a).exp(), (i * k * a).exp());
    2.0 * i * (v1 * em + v2 * ep) + 2.0 * i * k * (i * a) * (v2 * ep - v1 * em) + 2.0 * i * v1 * v2 * a * (k * a).cos()
}

fn checked_pole_function(pot: &DeltaPair, k: Complex64) -> Result<Complex64> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::invalid("amplitudes are indeterminate at k = 0; use the zero-energy limit"));
    }
    let p = pole_function(pot, k);
    // |D| = |p| |e^{-ika}|
    let magnitude = p.norm() * (k.im * pot.a()).exp();
    if magnitude < POLE_TOL || !magnitude.is_finite() {
        return Err(Error::PoleHit { k, magnitude });
    }
    Ok(p)
}

pub fn reflection_amplitude(pot: &DeltaPair, k: impl Into<ComplexWaveNumber>) -> Result<Complex64> {
    let k = k.into().0;
    let p = checked_pole_function(pot, k)?;
    Ok(reflection_numerator(pot, k) * (Complex64::i() * k * pot.a()).exp() / p)
}

pub fn transmission_amplitude(pot: &DeltaPair, k: impl Into<ComplexWaveNumber>) -> Result<Complex64> {
    let k = k.into().0;
    let p = checked_pole_function(pot, k)?;
    Ok(-4.0 * k * k / p)
}

pub fn amplitudes(pot: &DeltaPair, k: impl Into<ComplexWaveNumber>) -> Result<AmplitudePair> {
    let k = k.into().0;
    let p = checked_pole_function(pot, k)?;
    Ok(AmplitudePair {
        rho: reflection_numerator(pot, k) * (Complex64::i() * k * pot.a()).exp() / p,
        tau: -4.0 * k * k / p,
    })
}

/// `R = |ρ|²` and `T = |τ|²` at a positive energy.
pub fn coefficients(pot: &DeltaPair, energy: f64) -> Result<ScanRow> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::invalid(format!("coefficients need a positive energy, got {energy}")));
    }
    let amps = amplitudes(pot, energy.sqrt())?;
    Ok(ScanRow { energy, reflection: Some(amps.reflection()), transmission: amps.transmission() })
}

/// `|τ(k = i√(-E))|²` below threshold. It is not a probability: it diverges at
/// every bound state.
pub fn transmission_negative_energy(pot: &DeltaPair, energy: f64) -> Result<f64> {
    if !(energy < 0.0 && energy.is_finite()) {
        return Err(Error::invalid(format!("expected a negative energy, got {energy}")));
    }
    Ok(transmission_amplitude(pot, ComplexWaveNumber::new(0.0, (-energy).sqrt()))?.norm_sqr())
}

/// `k -> 0` limit of `ρ` for arbitrary signs.
///
/// Expanding to second order in `k`, both `ρ`'s numerator and denominator
/// are proportional to `c = v1 + v2 + a v1 v2`. Off the manifold `c = 0` the
/// limit is `-1`. On it the limit is `-a(v1 - v2) / (2 + a(v1 + v2))`.
pub fn zero_energy_limit(pot: &DeltaPair) -> f64 {
    let (v1, v2, a) = (pot.v1(), pot.v2(), pot.a());
    let c = v1 + v2 + a * v1 * v2;
    let scale = v1.abs() + v2.abs() + a * (v1 * v2).abs();
    if c.abs() <= CRITICAL_TOL * scale || scale == 0.0 {
        -a * (v1 - v2) / (2.0 + a * (v1 + v2))
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroEnergyCase {
    /// `u1 = u2 = u0` with `u0 a = 2`.
    CriticalSymmetric,
    /// `1/u1 + 1/u2 = a`.
    CriticalSumRule,
    Generic,
}

impl ZeroEnergyCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroEnergyCase::CriticalSymmetric => "critical_symmetric",
            ZeroEnergyCase::CriticalSumRule => "critical_sum_rule",
            ZeroEnergyCase::Generic => "generic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEnergyClass {
    pub case: ZeroEnergyCase,
    pub rho0: f64,
    pub r0: f64,
}

/// Zero-energy reflection of a pair of wells with depths `u_j = -v_j > 0`.
pub fn zero_energy_reflection(pot: &DeltaPair) -> Result<ZeroEnergyClass> {
    let (u1, u2, a) = (-pot.v1(), -pot.v2(), pot.a());
    if !(u1 > 0.0 && u2 > 0.0) {
        return Err(Error::invalid(format!("zero-energy classification needs two wells, got depths {u1}, {u2}")));
    }
    let (case, rho0) = if (u1 - u2).abs() <= CRITICAL_TOL * u1 && (u1 * a - 2.0).abs() <= CRITICAL_TOL {
        (ZeroEnergyCase::CriticalSymmetric, 0.0)
    } else if (1.0 / u1 + 1.0 / u2 - a).abs() <= CRITICAL_TOL * a {
        let x = u2 * a;
        (ZeroEnergyCase::CriticalSumRule, x * (x - 2.0) / (x * x - 2.0 * x + 2.0))
    } else {
        (ZeroEnergyCase::Generic, -1.0)
    };
    Ok(ZeroEnergyClass { case, rho0, r0: rho0 * rho0 })
}

/// `| |ρ(k_small)|² - R(0) |`, comparing the direct amplitude against the
/// zero-energy classification.
pub fn limit_consistency_check(pot: &DeltaPair, k_small: f64) -> Result<f64> {
    if !(k_small > 0.0 && k_small <= 1e-3) {
        return Err(Error::invalid(format!("k_small must lie in (0, 1e-3], got {k_small}")));
    }
    let class = zero_energy_reflection(pot)?;
    Ok((reflection_amplitude(pot, k_small)?.norm_sqr() - class.r0).abs())
}

/// Coefficients for every energy of a grid, evaluated in parallel.
///
/// Positive energies give `(R, T)`. Negative energies give the continued `T`,
/// or `inf` on a pole. At `E = 0` the threshold limit is used.
pub fn scan(pot: &DeltaPair, energies: &[f64]) -> Vec<ScanRow> {
    energies
        .par_iter()
        .map(|&energy| {
            if energy > 0.0 {
                coefficients(pot, energy).unwrap_or(ScanRow { energy, reflection: None, transmission: f64::INFINITY })
            } else if energy < 0.0 {
                let transmission = transmission_negative_energy(pot, energy).unwrap_or(f64::INFINITY);
                ScanRow { energy, reflection: None, transmission }
            } else {
                let r0 = zero_energy_limit(pot).powi(2);
                ScanRow { energy, reflection: Some(r0), transmission: 1.0 - r0 }
            }
        })
        .collect()
}

/// Independent route to `(R, T)`: each delta is replaced by a square
/// potential of height `v_j / w` and width `w` centered on it, and the
/// wave is carried through exact constant-potential transfer matrices.
/// Converges to [`coefficients`] linearly in `w`.
pub fn oracle_square_limit(pot: &DeltaPair, energy: f64, w: f64) -> Result<ScanRow> {
    let a = pot.a();
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::invalid(format!("oracle needs a positive energy, got {energy}")));
    }
    if !(w > 0.0 && w < a / 4.0) {
        return Err(Error::invalid(format!("regularization width must lie in (0, a/4), got {w}")));
    }
    let segments = [(w, pot.v1() / w), (a - w, 0.0), (w, pot.v2() / w)];
    let (x_left, x_right) = (-0.5 * w, a + 0.5 * w);

    let i = Complex64::i();
    let k = energy.sqrt();
    let outgoing = (i * k * x_right).exp();
    // (ψ, ψ') at the right edge for F = 1, carried leftwards.
    let mut psi = outgoing;
    let mut dpsi = i * k * outgoing;
    for &(len, height) in segments.iter().rev() {
        let q = Complex64::new(energy - height, 0.0).sqrt();
        let (c, s) = ((q * len).cos(), (q * len).sin());
        let s_over_q = if q.norm() * len < 1e-8 { Complex64::new(len, 0.0) } else { s / q };
        (psi, dpsi) = (c * psi - s_over_q * dpsi, q * s * psi + c * dpsi);
    }
    let a_in = 0.5 * (psi + dpsi / (i * k)) * (-i * k * x_left).exp();
    let b_out = 0.5 * (psi - dpsi / (i * k)) * (i * k * x_left).exp();
    Ok(ScanRow { energy, reflection: Some((b_out / a_in).norm_sqr()), transmission: 1.0 / a_in.norm_sqr() })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn pair(v1: f64, v2: f64, a: f64) -> DeltaPair {
        DeltaPair::new(v1, v2, a).unwrap()
    }

    /// Textbook form of the denominator, without the expm1 rearrangement.
    fn naive_denominator(pot: &DeltaPair, k: Complex64) -> Complex64 {
        let (v1, v2, a) = (pot.v1(), pot.v2(), pot.a());
        let i = Complex64::i();
        (2.0 * i * k - v1) * (2.0 * i * k - v2) * (-i * k * a).exp() - v1 * v2 * (i * k * a).exp()
    }

    #[test]
    fn stable_pole_function_matches_textbook_form() {
        let pot = pair(3.0, -2.0, 0.7);
        for k in [Complex64::new(1.3, 0.0), Complex64::new(2.0, -0.4), Complex64::new(0.0, 1.1)] {
            let stable = pole_function(&pot, k) * (-Complex64::i() * k * pot.a()).exp();
            assert!((stable - naive_denominator(&pot, k)).norm() < 1e-12);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let pot = pair(-3.0, 2.9, 1.0);
        let k = Complex64::new(2.3, -0.6);
        let h = 1e-6;
        let fd = |f: &dyn Fn(Complex64) -> Complex64| (f(k + h) - f(k - h)) / (2.0 * h);
        let d_pole = fd(&|z| pole_function(&pot, z));
        assert!((d_pole - pole_function_derivative(&pot, k)).norm() < 1e-6);
        let d_num = fd(&|z| reflection_numerator(&pot, z));
        assert!((d_num - reflection_numerator_derivative(&pot, k)).norm() < 1e-6);
    }

    #[test]
    fn free_particle_is_transparent() {
        let pot = pair(0.0, 0.0, 1.0);
        for k in [0.1, 1.0, 7.5] {
            assert_eq!(reflection_amplitude(&pot, k).unwrap(), Complex64::new(0.0, 0.0));
            assert!((transmission_amplitude(&pot, k).unwrap().norm_sqr() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn antisymmetric_pair_reflectionless_at_pi() {
        let rho = reflection_amplitude(&pair(-3.0, 3.0, 1.0), PI).unwrap();
        assert!(rho.norm() < 1e-14);
    }

    #[test]
    fn symmetric_barrier_transparent_at_first_hardbox_level() {
        let t = transmission_amplitude(&pair(3.0, 3.0, 1.0), 4.729f64.sqrt()).unwrap().norm_sqr();
        assert!((t - 1.0).abs() < 1e-4);
    }

    #[test]
    fn asymmetric_barrier_t_at_first_resonance() {
        let t = coefficients(&pair(3.0, 2.9, 1.0), 3.97).unwrap().transmission;
        assert!((t - 0.8655).abs() < 5e-4);
    }

    #[test]
    fn symmetric_wells_transparent_at_table_energy() {
        let t = coefficients(&pair(-3.0, -3.0, 1.0), 19.2074).unwrap().transmission;
        assert!((t - 1.0).abs() < 1e-4);
    }

    #[test]
    fn high_energy_transparency() {
        for pot in [pair(30.0, 29.0, 1.0), pair(-5.0, -5.0, 1.0), pair(3.0, -3.0, 0.2)] {
            assert!(coefficients(&pot, 1e6).unwrap().transmission > 0.999);
        }
    }

    #[test]
    fn wells_transparent_at_first_tan_root() {
        // tan k = 2k/5 has no root on (0, π/2) because u0 a = 5 > 2. Its first
        // root sits in (π, 3π/2); mpmath gives 4.172596710659593.
        let k: f64 = 4.172596710659593;
        let t = coefficients(&pair(-5.0, -5.0, 1.0), k * k).unwrap().transmission;
        assert!((t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coefficients_reject_non_positive_energy() {
        assert!(coefficients(&pair(1.0, 1.0, 1.0), 0.0).is_err());
        assert!(coefficients(&pair(1.0, 1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn amplitudes_reject_zero_k() {
        assert!(reflection_amplitude(&pair(1.0, 1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn pole_hit_on_bound_state() {
        // Single-delta limit: v2 = 0 puts the pole exactly at k = i u/2.
        let pot = pair(-4.0, 0.0, 1.0);
        let err = transmission_amplitude(&pot, ComplexWaveNumber::new(0.0, 2.0)).unwrap_err();
        assert!(matches!(err, Error::PoleHit { .. }));
    }

    #[test]
    fn zero_energy_cases() {
        let c = zero_energy_reflection(&DeltaPair::wells(2.0, 2.0, 1.0).unwrap()).unwrap();
        assert_eq!(c.case, ZeroEnergyCase::CriticalSymmetric);
        assert_eq!(c.r0, 0.0);

        let c = zero_energy_reflection(&DeltaPair::wells(2.0, 1.0, 1.5).unwrap()).unwrap();
        assert_eq!(c.case, ZeroEnergyCase::CriticalSumRule);
        assert!((c.rho0 + 0.6).abs() < 1e-15);
        assert!((c.r0 - 0.36).abs() < 1e-12);

        let c = zero_energy_reflection(&DeltaPair::wells(2.0, 3.0, 1.0).unwrap()).unwrap();
        assert_eq!(c.case, ZeroEnergyCase::Generic);
        assert_eq!((c.rho0, c.r0), (-1.0, 1.0));
    }

    #[test]
    fn zero_energy_rejects_barriers() {
        assert!(zero_energy_reflection(&pair(2.0, -1.0, 1.0)).is_err());
        assert!(zero_energy_reflection(&pair(-2.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn near_critical_falls_back_to_generic() {
        for ua in [1.99, 2.01] {
            let c = zero_energy_reflection(&DeltaPair::wells(ua, ua, 1.0).unwrap()).unwrap();
            assert_eq!(c.case, ZeroEnergyCase::Generic);
            assert_eq!(c.r0, 1.0);
        }
    }

    #[test]
    fn general_limit_agrees_with_sum_rule_formula() {
        for (u1, u2, a) in [(2.0, 1.0, 1.5), (2.0, 3.0, 5.0 / 6.0), (3.0, 2.0, 5.0 / 6.0), (2.0, 2.0, 1.0)] {
            let pot = DeltaPair::wells(u1, u2, a).unwrap();
            let class = zero_energy_reflection(&pot).unwrap();
            assert!((zero_energy_limit(&pot) - class.rho0).abs() < 1e-12, "{pot}");
        }
        assert_eq!(zero_energy_limit(&DeltaPair::wells(2.0, 3.0, 1.0).unwrap()), -1.0);
        assert_eq!(zero_energy_limit(&pair(0.0, 0.0, 1.0)), 0.0);
    }

    #[test]
    fn small_k_approaches_zero_energy_value() {
        let critical = DeltaPair::wells(2.0, 2.0, 1.0).unwrap();
        assert!(limit_consistency_check(&critical, 1e-4).unwrap() < 1e-3);
        let sum_rule = DeltaPair::wells(2.0, 1.0, 1.5).unwrap();
        assert!(limit_consistency_check(&sum_rule, 1e-4).unwrap() < 1e-3);
        let generic = DeltaPair::wells(2.0, 3.0, 1.0).unwrap();
        assert!(limit_consistency_check(&generic, 1e-4).unwrap() < 1e-3);
        assert!(limit_consistency_check(&generic, 0.1).is_err());
    }

    #[test]
    fn negative_energy_transmission() {
        let wells = pair(-5.0, -5.0, 1.0);
        let near = transmission_negative_energy(&wells, -7.1431600116).unwrap();
        let far = transmission_negative_energy(&wells, -7.0).unwrap();
        assert!(near > 1e6 * far);

        let barriers = pair(5.0, 5.0, 1.0);
        for j in 1..=500 {
            let t = transmission_negative_energy(&barriers, -0.1 * j as f64).unwrap();
            assert!(t.is_finite() && t < 1.0);
        }
        assert!(transmission_negative_energy(&barriers, 1.0).is_err());
    }

    #[test]
    fn mixed_pair_has_single_negative_energy_pole() {
        let pot = pair(-5.0, 5.0, 1.0);
        let energies: Vec<f64> = (1..=5000).map(|j| -10.0 + 0.002 * j as f64 - 1e-7).collect();
        let t: Vec<f64> = energies.iter().map(|&e| transmission_negative_energy(&pot, e).unwrap()).collect();
        let peaks: Vec<f64> =
            (1..t.len() - 1).filter(|&j| t[j] > t[j - 1] && t[j] > t[j + 1]).map(|j| energies[j]).collect();
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0] + 6.20).abs() < 0.01);
    }

    #[test]
    fn scan_handles_all_energy_regimes() {
        let rows = scan(&pair(-5.0, -5.0, 1.0), &[-20.0, 0.0, 1.0]);
        assert_eq!(rows[0].reflection, None);
        assert_eq!(rows[1].reflection, Some(1.0));
        assert_eq!(rows[1].transmission, 0.0);
        let r = rows[2].reflection.unwrap();
        assert!((r + rows[2].transmission - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_free_particle() {
        for w in [1e-2, 1e-4] {
            let row = oracle_square_limit(&pair(0.0, 0.0, 1.0), 3.0, w).unwrap();
            assert!((row.transmission - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_matches_closed_form() {
        let pot = pair(-5.0, -5.0, 1.0);
        let exact = coefficients(&pot, 1.0).unwrap();
        let approx = oracle_square_limit(&pot, 1.0, 1e-4).unwrap();
        assert!((exact.transmission - approx.transmission).abs() < 1e-3);
        assert!((exact.reflection.unwrap() - approx.reflection.unwrap()).abs() < 1e-3);

        let barrier = oracle_square_limit(&pair(3.0, 3.0, 1.0), 4.729, 1e-5).unwrap();
        assert!((barrier.transmission - 1.0).abs() < 1e-3);
    }

    #[test]
    fn oracle_rejects_wide_squares() {
        assert!(oracle_square_limit(&pair(1.0, 1.0, 1.0), 1.0, 0.3).is_err());
        assert!(oracle_square_limit(&pair(1.0, 1.0, 1.0), -1.0, 0.01).is_err());
    }
}
