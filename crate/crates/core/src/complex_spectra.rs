//! Resonance poles and perfect-transmission energies in the complex `k` plane.
//!
//! Resonances are zeros of `(2ik - v1)(2ik - v2) - v1 v2 e^{2ika}` with
//! `Re k > 0 > Im k`. Perfect transmission happens at zeros of `ρ`'s
//! numerator. Those zeros are real only for symmetric or antisymmetric pairs,
//! where they coincide with even-parity levels of a delta centered in a
//! hard-walled box of half-width `a`. Any other pair has only complex zeros,
//! and `T < 1` everywhere on the real axis.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{bisect, dedupe_reports, newton_complex_scaled, Bracket, RootFindReport, Tolerances};
use crate::potential::{energy_of_k, ComplexWaveNumber, DeltaPair, SpectrumEntry, SpectrumKind, SymmetryClass};
use crate::scattering::{
    coefficients, pole_function, pole_function_derivative, reflection_numerator, reflection_numerator_derivative,
    zero_energy_reflection,
};

/// `|u0 a - 2|` below which the zero-curvature state is an eigenstate.
pub const ZERO_CURVATURE_TOL: f64 = 1e-9;

/// Margin kept from the poles of `tan` when bracketing hard-box levels.
const TAN_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub tol: Tolerances,
    /// Seed columns along `Re k`.
    pub re_points: usize,
    /// Seed rows along `Im k`.
    pub im_points: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { tol: Tolerances::default(), re_points: 40, im_points: 20 }
    }
}

/// Resonance residual. Same function as [`pole_function`].
pub fn resonance_residual(pot: &DeltaPair, k: Complex64) -> Complex64 {
    pole_function(pot, k)
}

pub fn resonance_residual_derivative(pot: &DeltaPair, k: Complex64) -> Complex64 {
    pole_function_derivative(pot, k)
}

/// `2ik(v1 e^{-ika} + v2 e^{ika}) + 2i v1 v2 sin ka`, the numerator of `ρ`.
pub fn pt_residual(pot: &DeltaPair, k: Complex64) -> Complex64 {
    reflection_numerator(pot, k)
}

pub fn pt_residual_derivative(pot: &DeltaPair, k: Complex64) -> Complex64 {
    reflection_numerator_derivative(pot, k)
}

/// A Gamow state `E = 𝓔 - iΓ/2` at `k = K - ik'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceEntry {
    pub energy: Complex64,
    pub k: ComplexWaveNumber,
    /// `Γ = 4 K k'`.
    pub width: f64,
    /// `T(𝓔)` on the real axis.
    pub t_at_peak: f64,
    pub residual: f64,
}

impl From<ResonanceEntry> for SpectrumEntry {
    fn from(r: ResonanceEntry) -> Self {
        SpectrumEntry {
            kind: SpectrumKind::Resonance,
            energy: r.energy,
            k: r.k,
            t_at_real_part: Some(r.t_at_peak),
            residual: r.residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PTEntry {
    /// Real for (anti)symmetric pairs, `ε - iγ/2` otherwise.
    pub energy: Complex64,
    pub k: ComplexWaveNumber,
    /// `T(Re energy)`.
    pub t_at_energy: f64,
    pub symmetry_class: SymmetryClass,
    pub residual: f64,
}

impl From<PTEntry> for SpectrumEntry {
    fn from(p: PTEntry) -> Self {
        SpectrumEntry {
            kind: SpectrumKind::PerfectTransmission,
            energy: p.energy,
            k: p.k,
            t_at_real_part: Some(p.t_at_energy),
            residual: p.residual,
        }
    }
}

/// Rectangle of seeds plus the acceptance rule for converged roots.
struct Search<'a> {
    re_max: f64,
    im_lo: f64,
    im_hi: f64,
    /// Expected spacing of consecutive roots along `Re k`.
    spacing: f64,
    accept: &'a (dyn Fn(Complex64) -> bool + Sync),
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n && n > 1 { hi } else { lo + step * i as f64 })
}

/// Seeded Newton over a grid, followed by deflated reseeding of any gap wider
/// than `1.5 × spacing` between consecutive roots.
fn find_complex_roots<F, D, S>(f: F, df: D, scale: S, search: &Search<'_>, cfg: &SearchConfig) -> Vec<RootFindReport>
where
    F: Fn(Complex64) -> Complex64 + Sync,
    D: Fn(Complex64) -> Complex64 + Sync,
    S: Fn(Complex64) -> f64 + Sync,
{
    let tol = &cfg.tol;
    let seeds: Vec<Complex64> = linspace(0.05, search.re_max, cfg.re_points)
        .flat_map(|re| linspace(search.im_lo, search.im_hi, cfg.im_points).map(move |im| Complex64::new(re, im)))
        .collect();
    let accepted = |r: &RootFindReport| r.converged && (search.accept)(r.root);

    let found: Vec<RootFindReport> = seeds
        .par_iter()
        .map(|&s| newton_complex_scaled(&f, &df, &scale, s, tol.tol_residual, tol.max_iter))
        .filter(accepted)
        .collect();
    let mut roots = dedupe_reports(found, tol.tol_merge);

    for _ in 0..3 {
        let mut edges = vec![0.0];
        edges.extend(roots.iter().map(|r| r.root.re).filter(|&re| re <= search.re_max));
        edges.push(search.re_max);
        let gaps: Vec<(f64, f64)> =
            edges.windows(2).filter(|w| w[1] - w[0] > 1.5 * search.spacing).map(|w| (w[0], w[1])).collect();
        if gaps.is_empty() {
            break;
        }
        let known: Vec<Complex64> = roots.iter().map(|r| r.root).collect();
        let prod = |k: Complex64| -> Complex64 { known.iter().map(|&r| k - r).product() };
        let deflated = |k: Complex64| f(k) / prod(k);
        let deflated_scale = |k: Complex64| scale(k) / prod(k).norm();
        let deflated_derivative = |k: Complex64| {
            let poles: Complex64 = known.iter().map(|&r| 1.0 / (k - r)).sum();
            (df(k) - f(k) * poles) / prod(k)
        };
        let gap_seeds: Vec<Complex64> = gaps
            .iter()
            .flat_map(|&(lo, hi)| {
                linspace(lo, hi, 12).skip(1).take(10).flat_map(move |re| {
                    linspace(search.im_lo, search.im_hi, cfg.im_points).map(move |im| Complex64::new(re, im))
                })
            })
            .collect();
        let extra: Vec<RootFindReport> = gap_seeds
            .par_iter()
            .filter_map(|&s| {
                let rough = newton_complex_scaled(
                    deflated,
                    deflated_derivative,
                    deflated_scale,
                    s,
                    tol.tol_residual,
                    tol.max_iter,
                );
                if !rough.converged {
                    return None;
                }
                let polished = newton_complex_scaled(&f, &df, &scale, rough.root, tol.tol_residual, tol.max_iter);
                Some(RootFindReport { seed: s, ..polished })
            })
            .filter(accepted)
            .collect();
        let before = roots.len();
        roots.extend(extra);
        roots = dedupe_reports(roots, tol.tol_merge);
        if roots.len() == before {
            break;
        }
    }
    roots
}

fn require_n(n_max: usize) -> Result<()> {
    if n_max == 0 {
        Err(Error::invalid("n_max must be at least 1"))
    } else {
        Ok(())
    }
}

/// Size of the terms of the pole function at `k`.
fn pole_scale(pot: &DeltaPair, k: Complex64) -> f64 {
    let growth = (-2.0 * pot.a() * k.im).exp();
    let kn = k.norm();
    4.0 * kn * kn + 2.0 * kn * (pot.v1().abs() + pot.v2().abs()) + (pot.v1() * pot.v2()).abs() * (1.0 + growth)
}

/// Size of the terms of `ρ`'s numerator at `k`.
fn numerator_scale(pot: &DeltaPair, k: Complex64) -> f64 {
    let (down, up) = ((pot.a() * k.im).exp(), (-pot.a() * k.im).exp());
    2.0 * k.norm() * (pot.v1().abs() * down + pot.v2().abs() * up) + (pot.v1() * pot.v2()).abs() * (down + up)
}

/// Keeps the `n_max` lowest entries by `Re E`. A gap wider than `1.5 × spacing`
/// among them means a root was missed, so the list is not returned.
fn lowest_complete<T>(
    mut entries: Vec<T>,
    n_max: usize,
    spacing: f64,
    k_of: impl Fn(&T) -> Complex64,
) -> Result<Vec<T>> {
    entries.sort_by(|x, y| (k_of(x) * k_of(x)).re.total_cmp(&(k_of(y) * k_of(y)).re));
    if entries.len() < n_max {
        return Err(Error::SearchIncomplete { found: entries.len(), requested: n_max });
    }
    entries.truncate(n_max);
    let mut re: Vec<f64> = entries.iter().map(|e| k_of(e).re).collect();
    re.sort_by(f64::total_cmp);
    if let Some(i) = re.windows(2).position(|w| w[1] - w[0] > 1.5 * spacing) {
        return Err(Error::SearchIncomplete { found: i + 1, requested: n_max });
    }
    Ok(entries)
}

/// Depth of the seed rectangle below (or around) the real axis. Far from the
/// origin the resonance string sits at `Im k ≈ -ln(4|k|²/|v1 v2|) / 2a`.
fn resonance_depth(pot: &DeltaPair, k_max: f64) -> f64 {
    let product = (pot.v1() * pot.v2()).abs();
    if product == 0.0 {
        return 2.0;
    }
    let asymptotic = (4.0 * k_max * k_max / product).ln() / (2.0 * pot.a());
    (1.5 * asymptotic + 1.0).max(2.0)
}

/// The `n_max` resonances with the smallest `𝓔`, ascending.
pub fn resonances(pot: &DeltaPair, n_max: usize) -> Result<Vec<ResonanceEntry>> {
    resonances_with(pot, n_max, &SearchConfig::default())
}

pub fn resonances_with(pot: &DeltaPair, n_max: usize, cfg: &SearchConfig) -> Result<Vec<ResonanceEntry>> {
    require_n(n_max)?;
    if pot.is_free() {
        return Err(Error::invalid("a free particle has no resonances"));
    }
    let a = pot.a();
    let k_max = (n_max as f64 + 2.0) * PI / a;
    let floor = cfg.tol.tol_merge;
    let accept = move |k: Complex64| k.re > floor && k.im < 0.0 && (k * k).re > 0.0;
    let search =
        Search { re_max: k_max, im_lo: -resonance_depth(pot, k_max), im_hi: -0.001, spacing: PI / a, accept: &accept };
    let roots = find_complex_roots(
        |k| resonance_residual(pot, k),
        |k| resonance_residual_derivative(pot, k),
        |k| pole_scale(pot, k),
        &search,
        cfg,
    );

    let entries = roots
        .iter()
        .map(|r| {
            let k = ComplexWaveNumber(r.root);
            let energy = energy_of_k(k);
            Ok(ResonanceEntry {
                energy,
                k,
                width: k.width(),
                t_at_peak: coefficients(pot, energy.re)?.transmission,
                residual: r.residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    lowest_complete(entries, n_max, PI / a, |e: &ResonanceEntry| e.k.0)
}

/// `(2k cos ka + v sin ka) / k` for a symmetric pair, via the numerator of `ρ`
/// (which is `2iv` times `2k cos ka + v sin ka` there).
fn symmetric_pt_function(pot: &DeltaPair, k: f64) -> f64 {
    pt_residual(pot, Complex64::new(k, 0.0)).im / k
}

fn symmetric_pt_momenta(pot: &DeltaPair, n_max: usize, tol: &Tolerances) -> Vec<f64> {
    let a = pot.a();
    let v = pot.v1();
    let f = |k: f64| symmetric_pt_function(pot, k);
    let mut out = Vec::with_capacity(n_max);
    if v < 0.0 {
        let critical = zero_curvature_critical(-v, a);
        if critical.critical {
            out.push(0.0);
        } else if critical.deviation < 0.0 {
            // One root below π/2a when u0 a < 2.
            if let Some(b) = Bracket::new(f, 1e-9 * FRAC_PI_2 / a, FRAC_PI_2 / a) {
                out.push(bisect(f, &b, tol.tol_x).root.re);
            }
        }
    }
    let mut n = 1;
    while out.len() < n_max {
        let (lo, hi) = ((n as f64 - 0.5) * PI / a, (n as f64 + 0.5) * PI / a);
        let b = Bracket::new(f, lo, hi).expect("branch ends of a symmetric pair have opposite signs");
        out.push(bisect(f, &b, tol.tol_x).root.re);
        n += 1;
    }
    out.truncate(n_max);
    out
}

/// The `n_max` lowest perfect-transmission energies.
pub fn perfect_transmission_energies(pot: &DeltaPair, n_max: usize) -> Result<Vec<PTEntry>> {
    perfect_transmission_energies_with(pot, n_max, &SearchConfig::default())
}

pub fn perfect_transmission_energies_with(pot: &DeltaPair, n_max: usize, cfg: &SearchConfig) -> Result<Vec<PTEntry>> {
    require_n(n_max)?;
    let class = pot.symmetry();
    let a = pot.a();
    let real_entry = |k: f64| -> Result<PTEntry> {
        let t = if k == 0.0 { 1.0 - zero_energy_reflection(pot)?.r0 } else { coefficients(pot, k * k)?.transmission };
        let kc = Complex64::new(k, 0.0);
        Ok(PTEntry {
            energy: Complex64::new(k * k, 0.0),
            k: ComplexWaveNumber(kc),
            t_at_energy: t,
            symmetry_class: class,
            residual: pt_residual(pot, kc).norm(),
        })
    };

    match class {
        SymmetryClass::Free => Err(Error::invalid("a free particle transmits perfectly at every energy")),
        SymmetryClass::Antisymmetric => (1..=n_max).map(|n| real_entry(n as f64 * PI / a)).collect(),
        SymmetryClass::SymmetricBarriers | SymmetryClass::SymmetricWells => {
            symmetric_pt_momenta(pot, n_max, &cfg.tol).into_iter().map(real_entry).collect()
        }
        SymmetryClass::Asymmetric => {
            let (v1, v2) = (pot.v1().abs(), pot.v2().abs());
            if v1 == 0.0 || v2 == 0.0 {
                // A single delta never reflects perfectly.
                return Err(Error::SearchIncomplete { found: 0, requested: n_max });
            }
            // Far out the zeros line up at Im k = -ln|v1/v2| / 2a, which is
            // above the real axis when the right delta is the stronger one.
            let center = -(v1 / v2).ln() / (2.0 * a);
            let half = 1.5 * center.abs() + 1.0;
            let k_max = (n_max as f64 + 2.0) * PI / a;
            let floor = cfg.tol.tol_merge;
            let accept = move |k: Complex64| k.re > floor && k.im != 0.0 && (k * k).re > 0.0;
            let search =
                Search { re_max: k_max, im_lo: center - half, im_hi: center + half, spacing: PI / a, accept: &accept };
            let roots = find_complex_roots(
                |k| pt_residual(pot, k),
                |k| pt_residual_derivative(pot, k),
                |k| numerator_scale(pot, k),
                &search,
                cfg,
            );
            let entries = roots
                .iter()
                .map(|r| {
                    let k = ComplexWaveNumber(r.root);
                    let energy = energy_of_k(k);
                    Ok(PTEntry {
                        energy,
                        k,
                        t_at_energy: coefficients(pot, energy.re)?.transmission,
                        symmetry_class: class,
                        residual: r.residual,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            lowest_complete(entries, n_max, PI / a, |e: &PTEntry| e.k.0)
        }
    }
}

/// Even-parity levels of a delta of strength `v0` at the center of a box with
/// rigid walls at `±a`. `ψ = sin k(a - |x|)` with the derivative jump at the
/// center gives `tan ka = -2k/v0`. These are solved on each branch of `tan`,
/// independently of the reflection amplitude.
pub fn hardbox_even_eigenvalues(v0: f64, a: f64, n_max: usize) -> Result<Vec<f64>> {
    require_n(n_max)?;
    if !(a > 0.0 && a.is_finite() && v0.is_finite()) {
        return Err(Error::invalid(format!("need finite v0 and a > 0, got {v0}, {a}")));
    }
    if v0 == 0.0 {
        return Ok((1..=n_max).map(|n| ((2 * n - 1) as f64 * FRAC_PI_2 / a).powi(2)).collect());
    }
    let h = |k: f64| (k * a).tan() + 2.0 * k / v0;
    let mut out = Vec::with_capacity(n_max);
    if v0 < 0.0 {
        let critical = zero_curvature_critical(-v0, a);
        if critical.critical {
            out.push(0.0);
        } else if critical.deviation < 0.0 {
            if let Some(b) = Bracket::new(h, TAN_MARGIN / a, (FRAC_PI_2 - TAN_MARGIN) / a) {
                let k = bisect(h, &b, 1e-13).root.re;
                out.push(k * k);
            }
        }
    }
    let mut n = 1;
    while out.len() < n_max {
        let lo = ((n as f64 - 0.5) * PI + TAN_MARGIN) / a;
        let hi = ((n as f64 + 0.5) * PI - TAN_MARGIN) / a;
        let b = Bracket::new(h, lo, hi).expect("tan spans the reals on every branch");
        let k = bisect(h, &b, 1e-13).root.re;
        out.push(k * k);
        n += 1;
    }
    out.truncate(n_max);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroCurvature {
    /// `E = 0` is an even level of the hard-box well.
    pub critical: bool,
    /// `u0 a - 2`.
    pub deviation: f64,
}

/// The straight-line state `ψ = Ax + B` fits a delta well of depth `u0` between
/// walls at `±a` exactly when `u0 a = 2`.
pub fn zero_curvature_critical(u0: f64, a: f64) -> ZeroCurvature {
    let deviation = u0 * a - 2.0;
    ZeroCurvature { critical: deviation.abs() <= ZERO_CURVATURE_TOL, deviation }
}
