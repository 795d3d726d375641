//! Real-interval and complex-plane root finding.
//!
//! Bracket scans only detect sign changes, so roots of even multiplicity are
//! invisible to [`scan_brackets`]. None of the spectra in this crate need them.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Final bracket width for bisection.
    pub tol_x: f64,
    /// Largest `|f(root)|` accepted as converged.
    pub tol_residual: f64,
    /// Roots closer than this are merged.
    pub tol_merge: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { tol_x: 1e-12, tol_residual: 1e-10, tol_merge: 1e-6, max_iter: 100 }
    }
}

/// Sign-change interval of a real function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks for a sign change.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Option<Self> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        let b = Self { lo, hi, f_lo, f_hi };
        b.is_valid().then_some(b)
    }

    pub fn is_valid(&self) -> bool {
        self.lo < self.hi && !self.f_lo.is_nan() && !self.f_hi.is_nan() && ((self.f_lo < 0.0) != (self.f_hi < 0.0))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFindReport {
    pub root: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub seed: Complex64,
    pub converged: bool,
}

/// All sign changes of `f` on the uniform `n`-point grid over `[lo, hi]`,
/// in increasing order.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<Bracket>> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi || n < 2 {
        return Err(Error::invalid(format!("bad scan grid [{lo}, {hi}] with {n} points")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let value = f(x);
        if !value.is_finite() {
            return Err(Error::Domain { x, value });
        }
        if let Some((px, pv)) = prev {
            if (pv < 0.0) != (value < 0.0) {
                out.push(Bracket { lo: px, hi: x, f_lo: pv, f_hi: value });
            }
        }
        prev = Some((x, value));
    }
    Ok(out)
}

/// Bisection down to `tol_x`, or until the interval stops shrinking in
/// floating point.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: &Bracket, tol_x: f64) -> RootFindReport {
    let seed = Complex64::new(0.5 * (bracket.lo + bracket.hi), 0.0);
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let lo_negative = bracket.f_lo < 0.0;
    let mut iterations = 0;
    let mut exact = None;
    while hi - lo > tol_x {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            exact = Some(mid);
            break;
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = exact.unwrap_or(0.5 * (lo + hi));
    RootFindReport { root: Complex64::new(root, 0.0), residual: f(root).abs(), iterations, seed, converged: true }
}

/// Newton iteration for an analytic `f` with closed-form derivative `df`.
///
/// Failure is reported through `converged = false`, never as an error, so a
/// seed grid can simply discard bad starts.
pub fn newton_complex<F, D>(f: F, df: D, seed: Complex64, tol_residual: f64, max_iter: usize) -> RootFindReport
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    newton_complex_scaled(f, df, |_| 1.0, seed, tol_residual, max_iter)
}

/// [`newton_complex`] with the residual measured as `|f| / max(1, scale)`.
///
/// `scale(z)` should be the size of the terms that cancel in `f(z)`, so that
/// the tolerance stays above the rounding floor when those terms are large.
pub fn newton_complex_scaled<F, D, S>(
    f: F,
    df: D,
    scale: S,
    seed: Complex64,
    tol_residual: f64,
    max_iter: usize,
) -> RootFindReport
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
    S: Fn(Complex64) -> f64,
{
    let measure = |z: Complex64, fz: Complex64| fz.norm() / scale(z).max(1.0);
    let mut z = seed;
    let mut fz = f(z);
    let mut iterations = 0;
    let failed = |z: Complex64, residual: f64, iterations| RootFindReport {
        root: z,
        residual,
        iterations,
        seed,
        converged: false,
    };

    while iterations < max_iter {
        if measure(z, fz) <= tol_residual {
            break;
        }
        let dfz = df(z);
        if dfz.norm() < 1e-300 {
            return failed(z, measure(z, fz), iterations);
        }
        let step = fz / dfz;
        z -= step;
        iterations += 1;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return failed(z, f64::INFINITY, iterations);
        }
        fz = f(z);
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }

    // A few extra steps tighten the root well below the acceptance threshold.
    let mut residual = measure(z, fz);
    if residual <= tol_residual {
        for _ in 0..3 {
            let dfz = df(z);
            if dfz.norm() < 1e-300 {
                break;
            }
            let candidate = z - fz / dfz;
            let fc = f(candidate);
            let rc = measure(candidate, fc);
            if rc < residual {
                z = candidate;
                fz = fc;
                residual = rc;
            } else {
                break;
            }
        }
    }

    RootFindReport { root: z, residual, iterations, seed, converged: residual <= tol_residual }
}

/// Merges reports whose roots lie within `tol_merge` of each other, keeping
/// the one with the smallest residual, and sorts by real part.
pub fn dedupe_reports(mut reports: Vec<RootFindReport>, tol_merge: f64) -> Vec<RootFindReport> {
    reports.sort_by(|x, y| {
        x.residual.total_cmp(&y.residual).then(x.root.re.total_cmp(&y.root.re)).then(x.root.im.total_cmp(&y.root.im))
    });
    let mut kept: Vec<RootFindReport> = Vec::with_capacity(reports.len());
    for r in reports {
        if kept.iter().all(|k| (k.root - r.root).norm() > tol_merge) {
            kept.push(r);
        }
    }
    kept.sort_by(|x, y| x.root.re.total_cmp(&y.root.re).then(x.root.im.total_cmp(&y.root.im)));
    kept
}

/// [`dedupe_reports`] for bare roots; among near-duplicates the first listed wins.
pub fn dedupe_and_sort(roots: &[Complex64], tol_merge: f64) -> Vec<Complex64> {
    let reports = roots
        .iter()
        .enumerate()
        .map(|(i, &root)| RootFindReport { root, residual: i as f64, iterations: 0, seed: root, converged: true })
        .collect();
    dedupe_reports(reports, tol_merge).into_iter().map(|r| r.root).collect()
}
