//! Bound states of a pair of delta wells and the closed-form special cases.
//!
//! Bound states are the poles of the amplitudes at `k = ip`, `p > 0`, i.e. the
//! positive roots of
//!
//! ```text
//! f(p) = (2p - u1)(2p - u2) - u1 u2 e^{-2pa}
//! ```
//!
//! with well depths `u_j = -v_j`. `p = 0` is always a root and is never a
//! state. Because `f''` is monotone, `f` has at most two stationary points on
//! `p > 0`. Locating them first splits the axis into monotone pieces with at
//! most one root each, which gives the level count exactly instead of relying
//! on grid resolution.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{bisect, Bracket, Tolerances};
use crate::potential::{ComplexWaveNumber, DeltaPair, SpectrumEntry, SpectrumKind};

/// Smallest `p` searched, excluding the spurious `p = 0` root.
pub const P_MIN: f64 = 1e-8;

/// Well depths `u_j = -v_j` and separation. A negative depth is a barrier,
/// which allows a well next to a barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellPair {
    pub u1: f64,
    pub u2: f64,
    pub a: f64,
}

impl WellPair {
    pub fn new(u1: f64, u2: f64, a: f64) -> Result<Self> {
        if !(u1.is_finite() && u2.is_finite()) {
            return Err(Error::invalid("depths must be finite"));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid(format!("separation must be positive, got {a}")));
        }
        if !(u1 > 0.0 || u2 > 0.0) {
            return Err(Error::invalid(format!("at least one well is required (u1 = {u1}, u2 = {u2})")));
        }
        Ok(Self { u1, u2, a })
    }

    pub fn from_pair(pot: &DeltaPair) -> Result<Self> {
        Self::new(-pot.v1(), -pot.v2(), pot.a())
    }

    pub fn to_pair(&self) -> DeltaPair {
        DeltaPair::wells(self.u1, self.u2, self.a).expect("validated on construction")
    }
}

/// `(2p - u1)(2p - u2) - u1 u2 e^{-2pa}`. Near `p = 0` the terms cancel and
/// the `expm1` arrangement is used instead; further out the factored form
/// keeps nearly equal levels apart.
pub fn bound_state_residual(well: &WellPair, p: f64) -> f64 {
    let (u1, u2, a) = (well.u1, well.u2, well.a);
    if 2.0 * p * a > std::f64::consts::LN_2 {
        (2.0 * p - u1) * (2.0 * p - u2) - u1 * u2 * (-2.0 * p * a).exp()
    } else {
        4.0 * p * p - 2.0 * p * (u1 + u2) - u1 * u2 * (-2.0 * p * a).exp_m1()
    }
}

fn residual_slope(well: &WellPair, p: f64) -> f64 {
    let (u1, u2, a) = (well.u1, well.u2, well.a);
    8.0 * p - 2.0 * (u1 + u2) + 2.0 * a * u1 * u2 * (-2.0 * p * a).exp()
}

fn residual_curvature(well: &WellPair, p: f64) -> f64 {
    let (u1, u2, a) = (well.u1, well.u2, well.a);
    8.0 - 4.0 * a * a * u1 * u2 * (-2.0 * p * a).exp()
}

/// Roots `p` of [`bound_state_residual`] with `p > P_MIN`, ascending.
fn bound_state_momenta(well: &WellPair, tol: &Tolerances) -> Vec<f64> {
    let f = |p| bound_state_residual(well, p);
    let slope = |p| residual_slope(well, p);

    // Beyond p_hi the residual is positive, rising and convex.
    let mut p_hi = 0.5 * (well.u1.abs() + well.u2.abs()) + 1.0;
    while !(f(p_hi) > 0.0 && slope(p_hi) > 0.0 && residual_curvature(well, p_hi) > 0.0) {
        p_hi *= 2.0;
    }

    // The slope is monotone on each side of the inflection point.
    let mut slope_pieces = vec![0.0];
    let product = well.a * well.a * well.u1 * well.u2;
    if product > 2.0 {
        let inflection = (0.5 * product).ln() / (2.0 * well.a);
        if inflection < p_hi {
            slope_pieces.push(inflection);
        }
    }
    slope_pieces.push(p_hi);

    let mut stationary = Vec::new();
    for w in slope_pieces.windows(2) {
        if let Some(b) = Bracket::new(slope, w[0], w[1]) {
            stationary.push(bisect(slope, &b, tol.tol_x * 1e-3).root.re);
        }
    }

    let mut edges = vec![P_MIN];
    edges.extend(stationary.iter().copied().filter(|&s| s > P_MIN && s < p_hi));
    edges.push(p_hi);

    let scale = 4.0 * p_hi * p_hi + 2.0 * p_hi * (well.u1 + well.u2).abs() + (well.u1 * well.u2).abs();
    let rounding = 64.0 * f64::EPSILON * scale;

    let mut roots = Vec::new();
    for w in edges.windows(2) {
        if let Some(b) = Bracket::new(f, w[0], w[1]) {
            roots.push(bisect(f, &b, tol.tol_x).root.re);
        }
    }
    // A local minimum that only touches zero within rounding is a pair of
    // levels degenerate to machine precision (widely separated equal wells).
    for &s in edges[1..edges.len() - 1].iter() {
        let fs = f(s);
        if fs >= 0.0 && fs <= rounding && residual_curvature(well, s) > 0.0 {
            roots.push(s);
            roots.push(s);
        }
    }
    roots.sort_by(|x, y| x.total_cmp(y));
    roots
}

/// Bound states ordered from the ground state up. There are at most two.
pub fn bound_states(well: &WellPair) -> Result<Vec<SpectrumEntry>> {
    bound_states_with(well, &Tolerances::default())
}

pub fn bound_states_with(well: &WellPair, tol: &Tolerances) -> Result<Vec<SpectrumEntry>> {
    let mut momenta = bound_state_momenta(well, tol);
    // Deepest first.
    momenta.reverse();
    Ok(momenta
        .into_iter()
        .map(|p| SpectrumEntry {
            kind: SpectrumKind::Bound,
            energy: Complex64::new(-p * p, 0.0),
            k: ComplexWaveNumber::new(0.0, p),
            t_at_real_part: None,
            residual: bound_state_residual(well, p).abs(),
        })
        .collect())
}

/// Bound-state energies only, ascending.
pub fn bound_energies(well: &WellPair) -> Result<Vec<f64>> {
    Ok(bound_states(well)?.iter().map(|e| e.energy.re).collect())
}

/// Both wells at the same point: a single delta of depth `u1 + u2`.
pub fn merged_delta_energy(u1: f64, u2: f64) -> Result<f64> {
    let total = u1 + u2;
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::invalid(format!("merged depth must be positive, got {total}")));
    }
    Ok(-0.25 * total * total)
}

/// Delta well of depth `u1` at distance `a` from a rigid wall (the `u2 -> ∞`
/// limit). Root of `e^{-2pa} = 1 - 2p/u1`, which exists only if `u1 a > 1`.
pub fn wall_limit_eigenvalue(u1: f64, a: f64) -> Option<f64> {
    if !(u1 > 0.0 && a > 0.0) || u1 * a <= 1.0 {
        return None;
    }
    // Convex, negative at its minimum p_star and positive at u1/2.
    let g = |p: f64| (-2.0 * p * a).exp() - (1.0 - 2.0 * p / u1);
    let p_star = (u1 * a).ln() / (2.0 * a);
    let b = Bracket::new(g, p_star, 0.5 * u1)?;
    let p = bisect(g, &b, 1e-14).root.re;
    Some(-p * p)
}

/// Equal wells: the residual factors into `e^{-pa} = 2p/u0 - 1` (ground
/// state) and `e^{-pa} = 1 - 2p/u0` (excited state, present iff `u0 a > 2`).
pub fn symmetric_factored_roots(u0: f64, a: f64) -> Result<(f64, Option<f64>)> {
    if !(u0 > 0.0 && a > 0.0 && u0.is_finite() && a.is_finite()) {
        return Err(Error::invalid(format!("need u0 > 0 and a > 0, got {u0}, {a}")));
    }
    let even = |p: f64| 2.0 * p / u0 - 1.0 - (-p * a).exp();
    let b = Bracket::new(even, 0.5 * u0, u0).expect("even level is always bracketed");
    let p0 = bisect(even, &b, 1e-14).root.re;

    let odd = if u0 * a > 2.0 {
        let g = |p: f64| (-p * a).exp() - (1.0 - 2.0 * p / u0);
        let p_star = (0.5 * u0 * a).ln() / a;
        Bracket::new(g, p_star, 0.5 * u0).map(|b| {
            let p = bisect(g, &b, 1e-14).root.re;
            -p * p
        })
    } else {
        None
    };
    Ok((-p0 * p0, odd))
}

/// Separation `a* = 1/u1 + 1/u2` beyond which the second level exists.
pub fn second_level_threshold(u1: f64, u2: f64) -> Result<f64> {
    if !(u1 > 0.0 && u2 > 0.0) {
        return Err(Error::invalid(format!("depths must be positive, got {u1}, {u2}")));
    }
    Ok(1.0 / u1 + 1.0 / u2)
}

/// Levels of two independent wells, approached as `a -> ∞`.
pub fn large_separation_limits(u1: f64, u2: f64) -> (f64, f64) {
    let (deep, shallow) = (u1.max(u2), u1.min(u2));
    (-0.25 * deep * deep, -0.25 * shallow * shallow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Separation,
    Depth2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelCurvePoint {
    pub sweep_value: f64,
    /// Ascending, at most two.
    pub levels: Vec<f64>,
    /// Solver failure at this grid point, if any.
    pub error: Option<String>,
}

/// Bound levels on a uniform grid of `a` or `u2`, all other parameters taken
/// from `fixed`.
pub fn level_sweep(
    fixed: &WellPair,
    sweep: SweepParameter,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Vec<LevelCurvePoint>> {
    if n < 2 || !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::invalid(format!("bad sweep range [{lo}, {hi}] with {n} points")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let value = if i == n - 1 { hi } else { lo + step * i as f64 };
            let well = match sweep {
                SweepParameter::Separation => WellPair::new(fixed.u1, fixed.u2, value),
                SweepParameter::Depth2 => WellPair::new(fixed.u1, value, fixed.a),
            };
            match well.and_then(|w| bound_energies(&w)) {
                Ok(levels) => LevelCurvePoint { sweep_value: value, levels, error: None },
                Err(e) => LevelCurvePoint { sweep_value: value, levels: Vec::new(), error: Some(e.to_string()) },
            }
        })
        .collect())
}

/// Follows the two level branches through a sweep by nearest-energy matching
/// between consecutive points. Returns `[branch 0, branch 1]` per point.
///
/// The grid must be fine enough that a level moves less than half the
/// smallest gap per step.
pub fn track_branches(points: &[LevelCurvePoint]) -> Vec<[Option<f64>; 2]> {
    let mut out = Vec::with_capacity(points.len());
    let mut last: [Option<f64>; 2] = [None, None];
    for point in points {
        let mut current: [Option<f64>; 2] = [None, None];
        match point.levels.as_slice() {
            [] => {}
            [e] => {
                let slot = match last {
                    [Some(x), Some(y)] => usize::from((e - y).abs() < (e - x).abs()),
                    [None, Some(_)] => 1,
                    _ => 0,
                };
                current[slot] = Some(*e);
            }
            [e0, e1, ..] => match last {
                [Some(x), Some(y)] => {
                    let straight = (e0 - x).abs() + (e1 - y).abs();
                    let crossed = (e1 - x).abs() + (e0 - y).abs();
                    current = if crossed < straight { [Some(*e1), Some(*e0)] } else { [Some(*e0), Some(*e1)] };
                }
                [Some(x), None] => {
                    current =
                        if (e0 - x).abs() <= (e1 - x).abs() { [Some(*e0), Some(*e1)] } else { [Some(*e1), Some(*e0)] };
                }
                [None, Some(y)] => {
                    current =
                        if (e1 - y).abs() <= (e0 - y).abs() { [Some(*e0), Some(*e1)] } else { [Some(*e1), Some(*e0)] };
                }
                [None, None] => current = [Some(*e0), Some(*e1)],
            },
        }
        out.push(current);
        last = current;
    }
    out
}
