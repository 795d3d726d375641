use double_delta::bound_states::{bound_states_with, level_sweep, second_level_threshold, SweepParameter, WellPair};
use double_delta::complex_spectra::{
    hardbox_even_eigenvalues, perfect_transmission_energies_with, resonances_with, SearchConfig,
};
use double_delta::numerics::Tolerances;
use double_delta::scattering::{self, zero_energy_reflection};
use double_delta::table1::run_table1;
use double_delta::DeltaPair;

use crate::error::CliError;
use crate::table::{Cell, Table};
use crate::{Depths, Strengths, SweepParam};

pub struct Output {
    pub table: Table,
    /// Set when the command ran but its checks failed.
    pub failure: Option<String>,
}

impl From<Table> for Output {
    fn from(table: Table) -> Self {
        Output { table, failure: None }
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(CliError::Usage(format!("range [{lo}, {hi}] is empty")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect())
}

fn count(n: usize) -> Result<usize, CliError> {
    if n == 0 {
        Err(CliError::Usage("--n must be at least 1".into()))
    } else {
        Ok(n)
    }
}

pub fn scan(pot: &Strengths, emin: f64, emax: f64, n: usize) -> Result<Output, CliError> {
    let pair = DeltaPair::new(pot.v1, pot.v2, pot.a)?;
    let energies = grid(emin, emax, n)?;
    let mut table = Table::new(vec!["E", "R", "T"]);
    for row in scattering::scan(&pair, &energies) {
        table.push(vec![row.energy.into(), row.reflection.into(), row.transmission.into()]);
    }
    Ok(table.into())
}

pub fn bound(wells: &Depths, tol: &Tolerances) -> Result<Output, CliError> {
    let well = WellPair::new(wells.u1, wells.u2, wells.a)?;
    let levels = bound_states_with(&well, tol)?;
    let a_star = second_level_threshold(wells.u1, wells.u2).ok();
    let mut table = Table::new(vec!["level", "E", "p", "residual", "count", "a_star"]);
    for (i, level) in levels.iter().enumerate() {
        table.push(vec![
            i.into(),
            level.energy.re.into(),
            level.k.im().into(),
            level.residual.into(),
            levels.len().into(),
            a_star.into(),
        ]);
    }
    Ok(table.into())
}

pub fn resonances(pot: &Strengths, n: usize, tol: &Tolerances) -> Result<Output, CliError> {
    let pair = DeltaPair::new(pot.v1, pot.v2, pot.a)?;
    let cfg = SearchConfig { tol: *tol, ..SearchConfig::default() };
    let found = resonances_with(&pair, count(n)?, &cfg)?;
    let mut table = Table::new(vec!["n", "E", "k", "width", "T", "residual"]);
    for (i, r) in found.iter().enumerate() {
        table.push(vec![
            (i + 1).into(),
            Cell::Complex(r.energy.re, r.energy.im),
            Cell::Complex(r.k.re(), r.k.im()),
            r.width.into(),
            r.t_at_peak.into(),
            r.residual.into(),
        ]);
    }
    Ok(table.into())
}

pub fn pt(pot: &Strengths, n: usize, tol: &Tolerances) -> Result<Output, CliError> {
    let pair = DeltaPair::new(pot.v1, pot.v2, pot.a)?;
    let cfg = SearchConfig { tol: *tol, ..SearchConfig::default() };
    let found = perfect_transmission_energies_with(&pair, count(n)?, &cfg)?;
    let mut table = Table::new(vec!["n", "E", "k", "T", "symmetry", "residual"]);
    for (i, p) in found.iter().enumerate() {
        table.push(vec![
            (i + 1).into(),
            Cell::Complex(p.energy.re, p.energy.im),
            Cell::Complex(p.k.re(), p.k.im()),
            p.t_at_energy.into(),
            p.symmetry_class.as_str().into(),
            p.residual.into(),
        ]);
    }
    Ok(table.into())
}

pub fn r0(wells: &Depths) -> Result<Output, CliError> {
    let class = zero_energy_reflection(&DeltaPair::wells(wells.u1, wells.u2, wells.a)?)?;
    let mut table = Table::new(vec!["case", "rho0", "R0", "T0"]);
    table.push(vec![class.case.as_str().into(), class.rho0.into(), class.r0.into(), (1.0 - class.r0).into()]);
    Ok(table.into())
}

pub fn sweep(
    u1: f64,
    u2: Option<f64>,
    a: Option<f64>,
    param: SweepParam,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<Output, CliError> {
    grid(lo, hi, n)?;
    let (fixed, parameter) = match param {
        SweepParam::A => {
            let u2 = u2.ok_or_else(|| CliError::Usage("--u2 is required when sweeping a".into()))?;
            (WellPair { u1, u2, a: f64::NAN }, SweepParameter::Separation)
        }
        SweepParam::U2 => {
            let a = a.ok_or_else(|| CliError::Usage("--a is required when sweeping u2".into()))?;
            (WellPair { u1, u2: f64::NAN, a }, SweepParameter::Depth2)
        }
    };
    let points = level_sweep(&fixed, parameter, lo, hi, n)?;
    let mut table = Table::new(vec!["sweep_value", "E0", "E1"]);
    for p in points {
        table.push(vec![p.sweep_value.into(), p.levels.first().copied().into(), p.levels.get(1).copied().into()]);
    }
    Ok(table.into())
}

pub fn table1() -> Result<Output, CliError> {
    let report = run_table1()?;
    let mut table =
        Table::new(vec!["v1", "v2", "a", "n", "quantity", "expected", "computed", "deviation", "tolerance", "pass"]);
    for c in &report.cells {
        table.push(vec![
            c.v1.into(),
            c.v2.into(),
            c.a.into(),
            c.n.into(),
            c.quantity.as_str().into(),
            c.expected.into(),
            c.computed.into(),
            c.deviation().into(),
            c.quantity.tolerance().into(),
            c.pass().map_or(Cell::Missing, Cell::Bool),
        ]);
    }
    let failing = report.failures().count();
    let failure = (failing > 0).then(|| format!("{failing} table cells outside tolerance"));
    Ok(Output { table, failure })
}

pub fn hardbox(v0: f64, a: f64, n: usize) -> Result<Output, CliError> {
    let levels = hardbox_even_eigenvalues(v0, a, count(n)?)?;
    let mut table = Table::new(vec!["n", "E"]);
    for (i, e) in levels.iter().enumerate() {
        table.push(vec![(i + 1).into(), (*e).into()]);
    }
    Ok(table.into())
}
