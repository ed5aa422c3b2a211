use rayon::prelude::*;

use crate::consts::E_REF;
use crate::error::{Error, Result};
use crate::limits::{compound, compound_x, supplementary_compound};
use crate::odesolve::euler_final;
use crate::report::{ConvergenceRecord, Param};
use crate::series::{factorial_partial_sum, sinc_limit_table, tail_bound, taylor_exp};

use super::grid::{Grid, GridKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    Compound,
    CompoundX,
    Series,
    Euler,
    Pitfall,
    Sinc,
}

impl TableKind {
    pub fn default_grid(self) -> Grid {
        match self {
            TableKind::Compound => Grid::new(GridKind::Pow10, 0, 6),
            TableKind::CompoundX => Grid::new(GridKind::Pow10, 0, 6),
            TableKind::Series => Grid::new(GridKind::Dyadic, 0, 7),
            TableKind::Euler => Grid::new(GridKind::Pow10, 0, 5),
            TableKind::Pitfall => Grid::new(GridKind::Pow10, 1, 6),
            TableKind::Sinc => Grid::new(GridKind::Dyadic, 1, 30),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableParams {
    pub kind: TableKind,
    pub grid: Option<Grid>,
    /// Exponent for `compound-x` and `euler`.
    pub x: f64,
    /// Rates for `pitfall`.
    pub c: Vec<f64>,
    pub parallel: bool,
}

impl TableParams {
    pub fn new(kind: TableKind) -> Self {
        TableParams { kind, grid: None, x: 1.0, c: vec![0.0, 1.0, 2.0], parallel: false }
    }
}

/// Bound on `|e^x − (1 + x/n)^n|` with a rounding allowance.
///
/// With `t = x/n`, `x − n·ln(1 + t)` lies in `[0, x²/(2n·min(1, 1 + t))]`,
/// and `1 − e^{−δ} ≤ δ`.
pub fn compound_x_bound(x: f64, n: u64, reference: f64) -> f64 {
    let nf = n as f64;
    let delta = x * x / (2.0 * nf * (1.0 + x / nf).min(1.0));
    reference * (delta + 8.0 * f64::EPSILON)
}

fn exp_reference(x: f64) -> Result<f64> {
    Ok(taylor_exp(x, 1e-17)?.partial_sum)
}

fn map_counts<F>(counts: &[u64], parallel: bool, f: F) -> Result<Vec<ConvergenceRecord>>
where
    F: Fn(u64) -> Result<ConvergenceRecord> + Sync,
{
    if parallel {
        counts.par_iter().map(|&n| f(n)).collect()
    } else {
        counts.iter().map(|&n| f(n)).collect()
    }
}

pub fn cmd_table(p: &TableParams) -> Result<Vec<ConvergenceRecord>> {
    let grid = p.grid.unwrap_or_else(|| p.kind.default_grid());
    match p.kind {
        TableKind::Sinc => {
            if grid.kind != GridKind::Dyadic {
                return Err(Error::Invalid("sinc tables need a dyadic grid".into()));
            }
            sinc_limit_table(grid.levels())
        }
        TableKind::Compound => map_counts(&grid.counts()?, p.parallel, |n| {
            let bound = E_REF / (2.0 * n as f64 + 1.0) + 8.0 * f64::EPSILON;
            Ok(ConvergenceRecord::new(Param::Count(n), compound(n)?, E_REF, Some(bound)))
        }),
        TableKind::CompoundX | TableKind::Euler => {
            let x = p.x;
            let reference = exp_reference(x)?;
            let euler = p.kind == TableKind::Euler;
            map_counts(&grid.counts()?, p.parallel, |n| {
                let value = if euler { euler_final(x, n)? } else { compound_x(x, n)? };
                let bound = compound_x_bound(x, n, reference);
                Ok(ConvergenceRecord::new(Param::Count(n), value, reference, Some(bound)))
            })
        }
        TableKind::Series => map_counts(&grid.counts()?, p.parallel, |m| {
            let bound = tail_bound(m) + 4.0 * f64::EPSILON;
            Ok(ConvergenceRecord::new(Param::Count(m), factorial_partial_sum(m)?, E_REF, Some(bound)))
        }),
        TableKind::Pitfall => {
            if p.c.is_empty() {
                return Err(Error::Invalid("--c needs at least one rate".into()));
            }
            let counts = grid.counts()?;
            let mut rows = Vec::new();
            for &c in &p.c {
                let reference = exp_reference(c)?;
                rows.extend(map_counts(&counts, p.parallel, |n| {
                    let bound = compound_x_bound(c, n, reference);
                    Ok(ConvergenceRecord::new(Param::Count(n), compound_x(c, n)?, reference, Some(bound)))
                })?);
            }
            rows.extend(map_counts(&counts, p.parallel, |n| {
                Ok(ConvergenceRecord::new(Param::Count(n), supplementary_compound(n)?, E_REF, None))
            })?);
            Ok(rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(kind: TableKind, grid: &str) -> Vec<ConvergenceRecord> {
        let p = TableParams { grid: Some(grid.parse().unwrap()), ..TableParams::new(kind) };
        cmd_table(&p).unwrap()
    }

    #[test]
    fn compound_first_row() {
        let rows = run(TableKind::Compound, "pow10:0..4");
        assert_eq!((rows[0].param, rows[0].value), (Param::Count(1), 2.0));
        assert!(rows.iter().all(ConvergenceRecord::bound_holds));
    }

    #[test]
    fn pitfall_groups() {
        let rows = run(TableKind::Pitfall, "pow10:1..4");
        assert_eq!(rows.len(), 16);
        // c = 1 group is the second block of four.
        assert!((rows[7].value - 2.71815).abs() < 1e-5);
        assert!(rows[..12].iter().all(ConvergenceRecord::bound_holds));
    }

    #[test]
    fn sinc_monotone() {
        let rows = run(TableKind::Sinc, "dyadic:1..20");
        assert!(rows.windows(2).all(|w| w[0].value <= w[1].value));
        let p = TableParams { grid: Some("pow10:1..2".parse().unwrap()), ..TableParams::new(TableKind::Sinc) };
        assert!(cmd_table(&p).is_err());
    }

    #[test]
    fn bounds_hold_everywhere() {
        for kind in [TableKind::Compound, TableKind::Series, TableKind::Euler] {
            assert!(cmd_table(&TableParams::new(kind)).unwrap().iter().all(ConvergenceRecord::bound_holds));
        }
        for x in [-2.0, -0.5, 3.0] {
            let p = TableParams { x, grid: Some("pow10:1..6".parse().unwrap()), ..TableParams::new(TableKind::CompoundX) };
            assert!(cmd_table(&p).unwrap().iter().all(ConvergenceRecord::bound_holds), "x = {x}");
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = TableParams::new(TableKind::Pitfall);
        let parallel = TableParams { parallel: true, ..serial.clone() };
        assert_eq!(cmd_table(&serial).unwrap(), cmd_table(&parallel).unwrap());
    }
}
