use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use super::{io_err, Outcome, PlotArgs};
use crate::error::{Error, Result};
use crate::rmt::ConvergenceTable;

/// Two series for one statistic: `(N, k₂ − limit)` and `(N, |k₃|)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotSeries {
    pub statistic: String,
    pub residual: Vec<(usize, f64)>,
    pub abs_k3: Vec<(usize, f64)>,
}

/// Extracts the series of `statistic`, or of the first statistic in the
/// table.
pub fn plot_series(table: &ConvergenceTable, statistic: Option<&str>) -> Result<PlotSeries> {
    let first = table
        .rows
        .first()
        .ok_or_else(|| Error::Invalid("convergence table is empty".into()))?;
    let name = statistic.unwrap_or(&first.statistic);
    let rows: Vec<_> = table.rows.iter().filter(|r| r.statistic == name).collect();
    if rows.is_empty() {
        return Err(Error::Invalid(format!("statistic `{name}` is not in the table")));
    }
    Ok(PlotSeries {
        statistic: name.to_string(),
        residual: rows
            .iter()
            .filter_map(|r| Some((r.n, r.k2? - r.theory_limit?)))
            .collect(),
        abs_k3: rows.iter().filter_map(|r| Some((r.n, r.k3?.abs()))).collect(),
    })
}

fn write_series(w: &mut dyn Write, column: &str, points: &[(usize, f64)]) -> std::io::Result<()> {
    writeln!(w, "N,{column}")?;
    for (n, v) in points {
        writeln!(w, "{n},{v}")?;
    }
    Ok(())
}

pub(super) fn plotdata(a: &PlotArgs, out: &mut dyn Write) -> Result<Outcome> {
    let file = File::open(&a.input).map_err(|e| Error::Parse(format!("{}: {e}", a.input.display())))?;
    let table = ConvergenceTable::read_csv(file)?;
    let s = plot_series(&table, a.statistic.as_deref())?;
    match &a.out {
        Some(prefix) => {
            for (suffix, column, points) in [("residual", "residual", &s.residual), ("k3", "abs_k3", &s.abs_k3)] {
                let mut path = PathBuf::from(prefix);
                path.as_mut_os_string().push(format!(".{suffix}.csv"));
                let mut f = File::create(&path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                write_series(&mut f, column, points).map_err(io_err)?;
            }
        }
        None => {
            writeln!(out, "# {}", s.statistic).map_err(io_err)?;
            write_series(out, "residual", &s.residual).map_err(io_err)?;
            writeln!(out).map_err(io_err)?;
            write_series(out, "abs_k3", &s.abs_k3).map_err(io_err)?;
        }
    }
    Ok(Outcome::Pass)
}
