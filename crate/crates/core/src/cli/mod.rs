//! The `fluctus` command line.
//!
//! Exit codes: 0 on success, 1 when `compare` finds a mismatch, 2 on any
//! input, parse or guard error.

mod compare;
mod config;
mod plot;

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::Scalar;
use crate::annular::{enumerate_nc2, enumerate_nc_annular_partitions, enumerate_nc_disc, enumerate_snc};
use crate::error::{Error, Result};
use crate::fock::{FockModel, PoissonFock, SemicircularFock};
use crate::io::{Flavor, Resolved};
use crate::perm::AnnulusProfile;
use crate::rmt::{
    convergence_study, exact_gue_cumulant, exact_wishart_cumulant, Family, MAX_GUE_ORACLE, MAX_WISHART_ORACLE,
};
use crate::theory::{gauss_cov, wishart_cov};

pub use compare::{compare, Comparison, CompareReport, Status};
pub use config::RunConfig;
pub use plot::{plot_series, PlotSeries};

#[derive(Debug, Parser)]
#[command(name = "fluctus", version, about = "Second-order statistics of Gaussian and compound Wishart matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (and optionally list) non-crossing diagrams on a disc or annulus.
    Enumerate(EnumerateArgs),
    /// Exact large-N covariance of two trace words by summing diagrams.
    Covariance(RunArgs),
    /// The same covariance from the cyclic Fock space.
    Fock(FockArgs),
    /// Monte Carlo cumulants of trace words at several matrix sizes.
    Simulate(RunArgs),
    /// Exact finite-N cumulants of trace words.
    Oracle(RunArgs),
    /// Cross-check all engines on one pair of words.
    Compare(RunArgs),
    /// Plot-ready series from a `simulate` table.
    Plotdata(PlotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pairings,
    Partitions,
    Permutations,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Circle sizes, e.g. `2,1`.
    #[arg(long)]
    pub profile: String,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Print the elements as JSON after the count.
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Options shared by the request-driven subcommands; each may also come
/// from a `--config` file, flags taking precedence.
#[derive(Clone, Debug, Default, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSON request file.
    #[arg(long, alias = "word")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub flavor: Option<Flavor>,
    /// Matrix sizes, comma separated.
    #[arg(long = "N", value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct FockArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Also print the cyclic vectors of both words.
    #[arg(long)]
    pub expand: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// CSV table written by `simulate`.
    #[arg(long)]
    pub input: PathBuf,
    /// Statistic label; defaults to the first one in the table.
    #[arg(long)]
    pub statistic: Option<String>,
    /// Write `<out>.residual.csv` and `<out>.k3.csv` instead of printing.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Whether a command's checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code. Errors are reported on stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Enumerate(a) => enumerate(a, out),
        Command::Covariance(a) => covariance(&RunConfig::merge(a)?, out),
        Command::Fock(a) => fock(&RunConfig::merge(&a.run)?, a.expand, out),
        Command::Simulate(a) => simulate(&RunConfig::merge(a)?, out),
        Command::Oracle(a) => oracle(&RunConfig::merge(a)?, out),
        Command::Compare(a) => {
            let cfg = RunConfig::merge(a)?;
            let report = compare(&cfg.request()?, &cfg)?;
            emit(&cfg, out, |w| report.write_text(w), &report)?;
            Ok(if report.passed { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Plotdata(a) => plot::plotdata(a, out),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid(format!("output: {e}"))
}

/// Writes text or JSON to `--out` or `out`.
fn emit<T: Serialize>(
    cfg: &RunConfig,
    out: &mut dyn Write,
    text: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    json: &T,
) -> Result<()> {
    let mut file;
    let w: &mut dyn Write = match &cfg.out {
        Some(p) => {
            file = File::create(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
            &mut file
        }
        None => out,
    };
    match cfg.format.unwrap_or(Format::Text) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, json).map_err(|e| Error::Invalid(format!("output: {e}")))?;
            writeln!(w).map_err(io_err)
        }
        _ => text(w).map_err(io_err),
    }
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let profile: AnnulusProfile = a.profile.parse()?;
    let sizes = profile.sizes().to_vec();
    let items: Vec<serde_json::Value> = match a.kind {
        Kind::Pairings => to_values(enumerate_nc2(&profile)?.iter()),
        Kind::Permutations => to_values(enumerate_snc(&profile)?.iter().map(|p| p.perm())),
        Kind::Partitions => match sizes[..] {
            [n] => to_values(enumerate_nc_disc(n)?.iter()),
            [n, m] => to_values(enumerate_nc_annular_partitions(n, m)?.iter().map(|s| s.partition())),
            _ => {
                return Err(Error::Invalid(
                    "partitions are enumerated on a disc or an annulus (one or two circles)".into(),
                ))
            }
        },
    };
    writeln!(out, "{}", items.len()).map_err(io_err)?;
    if a.list {
        serde_json::to_writer_pretty(&mut *out, &items).map_err(|e| Error::Invalid(e.to_string()))?;
        writeln!(out).map_err(io_err)?;
    }
    Ok(Outcome::Pass)
}

fn to_values<'a, T: Serialize + 'a>(items: impl Iterator<Item = &'a T>) -> Vec<serde_json::Value> {
    items.map(|x| serde_json::to_value(x).expect("serializable")).collect()
}

#[derive(Serialize)]
struct ValueReport {
    flavor: Flavor,
    left: String,
    right: String,
    value: Scalar,
}

fn covariance(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let r = cfg.request()?;
    r.require_pair()?;
    let value = match &r.family {
        Family::Gaussian { space, .. } => gauss_cov(space, &r.vectors(&r.left), &r.vectors(&r.right))?,
        Family::Wishart { alg, .. } => wishart_cov(alg, &r.matrices(&r.left), &r.matrices(&r.right))?,
    };
    report_value(cfg, &r, value, out)
}

fn report_value(cfg: &RunConfig, r: &Resolved, value: Scalar, out: &mut dyn Write) -> Result<Outcome> {
    let report = ValueReport {
        flavor: r.flavor(),
        left: r.label(&r.left),
        right: r.label(&r.right),
        value,
    };
    emit(cfg, out, |w| writeln!(w, "{}", report.value), &report)?;
    Ok(Outcome::Pass)
}

fn fock(cfg: &RunConfig, expand: bool, out: &mut dyn Write) -> Result<Outcome> {
    let r = cfg.request()?;
    r.require_pair()?;
    let (value, expansions) = match &r.family {
        Family::Gaussian { space, .. } => {
            let m = SemicircularFock::new(space.clone())?;
            let (fs, mut gs) = (r.vectors(&r.left), r.vectors(&r.right));
            let value = m.fluct(&fs, &gs)?;
            gs.reverse();
            let show = |w: &[crate::algebra::Vector]| -> Result<String> {
                Ok(m.show_cyclic(&m.cyc_map(&m.omega_word_on_vacuum(w)?)))
            };
            (value, if expand { Some((show(&fs)?, show(&gs)?)) } else { None })
        }
        Family::Wishart { alg, .. } => {
            let m = PoissonFock::new(*alg);
            let (ds, es) = (r.matrices(&r.left), r.matrices(&r.right));
            let value = m.fluct(&ds, &es)?;
            let adj: Vec<_> = es.iter().rev().map(|e| e.adjoint()).collect();
            let show = |w: &[crate::algebra::Matrix]| -> Result<String> {
                Ok(m.show_cyclic(&m.cyc_map(&m.p_word_on_vacuum(w)?)))
            };
            (value, if expand { Some((show(&ds)?, show(&adj)?)) } else { None })
        }
    };
    match expansions {
        Some((a, b)) if cfg.format != Some(Format::Json) => {
            writeln!(out, "c(left)  = {a}").map_err(io_err)?;
            writeln!(out, "c(right) = {b}").map_err(io_err)?;
            writeln!(out, "{value}").map_err(io_err)?;
            Ok(Outcome::Pass)
        }
        _ => report_value(cfg, &r, value, out),
    }
}

fn simulate(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let seed = cfg
        .seed
        .ok_or_else(|| Error::Invalid("--seed is required for simulate".into()))?;
    let r = cfg.request()?;
    if cfg.n.is_empty() {
        return Err(Error::Invalid("--N needs at least one matrix size".into()));
    }
    let table = convergence_study(&r.study(), &cfg.n, cfg.samples.unwrap_or(10_000), seed)?;
    let cfg = RunConfig {
        format: Some(cfg.format.unwrap_or(Format::Csv)),
        ..cfg.clone()
    };
    emit(&cfg, out, |w| table.write_csv(w).map_err(std::io::Error::other), &table)?;
    Ok(Outcome::Pass)
}

/// One row of `oracle` output: exact values as rational strings.
#[derive(Clone, Debug, Serialize)]
pub struct OracleRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub statistic: String,
    pub k1: Option<Scalar>,
    pub k2: Option<Scalar>,
    pub k3: Option<Scalar>,
    pub theory_limit: Option<Scalar>,
}

fn oracle_rows(r: &Resolved, ns: &[usize]) -> Result<Vec<OracleRow>> {
    let exact = |groups: &[&Vec<usize>], n: usize| -> Result<Option<Scalar>> {
        let total: usize = groups.iter().map(|g| g.len()).sum();
        let v = match &r.family {
            Family::Gaussian { space, .. } => {
                if total > MAX_GUE_ORACLE {
                    return Ok(None);
                }
                let g: Vec<_> = groups.iter().map(|w| r.vectors(w)).collect();
                exact_gue_cumulant(space, &g, n)?
            }
            Family::Wishart { alg, .. } => {
                if total > MAX_WISHART_ORACLE {
                    return Ok(None);
                }
                let g: Vec<_> = groups.iter().map(|w| r.matrices(w)).collect();
                exact_wishart_cumulant(alg, &g, n)?
            }
        };
        Ok(Some(v))
    };
    let study = r.study();
    let mut rows = Vec::new();
    for &n in ns {
        for (i, w) in r.words.iter().enumerate() {
            rows.push(OracleRow {
                n,
                statistic: r.label(w),
                k1: exact(&[w], n)?,
                k2: exact(&[w, w], n)?,
                k3: exact(&[w, w, w], n)?,
                theory_limit: Some(study.theory_k2(i, i)?),
            });
        }
        for &(i, j) in &r.pairs {
            let (a, b) = (&r.words[i], &r.words[j]);
            rows.push(OracleRow {
                n,
                statistic: format!("{} x {}", r.label(a), r.label(b)),
                k1: None,
                k2: exact(&[a, b], n)?,
                k3: None,
                theory_limit: Some(study.theory_k2(i, j)?),
            });
        }
    }
    Ok(rows)
}

fn oracle(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let r = cfg.request()?;
    if r.words.is_empty() {
        return Err(Error::Parse("request: no words given (`left`/`right` or `words`)".into()));
    }
    let ns = if cfg.n.is_empty() { vec![4, 6, 8] } else { cfg.n.clone() };
    let rows = oracle_rows(&r, &ns)?;
    let cfg = RunConfig {
        format: Some(cfg.format.unwrap_or(Format::Csv)),
        ..cfg.clone()
    };
    emit(
        &cfg,
        out,
        |w| {
            let mut c = csv::Writer::from_writer(w);
            for row in &rows {
                c.serialize(row).map_err(std::io::Error::other)?;
            }
            c.flush()
        },
        &rows,
    )?;
    Ok(Outcome::Pass)
}
