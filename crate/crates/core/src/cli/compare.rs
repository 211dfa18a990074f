use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::RunConfig;
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::fock::{fluct_poisson_fock, fluct_gauss_fock};
use crate::io::{Flavor, Resolved};
use crate::rmt::{gue_series, wishart_series, Ensemble, Family, Laurent, Letter, TraceStatistic};
use crate::theory::{gauss_cov, psicheck_sum, wishart_cov, MAX_PSICHECK};

/// Standard errors allowed between a Monte Carlo estimate and its target.
pub const SIGMAS: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "EXACT-EQUAL")]
    ExactEqual,
    #[serde(rename = "WITHIN-SE")]
    WithinSe,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ExactEqual => "EXACT-EQUAL",
            Status::WithinSe => "WITHIN-SE",
            Status::Mismatch => "MISMATCH",
        })
    }
}

/// One pairwise comparison; `a` is the reference engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    pub a_value: String,
    pub b_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub se: Option<f64>,
    pub status: Status,
}

/// The `compare` report; its JSON form is the machine-readable schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub flavor: Flavor,
    pub left: String,
    pub right: String,
    pub comparisons: Vec<Comparison>,
    /// Engines not run, with the reason.
    pub skipped: Vec<String>,
    pub passed: bool,
}

impl CompareReport {
    pub fn write_text(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "{} x {}", self.left, self.right)?;
        for c in &self.comparisons {
            let se = c.se.map(|s| format!(" (se {s:.3e})")).unwrap_or_default();
            writeln!(w, "{} vs {}: {} vs {}{se}  {}", c.a, c.b, c.a_value, c.b_value, c.status)?;
        }
        for s in &self.skipped {
            writeln!(w, "skipped: {s}")?;
        }
        writeln!(w, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn exact(a: &str, av: &Scalar, b: &str, bv: &Scalar) -> Comparison {
    Comparison {
        a: a.into(),
        b: b.into(),
        a_value: av.to_string(),
        b_value: bv.to_string(),
        se: None,
        status: if av == bv { Status::ExactEqual } else { Status::Mismatch },
    }
}

/// The N⁰ coefficient of an exact covariance series, if there is no
/// growing term.
fn leading(series: &Laurent) -> Option<Scalar> {
    match series.degree() {
        Some(d) if d > 0 => None,
        _ => Some(series.coeff(0)),
    }
}

/// Evaluates the covariance of the request's `left` and `right` words with
/// every engine that applies and compares each against the diagram sum:
/// the cyclic Fock space, the ψ̌ sum over NC(n, m) (Wishart), the N⁰ term of
/// the exact finite-N oracle and, when `samples` and `seed` are set, a Monte
/// Carlo estimate at the first `N` against the exact value at that N.
pub fn compare(r: &Resolved, cfg: &RunConfig) -> Result<CompareReport> {
    r.require_pair()?;
    let (n, m) = (r.left.len(), r.right.len());
    let mut comparisons = Vec::new();
    let mut skipped = Vec::new();
    let (combinatorial, series) = match &r.family {
        Family::Gaussian { space, .. } => {
            let (fs, gs) = (r.vectors(&r.left), r.vectors(&r.right));
            let c = gauss_cov(space, &fs, &gs)?;
            comparisons.push(exact("combinatorial", &c, "fock", &fluct_gauss_fock(space, &fs, &gs)?));
            (c, gue_series(space, &[fs, gs], true))
        }
        Family::Wishart { alg, .. } => {
            let (ds, es) = (r.matrices(&r.left), r.matrices(&r.right));
            let c = wishart_cov(alg, &ds, &es)?;
            comparisons.push(exact("combinatorial", &c, "fock", &fluct_poisson_fock(alg, &ds, &es)?));
            if n + m <= MAX_PSICHECK {
                let all: Vec<_> = ds.iter().chain(&es).cloned().collect();
                comparisons.push(exact("combinatorial", &c, "psicheck", &psicheck_sum(alg, n, m, &all)?));
            } else {
                skipped.push(format!("psicheck: n + m = {} exceeds {MAX_PSICHECK}", n + m));
            }
            (c, wishart_series(alg, &[ds, es], true))
        }
    };
    let series = match series {
        Ok(s) => Some(s),
        Err(e @ Error::Guard { .. }) => {
            skipped.push(format!("oracle: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(s) = &series {
        comparisons.push(match leading(s) {
            Some(v) => exact("combinatorial", &combinatorial, "oracle-limit", &v),
            None => Comparison {
                a: "combinatorial".into(),
                b: "oracle-limit".into(),
                a_value: combinatorial.to_string(),
                b_value: s.to_string(),
                se: None,
                status: Status::Mismatch,
            },
        });
    }
    match (cfg.samples, cfg.seed) {
        (Some(samples), Some(seed)) => {
            let size = cfg.n.first().copied().unwrap_or(32);
            comparisons.push(monte_carlo(r, size, samples, seed, series.as_ref(), &combinatorial)?);
        }
        _ => skipped.push("monte-carlo: needs --samples and --seed".into()),
    }
    let passed = comparisons.iter().all(|c| c.status != Status::Mismatch);
    Ok(CompareReport {
        flavor: r.flavor(),
        left: r.label(&r.left),
        right: r.label(&r.right),
        comparisons,
        skipped,
        passed,
    })
}

fn monte_carlo(
    r: &Resolved,
    size: usize,
    samples: usize,
    seed: u64,
    series: Option<&Laurent>,
    limit: &Scalar,
) -> Result<Comparison> {
    let ensemble = Ensemble::new(size, seed)?;
    let (ensemble, letter): (Ensemble, fn(usize) -> Letter) = match &r.family {
        Family::Gaussian { space, alphabet } => (ensemble.with_gaussian(space, alphabet)?, Letter::Field),
        Family::Wishart { alg, alphabet } => (ensemble.with_wishart(alg, alphabet)?, Letter::Wishart),
    };
    let stats = [
        TraceStatistic::word(r.left.iter().map(|&i| letter(i)).collect()),
        TraceStatistic::word(r.right.iter().map(|&i| letter(i)).collect()),
    ];
    let est = ensemble.simulate(&stats, samples)?.joint(&[0, 1])?;
    let (name, target) = match series {
        Some(s) => (format!("oracle(N={size})"), s.eval(size)),
        None => ("combinatorial".to_string(), limit.clone()),
    };
    let (re, im) = target.to_f64();
    Ok(Comparison {
        a: name,
        b: format!("monte-carlo(N={size})"),
        a_value: target.to_string(),
        b_value: format!("{:.6}", est.value.re),
        se: Some(est.se),
        status: if est.within(Complex64::new(re, im), SIGMAS) {
            Status::WithinSe
        } else {
            Status::Mismatch
        },
    })
}
