use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Number of sub-batches used for standard errors.
pub const SUB_BATCHES: usize = 10;

/// A Monte Carlo estimate with its batch standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: Complex64,
    pub se: f64,
}

impl Estimate {
    /// `|value − target| / se`; infinite when the error is zero but the
    /// values differ.
    pub fn z_score(&self, target: Complex64) -> f64 {
        let d = (self.value - target).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.se
        }
    }

    pub fn within(&self, target: Complex64, sigmas: f64) -> bool {
        self.z_score(target) <= sigmas
    }
}

fn need(have: usize, need: usize) -> Result<()> {
    if have < need {
        Err(Error::InsufficientSamples { need, have })
    } else {
        Ok(())
    }
}

/// Unbiased joint k-statistic of order `r = cols.len() ≤ 3` of equally long
/// sample columns; for equal columns these are the univariate `k₁, k₂, k₃`.
pub fn joint_k_statistic(cols: &[&[Complex64]]) -> Result<Complex64> {
    let r = cols.len();
    if r == 0 || r > 3 {
        return Err(Error::Invalid(format!("joint k-statistics have order 1..=3, got {r}")));
    }
    let m = cols[0].len();
    if let Some(c) = cols.iter().find(|c| c.len() != m) {
        return Err(Error::SizeMismatch {
            expected: m,
            actual: c.len(),
        });
    }
    need(m, r.max(1))?;
    let (dev, means): (Vec<Vec<Complex64>>, Vec<Complex64>) = cols.iter().map(|c| deviations(c)).unzip();
    if r == 1 {
        return Ok(means[0]);
    }
    let mf = m as f64;
    let sum: Complex64 = (0..m).map(|i| dev.iter().map(|d| d[i]).product::<Complex64>()).sum();
    Ok(match r {
        2 => sum / (mf - 1.0),
        _ => sum * mf / ((mf - 1.0) * (mf - 2.0)),
    })
}

/// Deviations from the sample mean and the mean itself. Values are first
/// shifted by the first sample so that constant data give exact zeros.
fn deviations(xs: &[Complex64]) -> (Vec<Complex64>, Complex64) {
    let x0 = xs[0];
    let shifted: Vec<Complex64> = xs.iter().map(|x| x - x0).collect();
    let mean = shifted.iter().sum::<Complex64>() / xs.len() as f64;
    (shifted.iter().map(|y| y - mean).collect(), x0 + mean)
}

/// Unbiased univariate k-statistic `k_r`, `1 ≤ r ≤ 4`.
pub fn k_statistic(xs: &[Complex64], r: usize) -> Result<Complex64> {
    match r {
        1..=3 => joint_k_statistic(&vec![xs; r]),
        4 => {
            need(xs.len(), 4)?;
            let (dev, _) = deviations(xs);
            let m = xs.len() as f64;
            let s2: Complex64 = dev.iter().map(|d| d * d).sum();
            let s4: Complex64 = dev.iter().map(|d| d * d * d * d).sum();
            Ok((s4 * (m * (m + 1.0)) - s2 * s2 * (3.0 * (m - 1.0))) / ((m - 1.0) * (m - 2.0) * (m - 3.0)))
        }
        _ => Err(Error::Invalid(format!("k-statistics have order 1..=4, got {r}"))),
    }
}

/// Applies `stat` to the whole sample and to each of [`SUB_BATCHES`]
/// contiguous sub-batches; the standard error is the standard deviation of
/// the sub-batch values divided by `√SUB_BATCHES`.
pub fn batched<F>(m: usize, min_per_batch: usize, stat: F) -> Result<Estimate>
where
    F: Fn(std::ops::Range<usize>) -> Result<Complex64>,
{
    need(m, SUB_BATCHES * min_per_batch)?;
    let value = stat(0..m)?;
    let subs: Vec<Complex64> = (0..SUB_BATCHES)
        .map(|b| stat(b * m / SUB_BATCHES..(b + 1) * m / SUB_BATCHES))
        .collect::<Result<_>>()?;
    let b = SUB_BATCHES as f64;
    let mean = subs.iter().sum::<Complex64>() / b;
    let var = subs.iter().map(|s| (s - mean).norm_sqr()).sum::<f64>() / (b - 1.0);
    Ok(Estimate {
        value,
        se: (var / b).sqrt(),
    })
}

/// `k₁, .., k₄` with standard errors; orders without enough samples for
/// [`SUB_BATCHES`] sub-batches are omitted. Needs at least
/// [`SUB_BATCHES`] samples.
pub fn estimate_cumulants(xs: &[Complex64]) -> Result<Vec<Estimate>> {
    need(xs.len(), SUB_BATCHES)?;
    (1..=4)
        .take_while(|&r| xs.len() >= SUB_BATCHES * r)
        .map(|r| batched(xs.len(), r, |range| k_statistic(&xs[range], r)))
        .collect()
}

/// Joint k-statistic of up to three columns with a standard error.
pub fn estimate_joint(cols: &[&[Complex64]]) -> Result<Estimate> {
    let m = cols.first().map_or(0, |c| c.len());
    batched(m, cols.len(), |range| {
        let sub: Vec<&[Complex64]> = cols.iter().map(|c| &c[range.clone()]).collect();
        joint_k_statistic(&sub)
    })
}
