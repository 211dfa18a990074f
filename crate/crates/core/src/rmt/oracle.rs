use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{GramSpace, Matrix, MatrixAlgebra, Scalar, Vector};
use crate::annular::enumerate_pairings;
use crate::error::{guard, Error, Result};
use crate::perm::{for_each_permutation, join_with, AnnulusProfile, Permutation};

/// Largest total word length for the Gaussian oracles.
pub const MAX_GUE_ORACLE: usize = 14;
/// Largest total word length for the compound Wishart oracles.
pub const MAX_WISHART_ORACLE: usize = 8;

/// A finite Laurent polynomial `Σ c_e N^e` with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<i32, Scalar>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn add_term(&mut self, exp: i32, c: &Scalar) {
        let e = self.terms.entry(exp).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, n: usize) -> Scalar {
        let x = Scalar::from_int(n as i64);
        self.terms.iter().map(|(e, c)| c * &x.pow(*e)).sum()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·N")?,
                _ => write!(f, "({c})·N^{e}")?,
            }
        }
        Ok(())
    }
}

fn profile_of<T>(groups: &[Vec<T>]) -> Result<AnnulusProfile> {
    AnnulusProfile::new(groups.iter().map(Vec::len).collect())
}

/// `E Π_r Tr(X_N(f_{r,1})⋯X_N(f_{r,n_r}))` (or the joint cumulant of these
/// traces when `connected`) as a Laurent polynomial in N.
///
/// Wick's formula on the entries gives
/// `Σ_{π ∈ P₂(n)} Π_{(k,l) ∈ π} ⟨f_k, f̄_l⟩ N^{#(γπ) − n/2}`, the cumulant
/// keeping only pairings with `π ∨ γ = 1`.
pub fn gue_series(space: &GramSpace, groups: &[Vec<Vector>], connected: bool) -> Result<Laurent> {
    let profile = profile_of(groups)?;
    let n = profile.total();
    guard("total word length", n, MAX_GUE_ORACLE)?;
    let mut out = Laurent::zero();
    if n % 2 == 1 {
        return Ok(out);
    }
    let slots: Vec<&Vector> = groups.iter().flatten().collect();
    let table: Vec<Vec<Scalar>> = slots
        .iter()
        .map(|f| slots.iter().map(|g| space.bilinear(f, g)).collect())
        .collect::<Result<_>>()?;
    let gamma = profile.gamma();
    for pairing in enumerate_pairings(n)? {
        let mut w = Scalar::one();
        for &(k, l) in pairing.pairs() {
            w *= &table[k][l];
            if w.is_zero() {
                break;
            }
        }
        if w.is_zero() {
            continue;
        }
        let pi = pairing.to_permutation();
        if connected && !join_with(&pi, &gamma)?.is_one() {
            continue;
        }
        let exp = Permutation::compose(&gamma, &pi)?.cycle_count() as i32 - (n / 2) as i32;
        out.add_term(exp, &w);
    }
    Ok(out)
}

/// Exact joint cumulant of `Tr` of Gaussian words, one word per group, at
/// matrix size `n`.
pub fn exact_gue_cumulant(space: &GramSpace, groups: &[Vec<Vector>], n: usize) -> Result<Scalar> {
    check_size(n)?;
    Ok(gue_series(space, groups, true)?.eval(n))
}

/// Exact joint moment `E Π Tr(word)` of Gaussian words at matrix size `n`.
pub fn exact_gue_moment(space: &GramSpace, groups: &[Vec<Vector>], n: usize) -> Result<Scalar> {
    check_size(n)?;
    Ok(gue_series(space, groups, false)?.eval(n))
}

/// Compound Wishart analogue of [`gue_series`] for inflated `d`'s:
/// `Σ_σ N^{#(σ⁻¹γ) − n} Tr_σ(D₁,..,D_n)` with `Tr_σ(D) = N^{#σ} ψ_σ(d)`,
/// the cumulant keeping only `σ ∨ γ = 1`.
pub fn wishart_series(alg: &MatrixAlgebra, groups: &[Vec<Matrix>], connected: bool) -> Result<Laurent> {
    let profile = profile_of(groups)?;
    let n = profile.total();
    guard("total word length", n, MAX_WISHART_ORACLE)?;
    let slots: Vec<&Matrix> = groups.iter().flatten().collect();
    let gamma = profile.gamma();
    let mut out = Laurent::zero();
    let mut err = None;
    for_each_permutation(n, |sigma| {
        if err.is_some() {
            return;
        }
        let step = || -> Result<Option<(i32, Scalar)>> {
            if connected && !join_with(sigma, &gamma)?.is_one() {
                return Ok(None);
            }
            let w = alg.psi_pi(sigma, &slots)?;
            if w.is_zero() {
                return Ok(None);
            }
            let rest = Permutation::compose(&sigma.inverse(), &gamma)?.cycle_count();
            Ok(Some((rest as i32 - n as i32 + sigma.cycle_count() as i32, w)))
        };
        match step() {
            Ok(Some((e, w))) => out.add_term(e, &w),
            Ok(None) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Exact joint cumulant of `Tr` of compound Wishart words at matrix size
/// `n`; needs `k | n`.
pub fn exact_wishart_cumulant(alg: &MatrixAlgebra, groups: &[Vec<Matrix>], n: usize) -> Result<Scalar> {
    check_divisible(alg, n)?;
    Ok(wishart_series(alg, groups, true)?.eval(n))
}

/// Exact joint moment `E Π Tr(word)` of compound Wishart words.
pub fn exact_wishart_moment(alg: &MatrixAlgebra, groups: &[Vec<Matrix>], n: usize) -> Result<Scalar> {
    check_divisible(alg, n)?;
    Ok(wishart_series(alg, groups, false)?.eval(n))
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Invalid("matrix size N must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_divisible(alg: &MatrixAlgebra, n: usize) -> Result<()> {
    check_size(n)?;
    if !n.is_multiple_of(alg.size()) {
        return Err(Error::Divisibility { k: alg.size(), n });
    }
    Ok(())
}

/// Solves `value(N) = Σ_j c_j N^{−p_j}` exactly from one point per power.
/// Returns `c_j` in the order of `powers`.
pub fn fit_inverse_powers(points: &[(usize, Scalar)], powers: &[i32]) -> Result<Vec<Scalar>> {
    let k = powers.len();
    if points.len() != k {
        return Err(Error::SizeMismatch {
            expected: k,
            actual: points.len(),
        });
    }
    let mut a: Vec<Vec<Scalar>> = points
        .iter()
        .map(|(n, v)| {
            let x = Scalar::from_int(*n as i64);
            let mut row: Vec<Scalar> = powers.iter().map(|&p| x.pow(-p)).collect();
            row.push(v.clone());
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Invalid("fit points do not determine the coefficients".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].inv().expect("nonzero pivot");
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=k {
                    let t = &a[col][c] * &f;
                    a[r][c] -= &t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}

/// The N → ∞ limit of `value(N)`, read off as the constant term of an exact
/// fit in `1, N⁻², N⁻⁴` at three sizes.
pub fn extract_limit(points: &[(usize, Scalar)]) -> Result<Scalar> {
    Ok(fit_inverse_powers(points, &[0, 2, 4])?.swap_remove(0))
}
