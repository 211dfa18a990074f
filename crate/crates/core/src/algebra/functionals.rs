use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Matrix, MatrixAlgebra, Scalar};
use crate::annular::AnnularPartition;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `Tr_σ(A₁,..,A_n)`: product over the cycles of σ of the trace of the
/// cycle-ordered product. With `normalized`, each factor is divided by N.
pub fn tr_sigma(sigma: &Permutation, mats: &[&DMatrix<Complex64>], normalized: bool) -> Result<Complex64> {
    if sigma.size() != mats.len() {
        return Err(Error::SizeMismatch {
            expected: sigma.size(),
            actual: mats.len(),
        });
    }
    let Some(first) = mats.first() else {
        return Ok(Complex64::new(1.0, 0.0));
    };
    let n = first.nrows();
    for m in mats {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: m.nrows().max(m.ncols()),
            });
        }
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for cycle in sigma.cycles() {
        let mut prod = mats[cycle[0]].clone();
        for &i in &cycle[1..] {
            prod *= mats[i];
        }
        let mut t = prod.trace();
        if normalized {
            t /= n as f64;
        }
        acc *= t;
    }
    Ok(acc)
}

/// Exact `Tr_σ` on matrices of exact scalars.
pub fn tr_sigma_exact(sigma: &Permutation, mats: &[&Matrix], normalized: bool) -> Result<Scalar> {
    if sigma.size() != mats.len() {
        return Err(Error::SizeMismatch {
            expected: sigma.size(),
            actual: mats.len(),
        });
    }
    let mut acc = Scalar::one();
    for cycle in sigma.cycles() {
        let mut prod = mats[cycle[0]].clone();
        for &i in &cycle[1..] {
            prod = prod.mul(mats[i])?;
        }
        let mut t = prod.trace();
        if normalized {
            t = &t / &Scalar::from_int(prod.size() as i64);
        }
        acc = acc * t;
    }
    Ok(acc)
}

/// ψ̌₁(t₁,..,t_k) = ψ(t₁⋯t_k).
pub fn psicheck1(alg: &MatrixAlgebra, ts: &[&Matrix]) -> Result<Scalar> {
    alg.psi(ts)
}

/// ψ̌₂(x₁,..,x_p; y₁,..,y_q) =
/// Σ_{k=1}^{p} Σ_{l=1}^{q} ψ(y_l⋯y_q y_1⋯y_{l−1} x_{k+1}⋯x_p x_1⋯x_k).
pub fn psicheck2(alg: &MatrixAlgebra, xs: &[&Matrix], ys: &[&Matrix]) -> Result<Scalar> {
    let (p, q) = (xs.len(), ys.len());
    if p == 0 || q == 0 {
        return Err(Error::Invalid("ψ̌₂ needs both groups nonempty".into()));
    }
    let mut acc = Scalar::zero();
    for k in 1..=p {
        for l in 1..=q {
            let mut word: Vec<&Matrix> = Vec::with_capacity(p + q);
            word.extend(&ys[l - 1..]);
            word.extend(&ys[..l - 1]);
            word.extend(&xs[k..]);
            word.extend(&xs[..k]);
            acc += alg.psi(&word)?;
        }
    }
    Ok(acc)
}

/// ψ̌_σ for σ ∈ NC(n, m): ψ̌₁ on every block, except that a unique
/// through-block `B′ ∪ B″` contributes ψ̌₂(B′; B″).
pub fn psicheck_sigma(alg: &MatrixAlgebra, sigma: &AnnularPartition, ds: &[&Matrix]) -> Result<Scalar> {
    let total = sigma.outer() + sigma.inner();
    if ds.len() != total {
        return Err(Error::SizeMismatch {
            expected: total,
            actual: ds.len(),
        });
    }
    let mut acc = Scalar::one();
    for (i, block) in sigma.partition().blocks().iter().enumerate() {
        let v = if !sigma.through_blocks().contains(&i) {
            let w: Vec<&Matrix> = block.iter().map(|&j| ds[j]).collect();
            psicheck1(alg, &w)?
        } else if let Some(order) = sigma.through_order(i) {
            let w: Vec<&Matrix> = order.iter().map(|&j| ds[j]).collect();
            psicheck1(alg, &w)?
        } else {
            let (bo, bi) = sigma.split_block(i);
            let xs: Vec<&Matrix> = bo.iter().map(|&j| ds[j]).collect();
            let ys: Vec<&Matrix> = bi.iter().map(|&j| ds[j]).collect();
            psicheck2(alg, &xs, &ys)?
        };
        acc = acc * v;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}
