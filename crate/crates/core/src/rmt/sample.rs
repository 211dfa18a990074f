use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{GramSpace, Matrix, MatrixAlgebra, Scalar, Vector};
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Relative tolerance below which a Gram eigenvalue is treated as zero.
const EIGEN_TOL: f64 = 1e-12;

/// The random stream of one sample: ChaCha8 keyed by the master seed, with
/// the sample index as stream id. Parallel and serial runs therefore draw
/// identical variates.
pub fn sample_rng(seed: u64, sample: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    rng
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// A GUE(N) draw with `E|x_ij|² = 1/N` for all `i, j`: the diagonal is
/// `N(0, 1/N)` and off-diagonal real and imaginary parts are `N(0, 1/(2N))`.
/// Variates are consumed row by row over the upper triangle, diagonal first.
pub fn sample_gue(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let sd_diag = (1.0 / n as f64).sqrt();
    let sd_off = (0.5 / n as f64).sqrt();
    let mut x = CMatrix::zeros(n, n);
    for i in 0..n {
        x[(i, i)] = Complex64::new(sd_diag * normal(rng), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(sd_off * normal(rng), sd_off * normal(rng));
            x[(i, j)] = z;
            x[(j, i)] = z.conj();
        }
    }
    x
}

/// An N×N complex Ginibre draw with independent entries, `E|x_ij|² = 1/N`,
/// filled row-major.
pub fn sample_ginibre(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let sd = (0.5 / n as f64).sqrt();
    CMatrix::from_fn(n, n, |_, _| Complex64::new(sd * normal(rng), sd * normal(rng)))
}

/// Matrix size and Gram space of a Gaussian family `X_N(f)`.
#[derive(Clone, Debug)]
pub struct GaussianFamilySpec {
    pub n: usize,
    pub space: GramSpace,
    pub seed: u64,
}

/// Samples `X_N(f₁), .., X_N(f_k)` with
/// `E{x_ij(f) x̄_kl(g)} = δ_ik δ_jl ⟨f, g⟩ / N`.
///
/// With `G = V Λ Vᵀ`, `X_N(e_a) = Σ_j V_aj √λ_j Y_j` for independent GUE
/// draws `Y_j`, and `X_N(f)` follows by linearity.
#[derive(Clone, Debug)]
pub struct GaussianSampler {
    n: usize,
    seed: u64,
    coeffs: Vec<Vec<f64>>,
}

impl GaussianSampler {
    pub fn new(spec: &GaussianFamilySpec, fs: &[Vector]) -> Result<Self> {
        if spec.n == 0 {
            return Err(Error::Invalid("matrix size N must be at least 1".into()));
        }
        if !spec.space.is_real() || !fs.iter().all(Vector::is_real) {
            return Err(Error::Invalid(
                "Gaussian sampling needs a real Gram matrix and real vectors".into(),
            ));
        }
        let k = spec.space.dim();
        for f in fs {
            if f.dim() != k {
                return Err(Error::SpaceMismatch);
            }
        }
        let g = DMatrix::from_fn(k, k, |a, b| spec.space.entry(a, b).re_f64());
        let eig = SymmetricEigen::new(g);
        let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut roots: Vec<(usize, f64)> = Vec::new();
        for (j, &lam) in eig.eigenvalues.iter().enumerate() {
            if lam > EIGEN_TOL * scale {
                roots.push((j, lam.sqrt()));
            } else if lam < -1e-9 * scale {
                return Err(Error::NotPositiveSemidefinite(format!("Gram eigenvalue {lam}")));
            }
        }
        let coeffs = fs
            .iter()
            .map(|f| {
                let c: Vec<f64> = f.coords().iter().map(Scalar::re_f64).collect();
                roots
                    .iter()
                    .map(|&(j, r)| (0..k).map(|a| c[a] * eig.eigenvectors[(a, j)]).sum::<f64>() * r)
                    .collect()
            })
            .collect();
        Ok(GaussianSampler {
            n: spec.n,
            seed: spec.seed,
            coeffs,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of independent GUE draws per sample.
    pub fn rank(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    /// The family for sample `index`.
    pub fn sample(&self, index: u64) -> Vec<CMatrix> {
        self.sample_with(&mut sample_rng(self.seed, index))
    }

    pub(crate) fn sample_with(&self, rng: &mut ChaCha8Rng) -> Vec<CMatrix> {
        let ys: Vec<CMatrix> = (0..self.rank()).map(|_| sample_gue(self.n, rng)).collect();
        self.coeffs
            .iter()
            .map(|c| {
                let mut x = CMatrix::zeros(self.n, self.n);
                for (y, &cj) in ys.iter().zip(c) {
                    x.zip_apply(y, |a, b| *a += b * cj);
                }
                x
            })
            .collect()
    }
}

/// Samples `X_N(f)` for each `f` in `fs`, for sample 0 of `spec.seed`.
pub fn sample_gaussian_family(spec: &GaussianFamilySpec, fs: &[Vector]) -> Result<Vec<CMatrix>> {
    Ok(GaussianSampler::new(spec, fs)?.sample(0))
}

/// Compound Wishart family `P_N(d_i) = X_N* D_i X_N` with a shared Ginibre
/// `X_N` and `D_i = inflate(d_i, N)`.
#[derive(Clone, Debug)]
pub struct WishartSpec {
    pub n: usize,
    pub alg: MatrixAlgebra,
    pub ds: Vec<Matrix>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct WishartSampler {
    n: usize,
    seed: u64,
    ds: Vec<CMatrix>,
}

impl WishartSampler {
    pub fn new(spec: &WishartSpec) -> Result<Self> {
        let ds = spec
            .ds
            .iter()
            .map(|d| {
                if d.size() != spec.alg.size() {
                    return Err(Error::SizeMismatch {
                        expected: spec.alg.size(),
                        actual: d.size(),
                    });
                }
                inflate_complex(d, spec.n)
            })
            .collect::<Result<_>>()?;
        Ok(WishartSampler {
            n: spec.n,
            seed: spec.seed,
            ds,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn sample(&self, index: u64) -> Vec<CMatrix> {
        self.sample_with(&mut sample_rng(self.seed, index))
    }

    pub(crate) fn sample_with(&self, rng: &mut ChaCha8Rng) -> Vec<CMatrix> {
        let x = sample_ginibre(self.n, rng);
        let xa = x.adjoint();
        self.ds.iter().map(|d| &xa * d * &x).collect()
    }
}

/// Samples `P_N(d_i)` for sample 0 of `spec.seed`.
pub fn sample_compound_wishart(spec: &WishartSpec) -> Result<Vec<CMatrix>> {
    Ok(WishartSampler::new(spec)?.sample(0))
}

/// `d ⊗ I_{N/k}`: the normalized trace of any word in inflated matrices
/// equals ψ of the same word.
pub fn inflate(d: &Matrix, n: usize) -> Result<Matrix> {
    let k = d.size();
    if n == 0 || !n.is_multiple_of(k) {
        return Err(Error::Divisibility { k, n });
    }
    let r = n / k;
    let mut rows = vec![vec![Scalar::zero(); n]; n];
    for a in 0..k {
        for b in 0..k {
            for i in 0..r {
                rows[a * r + i][b * r + i] = d.get(a, b).clone();
            }
        }
    }
    Matrix::from_rows(rows)
}

/// Floating-point [`inflate`].
pub fn inflate_complex(d: &Matrix, n: usize) -> Result<CMatrix> {
    let k = d.size();
    if n == 0 || !n.is_multiple_of(k) {
        return Err(Error::Divisibility { k, n });
    }
    let r = n / k;
    let e = d.to_f64();
    Ok(CMatrix::from_fn(n, n, |p, q| {
        if p % r == q % r {
            let (re, im) = e[(p / r) * k + q / r];
            Complex64::new(re, im)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Exact matrix to floating point.
pub fn to_complex(d: &Matrix) -> CMatrix {
    let k = d.size();
    let e = d.to_f64();
    CMatrix::from_fn(k, k, |a, b| Complex64::new(e[a * k + b].0, e[a * k + b].1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64) -> Scalar {
        Scalar::from_int(a)
    }

    fn mat(v: &[i64]) -> Matrix {
        Matrix::from_rows(vec![vec![s(v[0]), s(v[1])], vec![s(v[2]), s(v[3])]]).unwrap()
    }

    #[test]
    fn inflate_examples() {
        let lam = Matrix::from_rows(vec![vec![Scalar::ratio(3, 2)]]).unwrap();
        assert_eq!(inflate(&lam, 4).unwrap(), Matrix::identity(4).scale(&Scalar::ratio(3, 2)));
        let alg = MatrixAlgebra::new(2).unwrap();
        let (d1, d2) = (mat(&[1, 2, -1, 3]), mat(&[0, 1, 4, -2]));
        let n = 6;
        let (i1, i2) = (inflate(&d1, n).unwrap(), inflate(&d2, n).unwrap());
        let tr = |m: Matrix| &m.trace() / &s(n as i64);
        assert_eq!(tr(i1.mul(&i1).unwrap()), alg.psi(&[&d1, &d1]).unwrap());
        assert_eq!(tr(i1.mul(&i2).unwrap()), alg.psi(&[&d1, &d2]).unwrap());
        assert!(matches!(inflate(&d1, 5), Err(Error::Divisibility { k: 2, n: 5 })));
        let c = inflate_complex(&d1, n).unwrap();
        assert_eq!(c, to_complex(&i1));
    }

    #[test]
    fn gaussian_family_is_hermitian_and_linear() {
        let space = GramSpace::new(vec![vec![s(2), s(1)], vec![s(1), s(1)]]).unwrap();
        let f = space.basis(0);
        let g = space.basis(1);
        let h = f.add(&g.scale(&s(-3))).unwrap();
        let spec = GaussianFamilySpec { n: 5, space, seed: 7 };
        let xs = sample_gaussian_family(&spec, &[f, g, h]).unwrap();
        for x in &xs {
            assert_eq!(x, &x.adjoint());
        }
        let combo = &xs[0] - &xs[1] * Complex64::new(3.0, 0.0);
        assert!((combo - &xs[2]).norm() < 1e-12);
    }

    #[test]
    fn rejects_complex_gram() {
        let space = GramSpace::new(vec![
            vec![s(2), Scalar::complex((0, 1), (1, 1))],
            vec![Scalar::complex((0, 1), (-1, 1)), s(2)],
        ])
        .unwrap();
        let spec = GaussianFamilySpec { n: 3, space: space.clone(), seed: 1 };
        assert!(GaussianSampler::new(&spec, &[space.basis(0)]).is_err());
    }

    #[test]
    fn entry_covariance() {
        // E[x_12(f) conj(x_12(g))] = ⟨f, g⟩ / N, estimated over many draws.
        let space = GramSpace::new(vec![vec![s(1), Scalar::ratio(1, 2)], vec![Scalar::ratio(1, 2), s(1)]]).unwrap();
        let (f, g) = (space.basis(0), space.basis(1));
        let n = 4;
        let spec = GaussianFamilySpec { n, space, seed: 11 };
        let sampler = GaussianSampler::new(&spec, &[f, g]).unwrap();
        let m = 40_000;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut acc2 = 0.0;
        for i in 0..m {
            let xs = sampler.sample(i);
            let v = xs[0][(0, 1)] * xs[1][(0, 1)].conj();
            acc += v;
            acc2 += v.norm_sqr();
        }
        let mean = acc / m as f64;
        let se = ((acc2 / m as f64 - mean.norm_sqr()) / m as f64).sqrt();
        assert!((mean - Complex64::new(0.5 / n as f64, 0.0)).norm() < 4.0 * se, "{mean} ± {se}");
    }

    #[test]
    fn wishart_adjoint_and_determinism() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let d = mat(&[1, 2, -1, 3]);
        let spec = WishartSpec {
            n: 4,
            alg,
            ds: vec![d.clone(), d.adjoint()],
            seed: 3,
        };
        let a = sample_compound_wishart(&spec).unwrap();
        assert!((a[0].adjoint() - &a[1]).norm() < 1e-12);
        assert_eq!(a, sample_compound_wishart(&spec).unwrap());
        let sampler = WishartSampler::new(&spec).unwrap();
        assert_ne!(sampler.sample(0), sampler.sample(1));
        let bad = WishartSpec { n: 5, ..spec };
        assert!(matches!(WishartSampler::new(&bad), Err(Error::Divisibility { .. })));
    }
}
