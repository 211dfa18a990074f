use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{guard, Error, Result};

/// Largest Gram dimension accepted; positivity is checked on every
/// principal minor.
pub const MAX_GRAM_DIM: usize = 8;

/// A finite-dimensional Hilbert space given by a Hermitian positive
/// semidefinite Gram matrix on a distinguished basis `e_1, .., e_k`.
///
/// Conjugation `f ↦ f̄` is entrywise conjugation of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GramSpace {
    gram: Vec<Vec<Scalar>>,
}

/// Coordinates of a vector with respect to the basis of a [`GramSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn conj(&self) -> Vector {
        Vector(self.0.iter().map(Scalar::conj).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(Scalar::is_real)
    }
}

impl GramSpace {
    pub fn new(gram: Vec<Vec<Scalar>>) -> Result<Self> {
        let k = gram.len();
        if k == 0 {
            return Err(Error::Invalid("Gram matrix must be nonempty".into()));
        }
        guard("Gram dimension", k, MAX_GRAM_DIM)?;
        for row in &gram {
            if row.len() != k {
                return Err(Error::SizeMismatch {
                    expected: k,
                    actual: row.len(),
                });
            }
        }
        for i in 0..k {
            for j in 0..k {
                if gram[i][j] != gram[j][i].conj() {
                    return Err(Error::NotHermitian);
                }
            }
        }
        check_psd(&gram)?;
        Ok(GramSpace { gram })
    }

    pub fn orthonormal(k: usize) -> Result<Self> {
        GramSpace::new(
            (0..k)
                .map(|i| (0..k).map(|j| Scalar::from_int(i64::from(i == j))).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    /// ⟨e_a, e_b⟩.
    pub fn entry(&self, a: usize, b: usize) -> &Scalar {
        &self.gram[a][b]
    }

    /// True when the Gram matrix is real (hence symmetric).
    pub fn is_real(&self) -> bool {
        self.gram.iter().flatten().all(Scalar::is_real)
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector(
            (0..self.dim())
                .map(|j| Scalar::from_int(i64::from(i == j)))
                .collect(),
        )
    }

    pub fn vector(&self, coords: Vec<Scalar>) -> Result<Vector> {
        if coords.len() != self.dim() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Vector(coords))
    }

    fn check(&self, f: &Vector) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// `⟨f, g⟩ = coords(f)ᵀ · G · conj(coords(g))`: linear in `f`,
    /// conjugate-linear in `g`.
    pub fn inner(&self, f: &Vector, g: &Vector) -> Result<Scalar> {
        self.check(f)?;
        self.check(g)?;
        let mut acc = Scalar::zero();
        for (a, fa) in f.0.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.0.iter().enumerate() {
                let e = &self.gram[a][b];
                if !e.is_zero() && !gb.is_zero() {
                    acc += fa * e * gb.conj();
                }
            }
        }
        Ok(acc)
    }

    /// The bilinear pairing `⟨f, ḡ⟩`, which is `⟨f, g⟩` on real vectors.
    pub fn bilinear(&self, f: &Vector, g: &Vector) -> Result<Scalar> {
        self.inner(f, &g.conj())
    }
}

/// Exact determinant over the complex rationals by Gaussian elimination.
fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= &sub;
            }
        }
    }
    det
}

/// Positive semidefiniteness via all principal minors. Leading minors alone
/// do not decide semidefiniteness (e.g. `diag(0, -1)`).
fn check_psd(gram: &[Vec<Scalar>]) -> Result<()> {
    let k = gram.len();
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        let minor: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| gram[i][j].clone()).collect())
            .collect();
        let d = determinant(&minor);
        if !d.is_nonnegative_real() {
            let rows: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            return Err(Error::NotPositiveSemidefinite(format!(
                "principal minor on rows {{{}}} is {d}",
                rows.join(",")
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Scalar {
        Scalar::ratio(a, b)
    }

    #[test]
    fn inner_examples() {
        let h = GramSpace::orthonormal(2).unwrap();
        assert!(h.inner(&h.basis(0), &h.basis(1)).unwrap().is_zero());
        assert!(h.inner(&h.basis(0), &h.basis(0)).unwrap().is_one());
        let g = GramSpace::new(vec![vec![r(1, 1), r(1, 2)], vec![r(1, 2), r(1, 1)]]).unwrap();
        assert_eq!(g.inner(&g.basis(0), &g.basis(1)).unwrap(), r(1, 2));
        assert_eq!(
            g.inner(&g.basis(0), &GramSpace::orthonormal(3).unwrap().basis(0)),
            Err(Error::SpaceMismatch)
        );
    }

    #[test]
    fn sesquilinear_convention() {
        let h = GramSpace::orthonormal(1).unwrap();
        let f = h.vector(vec![Scalar::i()]).unwrap();
        let one = h.basis(0);
        assert_eq!(h.inner(&f, &one).unwrap(), Scalar::i());
        assert_eq!(h.inner(&one, &f).unwrap(), -Scalar::i());
        assert_eq!(h.bilinear(&f, &f).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn rejects_indefinite_and_non_hermitian() {
        let bad = GramSpace::new(vec![vec![r(0, 1), r(0, 1)], vec![r(0, 1), r(-1, 1)]]);
        assert!(matches!(bad, Err(Error::NotPositiveSemidefinite(_))));
        let bad = GramSpace::new(vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(1, 1)]]);
        assert!(matches!(bad, Err(Error::NotPositiveSemidefinite(_))));
        let bad = GramSpace::new(vec![vec![r(1, 1), r(1, 2)], vec![r(1, 3), r(1, 1)]]);
        assert_eq!(bad, Err(Error::NotHermitian));
        // Singular but semidefinite is allowed.
        assert!(GramSpace::new(vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]]).is_ok());
        assert!(GramSpace::orthonormal(9).is_err());
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]];
        assert_eq!(determinant(&m), r(5, 1));
        let m = vec![
            vec![r(0, 1), r(1, 1), r(0, 1)],
            vec![r(1, 1), r(0, 1), r(0, 1)],
            vec![r(0, 1), r(0, 1), r(1, 1)],
        ];
        assert_eq!(determinant(&m), r(-1, 1));
    }

    proptest! {
        /// Gram matrices of the form AᵀA are always accepted.
        #[test]
        fn products_are_psd(a in proptest::collection::vec(-4i64..5, 9)) {
            let k = 3;
            let g: Vec<Vec<Scalar>> = (0..k)
                .map(|i| (0..k).map(|j| Scalar::from_int((0..k).map(|l| a[l * k + i] * a[l * k + j]).sum())).collect())
                .collect();
            prop_assert!(GramSpace::new(g).is_ok());
        }
    }
}
