use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Scalar;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A square matrix of exact scalars, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    k: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(k: usize) -> Self {
        Matrix {
            k,
            entries: vec![Scalar::zero(); k * k],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Matrix::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = Scalar::one();
        }
        m
    }

    /// The matrix unit E_ab.
    pub fn unit(k: usize, a: usize, b: usize) -> Self {
        let mut m = Matrix::zero(k);
        m.entries[a * k + b] = Scalar::one();
        m
    }

    pub fn diag(values: Vec<Scalar>) -> Self {
        let k = values.len();
        let mut m = Matrix::zero(k);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * k + i] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::SizeMismatch {
                    expected: k,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { k, entries })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, a: usize, b: usize) -> &Scalar {
        &self.entries[a * self.k + b]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.k).map(<[Scalar]>::to_vec).collect()
    }

    fn check(&self, other: &Matrix) -> Result<()> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                expected: self.k,
                actual: other.k,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        let k = self.k;
        let mut out = Matrix::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = &other.entries[l * k + j];
                    if !b.is_zero() {
                        out.entries[i * k + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        Ok(Matrix {
            k: self.k,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        Ok(Matrix {
            k: self.k,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            k: self.k,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let k = self.k;
        let mut out = Matrix::zero(k);
        for i in 0..k {
            for j in 0..k {
                out.entries[j * k + i] = self.entries[i * k + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.k).map(|i| &self.entries[i * self.k + i]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    /// Self-adjoint idempotent.
    pub fn is_projection(&self) -> bool {
        self.is_hermitian() && self.mul(self).map(|p| p == *self).unwrap_or(false)
    }

    /// Entries as pairs of floats, for building numeric matrices.
    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.entries.iter().map(Scalar::to_f64).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.k).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(Scalar::to_string).collect();
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Scalar>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// The full matrix algebra M_k with its normalized trace ψ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixAlgebra {
    k: usize,
}

impl MatrixAlgebra {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("matrix algebra size must be positive".into()));
        }
        Ok(MatrixAlgebra { k })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn one(&self) -> Matrix {
        Matrix::identity(self.k)
    }

    fn check(&self, d: &Matrix) -> Result<()> {
        if d.size() != self.k {
            return Err(Error::SizeMismatch {
                expected: self.k,
                actual: d.size(),
            });
        }
        Ok(())
    }

    /// Product of a word; the empty word is the unit.
    pub fn product(&self, word: &[&Matrix]) -> Result<Matrix> {
        let mut acc = self.one();
        for d in word {
            self.check(d)?;
            acc = acc.mul(d)?;
        }
        Ok(acc)
    }

    /// Normalized trace of one element.
    pub fn psi1(&self, d: &Matrix) -> Result<Scalar> {
        self.check(d)?;
        Ok(&d.trace() / &Scalar::from_int(self.k as i64))
    }

    /// ψ(d₁⋯d_n).
    pub fn psi(&self, word: &[&Matrix]) -> Result<Scalar> {
        if word.is_empty() {
            return Err(Error::Invalid("ψ needs a nonempty word".into()));
        }
        self.psi1(&self.product(word)?)
    }

    /// The GNS inner product `⟨d₁, d₂⟩ = ψ(d₂* d₁)`.
    pub fn inner(&self, d1: &Matrix, d2: &Matrix) -> Result<Scalar> {
        self.psi(&[&d2.adjoint(), d1])
    }

    /// ψ_π(d₁,..,d_n): product over the cycles of π of ψ of the cycle word.
    pub fn psi_pi(&self, pi: &Permutation, ds: &[&Matrix]) -> Result<Scalar> {
        if pi.size() != ds.len() {
            return Err(Error::SizeMismatch {
                expected: pi.size(),
                actual: ds.len(),
            });
        }
        let mut acc = Scalar::one();
        for cycle in pi.cycles() {
            let word: Vec<&Matrix> = cycle.iter().map(|&i| ds[i]).collect();
            acc = acc * self.psi(&word)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn psi_examples() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let one = alg.one();
        assert!(alg.psi(&[&one]).unwrap().is_one());
        let d = Matrix::diag(vec![s(1), s(0)]);
        assert_eq!(alg.psi(&[&d]).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(alg.psi(&[&d, &d]).unwrap(), Scalar::ratio(1, 2));
        assert!(d.is_projection());
        assert!(alg.psi(&[]).is_err());
        assert!(alg.psi(&[&Matrix::identity(3)]).is_err());
    }

    #[test]
    fn psi_pi_examples() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let ms: Vec<Matrix> = (1..=6)
            .map(|i| Matrix::from_rows(vec![vec![s(i), s(1)], vec![s(-i), s(2 * i)]]).unwrap())
            .collect();
        let r: Vec<&Matrix> = ms.iter().collect();
        let pi = Permutation::parse_with_size("(1,2,6)(3,4,5)", 6).unwrap();
        let expect = alg.psi(&[r[0], r[1], r[5]]).unwrap() * alg.psi(&[r[2], r[3], r[4]]).unwrap();
        assert_eq!(alg.psi_pi(&pi, &r).unwrap(), expect);
        let pi2 = Permutation::parse_with_size("(1,3,2)", 3).unwrap();
        assert_eq!(alg.psi_pi(&pi2, &r[..3]).unwrap(), alg.psi(&[r[0], r[2], r[1]]).unwrap());
        let id = Permutation::identity(3);
        let prod: Scalar = r[..3].iter().map(|d| alg.psi1(d).unwrap()).product();
        assert_eq!(alg.psi_pi(&id, &r[..3]).unwrap(), prod);
    }

    #[test]
    fn inner_is_positive() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let a = Matrix::from_rows(vec![
            vec![Scalar::complex((1, 2), (1, 1)), s(3)],
            vec![s(0), Scalar::complex((0, 1), (-2, 3))],
        ])
        .unwrap();
        let v = alg.inner(&a, &a).unwrap();
        assert!(v.is_nonnegative_real() && !v.is_zero());
        assert!(alg.inner(&Matrix::zero(2), &Matrix::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn json_rows() {
        let m: Matrix = serde_json::from_str(r#"[["1","1/2"],[{"re":"0","im":"1"},"0"]]"#).unwrap();
        assert_eq!(*m.get(0, 1), Scalar::ratio(1, 2));
        assert_eq!(*m.get(1, 0), Scalar::i());
        assert!(serde_json::from_str::<Matrix>(r#"[["1","2"]]"#).is_err());
    }
}
