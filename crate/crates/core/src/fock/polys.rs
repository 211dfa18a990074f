use num_bigint::BigInt;
use num_rational::BigRational;

use super::operator::OpPoly;
use crate::algebra::Scalar;
use crate::error::{guard, Error, Result};

/// Largest degree accepted by the orthogonal-polynomial constructions.
pub const MAX_POLY_DEGREE: usize = 15;

/// A univariate polynomial with exact coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `p(c·x)`.
    pub fn dilate(&self, c: &Scalar) -> Poly {
        let mut pow = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow = &pow * c;
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// `p(x)` for an operator `x`, by Horner's rule.
    pub fn eval_op(&self, x: &OpPoly) -> OpPoly {
        let mut acc = OpPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            acc.add_term(Vec::new(), a.clone());
        }
        acc
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => format!("({a})"),
                1 => format!("({a})x"),
                _ => format!("({a})x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn three_term(n: usize, p0: Poly, p1: Poly) -> Vec<Poly> {
    let two_x = Poly::x().scale(&Scalar::from_int(2));
    let mut out = vec![p0, p1];
    for i in 2..=n {
        let next = two_x.mul(&out[i - 1]).sub(&out[i - 2]);
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// Chebyshev polynomials of the first kind `T_0, .., T_n`.
pub fn chebyshev_t(n: usize) -> Vec<Poly> {
    three_term(n, Poly::one(), Poly::x())
}

/// Chebyshev polynomials of the second kind `U_0, .., U_n`.
pub fn chebyshev_u(n: usize) -> Vec<Poly> {
    three_term(n, Poly::one(), Poly::x().scale(&Scalar::from_int(2)))
}

fn narayana(j: usize, b: usize) -> Scalar {
    fn binom(n: usize, k: usize) -> i128 {
        (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
    }
    let v = binom(j, b) * binom(j, b - 1) / j as i128;
    Scalar::real(BigRational::from_integer(BigInt::from(v)))
}

/// Moments `m_0, .., m_n` of the free Poisson law with rate λ:
/// `m_j = Σ_{π ∈ NC(j)} λ^{#π}`, summed by block count.
pub fn free_poisson_moments(lambda: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::one()];
    for j in 1..=n {
        let mut m = Scalar::zero();
        for b in 1..=j {
            m += narayana(j, b) * lambda.pow(b as i32);
        }
        out.push(m);
    }
    out
}

/// Monic orthogonal polynomials `Π_0, .., Π_n` of the free Poisson law with
/// rate λ, by Gram–Schmidt on the monomials against its moment functional.
pub fn free_poisson_orthogonal(lambda: &Scalar, n: usize) -> Result<Vec<Poly>> {
    guard("polynomial degree", n, MAX_POLY_DEGREE)?;
    if !lambda.is_real() || !lambda.is_nonnegative_real() || lambda.is_zero() {
        return Err(Error::Invalid(format!("free Poisson rate must be positive, got {lambda}")));
    }
    let moments = free_poisson_moments(lambda, 2 * n);
    let functional = |p: &Poly| -> Scalar {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| a * &moments[i])
            .sum()
    };
    let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
    let mut norms: Vec<Scalar> = Vec::with_capacity(n + 1);
    let mut mono = Poly::one();
    for _ in 0..=n {
        let mut p = mono.clone();
        for (q, nq) in out.iter().zip(&norms) {
            let c = functional(&mono.mul(q)) * nq.inv().expect("positive norm");
            p = p.sub(&q.scale(&c));
        }
        norms.push(functional(&p.mul(&p)));
        out.push(p);
        mono = mono.mul(&Poly::x());
    }
    Ok(out)
}

/// `Γ_0, .., Γ_n` from `Π_n − λΠ_{n−2} = Γ_n + Γ_{n−1}` with `Γ_1 = Π_1`.
/// `Γ_0 = 1` is returned only to keep indices aligned with degrees.
pub fn poisson_gamma_polys(lambda: &Scalar, n: usize) -> Result<Vec<Poly>> {
    let pis = free_poisson_orthogonal(lambda, n)?;
    let mut out = vec![Poly::one()];
    for i in 1..=n {
        let g = if i == 1 {
            pis[1].clone()
        } else {
            pis[i].sub(&pis[i - 2].scale(lambda)).sub(&out[i - 1])
        };
        out.push(g);
    }
    Ok(out)
}
