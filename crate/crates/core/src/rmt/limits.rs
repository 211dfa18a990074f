use crate::algebra::{GramSpace, Matrix, MatrixAlgebra, Scalar};
use crate::error::Result;
use crate::fock::Poly;
use crate::sof::SecondOrderModel;
use crate::theory::{alpha, gauss_cov};

/// An element of one of the two families: a scalar (shared unit), a
/// polynomial in a standard GUE matrix, or a constant `d ∈ M_k`.
#[derive(Clone, Debug, PartialEq)]
pub enum LimitElem {
    Scalar(Scalar),
    Field(Poly),
    Constant(Matrix),
}

/// Large-N second-order data of a standard GUE matrix X and the inflated
/// constants `d ⊗ I`, each family taken on its own: `φ(p(X))` from the
/// semicircle moments and `ρ(p(X), q(X))` from annular pairings; constants
/// have `φ = ψ` and no fluctuations. Products are only formed inside one
/// family.
#[derive(Clone, Debug)]
pub struct SemicircleWithConstants {
    alg: MatrixAlgebra,
    space: GramSpace,
}

impl SemicircleWithConstants {
    pub fn new(alg: MatrixAlgebra) -> Result<Self> {
        Ok(SemicircleWithConstants {
            alg,
            space: GramSpace::orthonormal(1)?,
        })
    }

    pub fn x(&self) -> LimitElem {
        LimitElem::Field(Poly::x())
    }

    pub fn constant(&self, d: Matrix) -> LimitElem {
        LimitElem::Constant(d)
    }

    fn moment(&self, j: usize) -> Scalar {
        alpha(&self.space, &vec![self.space.basis(0); j]).expect("orthonormal space")
    }

    fn cov(&self, i: usize, j: usize) -> Scalar {
        let f = self.space.basis(0);
        gauss_cov(&self.space, &vec![f.clone(); i], &vec![f; j]).expect("orthonormal space")
    }
}

impl SecondOrderModel for SemicircleWithConstants {
    type Elem = LimitElem;

    fn one(&self) -> LimitElem {
        LimitElem::Scalar(Scalar::one())
    }

    fn mul(&self, a: &LimitElem, b: &LimitElem) -> LimitElem {
        use LimitElem::*;
        match (a, b) {
            (Scalar(x), Scalar(y)) => Scalar(x * y),
            (Scalar(x), Field(p)) | (Field(p), Scalar(x)) => Field(p.scale(x)),
            (Scalar(x), Constant(d)) | (Constant(d), Scalar(x)) => Constant(d.scale(x)),
            (Field(p), Field(q)) => Field(p.mul(q)),
            (Constant(d), Constant(e)) => Constant(d.mul(e).expect("constants share M_k")),
            _ => panic!("products across the two families are not represented"),
        }
    }

    fn add_scaled(&self, a: &LimitElem, b: &LimitElem, c: &Scalar) -> LimitElem {
        use LimitElem::*;
        let lift = |x: &LimitElem, like: &LimitElem| match (x, like) {
            (Scalar(s), Field(_)) => Field(Poly::constant(s.clone())),
            (Scalar(s), Constant(d)) => Constant(Matrix::identity(d.size()).scale(s)),
            _ => x.clone(),
        };
        match (lift(a, b), lift(b, a)) {
            (Scalar(x), Scalar(y)) => Scalar(&x + &(&y * c)),
            (Field(p), Field(q)) => Field(p.add(&q.scale(c))),
            (Constant(d), Constant(e)) => Constant(d.add(&e.scale(c)).expect("constants share M_k")),
            _ => panic!("sums across the two families are not represented"),
        }
    }

    fn phi(&self, a: &LimitElem) -> Scalar {
        match a {
            LimitElem::Scalar(x) => x.clone(),
            LimitElem::Field(p) => p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| c * &self.moment(j))
                .sum(),
            LimitElem::Constant(d) => self.alg.psi1(d).expect("constant in M_k"),
        }
    }

    fn rho(&self, a: &LimitElem, b: &LimitElem) -> Scalar {
        match (a, b) {
            (LimitElem::Field(p), LimitElem::Field(q)) => {
                let mut acc = Scalar::zero();
                for (i, pi) in p.coeffs().iter().enumerate().skip(1) {
                    for (j, qj) in q.coeffs().iter().enumerate().skip(1) {
                        if !pi.is_zero() && !qj.is_zero() {
                            acc += pi * qj * self.cov(i, j);
                        }
                    }
                }
                acc
            }
            _ => Scalar::zero(),
        }
    }
}
