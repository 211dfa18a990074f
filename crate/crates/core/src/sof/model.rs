use std::fmt;

use crate::algebra::Scalar;
use crate::fock::{FockModel, OpPoly};

/// A second-order noncommutative probability space `(𝒜, φ, ρ)`: a unital
/// algebra with a tracial state φ and a bilinear functional ρ that is
/// tracial in each argument and vanishes when either argument is 1.
pub trait SecondOrderModel {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn one(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `a + c·b`.
    fn add_scaled(&self, a: &Self::Elem, b: &Self::Elem, c: &Scalar) -> Self::Elem;

    fn phi(&self, a: &Self::Elem) -> Scalar;

    fn rho(&self, a: &Self::Elem, b: &Self::Elem) -> Scalar;

    /// `a° = a − φ(a)·1`.
    fn center(&self, a: &Self::Elem) -> Self::Elem {
        self.add_scaled(a, &self.one(), &-self.phi(a))
    }

    /// `a₁ a₂ ⋯ a_n`; the empty product is 1.
    fn product(&self, ws: &[&Self::Elem]) -> Self::Elem {
        ws.iter().fold(self.one(), |acc, w| self.mul(&acc, w))
    }
}

/// A Fock model viewed as a second-order probability space:
/// `φ(a) = ⟨aΩ, Ω⟩` and `ρ(a, b) = ⟨c aΩ, c b*Ω⟩_cyc`.
#[derive(Clone, Debug)]
pub struct FockSecondOrder<M> {
    model: M,
}

impl<M: FockModel> FockSecondOrder<M> {
    pub fn new(model: M) -> Self {
        FockSecondOrder { model }
    }

    pub fn model(&self) -> &M {
        &self.model
    }
}

impl<M: FockModel> SecondOrderModel for FockSecondOrder<M> {
    type Elem = OpPoly;

    fn one(&self) -> OpPoly {
        OpPoly::one()
    }

    fn mul(&self, a: &OpPoly, b: &OpPoly) -> OpPoly {
        a.mul(b)
    }

    fn add_scaled(&self, a: &OpPoly, b: &OpPoly, c: &Scalar) -> OpPoly {
        let mut out = a.clone();
        out.add_scaled(b, c);
        out
    }

    fn phi(&self, a: &OpPoly) -> Scalar {
        a.on_vacuum(&self.model).vacuum_coefficient()
    }

    fn rho(&self, a: &OpPoly, b: &OpPoly) -> Scalar {
        let left = self.model.cyc_map(&a.on_vacuum(&self.model));
        if left.is_zero() {
            return Scalar::zero();
        }
        let right = self.model.cyc_map(&b.adjoint(&self.model).on_vacuum(&self.model));
        self.model.cyc_inner(&left, &right)
    }
}

/// Wraps a model and adds `delta` to `ρ(left, right)` on one exact pair of
/// elements; a negative control for the freeness checker.
#[derive(Clone, Debug)]
pub struct PerturbedRho<S: SecondOrderModel> {
    inner: S,
    left: S::Elem,
    right: S::Elem,
    delta: Scalar,
}

impl<S: SecondOrderModel> PerturbedRho<S> {
    pub fn new(inner: S, left: S::Elem, right: S::Elem, delta: Scalar) -> Self {
        PerturbedRho {
            inner,
            left,
            right,
            delta,
        }
    }
}

impl<S: SecondOrderModel> SecondOrderModel for PerturbedRho<S> {
    type Elem = S::Elem;

    fn one(&self) -> S::Elem {
        self.inner.one()
    }

    fn mul(&self, a: &S::Elem, b: &S::Elem) -> S::Elem {
        self.inner.mul(a, b)
    }

    fn add_scaled(&self, a: &S::Elem, b: &S::Elem, c: &Scalar) -> S::Elem {
        self.inner.add_scaled(a, b, c)
    }

    fn phi(&self, a: &S::Elem) -> Scalar {
        self.inner.phi(a)
    }

    fn rho(&self, a: &S::Elem, b: &S::Elem) -> Scalar {
        let base = self.inner.rho(a, b);
        if *a == self.left && *b == self.right {
            base + &self.delta
        } else {
            base
        }
    }
}
