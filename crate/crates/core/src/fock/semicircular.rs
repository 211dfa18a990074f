use std::collections::HashMap;

use super::operator::{annihilate, create, expand_operator, expand_words, FockModel, OpPoly};
use super::word::{CyclicVector, FockVector, Word};
use crate::algebra::{GramSpace, Scalar, Vector};
use crate::error::{Error, Result};

/// The full Fock space over a real Hilbert space `ℋ` given by a Gram
/// matrix, with semicircular fields `ω(f) = l(f) + l*(f̄)`.
///
/// Internally words are written over an orthogonal basis `b_1, .., b_r` of
/// `ℋ` (modulo null vectors) obtained by Gram–Schmidt from `e_1, .., e_k`.
/// The basis is real, so `b̄_i = b_i` and every field is a linear
/// combination of the `ω(b_i)`.
#[derive(Clone, Debug)]
pub struct SemicircularFock {
    space: GramSpace,
    basis: Vec<Vector>,
    norms: Vec<Scalar>,
}

impl SemicircularFock {
    pub fn new(space: GramSpace) -> Result<Self> {
        if !space.is_real() {
            return Err(Error::Invalid(
                "the semicircular Fock model needs a real Gram matrix".into(),
            ));
        }
        let mut basis: Vec<Vector> = Vec::new();
        let mut norms: Vec<Scalar> = Vec::new();
        for i in 0..space.dim() {
            let e = space.basis(i);
            let mut v = e.clone();
            for (b, d) in basis.iter().zip(&norms) {
                let c = space.inner(&e, b)? * d.inv().expect("nonzero norm");
                v = v.add(&b.scale(&-c))?;
            }
            let d = space.inner(&v, &v)?;
            if !d.is_zero() {
                basis.push(v);
                norms.push(d);
            }
        }
        Ok(SemicircularFock { space, basis, norms })
    }

    pub fn space(&self) -> &GramSpace {
        &self.space
    }

    /// The orthogonal basis in coordinates of `e_1, .., e_k`.
    pub fn orthogonal_basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `f` on the orthogonal basis, `c_i = ⟨f, b_i⟩ / ⟨b_i, b_i⟩`.
    pub fn coords(&self, f: &Vector) -> Result<Vec<Scalar>> {
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, d)| Ok(self.space.inner(f, b)? * d.inv().expect("nonzero norm")))
            .collect()
    }

    fn all_coords(&self, fs: &[Vector]) -> Result<Vec<Vec<Scalar>>> {
        fs.iter().map(|f| self.coords(f)).collect()
    }

    /// `f₁ ⊗ ⋯ ⊗ f_n`; the empty list gives Ω.
    pub fn tensor(&self, fs: &[Vector]) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (w, c) in expand_words(&self.all_coords(fs)?) {
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// `[f₁ ⊗ ⋯ ⊗ f_n]`.
    pub fn cyclic_tensor(&self, fs: &[Vector]) -> Result<CyclicVector> {
        let mut out = CyclicVector::zero();
        for (w, c) in expand_words(&self.all_coords(fs)?) {
            out.add_term(&w, c);
        }
        Ok(out)
    }

    /// `l(f)v`.
    pub fn creation(&self, f: &Vector, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (j, c) in self.coords(f)?.iter().enumerate() {
            out.add_scaled(&create(j, v), c);
        }
        Ok(out)
    }

    /// `l*(f)v`, conjugate-linear in `f`.
    pub fn annihilation(&self, f: &Vector, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (j, c) in self.coords(f)?.iter().enumerate() {
            out.add_scaled(&annihilate(self, j, v), &c.conj());
        }
        Ok(out)
    }

    /// The operator `ω(f)`.
    pub fn omega(&self, f: &Vector) -> Result<OpPoly> {
        Ok(OpPoly::linear(&self.coords(f)?))
    }

    /// `ω(f₁)⋯ω(f_n)Ω`.
    pub fn omega_word_on_vacuum(&self, fs: &[Vector]) -> Result<FockVector> {
        let mut v = FockVector::vacuum();
        for f in fs.iter().rev() {
            v = self.omega(f)?.apply(self, &v);
        }
        Ok(v)
    }

    /// The Wick product `W(f₁ ⊗ ⋯ ⊗ f_n)`.
    pub fn wick(&self, fs: &[Vector]) -> Result<OpPoly> {
        let mut memo = HashMap::new();
        Ok(expand_operator(&self.all_coords(fs)?, |w| self.wick_basis(w, &mut memo)))
    }

    /// The cyclic Wick product `C(f₁ ⊗ ⋯ ⊗ f_n)`, `n ≥ 1`.
    pub fn cyclic_wick(&self, fs: &[Vector]) -> Result<OpPoly> {
        if fs.is_empty() {
            return Err(Error::Invalid("cyclic Wick products need n ≥ 1".into()));
        }
        let mut memo = HashMap::new();
        Ok(expand_operator(&self.all_coords(fs)?, |w| {
            let n = w.len();
            let mut c = self.wick_basis(w, &mut memo);
            if n >= 2 && w[0] == w[n - 1] {
                let inner = self.wick_basis(&w[1..n - 1], &mut memo);
                c.add_scaled(&inner, &-self.norms[w[0]].clone());
            }
            c
        }))
    }

    fn wick_basis(&self, w: &[usize], memo: &mut HashMap<Word, OpPoly>) -> OpPoly {
        if let Some(p) = memo.get(w) {
            return p.clone();
        }
        let out = match w {
            [] => OpPoly::one(),
            [j, rest @ ..] => {
                let mut p = OpPoly::generator(*j).mul(&self.wick_basis(rest, memo));
                if rest.first() == Some(j) {
                    let tail = self.wick_basis(&rest[1..], memo);
                    p.add_scaled(&tail, &-self.norms[*j].clone());
                }
                p
            }
        };
        memo.insert(w.to_vec(), out.clone());
        out
    }

    /// `⟨c ω(f₁)⋯ω(f_n)Ω, c ω(g_m)⋯ω(g₁)Ω⟩_cyc`; the `g`-word is reversed.
    pub fn fluct(&self, fs: &[Vector], gs: &[Vector]) -> Result<Scalar> {
        let left = self.cyc_map(&self.omega_word_on_vacuum(fs)?);
        let rev: Vec<Vector> = gs.iter().rev().cloned().collect();
        let right = self.cyc_map(&self.omega_word_on_vacuum(&rev)?);
        Ok(self.cyc_inner(&left, &right))
    }
}

impl FockModel for SemicircularFock {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn norm(&self, i: usize) -> &Scalar {
        &self.norms[i]
    }

    fn apply_generator_to_word(&self, j: usize, w: &[usize], c: &Scalar, out: &mut FockVector) {
        let mut nw = Vec::with_capacity(w.len() + 1);
        nw.push(j);
        nw.extend(w);
        out.add_term(nw, c.clone());
        if w.first() == Some(&j) {
            out.add_term(w[1..].to_vec(), c * &self.norms[j]);
        }
    }

    fn generator_adjoint(&self, j: usize) -> usize {
        j
    }

    /// `c(f₁⊗⋯⊗f_n) = [f₁⊗⋯⊗f_n] + ⟨f₁, f̄_n⟩ c(f₂⊗⋯⊗f_{n−1})`, `c(Ω) = 0`.
    fn cyc_map_word(&self, w: &[usize], c: &Scalar, out: &mut CyclicVector) {
        let n = w.len();
        if n == 0 || c.is_zero() {
            return;
        }
        out.add_term(w, c.clone());
        if n >= 2 && w[0] == w[n - 1] {
            self.cyc_map_word(&w[1..n - 1], &(c * &self.norms[w[0]]), out);
        }
    }

    fn label(&self, i: usize) -> String {
        format!("b{}", i + 1)
    }
}

/// `⟨c ω(f₁)⋯ω(f_n)Ω, c ω(g_m)⋯ω(g₁)Ω⟩_cyc` over the given Gram space.
pub fn fluct_gauss_fock(space: &GramSpace, fs: &[Vector], gs: &[Vector]) -> Result<Scalar> {
    SemicircularFock::new(space.clone())?.fluct(fs, gs)
}
