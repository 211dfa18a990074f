use std::collections::BTreeMap;

use super::word::{period, CyclicVector, FockVector, Word};
use crate::algebra::Scalar;

/// A Fock space over an orthogonal one-particle basis `b_0, .., b_{k-1}`,
/// with one distinguished field operator per basis element (ω(b_j) or p(b_j)).
pub trait FockModel {
    /// Size of the one-particle basis.
    fn dim(&self) -> usize;

    /// `⟨b_i, b_i⟩`; the basis is orthogonal.
    fn norm(&self, i: usize) -> &Scalar;

    /// The field operator of `b_j` applied to one basis word.
    fn apply_generator_to_word(&self, j: usize, w: &[usize], c: &Scalar, out: &mut FockVector);

    /// Index `j′` with `(field of b_j)* = field of b_{j′}`.
    fn generator_adjoint(&self, j: usize) -> usize;

    /// The map **c** on one basis word.
    fn cyc_map_word(&self, w: &[usize], c: &Scalar, out: &mut CyclicVector);

    /// Human-readable name of `b_i`.
    fn label(&self, i: usize) -> String;

    fn apply_generator(&self, j: usize, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (w, c) in v.terms() {
            self.apply_generator_to_word(j, w, c, &mut out);
        }
        out
    }

    /// The map **c** extended linearly.
    fn cyc_map(&self, v: &FockVector) -> CyclicVector {
        let mut out = CyclicVector::zero();
        for (w, c) in v.terms() {
            self.cyc_map_word(w, c, &mut out);
        }
        out
    }

    /// Fock inner product, conjugate-linear in the second slot.
    fn inner(&self, u: &FockVector, v: &FockVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, a) in u.terms() {
            let b = v.coefficient(w);
            if b.is_zero() {
                continue;
            }
            let mut t = a * &b.conj();
            for &i in w {
                t *= self.norm(i);
            }
            acc += t;
        }
        acc
    }

    /// Cyclic inner product
    /// `⟨[f₁⊗⋯⊗f_n], [g₁⊗⋯⊗g_m]⟩ = δ_{nm} Σ_k Π_i ⟨f_i, g_{i+k}⟩`.
    ///
    /// On an orthogonal basis only rotations mapping one word onto the other
    /// contribute; there are `n / period` of them.
    fn cyc_inner(&self, u: &CyclicVector, v: &CyclicVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, a) in u.terms() {
            let Some(b) = v.get_canonical(w) else {
                continue;
            };
            let rotations = (w.len() / period(w)) as i64;
            let mut t = a * &b.conj() * Scalar::from_int(rotations);
            for &i in w {
                t *= self.norm(i);
            }
            acc += t;
        }
        acc
    }

    /// Renders a Fock vector as `c·(b_i⊗b_j) + ..`.
    fn show(&self, v: &FockVector) -> String {
        render(v.terms(), |w| self.show_word(w, "Ω", "", ""))
    }

    fn show_cyclic(&self, v: &CyclicVector) -> String {
        render(v.terms(), |w| self.show_word(w, "[]", "[", "]"))
    }

    fn show_word(&self, w: &[usize], empty: &str, open: &str, close: &str) -> String {
        if w.is_empty() {
            return empty.to_string();
        }
        let parts: Vec<String> = w.iter().map(|&i| self.label(i)).collect();
        format!("{open}{}{close}", parts.join("⊗"))
    }
}

/// Creation `l(b_j)`: prepends `b_j`.
pub fn create(j: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (w, c) in v.terms() {
        let mut nw = Vec::with_capacity(w.len() + 1);
        nw.push(j);
        nw.extend(w);
        out.add_term(nw, c.clone());
    }
    out
}

/// Annihilation `l*(b_j)`: `b_i ⊗ w ↦ ⟨b_i, b_j⟩ w`, and `Ω ↦ 0`.
pub fn annihilate<M: FockModel + ?Sized>(model: &M, j: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (w, c) in v.terms() {
        if w.first() == Some(&j) {
            out.add_term(w[1..].to_vec(), c * model.norm(j));
        }
    }
    out
}

/// Multilinear expansion of `v₁ ⊗ ⋯ ⊗ v_n` given basis coordinates of each
/// factor: every basis word with its nonzero coefficient.
pub(crate) fn expand_words(coords: &[Vec<Scalar>]) -> Vec<(Word, Scalar)> {
    let mut acc: Vec<(Word, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for cs in coords {
        let mut next = Vec::with_capacity(acc.len() * cs.len());
        for (w, c) in &acc {
            for (j, x) in cs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(j);
                next.push((nw, c * x));
            }
        }
        acc = next;
    }
    acc
}

/// Memoized expansion of a word-indexed operator family over the
/// multilinear expansion of its arguments.
pub(crate) fn expand_operator(
    coords: &[Vec<Scalar>],
    mut on_word: impl FnMut(&[usize]) -> OpPoly,
) -> OpPoly {
    let mut out = OpPoly::zero();
    for (w, c) in expand_words(coords) {
        out.add_scaled(&on_word(&w), &c);
    }
    out
}

fn render<'a>(terms: impl Iterator<Item = (&'a Word, &'a Scalar)>, word: impl Fn(&[usize]) -> String) -> String {
    let parts: Vec<String> = terms.map(|(w, c)| format!("({c})·{}", word(w))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// A noncommutative polynomial in the field operators: a linear
/// combination of monomials `g_{j₁} g_{j₂} ⋯` (the rightmost factor acts
/// first). The empty monomial is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl OpPoly {
    pub fn zero() -> Self {
        OpPoly::default()
    }

    pub fn one() -> Self {
        OpPoly::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut p = OpPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn generator(j: usize) -> Self {
        let mut p = OpPoly::zero();
        p.add_term(vec![j], Scalar::one());
        p
    }

    /// `Σ c_j g_j`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let mut p = OpPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(vec![j], c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add_scaled(&mut self, other: &OpPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &OpPoly) -> OpPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &OpPoly) -> OpPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> OpPoly {
        let mut out = OpPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &OpPoly) -> OpPoly {
        let mut out = OpPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut m = a.clone();
                m.extend(b);
                out.add_term(m, x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> OpPoly {
        let mut acc = OpPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Adjoint: reversed monomials, conjugated coefficients, adjoint fields.
    pub fn adjoint<M: FockModel + ?Sized>(&self, model: &M) -> OpPoly {
        let mut out = OpPoly::zero();
        for (m, c) in &self.terms {
            let rev: Word = m.iter().rev().map(|&j| model.generator_adjoint(j)).collect();
            out.add_term(rev, c.conj());
        }
        out
    }

    /// Applies the operator to a Fock vector.
    pub fn apply<M: FockModel + ?Sized>(&self, model: &M, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (m, c) in &self.terms {
            let mut cur = v.clone();
            for &j in m.iter().rev() {
                cur = model.apply_generator(j, &cur);
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    /// `aΩ`.
    pub fn on_vacuum<M: FockModel + ?Sized>(&self, model: &M) -> FockVector {
        self.apply(model, &FockVector::vacuum())
    }
}
