use std::collections::BTreeMap;

use crate::algebra::Scalar;

/// A tensor word `b_{i₁} ⊗ ⋯ ⊗ b_{i_n}` over the model's orthogonal
/// one-particle basis; the empty word is the vacuum Ω.
pub type Word = Vec<usize>;

/// A finite linear combination of tensor words, with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<Word, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    /// Ω.
    pub fn vacuum() -> Self {
        FockVector::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        let mut v = FockVector::zero();
        v.add_term(w, Scalar::one());
        v
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[usize]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of Ω.
    pub fn vacuum_coefficient(&self) -> Scalar {
        self.coefficient(&[])
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> FockVector {
        let mut out = FockVector::zero();
        out.add_scaled(self, c);
        out
    }
}

/// Lexicographically minimal rotation of a word.
pub fn canonical_rotation(w: &[usize]) -> Word {
    let n = w.len();
    let mut best: Word = w.to_vec();
    for s in 1..n {
        let rot: Word = w[s..].iter().chain(&w[..s]).copied().collect();
        if rot < best {
            best = rot;
        }
    }
    best
}

/// Smallest p > 0 such that rotating by p fixes the word.
pub fn period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| w[i] == w[(i + p) % n]))
        .unwrap_or(n)
}

/// A finite linear combination of circular words `[b_{i₁} ⊗ ⋯ ⊗ b_{i_n}]`,
/// each stored as its minimal rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclicVector {
    terms: BTreeMap<Word, Scalar>,
}

impl CyclicVector {
    pub fn zero() -> Self {
        CyclicVector::default()
    }

    /// `[w]`; the empty word has no circular counterpart and gives 0.
    pub fn word(w: &[usize]) -> Self {
        let mut v = CyclicVector::zero();
        v.add_term(w, Scalar::one());
        v
    }

    pub fn add_term(&mut self, w: &[usize], c: Scalar) {
        if c.is_zero() || w.is_empty() {
            return;
        }
        let key = canonical_rotation(w);
        match self.terms.entry(key) {
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

    pub fn add_scaled(&mut self, other: &CyclicVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w, x * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[usize]) -> Scalar {
        self.terms
            .get(&canonical_rotation(w))
            .cloned()
            .unwrap_or_default()
    }

    pub(crate) fn get_canonical(&self, key: &[usize]) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
