use std::collections::HashMap;

use super::operator::{annihilate, create, expand_operator, expand_words, FockModel, OpPoly};
use super::polys::poisson_gamma_polys;
use super::word::{CyclicVector, FockVector, Word};
use crate::algebra::{Matrix, MatrixAlgebra, Scalar};
use crate::error::{Error, Result};

/// The full Fock space over `𝒟 = M_k` with the GNS inner product
/// `⟨d₁, d₂⟩ = ψ(d₂* d₁)`, carrying the compound Poisson fields
/// `p(d) = l(d) + l*(d*) + Λ(d) + ψ(d)·1`.
///
/// Words are written over the matrix units `E_ab` (index `a·k + b`), which
/// are orthogonal with `⟨E_ab, E_ab⟩ = 1/k`.
#[derive(Clone, Debug)]
pub struct PoissonFock {
    alg: MatrixAlgebra,
    norms: Vec<Scalar>,
}

impl PoissonFock {
    pub fn new(alg: MatrixAlgebra) -> Self {
        let k = alg.size();
        let norms = vec![Scalar::ratio(1, k as i64); k * k];
        PoissonFock { alg, norms }
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.alg
    }

    fn k(&self) -> usize {
        self.alg.size()
    }

    /// `E_i E_j`, as a matrix-unit index, or `None` when it vanishes.
    pub fn fuse(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.k();
        let (a, b) = (i / k, i % k);
        let (c, d) = (j / k, j % k);
        (b == c).then_some(a * k + d)
    }

    /// `ψ(E_i)`.
    pub fn psi1(&self, i: usize) -> Scalar {
        let k = self.k();
        if i / k == i % k {
            self.norms[i].clone()
        } else {
            Scalar::zero()
        }
    }

    /// `ψ(E_i E_j)`.
    pub fn psi2(&self, i: usize, j: usize) -> Scalar {
        match self.fuse(i, j) {
            Some(f) => self.psi1(f),
            None => Scalar::zero(),
        }
    }

    /// Matrix-unit coordinates of `d`.
    pub fn coords(&self, d: &Matrix) -> Result<Vec<Scalar>> {
        let k = self.k();
        if d.size() != k {
            return Err(Error::SpaceMismatch);
        }
        Ok((0..k * k).map(|i| d.get(i / k, i % k).clone()).collect())
    }

    fn all_coords(&self, ds: &[Matrix]) -> Result<Vec<Vec<Scalar>>> {
        ds.iter().map(|d| self.coords(d)).collect()
    }

    /// `d₁ ⊗ ⋯ ⊗ d_n`.
    pub fn tensor(&self, ds: &[Matrix]) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (w, c) in expand_words(&self.all_coords(ds)?) {
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// `[d₁ ⊗ ⋯ ⊗ d_n]`.
    pub fn cyclic_tensor(&self, ds: &[Matrix]) -> Result<CyclicVector> {
        let mut out = CyclicVector::zero();
        for (w, c) in expand_words(&self.all_coords(ds)?) {
            out.add_term(&w, c);
        }
        Ok(out)
    }

    /// `l(d)v`.
    pub fn creation(&self, d: &Matrix, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (j, c) in self.coords(d)?.iter().enumerate() {
            out.add_scaled(&create(j, v), c);
        }
        Ok(out)
    }

    /// `l*(d)v`: `d₁ ⊗ w ↦ ψ(d* d₁) w`.
    pub fn annihilation(&self, d: &Matrix, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (j, c) in self.coords(d)?.iter().enumerate() {
            out.add_scaled(&annihilate(self, j, v), &c.conj());
        }
        Ok(out)
    }

    /// `Λ(d)v`: `d₁ ⊗ w ↦ (d d₁) ⊗ w`, and `Ω ↦ 0`.
    pub fn preservation(&self, d: &Matrix, v: &FockVector) -> Result<FockVector> {
        let coords = self.coords(d)?;
        let mut out = FockVector::zero();
        for (w, c) in v.terms() {
            let Some((&head, rest)) = w.split_first() else {
                continue;
            };
            for (j, x) in coords.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if let Some(f) = self.fuse(j, head) {
                    let mut nw = Vec::with_capacity(w.len());
                    nw.push(f);
                    nw.extend(rest);
                    out.add_term(nw, c * x);
                }
            }
        }
        Ok(out)
    }

    /// The operator `p(d)`.
    pub fn p(&self, d: &Matrix) -> Result<OpPoly> {
        Ok(OpPoly::linear(&self.coords(d)?))
    }

    /// `p(d₁)⋯p(d_n)Ω`.
    pub fn p_word_on_vacuum(&self, ds: &[Matrix]) -> Result<FockVector> {
        let mut v = FockVector::vacuum();
        for d in ds.iter().rev() {
            v = self.p(d)?.apply(self, &v);
        }
        Ok(v)
    }

    /// The free Kailath–Segall polynomial `W(d₁ ⊗ ⋯ ⊗ d_n)`.
    pub fn kailath_segall(&self, ds: &[Matrix]) -> Result<OpPoly> {
        let mut memo = HashMap::new();
        Ok(expand_operator(&self.all_coords(ds)?, |w| self.ks_basis(w, &mut memo)))
    }

    /// The cyclic Wick product `C(d₁ ⊗ ⋯ ⊗ d_n)`, `n ≥ 1`, from
    /// `W(d₁⊗⋯⊗d_n) = C(d₁⊗⋯⊗d_n) + C(d_n d₁ ⊗ d₂ ⊗ ⋯ ⊗ d_{n−1}) + ψ(d₁d_n) W(d₂⊗⋯⊗d_{n−1})`.
    pub fn cyclic_wick(&self, ds: &[Matrix]) -> Result<OpPoly> {
        if ds.is_empty() {
            return Err(Error::Invalid("cyclic Wick products need n ≥ 1".into()));
        }
        let mut wmemo = HashMap::new();
        let mut cmemo = HashMap::new();
        Ok(expand_operator(&self.all_coords(ds)?, |w| {
            self.cyc_basis(w, &mut wmemo, &mut cmemo)
        }))
    }

    fn ks_basis(&self, w: &[usize], memo: &mut HashMap<Word, OpPoly>) -> OpPoly {
        if let Some(p) = memo.get(w) {
            return p.clone();
        }
        let out = match w {
            [] => OpPoly::one(),
            [j] => OpPoly::generator(*j).sub(&OpPoly::scalar(self.psi1(*j))),
            [j, d1, rest @ ..] => {
                let tail = self.ks_basis(&w[1..], memo);
                let mut p = OpPoly::generator(*j).mul(&tail);
                p.add_scaled(&tail, &-self.psi1(*j));
                let c = self.psi2(*j, *d1);
                if !c.is_zero() {
                    p.add_scaled(&self.ks_basis(rest, memo), &-c);
                }
                if let Some(f) = self.fuse(*j, *d1) {
                    let mut fw = Vec::with_capacity(w.len() - 1);
                    fw.push(f);
                    fw.extend(rest);
                    p = p.sub(&self.ks_basis(&fw, memo));
                }
                p
            }
        };
        memo.insert(w.to_vec(), out.clone());
        out
    }

    fn cyc_basis(
        &self,
        w: &[usize],
        wmemo: &mut HashMap<Word, OpPoly>,
        cmemo: &mut HashMap<Word, OpPoly>,
    ) -> OpPoly {
        if let Some(p) = cmemo.get(w) {
            return p.clone();
        }
        let n = w.len();
        let mut out = self.ks_basis(w, wmemo);
        if n >= 2 {
            let mid = &w[1..n - 1];
            if let Some(f) = self.fuse(w[n - 1], w[0]) {
                let mut fw = Vec::with_capacity(n - 1);
                fw.push(f);
                fw.extend(mid);
                out = out.sub(&self.cyc_basis(&fw, wmemo, cmemo));
            }
            let c = self.psi2(w[0], w[n - 1]);
            if !c.is_zero() {
                out.add_scaled(&self.ks_basis(mid, wmemo), &-c);
            }
        }
        cmemo.insert(w.to_vec(), out.clone());
        out
    }

    /// `⟨c p(d₁)⋯p(d_n)Ω, c p(e_m*)⋯p(e₁*)Ω⟩_cyc`.
    pub fn fluct(&self, ds: &[Matrix], es: &[Matrix]) -> Result<Scalar> {
        let left = self.cyc_map(&self.p_word_on_vacuum(ds)?);
        let rev: Vec<Matrix> = es.iter().rev().map(Matrix::adjoint).collect();
        let right = self.cyc_map(&self.p_word_on_vacuum(&rev)?);
        Ok(self.cyc_inner(&left, &right))
    }

    /// `Γ_n(p(d))` for a projection `d`, with `λ = ψ(d)`.
    pub fn gamma(&self, d: &Matrix, n: usize) -> Result<OpPoly> {
        if !d.is_projection() {
            return Err(Error::NotProjection);
        }
        let lambda = self.alg.psi1(d)?;
        let polys = poisson_gamma_polys(&lambda, n)?;
        Ok(polys[n].eval_op(&self.p(d)?))
    }
}

impl FockModel for PoissonFock {
    fn dim(&self) -> usize {
        self.norms.len()
    }

    fn norm(&self, i: usize) -> &Scalar {
        &self.norms[i]
    }

    fn apply_generator_to_word(&self, j: usize, w: &[usize], c: &Scalar, out: &mut FockVector) {
        let mut nw = Vec::with_capacity(w.len() + 1);
        nw.push(j);
        nw.extend(w);
        out.add_term(nw, c.clone());
        if let Some((&head, rest)) = w.split_first() {
            // l*(E_j*) pairs with the adjoint unit.
            if head == self.generator_adjoint(j) {
                out.add_term(rest.to_vec(), c * &self.norms[j]);
            }
            if let Some(f) = self.fuse(j, head) {
                let mut fw = Vec::with_capacity(w.len());
                fw.push(f);
                fw.extend(rest);
                out.add_term(fw, c.clone());
            }
        }
        let s = self.psi1(j);
        if !s.is_zero() {
            out.add_term(w.to_vec(), c * &s);
        }
    }

    fn generator_adjoint(&self, j: usize) -> usize {
        let k = self.k();
        (j % k) * k + j / k
    }

    /// `c(d₁⊗⋯⊗d_n) = [d₁⊗⋯⊗d_n] + [d_n d₁ ⊗ d₂ ⊗ ⋯ ⊗ d_{n−1}] + ψ(d₁d_n) c(d₂⊗⋯⊗d_{n−1})`,
    /// with `c(Ω) = 0` and `c(d) = [d]`.
    fn cyc_map_word(&self, w: &[usize], c: &Scalar, out: &mut CyclicVector) {
        let n = w.len();
        if n == 0 || c.is_zero() {
            return;
        }
        out.add_term(w, c.clone());
        if n == 1 {
            return;
        }
        let mid = &w[1..n - 1];
        if let Some(f) = self.fuse(w[n - 1], w[0]) {
            let mut fw = Vec::with_capacity(n - 1);
            fw.push(f);
            fw.extend(mid);
            out.add_term(&fw, c.clone());
        }
        let s = self.psi2(w[0], w[n - 1]);
        if !s.is_zero() {
            self.cyc_map_word(mid, &(c * &s), out);
        }
    }

    fn label(&self, i: usize) -> String {
        let k = self.k();
        format!("E{}{}", i / k + 1, i % k + 1)
    }
}

/// `⟨c p(d₁)⋯p(d_n)Ω, c p(e_m*)⋯p(e₁*)Ω⟩_cyc` over `M_k` with its normalized trace.
pub fn fluct_poisson_fock(alg: &MatrixAlgebra, ds: &[Matrix], es: &[Matrix]) -> Result<Scalar> {
    PoissonFock::new(*alg).fluct(ds, es)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annular::{enumerate_nc_disc, snc_cached};
    use crate::perm::{AnnulusProfile, SetPartition};
    use proptest::prelude::*;

    fn s(a: i64) -> Scalar {
        Scalar::from_int(a)
    }

    fn mat(v: &[i64]) -> Matrix {
        Matrix::from_rows(vec![vec![s(v[0]), s(v[1])], vec![s(v[2]), s(v[3])]]).unwrap()
    }

    fn model() -> PoissonFock {
        PoissonFock::new(MatrixAlgebra::new(2).unwrap())
    }

    fn psi_partition(alg: &MatrixAlgebra, pi: &SetPartition, ds: &[Matrix]) -> Scalar {
        pi.blocks()
            .iter()
            .map(|b| {
                let w: Vec<&Matrix> = b.iter().map(|&i| &ds[i]).collect();
                alg.psi(&w).unwrap()
            })
            .product()
    }

    #[test]
    fn preservation_and_p_on_vacuum() {
        let m = model();
        let d = mat(&[1, 2, 3, 4]);
        assert!(m.preservation(&d, &FockVector::vacuum()).unwrap().is_zero());
        let v = m.p_word_on_vacuum(std::slice::from_ref(&d)).unwrap();
        let expect = m.tensor(std::slice::from_ref(&d)).unwrap().add(&FockVector::vacuum().scale(&m.algebra().psi1(&d).unwrap()));
        assert_eq!(v, expect);
        let e = mat(&[0, 1, -1, 2]);
        let t = m.tensor(&[e.clone(), d.clone()]).unwrap();
        let lam = m.preservation(&d, &t).unwrap();
        assert_eq!(lam, m.tensor(&[d.mul(&e).unwrap(), d.clone()]).unwrap());
        // l*(d)(e ⊗ d) = ψ(d* e) d.
        let ann = m.annihilation(&d, &t).unwrap();
        let c = m.algebra().inner(&e, &d).unwrap();
        assert_eq!(ann, m.tensor(std::slice::from_ref(&d)).unwrap().scale(&c));
    }

    #[test]
    fn p_matches_its_four_parts() {
        let m = model();
        let d = mat(&[1, -2, 3, 0]);
        let e = mat(&[2, 1, 1, -1]);
        let v = m.tensor(&[e.clone(), d.clone()]).unwrap().add(&FockVector::vacuum());
        let lhs = m.p(&d).unwrap().apply(&m, &v);
        let rhs = m
            .creation(&d, &v)
            .unwrap()
            .add(&m.annihilation(&d.adjoint(), &v).unwrap())
            .add(&m.preservation(&d, &v).unwrap())
            .add(&v.scale(&m.algebra().psi1(&d).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn moments_are_noncrossing_sums() {
        let m = model();
        let ds = [mat(&[1, 2, 0, 1]), mat(&[0, 1, 1, 0]), mat(&[2, 0, -1, 3]), mat(&[1, 1, 1, 1])];
        for n in 1..=4 {
            let w = &ds[..n];
            let lhs = m.p_word_on_vacuum(w).unwrap().vacuum_coefficient();
            let rhs: Scalar = enumerate_nc_disc(n)
                .unwrap()
                .iter()
                .map(|pi| psi_partition(m.algebra(), pi, w))
                .sum();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kailath_segall_examples() {
        let m = model();
        let d = mat(&[1, 2, 3, 4]);
        let w1 = m.kailath_segall(std::slice::from_ref(&d)).unwrap();
        assert_eq!(w1, m.p(&d).unwrap().sub(&OpPoly::scalar(m.algebra().psi1(&d).unwrap())));
        assert_eq!(w1.on_vacuum(&m), m.tensor(std::slice::from_ref(&d)).unwrap());
        let w2 = m.kailath_segall(&[d.clone(), d.clone()]).unwrap();
        assert_eq!(w2.on_vacuum(&m), m.tensor(&[d.clone(), d.clone()]).unwrap());
    }

    #[test]
    fn cyc_map_examples() {
        let m = model();
        let (d1, d2, d3) = (mat(&[1, 2, 0, 1]), mat(&[0, 1, 3, 0]), mat(&[2, 0, 1, -1]));
        assert!(m.cyc_map(&FockVector::vacuum()).is_zero());
        assert_eq!(m.cyc_map(&m.tensor(std::slice::from_ref(&d1)).unwrap()), m.cyclic_tensor(std::slice::from_ref(&d1)).unwrap());
        let c2 = m.cyc_map(&m.tensor(&[d1.clone(), d2.clone()]).unwrap());
        let mut expect = m.cyclic_tensor(&[d1.clone(), d2.clone()]).unwrap();
        expect.add_scaled(&m.cyclic_tensor(&[d2.mul(&d1).unwrap()]).unwrap(), &s(1));
        assert_eq!(c2, expect);
        let c3 = m.cyc_map(&m.tensor(&[d1.clone(), d2.clone(), d3.clone()]).unwrap());
        let mut expect = m.cyclic_tensor(&[d1.clone(), d2.clone(), d3.clone()]).unwrap();
        expect.add_scaled(&m.cyclic_tensor(&[d3.mul(&d1).unwrap(), d2.clone()]).unwrap(), &s(1));
        let psi31 = m.algebra().psi(&[&d3, &d1]).unwrap();
        expect.add_scaled(&m.cyclic_tensor(std::slice::from_ref(&d2)).unwrap(), &psi31);
        assert_eq!(c3, expect);
    }

    #[test]
    fn fluct_examples() {
        let m = model();
        let d = mat(&[1, 2, 2, -1]);
        let psi_dd = m.algebra().psi(&[&d, &d]).unwrap();
        assert_eq!(m.fluct(std::slice::from_ref(&d), std::slice::from_ref(&d)).unwrap(), psi_dd);
        let p = mat(&[1, 0, 0, 0]);
        let profile = AnnulusProfile::annulus(2, 1).unwrap();
        let expect: Scalar = snc_cached(&profile)
            .unwrap()
            .iter()
            .map(|pi| m.algebra().psi_pi(pi, &[&p, &p, &p]).unwrap())
            .sum();
        assert_eq!(m.fluct(&[p.clone(), p.clone()], std::slice::from_ref(&p)).unwrap(), expect);
    }

    #[test]
    fn gamma_diagonalizes() {
        for (k, r) in [(2usize, 1usize), (3, 1), (3, 2)] {
            let m = PoissonFock::new(MatrixAlgebra::new(k).unwrap());
            let d = Matrix::diag((0..k).map(|i| s(i64::from(i < r))).collect());
            let lambda = Scalar::ratio(r as i64, k as i64);
            let cs: Vec<CyclicVector> = (1..=4)
                .map(|n| m.cyc_map(&m.gamma(&d, n).unwrap().on_vacuum(&m)))
                .collect();
            for n in 1..=4 {
                let cn = m.cyclic_wick(&vec![d.clone(); n]).unwrap().on_vacuum(&m);
                assert_eq!(m.gamma(&d, n).unwrap().on_vacuum(&m), cn);
                assert_eq!(cs[n - 1], m.cyclic_tensor(&vec![d.clone(); n]).unwrap());
                for j in 1..=4 {
                    let v = m.cyc_inner(&cs[n - 1], &cs[j - 1]);
                    let expect = if n == j { Scalar::from_int(n as i64) * lambda.pow(n as i32) } else { Scalar::zero() };
                    assert_eq!(v, expect);
                }
            }
        }
        assert_eq!(model().gamma(&mat(&[1, 1, 0, 0]), 2).unwrap_err(), Error::NotProjection);
    }

    #[test]
    fn defining_properties_and_adjoint() {
        let m = model();
        let ds = [mat(&[1, 2, 0, 1]), mat(&[0, 1, 3, 0]), Matrix::from_rows(vec![vec![Scalar::i(), s(1)], vec![s(0), Scalar::ratio(1, 2)]]).unwrap()];
        let mut spanning = vec![FockVector::vacuum()];
        for n in 1..=3 {
            let mut idx = vec![0usize; n];
            loop {
                spanning.push(FockVector::word(idx.clone()));
                if !crate::fock::semicircular::tests::next_index(&mut idx, 4) {
                    break;
                }
            }
        }
        for n in 1..=3 {
            let mut idx = vec![0usize; n];
            loop {
                let w: Vec<Matrix> = idx.iter().map(|&i| ds[i].clone()).collect();
                let ks = m.kailath_segall(&w).unwrap();
                assert_eq!(ks.on_vacuum(&m), m.tensor(&w).unwrap());
                let c = m.cyc_map(&m.cyclic_wick(&w).unwrap().on_vacuum(&m));
                assert_eq!(c, m.cyclic_tensor(&w).unwrap());
                if n <= 2 {
                    let rev: Vec<Matrix> = w.iter().rev().map(Matrix::adjoint).collect();
                    let lhs = ks.adjoint(&m);
                    let rhs = m.kailath_segall(&rev).unwrap();
                    for v in &spanning {
                        assert_eq!(lhs.apply(&m, v), rhs.apply(&m, v));
                    }
                }
                if !crate::fock::semicircular::tests::next_index(&mut idx, ds.len()) {
                    break;
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn traciality(
            entries in proptest::collection::vec(-2i64..3, 12),
            left in proptest::collection::vec(0usize..3, 1..4),
            right in proptest::collection::vec(0usize..3, 1..4),
        ) {
            let m = model();
            let ds: Vec<Matrix> = entries.chunks(4).map(mat).collect();
            let word = |idx: &[usize]| idx.iter().fold(OpPoly::one(), |acc, &i| acc.mul(&m.p(&ds[i]).unwrap()));
            let (x, y) = (word(&left), word(&right));
            prop_assert_eq!(m.cyc_map(&x.mul(&y).on_vacuum(&m)), m.cyc_map(&y.mul(&x).on_vacuum(&m)));
        }
    }
}
