//! Exact large-N limits: first-order moments, second-order covariances and
//! leading-order cumulants of Gaussian and compound Wishart matrices, as sums
//! over non-crossing diagrams.

use crate::algebra::{psicheck_sigma, GramSpace, Matrix, MatrixAlgebra, Scalar, Vector};
use crate::annular::{enumerate_nc_annular_partitions, nc2_cached, nc_disc_cached, snc_cached};
use crate::error::{guard, Error, Result};
use crate::perm::{AnnulusProfile, Permutation};

/// Largest total slot count for [`gauss_cumulant_leading`].
pub const MAX_GAUSS_CUMULANT: usize = 14;
/// Largest total slot count for [`wishart_cumulant_leading`].
pub const MAX_WISHART_CUMULANT: usize = 9;
/// Largest `n + m` for [`psicheck_sum`].
pub const MAX_PSICHECK: usize = 8;

/// Table of `⟨f_i, f̄_j⟩` over a slot list.
fn pairing_table(space: &GramSpace, slots: &[&Vector]) -> Result<Vec<Vec<Scalar>>> {
    slots
        .iter()
        .map(|f| slots.iter().map(|g| space.bilinear(f, g)).collect())
        .collect()
}

/// Sum over multi-annular non-crossing pairings of the products of pairings.
fn gauss_sum(space: &GramSpace, profile: &AnnulusProfile, slots: &[&Vector]) -> Result<Scalar> {
    if profile.total() % 2 == 1 {
        return Ok(Scalar::zero());
    }
    let table = pairing_table(space, slots)?;
    let mut acc = Scalar::zero();
    for pairing in nc2_cached(profile)?.iter() {
        let mut t = Scalar::one();
        for &(i, j) in pairing.pairs() {
            t *= &table[i][j];
            if t.is_zero() {
                break;
            }
        }
        acc += t;
    }
    Ok(acc)
}

fn wishart_sum(alg: &MatrixAlgebra, perms: &[Permutation], slots: &[&Matrix]) -> Result<Scalar> {
    perms.iter().map(|pi| alg.psi_pi(pi, slots)).sum()
}

fn nonempty<T>(what: &str, w: &[T]) -> Result<()> {
    if w.is_empty() {
        Err(Error::Invalid(format!("{what} must be nonempty")))
    } else {
        Ok(())
    }
}

/// `α(f₁,..,f_n) = Σ_{π ∈ NC₂(n)} Π_{(i,j) ∈ π} ⟨f_i, f̄_j⟩`, the limit of
/// `E tr(X(f₁)⋯X(f_n))`.
pub fn alpha(space: &GramSpace, fs: &[Vector]) -> Result<Scalar> {
    if fs.is_empty() {
        return Ok(Scalar::one());
    }
    let slots: Vec<&Vector> = fs.iter().collect();
    gauss_sum(space, &AnnulusProfile::disc(fs.len())?, &slots)
}

/// `β(d₁,..,d_n) = Σ_{π ∈ NC(n)} ψ_π(d₁,..,d_n)`, each block read as one
/// increasing cycle.
pub fn beta(alg: &MatrixAlgebra, ds: &[Matrix]) -> Result<Scalar> {
    if ds.is_empty() {
        return Ok(Scalar::one());
    }
    let mut acc = Scalar::zero();
    for pi in nc_disc_cached(ds.len())?.iter() {
        let mut t = Scalar::one();
        for block in pi.blocks() {
            let w: Vec<&Matrix> = block.iter().map(|&i| &ds[i]).collect();
            t = t * alg.psi(&w)?;
            if t.is_zero() {
                break;
            }
        }
        acc += t;
    }
    Ok(acc)
}

/// Limit covariance of `Tr(X(f₁)⋯X(f_n))` and `Tr(X(g₁)⋯X(g_m))`:
/// `Σ_{π ∈ NC₂(n,m)} Π_{(i,j) ∈ π} ⟨s_i, s̄_j⟩` over the slots `s = f ++ g`.
pub fn gauss_cov(space: &GramSpace, fs: &[Vector], gs: &[Vector]) -> Result<Scalar> {
    nonempty("left word", fs)?;
    nonempty("right word", gs)?;
    let slots: Vec<&Vector> = fs.iter().chain(gs).collect();
    gauss_sum(space, &AnnulusProfile::annulus(fs.len(), gs.len())?, &slots)
}

/// Limit covariance of `Tr(P(d₁)⋯P(d_n))` and `Tr(P(e₁)⋯P(e_m))` for
/// compound Wishart matrices: `Σ_{π ∈ S_NC(n,m)} ψ_π(d₁,..,d_n,e₁,..,e_m)`.
pub fn wishart_cov(alg: &MatrixAlgebra, ds: &[Matrix], es: &[Matrix]) -> Result<Scalar> {
    nonempty("left word", ds)?;
    nonempty("right word", es)?;
    let slots: Vec<&Matrix> = ds.iter().chain(es).collect();
    let perms = snc_cached(&AnnulusProfile::annulus(ds.len(), es.len())?)?;
    wishart_sum(alg, &perms, &slots)
}

/// Coefficient of `N^{2−r}` in the `r`-th cumulant of traces of Gaussian
/// words, one word per group.
pub fn gauss_cumulant_leading(space: &GramSpace, groups: &[Vec<Vector>]) -> Result<Scalar> {
    let profile = AnnulusProfile::new(groups.iter().map(Vec::len).collect())?;
    guard("total size", profile.total(), MAX_GAUSS_CUMULANT)?;
    let slots: Vec<&Vector> = groups.iter().flatten().collect();
    gauss_sum(space, &profile, &slots)
}

/// Coefficient of `N^{2−r}` in the `r`-th cumulant of traces of compound
/// Wishart words: `Σ_{π ∈ S_NC(n(1),..,n(r))} ψ_π`.
pub fn wishart_cumulant_leading(alg: &MatrixAlgebra, groups: &[Vec<Matrix>]) -> Result<Scalar> {
    let profile = AnnulusProfile::new(groups.iter().map(Vec::len).collect())?;
    guard("total size", profile.total(), MAX_WISHART_CUMULANT)?;
    let slots: Vec<&Matrix> = groups.iter().flatten().collect();
    wishart_sum(alg, &snc_cached(&profile)?, &slots)
}

/// `Σ_{σ ∈ NC(n,m)} ψ̌_σ(d₁,..,d_{n+m})`.
pub fn psicheck_sum(alg: &MatrixAlgebra, n: usize, m: usize, ds: &[Matrix]) -> Result<Scalar> {
    guard("n + m", n + m, MAX_PSICHECK)?;
    if ds.len() != n + m {
        return Err(Error::SizeMismatch {
            expected: n + m,
            actual: ds.len(),
        });
    }
    let slots: Vec<&Matrix> = ds.iter().collect();
    let mut acc = Scalar::zero();
    for sigma in enumerate_nc_annular_partitions(n, m)? {
        acc += psicheck_sigma(alg, &sigma, &slots)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annular::{enumerate_pairings, enumerate_snc};
    use crate::fock::{FockModel, PoissonFock, SemicircularFock};
    use crate::perm::{for_each_permutation, join_with};
    use proptest::prelude::*;

    fn s(a: i64) -> Scalar {
        Scalar::from_int(a)
    }

    fn mat(v: &[i64]) -> Matrix {
        Matrix::from_rows(vec![vec![s(v[0]), s(v[1])], vec![s(v[2]), s(v[3])]]).unwrap()
    }

    fn gram_from(a: &[i64], k: usize) -> GramSpace {
        let g = (0..k)
            .map(|i| (0..k).map(|j| s((0..k).map(|l| a[l * k + i] * a[l * k + j]).sum())).collect())
            .collect();
        GramSpace::new(g).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let h = GramSpace::orthonormal(2).unwrap();
        let f = h.basis(0);
        assert!(alpha(&h, &[f.clone(), f.clone(), f.clone()]).unwrap().is_zero());
        assert_eq!(alpha(&h, &[f.clone(), f.clone()]).unwrap(), s(1));
        assert_eq!(alpha(&h, &vec![f.clone(); 4]).unwrap(), s(2));
        assert_eq!(alpha(&h, &vec![f.clone(); 6]).unwrap(), s(5));
    }

    #[test]
    fn beta_examples() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let d = mat(&[1, 2, -1, 3]);
        assert_eq!(beta(&alg, std::slice::from_ref(&d)).unwrap(), alg.psi1(&d).unwrap());
        let expect = alg.psi(&[&d, &d]).unwrap() + alg.psi1(&d).unwrap().pow(2);
        assert_eq!(beta(&alg, &[d.clone(), d.clone()]).unwrap(), expect);
    }

    #[test]
    fn moment_bridge() {
        let g = gram_from(&[1, 1, 0, 0, 2, 1, 1, 0, 1], 3);
        let m = SemicircularFock::new(g.clone()).unwrap();
        let vs = [g.basis(0), g.vector(vec![s(1), s(-1), s(2)]).unwrap(), g.basis(2)];
        for n in 1..=7usize {
            let fs: Vec<Vector> = (0..n).map(|i| vs[(i * 7 + n) % 3].clone()).collect();
            let fock = m.omega_word_on_vacuum(&fs).unwrap().vacuum_coefficient();
            assert_eq!(alpha(&g, &fs).unwrap(), fock);
        }
        let alg = MatrixAlgebra::new(2).unwrap();
        let pm = PoissonFock::new(alg);
        let ds = [mat(&[1, 2, 0, 1]), mat(&[0, 1, 3, 0]), mat(&[2, 0, 1, -1])];
        for n in 1..=7usize {
            let w: Vec<Matrix> = (0..n).map(|i| ds[(i * 5 + n) % 3].clone()).collect();
            let fock = pm.p_word_on_vacuum(&w).unwrap().vacuum_coefficient();
            assert_eq!(beta(&alg, &w).unwrap(), fock);
        }
        // A projection gives the free Poisson moments.
        let p = mat(&[1, 0, 0, 0]);
        let lam = Scalar::ratio(1, 2);
        let moments = crate::fock::free_poisson_moments(&lam, 6);
        for (n, mom) in moments.iter().enumerate().skip(1) {
            assert_eq!(&beta(&alg, &vec![p.clone(); n]).unwrap(), mom);
        }
    }

    #[test]
    fn gauss_cov_examples() {
        let h = GramSpace::orthonormal(2).unwrap();
        let (e1, e2) = (h.basis(0), h.basis(1));
        let f = h.vector(vec![s(2), s(1)]).unwrap();
        assert_eq!(gauss_cov(&h, std::slice::from_ref(&f), std::slice::from_ref(&e1)).unwrap(), s(2));
        assert!(gauss_cov(&h, &[f.clone(), e1.clone()], std::slice::from_ref(&e1)).unwrap().is_zero());
        // (e1,e2) × (e1,e2): of the two annular pairings only 1–3, 2–4 respects
        // the slot pattern.
        let v = gauss_cov(&h, &[e1.clone(), e2.clone()], &[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(v, s(1));
        let v = gauss_cov(&h, &[e1.clone(), e1.clone()], &[e1.clone(), e1.clone()]).unwrap();
        assert_eq!(v, s(2));
    }

    #[test]
    fn wishart_cov_examples() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let (d1, d2) = (mat(&[1, 2, 0, -1]), mat(&[3, 1, 1, 0]));
        assert_eq!(wishart_cov(&alg, std::slice::from_ref(&d1), std::slice::from_ref(&d2)).unwrap(), alg.psi(&[&d1, &d2]).unwrap());
        let one = alg.one();
        for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let count = enumerate_snc(&AnnulusProfile::annulus(n, m).unwrap()).unwrap().len();
            let v = wishart_cov(&alg, &vec![one.clone(); n], &vec![one.clone(); m]).unwrap();
            assert_eq!(v, s(count as i64));
        }
        let p = mat(&[1, 0, 0, 0]);
        let snc21 = snc_cached(&AnnulusProfile::annulus(2, 1).unwrap()).unwrap();
        assert_eq!(snc21.len(), 4);
        let lam = Scalar::ratio(1, 2);
        let expect: Scalar = snc21.iter().map(|pi| lam.pow(pi.cycle_count() as i32)).sum();
        assert_eq!(wishart_cov(&alg, &[p.clone(), p.clone()], std::slice::from_ref(&p)).unwrap(), expect);
    }

    /// Independent count of connected pairings with `#(γπ) = 2 − r + n/2`,
    /// scanning every pairing.
    fn brute_nc2_count(sizes: &[usize]) -> usize {
        let profile = AnnulusProfile::new(sizes.to_vec()).unwrap();
        let n = profile.total();
        let gamma = profile.gamma();
        enumerate_pairings(n)
            .unwrap()
            .into_iter()
            .filter(|p| {
                let pi = p.to_permutation();
                let gp = Permutation::compose(&gamma, &pi).unwrap();
                gp.cycle_count() + sizes.len() == 2 + n / 2 && join_with(&pi, &gamma).unwrap().is_one()
            })
            .count()
    }

    #[test]
    fn cumulant_examples() {
        let h = GramSpace::orthonormal(1).unwrap();
        let f = h.basis(0);
        assert_eq!(gauss_cumulant_leading(&h, &[vec![f.clone(), f.clone()]]).unwrap(), s(1));
        let groups = vec![vec![f.clone(); 2]; 3];
        let expect = brute_nc2_count(&[2, 2, 2]);
        assert!(expect > 0);
        assert_eq!(gauss_cumulant_leading(&h, &groups).unwrap(), s(expect as i64));
        let two = [vec![f.clone(); 3], vec![f.clone(); 1]];
        assert_eq!(gauss_cumulant_leading(&h, &two).unwrap(), gauss_cov(&h, &two[0], &two[1]).unwrap());
        assert!(gauss_cumulant_leading(&h, &[vec![f.clone(); 16]]).is_err());

        let alg = MatrixAlgebra::new(2).unwrap();
        let d = mat(&[1, 2, 0, -1]);
        assert_eq!(wishart_cumulant_leading(&alg, &[vec![d.clone()]]).unwrap(), alg.psi1(&d).unwrap());
        let one = alg.one();
        let profile = AnnulusProfile::new(vec![2, 1, 1]).unwrap();
        let mut count = 0i64;
        let gamma = profile.gamma();
        for_each_permutation(4, |p| {
            let q = Permutation::compose(&p.inverse(), &gamma).unwrap();
            if p.cycle_count() + q.cycle_count() == 4 + 2 - 3 && join_with(p, &gamma).unwrap().is_one() {
                count += 1;
            }
        });
        let groups = vec![vec![one.clone(); 2], vec![one.clone()], vec![one.clone()]];
        assert_eq!(wishart_cumulant_leading(&alg, &groups).unwrap(), s(count));
    }

    #[test]
    fn psicheck_sum_examples() {
        let alg = MatrixAlgebra::new(2).unwrap();
        let d = mat(&[1, 2, 2, -1]);
        assert_eq!(psicheck_sum(&alg, 1, 1, &[d.clone(), d.clone()]).unwrap(), alg.psi(&[&d, &d]).unwrap());
        let ds = [mat(&[1, 2, 0, -1]), mat(&[3, 1, 1, 0]), mat(&[0, -2, 1, 1]), mat(&[2, 1, -1, 1])];
        assert_eq!(
            psicheck_sum(&alg, 2, 1, &ds[..3]).unwrap(),
            wishart_cov(&alg, &ds[..2], &ds[2..3]).unwrap()
        );
        assert_eq!(
            psicheck_sum(&alg, 2, 2, &ds).unwrap(),
            wishart_cov(&alg, &ds[..2], &ds[2..]).unwrap()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn gauss_cov_matches_fock(
            a in proptest::collection::vec(-2i64..3, 4),
            coords in proptest::collection::vec(-3i64..4, 8),
            n in 1usize..5,
            m in 1usize..4,
        ) {
            let g = gram_from(&a, 2);
            let vs: Vec<Vector> = coords.chunks(2).map(|c| g.vector(vec![s(c[0]), s(c[1])]).unwrap()).collect();
            let fs: Vec<Vector> = (0..n).map(|i| vs[i % 4].clone()).collect();
            let gs: Vec<Vector> = (0..m).map(|i| vs[(i + 2) % 4].clone()).collect();
            let fock = SemicircularFock::new(g.clone()).unwrap().fluct(&fs, &gs).unwrap();
            prop_assert_eq!(gauss_cov(&g, &fs, &gs).unwrap(), fock);
        }

        #[test]
        fn gauss_cov_rotation_invariant(
            coords in proptest::collection::vec(-3i64..4, 12),
            n in 1usize..4,
            m in 1usize..4,
            r in 0usize..4,
        ) {
            let h = GramSpace::orthonormal(2).unwrap();
            let vs: Vec<Vector> = coords.chunks(2).map(|c| h.vector(vec![s(c[0]), s(c[1])]).unwrap()).collect();
            let fs: Vec<Vector> = vs[..n].to_vec();
            let gs: Vec<Vector> = vs[3..3 + m].to_vec();
            let base = gauss_cov(&h, &fs, &gs).unwrap();
            let mut fr = fs.clone();
            fr.rotate_left(r % n);
            let mut gr = gs.clone();
            gr.rotate_left(r % m);
            prop_assert_eq!(gauss_cov(&h, &fr, &gr).unwrap(), base);
        }

        #[test]
        fn wishart_engines_agree(
            entries in proptest::collection::vec(-2i64..3, 16),
            n in 1usize..4,
            m in 1usize..3,
        ) {
            let alg = MatrixAlgebra::new(2).unwrap();
            let ms: Vec<Matrix> = entries.chunks(4).map(mat).collect();
            let ds: Vec<Matrix> = (0..n).map(|i| ms[i].clone()).collect();
            let es: Vec<Matrix> = (0..m).map(|i| ms[(i + 3) % 4].clone()).collect();
            let w = wishart_cov(&alg, &ds, &es).unwrap();
            let pf = PoissonFock::new(alg);
            prop_assert_eq!(&w, &pf.fluct(&ds, &es).unwrap());
            let all: Vec<Matrix> = ds.iter().chain(&es).cloned().collect();
            prop_assert_eq!(&w, &psicheck_sum(&alg, n, m, &all).unwrap());
            prop_assert!(pf.dim() == 4);
        }
    }
}
