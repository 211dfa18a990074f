use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::pairing::{for_each_pairing, Pairing};
use crate::error::{guard, Error, Result};
use crate::perm::{for_each_permutation, join_with, AnnulusProfile, Permutation, SetPartition};

pub const MAX_SNC: usize = 10;
pub const MAX_NC_DISC: usize = 12;
pub const MAX_NC2: usize = 16;

/// A permutation together with the multi-annulus it is drawn on, known to
/// be connected and to satisfy the geodesic condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnnularPermutation {
    profile: AnnulusProfile,
    perm: Permutation,
}

impl AnnularPermutation {
    pub fn new(profile: AnnulusProfile, perm: Permutation) -> Result<Self> {
        if perm.size() != profile.total() {
            return Err(Error::SizeMismatch {
                expected: profile.total(),
                actual: perm.size(),
            });
        }
        if !is_connected(&perm, &profile)? {
            return Err(Error::Disconnected);
        }
        if !is_geodesic(&perm, &profile)? {
            return Err(Error::NotAnnularNonCrossing(format!(
                "{perm} violates the geodesic condition on {profile}"
            )));
        }
        Ok(AnnularPermutation { profile, perm })
    }

    pub fn profile(&self) -> &AnnulusProfile {
        &self.profile
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn into_perm(self) -> Permutation {
        self.perm
    }
}

fn check_size(p: &Permutation, profile: &AnnulusProfile) -> Result<()> {
    if p.size() != profile.total() {
        return Err(Error::SizeMismatch {
            expected: profile.total(),
            actual: p.size(),
        });
    }
    Ok(())
}

/// σ ∨ γ = 1: every circle is reached from every other.
pub fn is_connected(p: &Permutation, profile: &AnnulusProfile) -> Result<bool> {
    check_size(p, profile)?;
    Ok(join_with(p, &profile.gamma())?.is_one())
}

/// `#(τ) + #(τ⁻¹γ) = n + 2 − r`.
pub fn is_geodesic(p: &Permutation, profile: &AnnulusProfile) -> Result<bool> {
    check_size(p, profile)?;
    let rhs = profile.total() + 2 - profile.circles();
    let q = Permutation::compose(&p.inverse(), &profile.gamma())?;
    Ok(p.cycle_count() + q.cycle_count() == rhs)
}

/// The same condition written with `γτ⁻¹` instead of `τ⁻¹γ`.
pub fn is_geodesic_right(p: &Permutation, profile: &AnnulusProfile) -> Result<bool> {
    check_size(p, profile)?;
    let rhs = profile.total() + 2 - profile.circles();
    let q = Permutation::compose(&profile.gamma(), &p.inverse())?;
    Ok(p.cycle_count() + q.cycle_count() == rhs)
}

pub fn is_snc(p: &Permutation, profile: &AnnulusProfile) -> Result<bool> {
    Ok(is_connected(p, profile)? && is_geodesic(p, profile)?)
}

/// Genus from `#(σ) + #(σ⁻¹γ) + #(γ) = n + 2(1 − g)`.
pub fn genus(p: &Permutation, profile: &AnnulusProfile) -> Result<i64> {
    if !is_connected(p, profile)? {
        return Err(Error::Disconnected);
    }
    let gamma = profile.gamma();
    let q = Permutation::compose(&p.inverse(), &gamma)?;
    let lhs = (p.cycle_count() + q.cycle_count() + gamma.cycle_count()) as i64;
    let twice = profile.total() as i64 + 2 - lhs;
    if twice % 2 != 0 {
        return Err(Error::NonIntegralGenus { twice_genus: twice });
    }
    Ok(twice / 2)
}

/// All of S_NC(n(1),..,n(r)) by a scan of the full symmetric group.
pub fn enumerate_snc(profile: &AnnulusProfile) -> Result<Vec<AnnularPermutation>> {
    Ok(snc_permutations(profile)?
        .iter()
        .map(|p| AnnularPermutation {
            profile: profile.clone(),
            perm: p.clone(),
        })
        .collect())
}

fn snc_permutations(profile: &AnnulusProfile) -> Result<Vec<Permutation>> {
    let n = profile.total();
    guard("total size", n, MAX_SNC)?;
    let gamma = profile.gamma();
    let target = n + 2 - profile.circles();
    let mut out = Vec::new();
    for_each_permutation(n, |p| {
        let q = Permutation::compose(&p.inverse(), &gamma).expect("equal sizes");
        if p.cycle_count() + q.cycle_count() == target
            && join_with(p, &gamma).expect("equal sizes").is_one()
        {
            out.push(p.clone());
        }
    });
    Ok(out)
}

/// Disc non-crossing partitions of n points, generated directly.
pub fn enumerate_nc_disc(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::Invalid("non-crossing partitions need n >= 1".into()));
    }
    guard("disc size", n, MAX_NC_DISC)?;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    let mut last = Vec::new();
    let mut mins = Vec::new();
    fn rec(
        i: usize,
        labels: &mut Vec<usize>,
        last: &mut Vec<usize>,
        mins: &mut Vec<usize>,
        out: &mut Vec<SetPartition>,
    ) {
        let n = labels.len();
        if i == n {
            out.push(SetPartition::from_labels(labels));
            return;
        }
        for b in 0..last.len() {
            // Every point strictly between the block's last point and i must
            // sit in a block opened after that last point.
            let l = last[b];
            if (l + 1..i).all(|x| mins[labels[x]] > l) {
                labels[i] = b;
                let prev = last[b];
                last[b] = i;
                rec(i + 1, labels, last, mins, out);
                last[b] = prev;
            }
        }
        labels[i] = last.len();
        last.push(i);
        mins.push(i);
        rec(i + 1, labels, last, mins, out);
        last.pop();
        mins.pop();
    }
    rec(0, &mut labels, &mut last, &mut mins, &mut out);
    Ok(out)
}

/// Multi-annular non-crossing pairings: connected and
/// `#(γπ) = 2 − r + n/2`.
pub fn enumerate_nc2(profile: &AnnulusProfile) -> Result<Vec<Pairing>> {
    let n = profile.total();
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    guard("total size", n, MAX_NC2)?;
    let gamma = profile.gamma();
    let target = (2 + n / 2) as i64 - profile.circles() as i64;
    let mut out = Vec::new();
    for_each_pairing(n, |p| {
        let pi = p.to_permutation();
        let gp = Permutation::compose(&gamma, &pi).expect("equal sizes");
        if gp.cycle_count() as i64 == target && join_with(&pi, &gamma).expect("equal sizes").is_one() {
            out.push(p);
        }
    });
    Ok(out)
}

type Cache<T> = OnceLock<Mutex<HashMap<AnnulusProfile, Arc<Vec<T>>>>>;

fn cached<T>(
    cache: &'static Cache<T>,
    profile: &AnnulusProfile,
    compute: impl FnOnce(&AnnulusProfile) -> Result<Vec<T>>,
) -> Result<Arc<Vec<T>>> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache lock").get(profile) {
        return Ok(Arc::clone(v));
    }
    let v = Arc::new(compute(profile)?);
    map.lock()
        .expect("cache lock")
        .insert(profile.clone(), Arc::clone(&v));
    Ok(v)
}

/// Memoized `enumerate_nc2`; enumeration results are pure functions of the
/// profile, so sharing them across callers is safe.
pub fn nc2_cached(profile: &AnnulusProfile) -> Result<Arc<Vec<Pairing>>> {
    static CACHE: Cache<Pairing> = OnceLock::new();
    cached(&CACHE, profile, enumerate_nc2)
}

/// Memoized S_NC scan, as bare permutations.
pub fn snc_cached(profile: &AnnulusProfile) -> Result<Arc<Vec<Permutation>>> {
    static CACHE: Cache<Permutation> = OnceLock::new();
    cached(&CACHE, profile, snc_permutations)
}

/// Memoized disc non-crossing partitions.
pub fn nc_disc_cached(n: usize) -> Result<Arc<Vec<SetPartition>>> {
    static CACHE: Cache<SetPartition> = OnceLock::new();
    cached(&CACHE, &AnnulusProfile::disc(n)?, |_| enumerate_nc_disc(n))
}
