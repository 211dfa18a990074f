use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{guard, Error, Result};
use crate::perm::{Permutation, SetPartition};

/// Largest size for which all pairings may be listed.
pub const MAX_PAIRINGS: usize = 20;

/// A perfect matching of `{0, .., n-1}`; pairs are stored `(i, j)` with
/// `i < j`, sorted by `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::OddSize(n));
        }
        let mut seen = vec![false; n];
        let mut norm = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let (i, j) = (a.min(b), a.max(b));
            if i == j || j >= n || seen[i] || seen[j] {
                return Err(Error::InvalidPartition(format!(
                    "pair ({},{}) is invalid or overlaps another",
                    a + 1,
                    b + 1
                )));
            }
            seen[i] = true;
            seen[j] = true;
            norm.push((i, j));
        }
        if norm.len() * 2 != n {
            return Err(Error::InvalidPartition("not every point is paired".into()));
        }
        norm.sort_unstable();
        Ok(Pairing { n, pairs: norm })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The involution swapping each pair.
    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.n).collect();
        for &(i, j) in &self.pairs {
            images[i] = j;
            images[j] = i;
        }
        Permutation::from_images(images).expect("pairs are disjoint")
    }

    pub fn to_partition(&self) -> SetPartition {
        SetPartition::new(self.n, self.pairs.iter().map(|&(i, j)| vec![i, j]).collect())
            .expect("pairs cover every point")
    }

    /// Reads an involution without fixed points as a pairing.
    pub fn from_permutation(p: &Permutation) -> Option<Pairing> {
        let cycles = p.cycles();
        if cycles.iter().any(|c| c.len() != 2) {
            return None;
        }
        Some(Pairing {
            n: p.size(),
            pairs: cycles.iter().map(|c| (c[0], c[1])).collect(),
        })
    }
}

/// All (n-1)!! perfect matchings of n points.
pub fn enumerate_pairings(n: usize) -> Result<Vec<Pairing>> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    guard("pairing size", n, MAX_PAIRINGS)?;
    let mut out = Vec::new();
    for_each_pairing(n, |p| out.push(p));
    Ok(out)
}

/// Visits every perfect matching of n (even) points, without a size guard.
pub(crate) fn for_each_pairing(n: usize, mut f: impl FnMut(Pairing)) {
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, n: usize, f: &mut dyn FnMut(Pairing)) {
        if free.is_empty() {
            f(Pairing {
                n,
                pairs: acc.clone(),
            });
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            acc.push((first, partner));
            rec(free, acc, n, f);
            acc.pop();
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    let mut free: Vec<usize> = (0..n).collect();
    rec(&mut free, &mut Vec::new(), n, &mut f);
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Pairing {
    /// 1-based pair lists, e.g. `[[1,3],[2,4]]`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[usize; 2]> = self.pairs.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pairing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v: Vec<[usize; 2]> = Vec::deserialize(d)?;
        if v.iter().flatten().any(|&x| x == 0) {
            return Err(D::Error::custom("points are numbered from 1"));
        }
        let n = v.len() * 2;
        Pairing::new(n, v.into_iter().map(|[a, b]| (a - 1, b - 1)).collect())
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_factorial(n: usize) -> usize {
        (1..n).step_by(2).product::<usize>().max(1)
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_pairings(2).unwrap().len(), 1);
        assert_eq!(enumerate_pairings(4).unwrap().len(), 3);
        assert_eq!(enumerate_pairings(6).unwrap().len(), 15);
        for n in (2..=10).step_by(2) {
            let all = enumerate_pairings(n).unwrap();
            assert_eq!(all.len(), double_factorial(n));
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
        }
        assert_eq!(enumerate_pairings(3), Err(Error::OddSize(3)));
        assert!(enumerate_pairings(22).is_err());
    }

    #[test]
    fn permutation_round_trip() {
        for p in enumerate_pairings(6).unwrap() {
            let q = Pairing::from_permutation(&p.to_permutation()).unwrap();
            assert_eq!(p, q);
        }
        assert!(Pairing::from_permutation(&Permutation::identity(2)).is_none());
    }

    #[test]
    fn json_form() {
        let p = Pairing::new(4, vec![(2, 0), (1, 3)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1,3],[2,4]]");
        assert_eq!(serde_json::from_str::<Pairing>(&s).unwrap(), p);
    }
}
