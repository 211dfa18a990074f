use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Permutation;
use crate::error::{guard, Error, Result};

/// Largest n for which all set partitions may be listed.
pub const MAX_PARTITIONS: usize = 12;

/// A set partition of `{0, .., n-1}` in canonical form: blocks sorted
/// internally and ordered by their minima.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes 0-based blocks.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= n || seen[x] {
                    return Err(Error::InvalidPartition(format!(
                        "point {} repeated or out of range 1..={n}",
                        x + 1
                    )));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("point {} is not covered", x + 1)));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Builds from a labelling: points with equal labels share a block.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<&T> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match reps.iter().position(|r| *r == l) {
                Some(b) => blocks[b].push(i),
                None => {
                    reps.push(l);
                    blocks.push(vec![i]);
                }
            }
        }
        SetPartition {
            n: labels.len(),
            blocks,
        }
    }

    pub fn one_block(n: usize) -> Self {
        SetPartition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    pub fn singletons(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Blocks are the orbits of `p`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let mut blocks = p.cycles();
        for b in &mut blocks {
            b.sort_unstable();
        }
        SetPartition {
            n: p.size(),
            blocks,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of each point.
    pub fn labels(&self) -> Vec<usize> {
        let mut l = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                l[x] = b;
            }
        }
        l
    }

    pub fn is_one(&self) -> bool {
        self.blocks.len() == 1
    }

    /// True if every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        let lo = other.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| lo[x] == lo[b[0]]))
    }

    /// Each block read increasingly as one cycle.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.blocks).expect("blocks are disjoint")
    }

    /// Disc non-crossing: no a<b<c<d with a,c in one block and b,d in another.
    pub fn is_noncrossing(&self) -> bool {
        let l = self.labels();
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..n {
                    if l[c] != l[a] {
                        continue;
                    }
                    if (c + 1..n).any(|d| l[d] == l[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Möbius function μ(A, 1) of the partition lattice.
    pub fn mobius_to_top(&self) -> i64 {
        let k = self.block_count() as i64;
        let fact: i64 = (1..k).product();
        if (k - 1) % 2 == 0 {
            fact
        } else {
            -fact
        }
    }

    /// Smallest partition above both.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Ok(uf.partition())
    }
}

/// Kernel of an index map: k and l share a block iff `index_map[k] == index_map[l]`.
pub fn kernel<T: PartialEq>(index_map: &[T]) -> SetPartition {
    SetPartition::from_labels(index_map)
}

/// The join σ ∨ γ, i.e. the orbits of the group generated by both.
pub fn join_with(sigma: &Permutation, gamma: &Permutation) -> Result<SetPartition> {
    if sigma.size() != gamma.size() {
        return Err(Error::SizeMismatch {
            expected: gamma.size(),
            actual: sigma.size(),
        });
    }
    let mut uf = UnionFind::new(sigma.size());
    for x in 0..sigma.size() {
        uf.union(x, sigma.apply(x));
        uf.union(x, gamma.apply(x));
    }
    Ok(uf.partition())
}

/// The partition of γ's cycles induced by σ ∨ γ: cycles i and j share a
/// block iff some orbit of ⟨σ, γ⟩ meets both.
pub fn induced_cycle_partition(sigma: &Permutation, gamma: &Permutation) -> Result<SetPartition> {
    let joined = join_with(sigma, gamma)?.labels();
    let cycles = gamma.cycles();
    let labels: Vec<usize> = cycles.iter().map(|c| joined[c[0]]).collect();
    Ok(SetPartition::from_labels(&labels))
}

/// All set partitions of `{0, .., n-1}` in restricted-growth order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::Invalid("partitions need n >= 1".into()));
    }
    guard("partition size", n, MAX_PARTITIONS)?;
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(p));
    Ok(out)
}

/// Visits every set partition of n points, without a size guard.
pub(crate) fn for_each_partition(n: usize, mut f: impl FnMut(SetPartition)) {
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut [usize], f: &mut dyn FnMut(SetPartition)) {
        if i == rgs.len() {
            f(SetPartition::from_labels(rgs));
            return;
        }
        for v in 0..=max + 1 {
            rgs[i] = v;
            rec(i + 1, max.max(v), rgs, f);
        }
    }
    if n == 0 {
        return;
    }
    rec(1, 0, &mut rgs, &mut f);
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn partition(&mut self) -> SetPartition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        SetPartition::from_labels(&labels)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SetPartition {
    /// 1-based block lists, e.g. `[[1,3],[2]]`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x + 1).collect())
            .collect();
        one_based.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let blocks: Vec<Vec<usize>> = Vec::deserialize(d)?;
        if blocks.iter().flatten().any(|&x| x == 0) {
            return Err(D::Error::custom("points are numbered from 1"));
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        let zero_based = blocks
            .into_iter()
            .map(|b| b.into_iter().map(|x| x - 1).collect())
            .collect();
        SetPartition::new(n, zero_based).map_err(D::Error::custom)
    }
}
