use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{guard, Error, Result};

/// Largest n for which all of S_n may be scanned.
pub const MAX_SCAN: usize = 10;

/// A bijection of `{0, .., n-1}`.
///
/// Points are 0-based internally and 1-based in every textual form.
/// Composition is `compose(p, q)(x) = p(q(x))`: `q` acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {:?} are not a bijection",
                    images.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 0-based cycles; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || seen[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated or out of range 1..={n}",
                        x + 1
                    )));
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation with an explicit size, e.g. `"(1,3)(2)"` on 4 points.
    pub fn parse_with_size(s: &str, n: usize) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        Permutation::from_cycles(n, &cycles)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(p ∘ q)(x) = p(q(x))`.
    pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
        if p.size() != q.size() {
            return Err(Error::SizeMismatch {
                expected: p.size(),
                actual: q.size(),
            });
        }
        Ok(Permutation {
            images: q.images.iter().map(|&x| p.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Canonical cycles: each starts at its minimum, sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    /// Cycle lengths sorted decreasingly.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// All permutations of n points in lexicographic order of images.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        guard("permutation size", n, MAX_SCAN)?;
        let mut out = Vec::new();
        for_each_permutation(n, |p| out.push(p.clone()));
        Ok(out)
    }
}

/// Visits every permutation of n points in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        if !next_lexicographic(&mut p.images) {
            break;
        }
    }
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = |why: &str| Error::InvalidPermutation(format!("`{s}`: {why}"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() || rest == "()" {
        return Ok(cycles);
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok.parse().map_err(|_| bad("points must be positive integers"))?;
            if v == 0 {
                return Err(bad("points are numbered from 1"));
            }
            cycle.push(v - 1);
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Size is taken as the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let n = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Permutation::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() == 0 {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
