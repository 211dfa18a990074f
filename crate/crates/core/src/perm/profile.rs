use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// Sizes `(n(1), .., n(r))` of the circles of a multi-annulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AnnulusProfile {
    sizes: Vec<usize>,
}

impl AnnulusProfile {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidProfile("at least one circle is required".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidProfile(format!(
                "{sizes:?}: every circle needs at least one point"
            )));
        }
        Ok(AnnulusProfile { sizes })
    }

    pub fn disc(n: usize) -> Result<Self> {
        AnnulusProfile::new(vec![n])
    }

    pub fn annulus(n: usize, m: usize) -> Result<Self> {
        AnnulusProfile::new(vec![n, m])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of circles r.
    pub fn circles(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// First point of each circle.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    /// Circle index of every point.
    pub fn circle_of(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }

    /// γ: one increasing cycle per circle, `(1,..,n(1))(n(1)+1,..)..`.
    pub fn gamma(&self) -> Permutation {
        let cycles: Vec<Vec<usize>> = self
            .offsets()
            .iter()
            .zip(&self.sizes)
            .map(|(&o, &s)| (o..o + s).collect())
            .collect();
        Permutation::from_cycles(self.total(), &cycles).expect("circles are disjoint")
    }
}

/// γ for a profile.
pub fn gamma_of(profile: &AnnulusProfile) -> Permutation {
    profile.gamma()
}

impl TryFrom<Vec<usize>> for AnnulusProfile {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        AnnulusProfile::new(v)
    }
}

impl From<AnnulusProfile> for Vec<usize> {
    fn from(p: AnnulusProfile) -> Self {
        p.sizes
    }
}

impl FromStr for AnnulusProfile {
    type Err = Error;

    /// Comma-separated sizes, e.g. `2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidProfile(format!("`{s}` is not a list of sizes")))
            })
            .collect::<Result<Vec<_>>>()?;
        AnnulusProfile::new(sizes)
    }
}

impl fmt::Display for AnnulusProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let g = |s: &str| s.parse::<AnnulusProfile>().unwrap().gamma().to_string();
        assert_eq!(g("2,1"), "(1,2)(3)");
        assert_eq!(g("3"), "(1,2,3)");
        assert_eq!(g("2,2"), "(1,2)(3,4)");
    }

    #[test]
    fn validation() {
        assert!(AnnulusProfile::new(vec![]).is_err());
        assert!(AnnulusProfile::new(vec![2, 0]).is_err());
        assert!("2,x".parse::<AnnulusProfile>().is_err());
        let p = AnnulusProfile::new(vec![2, 3, 1]).unwrap();
        assert_eq!(p.total(), 6);
        assert_eq!(p.offsets(), vec![0, 2, 5]);
        assert_eq!(p.circle_of(), vec![0, 0, 1, 1, 1, 2]);
        assert!(serde_json::from_str::<AnnulusProfile>("[1,0]").is_err());
    }
}
