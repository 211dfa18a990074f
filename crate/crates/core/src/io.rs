//! JSON request files shared by the command-line subcommands.
//!
//! ```json
//! {
//!   "flavor": "gaussian",
//!   "gram": [["1", "0"], ["0", "1"]],
//!   "vectors": { "f": ["1", "0"], "g": ["1/2", "1"] },
//!   "left": ["f", "f"],
//!   "right": ["g", "f"]
//! }
//! ```
//!
//! Wishart requests give `"matrices": { "d": [["1", "0"], ["0", "0"]] }`
//! instead of `gram`/`vectors`. Scalars are strings `"a/b"`, integers, or
//! `{"re": "a/b", "im": "c/d"}`. `words` (a list of letter lists) and `pairs`
//! (index pairs into `words`) select statistics for simulation; they default
//! to `[left, right]` and `[[0, 1]]` (`[left]` and `[[0, 0]]` when the two coincide).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{GramSpace, Matrix, MatrixAlgebra, Scalar, Vector};
use crate::error::{Error, Result};
use crate::rmt::{Family, StudyRequest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Gaussian,
    Wishart,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceRequest {
    pub flavor: Option<Flavor>,
    /// Gram matrix of the Gaussian model; the identity when omitted.
    pub gram: Option<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub vectors: BTreeMap<String, Vec<Scalar>>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Matrix>,
    #[serde(default)]
    pub left: Vec<String>,
    #[serde(default)]
    pub right: Vec<String>,
    #[serde(default)]
    pub words: Vec<Vec<String>>,
    #[serde(default)]
    pub pairs: Vec<(usize, usize)>,
}

/// A request with names resolved against the alphabet.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub family: Family,
    pub names: Vec<String>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    pub pairs: Vec<(usize, usize)>,
}

impl CovarianceRequest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("request: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        CovarianceRequest::from_json(&text)
    }

    /// Builds the model. A `flavor` given here overrides the file's.
    pub fn resolve(&self, flavor: Option<Flavor>) -> Result<Resolved> {
        let flavor = flavor
            .or(self.flavor)
            .ok_or_else(|| Error::Parse("request: missing field `flavor`".into()))?;
        let (family, names) = match flavor {
            Flavor::Gaussian => {
                if !self.matrices.is_empty() {
                    return Err(Error::Parse("request: field `matrices` is for the wishart flavor".into()));
                }
                let names: Vec<String> = self.vectors.keys().cloned().collect();
                let dim = self.vectors.values().next().map(Vec::len);
                let space = match (&self.gram, dim) {
                    (Some(g), _) => GramSpace::new(g.clone()),
                    (None, Some(k)) => GramSpace::orthonormal(k),
                    (None, None) => Err(Error::Parse("request: missing field `vectors`".into())),
                }
                .map_err(|e| field_error("gram", e))?;
                let alphabet = self
                    .vectors
                    .iter()
                    .map(|(name, c)| space.vector(c.clone()).map_err(|e| field_error(&format!("vectors.{name}"), e)))
                    .collect::<Result<Vec<Vector>>>()?;
                (Family::Gaussian { space, alphabet }, names)
            }
            Flavor::Wishart => {
                if self.gram.is_some() || !self.vectors.is_empty() {
                    return Err(Error::Parse(
                        "request: fields `gram` and `vectors` are for the gaussian flavor".into(),
                    ));
                }
                let names: Vec<String> = self.matrices.keys().cloned().collect();
                let alphabet: Vec<Matrix> = self.matrices.values().cloned().collect();
                let k = alphabet
                    .first()
                    .map(Matrix::size)
                    .ok_or_else(|| Error::Parse("request: missing field `matrices`".into()))?;
                if let Some((name, d)) = self.matrices.iter().find(|(_, d)| d.size() != k) {
                    return Err(field_error(
                        &format!("matrices.{name}"),
                        Error::SizeMismatch {
                            expected: k,
                            actual: d.size(),
                        },
                    ));
                }
                (Family::Wishart { alg: MatrixAlgebra::new(k)?, alphabet }, names)
            }
        };
        let lookup = |field: &str, word: &[String]| -> Result<Vec<usize>> {
            word.iter()
                .map(|s| {
                    names
                        .iter()
                        .position(|n| n == s)
                        .ok_or_else(|| field_error(field, Error::UnknownSymbol(s.clone())))
                })
                .collect()
        };
        let left = lookup("left", &self.left)?;
        let right = lookup("right", &self.right)?;
        let (words, pairs) = if self.words.is_empty() {
            if left.is_empty() || right.is_empty() {
                (vec![left.clone(), right.clone()].into_iter().filter(|w| !w.is_empty()).collect(), vec![])
            } else if left == right {
                (vec![left.clone()], vec![(0, 0)])
            } else {
                (vec![left.clone(), right.clone()], vec![(0, 1)])
            }
        } else {
            let words = self
                .words
                .iter()
                .enumerate()
                .map(|(i, w)| lookup(&format!("words[{i}]"), w))
                .collect::<Result<_>>()?;
            (words, self.pairs.clone())
        };
        Ok(Resolved {
            family,
            names,
            left,
            right,
            words,
            pairs,
        })
    }
}

fn field_error(field: &str, e: Error) -> Error {
    Error::Parse(format!("request field `{field}`: {e}"))
}

impl Resolved {
    pub fn flavor(&self) -> Flavor {
        match self.family {
            Family::Gaussian { .. } => Flavor::Gaussian,
            Family::Wishart { .. } => Flavor::Wishart,
        }
    }

    /// Both `left` and `right` must be nonempty.
    pub fn require_pair(&self) -> Result<()> {
        for (field, w) in [("left", &self.left), ("right", &self.right)] {
            if w.is_empty() {
                return Err(Error::Parse(format!("request: field `{field}` is missing or empty")));
            }
        }
        Ok(())
    }

    pub fn vectors(&self, word: &[usize]) -> Vec<Vector> {
        match &self.family {
            Family::Gaussian { alphabet, .. } => word.iter().map(|&i| alphabet[i].clone()).collect(),
            Family::Wishart { .. } => Vec::new(),
        }
    }

    pub fn matrices(&self, word: &[usize]) -> Vec<Matrix> {
        match &self.family {
            Family::Wishart { alphabet, .. } => word.iter().map(|&i| alphabet[i].clone()).collect(),
            Family::Gaussian { .. } => Vec::new(),
        }
    }

    pub fn label(&self, word: &[usize]) -> String {
        let names: Vec<&str> = word.iter().map(|&i| self.names[i].as_str()).collect();
        format!("Tr[{}]", names.join(" "))
    }

    pub fn study(&self) -> StudyRequest {
        StudyRequest {
            family: self.family.clone(),
            names: self.names.clone(),
            words: self.words.clone(),
            pairs: self.pairs.clone(),
        }
    }
}
