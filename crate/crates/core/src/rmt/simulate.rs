use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::oracle::{exact_gue_cumulant, exact_wishart_cumulant};
use super::sample::{inflate_complex, sample_rng, CMatrix, GaussianFamilySpec, GaussianSampler, WishartSampler, WishartSpec};
use super::stats::{estimate_cumulants, estimate_joint, Estimate};
use crate::algebra::{GramSpace, Matrix, MatrixAlgebra, Scalar, Vector};
use crate::error::{Error, Result};
use crate::fock::Poly;
use crate::theory::{gauss_cov, wishart_cov};

/// One matrix in a trace word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum Letter {
    /// `X_N(f_i)` of the Gaussian family.
    Field(usize),
    /// `P_N(d_i)` of the compound Wishart family.
    Wishart(usize),
    /// The deterministic `inflate(d_i, N)`.
    Constant(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Field(i) => write!(f, "X{}", i + 1),
            Letter::Wishart(i) => write!(f, "P{}", i + 1),
            Letter::Constant(i) => write!(f, "D{}", i + 1),
        }
    }
}

/// `Σ c · Tr(word)` over unnormalized traces; the empty word is `Tr I = N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStatistic {
    pub label: String,
    pub terms: Vec<(Complex64, Vec<Letter>)>,
}

impl TraceStatistic {
    pub fn word(letters: Vec<Letter>) -> Self {
        let names: Vec<String> = letters.iter().map(Letter::to_string).collect();
        TraceStatistic {
            label: format!("Tr[{}]", names.join(" ")),
            terms: vec![(Complex64::new(1.0, 0.0), letters)],
        }
    }

    /// `Tr p(letter)`.
    pub fn polynomial(p: &Poly, letter: Letter) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let (re, im) = c.to_f64();
                (Complex64::new(re, im), vec![letter; j])
            })
            .collect();
        TraceStatistic {
            label: format!("Tr[p({letter})]"),
            terms,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.terms.iter().flat_map(|(_, w)| w)
    }
}

/// The matrices available to trace words, all of size N: a Gaussian family,
/// a compound Wishart family and inflated constants. Sample `i` draws from
/// the stream `(seed, i)`: first the Gaussian family, then the Ginibre matrix.
#[derive(Clone, Debug)]
pub struct Ensemble {
    n: usize,
    seed: u64,
    gaussian: Option<(GaussianSampler, usize)>,
    wishart: Option<(WishartSampler, usize)>,
    constants: Vec<CMatrix>,
}

impl Ensemble {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix size N must be at least 1".into()));
        }
        Ok(Ensemble {
            n,
            seed,
            gaussian: None,
            wishart: None,
            constants: Vec::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn with_gaussian(mut self, space: &GramSpace, fs: &[Vector]) -> Result<Self> {
        let spec = GaussianFamilySpec {
            n: self.n,
            space: space.clone(),
            seed: self.seed,
        };
        self.gaussian = Some((GaussianSampler::new(&spec, fs)?, fs.len()));
        Ok(self)
    }

    pub fn with_wishart(mut self, alg: &MatrixAlgebra, ds: &[Matrix]) -> Result<Self> {
        let spec = WishartSpec {
            n: self.n,
            alg: *alg,
            ds: ds.to_vec(),
            seed: self.seed,
        };
        self.wishart = Some((WishartSampler::new(&spec)?, ds.len()));
        Ok(self)
    }

    pub fn with_constants(mut self, ds: &[Matrix]) -> Result<Self> {
        self.constants = ds.iter().map(|d| inflate_complex(d, self.n)).collect::<Result<_>>()?;
        Ok(self)
    }

    fn check(&self, stat: &TraceStatistic) -> Result<()> {
        for l in stat.letters() {
            let (i, have) = match *l {
                Letter::Field(i) => (i, self.gaussian.as_ref().map_or(0, |g| g.1)),
                Letter::Wishart(i) => (i, self.wishart.as_ref().map_or(0, |w| w.1)),
                Letter::Constant(i) => (i, self.constants.len()),
            };
            if i >= have {
                return Err(Error::Invalid(format!("{}: letter {l} is not in the ensemble", stat.label)));
            }
        }
        Ok(())
    }

    /// Values of `stats` on sample `index`.
    pub fn sample_values(&self, index: u64, stats: &[TraceStatistic]) -> Vec<Complex64> {
        let mut rng = sample_rng(self.seed, index);
        let fields = self.gaussian.as_ref().map(|g| g.0.sample_with(&mut rng)).unwrap_or_default();
        let wisharts = self.wishart.as_ref().map(|w| w.0.sample_with(&mut rng)).unwrap_or_default();
        let mats = Mats {
            fields: &fields,
            wisharts: &wisharts,
            constants: &self.constants,
        };
        let mut cache = HashMap::new();
        stats
            .iter()
            .map(|s| {
                s.terms
                    .iter()
                    .map(|(c, w)| c * trace_word(w, self.n, &mats, &mut cache))
                    .sum()
            })
            .collect()
    }

    /// Draws `samples` independent samples in parallel; the result does not
    /// depend on the thread count.
    pub fn simulate(&self, stats: &[TraceStatistic], samples: usize) -> Result<SampleBatch> {
        for s in stats {
            self.check(s)?;
        }
        let rows: Vec<Vec<Complex64>> = (0..samples as u64)
            .into_par_iter()
            .map(|i| self.sample_values(i, stats))
            .collect();
        let values = (0..stats.len()).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Ok(SampleBatch {
            n: self.n,
            seed: self.seed,
            samples,
            labels: stats.iter().map(|s| s.label.clone()).collect(),
            values,
        })
    }
}

struct Mats<'a> {
    fields: &'a [CMatrix],
    wisharts: &'a [CMatrix],
    constants: &'a [CMatrix],
}

impl Mats<'_> {
    fn get(&self, l: Letter) -> &CMatrix {
        match l {
            Letter::Field(i) => &self.fields[i],
            Letter::Wishart(i) => &self.wisharts[i],
            Letter::Constant(i) => &self.constants[i],
        }
    }
}

/// Product of a word of length ≥ 2, memoized by word.
fn product(word: &[Letter], mats: &Mats<'_>, cache: &mut HashMap<Vec<Letter>, CMatrix>) -> CMatrix {
    if word.len() == 1 {
        return mats.get(word[0]).clone();
    }
    if let Some(p) = cache.get(word) {
        return p.clone();
    }
    let head = product(&word[..word.len() - 1], mats, cache);
    let p = head * mats.get(word[word.len() - 1]);
    cache.insert(word.to_vec(), p.clone());
    p
}

fn trace_word(word: &[Letter], n: usize, mats: &Mats<'_>, cache: &mut HashMap<Vec<Letter>, CMatrix>) -> Complex64 {
    match word.len() {
        0 => Complex64::new(n as f64, 0.0),
        1 => mats.get(word[0]).trace(),
        len => {
            let head = product(&word[..len - 1], mats, cache);
            let last = mats.get(word[len - 1]);
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    acc += head[(i, j)] * last[(j, i)];
                }
            }
            acc
        }
    }
}

/// Per-sample values of trace statistics, one column per statistic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleBatch {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub labels: Vec<String>,
    pub values: Vec<Vec<Complex64>>,
}

impl SampleBatch {
    pub fn column(&self, i: usize) -> &[Complex64] {
        &self.values[i]
    }

    /// `k₁, .., k₄` of statistic `i`, as far as the sample count allows.
    pub fn cumulants(&self, i: usize) -> Result<Vec<Estimate>> {
        estimate_cumulants(self.column(i))
    }

    /// Joint cumulant of up to three statistics.
    pub fn joint(&self, idx: &[usize]) -> Result<Estimate> {
        let cols: Vec<&[Complex64]> = idx.iter().map(|&i| self.column(i)).collect();
        estimate_joint(&cols)
    }
}

/// Which matrix family the words of a study are written in.
#[derive(Clone, Debug)]
pub enum Family {
    Gaussian { space: GramSpace, alphabet: Vec<Vector> },
    Wishart { alg: MatrixAlgebra, alphabet: Vec<Matrix> },
}

/// Trace words over an alphabet, plus pairs of words whose covariance is
/// tracked.
#[derive(Clone, Debug)]
pub struct StudyRequest {
    pub family: Family,
    pub names: Vec<String>,
    pub words: Vec<Vec<usize>>,
    pub pairs: Vec<(usize, usize)>,
}

/// One row of a convergence table; complex estimates are reported by their
/// real part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub statistic: String,
    pub k1: Option<f64>,
    pub k1_se: Option<f64>,
    pub k2: Option<f64>,
    pub k2_se: Option<f64>,
    pub k3: Option<f64>,
    pub k3_se: Option<f64>,
    pub oracle_k2: Option<f64>,
    pub theory_limit: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Invalid(format!("csv: {e}")))?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let rows = csv::Reader::from_reader(input)
            .deserialize()
            .collect::<std::result::Result<Vec<ConvergenceRow>, _>>()
            .map_err(|e| Error::Parse(format!("convergence table: {e}")))?;
        Ok(ConvergenceTable { rows })
    }
}

impl StudyRequest {
    fn letters(&self, word: &[usize]) -> Vec<Letter> {
        word.iter()
            .map(|&i| match self.family {
                Family::Gaussian { .. } => Letter::Field(i),
                Family::Wishart { .. } => Letter::Wishart(i),
            })
            .collect()
    }

    fn label(&self, word: &[usize]) -> String {
        let names: Vec<&str> = word.iter().map(|&i| self.names[i].as_str()).collect();
        format!("Tr[{}]", names.join(" "))
    }

    fn validate(&self) -> Result<()> {
        let k = match &self.family {
            Family::Gaussian { alphabet, .. } => alphabet.len(),
            Family::Wishart { alphabet, .. } => alphabet.len(),
        };
        if self.names.len() != k {
            return Err(Error::SizeMismatch {
                expected: k,
                actual: self.names.len(),
            });
        }
        if self.words.is_empty() {
            return Err(Error::Invalid("at least one word is required".into()));
        }
        for w in &self.words {
            if w.is_empty() {
                return Err(Error::Invalid("words must be nonempty".into()));
            }
            if let Some(i) = w.iter().find(|&&i| i >= k) {
                return Err(Error::Invalid(format!("letter index {i} outside the alphabet of size {k}")));
            }
        }
        if let Some(p) = self.pairs.iter().find(|p| p.0 >= self.words.len() || p.1 >= self.words.len()) {
            return Err(Error::Invalid(format!("pair {p:?} refers to a missing word")));
        }
        Ok(())
    }

    fn ensemble(&self, n: usize, seed: u64) -> Result<Ensemble> {
        let e = Ensemble::new(n, seed)?;
        match &self.family {
            Family::Gaussian { space, alphabet } => e.with_gaussian(space, alphabet),
            Family::Wishart { alg, alphabet } => e.with_wishart(alg, alphabet),
        }
    }

    /// Exact finite-N `k₂` of two words; `None` past the oracle guards.
    pub fn oracle_k2(&self, i: usize, j: usize, n: usize) -> Result<Option<Scalar>> {
        let r = match &self.family {
            Family::Gaussian { space, alphabet } => {
                let w = |k: usize| self.words[k].iter().map(|&a| alphabet[a].clone()).collect();
                exact_gue_cumulant(space, &[w(i), w(j)], n)
            }
            Family::Wishart { alg, alphabet } => {
                let w = |k: usize| self.words[k].iter().map(|&a| alphabet[a].clone()).collect();
                exact_wishart_cumulant(alg, &[w(i), w(j)], n)
            }
        };
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Guard { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Large-N covariance of two words.
    pub fn theory_k2(&self, i: usize, j: usize) -> Result<Scalar> {
        match &self.family {
            Family::Gaussian { space, alphabet } => {
                let w = |k: usize| -> Vec<Vector> { self.words[k].iter().map(|&a| alphabet[a].clone()).collect() };
                gauss_cov(space, &w(i), &w(j))
            }
            Family::Wishart { alg, alphabet } => {
                let w = |k: usize| -> Vec<Matrix> { self.words[k].iter().map(|&a| alphabet[a].clone()).collect() };
                wishart_cov(alg, &w(i), &w(j))
            }
        }
    }
}

/// For each N: Monte Carlo `k₁, k₂, k₃` of each word, joint `k₂` of each
/// pair, the exact `k₂` at that N where the oracle guards allow, and the
/// large-N limit.
pub fn convergence_study(req: &StudyRequest, ns: &[usize], samples: usize, seed: u64) -> Result<ConvergenceTable> {
    req.validate()?;
    if ns.is_empty() {
        return Err(Error::Invalid("the list of matrix sizes is empty".into()));
    }
    let stats: Vec<TraceStatistic> = req
        .words
        .iter()
        .map(|w| TraceStatistic::word(req.letters(w)).with_label(req.label(w)))
        .collect();
    let mut rows = Vec::new();
    for &n in ns {
        let batch = req.ensemble(n, seed)?.simulate(&stats, samples)?;
        let re = |e: Option<&Estimate>| (e.map(|e| e.value.re), e.map(|e| e.se));
        for (i, stat) in stats.iter().enumerate() {
            let k = batch.cumulants(i)?;
            let ((k1, k1_se), (k2, k2_se), (k3, k3_se)) = (re(k.first()), re(k.get(1)), re(k.get(2)));
            rows.push(ConvergenceRow {
                n,
                statistic: stat.label.clone(),
                k1,
                k1_se,
                k2,
                k2_se,
                k3,
                k3_se,
                oracle_k2: req.oracle_k2(i, i, n)?.map(|v| v.re_f64()),
                theory_limit: Some(req.theory_k2(i, i)?.re_f64()),
            });
        }
        for &(i, j) in &req.pairs {
            let e = batch.joint(&[i, j])?;
            rows.push(ConvergenceRow {
                n,
                statistic: format!("{} x {}", stats[i].label, stats[j].label),
                k1: None,
                k1_se: None,
                k2: Some(e.value.re),
                k2_se: Some(e.se),
                k3: None,
                k3_se: None,
                oracle_k2: req.oracle_k2(i, j, n)?.map(|v| v.re_f64()),
                theory_limit: Some(req.theory_k2(i, j)?.re_f64()),
            });
        }
    }
    Ok(ConvergenceTable { rows })
}
