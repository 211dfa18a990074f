use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::model::SecondOrderModel;
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::fock::canonical_rotation;

/// One factor of a balanced expression, over slot indices: `φ(s₁⋯s_t)` or
/// `ρ(s₁⋯s_p, t₁⋯t_q)`. Slot words are stored as their minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Phi(Vec<usize>),
    Rho(Vec<usize>, Vec<usize>),
}

impl Atom {
    fn phi(w: &[usize]) -> Atom {
        Atom::Phi(canonical_rotation(w))
    }

    fn rho(a: &[usize], b: &[usize]) -> Atom {
        Atom::Rho(canonical_rotation(a), canonical_rotation(b))
    }

    pub fn slots(&self) -> Vec<usize> {
        match self {
            Atom::Phi(w) => w.clone(),
            Atom::Rho(a, b) => a.iter().chain(b).copied().collect(),
        }
    }
}

/// A linear combination of products of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    terms: BTreeMap<Vec<Atom>, Scalar>,
}

impl Expansion {
    pub fn zero() -> Self {
        Expansion::default()
    }

    fn unit() -> Self {
        let mut e = Expansion::zero();
        e.add_term(Vec::new(), Scalar::one());
        e
    }

    fn atom(a: Atom) -> Self {
        let mut e = Expansion::zero();
        e.add_term(vec![a], Scalar::one());
        e
    }

    fn add_term(&mut self, mut atoms: Vec<Atom>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        atoms.sort();
        let entry = self.terms.entry(atoms).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn add_scaled(&mut self, other: &Expansion, c: &Scalar) {
        for (atoms, x) in &other.terms {
            self.add_term(atoms.clone(), x * c);
        }
    }

    fn mul(&self, other: &Expansion) -> Expansion {
        let mut out = Expansion::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut atoms = a.clone();
                atoms.extend(b.iter().cloned());
                out.add_term(atoms, x * y);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Atom>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Fewest factors in any monomial; `None` for the zero expansion.
    pub fn min_factors(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    /// Evaluates the expansion given φ on slot words and ρ on pairs of slot
    /// words.
    pub fn evaluate(
        &self,
        mut phi: impl FnMut(&[usize]) -> Result<Scalar>,
        mut rho: impl FnMut(&[usize], &[usize]) -> Result<Scalar>,
    ) -> Result<Scalar> {
        let mut cache: HashMap<Atom, Scalar> = HashMap::new();
        let mut acc = Scalar::zero();
        for (atoms, c) in &self.terms {
            let mut t = c.clone();
            for a in atoms {
                let v = match cache.get(a) {
                    Some(v) => v.clone(),
                    None => {
                        let v = match a {
                            Atom::Phi(w) => phi(w)?,
                            Atom::Rho(x, y) => rho(x, y)?,
                        };
                        cache.insert(a.clone(), v.clone());
                        v
                    }
                };
                t = t * v;
                if t.is_zero() {
                    break;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Checks that every monomial is balanced: each slot occurs exactly once,
    /// each atom draws from one subalgebra, and there is at most one ρ-factor.
    pub fn check_balanced(&self, tags: &[usize]) -> Result<()> {
        for atoms in self.terms.keys() {
            let mut seen = vec![0usize; tags.len()];
            let mut rhos = 0;
            for a in atoms {
                if matches!(a, Atom::Rho(..)) {
                    rhos += 1;
                }
                let slots = a.slots();
                let t: BTreeSet<usize> = slots.iter().map(|&s| tags[s]).collect();
                if t.len() != 1 {
                    return Err(Error::Invalid(format!("atom {a:?} mixes subalgebras")));
                }
                for s in slots {
                    seen[s] += 1;
                }
            }
            if rhos > 1 {
                return Err(Error::Invalid(format!("monomial {atoms:?} has {rhos} ρ-factors")));
            }
            if seen.iter().any(|&k| k != 1) {
                return Err(Error::Invalid(format!("monomial {atoms:?} does not use every slot once")));
            }
        }
        Ok(())
    }

    /// Renders with the given slot names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayExpansion { e: self, names }
    }
}

struct DisplayExpansion<'a> {
    e: &'a Expansion,
    names: &'a [String],
}

impl fmt::Display for DisplayExpansion<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        let word = |w: &[usize]| w.iter().map(|&s| self.names[s].as_str()).collect::<Vec<_>>().join("");
        for (i, (atoms, c)) in self.e.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            for a in atoms {
                match a {
                    Atom::Phi(w) => write!(f, "φ({})", word(w))?,
                    Atom::Rho(x, y) => write!(f, "ρ({},{})", word(x), word(y))?,
                }
            }
        }
        Ok(())
    }
}

/// A maximal run of cyclically adjacent slots from one subalgebra.
type Group = (usize, Vec<usize>);

fn merge(mut groups: Vec<Group>) -> Vec<Group> {
    loop {
        let n = groups.len();
        if n < 2 {
            return groups;
        }
        if let Some(i) = (0..n - 1).find(|&i| groups[i].0 == groups[i + 1].0) {
            let next = groups.remove(i + 1);
            groups[i].1.extend(next.1);
            continue;
        }
        if groups[0].0 == groups[n - 1].0 {
            // ρ is tracial, so the last group may move to the front.
            let last = groups.pop().expect("nonempty");
            let mut w = last.1;
            w.extend(&groups[0].1);
            groups[0].1 = w;
            continue;
        }
        return groups;
    }
}

#[derive(Default)]
struct Expander {
    memo: HashMap<(Vec<Group>, Vec<Group>), Expansion>,
}

impl Expander {
    fn expand(&mut self, a: Vec<Group>, b: Vec<Group>) -> Expansion {
        let (a, b) = (merge(a), merge(b));
        if a.is_empty() || b.is_empty() {
            return Expansion::zero();
        }
        let key = (a, b);
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        let out = self.compute(&key.0, &key.1);
        self.memo.insert(key, out.clone());
        out
    }

    fn compute(&mut self, a: &[Group], b: &[Group]) -> Expansion {
        if a.len() == 1 && b.len() == 1 {
            return if a[0].0 == b[0].0 {
                Expansion::atom(Atom::rho(&a[0].1, &b[0].1))
            } else {
                Expansion::zero()
            };
        }
        // A subalgebra occurring once factors out through φ.
        let mut count: HashMap<usize, usize> = HashMap::new();
        for g in a.iter().chain(b) {
            *count.entry(g.0).or_default() += 1;
        }
        if let Some(i) = a.iter().position(|g| count[&g.0] == 1) {
            let mut rest = a.to_vec();
            let g = rest.remove(i);
            return Expansion::atom(Atom::phi(&g.1)).mul(&self.expand(rest, b.to_vec()));
        }
        if let Some(j) = b.iter().position(|g| count[&g.0] == 1) {
            let mut rest = b.to_vec();
            let g = rest.remove(j);
            return Expansion::atom(Atom::phi(&g.1)).mul(&self.expand(a.to_vec(), rest));
        }

        // Center every group: ρ(Πg, Πh) = ρ(Πg°, Πh°) minus the terms of the
        // expansion of the centered product that keep fewer groups.
        let (n, m) = (a.len(), b.len());
        let mut out = centered(a, b);
        for smask in 1u32..(1 << n) {
            for tmask in 1u32..(1 << m) {
                if smask == (1 << n) - 1 && tmask == (1 << m) - 1 {
                    continue;
                }
                let mut coeff = Expansion::unit();
                let mut sign = 1i64;
                let mut keep_a = Vec::new();
                let mut keep_b = Vec::new();
                for (i, g) in a.iter().enumerate() {
                    if smask & (1 << i) != 0 {
                        keep_a.push(g.clone());
                    } else {
                        sign = -sign;
                        coeff = coeff.mul(&Expansion::atom(Atom::phi(&g.1)));
                    }
                }
                for (j, g) in b.iter().enumerate() {
                    if tmask & (1 << j) != 0 {
                        keep_b.push(g.clone());
                    } else {
                        sign = -sign;
                        coeff = coeff.mul(&Expansion::atom(Atom::phi(&g.1)));
                    }
                }
                let sub = self.expand(keep_a, keep_b);
                if sub.is_zero() {
                    continue;
                }
                out.add_scaled(&coeff.mul(&sub), &Scalar::from_int(-sign));
            }
        }
        out
    }
}

/// `ρ(g₁°⋯g_n°, h₁°⋯h_m°)` for cyclically alternating groups with
/// `(n, m) ≠ (1, 1)`: zero unless `n = m`, then the spoke sum with
/// `φ(g°h°) = φ(gh) − φ(g)φ(h)` within one subalgebra and 0 across.
fn centered(a: &[Group], b: &[Group]) -> Expansion {
    let n = a.len();
    if n != b.len() {
        return Expansion::zero();
    }
    let mut out = Expansion::zero();
    for k in 0..n {
        let mut t = Expansion::unit();
        for (i, g) in a.iter().enumerate() {
            let h = &b[(n - 1 - i + k) % n];
            if g.0 != h.0 {
                t = Expansion::zero();
                break;
            }
            let mut gh = g.1.clone();
            gh.extend(&h.1);
            let mut pair = Expansion::atom(Atom::phi(&gh));
            let split = Expansion::atom(Atom::phi(&g.1)).mul(&Expansion::atom(Atom::phi(&h.1)));
            pair.add_scaled(&split, &Scalar::from_int(-1));
            t = t.mul(&pair);
        }
        out.add_scaled(&t, &Scalar::one());
    }
    out
}

/// Symbolic expansion of `ρ(a₁⋯a_n, b₁⋯b_m)` into balanced expressions for
/// free subalgebras, where slot `i` has subalgebra `a_tags[i]` for `i < n`
/// and `b_tags[i − n]` otherwise.
pub fn expand_rho(a_tags: &[usize], b_tags: &[usize]) -> Expansion {
    let n = a_tags.len();
    let a: Vec<Group> = a_tags.iter().enumerate().map(|(i, &t)| (t, vec![i])).collect();
    let b: Vec<Group> = b_tags.iter().enumerate().map(|(j, &t)| (t, vec![n + j])).collect();
    Expander::default().expand(a, b)
}

/// Whether a tag sequence is cyclically alternating.
pub fn is_cyclically_alternating(tags: &[usize]) -> bool {
    let n = tags.len();
    (1..n).all(|i| tags[i] != tags[i - 1]) && (n < 2 || tags[0] != tags[n - 1])
}

/// `ρ(a₁⋯a_n, b₁⋯b_m)` for cyclically alternating words of tagged elements
/// of free subalgebras, computed from φ and ρ on single subalgebras only.
pub fn rho_expand<S: SecondOrderModel>(
    model: &S,
    a: &[(S::Elem, usize)],
    b: &[(S::Elem, usize)],
) -> Result<Scalar> {
    let a_tags: Vec<usize> = a.iter().map(|x| x.1).collect();
    let b_tags: Vec<usize> = b.iter().map(|x| x.1).collect();
    if a.is_empty() || b.is_empty() {
        return Err(Error::Invalid("both words must be nonempty".into()));
    }
    for (side, tags) in [("left", &a_tags), ("right", &b_tags)] {
        if !is_cyclically_alternating(tags) {
            return Err(Error::NotAlternating(format!("{side} word has subalgebras {tags:?}")));
        }
    }
    let slots: Vec<&S::Elem> = a.iter().chain(b).map(|x| &x.0).collect();
    let product = |w: &[usize]| model.product(&w.iter().map(|&s| slots[s]).collect::<Vec<_>>());
    expand_rho(&a_tags, &b_tags).evaluate(
        |w| Ok(model.phi(&product(w))),
        |x, y| Ok(model.rho(&product(x), &product(y))),
    )
}

/// Condition (*) for cyclically alternating tag words in which every tag
/// occurs at least twice: `n = m = s`, each `a_k` shares its subalgebra with
/// `b_{k′}`, and `k′ = q − k (mod n)` for a fixed `q`. Returns the matching
/// `k ↦ k′` (0-based) when it holds.
pub fn condition_star(a_tags: &[usize], b_tags: &[usize]) -> Option<Vec<usize>> {
    let n = a_tags.len();
    let s: BTreeSet<usize> = a_tags.iter().chain(b_tags).copied().collect();
    if n != b_tags.len() || n != s.len() {
        return None;
    }
    (0..n)
        .map(|q| (0..n).map(|k| (q + n - k % n) % n).collect::<Vec<usize>>())
        .find(|perm| (0..n).all(|k| a_tags[k] == b_tags[perm[k]]))
}
