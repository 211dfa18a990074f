use serde::Serialize;

use super::model::SecondOrderModel;
use crate::algebra::Scalar;

/// Which requirement a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `φ(1) = 1`, traciality, or `ρ(a, 1) = 0 = ρ(1, b)`.
    Model,
    /// `φ(a₁°⋯a_n°) = 0` for alternating centered tuples.
    FirstOrder,
    /// `ρ(a₁°⋯a_n°, b₁°⋯b_m°) = 0` for `n ≠ m`.
    UnequalLengths,
    /// `ρ(a°, b°) = 0` across different subalgebras.
    CrossPair,
    /// The spoke formula for `n = m ≥ 2`.
    Spoke,
}

/// Generator `index` of subalgebra `tag`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub tag: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: Condition,
    pub left: Vec<Slot>,
    pub right: Vec<Slot>,
    pub expected: Scalar,
    pub actual: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub checked: usize,
    pub failures: Vec<Witness>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, condition: Condition, left: &[Slot], right: &[Slot], expected: Scalar, actual: Scalar) {
        self.checked += 1;
        if expected != actual {
            self.failures.push(Witness {
                condition,
                left: left.to_vec(),
                right: right.to_vec(),
                expected,
                actual,
            });
        }
    }
}

/// All tuples of length `n` with consecutive tags different; with `cyclic`,
/// also the last tag differs from the first when `n ≥ 2`.
pub fn alternating_tuples(sizes: &[usize], n: usize, cyclic: bool) -> Vec<Vec<Slot>> {
    let mut out = Vec::new();
    let mut cur: Vec<Slot> = Vec::with_capacity(n);
    fn rec(sizes: &[usize], n: usize, cyclic: bool, cur: &mut Vec<Slot>, out: &mut Vec<Vec<Slot>>) {
        if cur.len() == n {
            if !(cyclic && n >= 2 && cur[0].tag == cur[n - 1].tag) {
                out.push(cur.clone());
            }
            return;
        }
        for (tag, &size) in sizes.iter().enumerate() {
            if cur.last().is_some_and(|s| s.tag == tag) {
                continue;
            }
            for index in 0..size {
                cur.push(Slot { tag, index });
                rec(sizes, n, cyclic, cur, out);
                cur.pop();
            }
        }
    }
    if n > 0 {
        rec(sizes, n, cyclic, &mut cur, &mut out);
    }
    out
}

/// Checks first-order freeness and conditions (i)–(iii) of second-order
/// freeness for the subalgebras generated by `generators[tag]`, on all
/// centered (cyclically) alternating tuples with `n + m ≤ max_len`
/// (first-order tuples up to length `max_len`). Model invariants are
/// checked on the generators themselves.
pub fn check_second_order_free<S: SecondOrderModel>(
    model: &S,
    generators: &[Vec<S::Elem>],
    max_len: usize,
) -> FreenessReport {
    let mut report = FreenessReport::default();
    check_model(model, generators, &mut report);

    let centered: Vec<Vec<S::Elem>> = generators
        .iter()
        .map(|g| g.iter().map(|a| model.center(a)).collect())
        .collect();
    let sizes: Vec<usize> = generators.iter().map(Vec::len).collect();
    let elem = |s: &Slot| &centered[s.tag][s.index];
    let product = |t: &[Slot]| model.product(&t.iter().map(elem).collect::<Vec<_>>());

    for n in 1..=max_len {
        for t in alternating_tuples(&sizes, n, false) {
            report.record(Condition::FirstOrder, &t, &[], Scalar::zero(), model.phi(&product(&t)));
        }
    }

    let cyclic: Vec<Vec<Vec<Slot>>> = (0..=max_len)
        .map(|n| alternating_tuples(&sizes, n, true))
        .collect();
    let products: Vec<Vec<S::Elem>> = cyclic
        .iter()
        .map(|ts| ts.iter().map(|t| product(t)).collect())
        .collect();
    for n in 1..max_len {
        for m in 1..=max_len - n {
            for (a, pa) in cyclic[n].iter().zip(&products[n]) {
                for (b, pb) in cyclic[m].iter().zip(&products[m]) {
                    let actual = model.rho(pa, pb);
                    let (condition, expected) = if n != m {
                        (Condition::UnequalLengths, Scalar::zero())
                    } else if n == 1 {
                        if a[0].tag == b[0].tag {
                            continue;
                        }
                        (Condition::CrossPair, Scalar::zero())
                    } else {
                        (Condition::Spoke, spoke(model, a, b, &elem))
                    };
                    report.record(condition, a, b, expected, actual);
                }
            }
        }
    }
    report
}

/// `Σ_{k=0}^{n−1} Π_{i=1}^{n} φ(a_i b_{n+1−i+k})`, indices mod n.
fn spoke<'a, S: SecondOrderModel>(
    model: &S,
    a: &[Slot],
    b: &[Slot],
    elem: &impl Fn(&Slot) -> &'a S::Elem,
) -> Scalar
where
    S::Elem: 'a,
{
    let n = a.len();
    let mut acc = Scalar::zero();
    for k in 0..n {
        let mut t = Scalar::one();
        for (i, ai) in a.iter().enumerate() {
            let bj = &b[(n - 1 - i + k) % n];
            t = t * model.phi(&model.mul(elem(ai), elem(bj)));
            if t.is_zero() {
                break;
            }
        }
        acc += t;
    }
    acc
}

fn check_model<S: SecondOrderModel>(model: &S, generators: &[Vec<S::Elem>], report: &mut FreenessReport) {
    let one = model.one();
    report.record(Condition::Model, &[], &[], Scalar::one(), model.phi(&one));
    let all: Vec<(Slot, &S::Elem)> = generators
        .iter()
        .enumerate()
        .flat_map(|(tag, g)| g.iter().enumerate().map(move |(index, a)| (Slot { tag, index }, a)))
        .collect();
    for (s, a) in &all {
        report.record(Condition::Model, &[*s], &[], Scalar::zero(), model.rho(a, &one));
        report.record(Condition::Model, &[], &[*s], Scalar::zero(), model.rho(&one, a));
    }
    for (s, a) in &all {
        for (t, b) in &all {
            let ab = model.mul(a, b);
            let ba = model.mul(b, a);
            report.record(Condition::Model, &[*s, *t], &[], model.phi(&ab), model.phi(&ba));
            for (u, c) in &all {
                report.record(Condition::Model, &[*s, *t], &[*u], model.rho(&ab, c), model.rho(&ba, c));
                report.record(Condition::Model, &[*u], &[*s, *t], model.rho(c, &ab), model.rho(c, &ba));
            }
        }
    }
}
