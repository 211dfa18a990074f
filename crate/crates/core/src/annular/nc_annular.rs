use std::collections::BTreeSet;

use serde::Serialize;

use super::enumerate::{snc_cached, AnnularPermutation};
use crate::error::{guard, Error, Result};
use crate::perm::{for_each_partition, AnnulusProfile, Permutation, SetPartition};

pub const MAX_NC_ANNULAR: usize = 10;

/// A partition of `[1, n+m]` that is non-crossing on the (n, m) annulus:
/// outer circle `1..n` clockwise, inner circle `n+1..n+m` counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnnularPartition {
    n: usize,
    m: usize,
    partition: SetPartition,
    /// Indices (into `partition.blocks()`) of blocks meeting both circles.
    through_blocks: Vec<usize>,
    /// Cycle order of each through-block when there are at least two of them.
    #[serde(skip)]
    through_orders: Vec<Vec<usize>>,
}

impl AnnularPartition {
    pub fn new(partition: SetPartition, n: usize, m: usize) -> Result<Self> {
        match removal(&partition, n, m)? {
            Ok(orders) => {
                let through_blocks = partition
                    .blocks()
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| is_through(b, n))
                    .map(|(i, _)| i)
                    .collect();
                Ok(AnnularPartition {
                    n,
                    m,
                    partition,
                    through_blocks,
                    through_orders: orders,
                })
            }
            Err(why) => Err(Error::NotAnnularNonCrossing(format!("{partition}: {why}"))),
        }
    }

    pub fn outer(&self) -> usize {
        self.n
    }

    pub fn inner(&self) -> usize {
        self.m
    }

    pub fn profile(&self) -> AnnulusProfile {
        AnnulusProfile::annulus(self.n, self.m).expect("both circles are nonempty")
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn through_blocks(&self) -> &[usize] {
        &self.through_blocks
    }

    /// For a through-block, its outer part `B′` and inner part `B″`, both
    /// increasing.
    pub fn split_block(&self, block: usize) -> (Vec<usize>, Vec<usize>) {
        self.partition.blocks()[block]
            .iter()
            .partition(|&&x| x < self.n)
    }

    /// The unique cycle order of a through-block when σ has at least two
    /// through-blocks; `None` when the block is the only one.
    pub fn through_order(&self, block: usize) -> Option<&[usize]> {
        let k = self.through_blocks.iter().position(|&b| b == block)?;
        self.through_orders.get(k).map(Vec::as_slice)
    }
}

fn is_through(block: &[usize], n: usize) -> bool {
    block.iter().any(|&x| x < n) && block.iter().any(|&x| x >= n)
}

/// Positions (in `list`) of the members of `block`, if they form one cyclic
/// run of `list`.
fn cyclic_run_start(list: &[usize], block: &[usize]) -> Option<usize> {
    let inside: Vec<bool> = list.iter().map(|x| block.contains(x)).collect();
    let len = list.len();
    let count = inside.iter().filter(|&&b| b).count();
    if count == 0 {
        return None;
    }
    if count == len {
        return Some(0);
    }
    let starts: Vec<usize> = (0..len)
        .filter(|&i| inside[i] && !inside[(i + len - 1) % len])
        .collect();
    (starts.len() == 1).then(|| starts[0])
}

/// The recursive-removal test. Returns the through-block cycle orders on
/// success, or a reason on failure; the outer `Result` carries input errors.
fn removal(
    partition: &SetPartition,
    n: usize,
    m: usize,
) -> Result<std::result::Result<Vec<Vec<usize>>, String>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidProfile("both circles need points".into()));
    }
    if partition.size() != n + m {
        return Err(Error::SizeMismatch {
            expected: n + m,
            actual: partition.size(),
        });
    }
    let blocks = partition.blocks();
    let mut outer: Vec<usize> = (0..n).collect();
    let mut inner: Vec<usize> = (n..n + m).collect();
    let mut alive: Vec<bool> = vec![true; blocks.len()];

    loop {
        let mut removed = false;
        for (i, b) in blocks.iter().enumerate() {
            if !alive[i] || is_through(b, n) {
                continue;
            }
            let circle = if b[0] < n { &mut outer } else { &mut inner };
            if cyclic_run_start(circle, b).is_none() {
                continue;
            }
            if b.len() == circle.len() {
                return Ok(Err(format!(
                    "block {} fills a circle, so no block can connect the circles",
                    show(b)
                )));
            }
            circle.retain(|x| !b.contains(x));
            alive[i] = false;
            removed = true;
        }
        if !removed {
            break;
        }
    }

    let live: Vec<usize> = (0..blocks.len()).filter(|&i| alive[i]).collect();
    if let Some(&i) = live.iter().find(|&&i| !is_through(&blocks[i], n)) {
        return Ok(Err(format!("block {} crosses a through-block", show(&blocks[i]))));
    }
    if live.is_empty() {
        return Ok(Err("no block meets both circles".into()));
    }

    let mut outer_seq = Vec::new();
    let mut inner_seq = Vec::new();
    let mut orders = Vec::new();
    for &i in &live {
        let b = &blocks[i];
        let (bo, bi): (Vec<usize>, Vec<usize>) = b.iter().partition(|&&x| x < n);
        let (Some(so), Some(si)) = (cyclic_run_start(&outer, &bo), cyclic_run_start(&inner, &bi))
        else {
            return Ok(Err(format!(
                "through-block {} is not consecutive on both circles",
                show(b)
            )));
        };
        outer_seq.push((so, i));
        inner_seq.push((si, i));
        if live.len() >= 2 {
            let mut order: Vec<usize> = (0..bo.len()).map(|k| outer[(so + k) % outer.len()]).collect();
            order.extend((0..bi.len()).map(|k| inner[(si + k) % inner.len()]));
            orders.push(order);
        }
    }
    outer_seq.sort_unstable();
    inner_seq.sort_unstable();
    let o: Vec<usize> = outer_seq.iter().map(|&(_, b)| b).collect();
    let mut r: Vec<usize> = inner_seq.iter().map(|&(_, b)| b).collect();
    r.reverse();
    let same_up_to_rotation = (0..o.len()).any(|s| (0..o.len()).all(|k| o[k] == r[(k + s) % r.len()]));
    if !same_up_to_rotation {
        return Ok(Err(
            "through-blocks meet the inner circle in a non-reversed cyclic order".into(),
        ));
    }
    Ok(Ok(orders))
}

fn show(b: &[usize]) -> String {
    let parts: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Recursive-removal membership test for NC(n, m).
pub fn is_nc_annular(partition: &SetPartition, n: usize, m: usize) -> Result<bool> {
    Ok(removal(partition, n, m)?.is_ok())
}

/// All of NC(n, m) via the recursive-removal characterization.
pub fn enumerate_nc_annular_partitions(n: usize, m: usize) -> Result<Vec<AnnularPartition>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidProfile("both circles need points".into()));
    }
    guard("total size", n + m, MAX_NC_ANNULAR)?;
    let mut out = Vec::new();
    for_each_partition(n + m, |p| {
        if let Ok(ap) = AnnularPartition::new(p, n, m) {
            out.push(ap);
        }
    });
    Ok(out)
}

/// NC(n, m) as the set of orbit partitions of S_NC(n, m); the second,
/// independent characterization.
pub fn nc_annular_by_image(n: usize, m: usize) -> Result<BTreeSet<SetPartition>> {
    let profile = AnnulusProfile::annulus(n, m)?;
    guard("total size", n + m, MAX_NC_ANNULAR)?;
    Ok(snc_cached(&profile)?
        .iter()
        .map(SetPartition::from_permutation)
        .collect())
}

/// All preimages of σ in S_NC(n, m) under "cycles ↦ blocks".
///
/// Blocks on a single circle are read increasingly. With two or more
/// through-blocks each through-block has one admissible cycle order; with a
/// single through-block `B = B′ ∪ B″` every choice of first element in `B′`
/// and in `B″` gives one, `|B′|·|B″|` in all.
pub fn fibers(sigma: &AnnularPartition) -> Vec<AnnularPermutation> {
    let size = sigma.n + sigma.m;
    let profile = sigma.profile();
    let mut base: Vec<Vec<usize>> = Vec::new();
    let mut single = None;
    for (i, b) in sigma.partition.blocks().iter().enumerate() {
        if !is_through(b, sigma.n) {
            base.push(b.clone());
        } else if let Some(order) = sigma.through_order(i) {
            base.push(order.to_vec());
        } else {
            single = Some(i);
        }
    }
    let mut out = Vec::new();
    match single {
        None => {
            let p = Permutation::from_cycles(size, &base).expect("blocks are disjoint");
            out.push(p);
        }
        Some(i) => {
            let (bo, bi) = sigma.split_block(i);
            for k in 0..bo.len() {
                for l in 0..bi.len() {
                    let mut cycle: Vec<usize> = (0..bo.len()).map(|t| bo[(k + t) % bo.len()]).collect();
                    cycle.extend((0..bi.len()).map(|t| bi[(l + t) % bi.len()]));
                    let mut cycles = base.clone();
                    cycles.push(cycle);
                    out.push(Permutation::from_cycles(size, &cycles).expect("blocks are disjoint"));
                }
            }
        }
    }
    out.into_iter()
        .map(|p| AnnularPermutation::new(profile.clone(), p).expect("fiber elements lie in S_NC"))
        .collect()
}
