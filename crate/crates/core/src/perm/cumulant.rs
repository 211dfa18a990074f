use std::ops::{Add, Mul};

use super::partition::{enumerate_partitions, SetPartition};
use crate::error::Result;

/// Classical cumulant k_r of r variables by Möbius inversion,
/// `k_r = Σ_A μ(A, 1) Π_{B ∈ A} E{Π_{i ∈ B} a_i}`.
///
/// `moment` receives the (increasing) argument positions of one block and
/// returns the joint moment of those arguments.
pub fn classical_cumulant<T, F>(r: usize, mut moment: F) -> Result<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T> + From<i32>,
    F: FnMut(&[usize]) -> Result<T>,
{
    let mut total = T::from(0);
    for a in enumerate_partitions(r)? {
        let mut term = T::from(mobius_as_i32(&a));
        for block in a.blocks() {
            term = term * moment(block)?;
        }
        total = total + term;
    }
    Ok(total)
}

fn mobius_as_i32(a: &SetPartition) -> i32 {
    i32::try_from(a.mobius_to_top()).expect("guarded partition sizes keep μ small")
}
