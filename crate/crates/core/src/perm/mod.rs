//! Permutations, set partitions, annulus profiles and classical cumulants.

mod cumulant;
mod partition;
mod permutation;
mod profile;

pub use cumulant::classical_cumulant;
pub use partition::{
    enumerate_partitions, induced_cycle_partition, join_with, kernel, SetPartition,
    MAX_PARTITIONS,
};
pub(crate) use partition::for_each_partition;
pub use permutation::{for_each_permutation, Permutation, MAX_SCAN};
pub use profile::{gamma_of, AnnulusProfile};
