//! Disc and annular non-crossing pairings, partitions and permutations.
//!
//! On an annulus the outer circle carries points `1..n` clockwise and the
//! inner circle carries `n+1..n+m` counter-clockwise; γ is `(1,..,n)(n+1,..,n+m)`.

mod enumerate;
mod nc_annular;
mod pairing;

pub use enumerate::{
    enumerate_nc2, enumerate_nc_disc, enumerate_snc, genus, is_connected, is_geodesic,
    is_geodesic_right, is_snc, nc2_cached, nc_disc_cached, snc_cached, AnnularPermutation,
    MAX_NC2, MAX_NC_DISC, MAX_SNC,
};
pub use nc_annular::{
    enumerate_nc_annular_partitions, fibers, is_nc_annular, nc_annular_by_image,
    AnnularPartition, MAX_NC_ANNULAR,
};
pub use pairing::{enumerate_pairings, Pairing, MAX_PAIRINGS};
