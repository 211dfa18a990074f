//! Exact and Monte Carlo second-order statistics of Gaussian and compound
//! Wishart random matrices.
//!
//! Three engines compute the same fluctuation moments and are expected to
//! agree:
//!
//! * [`theory`] sums over annular non-crossing diagrams ([`annular`]);
//! * [`fock`] evaluates a cyclic inner product on a full Fock space;
//! * [`rmt`] samples the matrices and also provides exact finite-N oracles.
//!
//! [`sof`] checks the axioms of second-order freeness and expands mixed
//! fluctuation moments into balanced expressions.
//!
//! ```
//! use fluctus::algebra::{GramSpace, Scalar};
//! use fluctus::fock::fluct_gauss_fock;
//! use fluctus::rmt::{exact_gue_cumulant, extract_limit};
//! use fluctus::theory::gauss_cov;
//!
//! # fn main() -> fluctus::Result<()> {
//! let h = GramSpace::orthonormal(1)?;
//! let f = h.basis(0);
//! let (x2, x3) = (vec![f.clone(); 2], vec![f.clone(); 3]);
//!
//! assert_eq!(gauss_cov(&h, &x3, &x3)?, fluct_gauss_fock(&h, &x3, &x3)?);
//!
//! let points: Vec<(usize, Scalar)> = [4, 6, 8]
//!     .iter()
//!     .map(|&n| Ok((n, exact_gue_cumulant(&h, &[x2.clone(), x2.clone()], n)?)))
//!     .collect::<fluctus::Result<_>>()?;
//! assert_eq!(extract_limit(&points)?, Scalar::from_int(2));
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod annular;
pub mod cli;
pub mod error;
pub mod fock;
pub mod io;
pub mod perm;
pub mod rmt;
pub mod sof;
pub mod theory;

pub use error::{Error, Result};
