//! Exact linear and cyclic Fock spaces: semicircular fields over a real
//! Hilbert space, compound Poisson fields over `M_k`, Wick and
//! Kailath–Segall polynomials, the map **c** into the cyclic Fock space,
//! and the diagonalizing polynomials.

mod operator;
mod poisson;
mod polys;
mod semicircular;
mod word;

pub use operator::{annihilate, create, FockModel, OpPoly};
pub use poisson::{fluct_poisson_fock, PoissonFock};
pub use polys::{
    chebyshev_t, chebyshev_u, free_poisson_moments, free_poisson_orthogonal, poisson_gamma_polys,
    Poly, MAX_POLY_DEGREE,
};
pub use semicircular::{fluct_gauss_fock, SemicircularFock};
pub use word::{canonical_rotation, period, CyclicVector, FockVector, Word};
