//! Exact scalars and the concrete models: a Hilbert space given by a Gram
//! matrix, and the matrix algebra M_k with its normalized trace ψ.

mod functionals;
mod gram;
mod matrix;
mod scalar;

pub use functionals::{psicheck1, psicheck2, psicheck_sigma, tr_sigma, tr_sigma_exact};
pub use gram::{GramSpace, Vector, MAX_GRAM_DIM};
pub use matrix::{Matrix, MatrixAlgebra};
pub use scalar::Scalar;
