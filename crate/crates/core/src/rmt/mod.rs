//! Random matrices: seeded samplers for Gaussian families and compound
//! Wishart matrices, unbiased cumulant estimators, exact finite-N moment and
//! cumulant oracles, and convergence studies against the large-N limits.

mod limits;
mod oracle;
mod sample;
mod simulate;
mod stats;

pub use limits::{LimitElem, SemicircleWithConstants};
pub use oracle::{
    exact_gue_cumulant, exact_gue_moment, exact_wishart_cumulant, exact_wishart_moment, extract_limit,
    fit_inverse_powers, gue_series, wishart_series, Laurent, MAX_GUE_ORACLE, MAX_WISHART_ORACLE,
};
pub use sample::{
    inflate, inflate_complex, sample_compound_wishart, sample_gaussian_family, sample_ginibre, sample_gue,
    sample_rng, to_complex, CMatrix, GaussianFamilySpec, GaussianSampler, WishartSampler, WishartSpec,
};
pub use simulate::{
    convergence_study, ConvergenceRow, ConvergenceTable, Ensemble, Family, Letter, SampleBatch, StudyRequest,
    TraceStatistic,
};
pub use stats::{batched, estimate_cumulants, estimate_joint, joint_k_statistic, k_statistic, Estimate, SUB_BATCHES};
