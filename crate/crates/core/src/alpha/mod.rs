//! Weighted incidence matrices and the α-normal certificate for spectral radii.
//!
//! A connected k-uniform hypergraph with a consistent weighted incidence
//! matrix whose vertex sums are 1 and whose edge products are α has spectral
//! radius exactly `α^{-1/k}`; a strictly supernormal consistent one has a
//! larger radius. This module checks those conditions, evaluates the scalar
//! equations whose roots give α for the triangle families, and builds the
//! weightings themselves.

mod incidence;
mod scalar;

pub use incidence::{
    build_b_o, build_b_p, build_b_q_supernormal, check_normal, cycle_consistency, NormalityMode, NormalityReport,
    WeightedIncidence, DEFAULT_NORMALITY_TOLERANCE,
};
pub use scalar::{f_o, f_p, gamma, phi, psi, rho_from_alpha, solve_alpha_o, solve_alpha_p, ROOT_TOLERANCE};
