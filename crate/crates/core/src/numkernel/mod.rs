//! Dense numeric kernels at desk scale: determinants, symmetric eigenvalues,
//! least squares, nonnegative least squares and small linear programs.
//!
//! Everything is in-tree and deterministic so test results are bit-stable.

mod cholesky;
mod eig;
mod lp;
mod lu;
mod matrix;
mod nnls;
mod qr;
mod simplex;

pub use cholesky::{cholesky, generalized_sym_eig_extreme};
pub use eig::{sym_eig, sym_eig_extreme, SymEigen};
pub use lp::{
    lp_chebyshev, min_weighted_norm, min_weighted_norm_solution, ChebyshevLp, ChebyshevSolution, DualExponent,
    WeightedNormSolution,
};
pub use lu::{det_lu, solve_linear, Lu};
pub use matrix::DenseMatrix;
pub use nnls::{nnls, NnlsSolution};
pub use qr::{lstsq, Lstsq};
pub use simplex::{simplex_standard, LpStatus, StandardLp};

/// Euclidean dot product.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    crate::math::sqrt(dot(a, a))
}

#[inline]
pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}
