//! Central tolerance record. Every kernel takes its thresholds from here
//! unless a caller overrides them.

/// Numerical thresholds shared by the kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Feasibility / consistency residual for linear systems and LPs.
    pub feasibility: f64,
    /// Relative asymmetry allowed before a matrix is rejected as non-symmetric.
    pub symmetry: f64,
    /// Residual below which a cubature or moment match counts as exact.
    pub exact: f64,
    /// Relative pivot / determinant threshold for rank decisions.
    pub pivot: f64,
    /// Off-diagonal threshold for the Jacobi eigen solver.
    pub eigen: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feasibility: 1e-8,
            symmetry: 1e-10,
            exact: 1e-8,
            pivot: 1e-10,
            eigen: 1e-13,
        }
    }
}
