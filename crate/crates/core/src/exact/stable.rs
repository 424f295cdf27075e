use alloc::vec::Vec;


use crate::numkernel::{
    generalized_sym_eig_extreme, min_weighted_norm, ChebyshevLp, DenseMatrix, DualExponent,
};
use crate::rng::stream;
use crate::spaces::{design_matrix, eval_vec, gram_matrix, PointSet, System};
use crate::{Error, Result};

/// The exponent `p` of the one-sided inequality `‖f‖_p ≤ C₁ ‖f‖_{p,μ,W}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StableExponent {
    One,
    Two,
    Infinity,
}

impl StableExponent {
    pub fn dual(self) -> DualExponent {
        match self {
            StableExponent::One => DualExponent::Infinity,
            StableExponent::Two => DualExponent::Two,
            StableExponent::Infinity => DualExponent::One,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StableWeights {
    pub weights: Vec<f64>,
    /// `(Σ |λ_ω/μ_ω|^{p'} μ_ω)^{1/p'}`, or `max |λ_ω|/μ_ω` when `p = 1`.
    pub norm: f64,
    /// Measured `C₁` for `(W, μ)`.
    pub measured_c1: f64,
    pub p: StableExponent,
    /// Coefficients of the dual extremal `f`, with `∫ f dμ = norm`.
    pub witness: Vec<f64>,
}

/// Number of random probes used for `p = 1`.
pub const L1_PROBES: usize = 200;

fn unbounded_c1() -> Error {
    Error::PreconditionViolation("(W, μ) does not satisfy the one-sided inequality with finite C1".into())
}

fn measured_c1<S: System + ?Sized>(
    sys: &S,
    w: &PointSet,
    mu: &[f64],
    p: StableExponent,
    witness: &[f64],
    reference: &PointSet,
    seed: u64,
) -> Result<f64> {
    let v = design_matrix(sys, w);
    match p {
        StableExponent::Two => {
            let mut d = DenseMatrix::zeros(sys.len(), sys.len());
            for (i, &m) in mu.iter().enumerate() {
                d.add_outer(m, v.row(i));
            }
            let (_, hi) = generalized_sym_eig_extreme(&gram_matrix(sys)?, &d).map_err(|_| unbounded_c1())?;
            Ok(crate::math::sqrt(hi))
        }
        StableExponent::Infinity => {
            let lp = ChebyshevLp::new(v.clone())?;
            if !lp.is_full_rank() {
                return Err(unbounded_c1());
            }
            let mut best = 0.0f64;
            for x in reference.iter() {
                best = best.max(lp.solve(&eval_vec(sys, x))?.value);
            }
            let on_w = v.matvec(witness).iter().fold(0.0f64, |m, t| m.max(t.abs()));
            let on_ref = design_matrix(sys, reference).matvec(witness).iter().fold(0.0f64, |m, t| m.max(t.abs()));
            if on_w > 0.0 {
                best = best.max(on_ref / on_w);
            }
            Ok(best)
        }
        StableExponent::One => {
            let r = design_matrix(sys, reference);
            let ratio = |b: &[f64]| -> f64 {
                let num = r.matvec(b).iter().map(|t| t.abs()).sum::<f64>() / reference.len() as f64;
                let den: f64 = v.matvec(b).iter().zip(mu).map(|(t, m)| m * t.abs()).sum();
                if den > 0.0 {
                    num / den
                } else if num > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            };
            let mut best = ratio(witness);
            let mut rng = stream(seed, 0);
            for _ in 0..L1_PROBES {
                let b: Vec<f64> = (0..sys.len()).map(|_| crate::rng::normal(&mut rng)).collect();
                best = best.max(ratio(&b));
            }
            if !best.is_finite() {
                return Err(unbounded_c1());
            }
            Ok(best)
        }
    }
}

/// Weights on `W` reproducing every moment of the span with the smallest
/// dual norm, together with the measured `C₁` of `(W, μ)`.
///
/// `reference` is the grid on which `‖f‖_p` is measured (for `p = 2` the
/// exact Gram matrix is used instead); by default a torus grid four times
/// finer than Nyquist.
pub fn stable_exact_weights<S: System + ?Sized>(
    sys: &S,
    w: &PointSet,
    mu: &[f64],
    p: StableExponent,
    reference: Option<&PointSet>,
    seed: u64,
) -> Result<StableWeights> {
    if mu.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: mu.len(),
        });
    }
    if mu.iter().any(|&m| !(m > 0.0)) {
        return Err(Error::invalid("μ must be positive"));
    }
    let a = design_matrix(sys, w).transpose();
    let sol = min_weighted_norm(&a, &sys.integrals(), mu, p.dual())?;
    let reference = match reference {
        Some(r) => r.clone(),
        None => super::candidate_grid(sys, 4, 4000)?,
    };
    let c1 = measured_c1(sys, w, mu, p, &sol.witness, &reference, seed)?;
    if sol.norm > c1 + 1e-6 {
        return Err(Error::NumericalFailure {
            msg: "stability norm exceeds the measured C1".into(),
            residual: sol.norm - c1,
        });
    }
    Ok(StableWeights {
        weights: sol.lambda,
        norm: sol.norm,
        measured_c1: c1,
        p,
        witness: sol.witness,
    })
}
