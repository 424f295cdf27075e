//! Constructive `L₂` discretization by greedy approximation of the identity
//! in the dictionary `{G(x) = u(x) u(x)ᵀ}` with the Frobenius inner product.

use alloc::vec::Vec;

use crate::exact::{RuleTag, WeightedRule};
use crate::numkernel::{lstsq, DenseMatrix};
use crate::spaces::{design_matrix, eval_vec, gram_matrix, PointSet, System};
use crate::{Error, Result};

/// Largest candidate set scored per iteration.
pub const CANDIDATE_CAP: usize = 100_000;

/// Frobenius residual target of the orthogonal greedy algorithm.
pub const OGA_TOL: f64 = 1e-7;

/// `G(x)_{ik} = u_i(x) u_k(x)`.
pub fn gram_atom<S: System + ?Sized>(sys: &S, x: &[f64]) -> DenseMatrix {
    let u = eval_vec(sys, x);
    let mut g = DenseMatrix::zeros(u.len(), u.len());
    g.add_outer(1.0, &u);
    g
}

/// Snapshot of a greedy run.
#[derive(Debug, Clone)]
pub struct GreedyState {
    /// Target minus current approximant.
    pub residual: DenseMatrix,
    /// Candidate indices in selection order (repetitions allowed for RGA).
    pub selected: Vec<usize>,
    pub iteration: usize,
    /// `‖residual‖_F` after each iteration.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub rule: WeightedRule,
    pub state: GreedyState,
}

fn check_candidates<S: System + ?Sized>(sys: &S, candidates: &PointSet) -> Result<()> {
    if candidates.dim() != sys.point_dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.point_dim(),
            got: candidates.dim(),
        });
    }
    if candidates.is_empty() {
        return Err(Error::invalid("empty candidate set"));
    }
    if candidates.len() > CANDIDATE_CAP {
        return Err(Error::CapExceeded {
            what: "greedy candidates",
            value: candidates.len(),
            cap: CANDIDATE_CAP,
        });
    }
    Ok(())
}

fn quad_form(r: &DenseMatrix, u: &[f64]) -> f64 {
    crate::numkernel::dot(u, &r.matvec(u))
}

/// First index maximizing `score`.
fn argmax(v: &DenseMatrix, score: impl Fn(&[f64]) -> f64) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..v.rows() {
        let s = score(v.row(i));
        if s > best.1 {
            best = (i, s);
        }
    }
    best
}

/// Orthogonal greedy algorithm (weakness parameter 1) for the target Gram
/// matrix (the identity for orthonormal systems).
///
/// Each step adds the candidate maximizing `|u(x)ᵀ R u(x)|` and re-projects
/// the target onto the span of the chosen atoms. Stops once `‖R‖_F ≤ OGA_TOL`
/// or after `max_iter` steps (default `N(N+1)/2`).
pub fn oga_exact_l2<S: System + ?Sized>(
    sys: &S,
    candidates: &PointSet,
    max_iter: Option<usize>,
) -> Result<GreedyRun> {
    check_candidates(sys, candidates)?;
    let n = sys.len();
    let target = gram_matrix(sys)?;
    let max_iter = max_iter.unwrap_or(n * (n + 1) / 2);
    let v = design_matrix(sys, candidates);
    let mut basis: Vec<DenseMatrix> = Vec::new();
    let mut residual = target.clone();
    let mut selected = Vec::new();
    let mut trace = Vec::new();
    while residual.frobenius() > OGA_TOL && selected.len() < max_iter {
        let (p, score) = argmax(&v, |u| quad_form(&residual, u).abs());
        if score <= 1e-15 {
            break;
        }
        let mut e = DenseMatrix::zeros(n, n);
        e.add_outer(1.0, v.row(p));
        let raw = e.frobenius();
        for _ in 0..2 {
            for b in &basis {
                let c = e.frob_dot(b);
                e.axpy(-c, b);
            }
        }
        let nrm = e.frobenius();
        if nrm <= 1e-12 * raw {
            break;
        }
        e.scale(1.0 / nrm);
        let c = residual.frob_dot(&e);
        residual.axpy(-c, &e);
        basis.push(e);
        selected.push(p);
        trace.push(residual.frobenius());
    }
    let res = residual.frobenius();
    if res > OGA_TOL {
        return Err(Error::NumericalFailure {
            msg: "greedy residual stagnated; candidate set is deficient".into(),
            residual: res,
        });
    }
    // Weights: least squares of the target against the selected atoms.
    let k = selected.len();
    let mut a = DenseMatrix::zeros(n * n, k);
    for (j, &p) in selected.iter().enumerate() {
        let u = v.row(p);
        for i in 0..n {
            for l in 0..n {
                a[(i * n + l, j)] = u[i] * u[l];
            }
        }
    }
    let weights = lstsq(&a, target.as_slice(), 1e-13)?.x;
    let nodes = candidates.select(&selected);
    let rule = WeightedRule::new(nodes, weights)?.with_tag(RuleTag::ExactQ(2));
    let mut exact_res = target.clone();
    exact_res.axpy(-1.0, &rule.gram(sys));
    Ok(GreedyRun {
        rule,
        state: GreedyState {
            residual: exact_res,
            iteration: k,
            selected,
            trace,
        },
    })
}

/// Relaxed greedy algorithm with step `1/m` towards `I/B`, `B = N t²`.
///
/// Returns the equal-weight rule on the `m` chosen points (with repetition).
/// `t` defaults to the system's Condition E bound.
pub fn rga_equal_weight<S: System + ?Sized>(
    sys: &S,
    candidates: &PointSet,
    m: usize,
    t: Option<f64>,
) -> Result<GreedyRun> {
    check_candidates(sys, candidates)?;
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    if !sys.is_orthonormal() {
        return Err(Error::PreconditionViolation("relaxed greedy needs an orthonormal system".into()));
    }
    let t = t
        .or_else(|| sys.cond_e_bound())
        .ok_or_else(|| Error::PreconditionViolation("Condition E bound unknown".into()))?;
    let n = sys.len();
    let b = n as f64 * t * t;
    let v = design_matrix(sys, candidates);
    if (0..v.rows()).any(|i| v.row(i).iter().map(|x| x * x).sum::<f64>() > b * (1.0 + 1e-12)) {
        return Err(Error::PreconditionViolation("Condition E bound violated on the candidates".into()));
    }
    // Sum of the chosen G(ξ^k).
    let mut sum = DenseMatrix::zeros(n, n);
    let mut selected = Vec::with_capacity(m);
    let mut trace = Vec::with_capacity(m);
    let mut r = DenseMatrix::identity(n);
    for k in 1..=m {
        // I/B − (1 − 1/k) G_{k−1} with G_{k−1} = sum / (B (k−1)); scaled by B.
        r = DenseMatrix::identity(n);
        if k > 1 {
            r.axpy(-1.0 / k as f64, &sum);
        }
        let (p, _) = argmax(&v, |u| quad_form(&r, u));
        sum.add_outer(1.0, v.row(p));
        selected.push(p);
        let mut err = sum.clone();
        err.scale(1.0 / k as f64);
        err.axpy(-1.0, &DenseMatrix::identity(n));
        trace.push(err.frobenius());
        r = err;
        r.scale(-1.0);
    }
    let rule = WeightedRule::equal_weight(candidates.select(&selected)).with_tag(RuleTag::Positive);
    Ok(GreedyRun {
        rule,
        state: GreedyState {
            residual: r,
            iteration: m,
            selected,
            trace,
        },
    })
}

/// `2 N t² / √m`, the guaranteed Frobenius error of the relaxed greedy rule.
pub fn rga_bound(n: usize, t: f64, m: usize) -> f64 {
    2.0 * n as f64 * t * t / crate::math::sqrt(m as f64)
}

/// Smallest number of relaxed greedy iterations bringing the Frobenius error
/// to `≤ target`, if reached within `max_m`.
pub fn rga_first_below<S: System + ?Sized>(
    sys: &S,
    candidates: &PointSet,
    target: f64,
    max_m: usize,
) -> Result<Option<usize>> {
    let run = rga_equal_weight(sys, candidates, max_m, None)?;
    Ok(run.state.trace.iter().position(|&e| e <= target).map(|i| i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::sym_eig_extreme;
    use crate::spaces::{FrequencySet, TrigSystem};

    #[test]
    fn atoms() {
        let one = TrigSystem::cosine(0);
        assert_eq!(gram_atom(&one, &[0.4]).as_slice(), &[1.0]);
        let sc = TrigSystem::sincos(1);
        let g = gram_atom(&sc, &[0.0]);
        assert!((g[(0, 0)] - 2.0).abs() < 1e-15 && g[(1, 1)].abs() < 1e-15 && g[(0, 1)].abs() < 1e-15);
    }

    #[test]
    fn oga_constant() {
        let one = TrigSystem::cosine(0);
        let run = oga_exact_l2(&one, &PointSet::torus_grid(&[4]).unwrap(), None).unwrap();
        assert_eq!(run.state.iteration, 1);
        assert!((run.rule.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn oga_sin_cos() {
        let sc = TrigSystem::sincos(1);
        let run = oga_exact_l2(&sc, &PointSet::torus_grid(&[64]).unwrap(), None).unwrap();
        assert!(run.rule.len() <= 3);
        assert!(run.state.residual.frobenius() <= 1e-7);
        assert!(run.state.trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }

    #[test]
    fn rga_bound_and_sandwich() {
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[2]).unwrap());
        let grid = PointSet::torus_grid(&[40]).unwrap();
        let m = 16 * 25;
        let run = rga_equal_weight(&s, &grid, m, None).unwrap();
        for (k, e) in run.state.trace.iter().enumerate() {
            assert!(*e <= rga_bound(5, 1.0, k + 1) + 1e-12);
        }
        let (lo, hi) = sym_eig_extreme(&run.rule.gram(&s)).unwrap();
        assert!(lo >= 0.5 && hi <= 1.5);
        let d = run.state.residual.frobenius();
        assert!(lo >= 1.0 - d - 1e-12 && hi <= 1.0 + d + 1e-12);
    }

    #[test]
    fn rga_constant() {
        let one = TrigSystem::cosine(0);
        let run = rga_equal_weight(&one, &PointSet::torus_grid(&[3]).unwrap(), 1, None).unwrap();
        assert!(run.state.trace[0].abs() < 1e-15);
    }
}
