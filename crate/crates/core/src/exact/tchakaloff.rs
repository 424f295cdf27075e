use alloc::vec;
use alloc::vec::Vec;

use super::lift::{lifted_moments, resolve_candidates};
use super::rule::{RuleTag, WeightedRule};
use crate::numkernel::{lstsq, nnls, norm2, DenseMatrix};
use crate::spaces::{design_matrix, LiftedSystem, PointSet, System, WithConstant};
use crate::{Error, Result};

/// Largest candidate set handed to NNLS.
pub const TCHAKALOFF_CANDIDATE_CAP: usize = 2000;

fn residual(a: &DenseMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.matvec(x);
    norm2(&ax.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>())
}

fn nnls_on(a: &DenseMatrix, b: &[f64], support: &[usize]) -> Result<(Vec<f64>, f64)> {
    let sub = a.select_cols(support);
    let sol = nnls(&sub, b)?;
    Ok((sol.x, sol.residual_norm))
}

/// One Carathéodory step: moves the weights along a null vector of the
/// support columns until one of them hits zero.
fn caratheodory_step(a: &DenseMatrix, support: &[usize], w: &mut [f64]) -> Result<()> {
    let sub = a.select_cols(support);
    let probe = lstsq(&sub, &vec![0.0; sub.rows()], 1e-12)?;
    let s = support.len();
    if probe.rank >= s {
        return Err(Error::NumericalFailure {
            msg: "support columns are independent; nothing to reduce".into(),
            residual: 0.0,
        });
    }
    let j = probe.pivots[probe.rank];
    let basis = &probe.pivots[..probe.rank];
    let y = lstsq(&sub.select_cols(basis), &sub.column(j), 1e-12)?.x;
    let mut z = vec![0.0; s];
    z[j] = 1.0;
    for (&c, v) in basis.iter().zip(&y) {
        z[c] = -v;
    }
    if !z.iter().any(|&v| v > 0.0) {
        z.iter_mut().for_each(|v| *v = -*v);
    }
    let mut alpha = f64::INFINITY;
    let mut hit = 0;
    for (i, (&zi, &wi)) in z.iter().zip(w.iter()).enumerate() {
        if zi > 0.0 && wi / zi < alpha {
            alpha = wi / zi;
            hit = i;
        }
    }
    for (wi, zi) in w.iter_mut().zip(&z) {
        *wi = (*wi - alpha * zi).max(0.0);
    }
    w[hit] = 0.0;
    Ok(())
}

/// Nonnegative rule on at most `N` of the `candidates` reproducing `moments`.
///
/// NNLS over all candidates, then the support is pruned (drop the smallest
/// weight and re-solve, or a Carathéodory step when that loses accuracy)
/// and the final weights are polished by least squares on the support.
pub fn tchakaloff_compress<S: System + ?Sized>(
    sys: &S,
    moments: &[f64],
    candidates: &PointSet,
) -> Result<WeightedRule> {
    let n = sys.len();
    if moments.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: moments.len(),
        });
    }
    if candidates.len() > TCHAKALOFF_CANDIDATE_CAP {
        return Err(Error::CapExceeded {
            what: "tchakaloff candidates",
            value: candidates.len(),
            cap: TCHAKALOFF_CANDIDATE_CAP,
        });
    }
    let a = design_matrix(sys, candidates).transpose();
    let tol = 1e-8 * norm2(moments).max(1.0);
    let all: Vec<usize> = (0..candidates.len()).collect();
    let (x, res) = nnls_on(&a, moments, &all)?;
    if res > tol {
        return Err(Error::Infeasible {
            msg: "moments are not in the cone of the candidate evaluations".into(),
            residual: res,
        });
    }
    let mut support: Vec<usize> = all.into_iter().filter(|&j| x[j] > 0.0).collect();
    let mut w: Vec<f64> = support.iter().map(|&j| x[j]).collect();

    while support.len() > n {
        let drop = (0..w.len()).fold(0, |b, i| if w[i] < w[b] { i } else { b });
        let trial: Vec<usize> = support.iter().copied().enumerate().filter(|&(i, _)| i != drop).map(|(_, j)| j).collect();
        let (tw, tres) = nnls_on(&a, moments, &trial)?;
        if tres <= tol {
            support = trial;
            w = tw;
        } else {
            caratheodory_step(&a, &support, &mut w)?;
        }
        let keep: Vec<usize> = (0..w.len()).filter(|&i| w[i] > 0.0).collect();
        support = keep.iter().map(|&i| support[i]).collect();
        w = keep.iter().map(|&i| w[i]).collect();
    }

    let sub = a.select_cols(&support);
    let polished = lstsq(&sub, moments, 1e-13)?.x;
    if polished.iter().all(|&v| v >= 0.0) && residual(&sub, &polished, moments) <= residual(&sub, &w, moments) {
        w = polished;
    }
    let keep: Vec<usize> = (0..w.len()).filter(|&i| w[i] > 0.0).collect();
    let support: Vec<usize> = keep.iter().map(|&i| support[i]).collect();
    let w: Vec<f64> = keep.iter().map(|&i| w[i]).collect();
    let res = residual(&a.select_cols(&support), &w, moments);
    if res > tol {
        return Err(Error::NumericalFailure {
            msg: "compressed rule lost moment accuracy".into(),
            residual: res,
        });
    }
    Ok(WeightedRule::new(candidates.select(&support), w)?.with_tag(RuleTag::Positive))
}

/// Compresses a positive rule onto a subset of its own nodes.
pub fn tchakaloff_from_rule<S: System + ?Sized>(sys: &S, rule: &WeightedRule) -> Result<WeightedRule> {
    if rule.min_weight() < 0.0 {
        return Err(Error::PreconditionViolation("input rule has negative weights".into()));
    }
    tchakaloff_compress(sys, &rule.moments(sys), &rule.nodes)
}

/// Positive probability rule with `≤ N+1` nodes for the span of `sys`.
pub fn tchakaloff_probability<S: System>(sys: &S, candidates: Option<&PointSet>) -> Result<WeightedRule> {
    let ext = WithConstant::new(sys);
    let mut moments = vec![1.0];
    moments.extend(sys.integrals());
    let cands = resolve_candidates(&ext, candidates, TCHAKALOFF_CANDIDATE_CAP)?;
    let mut rule = tchakaloff_compress(&ext, &moments, &cands)?;
    let total = rule.total_weight();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NumericalFailure {
            msg: "weights do not sum to one".into(),
            residual: (total - 1.0).abs(),
        });
    }
    rule.weights.iter_mut().for_each(|w| *w /= total);
    Ok(rule.with_tag(RuleTag::Probability))
}

/// Positive rule with `≤ M(N,q)` nodes reproducing `∫ f^q dμ` on the span.
pub fn positive_exact_lq<S: System>(base: &S, q: u32, candidates: Option<&PointSet>) -> Result<WeightedRule> {
    let lifted = LiftedSystem::new(base, q)?;
    let moments = lifted_moments(&lifted)?;
    let cands = resolve_candidates(&lifted, candidates, TCHAKALOFF_CANDIDATE_CAP)?;
    Ok(tchakaloff_compress(&lifted, &moments, &cands)?.with_tag(RuleTag::ExactQ(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{FrequencySet, TrigSystem};

    #[test]
    fn first_degree_from_grid() {
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[1]).unwrap());
        let grid = PointSet::torus_grid(&[64]).unwrap();
        let r = tchakaloff_compress(&s, &s.integrals(), &grid).unwrap();
        assert!(r.len() <= 3 && r.min_weight() >= 0.0);
        assert!(super::super::is_exact_for(&s, &r, 1e-8));
    }

    #[test]
    fn hundred_node_rule_compresses() {
        let s = TrigSystem::cosine(1);
        let rule = WeightedRule::equal_weight(PointSet::torus_grid(&[100]).unwrap());
        let r = tchakaloff_from_rule(&s, &rule).unwrap();
        assert!(r.len() <= 2 && r.min_weight() >= 0.0);
        assert!(r.total_weight() <= rule.total_weight() + 1e-8);
        let (a, b) = (rule.moments(&s), r.moments(&s));
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-8));
    }

    #[test]
    fn probability_rules() {
        let one = TrigSystem::cosine(0);
        let r = tchakaloff_probability(&one, None).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.weights[0], 1.0);
        let sc = TrigSystem::sincos(1);
        let r = tchakaloff_probability(&sc, None).unwrap();
        assert!(r.len() <= 3);
        assert!((r.total_weight() - 1.0).abs() <= 1e-10);
        assert!(r.moments(&sc).iter().all(|m| m.abs() < 1e-8));
        r.validate_tags(1e-12).unwrap();
    }

    #[test]
    fn positive_lq_sin_cos() {
        let s = TrigSystem::sincos(1);
        let r = positive_exact_lq(&s, 2, None).unwrap();
        assert!(r.len() <= 3 && r.min_weight() >= 0.0);
        let b = [0.7, -0.4];
        assert!((r.power_sum(&s, &b, 2) - (0.49 + 0.16)).abs() < 1e-8);
        let one = TrigSystem::cosine(0);
        let r = positive_exact_lq(&one, 4, None).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }
}
