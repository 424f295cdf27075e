use alloc::vec::Vec;

use super::nodes::independent_nodes;
use super::rule::{RuleTag, WeightedRule};
use crate::numkernel::{norm2, Lu};
use crate::spaces::{design_matrix, LiftedSystem, PointSet, Restricted, System};
use crate::{Error, Result};

/// The space `X_N(q)` spanned by the degree-`q` products of `base`, for even `q`.
pub fn lift_even_q<S: System>(base: S, q: u32) -> Result<LiftedSystem<S>> {
    if q == 0 || q % 2 != 0 {
        return Err(Error::invalid("lift degree must be a positive even integer"));
    }
    LiftedSystem::new(base, q)
}

pub(crate) fn lifted_moments<S: System>(lifted: &LiftedSystem<S>) -> Result<Vec<f64>> {
    let m = lifted.integrals();
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::Unsupported(
            "product integrals of the base system are not available".into(),
        ));
    }
    Ok(m)
}

pub(crate) fn resolve_candidates<S: System + ?Sized>(
    sys: &S,
    candidates: Option<&PointSet>,
    cap: usize,
) -> Result<PointSet> {
    match candidates {
        Some(c) => Ok(c.clone()),
        None => super::candidate_grid(sys, super::DEFAULT_CANDIDATE_FACTOR, cap),
    }
}

/// Rule with `≤ M(N,q)` nodes and real weights satisfying
/// `Σ λ_ν f(ξ^ν)^q = ∫ f^q dμ` for every `f` in the span of `base`.
///
/// The product functions are usually linearly dependent, so nodes are chosen
/// for an independent subfamily and the rule is then checked against every
/// product moment.
pub fn exact_weighted_discretization<S: System>(
    base: &S,
    q: u32,
    candidates: Option<&PointSet>,
) -> Result<WeightedRule> {
    let lifted = lift_even_q(base, q)?;
    let moments = lifted_moments(&lifted)?;
    let cands = resolve_candidates(&lifted, candidates, 20_000)?;
    let sel = independent_nodes(&lifted, &cands)?;
    let sub = Restricted::new(&lifted, sel.functions.clone())?;
    let sub_moments: Vec<f64> = sel.functions.iter().map(|&i| moments[i]).collect();
    let u = design_matrix(&sub, &sel.nodes);
    let lambda = Lu::new(&u)?.solve_transpose(&sub_moments)?;
    let rule = WeightedRule::new(sel.nodes, lambda)?.with_tag(RuleTag::ExactQ(q));
    let res = super::moment_residual(&lifted, &rule, &moments);
    if res > 1e-8 * norm2(&moments).max(1.0) {
        return Err(Error::NumericalFailure {
            msg: "lifted moments not reproduced; candidate set too coarse".into(),
            residual: res,
        });
    }
    Ok(rule)
}
