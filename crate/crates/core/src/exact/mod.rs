//! Exact recovery, exact cubature, exact weighted `L_q` discretization for
//! even `q`, positive-weight compression and stable weights.

mod lift;
mod nodes;
mod rule;
mod stable;
mod tchakaloff;

pub use lift::{exact_weighted_discretization, lift_even_q};
pub use nodes::{
    build_recovery, exact_cubature, exact_cubature_with_moments, independent_nodes, recovery_from_exact_l2,
    select_nodes_by_determinant, NodeSelection,
};
pub use rule::{RecoveryOperator, RuleTag, WeightedRule};
pub use stable::{stable_exact_weights, StableExponent, StableWeights};
pub use tchakaloff::{
    positive_exact_lq, tchakaloff_compress, tchakaloff_from_rule, tchakaloff_probability, TCHAKALOFF_CANDIDATE_CAP,
};

use alloc::vec::Vec;

use crate::spaces::{FrequencySet, PointSet, System, TrigSystem};
use crate::{Error, Result};

/// Default candidate refinement: this many times the Nyquist grid per axis.
pub const DEFAULT_CANDIDATE_FACTOR: usize = 16;

/// Default candidate set for a system: its own domain when tabulated, else a
/// torus grid of `factor · (2 deg_j + 1)` points per axis. The factor is
/// lowered (not below 2) until the grid has at most `cap` points.
pub fn candidate_grid<S: System + ?Sized>(sys: &S, factor: usize, cap: usize) -> Result<PointSet> {
    if let Some(d) = sys.domain() {
        return Ok(d.clone());
    }
    let Some(deg) = sys.trig_degree() else {
        return Err(Error::Unsupported(
            "system has no canonical candidate grid; pass candidates explicitly".into(),
        ));
    };
    let mut f = factor.max(1);
    loop {
        let sizes: Vec<usize> = deg.iter().map(|&k| f * (2 * k as usize + 1)).collect();
        let total = sizes.iter().fold(1usize, |a, &s| a.saturating_mul(s));
        if total <= cap || f <= 2 {
            return PointSet::torus_grid(&sizes);
        }
        f -= 1;
    }
}

/// `Σ λ_ν u(ξ^ν)` matches `∫ u dμ` up to `tol · max(1, ‖moments‖)`.
pub fn is_exact_for<S: System + ?Sized>(sys: &S, rule: &WeightedRule, tol: f64) -> bool {
    let target = sys.integrals();
    moment_residual(sys, rule, &target) <= tol * crate::numkernel::norm2(&target).max(1.0)
}

/// `‖Σ λ_ν u(ξ^ν) − target‖₂`.
pub fn moment_residual<S: System + ?Sized>(sys: &S, rule: &WeightedRule, target: &[f64]) -> f64 {
    let got = rule.moments(sys);
    crate::math::sqrt(got.iter().zip(target).map(|(a, b)| (a - b) * (a - b)).sum())
}

/// `∏ (2N_j + 1)`: the fewest nodes any rule exact on `T(Π(2N))` can have.
pub fn gfp4_bound(n: &[u32]) -> usize {
    n.iter().map(|&v| 2 * v as usize + 1).product()
}

/// Outcome of checking a rule against the node-count law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gfp4Check {
    /// The rule integrates every polynomial in `T(Π(2N))` exactly.
    pub exact: bool,
    pub nodes: usize,
    pub bound: usize,
}

impl Gfp4Check {
    /// A violation is an exact rule with fewer nodes than the bound.
    pub fn violated(&self) -> bool {
        self.exact && self.nodes < self.bound
    }
}

/// Tests exactness of `rule` on `T(Π(2N))` and compares its size with `∏(2N_j+1)`.
pub fn check_gfp4(rule: &WeightedRule, n: &[u32], tol: f64) -> Result<Gfp4Check> {
    let doubled: Vec<u32> = n.iter().map(|&v| 2 * v).collect();
    let sys = TrigSystem::orthonormal(&FrequencySet::build_box(&doubled)?);
    if rule.nodes.dim() != n.len() {
        return Err(Error::DimensionMismatch {
            expected: n.len(),
            got: rule.nodes.dim(),
        });
    }
    Ok(Gfp4Check {
        exact: is_exact_for(&sys, rule, tol),
        nodes: rule.len(),
        bound: gfp4_bound(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_grid_is_tight_for_the_node_law() {
        for n in [vec![1u32], vec![2], vec![1, 1], vec![2, 1]] {
            let grid = PointSet::canonical_grid(&n).unwrap();
            let rule = WeightedRule::equal_weight(grid);
            let c = check_gfp4(&rule, &n, 1e-10).unwrap();
            assert!(c.exact && c.nodes == c.bound && !c.violated());
        }
    }

    #[test]
    fn coarser_grid_is_not_exact() {
        let grid = PointSet::torus_grid(&[4]).unwrap();
        let c = check_gfp4(&WeightedRule::equal_weight(grid), &[2], 1e-10).unwrap();
        assert!(!c.exact);
    }
}
