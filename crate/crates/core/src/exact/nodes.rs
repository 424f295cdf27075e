use alloc::vec;
use alloc::vec::Vec;

use super::rule::{RecoveryOperator, WeightedRule};
use crate::numkernel::{norm2, DenseMatrix, Lu};
use crate::spaces::{design_matrix, PointSet, System};
use crate::{Error, Result};

/// Relative pivot floor below which a candidate is treated as not enlarging
/// the determinant.
const PIVOT_REL: f64 = 1e-10;

/// Pivots below this fraction of the largest matrix entry count as zero.
const PIVOT_ABS: f64 = 1e-13;

/// Cap on the system size for determinant selection.
pub const MAX_SELECT_DIM: usize = 200;

/// Result of the determinant greedy.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSelection {
    /// Candidate indices, in selection order.
    pub indices: Vec<usize>,
    pub nodes: PointSet,
    /// Basis functions kept (all of them unless dependent ones were skipped).
    pub functions: Vec<usize>,
    /// Elimination pivots; their product is `±det U` on the kept functions.
    pub pivots: Vec<f64>,
}

impl NodeSelection {
    pub fn log_abs_det(&self) -> f64 {
        self.pivots.iter().map(|p| crate::math::ln(p.abs())).sum()
    }

    pub fn abs_det(&self) -> f64 {
        self.pivots.iter().map(|p| p.abs()).product()
    }
}

/// Greedy maximization of `|det U(ξ¹,…,ξᵏ)|`, one basis function per step.
///
/// Step `k` picks the candidate with the largest residual in column `k` after
/// eliminating the previously chosen rows; ties go to the lowest index. With
/// `skip` set, a column with no usable pivot is dropped instead of failing.
fn eliminate(mut r: DenseMatrix, skip: bool) -> Result<(Vec<usize>, Vec<usize>, Vec<f64>)> {
    let (c, n) = (r.rows(), r.cols());
    let scale: Vec<f64> = (0..n)
        .map(|k| (0..c).fold(0.0f64, |m, i| m.max(r[(i, k)].abs())))
        .collect();
    let global = scale.iter().fold(0.0f64, |m, &v| m.max(v));
    let mut used = vec![false; c];
    let (mut rows, mut cols, mut pivots) = (Vec::new(), Vec::new(), Vec::new());
    for k in 0..n {
        let mut best = None;
        let mut best_val = 0.0;
        for i in 0..c {
            if !used[i] && r[(i, k)].abs() > best_val {
                best_val = r[(i, k)].abs();
                best = Some(i);
            }
        }
        let ok = best_val > PIVOT_REL * scale[k] + PIVOT_ABS * global;
        let Some(p) = best.filter(|_| ok) else {
            if skip {
                continue;
            }
            return Err(Error::SpanDeficiency { step: k + 1 });
        };
        used[p] = true;
        let piv = r[(p, k)];
        let prow: Vec<f64> = r.row(p)[k..].to_vec();
        for i in 0..c {
            if used[i] {
                continue;
            }
            let f = r[(i, k)] / piv;
            if f != 0.0 {
                for (v, pv) in r.row_mut(i)[k..].iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
            }
        }
        rows.push(p);
        cols.push(k);
        pivots.push(piv);
    }
    Ok((rows, cols, pivots))
}

fn check_size<S: System + ?Sized>(sys: &S, candidates: &PointSet) -> Result<()> {
    if sys.len() > MAX_SELECT_DIM {
        return Err(Error::CapExceeded {
            what: "system size for node selection",
            value: sys.len(),
            cap: MAX_SELECT_DIM,
        });
    }
    if candidates.dim() != sys.point_dim() {
        return Err(Error::DimensionMismatch {
            expected: sys.point_dim(),
            got: candidates.dim(),
        });
    }
    Ok(())
}

/// Chooses `N` nodes with `det U ≠ 0` by the determinant greedy.
pub fn select_nodes_by_determinant<S: System + ?Sized>(sys: &S, candidates: &PointSet) -> Result<NodeSelection> {
    check_size(sys, candidates)?;
    let (rows, cols, pivots) = eliminate(design_matrix(sys, candidates), false)?;
    Ok(NodeSelection {
        nodes: candidates.select(&rows),
        indices: rows,
        functions: cols,
        pivots,
    })
}

/// Like [`select_nodes_by_determinant`] but skips basis functions that are
/// dependent on the earlier ones over `candidates`.
pub fn independent_nodes<S: System + ?Sized>(sys: &S, candidates: &PointSet) -> Result<NodeSelection> {
    check_size(sys, candidates)?;
    let (rows, cols, pivots) = eliminate(design_matrix(sys, candidates), true)?;
    Ok(NodeSelection {
        nodes: candidates.select(&rows),
        indices: rows,
        functions: cols,
        pivots,
    })
}

/// Dual basis `ψ_j` with `ψ_j(ξ^i) = δ_ij`.
pub fn build_recovery<S: System + ?Sized>(sys: &S, nodes: &PointSet) -> Result<RecoveryOperator> {
    let n = sys.len();
    if nodes.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: nodes.len(),
        });
    }
    let u = design_matrix(sys, nodes);
    let lu = Lu::new(&u)?;
    // ψ_j = Σ_i (U⁻¹)_{ij} u_i, so row j of coeffs is column j of U⁻¹.
    let mut coeffs = DenseMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        let col = lu.solve(&e)?;
        coeffs.row_mut(j).copy_from_slice(&col);
    }
    Ok(RecoveryOperator {
        nodes: nodes.clone(),
        coeffs,
    })
}

/// Rule with `≤ N` nodes integrating the span exactly against its moments.
pub fn exact_cubature<S: System + ?Sized>(sys: &S, candidates: &PointSet) -> Result<WeightedRule> {
    exact_cubature_with_moments(sys, &sys.integrals(), candidates)
}

/// [`exact_cubature`] against an arbitrary moment vector.
pub fn exact_cubature_with_moments<S: System + ?Sized>(
    sys: &S,
    moments: &[f64],
    candidates: &PointSet,
) -> Result<WeightedRule> {
    if moments.len() != sys.len() {
        return Err(Error::DimensionMismatch {
            expected: sys.len(),
            got: moments.len(),
        });
    }
    let sel = select_nodes_by_determinant(sys, candidates)?;
    let u = design_matrix(sys, &sel.nodes);
    let lambda = Lu::new(&u)?.solve_transpose(moments)?;
    let rule = WeightedRule::new(sel.nodes, lambda)?;
    let res = super::moment_residual(sys, &rule, moments);
    if res > 1e-8 * norm2(moments).max(1.0) {
        return Err(Error::NumericalFailure {
            msg: "cubature moment residual above tolerance".into(),
            residual: res,
        });
    }
    Ok(rule)
}

/// Reproducing-kernel recovery `f(x) = Σ λ_j f(ξ^j) D(x, ξ^j)` from a rule
/// exact for `L₂` on an orthonormal span.
pub fn recovery_from_exact_l2<S: System + ?Sized>(rule: &WeightedRule, sys: &S) -> Result<RecoveryOperator> {
    if !sys.is_orthonormal() {
        return Err(Error::PreconditionViolation("recovery needs an orthonormal system".into()));
    }
    let n = sys.len();
    let g = rule.gram(sys);
    let mut dev = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            let t = if i == k { 1.0 } else { 0.0 };
            dev = dev.max((g[(i, k)] - t).abs());
        }
    }
    if dev > 1e-8 {
        return Err(Error::PreconditionViolation(alloc::format!(
            "rule is not exact for L2 on the span (Gram deviation {dev:e})"
        )));
    }
    let u = design_matrix(sys, &rule.nodes);
    let mut coeffs = DenseMatrix::zeros(rule.len(), n);
    for j in 0..rule.len() {
        for (c, v) in coeffs.row_mut(j).iter_mut().zip(u.row(j)) {
            *c = rule.weights[j] * v;
        }
    }
    Ok(RecoveryOperator {
        nodes: rule.nodes.clone(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;
    use crate::spaces::{FrequencySet, Frame, ModeKind, RealMode, TrigSystem};

    fn modes(list: &[(i64, ModeKind)]) -> TrigSystem {
        let m = list
            .iter()
            .map(|&(k, kind)| RealMode {
                freq: alloc::vec![k],
                kind,
                scale: 1.0,
            })
            .collect();
        TrigSystem::from_modes(1, m, false).unwrap()
    }

    fn pts(v: &[f64]) -> PointSet {
        let rows: Vec<Vec<f64>> = v.iter().map(|&x| alloc::vec![x]).collect();
        PointSet::new(1, Frame::Torus, &rows).unwrap()
    }

    #[test]
    fn constant_selects_one_node() {
        let s = modes(&[(0, ModeKind::Cos)]);
        let sel = select_nodes_by_determinant(&s, &pts(&[1.0, 2.0])).unwrap();
        assert_eq!(sel.indices, alloc::vec![0]);
        assert!((sel.abs_det() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cosine_picks_zero_and_pi() {
        let s = modes(&[(0, ModeKind::Cos), (1, ModeKind::Cos)]);
        let sel = select_nodes_by_determinant(&s, &pts(&[0.0, PI / 2.0, PI])).unwrap();
        assert_eq!(sel.indices, alloc::vec![0, 2]);
        assert!((sel.abs_det() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sine_on_zeros_is_deficient() {
        let s = modes(&[(0, ModeKind::Cos), (1, ModeKind::Sin)]);
        let err = select_nodes_by_determinant(&s, &pts(&[0.0, PI])).unwrap_err();
        assert_eq!(err, Error::SpanDeficiency { step: 2 });
    }

    #[test]
    fn recovery_dual_basis() {
        let s = modes(&[(0, ModeKind::Cos), (1, ModeKind::Cos)]);
        let r = build_recovery(&s, &pts(&[0.0, PI])).unwrap();
        for x in [0.3, 1.7, 4.0] {
            let psi = r.dual_values(&s, &[x]);
            assert!((psi[0] - (1.0 + x.cos()) / 2.0).abs() < 1e-12);
            assert!((psi[1] - (1.0 - x.cos()) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cubature_sine_forced_weights() {
        let s = modes(&[(0, ModeKind::Cos), (1, ModeKind::Sin)]);
        let r = exact_cubature(&s, &pts(&[0.0, PI / 2.0])).unwrap();
        assert!((r.weights[0] - 1.0).abs() < 1e-12 && r.weights[1].abs() < 1e-12);
    }

    #[test]
    fn cubature_full_first_degree() {
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[1]).unwrap());
        let grid = PointSet::torus_grid(&[64]).unwrap();
        let r = exact_cubature(&s, &grid).unwrap();
        assert!(r.len() <= 3);
        assert!(super::super::is_exact_for(&s, &r, 1e-8));
    }

    #[test]
    fn grid_rule_recovers() {
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[2]).unwrap());
        let rule = WeightedRule::equal_weight(PointSet::canonical_grid(&[2]).unwrap());
        let op = recovery_from_exact_l2(&rule, &s).unwrap();
        let b = [0.3, -1.0, 0.5, 2.0, 0.1];
        let samples: Vec<f64> = rule
            .nodes
            .iter()
            .map(|x| crate::numkernel::dot(&crate::spaces::eval_vec(&s, x), &b))
            .collect();
        for x in [0.1, 2.2, 5.9] {
            let f = crate::numkernel::dot(&crate::spaces::eval_vec(&s, &[x]), &b);
            assert!((op.reconstruct(&s, &samples, &[x]) - f).abs() < 1e-9);
        }
    }

    #[test]
    fn non_exact_rule_rejected() {
        let s = TrigSystem::sincos(1);
        let rule = WeightedRule::equal_weight(pts(&[0.0, 1.0]));
        assert!(matches!(
            recovery_from_exact_l2(&rule, &s),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
