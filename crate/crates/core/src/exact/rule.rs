use alloc::vec;
use alloc::vec::Vec;

use crate::numkernel::DenseMatrix;
use crate::spaces::{eval_vec, PointSet, System};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleTag {
    Positive,
    Probability,
    ExactQ(u32),
}

/// Nodes `ξ^ν` with real weights `λ_ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRule {
    pub nodes: PointSet,
    pub weights: Vec<f64>,
    pub tags: Vec<RuleTag>,
}

impl WeightedRule {
    pub fn new(nodes: PointSet, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                got: weights.len(),
            });
        }
        Ok(WeightedRule {
            nodes,
            weights,
            tags: Vec::new(),
        })
    }

    /// Weights `1/m`.
    pub fn equal_weight(nodes: PointSet) -> Self {
        let m = nodes.len();
        let w = if m == 0 { 0.0 } else { 1.0 / m as f64 };
        WeightedRule {
            nodes,
            weights: vec![w; m],
            tags: Vec::new(),
        }
    }

    pub fn with_tag(mut self, tag: RuleTag) -> Self {
        if !self.tags.contains(&tag) {
            self.tags.push(tag);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        let mut s = crate::math::KahanSum::default();
        self.weights.iter().for_each(|&w| s.add(w));
        s.value()
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Checks the invariants promised by the tags.
    pub fn validate_tags(&self, tol: f64) -> Result<()> {
        for t in &self.tags {
            match t {
                RuleTag::Positive if self.min_weight() < -tol => {
                    return Err(Error::PreconditionViolation("positive rule has a negative weight".into()))
                }
                RuleTag::Probability if (self.total_weight() - 1.0).abs() > tol => {
                    return Err(Error::PreconditionViolation("probability rule does not sum to 1".into()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// `Σ λ_ν u(ξ^ν)`.
    pub fn moments<S: System + ?Sized>(&self, sys: &S) -> Vec<f64> {
        let n = sys.len();
        let mut acc = vec![crate::math::KahanSum::default(); n];
        let mut buf = vec![0.0; n];
        for (x, &w) in self.nodes.iter().zip(&self.weights) {
            sys.eval(x, &mut buf);
            for (a, v) in acc.iter_mut().zip(&buf) {
                a.add(w * v);
            }
        }
        acc.iter().map(|a| a.value()).collect()
    }

    /// `Σ λ_ν G(ξ^ν)` with `G(x) = u(x) u(x)ᵀ`.
    pub fn gram<S: System + ?Sized>(&self, sys: &S) -> DenseMatrix {
        let n = sys.len();
        let mut g = DenseMatrix::zeros(n, n);
        let mut buf = vec![0.0; n];
        for (x, &w) in self.nodes.iter().zip(&self.weights) {
            sys.eval(x, &mut buf);
            g.add_outer(w, &buf);
        }
        for i in 0..n {
            for j in 0..i {
                let s = 0.5 * (g[(i, j)] + g[(j, i)]);
                g[(i, j)] = s;
                g[(j, i)] = s;
            }
        }
        g
    }

    /// `Σ λ_ν f(ξ^ν)^q` for `f = Σ b_i u_i`.
    pub fn power_sum<S: System + ?Sized>(&self, sys: &S, b: &[f64], q: u32) -> f64 {
        let mut s = crate::math::KahanSum::default();
        for (x, &w) in self.nodes.iter().zip(&self.weights) {
            let f = crate::numkernel::dot(&eval_vec(sys, x), b);
            s.add(w * crate::math::powi(f, q));
        }
        s.value()
    }
}

/// `f(x) = Σ_j f(ξ^j) ψ_j(x)` with `ψ_j = Σ_i coeffs[j][i] u_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryOperator {
    pub nodes: PointSet,
    /// One row per node, one column per basis function.
    pub coeffs: DenseMatrix,
}

impl RecoveryOperator {
    /// `(ψ_1(x), …, ψ_m(x))`.
    pub fn dual_values<S: System + ?Sized>(&self, sys: &S, x: &[f64]) -> Vec<f64> {
        self.coeffs.matvec(&eval_vec(sys, x))
    }

    /// `Σ_j samples[j] ψ_j(x)`.
    pub fn reconstruct<S: System + ?Sized>(&self, sys: &S, samples: &[f64], x: &[f64]) -> f64 {
        crate::numkernel::dot(&self.dual_values(sys, x), samples)
    }
}
