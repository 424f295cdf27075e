use alloc::vec;
use alloc::vec::Vec;

use super::{lstsq, simplex_standard, sym_eig, DenseMatrix, LpStatus};
use crate::{Error, Result};

/// Value of `max aᵀc` subject to `|v_j · c| ≤ 1` for every constraint row.
#[derive(Debug, Clone)]
pub struct ChebyshevSolution {
    /// Optimal value; `f64::INFINITY` when unbounded.
    pub value: f64,
    pub unbounded: bool,
    /// An optimal `c` (empty when unbounded).
    pub maximizer: Vec<f64>,
    /// A direction `r` with `V r = 0` and `aᵀr > 0` certifying unboundedness.
    pub ray: Option<Vec<f64>>,
}

impl ChebyshevSolution {
    fn unbounded(ray: Vec<f64>) -> Self {
        ChebyshevSolution {
            value: f64::INFINITY,
            unbounded: true,
            maximizer: Vec::new(),
            ray: Some(ray),
        }
    }
}

/// Reusable solver for a fixed constraint matrix `V` (one row per constraint).
///
/// The LP is solved through its dual `min Σ|y_j|` subject to `Vᵀy = a`; the
/// primal maximizer is read off the simplex multipliers.
#[derive(Debug, Clone)]
pub struct ChebyshevLp {
    v: DenseMatrix,
    vt: DenseMatrix,
    std_a: DenseMatrix,
    full_rank: bool,
}

impl ChebyshevLp {
    pub fn new(v: DenseMatrix) -> Result<Self> {
        let (m, n) = (v.rows(), v.cols());
        if n > 200 {
            return Err(Error::CapExceeded {
                what: "lp dimension",
                value: n,
                cap: 200,
            });
        }
        if m > 5000 {
            return Err(Error::CapExceeded {
                what: "lp constraints",
                value: m,
                cap: 5000,
            });
        }
        let vt = v.transpose();
        let full_rank = if m == 0 {
            n == 0
        } else {
            lstsq(&v, &vec![0.0; m], 1e-10)?.rank == n
        };
        let mut std_a = DenseMatrix::zeros(n, 2 * m);
        for i in 0..n {
            for j in 0..m {
                std_a[(i, j)] = vt[(i, j)];
                std_a[(i, m + j)] = -vt[(i, j)];
            }
        }
        Ok(ChebyshevLp {
            v,
            vt,
            std_a,
            full_rank,
        })
    }

    /// `true` when `V` has full column rank, so every objective is bounded.
    pub fn is_full_rank(&self) -> bool {
        self.full_rank
    }

    pub fn solve(&self, a: &[f64]) -> Result<ChebyshevSolution> {
        let (m, n) = (self.v.rows(), self.v.cols());
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.len(),
            });
        }
        let anorm = super::norm2(a);
        if anorm == 0.0 {
            return Ok(ChebyshevSolution {
                value: 0.0,
                unbounded: false,
                maximizer: vec![0.0; n],
                ray: None,
            });
        }
        if m == 0 {
            return Ok(ChebyshevSolution::unbounded(a.to_vec()));
        }
        if !self.full_rank {
            if let Some(ray) = self.ray_for(a)? {
                return Ok(ChebyshevSolution::unbounded(ray));
            }
        }
        let cost = vec![1.0; 2 * m];
        let s = simplex_standard(&self.std_a, a, &cost)?;
        match s.status {
            LpStatus::Optimal => Ok(ChebyshevSolution {
                value: s.objective,
                unbounded: false,
                maximizer: s.duals,
                ray: None,
            }),
            LpStatus::Infeasible => match self.ray_for(a)? {
                Some(ray) => Ok(ChebyshevSolution::unbounded(ray)),
                None => Err(Error::NumericalFailure {
                    msg: "dual LP reported infeasible for a consistent objective".into(),
                    residual: s.infeasibility,
                }),
            },
            LpStatus::Unbounded => Err(Error::NumericalFailure {
                msg: "dual LP of a Chebyshev problem cannot be unbounded".into(),
                residual: f64::INFINITY,
            }),
        }
    }

    /// Least-squares residual of `Vᵀy = a`; a nonzero residual is a ray.
    fn ray_for(&self, a: &[f64]) -> Result<Option<Vec<f64>>> {
        let ls = lstsq(&self.vt, a, 1e-10)?;
        let scale = super::norm2(a).max(1.0);
        if ls.residual_norm > 1e-9 * scale {
            let r = ls.residual;
            let vr = self.v.matvec(&r);
            let leak = super::max_abs(&vr);
            if leak <= 1e-8 * super::norm2(&r).max(1.0) * self.v.max_abs().max(1.0) {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }
}

/// One-shot form of [`ChebyshevLp`]; `constraints` are the vectors `v_j`.
pub fn lp_chebyshev<R: AsRef<[f64]>>(constraints: &[R], dim: usize, a: &[f64]) -> Result<ChebyshevSolution> {
    let v = if constraints.is_empty() {
        DenseMatrix::zeros(0, dim)
    } else {
        DenseMatrix::from_rows(constraints)?
    };
    if v.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.cols(),
        });
    }
    ChebyshevLp::new(v)?.solve(a)
}

/// The dual exponent `p'` used by [`min_weighted_norm_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualExponent {
    One,
    Two,
    Infinity,
}

/// Minimizer of the weighted norm together with a dual witness.
#[derive(Debug, Clone)]
pub struct WeightedNormSolution {
    pub lambda: Vec<f64>,
    /// `(Σ |λ_ω/μ_ω|^{p'} μ_ω)^{1/p'}`, or `max |λ_ω|/μ_ω` for `p' = ∞`.
    pub norm: f64,
    /// Coefficients `y` of the dual problem: `bᵀy = norm` and the sampled
    /// values `(Aᵀy)_ω` have unit dual norm (`Σ μ_ω |·|`, `(Σ μ_ω |·|²)^{1/2}`
    /// or `max |·|` for `p' = ∞, 2, 1` respectively).
    pub witness: Vec<f64>,
}

/// Solution of `A λ = b` minimizing `(Σ |λ_ω/μ_ω|^{p'} μ_ω)^{1/p'}`.
///
/// For `p' = ∞` the minimizer of `max |λ_ω|/μ_ω` is not unique in general;
/// ties are broken by minimizing `Σ|λ_ω|` in a second LP stage.
pub fn min_weighted_norm_solution(
    a: &DenseMatrix,
    b: &[f64],
    mu: &[f64],
    p_dual: DualExponent,
) -> Result<Vec<f64>> {
    Ok(min_weighted_norm(a, b, mu, p_dual)?.lambda)
}

/// [`min_weighted_norm_solution`] with the attained norm and dual witness.
pub fn min_weighted_norm(
    a: &DenseMatrix,
    b: &[f64],
    mu: &[f64],
    p_dual: DualExponent,
) -> Result<WeightedNormSolution> {
    let (m, k) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if mu.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: mu.len(),
        });
    }
    if mu.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::invalid("weights must be positive"));
    }
    let ls = lstsq(a, b, 1e-12)?;
    let scale = super::norm2(b).max(1.0);
    if ls.residual_norm > 1e-8 * scale {
        return Err(Error::Infeasible {
            msg: "moment system is inconsistent".into(),
            residual: ls.residual_norm,
        });
    }
    let (lambda, witness) = match p_dual {
        DualExponent::Two => weighted_min_norm(a, b, mu)?,
        DualExponent::One => min_l1(a, b)?,
        DualExponent::Infinity => min_linf(a, b, mu)?,
    };
    let r = a.matvec(&lambda);
    let res = crate::math::sqrt(r.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum());
    if res > 1e-8 * scale {
        return Err(Error::NumericalFailure {
            msg: "weighted minimum-norm solution misses the moments".into(),
            residual: res,
        });
    }
    let norm = match p_dual {
        DualExponent::Two => crate::math::sqrt(lambda.iter().zip(mu).map(|(l, w)| l * l / w).sum()),
        DualExponent::One => lambda.iter().map(|l| l.abs()).sum(),
        DualExponent::Infinity => lambda.iter().zip(mu).fold(0.0f64, |s, (l, w)| s.max(l.abs() / w)),
    };
    Ok(WeightedNormSolution {
        lambda,
        norm,
        witness,
    })
}

/// `λ = M Aᵀ (A M Aᵀ)⁺ b` with `M = diag(μ)`.
fn weighted_min_norm(a: &DenseMatrix, b: &[f64], mu: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (m, k) = (a.rows(), a.cols());
    let mut g = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..=i {
            let s: f64 = (0..k).map(|w| a[(i, w)] * mu[w] * a[(j, w)]).sum();
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    let e = sym_eig(&g)?;
    let top = e.values.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let mut z = vec![0.0; m];
    for (idx, &ev) in e.values.iter().enumerate() {
        if ev <= 1e-12 * top {
            continue;
        }
        let v = e.vectors.column(idx);
        let coef = super::dot(&v, b) / ev;
        for (zi, vi) in z.iter_mut().zip(&v) {
            *zi += coef * vi;
        }
    }
    let atz = a.t_matvec(&z);
    let lambda = atz.iter().zip(mu).map(|(x, w)| x * w).collect();
    let q: f64 = atz.iter().zip(mu).map(|(x, w)| w * x * x).sum();
    let witness = if q > 0.0 {
        let s = 1.0 / crate::math::sqrt(q);
        z.iter().map(|v| v * s).collect()
    } else {
        z
    };
    Ok((lambda, witness))
}

fn min_l1(a: &DenseMatrix, b: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (m, k) = (a.rows(), a.cols());
    let mut s = DenseMatrix::zeros(m, 2 * k);
    for i in 0..m {
        for j in 0..k {
            s[(i, j)] = a[(i, j)];
            s[(i, k + j)] = -a[(i, j)];
        }
    }
    let lp = simplex_standard(&s, b, &vec![1.0; 2 * k])?;
    if lp.status != LpStatus::Optimal {
        return Err(Error::Infeasible {
            msg: "l1 weight LP has no optimum".into(),
            residual: lp.infeasibility,
        });
    }
    Ok(((0..k).map(|j| lp.x[j] - lp.x[k + j]).collect(), lp.duals))
}

fn min_linf(a: &DenseMatrix, b: &[f64], mu: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (m, k) = (a.rows(), a.cols());
    // Stage 1: variables [λ⁺, λ⁻, t, s]; minimize t with λ⁺+λ⁻ − μt + s = 0.
    let cols = 3 * k + 1;
    let mut s1 = DenseMatrix::zeros(m + k, cols);
    let mut rhs = vec![0.0; m + k];
    for i in 0..m {
        for j in 0..k {
            s1[(i, j)] = a[(i, j)];
            s1[(i, k + j)] = -a[(i, j)];
        }
        rhs[i] = b[i];
    }
    for w in 0..k {
        s1[(m + w, w)] = 1.0;
        s1[(m + w, k + w)] = 1.0;
        s1[(m + w, 2 * k)] = -mu[w];
        s1[(m + w, 2 * k + 1 + w)] = 1.0;
    }
    let mut cost = vec![0.0; cols];
    cost[2 * k] = 1.0;
    let lp = simplex_standard(&s1, &rhs, &cost)?;
    if lp.status != LpStatus::Optimal {
        return Err(Error::Infeasible {
            msg: "l-infinity weight LP has no optimum".into(),
            residual: lp.infeasibility,
        });
    }
    let witness = lp.duals[..m].to_vec();
    let tstar = lp.x[2 * k];
    // Stage 2: keep max|λ/μ| at its optimum and minimize Σ|λ|.
    let cap = tstar * (1.0 + 1e-11) + 1e-15;
    let cols2 = 3 * k;
    let mut s2 = DenseMatrix::zeros(m + k, cols2);
    let mut rhs2 = vec![0.0; m + k];
    for i in 0..m {
        for j in 0..k {
            s2[(i, j)] = a[(i, j)];
            s2[(i, k + j)] = -a[(i, j)];
        }
        rhs2[i] = b[i];
    }
    for w in 0..k {
        s2[(m + w, w)] = 1.0;
        s2[(m + w, k + w)] = 1.0;
        s2[(m + w, 2 * k + w)] = 1.0;
        rhs2[m + w] = mu[w] * cap;
    }
    let mut cost2 = vec![0.0; cols2];
    cost2[..2 * k].iter_mut().for_each(|c| *c = 1.0);
    let lp2 = simplex_standard(&s2, &rhs2, &cost2)?;
    let x = if lp2.status == LpStatus::Optimal { lp2.x } else { lp.x };
    Ok(((0..k).map(|j| x[j] - x[k + j]).collect(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_examples() {
        let s = lp_chebyshev(&[[1.0]], 1, &[1.0]).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        let s = lp_chebyshev(&[[1.0, 1.0], [1.0, -1.0]], 2, &[1.0, 0.0]).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        let empty: [[f64; 1]; 0] = [];
        let s = lp_chebyshev(&empty, 1, &[1.0]).unwrap();
        assert!(s.unbounded);
    }

    #[test]
    fn maximizer_is_feasible_and_optimal() {
        let v = [[1.0, 2.0], [3.0, -1.0], [0.5, 0.5]];
        let s = lp_chebyshev(&v, 2, &[1.0, 1.0]).unwrap();
        for row in &v {
            assert!(super::super::dot(row, &s.maximizer).abs() <= 1.0 + 1e-12);
        }
        assert!((super::super::dot(&[1.0, 1.0], &s.maximizer) - s.value).abs() < 1e-12);
    }

    #[test]
    fn ray_certifies_unbounded() {
        let s = lp_chebyshev(&[[1.0, 0.0]], 2, &[1.0, 1.0]).unwrap();
        assert!(s.unbounded);
        let r = s.ray.unwrap();
        assert!(r[0].abs() < 1e-12 && r[1] > 0.0);
    }

    #[test]
    fn weighted_norm_examples() {
        let a = DenseMatrix::from_rows(&[[1.0, 1.0]]).unwrap();
        let l = min_weighted_norm_solution(&a, &[2.0], &[0.5, 0.5], DualExponent::Two).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-12 && (l[1] - 1.0).abs() < 1e-12);
        let l = min_weighted_norm_solution(&a, &[1.0], &[1.0, 1.0], DualExponent::Infinity).unwrap();
        assert!((l[0] - 0.5).abs() < 1e-9 && (l[1] - 0.5).abs() < 1e-9);
        let a = DenseMatrix::from_rows(&[[1.0, 0.0]]).unwrap();
        for p in [DualExponent::One, DualExponent::Two, DualExponent::Infinity] {
            let l = min_weighted_norm_solution(&a, &[1.0], &[1.0, 1.0], p).unwrap();
            assert!((l[0] - 1.0).abs() < 1e-9 && l[1].abs() < 1e-9, "{p:?}: {l:?}");
        }
    }

    #[test]
    fn witness_attains_the_norm() {
        let a = DenseMatrix::from_rows(&[[1.0, 1.0, 1.0], [0.0, 1.0, 2.0]]).unwrap();
        let b = [1.0, 0.7];
        let mu = [0.2, 0.5, 0.3];
        for p in [DualExponent::One, DualExponent::Two, DualExponent::Infinity] {
            let s = min_weighted_norm(&a, &b, &mu, p).unwrap();
            let by = super::super::dot(&b, &s.witness);
            assert!((by - s.norm).abs() < 1e-9, "{p:?}: {by} vs {}", s.norm);
            let vals = a.t_matvec(&s.witness);
            let dual = match p {
                DualExponent::One => vals.iter().fold(0.0f64, |m, v| m.max(v.abs())),
                DualExponent::Two => vals.iter().zip(&mu).map(|(v, w)| w * v * v).sum::<f64>().sqrt(),
                DualExponent::Infinity => vals.iter().zip(&mu).map(|(v, w)| w * v.abs()).sum(),
            };
            assert!((dual - 1.0).abs() < 1e-9, "{p:?}: dual norm {dual}");
        }
    }

    #[test]
    fn inconsistent_system_is_infeasible() {
        let a = DenseMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let e = min_weighted_norm_solution(&a, &[1.0, 2.0], &[1.0, 1.0], DualExponent::Two);
        assert!(matches!(e, Err(Error::Infeasible { .. })));
    }
}
