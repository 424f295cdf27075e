//! Two-phase dense tableau simplex for `min cᵀx, A x = b, x ≥ 0`.
//!
//! Entering columns follow Dantzig's rule until a run of degenerate pivots is
//! seen, after which Bland's smallest-index rule takes over for the rest of
//! the solve. Both phases run on a slightly perturbed right-hand side; at the
//! end the basic values are recomputed from the true one and any that went
//! negative are pivoted out by the dual simplex method.

use alloc::vec;
use alloc::vec::Vec;

use super::{DenseMatrix, Lu};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct StandardLp {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    /// Equality multipliers `y` with `Aᵀy ≤ c` and `bᵀy = cᵀx` at optimum.
    pub duals: Vec<f64>,
    pub pivots: usize,
    /// Phase-one infeasibility left when the status is `Infeasible`.
    pub infeasibility: f64,
}

const OPT_TOL: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-11;
const DEGENERATE_STREAK: usize = 50;
/// Ratios this close count as ties, broken by smallest basic index.
const RATIO_TIE: f64 = 1e-12;
/// Relative size of the right-hand-side perturbation.
const PERTURBATION: f64 = 1e-9;

struct Tableau {
    m: usize,
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c);
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[c];
            if f == 0.0 {
                continue;
            }
            for (x, &pj) in row.iter_mut().zip(prow.iter()) {
                *x -= f * pj;
            }
            row[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the objective row (row `m`). Columns with
    /// `allowed[j] == false` never enter. With `floor`, stops as soon as the
    /// objective value reaches it.
    fn optimize(&mut self, allowed: &[bool], pivots: &mut usize, cap: usize, floor: Option<f64>) -> Result<bool> {
        let m = self.m;
        let mut bland = false;
        let mut streak = 0;
        loop {
            if floor.is_some_and(|f| -self.rhs(m) <= f) {
                return Ok(true);
            }
            let mut enter = None;
            let mut best = -OPT_TOL;
            for (j, &ok) in allowed.iter().enumerate() {
                if !ok {
                    continue;
                }
                let d = self.at(m, j);
                if bland {
                    if d < -OPT_TOL {
                        enter = Some(j);
                        break;
                    }
                } else if d < best {
                    best = d;
                    enter = Some(j);
                }
            }
            let Some(c) = enter else { return Ok(true) };
            let mut leave: Option<usize> = None;
            let mut ratio = f64::INFINITY;
            for i in 0..m {
                let a = self.at(i, c);
                if a > PIVOT_TOL {
                    let q = self.rhs(i).max(0.0) / a;
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            let tie = RATIO_TIE * ratio.max(1.0);
                            q < ratio - tie || (q <= ratio + tie && self.basis[i] < self.basis[l])
                        }
                    };
                    if better {
                        ratio = q;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else { return Ok(false) };
            if ratio <= 1e-12 {
                streak += 1;
                if streak > DEGENERATE_STREAK {
                    bland = true;
                }
            } else {
                streak = 0;
            }
            self.pivot(r, c);
            *pivots += 1;
            if *pivots > cap {
                return Err(Error::NumericalFailure {
                    msg: "simplex pivot cap exceeded".into(),
                    residual: self.rhs(m).abs(),
                });
            }
        }
    }

    /// Dual simplex on a dual-feasible tableau: pivots out negative basic
    /// values. Returns `false` if some row proves primal infeasibility.
    fn dual_repair(&mut self, allowed: &[bool], pivots: &mut usize, cap: usize, tol: f64) -> Result<bool> {
        let m = self.m;
        loop {
            let mut leave = None;
            let mut worst = -tol;
            for i in 0..m {
                if self.rhs(i) < worst {
                    worst = self.rhs(i);
                    leave = Some(i);
                }
            }
            let Some(r) = leave else { break };
            let mut enter = None;
            let mut ratio = f64::INFINITY;
            for (j, &ok) in allowed.iter().enumerate() {
                let a = self.at(r, j);
                if ok && a < -PIVOT_TOL {
                    let q = self.at(m, j).max(0.0) / -a;
                    if q < ratio {
                        ratio = q;
                        enter = Some(j);
                    }
                }
            }
            let Some(c) = enter else { return Ok(false) };
            self.pivot(r, c);
            *pivots += 1;
            if *pivots > cap {
                return Err(Error::NumericalFailure {
                    msg: "dual simplex pivot cap exceeded".into(),
                    residual: worst,
                });
            }
        }
        for i in 0..m {
            let w = self.width;
            let v = &mut self.t[i * w + w - 1];
            *v = v.max(0.0);
        }
        Ok(true)
    }
}

/// Deterministic value in `[0, 1)` that differs from row to row.
fn spread(i: usize) -> f64 {
    let h = (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 11;
    h as f64 / (1u64 << 53) as f64
}

/// Solves `min cᵀx` subject to `A x = b`, `x ≥ 0`.
pub fn simplex_standard(a: &DenseMatrix, b: &[f64], c: &[f64]) -> Result<StandardLp> {
    solve(a, b, c, PERTURBATION)
}

fn solve(a: &DenseMatrix, b: &[f64], c: &[f64], perturbation: f64) -> Result<StandardLp> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let width = n + m + 1;
    let bscale = b.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let mut t = vec![0.0; (m + 1) * width];
    let sign: Vec<f64> = b.iter().map(|&v| if v < 0.0 { -1.0 } else { 1.0 }).collect();
    for i in 0..m {
        for j in 0..n {
            t[i * width + j] = sign[i] * a[(i, j)];
        }
        t[i * width + n + i] = 1.0;
        t[i * width + width - 1] = sign[i] * b[i] + perturbation * bscale * (1.0 + spread(i));
    }
    // Phase-one objective: sum of artificials, expressed in reduced costs.
    for i in 0..m {
        for j in 0..n {
            t[m * width + j] -= t[i * width + j];
        }
        t[m * width + width - 1] -= t[i * width + width - 1];
    }
    let mut tab = Tableau {
        m,
        width,
        t,
        basis: (n..n + m).collect(),
    };
    let cap = 50 * (m + n) + 1000;
    let mut pivots = 0;
    let all = vec![true; n + m];
    tab.optimize(&all, &mut pivots, cap, Some(1e-11 * bscale))?;
    let infeasibility = -tab.rhs(m);
    if infeasibility > 1e-9 * bscale {
        if perturbation > 0.0 {
            return solve(a, b, c, 0.0);
        }
        return Ok(StandardLp {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            objective: f64::NAN,
            duals: vec![0.0; m],
            pivots,
            infeasibility,
        });
    }
    // Drive artificials out of the basis where a structural column can replace them.
    for i in 0..m {
        if tab.basis[i] >= n {
            let mut best = None;
            let mut mag = 1e-9;
            for j in 0..n {
                let v = tab.at(i, j).abs();
                if v > mag {
                    mag = v;
                    best = Some(j);
                }
            }
            if let Some(j) = best {
                tab.pivot(i, j);
                pivots += 1;
            }
        }
    }
    // Phase-two objective row.
    let cost = |j: usize| if j < n { c[j] } else { 0.0 };
    for j in 0..width {
        let mut d = if j < n + m { cost(j) } else { 0.0 };
        for i in 0..m {
            d -= cost(tab.basis[i]) * tab.at(i, j);
        }
        tab.t[m * width + j] = d;
    }
    let mut allowed = vec![false; n + m];
    allowed[..n].iter_mut().for_each(|v| *v = true);
    let bounded = tab.optimize(&allowed, &mut pivots, cap, None)?;
    if !bounded {
        return Ok(StandardLp {
            status: LpStatus::Unbounded,
            x: vec![0.0; n],
            objective: f64::NEG_INFINITY,
            duals: vec![0.0; m],
            pivots,
            infeasibility: 0.0,
        });
    }
    if perturbation > 0.0 {
        // Basic values for the true right-hand side (the slack block of the
        // tableau holds the basis inverse), then dual simplex pivots until
        // they are nonnegative again.
        let bt: Vec<f64> = (0..m).map(|i| sign[i] * b[i]).collect();
        for i in 0..m {
            let v: f64 = (0..m).map(|k| tab.at(i, n + k) * bt[k]).sum();
            tab.t[i * width + width - 1] = v;
        }
        if !tab.dual_repair(&allowed, &mut pivots, cap, 1e-11 * bscale)? {
            return solve(a, b, c, 0.0);
        }
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let mut duals: Vec<f64> = (0..m).map(|i| -sign[i] * tab.at(m, n + i)).collect();
    // Refine primal and dual values from the final basis.
    let mut bmat = DenseMatrix::zeros(m, m);
    for (k, &j) in tab.basis.iter().enumerate() {
        for i in 0..m {
            bmat[(i, k)] = if j < n {
                sign[i] * a[(i, j)]
            } else if j - n == i {
                1.0
            } else {
                0.0
            };
        }
    }
    if let Ok(lu) = Lu::new(&bmat) {
        if lu.pivot_ratio() > 1e-12 {
            let bt: Vec<f64> = (0..m).map(|i| sign[i] * b[i]).collect();
            let cb: Vec<f64> = tab.basis.iter().map(|&j| cost(j)).collect();
            if let (Ok(xb), Ok(yt)) = (lu.solve(&bt), lu.solve_transpose(&cb)) {
                if xb.iter().all(|v| *v > -1e-9 * bscale) {
                    x.iter_mut().for_each(|v| *v = 0.0);
                    for (k, &j) in tab.basis.iter().enumerate() {
                        if j < n {
                            x[j] = xb[k].max(0.0);
                        }
                    }
                }
                duals = (0..m).map(|i| sign[i] * yt[i]).collect();
            }
        }
    }
    let objective = super::dot(c, &x);
    Ok(StandardLp {
        status: LpStatus::Optimal,
        x,
        objective,
        duals,
        pivots,
        infeasibility: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_optimum_and_duals() {
        // min -x1 - 2x2, x1 + x2 + s1 = 4, x2 + s2 = 3.
        let a = DenseMatrix::from_rows(&[[1.0, 1.0, 1.0, 0.0], [0.0, 1.0, 0.0, 1.0]]).unwrap();
        let s = simplex_standard(&a, &[4.0, 3.0], &[-1.0, -2.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 7.0).abs() < 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && (s.x[1] - 3.0).abs() < 1e-12);
        let by = 4.0 * s.duals[0] + 3.0 * s.duals[1];
        assert!((by - s.objective).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = DenseMatrix::from_rows(&[[1.0, 1.0]]).unwrap();
        let s = simplex_standard(&a, &[-1.0], &[1.0, 1.0]).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        let a = DenseMatrix::from_rows(&[[1.0, -1.0]]).unwrap();
        let s = simplex_standard(&a, &[1.0], &[0.0, -1.0]).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = DenseMatrix::from_rows(&[[1.0, 1.0], [2.0, 2.0]]).unwrap();
        let s = simplex_standard(&a, &[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-12);
    }
}
