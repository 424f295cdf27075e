use alloc::vec;
use alloc::vec::Vec;

use super::{lstsq, DenseMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct NnlsSolution {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    /// `max_j max(0, (Aᵀ(b − Ax))_j)`, zero at an exact KKT point.
    pub kkt: f64,
}

/// Lawson–Hanson active-set nonnegative least squares.
pub fn nnls(a: &DenseMatrix, b: &[f64]) -> Result<NnlsSolution> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if n > 2000 {
        return Err(Error::CapExceeded {
            what: "nnls columns",
            value: n,
            cap: 2000,
        });
    }
    let bnorm = super::norm2(b).max(1.0);
    let anorm = a.max_abs().max(f64::MIN_POSITIVE);
    let wtol = 1e-14 * anorm * bnorm * crate::math::sqrt(m.max(1) as f64);
    let zero_tol = 1e-15;

    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    let mut blocked = vec![false; n];
    let cap = 3 * n.max(1);
    let mut iterations = 0;

    let gradient = |x: &[f64]| -> Vec<f64> {
        let ax = a.matvec(x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        a.t_matvec(&r)
    };
    let solve_passive = |passive: &[bool]| -> Result<Vec<f64>> {
        let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let sub = a.select_cols(&idx);
        let s = lstsq(&sub, b, 1e-13)?;
        let mut z = vec![0.0; n];
        for (k, &j) in idx.iter().enumerate() {
            z[j] = s.x[k];
        }
        Ok(z)
    };

    let mut w = gradient(&x);
    loop {
        let mut t = None;
        let mut best = wtol;
        for j in 0..n {
            if !passive[j] && !blocked[j] && w[j] > best {
                best = w[j];
                t = Some(j);
            }
        }
        let Some(t) = t else { break };
        iterations += 1;
        if iterations > cap {
            let r = residual_norm(a, b, &x);
            return Err(Error::NumericalFailure {
                msg: "nnls iteration cap exceeded".into(),
                residual: r,
            });
        }
        passive[t] = true;
        let mut z = solve_passive(&passive)?;
        if z[t] <= zero_tol {
            // Entering column cannot carry positive weight; skip it this round.
            passive[t] = false;
            blocked[t] = true;
            continue;
        }
        let mut inner = 0;
        while (0..n).any(|j| passive[j] && z[j] <= zero_tol) {
            inner += 1;
            if inner > 3 * n.max(1) {
                return Err(Error::NumericalFailure {
                    msg: "nnls inner loop did not settle".into(),
                    residual: residual_norm(a, b, &x),
                });
            }
            let mut alpha = 1.0f64;
            for j in 0..n {
                if passive[j] && z[j] <= zero_tol {
                    let denom = x[j] - z[j];
                    if denom > 0.0 {
                        alpha = alpha.min(x[j] / denom);
                    } else {
                        alpha = 0.0;
                    }
                }
            }
            for j in 0..n {
                if passive[j] {
                    x[j] += alpha * (z[j] - x[j]);
                }
            }
            for j in 0..n {
                if passive[j] && x[j] <= zero_tol {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
            z = solve_passive(&passive)?;
        }
        x = z;
        for j in 0..n {
            if !passive[j] {
                x[j] = 0.0;
            }
        }
        blocked.iter_mut().for_each(|v| *v = false);
        w = gradient(&x);
    }
    let kkt = w
        .iter()
        .enumerate()
        .filter(|(j, _)| !passive[*j])
        .fold(0.0f64, |acc, (_, v)| acc.max(*v));
    Ok(NnlsSolution {
        residual_norm: residual_norm(a, b, &x),
        x,
        iterations,
        kkt,
    })
}

fn residual_norm(a: &DenseMatrix, b: &[f64], x: &[f64]) -> f64 {
    let ax = a.matvec(x);
    crate::math::sqrt(b.iter().zip(&ax).map(|(bi, ai)| (bi - ai) * (bi - ai)).sum())
}
