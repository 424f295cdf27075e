use alloc::vec;
use alloc::vec::Vec;

use super::DenseMatrix;
use crate::{Error, Result};

/// Least-squares solution of `A x ≈ b` with its numerical rank and residual.
#[derive(Debug, Clone)]
pub struct Lstsq {
    pub x: Vec<f64>,
    pub rank: usize,
    /// `b − A x`.
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    /// Column order chosen by the pivoting; the first `rank` entries are the
    /// independent columns.
    pub pivots: Vec<usize>,
}

/// Householder QR with column pivoting. Columns whose diagonal falls below
/// `rcond · |R₀₀|` are treated as dependent and get zero coefficients.
pub fn lstsq(a: &DenseMatrix, b: &[f64], rcond: f64) -> Result<Lstsq> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    let mut r = a.clone();
    let mut qtb = b.to_vec();
    let mut piv: Vec<usize> = (0..n).collect();
    let mut norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| r[(i, j)] * r[(i, j)]).sum())
        .collect();
    let steps = m.min(n);
    let mut rank = 0;
    let mut r00 = 0.0;
    for k in 0..steps {
        // Recompute remaining column norms to avoid downdating drift.
        for j in k..n {
            norms[j] = (k..m).map(|i| r[(i, j)] * r[(i, j)]).sum();
        }
        let mut p = k;
        for j in k + 1..n {
            if norms[j] > norms[p] {
                p = j;
            }
        }
        if p != k {
            for i in 0..m {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, p)];
                r[(i, p)] = t;
            }
            piv.swap(k, p);
            norms.swap(k, p);
        }
        let alpha = crate::math::sqrt(norms[k]);
        if k == 0 {
            r00 = alpha;
        }
        if alpha == 0.0 || alpha <= rcond * r00 {
            break;
        }
        rank += 1;
        let x0 = r[(k, k)];
        let beta = if x0 >= 0.0 { -alpha } else { alpha };
        // v = x − beta e₁, stored in column k below the diagonal.
        let v0 = x0 - beta;
        let mut vnorm2 = v0 * v0;
        for i in k + 1..m {
            vnorm2 += r[(i, k)] * r[(i, k)];
        }
        r[(k, k)] = beta;
        if vnorm2 == 0.0 {
            continue;
        }
        let mut v = vec![0.0; m - k];
        v[0] = v0;
        for i in k + 1..m {
            v[i - k] = r[(i, k)];
            r[(i, k)] = 0.0;
        }
        for j in k + 1..n {
            let s: f64 = (k..m).map(|i| v[i - k] * r[(i, j)]).sum();
            let f = 2.0 * s / vnorm2;
            for i in k..m {
                r[(i, j)] -= f * v[i - k];
            }
        }
        let s: f64 = (k..m).map(|i| v[i - k] * qtb[i]).sum();
        let f = 2.0 * s / vnorm2;
        for i in k..m {
            qtb[i] -= f * v[i - k];
        }
    }
    let mut z = vec![0.0; n];
    for i in (0..rank).rev() {
        let mut s = qtb[i];
        for j in i + 1..rank {
            s -= r[(i, j)] * z[j];
        }
        z[i] = s / r[(i, i)];
    }
    let mut x = vec![0.0; n];
    for (k, &p) in piv.iter().enumerate() {
        x[p] = z[k];
    }
    let ax = a.matvec(&x);
    let residual: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let residual_norm = super::norm2(&residual);
    Ok(Lstsq {
        x,
        rank,
        residual,
        residual_norm,
        pivots: piv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overdetermined_fit() {
        // Fit y = 1 + 2t exactly through four points.
        let a = DenseMatrix::from_rows(&[[1.0, 0.0], [1.0, 1.0], [1.0, 2.0], [1.0, 3.0]]).unwrap();
        let s = lstsq(&a, &[1.0, 3.0, 5.0, 7.0], 1e-12).unwrap();
        assert_eq!(s.rank, 2);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && (s.x[1] - 2.0).abs() < 1e-12);
        assert!(s.residual_norm < 1e-12);
    }

    #[test]
    fn inconsistent_residual_is_orthogonal_to_range() {
        let a = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]).unwrap();
        let s = lstsq(&a, &[1.0, 2.0, 3.0], 1e-12).unwrap();
        assert!((s.residual_norm - 3.0).abs() < 1e-12);
        assert!(a.t_matvec(&s.residual).iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn rank_deficient() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]).unwrap();
        let s = lstsq(&a, &[1.0, 2.0], 1e-12).unwrap();
        assert_eq!(s.rank, 1);
        assert!(s.residual_norm < 1e-12);
    }
}
