use super::DenseMatrix;
use crate::{Error, Result, Tolerances};

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky(a: &DenseMatrix) -> Result<DenseMatrix> {
    a.check_symmetric(Tolerances::default().symmetry)?;
    let n = a.rows();
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NumericalFailure {
                msg: "matrix is not positive definite".into(),
                residual: d,
            });
        }
        let djj = crate::math::sqrt(d);
        l[(j, j)] = djj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Extreme eigenvalues of the pencil `A x = λ B x` with `B` positive definite,
/// via `L⁻¹ A L⁻ᵀ` where `B = L Lᵀ`.
pub fn generalized_sym_eig_extreme(a: &DenseMatrix, b: &DenseMatrix) -> Result<(f64, f64)> {
    let l = cholesky(b)?;
    let n = a.rows();
    if b.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.rows(),
        });
    }
    // Y = L⁻¹ A (forward substitution column by column).
    let mut y = a.clone();
    for j in 0..n {
        for i in 0..n {
            let mut s = y[(i, j)];
            for k in 0..i {
                s -= l[(i, k)] * y[(k, j)];
            }
            y[(i, j)] = s / l[(i, i)];
        }
    }
    // C = Y L⁻ᵀ, i.e. Cᵀ = L⁻¹ Yᵀ.
    let yt = y.transpose();
    let mut c = yt.clone();
    for j in 0..n {
        for i in 0..n {
            let mut s = c[(i, j)];
            for k in 0..i {
                s -= l[(i, k)] * c[(k, j)];
            }
            c[(i, j)] = s / l[(i, i)];
        }
    }
    let mut c = c.transpose();
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (c[(i, j)] + c[(j, i)]);
            c[(i, j)] = s;
            c[(j, i)] = s;
        }
    }
    super::sym_eig_extreme(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_matrix() {
        let a = DenseMatrix::from_rows(&[[4.0, 2.0, 0.4], [2.0, 5.0, 1.0], [0.4, 1.0, 3.0]]).unwrap();
        let l = cholesky(&a).unwrap();
        let r = l.matmul(&l.transpose()).unwrap();
        for (x, y) in r.as_slice().iter().zip(a.as_slice()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn indefinite_rejected() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap();
        assert!(cholesky(&a).is_err());
    }

    #[test]
    fn pencil_with_diagonal_b() {
        let a = DenseMatrix::diag(&[2.0, 6.0]);
        let b = DenseMatrix::diag(&[1.0, 2.0]);
        let (lo, hi) = generalized_sym_eig_extreme(&a, &b).unwrap();
        assert!((lo - 2.0).abs() < 1e-12 && (hi - 3.0).abs() < 1e-12);
    }
}
