use alloc::vec::Vec;

use super::{Complex, FrequencySet, PointSet};
use crate::math::{powf, sqrt, KahanSum};
use crate::{Error, Result};

/// Exponent `q ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(q: f64) -> Result<Self> {
        if q.is_finite() && q >= 1.0 {
            Ok(Exponent::Finite(q))
        } else if q == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(Error::invalid("exponent outside [1, ∞]"))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(q) => q,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

/// `f(x) = Σ_{k∈Q} c_k e^{i(k,x)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    support: FrequencySet,
    coeffs: Vec<Complex>,
}

impl TrigPolynomial {
    pub fn new(support: FrequencySet, coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() != support.len() {
            return Err(Error::DimensionMismatch {
                expected: support.len(),
                got: coeffs.len(),
            });
        }
        Ok(TrigPolynomial { support, coeffs })
    }

    pub fn zero(support: FrequencySet) -> Self {
        let n = support.len();
        TrigPolynomial {
            support,
            coeffs: alloc::vec![Complex::ZERO; n],
        }
    }

    pub fn support(&self) -> &FrequencySet {
        &self.support
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    /// `Σ c_k e^{i(k,x)}` with compensated summation.
    pub fn evaluate(&self, x: &[f64]) -> Result<Complex> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> Complex {
        let mut re = KahanSum::default();
        let mut im = KahanSum::default();
        for (k, c) in self.support.iter().zip(&self.coeffs) {
            let phase: f64 = k.iter().zip(x).map(|(&kj, &xj)| kj as f64 * xj).sum();
            let e = Complex::cis(phase);
            let t = *c * e;
            re.add(t.re);
            im.add(t.im);
        }
        Complex::new(re.value(), im.value())
    }

    /// `(Σ|c_k|²)^{1/2}`, the normalized `L₂(T^d)` norm.
    pub fn l2_norm_exact(&self) -> f64 {
        let mut s = KahanSum::default();
        for c in &self.coeffs {
            s.add(c.norm_sqr());
        }
        sqrt(s.value())
    }

    /// Points per axis used by [`Self::lq_norm_grid`].
    pub fn grid_sizes(&self, oversample: usize) -> Vec<usize> {
        self.support
            .max_abs_per_axis()
            .iter()
            .map(|&k| oversample * (2 * k as usize + 1))
            .collect()
    }

    /// Grid estimate of `‖f‖_q` on `oversample·(2 max|k_j| + 1)` points per axis.
    /// For `q = ∞` this is the grid maximum, a lower bound on the sup norm.
    pub fn lq_norm_grid(&self, q: Exponent, oversample: usize) -> Result<f64> {
        if let Exponent::Finite(v) = q {
            if !(v >= 1.0 && v.is_finite()) {
                return Err(Error::invalid("exponent outside [1, ∞]"));
            }
        }
        if oversample < 1 {
            return Err(Error::invalid("oversample must be ≥ 1"));
        }
        let grid = PointSet::torus_grid(&self.grid_sizes(oversample))?;
        Ok(self.lq_norm_on(q, &grid))
    }

    /// Equal-weight `L_q` mean (or maximum for `q = ∞`) over `points`.
    pub fn lq_norm_on(&self, q: Exponent, points: &PointSet) -> f64 {
        match q {
            Exponent::Infinity => points
                .iter()
                .map(|x| self.eval_unchecked(x).abs())
                .fold(0.0, f64::max),
            Exponent::Finite(qv) => {
                if points.is_empty() {
                    return 0.0;
                }
                let mut s = KahanSum::default();
                for x in points.iter() {
                    let a = self.eval_unchecked(x);
                    s.add(if qv == 2.0 { a.norm_sqr() } else { powf(a.abs(), qv) });
                }
                powf(s.value() / points.len() as f64, 1.0 / qv)
            }
        }
    }

    /// `c_{−k} = conj(c_k)` on a symmetric support.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        if !self.support.is_symmetric() {
            return false;
        }
        let mut neg = alloc::vec![0i64; self.dim()];
        self.support.iter().zip(&self.coeffs).all(|(k, c)| {
            for (n, v) in neg.iter_mut().zip(k) {
                *n = -v;
            }
            let j = self.support.index_of(&neg).expect("symmetric support");
            (*c - self.coeffs[j].conj()).abs() <= tol
        })
    }
}
