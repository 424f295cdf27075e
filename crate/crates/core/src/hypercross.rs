//! The recursive `L∞` discretization set `W(N,d)` for hyperbolic cross
//! polynomials.

use alloc::vec::Vec;

use crate::certify::{certify_linfty, reference_grid};
use crate::math::{ceil, gcd, ln, powf, TAU};
use crate::rng::{normal, stream};
use crate::spaces::{design_matrix, FrequencySet, Frame, PointSet, System, TrigSystem};
use crate::{Error, Result};

/// `α_d = Σ_{j≤d} 1/j` and `β_d = d − α_d`.
pub fn alpha_beta(d: usize) -> (f64, f64) {
    let a: f64 = (1..=d).map(|j| 1.0 / j as f64).sum();
    (a, d as f64 - a)
}

/// `2π a/b` computed from the reduced fraction, so equal rationals give
/// bit-identical coordinates.
fn angle(a: u64, b: u64) -> f64 {
    if a == 0 {
        return 0.0;
    }
    let g = gcd(a, b);
    TAU * (a / g) as f64 / (b / g) as f64
}

/// `V_M = {2πj/M : 0 ≤ j < M}`.
pub fn build_vm(m: u64) -> Result<PointSet> {
    if m == 0 {
        return Err(Error::invalid("M must be positive"));
    }
    let flat = (0..m).map(|j| angle(j, m)).collect();
    PointSet::from_flat(1, Frame::Torus, flat)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypercrossSetParams {
    pub n: u64,
    pub d: usize,
    pub eps: f64,
    /// Bernstein constant used at every level of the recursion.
    pub c0: f64,
    /// `W(N,1)` has `⌈factor · N⌉` points.
    pub base_grid_factor: f64,
}

impl HypercrossSetParams {
    pub fn new(n: u64, d: usize, eps: f64, c0: f64) -> Self {
        HypercrossSetParams {
            n,
            d,
            eps,
            c0,
            base_grid_factor: 4.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::invalid("d must be at least 1"));
        }
        if self.n < 2 {
            return Err(Error::invalid("N must be at least 2"));
        }
        if !(self.eps > 0.0 && self.eps < 0.125) {
            return Err(Error::invalid("ε must lie in (0, 1/8)"));
        }
        if !(self.c0 > 0.0) || !(self.base_grid_factor > 0.0) {
            return Err(Error::invalid("C0 and the base grid factor must be positive"));
        }
        Ok(())
    }
}

/// Smallest `M ≥ 1` with `C₀ M^{−d} N (log N)^{d−1} ≤ ε`.
pub fn minimal_m(n: u64, d: usize, eps: f64, c0: f64) -> u64 {
    let nf = n as f64;
    let lhs = |m: u64| c0 * powf(m as f64, -(d as f64)) * nf * powf(ln(nf), (d - 1) as f64);
    let mut m = ceil(powf(c0 * nf * powf(ln(nf), (d - 1) as f64) / eps, 1.0 / d as f64)).max(1.0) as u64;
    while m > 1 && lhs(m - 1) <= eps {
        m -= 1;
    }
    while lhs(m) > eps {
        m += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypercrossSet {
    pub points: PointSet,
    /// `M` used at dimensions `2..=d`.
    pub m_sequence: Vec<u64>,
    /// `|W(N,j)|` for `j = 1..=d`, after deduplication.
    pub sizes: Vec<usize>,
    /// Count before deduplication at each dimension `j ≥ 2`; equals `j·M·|W(N,j−1)|`.
    pub pre_dedup: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
}

/// Points stored as reduced fractions `a/b` of a full turn.
type Frac = (u64, u64);

fn reduce(a: u64, b: u64) -> Frac {
    if a == 0 {
        return (0, 1);
    }
    let g = gcd(a, b);
    (a / g, b / g)
}

/// Builds `W(N,d) = ∪_j {x : x_j ∈ V_M, x^j ∈ W(N,d−1)}` recursively from the
/// uniform grid `W(N,1)`.
pub fn build_w(params: &HypercrossSetParams) -> Result<HypercrossSet> {
    params.validate()?;
    let base = ceil(params.base_grid_factor * params.n as f64) as u64;
    let mut level: Vec<Vec<Frac>> = (0..base).map(|j| alloc::vec![reduce(j, base)]).collect();
    let mut sizes = alloc::vec![level.len()];
    let (mut m_sequence, mut pre_dedup) = (Vec::new(), Vec::new());
    for dim in 2..=params.d {
        let m = minimal_m(params.n, dim, params.eps, params.c0);
        let mut next: Vec<Vec<Frac>> = Vec::with_capacity(dim * m as usize * level.len());
        for j in 0..dim {
            for i in 0..m {
                for p in &level {
                    let mut x = p.clone();
                    x.insert(j, reduce(i, m));
                    next.push(x);
                }
            }
        }
        pre_dedup.push(next.len());
        m_sequence.push(m);
        // Exact rational coordinates make deduplication exact.
        next.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x.0 as u128 * y.1 as u128).cmp(&(y.0 as u128 * x.1 as u128)))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        next.dedup();
        sizes.push(next.len());
        level = next;
    }
    let flat = level.iter().flat_map(|p| p.iter().map(|&(a, b)| angle(a, b))).collect();
    let (alpha, beta) = alpha_beta(params.d);
    Ok(HypercrossSet {
        points: PointSet::from_flat(params.d, Frame::Torus, flat)?,
        m_sequence,
        sizes,
        pre_dedup,
        alpha,
        beta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    LpExact,
    Probe,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::LpExact => "lp_exact_gridref",
            VerifyMode::Probe => "empirical_probe",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    /// Estimate of `C(d)` in `‖f‖_∞ ≤ C(d) max_{w∈W} |f(w)|`.
    pub c_hat: f64,
    pub mode: VerifyMode,
    pub reference_points: usize,
    pub trials: usize,
    pub seed: u64,
}

/// Measures `sup ‖f‖_{∞,grid} / max_W |f|` over the real span of `T(Γ(N))`
/// (or any frequency set `q`), exactly by LP or by random probes.
pub fn verify_w(
    q: &FrequencySet,
    w: &PointSet,
    mode: VerifyMode,
    oversample: usize,
    trials: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let sys = TrigSystem::orthonormal(q);
    let reference = reference_grid(&sys, oversample)?;
    let c_hat = match mode {
        VerifyMode::LpExact => certify_linfty(&sys, w, &reference)?.ratio,
        VerifyMode::Probe => {
            let vw = design_matrix(&sys, w);
            let vr = design_matrix(&sys, &reference);
            let sup = |v: Vec<f64>| v.iter().fold(0.0f64, |m, t| m.max(t.abs()));
            let mut best = 0.0f64;
            for t in 0..trials {
                let mut rng = stream(seed, t as u64);
                let b: Vec<f64> = (0..sys.len()).map(|_| normal(&mut rng)).collect();
                let on_w = sup(vw.matvec(&b));
                let on_r = sup(vr.matvec(&b));
                let r = if on_w > 0.0 { on_r / on_w } else { f64::INFINITY };
                best = best.max(r);
            }
            best
        }
    };
    Ok(VerifyReport {
        c_hat,
        mode,
        reference_points: reference.len(),
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_beta_values() {
        assert_eq!(alpha_beta(1), (1.0, 0.0));
        assert_eq!(alpha_beta(2), (1.5, 0.5));
        let (a, b) = alpha_beta(3);
        assert!((a - 11.0 / 6.0).abs() < 1e-15 && (b - 7.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn vm_points() {
        assert_eq!(build_vm(1).unwrap().as_flat(), &[0.0]);
        let v = build_vm(4).unwrap();
        let want = [0.0, TAU / 4.0, TAU / 2.0, 3.0 * TAU / 4.0];
        assert!(v.as_flat().iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn one_dimensional_set() {
        let w = build_w(&HypercrossSetParams::new(4, 1, 0.1, 1.0)).unwrap();
        assert_eq!(w.points.len(), 16);
    }

    #[test]
    fn two_dimensional_recursion_law() {
        let w = build_w(&HypercrossSetParams::new(4, 2, 0.1, 4.0)).unwrap();
        let m = w.m_sequence[0] as usize;
        assert_eq!(w.pre_dedup[0], 2 * m * w.sizes[0]);
        assert!(w.points.len() <= w.pre_dedup[0]);
        assert!(minimal_m(4, 2, 0.1, 4.0) == w.m_sequence[0]);
    }

    #[test]
    fn minimal_m_is_minimal() {
        for (n, d) in [(4u64, 2usize), (8, 2), (4, 3)] {
            let m = minimal_m(n, d, 0.1, 2.0);
            let lhs = |m: u64| 2.0 * (m as f64).powi(-(d as i32)) * n as f64 * (n as f64).ln().powi(d as i32 - 1);
            assert!(lhs(m) <= 0.1 && (m == 1 || lhs(m - 1) > 0.1));
        }
    }

    #[test]
    fn bad_eps() {
        assert!(build_w(&HypercrossSetParams::new(4, 2, 0.2, 1.0)).is_err());
    }
}
