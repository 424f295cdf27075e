//! Discretization constants of a rule for `q ∈ {1, 2, ∞}`, the `L∞` bound
//! derived from an `L₂` certificate, and Remez and Bernstein probes.

mod probes;

pub use probes::{
    bernstein_probe, remez_check, remez_ratio, remez_threshold, BernsteinReport, RemezReport,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::exact::WeightedRule;
use crate::numkernel::{generalized_sym_eig_extreme, lstsq, sym_eig_extreme, ChebyshevLp, DenseMatrix};
use crate::rng::{normal, stream};
use crate::spaces::{design_matrix, eval_vec, gram_matrix, Exponent, PointSet, System};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMethod {
    EigenExact,
    LpExactGridref,
    EmpiricalProbe,
}

impl CertMethod {
    pub fn name(self) -> &'static str {
        match self {
            CertMethod::EigenExact => "eigen_exact",
            CertMethod::LpExactGridref => "lp_exact_gridref",
            CertMethod::EmpiricalProbe => "empirical_probe",
        }
    }
}

/// Constants `C₁, C₂` with `C₁‖f‖_q^q ≤ Σ λ_ν |f(ξ^ν)|^q ≤ C₂‖f‖_q^q`
/// (for `q = ∞`: `C₁‖f‖_∞ ≤ max_ν |f(ξ^ν)| ≤ C₂‖f‖_∞`).
///
/// Empirical certificates are one-sided: `C₂` is attained by a probe, so it
/// is a lower bound on the true supremum ratio, and `C₁` an upper bound on
/// the true infimum.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizationCertificate {
    pub q: Exponent,
    pub m: usize,
    pub n: usize,
    pub c1: f64,
    pub c2: f64,
    pub method: CertMethod,
    pub empirical: bool,
    pub seed: Option<u64>,
    /// Oversampling of the reference grid, when one was used.
    pub oversample: Option<usize>,
    pub tolerances: Tolerances,
}

impl DiscretizationCertificate {
    /// Smallest `ε` with `1 − ε ≤ C₁` and `C₂ ≤ 1 + ε`.
    pub fn implied_eps(&self) -> f64 {
        (1.0 - self.c1).max(self.c2 - 1.0).max(0.0)
    }

    /// Membership in `M(m, q, ε)`.
    pub fn is_member(&self, eps: f64) -> bool {
        self.c1 >= 1.0 - eps && self.c2 <= 1.0 + eps
    }

    /// Exact discretization: `|C₁ − 1| ≤ tol` and `|C₂ − 1| ≤ tol`.
    pub fn is_exact(&self, tol: f64) -> bool {
        (self.c1 - 1.0).abs() <= tol && (self.c2 - 1.0).abs() <= tol
    }
}

/// Torus grid with `oversample · (2 deg_j + 1)` points per axis, or the domain
/// of a tabulated system.
pub fn reference_grid<S: System + ?Sized>(sys: &S, oversample: usize) -> Result<PointSet> {
    if let Some(d) = sys.domain() {
        return Ok(d.clone());
    }
    let deg = sys
        .trig_degree()
        .ok_or_else(|| Error::Unsupported("system has no reference grid".into()))?;
    let sizes: Vec<usize> = deg.iter().map(|&k| oversample.max(1) * (2 * k as usize + 1)).collect();
    PointSet::torus_grid(&sizes)
}

/// `C₁, C₂` for `q = 2` as the extreme eigenvalues of `Σ λ_ν G(ξ^ν)` relative
/// to the Gram matrix of the system.
pub fn certify_l2<S: System + ?Sized>(sys: &S, rule: &WeightedRule) -> Result<DiscretizationCertificate> {
    let g = rule.gram(sys);
    let (c1, c2) = if sys.is_orthonormal() {
        sym_eig_extreme(&g)?
    } else {
        generalized_sym_eig_extreme(&g, &gram_matrix(sys)?)?
    };
    Ok(DiscretizationCertificate {
        q: Exponent::Finite(2.0),
        m: rule.len(),
        n: sys.len(),
        c1,
        c2,
        method: CertMethod::EigenExact,
        empirical: false,
        seed: None,
        oversample: None,
        tolerances: Tolerances::default(),
    })
}

/// Fixed-set `L∞` ratio `sup_f ‖f‖_{∞,grid} / max_j |f(ξ^j)|`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinftyReport {
    /// `f64::INFINITY` when some nonzero `f` vanishes on the points.
    pub ratio: f64,
    pub unbounded: bool,
    /// Reference point attaining the ratio.
    pub argmax: usize,
    pub certificate: DiscretizationCertificate,
}

/// LP-exact `L∞` ratio of `points` measured on `reference`.
pub fn certify_linfty<S: System + ?Sized>(
    sys: &S,
    points: &PointSet,
    reference: &PointSet,
) -> Result<LinftyReport> {
    let lp = ChebyshevLp::new(design_matrix(sys, points))?;
    let mut ratio = 0.0f64;
    let mut argmax = 0;
    let mut unbounded = !lp.is_full_rank();
    if !unbounded {
        for (i, x) in reference.iter().enumerate() {
            let sol = lp.solve(&eval_vec(sys, x))?;
            if sol.unbounded {
                unbounded = true;
                argmax = i;
                break;
            }
            if sol.value > ratio {
                ratio = sol.value;
                argmax = i;
            }
        }
    }
    if unbounded {
        ratio = f64::INFINITY;
    }
    let c1 = if unbounded || ratio == 0.0 { 0.0 } else { 1.0 / ratio };
    Ok(LinftyReport {
        ratio,
        unbounded,
        argmax,
        certificate: DiscretizationCertificate {
            q: Exponent::Infinity,
            m: points.len(),
            n: sys.len(),
            c1,
            c2: 1.0,
            method: CertMethod::LpExactGridref,
            empirical: false,
            seed: None,
            oversample: None,
            tolerances: Tolerances::default(),
        },
    })
}

/// [`certify_linfty`] on [`reference_grid`]`(sys, oversample)`.
pub fn certify_linfty_oversampled<S: System + ?Sized>(
    sys: &S,
    points: &PointSet,
    oversample: usize,
) -> Result<LinftyReport> {
    let mut r = certify_linfty(sys, points, &reference_grid(sys, oversample)?)?;
    r.certificate.oversample = Some(oversample);
    Ok(r)
}

/// Ratio `Σ λ_ν |f(ξ^ν)|^q / ‖f‖_{q,grid}^q` for one coefficient vector.
fn lq_ratio(rule_vals: &DenseMatrix, weights: &[f64], ref_vals: &DenseMatrix, b: &[f64], q: f64) -> Option<f64> {
    let pw = |t: f64| crate::math::powf(t.abs(), q);
    let num: f64 = rule_vals.matvec(b).iter().zip(weights).map(|(t, w)| w * pw(*t)).sum();
    let den = ref_vals.matvec(b).iter().map(|t| pw(*t)).sum::<f64>() / ref_vals.rows() as f64;
    if den > 1e-300 {
        Some(num / den)
    } else {
        None
    }
}

/// Probe coefficient vectors: coordinate vectors, a vector vanishing on the
/// nodes when one exists, then seeded Gaussian vectors.
fn probe_vectors(rule_vals: &DenseMatrix, n: usize, budget: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let mut probes = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        probes.push(e);
    }
    if rule_vals.rows() < n {
        // Null vector of the node matrix: a column outside the pivot set,
        // expressed through the pivot columns.
        let ls = lstsq(rule_vals, &vec![0.0; rule_vals.rows()], 1e-12)?;
        let j = ls.pivots[ls.rank];
        let basis = &ls.pivots[..ls.rank];
        let y = lstsq(&rule_vals.select_cols(basis), &rule_vals.column(j), 1e-12)?.x;
        let mut z = vec![0.0; n];
        z[j] = 1.0;
        for (&c, v) in basis.iter().zip(&y) {
            z[c] = -v;
        }
        probes.push(z);
    }
    let mut rng = stream(seed, 0);
    for _ in 0..budget {
        probes.push((0..n).map(|_| normal(&mut rng)).collect());
    }
    Ok(probes)
}

/// Coordinate search improving `sign · ratio` from `b`.
fn refine(b: &mut [f64], sign: f64, mut best: f64, eval: &impl Fn(&[f64]) -> Option<f64>) -> f64 {
    let mut step = 0.5 * crate::numkernel::max_abs(b).max(1e-3);
    for _ in 0..20 {
        let mut improved = false;
        for i in 0..b.len() {
            for dir in [1.0, -1.0] {
                let old = b[i];
                b[i] = old + dir * step;
                match eval(b) {
                    Some(r) if sign * r > sign * best => {
                        best = r;
                        improved = true;
                    }
                    _ => b[i] = old,
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Empirical `L_q` constants (`1 ≤ q < ∞`) from probe polynomials with `‖f‖_q`
/// measured on `reference`, followed by coordinate refinement of the extreme
/// probes.
pub fn certify_lq_empirical<S: System + ?Sized>(
    sys: &S,
    rule: &WeightedRule,
    q: f64,
    reference: &PointSet,
    probe_budget: usize,
    seed: u64,
) -> Result<DiscretizationCertificate> {
    let n = sys.len();
    if n == 0 {
        return Err(Error::invalid("empty span"));
    }
    let rv = design_matrix(sys, &rule.nodes);
    let fv = design_matrix(sys, reference);
    let eval = |b: &[f64]| lq_ratio(&rv, &rule.weights, &fv, b, q);
    let mut lo = (f64::INFINITY, Vec::new());
    let mut hi = (f64::NEG_INFINITY, Vec::new());
    for b in probe_vectors(&rv, n, probe_budget, seed)? {
        if let Some(r) = eval(&b) {
            if r < lo.0 {
                lo = (r, b.clone());
            }
            if r > hi.0 {
                hi = (r, b);
            }
        }
    }
    if lo.1.is_empty() {
        return Err(Error::NumericalFailure {
            msg: "every probe vanishes on the reference grid".into(),
            residual: 0.0,
        });
    }
    let c1 = refine(&mut lo.1, -1.0, lo.0, &eval);
    let c2 = refine(&mut hi.1, 1.0, hi.0, &eval);
    Ok(DiscretizationCertificate {
        q: Exponent::Finite(q),
        m: rule.len(),
        n,
        c1,
        c2,
        method: CertMethod::EmpiricalProbe,
        empirical: true,
        seed: Some(seed),
        oversample: None,
        tolerances: Tolerances::default(),
    })
}

/// Empirical `L₁` certificate with `‖f‖₁` measured on the oversampled grid.
pub fn certify_l1<S: System + ?Sized>(
    sys: &S,
    rule: &WeightedRule,
    probe_budget: usize,
    seed: u64,
    oversample: usize,
) -> Result<DiscretizationCertificate> {
    let mut c = certify_lq_empirical(sys, rule, 1.0, &reference_grid(sys, oversample)?, probe_budget, seed)?;
    c.oversample = Some(oversample);
    Ok(c)
}

/// `‖f‖_∞ ≤ H C₁^{−1/2} max_j |f(ξ^j)|` for a probability rule with an `L₂`
/// certificate and Nikol'skii constant `H` (`|Q|^{1/2}` for trig spans).
pub fn linfty_from_l2(cert: &DiscretizationCertificate, nikolskii_h: f64) -> Result<f64> {
    if cert.q != Exponent::Finite(2.0) {
        return Err(Error::invalid("expected an L2 certificate"));
    }
    if !(cert.c1 > 0.0) {
        return Err(Error::PreconditionViolation("C1 must be positive".into()));
    }
    Ok(nikolskii_h / crate::math::sqrt(cert.c1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{FrequencySet, TrigSystem};

    fn box_sys(n: u32) -> TrigSystem {
        TrigSystem::orthonormal(&FrequencySet::build_box(&[n]).unwrap())
    }

    #[test]
    fn l2_grid_is_exact() {
        for n in [vec![1u32], vec![2], vec![1, 2]] {
            let s = TrigSystem::orthonormal(&FrequencySet::build_box(&n).unwrap());
            let c = certify_l2(&s, &WeightedRule::equal_weight(PointSet::canonical_grid(&n).unwrap())).unwrap();
            assert!(c.is_exact(1e-12));
        }
    }

    #[test]
    fn l2_too_few_nodes() {
        let s = box_sys(2);
        let c = certify_l2(&s, &WeightedRule::equal_weight(PointSet::torus_grid(&[3]).unwrap())).unwrap();
        assert!(c.c1.abs() < 1e-12 && !c.is_member(0.5));
    }

    #[test]
    fn linfty_examples() {
        let s = box_sys(4);
        let grid = reference_grid(&s, 2).unwrap();
        let same = certify_linfty(&s, &grid, &grid).unwrap();
        assert!((same.ratio - 1.0).abs() < 1e-9);
        let r = certify_linfty(&s, &PointSet::torus_grid(&[17]).unwrap(), &grid).unwrap();
        assert!(r.ratio <= 3.0 && r.ratio >= 1.0);
        let few = certify_linfty(&s, &PointSet::torus_grid(&[5]).unwrap(), &grid).unwrap();
        assert!(few.unbounded && few.certificate.c1 == 0.0);
    }

    #[test]
    fn linfty_from_l2_scaling() {
        let s = box_sys(2);
        let mut c = certify_l2(&s, &WeightedRule::equal_weight(PointSet::canonical_grid(&[2]).unwrap())).unwrap();
        assert!((linfty_from_l2(&c, 5f64.sqrt()).unwrap() - 5f64.sqrt()).abs() < 1e-12);
        c.c1 = 0.25;
        assert!((linfty_from_l2(&c, 1.0).unwrap() - 2.0).abs() < 1e-15);
        c.c1 = 0.0;
        assert!(linfty_from_l2(&c, 1.0).is_err());
    }

    #[test]
    fn l1_dense_grid_and_single_node() {
        let s = box_sys(2);
        let dense = WeightedRule::equal_weight(PointSet::torus_grid(&[200]).unwrap());
        let c = certify_l1(&s, &dense, 50, 3, 40).unwrap();
        assert!(c.c1 >= 0.99 && c.c2 <= 1.01 && c.empirical);
        let one = WeightedRule::equal_weight(PointSet::torus_grid(&[1]).unwrap());
        let c = certify_l1(&s, &one, 10, 3, 8).unwrap();
        assert!(c.c1 < 1e-8);
    }
}
