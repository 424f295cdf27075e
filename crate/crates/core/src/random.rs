//! Randomized discretization: iid sampling with eigenvalue certificates,
//! Chernoff-based sample-size planning, subset search on discrete domains and
//! Monte Carlo domain discretization.

use alloc::vec::Vec;

use rand::seq::index;

use crate::certify::{certify_l2, certify_lq_empirical, reference_grid, DiscretizationCertificate};
use crate::exact::WeightedRule;
use crate::math::{ceil, exp, ln, ln_1p};
use crate::numkernel::{generalized_sym_eig_extreme, DenseMatrix};
use crate::rng::stream;
use crate::spaces::{design_matrix, gram_matrix, PointSet, System, TabulatedSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Lower,
    Upper,
}

fn log_base(eta: f64, tail: Tail) -> Result<f64> {
    match tail {
        Tail::Lower if (0.0..1.0).contains(&eta) => Ok(-eta - (1.0 - eta) * ln_1p(-eta)),
        Tail::Upper if eta >= 0.0 && eta.is_finite() => Ok(eta - (1.0 + eta) * ln_1p(eta)),
        _ => Err(Error::invalid("η out of range for this tail")),
    }
}

/// Matrix Chernoff tail `N (e^{−η}/(1−η)^{1−η})^{s/R}` (lower) or
/// `N (e^{η}/(1+η)^{1+η})^{s/R}` (upper).
pub fn chernoff_bound(n: usize, eta: f64, s_over_r: f64, tail: Tail) -> Result<f64> {
    let lb = log_base(eta, tail)?;
    Ok(n as f64 * exp(s_over_r * lb))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub n: usize,
    pub t: f64,
    pub eps: f64,
    pub delta: f64,
    /// Smallest `m` with both tails `≤ δ/2` for `s_min = s_max = m`, `R = N t²`.
    pub m: usize,
    pub r: f64,
    /// `m / ((t²/ε²) N log(2N/δ))`.
    pub constant: f64,
}

/// Sample size for a `(1 ± ε)` two-sided `L₂` discretization with failure
/// probability `≤ δ`.
pub fn plan_sample_size(n: usize, t: f64, eps: f64, delta: f64) -> Result<SamplePlan> {
    if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("ε and δ must lie in (0, 1)"));
    }
    if n == 0 || !(t > 0.0) {
        return Err(Error::invalid("N and t must be positive"));
    }
    let r = n as f64 * t * t;
    let ok = |m: usize| {
        [Tail::Lower, Tail::Upper]
            .iter()
            .all(|&tail| chernoff_bound(n, eps, m as f64 / r, tail).map_or(false, |b| b <= delta / 2.0))
    };
    let rate = -log_base(eps, Tail::Lower)?.max(log_base(eps, Tail::Upper)?);
    let mut m = ceil(r * ln(2.0 * n as f64 / delta) / rate).max(1.0) as usize;
    while m > 1 && ok(m - 1) {
        m -= 1;
    }
    while !ok(m) {
        m += 1;
    }
    let constant = m as f64 / ((t * t / (eps * eps)) * n as f64 * ln(2.0 * n as f64 / delta));
    Ok(SamplePlan {
        n,
        t,
        eps,
        delta,
        m,
        r,
        constant,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// iid uniform points.
    Random,
    /// The canonical grid of the system's trigonometric degree.
    Grid,
}

/// Draws `m` points and certifies the equal-weight rule by eigenvalues.
pub fn sample_and_certify_l2<S: System + ?Sized>(
    sys: &S,
    m: usize,
    seed: u64,
    mode: SampleMode,
) -> Result<(PointSet, DiscretizationCertificate)> {
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    let points = match mode {
        SampleMode::Random => PointSet::random(sys.point_dim(), sys.frame(), m, &mut stream(seed, 0)),
        SampleMode::Grid => {
            let deg = sys
                .trig_degree()
                .ok_or_else(|| Error::Unsupported("grid mode needs a trigonometric system".into()))?;
            let sizes: Vec<usize> = deg.iter().map(|&k| 2 * k as usize + 1).collect();
            if sizes.iter().product::<usize>() != m {
                return Err(Error::invalid("grid mode needs m = ∏(2N_j+1)"));
            }
            PointSet::torus_grid(&sizes)?
        }
    };
    let mut cert = certify_l2(sys, &WeightedRule::equal_weight(points.clone()))?;
    cert.seed = Some(seed);
    Ok((points, cert))
}

/// Subset `J` of a discrete domain with its certificate relative to the
/// uniform measure on the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSelection {
    pub indices: Vec<usize>,
    pub certificate: DiscretizationCertificate,
    /// Trial that produced the subset.
    pub trial: usize,
}

fn discrete_gram(v: &DenseMatrix, rows: &[usize], n: usize) -> DenseMatrix {
    let mut g = DenseMatrix::zeros(n, n);
    for &i in rows {
        g.add_outer(1.0 / rows.len() as f64, v.row(i));
    }
    g
}

/// Best of `trials` uniform `m`-subsets of `domain` by `min(C₁, 2 − C₂)`.
pub fn subset_select_discrete<S: System + ?Sized>(
    sys: &S,
    domain: &PointSet,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<SubsetSelection> {
    let big_m = domain.len();
    if m == 0 || m > big_m {
        return Err(Error::invalid("subset size must lie in 1..=M"));
    }
    let n = sys.len();
    let v = design_matrix(sys, domain);
    let all: Vec<usize> = (0..big_m).collect();
    let full = discrete_gram(&v, &all, n);
    let certify = |rows: &[usize]| -> Result<(f64, f64)> {
        let g = discrete_gram(&v, rows, n);
        generalized_sym_eig_extreme(&g, &full)
    };
    let mut best: Option<(f64, Vec<usize>, (f64, f64), usize)> = None;
    let runs = if m == big_m { 1 } else { trials.max(1) };
    for t in 0..runs {
        let mut idx = if m == big_m {
            all.clone()
        } else {
            index::sample(&mut stream(seed, t as u64), big_m, m).into_vec()
        };
        idx.sort_unstable();
        let (c1, c2) = certify(&idx)?;
        let score = c1.min(2.0 - c2);
        if best.as_ref().map_or(true, |b| score > b.0) {
            best = Some((score, idx, (c1, c2), t));
        }
    }
    let (_, indices, (c1, c2), trial) = best.expect("at least one trial");
    Ok(SubsetSelection {
        indices,
        certificate: DiscretizationCertificate {
            q: crate::spaces::Exponent::Finite(2.0),
            m,
            n,
            c1,
            c2,
            method: crate::certify::CertMethod::EigenExact,
            empirical: false,
            seed: Some(seed),
            oversample: None,
            tolerances: crate::Tolerances::default(),
        },
        trial,
    })
}

/// Draws `m` iid points and bounds the `L₁` constants with probe polynomials.
pub fn sample_and_certify_l1<S: System + ?Sized>(
    sys: &S,
    m: usize,
    seed: u64,
    probe_budget: usize,
    oversample: usize,
) -> Result<(PointSet, DiscretizationCertificate)> {
    if sys.is_empty() {
        return Err(Error::invalid("empty span"));
    }
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    let points = PointSet::random(sys.point_dim(), sys.frame(), m, &mut stream(seed, 0));
    let reference = reference_grid(sys, oversample)?;
    let rule = WeightedRule::equal_weight(points.clone());
    let mut cert = certify_lq_empirical(sys, &rule, 1.0, &reference, probe_budget, derive(seed))?;
    cert.seed = Some(seed);
    cert.oversample = Some(oversample);
    Ok((points, cert))
}

fn derive(seed: u64) -> u64 {
    crate::rng::derive_seed(seed, 1)
}

#[derive(Debug, Clone)]
pub struct MonteCarloDomain {
    pub points: PointSet,
    pub table: TabulatedSystem,
    /// `max_{i,k} |∫u_i u_k − discrete mean|`.
    pub entry_deviation: f64,
    /// Extreme eigenvalues of the discrete Gram relative to the true one.
    pub eig_min: f64,
    pub eig_max: f64,
    pub rounds: usize,
}

/// Largest domain size tried by [`monte_carlo_domain`].
pub const MONTE_CARLO_CAP: usize = 1 << 20;

/// Doubles `M` from 1 until every product integral `∫ u_i u_k` is matched by
/// the mean over `M` iid points within `δ/N`; then
/// `|‖f‖²_{L₂} − ‖f‖²_{L₂(Ω_M)}| ≤ δ ‖f‖²` on the span.
pub fn monte_carlo_domain<S: System + ?Sized>(sys: &S, delta: f64, seed: u64) -> Result<MonteCarloDomain> {
    if !(delta > 0.0) {
        return Err(Error::invalid("δ must be positive"));
    }
    let n = sys.len();
    if n == 0 {
        return Err(Error::invalid("empty span"));
    }
    if let Ok(r) = reference_grid(sys, 2) {
        let v = design_matrix(sys, &r);
        if v.as_slice().iter().any(|x| !x.is_finite()) {
            return Err(Error::PreconditionViolation("system has non-finite values".into()));
        }
    }
    let gram = gram_matrix(sys)?;
    let mut best = f64::INFINITY;
    let mut m = 1usize;
    let mut rounds = 0;
    while m <= MONTE_CARLO_CAP {
        rounds += 1;
        let points = PointSet::random(sys.point_dim(), sys.frame(), m, &mut stream(seed, rounds as u64));
        let v = design_matrix(sys, &points);
        let all: Vec<usize> = (0..m).collect();
        let g = discrete_gram(&v, &all, n);
        let mut dev = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                dev = dev.max((g[(i, k)] - gram[(i, k)]).abs());
            }
        }
        best = best.min(dev);
        if dev <= delta / n as f64 {
            let (eig_min, eig_max) = generalized_sym_eig_extreme(&g, &gram)?;
            let table = TabulatedSystem::from_system(sys, points.clone())?;
            return Ok(MonteCarloDomain {
                points,
                table,
                entry_deviation: dev,
                eig_min,
                eig_max,
                rounds,
            });
        }
        m *= 2;
    }
    Err(Error::NumericalFailure {
        msg: "Monte Carlo domain did not reach the target".into(),
        residual: best * n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{FrequencySet, TrigSystem};

    #[test]
    fn chernoff_examples() {
        assert_eq!(chernoff_bound(7, 0.0, 50.0, Tail::Lower).unwrap(), 7.0);
        let b = chernoff_bound(10, 0.5, 100.0, Tail::Upper).unwrap();
        assert!((b - 2.0e-4).abs() < 0.05e-4, "{b}");
        assert!(chernoff_bound(3, 1.0, 1.0, Tail::Lower).is_err());
        let a = chernoff_bound(5, 0.3, 10.0, Tail::Lower).unwrap();
        assert!(chernoff_bound(5, 0.3, 20.0, Tail::Lower).unwrap() < a);
    }

    #[test]
    fn plan_monotone() {
        let a = plan_sample_size(16, 1.0, 0.5, 0.1).unwrap();
        let b = plan_sample_size(16, 1.0, 0.5, 0.2).unwrap();
        assert!(b.m <= a.m);
        let c = plan_sample_size(16, 1.0, 0.25, 0.1).unwrap();
        let ratio = c.m as f64 / a.m as f64;
        assert!(ratio > 3.5 && ratio < 4.6, "{ratio}");
    }

    #[test]
    fn grid_mode_is_exact() {
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[2, 1]).unwrap());
        let (_, c) = sample_and_certify_l2(&s, 15, 0, SampleMode::Grid).unwrap();
        assert!(c.is_exact(1e-10));
    }

    #[test]
    fn constant_system_any_draw() {
        let s = TrigSystem::cosine(0);
        let (_, c) = sample_and_certify_l2(&s, 3, 9, SampleMode::Random).unwrap();
        assert!(c.is_exact(1e-14));
    }

    #[test]
    fn subset_full_and_partial() {
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[2]).unwrap());
        let grid = PointSet::torus_grid(&[64]).unwrap();
        let full = subset_select_discrete(&s, &grid, 64, 5, 1).unwrap();
        assert!(full.certificate.is_exact(1e-10));
        let part = subset_select_discrete(&s, &grid, 20, 200, 1).unwrap();
        assert!(part.certificate.c1 > 0.0);
        assert!(part.certificate.c1 <= 1.0 + 1e-12 && part.certificate.c2 >= 1.0 - 1e-12);
        assert!(subset_select_discrete(&s, &grid, 65, 1, 1).is_err());
    }

    #[test]
    fn monte_carlo_domains() {
        let one = TrigSystem::cosine(0);
        assert_eq!(monte_carlo_domain(&one, 0.1, 1).unwrap().points.len(), 1);
        let s = TrigSystem::orthonormal(&FrequencySet::build_box(&[2]).unwrap());
        let d = monte_carlo_domain(&s, 0.25, 3).unwrap();
        assert!(d.eig_min >= 0.75 && d.eig_max <= 1.25);
    }
}
