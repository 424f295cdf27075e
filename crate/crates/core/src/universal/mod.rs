//! Universal discretization for collections of subspaces, dispersion and
//! base-2 nets.

mod dispersion;
mod nets;

pub use dispersion::dispersion;
pub use nets::{build_hammersley_net, compositions, van_der_corput, verify_net, DyadicBox, NetParams, NetVerdict};

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;

use crate::certify::{certify_linfty, certify_lq_empirical, CertMethod, DiscretizationCertificate};
use crate::exact::WeightedRule;
use crate::math::{binomial, powf, TAU};
use crate::numkernel::{sym_eig_extreme, DenseMatrix};
use crate::rng::stream;
use crate::spaces::{Complex, Exponent, FrequencySet, Frame, PointSet, TrigSystem};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollectionKind {
    /// `C(n,d) = {T(R(s)) : ‖s‖₁ = n}`.
    Dyadic { n: u32, d: usize },
    /// Members of `S(v,n)`: `v`-element subsets of `Π_n`.
    Sparse { v: usize, n: u32, d: usize },
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Collection {
    pub kind: CollectionKind,
    pub members: Vec<FrequencySet>,
}

impl Collection {
    /// The dyadic collection `C(n,d)`, members ordered by `s` in lex order.
    pub fn dyadic(n: u32, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("d must be positive"));
        }
        let members = compositions(n, d)
            .iter()
            .map(|s| FrequencySet::build_dyadic_block(s))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(members.len(), binomial(n as usize + d - 1, d - 1));
        Ok(Collection {
            kind: CollectionKind::Dyadic { n, d },
            members,
        })
    }

    pub fn explicit(members: Vec<FrequencySet>) -> Self {
        Collection {
            kind: CollectionKind::Explicit,
            members,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `Π_n = {k : |k_j| < 2^{n−1}}`, so `|Π_n| = (2^n − 1)^d`.
pub fn pi_n(n: u32, d: usize) -> Result<FrequencySet> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    FrequencySet::build_box(&vec![(1u32 << (n - 1)) - 1; d])
}

/// Extreme eigenvalues of `Σ_ν w_ν e(ξ^ν) e(ξ^ν)*` for the complex exponentials
/// of `q`, via the real embedding `[[Re, −Im], [Im, Re]]`.
pub fn complex_gram_extremes(q: &FrequencySet, points: &PointSet, weights: &[f64]) -> Result<(f64, f64)> {
    let n = q.len();
    let mut re = DenseMatrix::zeros(n, n);
    let mut im = DenseMatrix::zeros(n, n);
    let mut e = vec![Complex::ZERO; n];
    for (x, &w) in points.iter().zip(weights) {
        for (ei, k) in e.iter_mut().zip(q.iter()) {
            *ei = Complex::cis(k.iter().zip(x).map(|(&kj, &xj)| kj as f64 * xj).sum());
        }
        for a in 0..n {
            for b in 0..n {
                let z = e[a] * e[b].conj();
                re[(a, b)] += w * z.re;
                im[(a, b)] += w * z.im;
            }
        }
    }
    let mut big = DenseMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            let (r, i) = (0.5 * (re[(a, b)] + re[(b, a)]), 0.5 * (im[(a, b)] - im[(b, a)]));
            big[(a, b)] = r;
            big[(n + a, n + b)] = r;
            big[(a, n + b)] = -i;
            big[(n + a, b)] = i;
        }
    }
    sym_eig_extreme(&big)
}

fn l2_cert(q: &FrequencySet, rule: &WeightedRule) -> Result<DiscretizationCertificate> {
    let (c1, c2) = complex_gram_extremes(q, &rule.nodes, &rule.weights)?;
    Ok(DiscretizationCertificate {
        q: Exponent::Finite(2.0),
        m: rule.len(),
        n: q.len(),
        c1,
        c2,
        method: CertMethod::EigenExact,
        empirical: false,
        seed: None,
        oversample: None,
        tolerances: Tolerances::default(),
    })
}

fn member_reference(q: &FrequencySet, oversample: usize) -> Result<PointSet> {
    let sizes: Vec<usize> = q
        .max_abs_per_axis()
        .iter()
        .map(|&k| oversample.max(1) * (2 * k as usize + 1))
        .collect();
    PointSet::torus_grid(&sizes)
}

/// Settings for the per-member certifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemberBudget {
    pub oversample: usize,
    pub probes: usize,
    pub seed: u64,
}

impl Default for MemberBudget {
    fn default() -> Self {
        MemberBudget {
            oversample: 2,
            probes: 100,
            seed: 0,
        }
    }
}

/// Certifies one member with the `q`-appropriate method: complex Gram
/// eigenvalues for `q = 2`, the LP ratio for `q = ∞` and probes otherwise.
/// The `q ≠ 2` certifiers work on the real span of `Q ∪ (−Q)`.
pub fn certify_member(
    q: &FrequencySet,
    points: &PointSet,
    exponent: Exponent,
    budget: &MemberBudget,
) -> Result<DiscretizationCertificate> {
    let rule = WeightedRule::equal_weight(points.clone());
    match exponent {
        Exponent::Finite(p) if p == 2.0 => l2_cert(q, &rule),
        Exponent::Infinity => {
            let sys = TrigSystem::orthonormal(q);
            let mut c = certify_linfty(&sys, points, &member_reference(q, budget.oversample)?)?.certificate;
            c.oversample = Some(budget.oversample);
            Ok(c)
        }
        Exponent::Finite(p) => {
            let sys = TrigSystem::orthonormal(q);
            let mut c = certify_lq_empirical(
                &sys,
                &rule,
                p,
                &member_reference(q, budget.oversample)?,
                budget.probes,
                budget.seed,
            )?;
            c.oversample = Some(budget.oversample);
            Ok(c)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalReport {
    pub q: Exponent,
    pub m: usize,
    /// Minimum `C₁` over the certified members.
    pub worst_c1: f64,
    /// Maximum `C₂` over the certified members.
    pub worst_c2: f64,
    /// Member attaining `worst_c1`.
    pub argmin: Option<usize>,
    pub certificates: Vec<Option<DiscretizationCertificate>>,
    /// Members whose certifier failed, with the reason.
    pub failures: Vec<(usize, String)>,
}

/// Worst-member certificate of `points` for every member of `collection`.
/// For `q = ∞` the constant reported as `C₁` is the reciprocal of the LP ratio.
pub fn certify_universal(
    collection: &Collection,
    points: &PointSet,
    q: Exponent,
    budget: &MemberBudget,
) -> UniversalReport {
    let certs: Vec<Result<DiscretizationCertificate>> = collection
        .members
        .iter()
        .map(|m| certify_member(m, points, q, budget))
        .collect();
    reduce(q, points.len(), certs)
}

/// Min/max reduction of per-member results.
pub fn reduce(q: Exponent, m: usize, certs: Vec<Result<DiscretizationCertificate>>) -> UniversalReport {
    let mut worst_c1 = f64::INFINITY;
    let mut worst_c2 = f64::NEG_INFINITY;
    let mut argmin = None;
    let mut failures = Vec::new();
    let mut out = Vec::with_capacity(certs.len());
    for (i, c) in certs.into_iter().enumerate() {
        match c {
            Ok(c) => {
                if c.c1 < worst_c1 {
                    worst_c1 = c.c1;
                    argmin = Some(i);
                }
                worst_c2 = worst_c2.max(c.c2);
                out.push(Some(c));
            }
            Err(e) => {
                failures.push((i, e.to_string()));
                out.push(None);
            }
        }
    }
    UniversalReport {
        q,
        m,
        worst_c1,
        worst_c2,
        argmin,
        certificates: out,
        failures,
    }
}

/// Maps points of `[0,1)^d` onto the torus by `x ↦ 2πx`.
pub fn cube_to_torus(points: &PointSet) -> Result<PointSet> {
    let flat = points.as_flat().iter().map(|&x| TAU * x).collect();
    PointSet::from_flat(points.dim(), Frame::Torus, flat)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionUniversalRow {
    pub c: u32,
    pub n: u32,
    /// Worst-member `L∞` ratio (`∞` when some member is not normed).
    pub worst_ratio: f64,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionUniversalReport {
    pub r: u32,
    pub dispersion: f64,
    /// `disp(T) · 2^r`.
    pub scaled_dispersion: f64,
    pub rows: Vec<DispersionUniversalRow>,
    /// Smallest `c` whose worst ratio is finite and at most the threshold.
    pub smallest_c: Option<u32>,
    pub threshold: f64,
}

/// For `c = 0..=c_max`, the worst `L∞` ratio of `2πT` over `C(r−c, d)`.
pub fn dispersion_implies_universal_check(
    t: &PointSet,
    r: u32,
    c_max: u32,
    threshold: f64,
    oversample: usize,
) -> Result<DispersionUniversalReport> {
    let disp = dispersion(t)?;
    let torus = cube_to_torus(t)?;
    let mut rows = Vec::new();
    for c in 0..=c_max.min(r.saturating_sub(1)) {
        let n = r - c;
        let coll = Collection::dyadic(n, t.dim())?;
        let budget = MemberBudget {
            oversample,
            ..MemberBudget::default()
        };
        let rep = certify_universal(&coll, &torus, Exponent::Infinity, &budget);
        let worst_ratio = if rep.worst_c1 > 0.0 && rep.failures.is_empty() {
            1.0 / rep.worst_c1
        } else {
            f64::INFINITY
        };
        rows.push(DispersionUniversalRow {
            c,
            n,
            worst_ratio,
            failures: rep.failures.len(),
        });
    }
    let smallest_c = rows
        .iter()
        .find(|row| row.worst_ratio.is_finite() && row.worst_ratio <= threshold)
        .map(|row| row.c);
    Ok(DispersionUniversalReport {
        r,
        dispersion: disp,
        scaled_dispersion: disp * powf(2.0, r as f64),
        rows,
        smallest_c,
        threshold,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalDispersionReport {
    pub n: u32,
    pub dispersion: f64,
    /// Fitted `C(d) = disp(T) · 2^n`.
    pub fitted_c: f64,
    /// `disp(T) ≤ C(d) 2^{−n}` with the supplied constant.
    pub holds: bool,
}

/// Given that `T` discretizes `C(n,d)` universally, checks
/// `disp(T) ≤ C(d) 2^{−n}` for the supplied `C(d)` and reports the fitted one.
pub fn universal_implies_dispersion_check(t: &PointSet, n: u32, c_d: f64) -> Result<UniversalDispersionReport> {
    let disp = dispersion(t)?;
    let fitted_c = disp * powf(2.0, n as f64);
    Ok(UniversalDispersionReport {
        n,
        dispersion: disp,
        fitted_c,
        holds: fitted_c <= c_d,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseReport {
    pub v: usize,
    pub n: u32,
    pub d: usize,
    pub q: Exponent,
    pub m: usize,
    pub enumerated: bool,
    pub members: usize,
    pub worst_c1: f64,
    pub worst_c2: f64,
    /// Fraction of members with `C₁ ≤ 1e−12` or a failed certifier.
    pub failure_fraction: f64,
    /// `v² n` for `q = 2`, `v² n^{9/2}` for `q = 1` (unit constant).
    pub regime_m: f64,
    pub seed: u64,
}

/// Largest `binom(|Π_n|, v)` enumerated exhaustively.
pub const ENUMERATION_CAP: usize = 100_000;

/// All `v`-subsets of `0..n` in lex order.
fn combinations(n: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if v > n {
        return out;
    }
    let mut c: Vec<usize> = (0..v).collect();
    loop {
        out.push(c.clone());
        let mut i = v;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] != i + n - v {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        c[i] += 1;
        for j in i + 1..v {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Certifies one iid draw of `m` points for every (or `sample_count` seeded
/// random) member of `S(v, n)`.
#[allow(clippy::too_many_arguments)]
pub fn universal_random_for_sparse(
    v: usize,
    n: u32,
    d: usize,
    q: Exponent,
    m: usize,
    seed: u64,
    sample_count: usize,
    budget: &MemberBudget,
) -> Result<SparseReport> {
    let qf = match q {
        Exponent::Finite(p) if p == 1.0 || p == 2.0 => p,
        _ => return Err(Error::invalid("q must be 1 or 2")),
    };
    let pi = pi_n(n, d)?;
    if v == 0 || v > pi.len() {
        return Err(Error::invalid("v must lie in 1..=|Π_n|"));
    }
    let points = PointSet::random(d, Frame::Torus, m, &mut stream(seed, 0));
    let total = binomial(pi.len(), v);
    let enumerated = total <= ENUMERATION_CAP;
    let subsets: Vec<Vec<usize>> = if enumerated {
        combinations(pi.len(), v)
    } else {
        (0..sample_count)
            .map(|i| {
                let mut s = index::sample(&mut stream(seed, 1 + i as u64), pi.len(), v).into_vec();
                s.sort_unstable();
                s
            })
            .collect()
    };
    let members = subsets.len();
    let mut certs = Vec::with_capacity(members);
    for s in &subsets {
        let rows: Vec<&[i64]> = s.iter().map(|&i| pi.get(i)).collect();
        let member = FrequencySet::explicit(d, &rows)?;
        certs.push(certify_member(&member, &points, q, budget));
    }
    let failed = certs.iter().filter(|c| c.as_ref().map_or(true, |c| c.c1 <= 1e-12)).count();
    let rep = reduce(q, m, certs);
    let vf = v as f64;
    let regime_m = if qf == 2.0 {
        vf * vf * n as f64
    } else {
        vf * vf * powf(n as f64, 4.5)
    };
    Ok(SparseReport {
        v,
        n,
        d,
        q,
        m,
        enumerated,
        members,
        worst_c1: rep.worst_c1,
        worst_c2: rep.worst_c2,
        failure_fraction: if members == 0 { 0.0 } else { failed as f64 / members as f64 },
        regime_m,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::certify_l2;

    #[test]
    fn collection_sizes() {
        assert_eq!(Collection::dyadic(3, 2).unwrap().len(), 4);
        assert_eq!(Collection::dyadic(4, 2).unwrap().len(), 5);
        assert_eq!(pi_n(3, 2).unwrap().len(), 49);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(7, 2).len(), 21);
        assert_eq!(combinations(5, 5).len(), 1);
        assert_eq!(combinations(4, 1), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn complex_gram_matches_real_basis_on_symmetric_sets() {
        let q = FrequencySet::build_box(&[2, 1]).unwrap();
        let pts = PointSet::random(2, Frame::Torus, 30, &mut stream(5, 0));
        let rule = WeightedRule::equal_weight(pts.clone());
        let (a, b) = complex_gram_extremes(&q, &pts, &rule.weights).unwrap();
        let c = certify_l2(&TrigSystem::orthonormal(&q), &rule).unwrap();
        assert!((a - c.c1).abs() < 1e-10 && (b - c.c2).abs() < 1e-10);
    }

    #[test]
    fn tensor_grid_certifies_dyadic_collection() {
        let coll = Collection::dyadic(3, 2).unwrap();
        let grid = PointSet::torus_grid(&[16, 16]).unwrap();
        let rep = certify_universal(&coll, &grid, Exponent::Finite(2.0), &MemberBudget::default());
        assert!(rep.failures.is_empty());
        assert!((rep.worst_c1 - 1.0).abs() < 1e-10 && (rep.worst_c2 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sparse_enumeration() {
        let r = universal_random_for_sparse(2, 3, 1, Exponent::Finite(2.0), 64, 11, 0, &MemberBudget::default())
            .unwrap();
        assert!(r.enumerated && r.members == 21);
        assert!(r.worst_c1 > 0.0);
        let one = universal_random_for_sparse(1, 2, 1, Exponent::Finite(2.0), 1, 4, 0, &MemberBudget::default())
            .unwrap();
        assert!((one.worst_c1 - 1.0).abs() < 1e-12);
    }
}
