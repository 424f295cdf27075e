use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::certify::certify_linfty;
use crate::math::{ceil, sqrt, TAU};
use crate::numkernel::{DenseMatrix, Lu};
use crate::rng::{normal, stream};
use crate::spaces::{Complex, Frame, FrequencySet, PointSet, RealMode, ModeKind, TrigSystem};
use crate::{Error, Result};

/// Block frequencies `k_n, …, k_{2n−1}` with block half-width `ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionLParams {
    pub n: usize,
    pub b: f64,
    pub big_k: f64,
    pub nu: u64,
    pub k_values: Vec<u64>,
}

/// Largest frequency allowed in a construction.
pub const MAX_FREQUENCY: u64 = 1 << 40;

fn clause(name: &str, excess: f64) -> Error {
    Error::Infeasible {
        msg: format!("Condition L clause violated: {name}"),
        residual: excess,
    }
}

/// Checks the four clauses: divisibility by `k_n`, growth `k_{j+1} ≥ b k_j`,
/// `ν ≤ (b−1) k_n / 3` and `ν n ≤ K k_n`.
pub fn verify_condition_l(p: &ConditionLParams) -> Result<()> {
    if p.n == 0 || p.k_values.len() != p.n {
        return Err(Error::invalid("need exactly n block frequencies"));
    }
    if !(p.b > 1.0) || !(p.big_k > 0.0) {
        return Err(Error::invalid("b must exceed 1 and K must be positive"));
    }
    let kn = p.k_values[0];
    if kn == 0 {
        return Err(clause("k_n positive", 0.0));
    }
    if let Some(k) = p.k_values.iter().find(|&&k| k % kn != 0) {
        return Err(clause("divisibility by k_n", (k % kn) as f64));
    }
    for w in p.k_values.windows(2) {
        if (w[1] as f64) < p.b * w[0] as f64 {
            return Err(clause("growth k_{j+1} >= b k_j", p.b * w[0] as f64 - w[1] as f64));
        }
    }
    let nu = p.nu as f64;
    if nu > (p.b - 1.0) * kn as f64 / 3.0 {
        return Err(clause("nu <= (b-1) k_n / 3", nu - (p.b - 1.0) * kn as f64 / 3.0));
    }
    if nu * p.n as f64 > p.big_k * kn as f64 {
        return Err(clause("nu n <= K k_n", nu * p.n as f64 - p.big_k * kn as f64));
    }
    Ok(())
}

/// `k_j = k_n ⌈b⌉^{j−n}` with `k_n = max(⌈b⌉, ⌈νn/K⌉, ⌈3ν/(b−1)⌉)`.
pub fn build_condition_l(n: usize, b: f64, nu: u64, big_k: f64) -> Result<ConditionLParams> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if !(b > 1.0) || !(big_k > 0.0) || !b.is_finite() {
        return Err(Error::invalid("b must exceed 1 and K must be positive"));
    }
    let nuf = nu as f64;
    let ratio = ceil(b) as u64;
    let kn = (ceil(b)).max(ceil(nuf * n as f64 / big_k)).max(ceil(3.0 * nuf / (b - 1.0))) as u64;
    let mut k_values = Vec::with_capacity(n);
    let mut k = kn;
    for j in 0..n {
        if j > 0 {
            k = k.checked_mul(ratio).filter(|&v| v <= MAX_FREQUENCY).ok_or(Error::CapExceeded {
                what: "lacunary frequency",
                value: usize::MAX,
                cap: MAX_FREQUENCY as usize,
            })?;
        }
        k_values.push(k);
    }
    let p = ConditionLParams {
        n,
        b,
        big_k,
        nu,
        k_values,
    };
    verify_condition_l(&p)?;
    Ok(p)
}

impl ConditionLParams {
    /// `Λ(𝒦, ν) = ∪_j [k_j − ν, k_j + ν]`.
    pub fn frequencies(&self) -> Result<FrequencySet> {
        let nu = self.nu as i64;
        let rows: Vec<[i64; 1]> = self
            .k_values
            .iter()
            .flat_map(|&k| (-nu..=nu).map(move |l| [k as i64 + l]))
            .collect();
        FrequencySet::explicit(1, &rows)
    }

    fn max_frequency(&self) -> u64 {
        self.k_values.last().copied().unwrap_or(0) + self.nu
    }
}

/// Values of `Σ_k c_k e^{ikx}` on the grid `2πl/L` by table lookup.
fn eval_on_grid(freqs: &[i64], coeffs: &[Complex], table: &[Complex]) -> Vec<Complex> {
    let l = table.len() as i64;
    (0..l)
        .map(|x| {
            let mut s = Complex::ZERO;
            for (&k, &c) in freqs.iter().zip(coeffs) {
                s += c * table[(k * x).rem_euclid(l) as usize];
            }
            s
        })
        .collect()
}

fn cis_table(l: usize) -> Vec<Complex> {
    (0..l).map(|t| Complex::cis(TAU * t as f64 / l as f64)).collect()
}

fn sup(v: &[Complex]) -> f64 {
    v.iter().fold(0.0f64, |m, c| m.max(c.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallBallReport {
    /// `max Σ_j ‖p_j‖₁ / ‖f‖_{∞,grid}` over the probes.
    pub c_hat: f64,
    /// Ratio of the flat witness `p_j ≡ 1`.
    pub flat_ratio: f64,
    /// Trial attaining `c_hat`; `None` for the flat witness.
    pub best_trial: Option<usize>,
    pub grid_points: usize,
    pub seed: u64,
}

/// Random block polynomials `f = Σ p_j e^{ik_jx}`, `p_j ∈ T(ν)`, plus the flat
/// witness.
pub fn small_ball_probe(p: &ConditionLParams, trials: usize, seed: u64, oversample: usize) -> Result<SmallBallReport> {
    verify_condition_l(p)?;
    let nu = p.nu as i64;
    let width = (2 * nu + 1) as usize;
    let grid_f = oversample.max(1) * (2 * p.max_frequency() as usize + 1);
    let grid_p = 8 * oversample.max(1) * width;
    if grid_f > 1 << 24 {
        return Err(Error::CapExceeded {
            what: "small-ball grid",
            value: grid_f,
            cap: 1 << 24,
        });
    }
    let tf = cis_table(grid_f);
    let tp = cis_table(grid_p);
    let local: Vec<i64> = (-nu..=nu).collect();
    let freqs: Vec<i64> = p
        .k_values
        .iter()
        .flat_map(|&k| local.iter().map(move |&l| k as i64 + l))
        .collect();
    let ratio = |c: &[Complex]| -> f64 {
        let mut num = 0.0;
        for block in c.chunks(width) {
            let v = eval_on_grid(&local, block, &tp);
            num += v.iter().map(|z| z.abs()).sum::<f64>() / grid_p as f64;
        }
        num / sup(&eval_on_grid(&freqs, c, &tf))
    };
    let mut flat = vec![Complex::ZERO; freqs.len()];
    for j in 0..p.n {
        flat[j * width + nu as usize] = Complex::ONE;
    }
    let flat_ratio = ratio(&flat);
    let (mut c_hat, mut best_trial) = (flat_ratio, None);
    for t in 0..trials {
        let mut rng = stream(seed, t as u64);
        let c: Vec<Complex> = (0..freqs.len())
            .map(|_| Complex {
                re: normal(&mut rng),
                im: normal(&mut rng),
            })
            .collect();
        let r = ratio(&c);
        if r > c_hat {
            c_hat = r;
            best_trial = Some(t);
        }
    }
    Ok(SmallBallReport {
        c_hat,
        flat_ratio,
        best_trial,
        grid_points: grid_f,
        seed,
    })
}

/// `max_x Σ_j |ψ_j(x)|` for interpolation from `points.len() = |freqs|` nodes in
/// the complex span of `e^{ikx}`; `None` when the nodes are unisolvent-deficient.
/// This is the exact fixed-set ratio `sup ‖f‖_{∞,ref} / max_j |f(ξ^j)|`.
pub fn lebesgue_ratio(freqs: &[i64], points: &[f64], reference: &[f64]) -> Result<Option<f64>> {
    let n = freqs.len();
    if points.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: points.len(),
        });
    }
    // A[l][j] = e^{i k_l ξ_j}, real embedding of A ψ = e(x).
    let mut a = DenseMatrix::zeros(2 * n, 2 * n);
    for (l, &k) in freqs.iter().enumerate() {
        for (j, &xi) in points.iter().enumerate() {
            let z = Complex::cis(k as f64 * xi);
            a[(l, j)] = z.re;
            a[(l, n + j)] = -z.im;
            a[(n + l, j)] = z.im;
            a[(n + l, n + j)] = z.re;
        }
    }
    let lu = match Lu::new(&a) {
        Ok(lu) if lu.pivot_ratio() > 1e-12 => lu,
        _ => return Ok(None),
    };
    let mut best = 0.0f64;
    let mut rhs = vec![0.0; 2 * n];
    for &x in reference {
        for (l, &k) in freqs.iter().enumerate() {
            let z = Complex::cis(k as f64 * x);
            rhs[l] = z.re;
            rhs[n + l] = z.im;
        }
        let psi = lu.solve(&rhs)?;
        let s: f64 = (0..n).map(|j| sqrt(psi[j] * psi[j] + psi[n + j] * psi[n + j])).sum();
        best = best.max(s);
    }
    Ok(Some(best))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LacunaryFamily {
    /// `N` equispaced points.
    Uniform,
    /// `N` iid uniform points.
    Random,
    /// `m` equispaced points, certified through the real-part LP.
    Dense { m: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LacunaryRow {
    pub family: LacunaryFamily,
    pub n_dim: usize,
    pub m: usize,
    /// `∞` when some nonzero `f` vanishes on the points.
    pub ratio: f64,
    pub ratio_over_sqrt_n: f64,
    /// `lebesgue` (exact for the complex span) or `lp_real_part` (an upper
    /// bound through the real span of `cos kx, sin kx`).
    pub method: &'static str,
}

/// Largest reference grid for the LP-based dense family.
pub const DENSE_REFERENCE_CAP: usize = 4096;

/// Fixed-set `L∞` ratios of `T(Λ(𝒦, ν))` for each point family.
pub fn lacunary_ratio_probe(
    p: &ConditionLParams,
    families: &[LacunaryFamily],
    seed: u64,
    oversample: usize,
) -> Result<Vec<LacunaryRow>> {
    verify_condition_l(p)?;
    let lambda = p.frequencies()?;
    let freqs: Vec<i64> = lambda.iter().map(|k| k[0]).collect();
    let n = freqs.len();
    let l = oversample.max(1) * (2 * p.max_frequency() as usize + 1);
    let reference: Vec<f64> = (0..l).map(|i| TAU * i as f64 / l as f64).collect();
    let mut rows = Vec::new();
    for (fi, &family) in families.iter().enumerate() {
        let (m, ratio, method) = match family {
            LacunaryFamily::Uniform | LacunaryFamily::Random => {
                let pts: Vec<f64> = if family == LacunaryFamily::Uniform {
                    (0..n).map(|i| TAU * i as f64 / n as f64).collect()
                } else {
                    PointSet::random(1, Frame::Torus, n, &mut stream(seed, fi as u64)).as_flat().to_vec()
                };
                let r = lebesgue_ratio(&freqs, &pts, &reference)?.unwrap_or(f64::INFINITY);
                (n, r, "lebesgue")
            }
            LacunaryFamily::Dense { m } => {
                if l > DENSE_REFERENCE_CAP {
                    return Err(Error::CapExceeded {
                        what: "dense-family reference grid",
                        value: l,
                        cap: DENSE_REFERENCE_CAP,
                    });
                }
                let modes: Vec<RealMode> = freqs
                    .iter()
                    .flat_map(|&k| {
                        [ModeKind::Cos, ModeKind::Sin].map(|kind| RealMode {
                            freq: vec![k],
                            kind,
                            scale: 1.0,
                        })
                    })
                    .collect();
                let sys = TrigSystem::from_modes(1, modes, false)?;
                let pts = PointSet::torus_grid(&[m])?;
                let refp = PointSet::torus_grid(&[l])?;
                (m, certify_linfty(&sys, &pts, &refp)?.ratio, "lp_real_part")
            }
        };
        rows.push(LacunaryRow {
            family,
            n_dim: n,
            m,
            ratio,
            ratio_over_sqrt_n: ratio / sqrt(n as f64),
            method,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let p = build_condition_l(2, 2.0, 0, 1.0).unwrap();
        assert_eq!(p.k_values, vec![2, 4]);
        let p = build_condition_l(4, 2.0, 1, 4.0).unwrap();
        assert_eq!(p.k_values[0], 3);
        assert_eq!(p.k_values, vec![3, 6, 12, 24]);
    }

    #[test]
    fn violated_clauses() {
        let mut p = build_condition_l(3, 2.0, 0, 1.0).unwrap();
        p.nu = 5;
        assert!(matches!(verify_condition_l(&p), Err(Error::Infeasible { .. })));
        let mut q = build_condition_l(3, 2.0, 0, 1.0).unwrap();
        q.k_values[2] += 1;
        assert!(verify_condition_l(&q).is_err());
    }

    #[test]
    fn single_block_and_flat_witness() {
        let p = build_condition_l(1, 2.0, 2, 10.0).unwrap();
        let r = small_ball_probe(&p, 20, 3, 4).unwrap();
        assert!(r.c_hat <= 1.0 + 1e-12);
        let p = build_condition_l(4, 2.0, 0, 1.0).unwrap();
        let r = small_ball_probe(&p, 10, 3, 2).unwrap();
        assert!((r.flat_ratio - 1.0).abs() < 1e-12 && r.c_hat >= 1.0);
    }

    #[test]
    fn interpolation_identity() {
        let freqs = [1i64, 2, 4];
        let pts = [0.3, 1.9, 4.4];
        let r = lebesgue_ratio(&freqs, &pts, &pts).unwrap().unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        assert_eq!(lebesgue_ratio(&[4, 8], &[0.0, core::f64::consts::PI], &[0.1]).unwrap(), None);
    }

    #[test]
    fn dense_family_is_near_one() {
        let p = build_condition_l(2, 2.0, 0, 1.0).unwrap();
        let rows = lacunary_ratio_probe(&p, &[LacunaryFamily::Dense { m: 18 }, LacunaryFamily::Random], 1, 2).unwrap();
        assert!((rows[0].ratio - 1.0).abs() < 1e-9);
        assert!(rows[1].ratio >= 1.0);
    }
}
