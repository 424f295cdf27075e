use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::math::{ln, powf};
use crate::rng::{normal, stream};
use crate::spaces::{design_matrix, Complex, FrequencySet, PointSet, System, TrigPolynomial, TrigSystem};
use crate::{Error, Result};

/// `max_grid |f| / max_{grid∖B} |f|` with `B` given by grid indices.
pub fn remez_ratio(values: &[f64], excluded: &[usize]) -> Result<f64> {
    let mut mask = alloc::vec![false; values.len()];
    for &i in excluded {
        mask[i] = true;
    }
    let all = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let rest = values
        .iter()
        .zip(&mask)
        .filter(|(_, &e)| !e)
        .fold(None, |m: Option<f64>, (v, _)| Some(m.unwrap_or(0.0).max(v.abs())));
    match rest {
        None => Err(Error::invalid("B covers the whole grid")),
        Some(r) if r > 0.0 => Ok(all / r),
        Some(_) => Ok(if all > 0.0 { f64::INFINITY } else { 1.0 }),
    }
}

/// `C₂ / (N^{α_d} (log N)^{β_d})`, the admissible measure of `B`.
pub fn remez_threshold(n: u64, d: usize, c2: f64) -> f64 {
    let (a, b) = crate::hypercross::alpha_beta(d);
    let nf = n.max(2) as f64;
    c2 / (powf(nf, a) * powf(ln(nf), b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemezReport {
    pub measure_of_b: f64,
    /// Grid cells removed per trial.
    pub excluded_cells: usize,
    pub grid_sizes: Vec<usize>,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub threshold: f64,
    pub below_threshold: bool,
    pub seed: u64,
}

/// Random real `f` in the span of `q` against random unions of grid cells of
/// normalized measure `≤ measure_of_b`.
pub fn remez_check(
    q: &FrequencySet,
    measure_of_b: f64,
    trials: usize,
    seed: u64,
    oversample: usize,
    c2: f64,
) -> Result<RemezReport> {
    if !(0.0..1.0).contains(&measure_of_b) {
        return Err(Error::invalid("measure of B must lie in [0, 1)"));
    }
    let sys = TrigSystem::orthonormal(q);
    let sizes: Vec<usize> = q
        .max_abs_per_axis()
        .iter()
        .map(|&k| oversample.max(1) * (2 * k as usize + 1))
        .collect();
    let grid = PointSet::torus_grid(&sizes)?;
    let g = grid.len();
    let k = crate::math::floor(measure_of_b * g as f64) as usize;
    if k >= g {
        return Err(Error::invalid("B covers the whole grid"));
    }
    let v = design_matrix(&sys, &grid);
    let mut ratios = Vec::with_capacity(trials);
    let mut cells: Vec<usize> = (0..g).collect();
    for t in 0..trials {
        let mut rng = stream(seed, t as u64);
        let b: Vec<f64> = (0..sys.len()).map(|_| normal(&mut rng)).collect();
        cells.shuffle(&mut rng);
        ratios.push(remez_ratio(&v.matvec(&b), &cells[..k])?);
    }
    let max_ratio = ratios.iter().copied().fold(1.0, f64::max);
    let n = q.max_abs_per_axis().into_iter().max().unwrap_or(0);
    let threshold = remez_threshold(n, q.dim(), c2);
    Ok(RemezReport {
        measure_of_b,
        excluded_cells: k,
        grid_sizes: sizes,
        ratios,
        max_ratio,
        threshold,
        below_threshold: measure_of_b <= threshold,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinReport {
    pub n: u64,
    pub d: usize,
    /// `max ‖f^{(1,…,1)}‖_{∞,grid} / (N (log N)^{d−1} ‖f‖_{∞,grid})`.
    pub c_hat: f64,
    /// Trial attaining `c_hat`; `None` for the single-mode probe.
    pub best_trial: Option<usize>,
    pub grid_sizes: Vec<usize>,
    pub seed: u64,
}

fn sup_on(values: &[Complex]) -> f64 {
    values.iter().fold(0.0f64, |m, c| m.max(c.abs()))
}

/// Empirical Bernstein constant for the mixed derivative on `T(N)`, the
/// hyperbolic cross span.
pub fn bernstein_probe(n: u64, d: usize, trials: usize, seed: u64, oversample: usize) -> Result<BernsteinReport> {
    if n < 2 {
        return Err(Error::invalid("N must be at least 2"));
    }
    let q = FrequencySet::build_hyperbolic(n, d)?;
    let sizes: Vec<usize> = q
        .max_abs_per_axis()
        .iter()
        .map(|&k| oversample.max(1) * (2 * k as usize + 1))
        .collect();
    let grid = PointSet::torus_grid(&sizes)?;
    let norm = n as f64 * powf(ln(n as f64), (d - 1) as f64);
    // Multipliers ∏ i k_j of the mixed derivative.
    let mult: Vec<Complex> = q
        .iter()
        .map(|k| {
            k.iter().fold(Complex::ONE, |acc, &kj| acc * Complex { re: 0.0, im: kj as f64 })
        })
        .collect();
    let ratio = |c: Vec<Complex>| -> Result<f64> {
        let dc: Vec<Complex> = c.iter().zip(&mult).map(|(a, b)| *a * *b).collect();
        let f = TrigPolynomial::new(q.clone(), c)?;
        let df = TrigPolynomial::new(q.clone(), dc)?;
        let fv: Vec<Complex> = grid.iter().map(|x| f.eval_unchecked(x)).collect();
        let dv: Vec<Complex> = grid.iter().map(|x| df.eval_unchecked(x)).collect();
        Ok(sup_on(&dv) / (norm * sup_on(&fv)))
    };
    let mut single = alloc::vec![Complex::ZERO; q.len()];
    let mut top = alloc::vec![1i64; d];
    top[0] = n as i64;
    let idx = q.index_of(&top).ok_or_else(|| Error::invalid("top mode missing from the cross"))?;
    single[idx] = Complex::ONE;
    let mut c_hat = ratio(single)?;
    let mut best_trial = None;
    for t in 0..trials {
        let mut rng = stream(seed, t as u64);
        let c: Vec<Complex> = (0..q.len())
            .map(|_| Complex {
                re: normal(&mut rng),
                im: normal(&mut rng),
            })
            .collect();
        let r = ratio(c)?;
        if r > c_hat {
            c_hat = r;
            best_trial = Some(t);
        }
    }
    Ok(BernsteinReport {
        n,
        d,
        c_hat,
        best_trial,
        grid_sizes: sizes,
        seed,
    })
}
