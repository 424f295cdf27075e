use alloc::vec::Vec;

use crate::exact::select_nodes_by_determinant;
use crate::math::KahanSum;
use crate::numkernel::{lstsq, norm2, Lu};
use crate::rng::stream;
use crate::spaces::{design_matrix, Frame, MonomialSystem, PointSet, System};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub vars: usize,
    pub q: u32,
    /// `M = binom(N + q − 1, q)`.
    pub m: usize,
    pub nodes: PointSet,
    /// Unique solution of the moment system.
    pub weights: Vec<f64>,
    pub abs_det: f64,
    /// `max_ν |λ_ν − 1/M|`.
    pub max_weight_deviation: f64,
    /// Moment residual of the uniform weights `1/M`.
    pub uniform_residual: f64,
    /// Smallest least-squares moment residual over the `M` rules that drop one
    /// node; positive means no rule on fewer nodes exists.
    pub min_drop_one_residual: f64,
    pub candidates: usize,
    pub seed: u64,
}

/// Largest `M` handled.
pub const WITNESS_CAP: usize = 500;

/// Selects `M` points for the homogeneous monomials of degree `q` in `N`
/// variables, puts the uniform measure on them and solves the exact
/// discretization system for `f = Σ b_j x_j`.
pub fn gft2_witness(vars: usize, q: u32, seed: u64) -> Result<WitnessReport> {
    if q == 0 || q % 2 != 0 {
        return Err(Error::invalid("q must be a positive even integer"));
    }
    let sys = MonomialSystem::new(vars, q)?;
    let m = sys.len();
    if m > WITNESS_CAP {
        return Err(Error::CapExceeded {
            what: "M(N,q)",
            value: m,
            cap: WITNESS_CAP,
        });
    }
    let mut pool = 4 * m;
    let mut attempt = 0u64;
    let sel = loop {
        let cands = PointSet::random(vars, Frame::Cube, pool, &mut stream(seed, attempt));
        match select_nodes_by_determinant(&sys, &cands) {
            Ok(s) => break s,
            Err(Error::SpanDeficiency { .. }) if attempt < 6 => {
                pool *= 2;
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let u = design_matrix(&sys, &sel.nodes);
    // Moments of the uniform measure on the selected nodes.
    let moments: Vec<f64> = (0..m)
        .map(|k| {
            let mut s = KahanSum::default();
            (0..m).for_each(|nu| s.add(u[(nu, k)]));
            s.value() / m as f64
        })
        .collect();
    let weights = Lu::new(&u)?.solve_transpose(&moments)?;
    let uniform = alloc::vec![1.0 / m as f64; m];
    let got = u.t_matvec(&uniform);
    let uniform_residual = norm2(&got.iter().zip(&moments).map(|(a, b)| a - b).collect::<Vec<_>>());
    let max_weight_deviation = weights.iter().map(|w| (w - 1.0 / m as f64).abs()).fold(0.0, f64::max);
    let ut = u.transpose();
    let mut min_drop_one_residual = f64::INFINITY;
    if m > 1 {
        for drop in 0..m {
            let keep: Vec<usize> = (0..m).filter(|&i| i != drop).collect();
            let r = lstsq(&ut.select_cols(&keep), &moments, 1e-13)?.residual_norm;
            min_drop_one_residual = min_drop_one_residual.min(r);
        }
    }
    Ok(WitnessReport {
        vars,
        q,
        m,
        nodes: sel.nodes.clone(),
        weights,
        abs_det: sel.abs_det(),
        max_weight_deviation,
        uniform_residual,
        min_drop_one_residual,
        candidates: pool,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_cases() {
        for (n, q, m) in [(1usize, 2u32, 1usize), (2, 2, 3), (2, 4, 5)] {
            let r = gft2_witness(n, q, 1).unwrap();
            assert_eq!(r.m, m);
            assert!(r.max_weight_deviation <= 1e-9);
            assert!(r.uniform_residual <= 1e-9);
            assert!(r.weights.iter().all(|&w| w != 0.0));
            if m > 1 {
                assert!(r.min_drop_one_residual > 1e-6);
            }
        }
    }
}
