use alloc::vec;
use alloc::vec::Vec;

use crate::spaces::FrequencySet;
use crate::{Error, Result};

/// `Q = {j² : 0 ≤ j ≤ N} ∪ {0, …, 2N}`.
pub fn build_sidon_quadratic(n: u32) -> Result<FrequencySet> {
    if n == 0 {
        return Err(Error::invalid("N must be positive"));
    }
    let mut v: Vec<i64> = (0..=n as i64).map(|j| j * j).chain(0..=2 * n as i64).collect();
    v.sort_unstable();
    v.dedup();
    let rows: Vec<[i64; 1]> = v.into_iter().map(|k| [k]).collect();
    FrequencySet::explicit(1, &rows)
}

/// `[3N + 1 − √(2N), 3N + 1]`.
pub fn sidon_bounds(n: u32) -> (f64, f64) {
    let nf = n as f64;
    (3.0 * nf + 1.0 - crate::math::sqrt(2.0 * nf), 3.0 * nf + 1.0)
}

/// First `j ∈ [0, N²]` that is not a difference of two elements of `Q`
/// (`None` when all are covered; the set `Q − Q` is symmetric).
pub fn sidon_coverage(q: &FrequencySet, n: u32) -> Option<u64> {
    let top = n as u64 * n as u64;
    let mut hit = vec![false; top as usize + 1];
    let vals: Vec<i64> = q.iter().map(|k| k[0]).collect();
    for &a in &vals {
        for &b in &vals {
            let diff = (a - b).unsigned_abs();
            if diff <= top {
                hit[diff as usize] = true;
            }
        }
    }
    hit.iter().position(|&h| !h).map(|j| j as u64)
}
