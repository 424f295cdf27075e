use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Error, Result};

/// Structural tag of a frequency set, with the parameters that generated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreqKind {
    /// `Π(N)`: `|k_j| ≤ N_j`.
    Box { n: Vec<u32> },
    /// `Γ(N)`: `∏ max(|k_j|, 1) ≤ N`.
    Hyperbolic { n: u64 },
    /// `R(s)`: `|k_j| < 2^{s_j}`.
    DyadicBlock { s: Vec<u32> },
    Lacunary,
    Explicit,
}

impl FreqKind {
    pub fn name(&self) -> &'static str {
        match self {
            FreqKind::Box { .. } => "box",
            FreqKind::Hyperbolic { .. } => "hyperbolic",
            FreqKind::DyadicBlock { .. } => "dyadic_block",
            FreqKind::Lacunary => "lacunary",
            FreqKind::Explicit => "explicit",
        }
    }
}

/// A finite subset of `Z^d`, kept in lexicographic order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencySet {
    dim: usize,
    flat: Vec<i64>,
    kind: FreqKind,
}

fn lex(a: &[i64], b: &[i64]) -> Ordering {
    a.cmp(b)
}

impl FrequencySet {
    /// `Π(N) = {k : |k_j| ≤ N_j}`.
    pub fn build_box(n: &[u32]) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::invalid("box needs dimension ≥ 1"));
        }
        let d = n.len();
        let total: usize = n.iter().map(|&v| 2 * v as usize + 1).product();
        let mut flat = Vec::with_capacity(total * d);
        let mut k: Vec<i64> = n.iter().map(|&v| -(v as i64)).collect();
        loop {
            flat.extend_from_slice(&k);
            let mut j = d;
            loop {
                if j == 0 {
                    return Ok(FrequencySet {
                        dim: d,
                        flat,
                        kind: FreqKind::Box { n: n.to_vec() },
                    });
                }
                j -= 1;
                if k[j] < n[j] as i64 {
                    k[j] += 1;
                    for t in j + 1..d {
                        k[t] = -(n[t] as i64);
                    }
                    break;
                }
            }
        }
    }

    /// `Γ(N) = {k ∈ Z^d : ∏ max(|k_j|,1) ≤ N}`.
    pub fn build_hyperbolic(n: u64, d: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("hyperbolic cross needs N ≥ 1"));
        }
        if d < 1 {
            return Err(Error::invalid("hyperbolic cross needs d ≥ 1"));
        }
        let mut flat = Vec::new();
        let mut cur = vec![0i64; d];
        fn rec(j: usize, budget: u64, cur: &mut Vec<i64>, flat: &mut Vec<i64>) {
            if j == cur.len() {
                flat.extend_from_slice(cur);
                return;
            }
            let b = budget as i64;
            for k in -b..=b {
                let w = k.unsigned_abs().max(1);
                if w > budget {
                    continue;
                }
                cur[j] = k;
                rec(j + 1, budget / w, cur, flat);
            }
        }
        rec(0, n, &mut cur, &mut flat);
        Ok(FrequencySet {
            dim: d,
            flat,
            kind: FreqKind::Hyperbolic { n },
        })
    }

    /// `R(s) = Π(N)` with `N_j = 2^{s_j} − 1`.
    pub fn build_dyadic_block(s: &[u32]) -> Result<Self> {
        if s.iter().any(|&v| v > 30) {
            return Err(Error::invalid("dyadic block exponent too large"));
        }
        let n: Vec<u32> = s.iter().map(|&v| (1u32 << v) - 1).collect();
        let mut q = Self::build_box(&n)?;
        q.kind = FreqKind::DyadicBlock { s: s.to_vec() };
        Ok(q)
    }

    /// Arbitrary set; sorted into canonical order. Duplicates are rejected.
    pub fn explicit<R: AsRef<[i64]>>(dim: usize, freqs: &[R]) -> Result<Self> {
        Self::with_kind(dim, freqs, FreqKind::Explicit)
    }

    pub fn with_kind<R: AsRef<[i64]>>(dim: usize, freqs: &[R], kind: FreqKind) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("frequency set needs dimension ≥ 1"));
        }
        let mut rows: Vec<&[i64]> = Vec::with_capacity(freqs.len());
        for f in freqs {
            let f = f.as_ref();
            if f.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.len(),
                });
            }
            rows.push(f);
        }
        rows.sort_by(|a, b| lex(a, b));
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate frequency"));
        }
        let flat = rows.concat();
        let q = FrequencySet { dim, flat, kind };
        q.check_kind()?;
        Ok(q)
    }

    /// Re-derives the set from its kind parameters and compares.
    fn check_kind(&self) -> Result<()> {
        let expected = match &self.kind {
            FreqKind::Box { n } => Some(Self::build_box(n)?),
            FreqKind::Hyperbolic { n } => Some(Self::build_hyperbolic(*n, self.dim)?),
            FreqKind::DyadicBlock { s } => Some(Self::build_dyadic_block(s)?),
            _ => None,
        };
        match expected {
            Some(e) if e.flat != self.flat || e.dim != self.dim => {
                Err(Error::invalid("frequencies do not match the declared kind"))
            }
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.flat.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn kind(&self) -> &FreqKind {
        &self.kind
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[i64] {
        &self.flat[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.flat.chunks_exact(self.dim)
    }

    pub fn index_of(&self, k: &[i64]) -> Option<usize> {
        if k.len() != self.dim {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match lex(self.get(mid), k) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        self.index_of(k).is_some()
    }

    /// `max_k |k_j|` per axis.
    pub fn max_abs_per_axis(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.dim];
        for k in self.iter() {
            for (mj, kj) in m.iter_mut().zip(k) {
                *mj = (*mj).max(kj.unsigned_abs());
            }
        }
        m
    }

    /// `−Q = Q`.
    pub fn is_symmetric(&self) -> bool {
        let mut neg = vec![0i64; self.dim];
        self.iter().all(|k| {
            for (n, v) in neg.iter_mut().zip(k) {
                *n = -v;
            }
            self.contains(&neg)
        })
    }

    /// `Q ∪ (−Q)`.
    pub fn symmetrized(&self) -> Self {
        if self.is_symmetric() {
            return self.clone();
        }
        let mut rows: Vec<Vec<i64>> = self.iter().map(|k| k.to_vec()).collect();
        for k in self.iter() {
            let n: Vec<i64> = k.iter().map(|v| -v).collect();
            if !self.contains(&n) {
                rows.push(n);
            }
        }
        Self::explicit(self.dim, &rows).expect("symmetrization keeps rows distinct")
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.iter().map(|k| k.to_vec()).collect()
    }
}
