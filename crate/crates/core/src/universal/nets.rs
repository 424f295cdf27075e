use alloc::vec;
use alloc::vec::Vec;

use crate::spaces::{Frame, PointSet};
use crate::{Error, Result};

/// A `(t, r, d)`-net in base 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetParams {
    pub t: u32,
    pub r: u32,
    pub d: usize,
}

/// Dyadic box `∏ [a_j 2^{−s_j}, (a_j+1) 2^{−s_j})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicBox {
    pub shape: Vec<u32>,
    pub position: Vec<u64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetVerdict {
    pub is_net: bool,
    /// First box (shapes in lex order, positions in row-major order) whose
    /// count differs from `2^t`.
    pub violation: Option<DyadicBox>,
}

/// All `s ∈ N^d` with `Σ s_j = total`, in lex order.
pub fn compositions(total: u32, d: usize) -> Vec<Vec<u32>> {
    if d == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if d == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, d - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Checks that every dyadic box of volume `2^{t−r}` holds exactly `2^t` points.
pub fn verify_net(points: &PointSet, params: NetParams) -> Result<NetVerdict> {
    let NetParams { t, r, d } = params;
    if t > r {
        return Err(Error::invalid("t must not exceed r"));
    }
    if r > 40 {
        return Err(Error::CapExceeded {
            what: "net level r",
            value: r as usize,
            cap: 40,
        });
    }
    if points.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: points.dim(),
        });
    }
    if points.len() as u64 != 1u64 << r {
        return Err(Error::invalid("a (t,r,d)-net has exactly 2^r points"));
    }
    if points.as_flat().iter().any(|&x| !(0.0..1.0).contains(&x)) {
        return Err(Error::invalid("points must lie in [0,1)^d"));
    }
    let want = 1usize << t;
    let cells = 1usize << (r - t);
    for shape in compositions(r - t, d) {
        let mut counts = vec![0usize; cells];
        for p in points.iter() {
            let mut idx = 0usize;
            for (&x, &s) in p.iter().zip(&shape) {
                let cell = crate::math::floor(x * (1u64 << s) as f64) as usize;
                idx = (idx << s) | cell;
            }
            counts[idx] += 1;
        }
        if let Some(bad) = counts.iter().position(|&c| c != want) {
            let mut position = vec![0u64; d];
            let mut rem = bad;
            for j in (0..d).rev() {
                position[j] = (rem & ((1usize << shape[j]) - 1)) as u64;
                rem >>= shape[j];
            }
            return Ok(NetVerdict {
                is_net: false,
                violation: Some(DyadicBox {
                    shape,
                    position,
                    count: counts[bad],
                }),
            });
        }
    }
    Ok(NetVerdict {
        is_net: true,
        violation: None,
    })
}

/// Base-2 radical inverse of `i` with `r` digits.
pub fn van_der_corput(i: u64, r: u32) -> f64 {
    if r == 0 {
        return 0.0;
    }
    let rev = i.reverse_bits() >> (64 - r);
    rev as f64 / (1u64 << r) as f64
}

/// `{(i/2^r, vdc₂(i)) : 0 ≤ i < 2^r}`, a `(0, r, 2)`-net.
pub fn build_hammersley_net(r: u32, d: usize) -> Result<PointSet> {
    if d != 2 {
        return Err(Error::Unsupported("only d = 2 nets are constructed".into()));
    }
    if r > 20 {
        return Err(Error::CapExceeded {
            what: "net level r",
            value: r as usize,
            cap: 20,
        });
    }
    let n = 1u64 << r;
    let mut flat = Vec::with_capacity(2 * n as usize);
    for i in 0..n {
        flat.push(i as f64 / n as f64);
        flat.push(van_der_corput(i, r));
    }
    PointSet::from_flat(2, Frame::Cube, flat)
}
