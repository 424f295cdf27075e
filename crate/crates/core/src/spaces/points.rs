use alloc::vec::Vec;

use crate::math::TAU;
use crate::{Error, Result};

/// Coordinate frame of a point set: the torus `[0,2π)^d` or the cube `[0,1)^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Torus,
    Cube,
}

impl Frame {
    pub fn period(self) -> f64 {
        match self {
            Frame::Torus => TAU,
            Frame::Cube => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Frame::Torus => "torus",
            Frame::Cube => "cube",
        }
    }
}

/// Points in a half-open frame, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    frame: Frame,
    flat: Vec<f64>,
}

impl PointSet {
    pub fn empty(dim: usize, frame: Frame) -> Self {
        PointSet {
            dim,
            frame,
            flat: Vec::new(),
        }
    }

    pub fn new<R: AsRef<[f64]>>(dim: usize, frame: Frame, points: &[R]) -> Result<Self> {
        let mut flat = Vec::with_capacity(points.len() * dim);
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            flat.extend_from_slice(p);
        }
        Self::from_flat(dim, frame, flat)
    }

    pub fn from_flat(dim: usize, frame: Frame, flat: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("point dimension must be ≥ 1"));
        }
        if flat.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim * (flat.len() / dim + 1),
                got: flat.len(),
            });
        }
        let period = frame.period();
        if let Some(bad) = flat.iter().find(|&&v| !(0.0..period).contains(&v)) {
            return Err(Error::invalid(alloc::format!(
                "coordinate {bad} outside the half-open {} frame",
                frame.name()
            )));
        }
        Ok(PointSet { dim, frame, flat })
    }

    /// Canonical grid `x^n = (2π n_j/(2N_j+1))` of size `ϑ(N) = ∏(2N_j+1)`.
    pub fn canonical_grid(n: &[u32]) -> Result<Self> {
        let sizes: Vec<usize> = n.iter().map(|&v| 2 * v as usize + 1).collect();
        Self::torus_grid(&sizes)
    }

    /// Tensor grid `2π j/L_i` on the torus, lexicographic order.
    pub fn torus_grid(sizes: &[usize]) -> Result<Self> {
        Self::tensor_grid(sizes, Frame::Torus)
    }

    /// Tensor grid `j/L_i` (times the frame period), lexicographic order.
    pub fn tensor_grid(sizes: &[usize], frame: Frame) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::invalid("grid sizes must be positive"));
        }
        let d = sizes.len();
        let total: usize = sizes.iter().product();
        let period = frame.period();
        let mut flat = Vec::with_capacity(total * d);
        let mut idx = alloc::vec![0usize; d];
        for _ in 0..total {
            for j in 0..d {
                flat.push(period * idx[j] as f64 / sizes[j] as f64);
            }
            for j in (0..d).rev() {
                idx[j] += 1;
                if idx[j] < sizes[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
        Ok(PointSet {
            dim: d,
            frame,
            flat,
        })
    }

    /// Uniform iid points from a seeded generator.
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, frame: Frame, m: usize, rng: &mut R) -> Self {
        let period = frame.period();
        let mut flat = Vec::with_capacity(m * dim);
        for _ in 0..m * dim {
            let u: f64 = rng.gen();
            let v = period * u;
            flat.push(if v >= period { 0.0 } else { v });
        }
        PointSet { dim, frame, flat }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn frame(&self) -> Frame {
        self.frame
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.flat.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.flat[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.flat.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.flat
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(|p| p.to_vec()).collect()
    }

    /// Points by index, in the given order (repetitions allowed).
    pub fn select(&self, idx: &[usize]) -> Self {
        let mut flat = Vec::with_capacity(idx.len() * self.dim);
        for &i in idx {
            flat.extend_from_slice(self.point(i));
        }
        PointSet {
            dim: self.dim,
            frame: self.frame,
            flat,
        }
    }

    /// Concatenation; frames and dimensions must agree.
    pub fn union(&self, other: &PointSet) -> Result<Self> {
        if self.dim != other.dim || self.frame != other.frame {
            return Err(Error::invalid("point sets differ in dimension or frame"));
        }
        let mut flat = self.flat.clone();
        flat.extend_from_slice(&other.flat);
        Ok(PointSet {
            dim: self.dim,
            frame: self.frame,
            flat,
        })
    }

    /// Same coordinates rescaled into another frame.
    pub fn reframe(&self, frame: Frame) -> Self {
        let s = frame.period() / self.frame.period();
        let period = frame.period();
        let flat = self
            .flat
            .iter()
            .map(|&v| {
                let w = v * s;
                if w >= period {
                    0.0
                } else {
                    w
                }
            })
            .collect();
        PointSet {
            dim: self.dim,
            frame,
            flat,
        }
    }
}
