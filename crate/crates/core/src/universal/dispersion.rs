use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::spaces::PointSet;
use crate::{Error, Result};

/// Largest volume of an open axis-parallel box in `[0,1]^d` containing no
/// point of `T`.
///
/// A maximal empty box has every face on the cube boundary or on a point
/// coordinate, since any other face can be pushed outwards until it hits one.
/// The search therefore fixes the extent on the leading axes from those
/// coordinates, keeps only the points strictly inside that slab, and on the
/// last two axes sweeps the upper bound while tracking the largest gap of the
/// remaining points.
pub fn dispersion(t: &PointSet) -> Result<f64> {
    let d = t.dim();
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if t.as_flat().iter().any(|&x| !(0.0..1.0).contains(&x)) {
        return Err(Error::invalid("points must lie in [0,1)^d"));
    }
    let pts: Vec<&[f64]> = t.iter().collect();
    let mut best = 0.0;
    search(&pts, 0, d, 1.0, &mut best);
    Ok(best)
}

/// Sorted distinct values with `lo` and `hi` at the ends.
fn bounds(pts: &[&[f64]], axis: usize) -> Vec<f64> {
    let mut v: Vec<f64> = pts.iter().map(|p| p[axis]).collect();
    v.push(0.0);
    v.push(1.0);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn max_gap(pts: &[&[f64]], axis: usize) -> f64 {
    let v = bounds(pts, axis);
    v.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

fn search(pts: &[&[f64]], axis: usize, d: usize, acc: f64, best: &mut f64) {
    if axis + 1 == d {
        let v = acc * max_gap(pts, axis);
        if v > *best {
            *best = v;
        }
        return;
    }
    if axis + 2 == d {
        sweep(pts, axis, acc, best);
        return;
    }
    let cand = bounds(pts, axis);
    for (i, &a) in cand.iter().enumerate() {
        if acc * (1.0 - a) <= *best {
            break;
        }
        for &b in &cand[i + 1..] {
            let inside: Vec<&[f64]> = pts.iter().copied().filter(|p| p[axis] > a && p[axis] < b).collect();
            search(&inside, axis + 1, d, acc * (b - a), best);
        }
    }
}

/// Multiset of the last-axis values of the slab with its gap multiset.
struct Gaps {
    values: BTreeMap<u64, usize>,
    gaps: BTreeMap<u64, usize>,
}

impl Gaps {
    fn new() -> Self {
        let mut g = Gaps {
            values: BTreeMap::new(),
            gaps: BTreeMap::new(),
        };
        g.values.insert(0f64.to_bits(), 1);
        g.values.insert(1f64.to_bits(), 1);
        g.add_gap(1.0 - 0.0, 1);
        g
    }

    fn add_gap(&mut self, gap: f64, n: isize) {
        let e = self.gaps.entry(gap.to_bits()).or_insert(0);
        *e = (*e as isize + n) as usize;
        if *e == 0 {
            self.gaps.remove(&gap.to_bits());
        }
    }

    /// Values are nonnegative, so bit order is numeric order.
    fn insert(&mut self, y: f64) {
        let key = y.to_bits();
        if let Some(c) = self.values.get_mut(&key) {
            *c += 1;
            return;
        }
        let lo = f64::from_bits(*self.values.range(..key).next_back().expect("0 is present").0);
        let hi = f64::from_bits(*self.values.range(key..).next().expect("1 is present").0);
        self.add_gap(hi - lo, -1);
        self.add_gap(y - lo, 1);
        self.add_gap(hi - y, 1);
        self.values.insert(key, 1);
    }

    fn max(&self) -> f64 {
        f64::from_bits(*self.gaps.keys().next_back().expect("nonempty"))
    }
}

fn sweep(pts: &[&[f64]], axis: usize, acc: f64, best: &mut f64) {
    let cand = bounds(pts, axis);
    let mut order: Vec<&[f64]> = pts.to_vec();
    order.sort_by(|p, q| p[axis].total_cmp(&q[axis]));
    for (i, &a) in cand.iter().enumerate() {
        if acc * (1.0 - a) <= *best {
            break;
        }
        let mut gaps = Gaps::new();
        // First point strictly above `a`.
        let mut next = order.partition_point(|p| p[axis] <= a);
        for &b in &cand[i + 1..] {
            let v = acc * (b - a) * gaps.max();
            if v > *best {
                *best = v;
            }
            // Points at `b` enter the slab for larger upper bounds.
            while next < order.len() && order[next][axis] <= b {
                gaps.insert(order[next][axis + 1]);
                next += 1;
            }
        }
    }
}
