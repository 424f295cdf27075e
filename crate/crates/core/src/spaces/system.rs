use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Complex, Frame, FrequencySet, PointSet};
use crate::math::{binomial, cos, powi, sin, sqrt, SQRT_2};
use crate::numkernel::DenseMatrix;
use crate::{Error, Result};

/// `N` real functions on a domain with a probability measure.
pub trait System {
    /// Number of functions `N`.
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point_dim(&self) -> usize;

    fn frame(&self) -> Frame;

    /// Writes `(u_1(x), …, u_N(x))` into `out`.
    fn eval(&self, x: &[f64], out: &mut [f64]);

    /// `∫ u_i dμ` for every `i`.
    fn integrals(&self) -> Vec<f64>;

    /// `∫ ∏_{i ∈ factors} u_i dμ` when it is known in closed form.
    fn product_integral(&self, _factors: &[usize]) -> Option<f64> {
        None
    }

    /// Per-axis trigonometric degree, for systems made of trig modes.
    fn trig_degree(&self) -> Option<Vec<u64>> {
        None
    }

    /// Condition E constant `t` with `Σ u_i(x)² ≤ N t²`, when known.
    fn cond_e_bound(&self) -> Option<f64> {
        None
    }

    /// The finite domain of a tabulated system.
    fn domain(&self) -> Option<&PointSet> {
        None
    }

    fn is_orthonormal(&self) -> bool {
        false
    }
}

macro_rules! forward_system {
    () => {
        fn len(&self) -> usize {
            (**self).len()
        }
        fn point_dim(&self) -> usize {
            (**self).point_dim()
        }
        fn frame(&self) -> Frame {
            (**self).frame()
        }
        fn eval(&self, x: &[f64], out: &mut [f64]) {
            (**self).eval(x, out)
        }
        fn integrals(&self) -> Vec<f64> {
            (**self).integrals()
        }
        fn product_integral(&self, f: &[usize]) -> Option<f64> {
            (**self).product_integral(f)
        }
        fn trig_degree(&self) -> Option<Vec<u64>> {
            (**self).trig_degree()
        }
        fn cond_e_bound(&self) -> Option<f64> {
            (**self).cond_e_bound()
        }
        fn domain(&self) -> Option<&PointSet> {
            (**self).domain()
        }
        fn is_orthonormal(&self) -> bool {
            (**self).is_orthonormal()
        }
    };
}

impl<S: System + ?Sized> System for &S {
    forward_system!();
}

impl<S: System + ?Sized> System for Box<S> {
    forward_system!();
}

pub fn eval_vec<S: System + ?Sized>(sys: &S, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; sys.len()];
    sys.eval(x, &mut out);
    out
}

/// `m × N` matrix with rows `u(ξ^ν)`.
pub fn design_matrix<S: System + ?Sized>(sys: &S, points: &PointSet) -> DenseMatrix {
    let n = sys.len();
    let mut m = DenseMatrix::zeros(points.len(), n);
    for (i, x) in points.iter().enumerate() {
        sys.eval(x, m.row_mut(i));
    }
    m
}

/// `∫ u_i u_k dμ`; the identity for orthonormal systems.
pub fn gram_matrix<S: System + ?Sized>(sys: &S) -> Result<DenseMatrix> {
    let n = sys.len();
    if sys.is_orthonormal() {
        return Ok(DenseMatrix::identity(n));
    }
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let v = sys
                .product_integral(&[i, k])
                .ok_or_else(|| Error::Unsupported("Gram matrix of the system is not available".into()))?;
            g[(i, k)] = v;
            g[(k, i)] = v;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Cos,
    Sin,
}

/// `scale · cos((k,x))` or `scale · sin((k,x))`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMode {
    pub freq: Vec<i64>,
    pub kind: ModeKind,
    pub scale: f64,
}

impl RealMode {
    #[inline]
    fn value(&self, x: &[f64]) -> f64 {
        let phase: f64 = self.freq.iter().zip(x).map(|(&k, &v)| k as f64 * v).sum();
        match self.kind {
            ModeKind::Cos => self.scale * cos(phase),
            ModeKind::Sin => self.scale * sin(phase),
        }
    }

    /// The mode as a combination of `e^{±i(k,x)}`.
    fn exponentials(&self) -> [(Vec<i64>, Complex); 2] {
        let neg: Vec<i64> = self.freq.iter().map(|v| -v).collect();
        let h = 0.5 * self.scale;
        match self.kind {
            ModeKind::Cos => [(self.freq.clone(), Complex::new(h, 0.0)), (neg, Complex::new(h, 0.0))],
            // sin θ = (e^{iθ} − e^{−iθ}) / 2i
            ModeKind::Sin => [(self.freq.clone(), Complex::new(0.0, -h)), (neg, Complex::new(0.0, h))],
        }
    }
}

fn is_positive(k: &[i64]) -> bool {
    k.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
}

/// Real trigonometric system on the torus.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSystem {
    dim: usize,
    modes: Vec<RealMode>,
    orthonormal: bool,
    cond_e: Option<f64>,
    support: Option<FrequencySet>,
}

impl TrigSystem {
    /// Real orthonormal basis of `T(Q ∪ −Q)`: `1` for `k = 0` and
    /// `√2 cos`, `√2 sin` for each `k` in the positive half.
    pub fn orthonormal(q: &FrequencySet) -> Self {
        let sym = q.symmetrized();
        let d = sym.dim();
        let mut modes = Vec::with_capacity(sym.len());
        let zero = vec![0i64; d];
        if sym.contains(&zero) {
            modes.push(RealMode {
                freq: zero,
                kind: ModeKind::Cos,
                scale: 1.0,
            });
        }
        for k in sym.iter().filter(|k| is_positive(k)) {
            for kind in [ModeKind::Cos, ModeKind::Sin] {
                modes.push(RealMode {
                    freq: k.to_vec(),
                    kind,
                    scale: SQRT_2,
                });
            }
        }
        TrigSystem {
            dim: d,
            modes,
            orthonormal: true,
            cond_e: Some(1.0),
            support: Some(sym),
        }
    }

    /// `{√2 cos kx, √2 sin kx : 1 ≤ k ≤ n}` on the circle.
    pub fn sincos(n: u32) -> Self {
        let mut modes = Vec::new();
        for k in 1..=n as i64 {
            for kind in [ModeKind::Cos, ModeKind::Sin] {
                modes.push(RealMode {
                    freq: vec![k],
                    kind,
                    scale: SQRT_2,
                });
            }
        }
        TrigSystem {
            dim: 1,
            modes,
            orthonormal: true,
            cond_e: Some(1.0),
            support: None,
        }
    }

    /// `{1} ∪ {√2 cos kx : 1 ≤ k ≤ n}` on the circle.
    pub fn cosine(n: u32) -> Self {
        let mut modes = vec![RealMode {
            freq: vec![0],
            kind: ModeKind::Cos,
            scale: 1.0,
        }];
        for k in 1..=n as i64 {
            modes.push(RealMode {
                freq: vec![k],
                kind: ModeKind::Cos,
                scale: SQRT_2,
            });
        }
        let big_n = modes.len() as f64;
        TrigSystem {
            dim: 1,
            modes,
            orthonormal: true,
            // w(0) = 1 + 2n at x = 0.
            cond_e: Some(sqrt((1.0 + 2.0 * n as f64) / big_n)),
            support: None,
        }
    }

    /// Arbitrary modes; orthonormality is the caller's claim and is not checked.
    pub fn from_modes(dim: usize, modes: Vec<RealMode>, orthonormal: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be ≥ 1"));
        }
        if let Some(m) = modes.iter().find(|m| m.freq.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.freq.len(),
            });
        }
        Ok(TrigSystem {
            dim,
            modes,
            orthonormal,
            cond_e: None,
            support: None,
        })
    }

    pub fn modes(&self) -> &[RealMode] {
        &self.modes
    }

    /// The symmetric frequency set this basis spans, when built from one.
    pub fn support(&self) -> Option<&FrequencySet> {
        self.support.as_ref()
    }

    /// Coefficients of `Σ b_i u_i` as a complex trigonometric polynomial.
    pub fn to_polynomial(&self, b: &[f64]) -> Result<super::TrigPolynomial> {
        let mut acc: BTreeMap<Vec<i64>, Complex> = BTreeMap::new();
        for (m, &bi) in self.modes.iter().zip(b) {
            for (k, c) in m.exponentials() {
                *acc.entry(k).or_insert(Complex::ZERO) += c.scale(bi);
            }
        }
        let rows: Vec<Vec<i64>> = acc.keys().cloned().collect();
        let q = FrequencySet::explicit(self.dim, &rows)?;
        let coeffs = acc.into_values().collect();
        super::TrigPolynomial::new(q, coeffs)
    }
}

impl System for TrigSystem {
    fn len(&self) -> usize {
        self.modes.len()
    }

    fn point_dim(&self) -> usize {
        self.dim
    }

    fn frame(&self) -> Frame {
        Frame::Torus
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (o, m) in out.iter_mut().zip(&self.modes) {
            *o = m.value(x);
        }
    }

    fn integrals(&self) -> Vec<f64> {
        self.modes
            .iter()
            .map(|m| match m.kind {
                ModeKind::Cos if m.freq.iter().all(|&k| k == 0) => m.scale,
                _ => 0.0,
            })
            .collect()
    }

    fn product_integral(&self, factors: &[usize]) -> Option<f64> {
        let mut acc: BTreeMap<Vec<i64>, Complex> = BTreeMap::new();
        acc.insert(vec![0; self.dim], Complex::ONE);
        for &f in factors {
            let mode = self.modes.get(f)?;
            let terms = mode.exponentials();
            let mut next: BTreeMap<Vec<i64>, Complex> = BTreeMap::new();
            for (k, c) in &acc {
                for (t, tc) in &terms {
                    let s: Vec<i64> = k.iter().zip(t).map(|(a, b)| a + b).collect();
                    *next.entry(s).or_insert(Complex::ZERO) += *c * *tc;
                }
            }
            acc = next;
        }
        Some(acc.get(&vec![0; self.dim]).map_or(0.0, |c| c.re))
    }

    fn trig_degree(&self) -> Option<Vec<u64>> {
        let mut deg = vec![0u64; self.dim];
        for m in &self.modes {
            for (d, k) in deg.iter_mut().zip(&m.freq) {
                *d = (*d).max(k.unsigned_abs());
            }
        }
        Some(deg)
    }

    fn cond_e_bound(&self) -> Option<f64> {
        self.cond_e
    }

    fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }
}

fn cmp_points(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// A system given by its values on a finite domain `Ω_M` with measure `1/M`.
///
/// Evaluating at a point outside the domain yields `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSystem {
    domain: PointSet,
    values: DenseMatrix,
    sorted: Vec<usize>,
    orthonormal: bool,
    cond_e: Option<f64>,
}

impl TabulatedSystem {
    pub fn new(domain: PointSet, values: DenseMatrix) -> Result<Self> {
        if values.rows() != domain.len() {
            return Err(Error::DimensionMismatch {
                expected: domain.len(),
                got: values.rows(),
            });
        }
        if domain.is_empty() {
            return Err(Error::invalid("tabulated domain is empty"));
        }
        let mut sorted: Vec<usize> = (0..domain.len()).collect();
        sorted.sort_by(|&i, &j| cmp_points(domain.point(i), domain.point(j)));
        if sorted
            .windows(2)
            .any(|w| cmp_points(domain.point(w[0]), domain.point(w[1])) == Ordering::Equal)
        {
            return Err(Error::invalid("tabulated domain has repeated points"));
        }
        let mut s = TabulatedSystem {
            domain,
            values,
            sorted,
            orthonormal: false,
            cond_e: None,
        };
        let g = s.gram();
        let dev = {
            let mut d = g.clone();
            d.axpy(-1.0, &DenseMatrix::identity(g.rows()));
            d.max_abs()
        };
        s.orthonormal = dev <= 1e-8;
        if s.orthonormal && s.len() > 0 {
            let n = s.len() as f64;
            let wmax = (0..s.values.rows())
                .map(|i| s.values.row(i).iter().map(|v| v * v).sum::<f64>())
                .fold(0.0, f64::max);
            s.cond_e = Some(sqrt(wmax / n));
        }
        Ok(s)
    }

    /// Tabulates `sys` on `domain`.
    pub fn from_system<S: System + ?Sized>(sys: &S, domain: PointSet) -> Result<Self> {
        let values = design_matrix(sys, &domain);
        Self::new(domain, values)
    }

    pub fn values(&self) -> &DenseMatrix {
        &self.values
    }

    /// `(1/M) Σ_j u(x^j) u(x^j)ᵀ`.
    pub fn gram(&self) -> DenseMatrix {
        let n = self.values.cols();
        let mut g = DenseMatrix::zeros(n, n);
        for i in 0..self.values.rows() {
            g.add_outer(1.0, self.values.row(i));
        }
        g.scale(1.0 / self.values.rows() as f64);
        g
    }

    fn lookup(&self, x: &[f64]) -> Option<usize> {
        let pos = self
            .sorted
            .binary_search_by(|&i| cmp_points(self.domain.point(i), x))
            .ok()?;
        Some(self.sorted[pos])
    }
}

impl System for TabulatedSystem {
    fn len(&self) -> usize {
        self.values.cols()
    }

    fn point_dim(&self) -> usize {
        self.domain.dim()
    }

    fn frame(&self) -> Frame {
        self.domain.frame()
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        match self.lookup(x) {
            Some(i) => out.copy_from_slice(self.values.row(i)),
            None => out.iter_mut().for_each(|v| *v = f64::NAN),
        }
    }

    fn integrals(&self) -> Vec<f64> {
        let m = self.values.rows() as f64;
        let mut s = vec![0.0; self.len()];
        for i in 0..self.values.rows() {
            for (a, v) in s.iter_mut().zip(self.values.row(i)) {
                *a += v;
            }
        }
        s.iter().map(|v| v / m).collect()
    }

    fn product_integral(&self, factors: &[usize]) -> Option<f64> {
        if factors.iter().any(|&f| f >= self.len()) {
            return None;
        }
        let m = self.values.rows();
        let total: f64 = (0..m)
            .map(|i| factors.iter().map(|&f| self.values[(i, f)]).product::<f64>())
            .sum();
        Some(total / m as f64)
    }

    fn cond_e_bound(&self) -> Option<f64> {
        self.cond_e
    }

    fn domain(&self) -> Option<&PointSet> {
        Some(&self.domain)
    }

    fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }
}

/// Exponent vectors `K(N,q) = {k ∈ Z_+^N : Σk_i = q}`, first coordinate
/// descending (so `N=2, q=2` gives `(2,0), (1,1), (0,2)`).
pub fn multi_indices(n: usize, q: u32) -> Vec<Vec<u32>> {
    fn rec(j: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if j + 1 == cur.len() {
            cur[j] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[j] = k;
            rec(j + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0; n];
    rec(0, q, &mut cur, &mut out);
    out
}

fn factor_list(exps: &[u32]) -> Vec<usize> {
    let mut f = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            f.push(i);
        }
    }
    f
}

/// Degree-`q` products `u_k = u_1^{k_1} ⋯ u_N^{k_N}` of a base system.
#[derive(Debug, Clone)]
pub struct LiftedSystem<S> {
    base: S,
    q: u32,
    exps: Vec<Vec<u32>>,
}

impl<S: System> LiftedSystem<S> {
    /// Cap on `M(N,q) = binom(N+q−1, q)`.
    pub const CAP: usize = 5000;

    pub fn new(base: S, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("lift degree must be ≥ 1"));
        }
        let n = base.len();
        if n == 0 {
            return Err(Error::invalid("cannot lift an empty system"));
        }
        let m = binomial(n + q as usize - 1, q as usize);
        if m > Self::CAP {
            return Err(Error::CapExceeded {
                what: "M(N,q)",
                value: m,
                cap: Self::CAP,
            });
        }
        let exps = multi_indices(n, q);
        debug_assert_eq!(exps.len(), m);
        Ok(LiftedSystem { base, q, exps })
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.q
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    /// `q! / (k_1! ⋯ k_N!)` for product `i`.
    pub fn multinomial(&self, i: usize) -> f64 {
        let fact = |k: u32| (1..=k).map(|v| v as f64).product::<f64>();
        let num = fact(self.q);
        self.exps[i].iter().fold(num, |acc, &k| acc / fact(k))
    }
}

impl<S: System> System for LiftedSystem<S> {
    fn len(&self) -> usize {
        self.exps.len()
    }

    fn point_dim(&self) -> usize {
        self.base.point_dim()
    }

    fn frame(&self) -> Frame {
        self.base.frame()
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        let b = eval_vec(&self.base, x);
        for (o, e) in out.iter_mut().zip(&self.exps) {
            *o = e.iter().zip(&b).map(|(&k, &v)| powi(v, k)).product();
        }
    }

    fn integrals(&self) -> Vec<f64> {
        self.exps
            .iter()
            .map(|e| self.base.product_integral(&factor_list(e)).unwrap_or(f64::NAN))
            .collect()
    }

    fn product_integral(&self, factors: &[usize]) -> Option<f64> {
        let mut total = vec![0u32; self.base.len()];
        for &f in factors {
            for (t, &k) in total.iter_mut().zip(self.exps.get(f)?) {
                *t += k;
            }
        }
        self.base.product_integral(&factor_list(&total))
    }

    fn trig_degree(&self) -> Option<Vec<u64>> {
        self.base
            .trig_degree()
            .map(|d| d.iter().map(|v| v * self.q as u64).collect())
    }

    fn domain(&self) -> Option<&PointSet> {
        self.base.domain()
    }
}

/// The subsystem `{u_i : i ∈ idx}`.
#[derive(Debug, Clone)]
pub struct Restricted<S> {
    base: S,
    idx: Vec<usize>,
}

impl<S: System> Restricted<S> {
    pub fn new(base: S, idx: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= base.len()) {
            return Err(Error::invalid(alloc::format!("function index {bad} out of range")));
        }
        Ok(Restricted { base, idx })
    }

    pub fn indices(&self) -> &[usize] {
        &self.idx
    }

    pub fn base(&self) -> &S {
        &self.base
    }
}

impl<S: System> System for Restricted<S> {
    fn len(&self) -> usize {
        self.idx.len()
    }

    fn point_dim(&self) -> usize {
        self.base.point_dim()
    }

    fn frame(&self) -> Frame {
        self.base.frame()
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        let b = eval_vec(&self.base, x);
        for (o, &i) in out.iter_mut().zip(&self.idx) {
            *o = b[i];
        }
    }

    fn integrals(&self) -> Vec<f64> {
        let b = self.base.integrals();
        self.idx.iter().map(|&i| b[i]).collect()
    }

    fn product_integral(&self, factors: &[usize]) -> Option<f64> {
        let mapped: Option<Vec<usize>> = factors.iter().map(|&f| self.idx.get(f).copied()).collect();
        self.base.product_integral(&mapped?)
    }

    fn trig_degree(&self) -> Option<Vec<u64>> {
        self.base.trig_degree()
    }

    fn domain(&self) -> Option<&PointSet> {
        self.base.domain()
    }
}

/// `{1} ∪ base`, the constant function prepended.
#[derive(Debug, Clone)]
pub struct WithConstant<S> {
    base: S,
}

impl<S: System> WithConstant<S> {
    pub fn new(base: S) -> Self {
        WithConstant { base }
    }
}

impl<S: System> System for WithConstant<S> {
    fn len(&self) -> usize {
        self.base.len() + 1
    }

    fn point_dim(&self) -> usize {
        self.base.point_dim()
    }

    fn frame(&self) -> Frame {
        self.base.frame()
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        out[0] = 1.0;
        self.base.eval(x, &mut out[1..]);
    }

    fn integrals(&self) -> Vec<f64> {
        let mut v = vec![1.0];
        v.extend(self.base.integrals());
        v
    }

    fn product_integral(&self, factors: &[usize]) -> Option<f64> {
        let rest: Vec<usize> = factors.iter().filter(|&&f| f > 0).map(|&f| f - 1).collect();
        if rest.is_empty() {
            return Some(1.0);
        }
        self.base.product_integral(&rest)
    }

    fn trig_degree(&self) -> Option<Vec<u64>> {
        self.base.trig_degree()
    }

    fn domain(&self) -> Option<&PointSet> {
        self.base.domain()
    }
}

/// Homogeneous monomials `y^k`, `|k| = q`, in `N` variables, where
/// `y = 2x − 1` maps the cube frame `[0,1)^N` onto `[−1,1)^N`. The measure
/// is the uniform one on the cube.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialSystem {
    vars: usize,
    q: u32,
    exps: Vec<Vec<u32>>,
}

impl MonomialSystem {
    pub fn new(vars: usize, q: u32) -> Result<Self> {
        if vars == 0 {
            return Err(Error::invalid("monomials need at least one variable"));
        }
        let m = binomial(vars + q as usize - 1, q as usize);
        if m > LiftedSystem::<TrigSystem>::CAP {
            return Err(Error::CapExceeded {
                what: "M(N,q)",
                value: m,
                cap: LiftedSystem::<TrigSystem>::CAP,
            });
        }
        Ok(MonomialSystem {
            vars,
            q,
            exps: multi_indices(vars, q),
        })
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }
}

impl System for MonomialSystem {
    fn len(&self) -> usize {
        self.exps.len()
    }

    fn point_dim(&self) -> usize {
        self.vars
    }

    fn frame(&self) -> Frame {
        Frame::Cube
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (o, e) in out.iter_mut().zip(&self.exps) {
            *o = e
                .iter()
                .zip(x)
                .map(|(&k, &xi)| powi(2.0 * xi - 1.0, k))
                .product();
        }
    }

    fn integrals(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.product_integral(&[i]).unwrap()).collect()
    }

    fn product_integral(&self, factors: &[usize]) -> Option<f64> {
        let mut total = vec![0u32; self.vars];
        for &f in factors {
            for (t, &k) in total.iter_mut().zip(self.exps.get(f)?) {
                *t += k;
            }
        }
        // (1/2)∫_{−1}^{1} y^k dy = 1/(k+1) for even k, 0 for odd k.
        Some(total.iter().fold(1.0, |acc, &k| {
            if k % 2 == 1 {
                0.0
            } else {
                acc / (k as f64 + 1.0)
            }
        }))
    }
}
