use normgrid_core::numkernel::{dot, lp_chebyshev, nnls, sym_eig_extreme, DenseMatrix};
use proptest::prelude::*;

fn symmetric(n: usize, vals: &[f64]) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..=i {
            a[(i, j)] = vals[k];
            a[(j, i)] = vals[k];
            k += 1;
        }
    }
    a
}

/// Solves a small square system by Gaussian elimination, `None` if singular.
fn solve_small(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))?;
        if a[p][k].abs() < 1e-9 {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Max of `a·c` over vertices of `{|v_j·c| ≤ 1}` by enumerating every choice
/// of `dim` active constraints with signs.
fn vertex_enumeration(v: &[Vec<f64>], a: &[f64]) -> f64 {
    let d = a.len();
    let m = v.len();
    let mut best = f64::NEG_INFINITY;
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        for signs in 0..(1u32 << d) {
            let rows: Vec<Vec<f64>> = idx.iter().map(|&i| v[i].clone()).collect();
            let rhs: Vec<f64> = (0..d).map(|k| if signs >> k & 1 == 1 { 1.0 } else { -1.0 }).collect();
            if let Some(c) = solve_small(rows, rhs) {
                if v.iter().all(|row| dot(row, &c).abs() <= 1.0 + 1e-9) {
                    best = best.max(dot(a, &c));
                }
            }
        }
        // Next combination.
        let mut k = d;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            if idx[k] < m - d + k {
                idx[k] += 1;
                for t in k + 1..d {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_extremes_bracket_rayleigh_quotients(
        n in 1usize..6,
        vals in prop::collection::vec(-10.0f64..10.0, 21),
        dirs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 6), 100),
    ) {
        let a = symmetric(n, &vals);
        let (lo, hi) = sym_eig_extreme(&a).unwrap();
        for d in &dirs {
            let v = &d[..n];
            let nv = dot(v, v).sqrt();
            if nv < 1e-6 { continue; }
            let u: Vec<f64> = v.iter().map(|x| x / nv).collect();
            let q = dot(&u, &a.matvec(&u));
            prop_assert!(lo - 1e-9 <= q && q <= hi + 1e-9);
        }
    }

    #[test]
    fn nnls_satisfies_kkt(
        rows in 1usize..6,
        cols in 1usize..8,
        vals in prop::collection::vec(-3.0f64..3.0, 48),
        rhs in prop::collection::vec(-3.0f64..3.0, 6),
    ) {
        let a = DenseMatrix::from_row_major(rows, cols, vals[..rows * cols].to_vec()).unwrap();
        let b = &rhs[..rows];
        let s = nnls(&a, b).unwrap();
        let ax = a.matvec(&s.x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(x, y)| x - y).collect();
        let g = a.t_matvec(&r);
        for j in 0..cols {
            prop_assert!(s.x[j] >= 0.0);
            // Aᵀ(Ax − b) ≥ −tol, i.e. g ≤ tol.
            prop_assert!(g[j] <= 1e-8);
            prop_assert!((s.x[j] * g[j]).abs() <= 1e-8);
        }
    }

    #[test]
    fn chebyshev_lp_matches_vertex_enumeration(
        d in 1usize..4,
        extra in 0usize..6,
        vals in prop::collection::vec(-2.0f64..2.0, 24),
        obj in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let m = d + extra;
        let mut v: Vec<Vec<f64>> = (0..m).map(|j| vals[j * 3..j * 3 + d].to_vec()).collect();
        // Keep the polytope bounded by including the coordinate directions.
        for k in 0..d {
            let mut e = vec![0.0; d];
            e[k] = 1.0;
            v[k] = e;
        }
        let a = &obj[..d];
        let s = lp_chebyshev(&v, d, a).unwrap();
        prop_assert!(!s.unbounded);
        let brute = vertex_enumeration(&v, a);
        prop_assert!((s.value - brute).abs() <= 1e-9 * (1.0 + brute.abs()), "lp {} brute {}", s.value, brute);
    }
}
