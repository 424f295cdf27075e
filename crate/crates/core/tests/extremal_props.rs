use normgrid_core::extremal::{build_condition_l, build_sidon_quadratic, sidon_bounds, sidon_coverage, verify_condition_l};
use proptest::prelude::*;

#[test]
fn sidon_coverage_is_exhaustive() {
    for n in 1..=50u32 {
        let q = build_sidon_quadratic(n).unwrap();
        let (lo, hi) = sidon_bounds(n);
        let len = q.len() as f64;
        assert!(lo <= len && len <= hi, "N = {n}");
        // Independent enumeration of Q − Q.
        let vals: Vec<i64> = q.iter().map(|k| k[0]).collect();
        let nn = (n * n) as i64;
        let mut hit = vec![false; (2 * nn + 1) as usize];
        for a in &vals {
            for b in &vals {
                let diff = a - b;
                if diff.abs() <= nn {
                    hit[(diff + nn) as usize] = true;
                }
            }
        }
        assert!(hit.iter().all(|&h| h), "N = {n}");
        assert_eq!(sidon_coverage(&q, n), None);
    }
}

proptest! {
    #[test]
    fn condition_l_metamorphic(n in 1usize..8, b in 1.1f64..4.0, nu in 0u64..4, big_k in 0.5f64..4.0, j in 0usize..8) {
        let p = build_condition_l(n, b, nu, big_k).unwrap();
        prop_assert!(verify_condition_l(&p).is_ok());
        let j = j % n;
        let mut broken = p.clone();
        if j == 0 && n == 1 {
            broken.k_values[0] = 0;
        } else if j == 0 {
            // Changing k_n breaks divisibility of k_{n+1} unless it divides it.
            broken.k_values[0] += 1;
            if broken.k_values[1] % broken.k_values[0] == 0 {
                broken.k_values[0] += 1;
            }
        } else {
            broken.k_values[j] += 1;
        }
        prop_assert!(verify_condition_l(&broken).is_err());
    }
}
