use normgrid_core::spaces::{Complex, Exponent, FrequencySet, PointSet, TrigPolynomial};
use proptest::prelude::*;

fn random_poly(n: &[u32], coeffs: &[(f64, f64)]) -> TrigPolynomial {
    let q = FrequencySet::build_box(n).unwrap();
    let c: Vec<Complex> = coeffs.iter().take(q.len()).map(|&(re, im)| Complex { re, im }).collect();
    TrigPolynomial::new(q, c).unwrap()
}

fn box_shape() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=3, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_grid_reproduces_l2_norm(
        n in box_shape(),
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 343),
    ) {
        let t = random_poly(&n, &coeffs);
        let parseval: f64 = t.coeffs().iter().map(|c| c.re * c.re + c.im * c.im).sum();
        let grid = PointSet::canonical_grid(&n).unwrap();
        let theta: usize = n.iter().map(|&v| 2 * v as usize + 1).product();
        prop_assert_eq!(grid.len(), theta);
        let s: f64 = grid.iter().map(|x| t.evaluate(x).unwrap().norm_sqr()).sum::<f64>() / theta as f64;
        prop_assert!((s - parseval).abs() <= 1e-10 * parseval.max(1e-300));
    }

    #[test]
    fn grid_norms_bracket(n in 1u32..=3, coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 7)) {
        let t = random_poly(&[n], &coeffs);
        let l1 = t.lq_norm_grid(Exponent::Finite(1.0), 4).unwrap();
        let l2 = t.lq_norm_grid(Exponent::Finite(2.0), 4).unwrap();
        let li = t.lq_norm_grid(Exponent::Infinity, 4).unwrap();
        prop_assert!(l1 <= l2 * (1.0 + 1e-12) && l2 <= li * (1.0 + 1e-12));
        prop_assert!((l2 - t.l2_norm_exact()).abs() <= 1e-10 * l2.max(1e-300));
    }

    #[test]
    fn hyperbolic_in_one_dimension_is_a_box(n in 1u64..200) {
        let h = FrequencySet::build_hyperbolic(n, 1).unwrap();
        let b = FrequencySet::build_box(&[n as u32]).unwrap();
        prop_assert_eq!(h.to_rows(), b.to_rows());
    }

    #[test]
    fn explicit_sets_are_canonically_ordered(mut rows in prop::collection::vec(prop::collection::vec(-5i64..5, 2), 1..20)) {
        rows.reverse();
        let mut seen = std::collections::BTreeSet::new();
        rows.retain(|r| seen.insert(r.clone()));
        let q = FrequencySet::explicit(2, &rows).unwrap();
        let r = q.to_rows();
        prop_assert!(r.windows(2).all(|w| w[0] < w[1]));
        for row in &rows {
            prop_assert!(q.contains(row));
        }
    }
}

#[test]
fn unit_examples() {
    let one = random_poly(&[0], &[(1.0, 0.0)]);
    for q in [Exponent::Finite(1.0), Exponent::Finite(3.0), Exponent::Infinity] {
        assert!((one.lq_norm_grid(q, 2).unwrap() - 1.0).abs() < 1e-14);
    }
    let q = FrequencySet::explicit(1, &[[-1i64], [1]]).unwrap();
    let two_cos = TrigPolynomial::new(q, vec![Complex::ONE, Complex::ONE]).unwrap();
    let sup = two_cos.lq_norm_grid(Exponent::Infinity, 8).unwrap();
    assert!((sup - 2.0).abs() <= 0.04);
}
