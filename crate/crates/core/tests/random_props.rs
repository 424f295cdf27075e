use normgrid_core::random::{plan_sample_size, sample_and_certify_l2, SampleMode};
use normgrid_core::spaces::{FrequencySet, TrigSystem};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn seed_determines_output(seed in any::<u64>(), n in 1u32..=3, m in 5usize..40) {
        let sys = TrigSystem::sincos(n);
        let a = sample_and_certify_l2(&sys, m, seed, SampleMode::Random).unwrap();
        let b = sample_and_certify_l2(&sys, m, seed, SampleMode::Random).unwrap();
        prop_assert_eq!(a.0.as_flat(), b.0.as_flat());
        prop_assert_eq!(a.1.c1.to_bits(), b.1.c1.to_bits());
        prop_assert_eq!(a.1.c2.to_bits(), b.1.c2.to_bits());
    }

    #[test]
    fn plan_is_monotone_in_dimension(n in 1usize..50, eps in 0.05f64..0.9, delta in 0.001f64..0.5) {
        let a = plan_sample_size(n, 1.0, eps, delta).unwrap();
        let b = plan_sample_size(n + 1, 1.0, eps, delta).unwrap();
        prop_assert!(a.m <= b.m);
    }
}

#[test]
fn grid_mode_is_exact() {
    for n in [vec![1u32], vec![2], vec![1, 1], vec![2, 1]] {
        let sys = TrigSystem::orthonormal(&FrequencySet::build_box(&n).unwrap());
        let m: usize = n.iter().map(|&v| 2 * v as usize + 1).product();
        let (_, c) = sample_and_certify_l2(&sys, m, 0, SampleMode::Grid).unwrap();
        assert!(c.is_exact(1e-10));
    }
}
