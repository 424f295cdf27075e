use normgrid_core::certify::certify_l2;
use normgrid_core::greedy::{oga_exact_l2, rga_bound, rga_equal_weight, OGA_TOL};
use normgrid_core::spaces::{FrequencySet, PointSet, System, TrigSystem};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oga_trace_is_monotone_and_terminates(n in prop::collection::vec(0u32..=2, 1..=2), factor in 2usize..5) {
        let sys = TrigSystem::orthonormal(&FrequencySet::build_box(&n).unwrap());
        let sizes: Vec<usize> = n.iter().map(|&v| factor * (2 * v as usize + 1)).collect();
        let cands = PointSet::torus_grid(&sizes).unwrap();
        let run = oga_exact_l2(&sys, &cands, None).unwrap();
        let big_n = sys.len();
        prop_assert!(run.state.trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        prop_assert!(*run.state.trace.last().unwrap() <= OGA_TOL);
        prop_assert!(run.state.iteration <= big_n * (big_n + 1) / 2);
    }

    #[test]
    fn rga_bound_and_eigen_sandwich(n in 1u32..=3, m in 1usize..120) {
        let sys = TrigSystem::sincos(n);
        let cands = PointSet::torus_grid(&[16 * (2 * n as usize + 1)]).unwrap();
        let run = rga_equal_weight(&sys, &cands, m, None).unwrap();
        let big_n = sys.len() as f64;
        for (k, f) in run.state.trace.iter().enumerate() {
            prop_assert!(f / big_n <= rga_bound(sys.len(), 1.0, k + 1) / big_n + 1e-12);
        }
        let delta = *run.state.trace.last().unwrap();
        let c = certify_l2(&sys, &run.rule).unwrap();
        prop_assert!(1.0 - delta <= c.c1 + 1e-12);
        prop_assert!(c.c2 <= 1.0 + delta + 1e-12);
    }
}
