use normgrid_core::exact::{
    check_gfp4, exact_cubature, exact_weighted_discretization, tchakaloff_from_rule, tchakaloff_probability,
    WeightedRule,
};
use normgrid_core::extremal::gft2_witness;
use normgrid_core::numkernel::DenseMatrix;
use normgrid_core::rng::rng_from_seed;
use normgrid_core::spaces::{Frame, FrequencySet, PointSet, System, TrigSystem};
use proptest::prelude::*;

fn max_dev_from_identity(g: &DenseMatrix) -> f64 {
    let n = g.rows();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let t = if i == j { 1.0 } else { 0.0 };
            m = m.max((g[(i, j)] - t).abs());
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tchakaloff_never_grows_stability_norm(seed in any::<u64>(), n in 1u32..=3, m in 20usize..80) {
        let sys = TrigSystem::orthonormal(&FrequencySet::build_box(&[n]).unwrap());
        let mut rng = rng_from_seed(seed);
        let nodes = PointSet::random(1, Frame::Torus, m, &mut rng);
        let w: Vec<f64> = (0..m).map(|i| 1.0 + (i % 7) as f64).collect();
        let total: f64 = w.iter().sum();
        let rule = WeightedRule::new(nodes, w.iter().map(|v| v / total).collect()).unwrap();
        let input: f64 = rule.weights.iter().sum();
        let out = tchakaloff_from_rule(&sys, &rule).unwrap();
        let l1: f64 = out.weights.iter().map(|v| v.abs()).sum();
        prop_assert!(l1 <= input + 1e-8);
        prop_assert!(out.len() <= sys.len());
    }

    #[test]
    fn q2_rule_reproduces_identity_gram(n in prop::collection::vec(0u32..=2, 1..=2).prop_filter("lifted size within cap", |n| n.iter().sum::<u32>() < 4)) {
        let sys = TrigSystem::orthonormal(&FrequencySet::build_box(&n).unwrap());
        let rule = exact_weighted_discretization(&sys, 2, None).unwrap();
        prop_assert!(max_dev_from_identity(&rule.gram(&sys)) <= 1e-7);
    }
}

/// Every exact rule produced by any pathway obeys the node-count law.
#[test]
fn node_count_law_over_corpus() {
    let mut violations = 0;
    let mut checked = 0;
    for n in [vec![1u32], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 2]] {
        let doubled: Vec<u32> = n.iter().map(|v| 2 * v).collect();
        let sys2 = TrigSystem::orthonormal(&FrequencySet::build_box(&doubled).unwrap());
        let sys1 = TrigSystem::orthonormal(&FrequencySet::build_box(&n).unwrap());
        let mut rules = vec![WeightedRule::equal_weight(PointSet::canonical_grid(&n).unwrap())];
        rules.push(exact_weighted_discretization(&sys1, 2, None).unwrap());
        rules.push(tchakaloff_probability(&sys2, None).unwrap());
        let sizes: Vec<usize> = n.iter().map(|&v| 4 * v as usize + 1).collect();
        rules.push(exact_cubature(&sys2, &PointSet::torus_grid(&sizes).unwrap()).unwrap());
        for r in &rules {
            let c = check_gfp4(r, &n, 1e-8).unwrap();
            checked += 1;
            if c.violated() {
                violations += 1;
            }
        }
    }
    assert!(checked >= 24);
    assert_eq!(violations, 0);
}

#[test]
fn witness_uniform_weights() {
    for (q, m) in [(2u32, 3usize), (4, 5)] {
        let r = gft2_witness(2, q, 7).unwrap();
        assert_eq!(r.m, m);
        assert!(r.abs_det > 1e-12);
        assert!(r.uniform_residual <= 1e-9);
        assert!(r.max_weight_deviation <= 1e-9);
    }
}
