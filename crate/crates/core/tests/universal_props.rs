use normgrid_core::rng::rng_from_seed;
use normgrid_core::spaces::{Exponent, Frame, FrequencySet, PointSet};
use normgrid_core::universal::{
    build_hammersley_net, certify_member, certify_universal, dispersion, verify_net, Collection, MemberBudget,
    NetParams,
};
use proptest::prelude::*;

/// Largest empty open box with every face on a point coordinate or the cube
/// boundary, by enumerating all corner choices.
fn brute_dispersion(pts: &PointSet) -> f64 {
    let d = pts.dim();
    let coords: Vec<Vec<f64>> = (0..d)
        .map(|a| {
            let mut v: Vec<f64> = pts.iter().map(|p| p[a]).collect();
            v.extend([0.0, 1.0]);
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        })
        .collect();
    let mut best = 0.0f64;
    let mut lo = vec![0.0; d];
    let mut hi = vec![0.0; d];
    fn rec(a: usize, coords: &[Vec<f64>], pts: &[&[f64]], lo: &mut [f64], hi: &mut [f64], best: &mut f64) {
        let d = coords.len();
        if a == d {
            let mut vol = 1.0;
            for j in 0..d {
                vol *= hi[j] - lo[j];
            }
            *best = best.max(vol);
            return;
        }
        let c = &coords[a];
        for i in 0..c.len() {
            for k in i + 1..c.len() {
                lo[a] = c[i];
                hi[a] = c[k];
                let inside: Vec<&[f64]> = pts.iter().copied().filter(|p| p[a] > lo[a] && p[a] < hi[a]).collect();
                if a + 1 == d && !inside.is_empty() {
                    continue;
                }
                rec(a + 1, coords, &inside, lo, hi, best);
            }
        }
    }
    let all: Vec<&[f64]> = pts.iter().collect();
    rec(0, &coords, &all, &mut lo, &mut hi, &mut best);
    best
}

fn cube_points(d: usize, m: usize, seed: u64) -> PointSet {
    PointSet::random(d, Frame::Cube, m, &mut rng_from_seed(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn dispersion_equals_brute_force(seed in any::<u64>(), d in 1usize..=3, m in 0usize..12) {
        let t = cube_points(d, m, seed);
        prop_assert_eq!(dispersion(&t).unwrap(), brute_dispersion(&t));
    }

    #[test]
    fn worst_member_is_minimum(seed in any::<u64>(), m in 10usize..30) {
        let pts = PointSet::random(1, Frame::Torus, m, &mut rng_from_seed(seed));
        let members: Vec<FrequencySet> = (1..=3).map(|n| FrequencySet::build_box(&[n]).unwrap()).collect();
        let budget = MemberBudget::default();
        let mut prev = f64::INFINITY;
        for k in 1..=members.len() {
            let coll = Collection::explicit(members[..k].to_vec());
            let rep = certify_universal(&coll, &pts, Exponent::Finite(2.0), &budget);
            for q in &members[..k] {
                let c = certify_member(q, &pts, Exponent::Finite(2.0), &budget).unwrap();
                prop_assert!(rep.worst_c1 <= c.c1);
            }
            prop_assert!(rep.worst_c1 <= prev);
            prev = rep.worst_c1;
        }
    }
}

#[test]
fn hammersley_nets_verify() {
    for r in 0..=12 {
        let v = verify_net(&build_hammersley_net(r, 2).unwrap(), NetParams { t: 0, r, d: 2 }).unwrap();
        assert!(v.is_net, "r = {r}");
    }
}

#[test]
fn dispersion_of_empty_set_is_one() {
    assert_eq!(dispersion(&PointSet::empty(2, Frame::Cube)).unwrap(), 1.0);
}
