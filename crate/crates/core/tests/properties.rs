use proptest::prelude::*;
use weylpq::charge::freudenthal;
use weylpq::kostant::simplex_box;
use weylpq::rootsys::RootVector;
use weylpq::{Context, RootSystem, Weight};

const SYSTEMS: [&str; 7] = ["A2", "A3", "B2", "B3", "C2", "C3", "G2"];

/// A context, a dominant ν with coordinates ≤ 2 and μ = ν - β with β
/// having root coordinates ≤ 3.
fn point() -> impl Strategy<Value = (Context, Weight, Weight)> {
    (0..SYSTEMS.len(), any::<u64>(), prop::collection::vec(0i64..=2, 3), prop::collection::vec(0i64..=7, 3))
        .prop_map(|(s, seed, nu, beta)| {
            let rs: RootSystem = SYSTEMS[s].parse().unwrap();
            let subsets = rs.all_levi_subsets();
            let levi = subsets[(seed as usize) % subsets.len()].clone();
            let n = rs.rank;
            let nu = Weight(nu[..n].to_vec());
            let beta = RootVector(beta[..n].iter().map(|b| b % 4).collect());
            let mu = &nu - &rs.root_to_weight(&beta);
            (Context::new(rs, &levi).unwrap(), nu, mu)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn decomposition_holds((ctx, nu, mu) in point()) {
        prop_assert!(ctx.decomposition_check(&nu, &mu).unwrap());
    }

    #[test]
    fn shifted_deformation_is_nonnegative((ctx, nu, mu) in point()) {
        prop_assert!(ctx.kpq(&nu, &mu).unwrap().shift_vars().is_nonnegative());
    }

    #[test]
    fn shifted_deformation_matches_crystal_sum((ctx, nu, mu) in point()) {
        let k = ctx.kpq(&nu, &mu).unwrap().shift_vars();
        prop_assert_eq!(&k, &ctx.crystal_sum(&nu, &mu).unwrap());
        prop_assert_eq!(&k, &ctx.shifted_decomposition(&nu, &mu).unwrap());
    }

    #[test]
    fn p_equals_q_is_the_single_variable_analogue((ctx, nu, mu) in point()) {
        let k = ctx.kpq(&nu, &mu).unwrap();
        prop_assert_eq!(k.collapse_p_into_q(), ctx.lusztig_single(&nu, &mu).unwrap());
    }

    #[test]
    fn straightening_agrees_with_raw_sum((ctx, nu, mu) in point()) {
        prop_assert_eq!(ctx.straighten_kbar(&nu, &mu), ctx.kbar_raw(&nu, &mu));
    }

    #[test]
    fn multiplicities_are_weyl_invariant((ctx, nu, _mu) in point()) {
        let m = freudenthal(&ctx.rs, &nu).unwrap();
        prop_assert_eq!(m.get(&nu), Some(&1));
        for (wt, k) in &m {
            for i in 0..ctx.rank() {
                prop_assert_eq!(m.get(&ctx.rs.reflect(i, wt)), Some(k));
            }
        }
    }

    #[test]
    fn evaluation_at_one_one_is_the_multiplicity((ctx, nu, mu) in point()) {
        let m = freudenthal(&ctx.rs, &nu).unwrap();
        let k = ctx.kpq(&nu, &mu).unwrap().specialize(Some(1), Some(1));
        prop_assert_eq!(k.as_constant().unwrap(), m.get(&mu).copied().unwrap_or(0).into());
    }
}

#[test]
fn colored_triangle_on_a_c2_box() {
    for levi in [vec![], vec![0], vec![1], vec![0, 1]] {
        let ctx = Context::new("C2".parse().unwrap(), &levi).unwrap();
        for beta in simplex_box(2, 7) {
            let r = ctx.r_pq(&beta);
            assert_eq!(r, ctx.r_pq_bruteforce_bounded(&beta, 7).unwrap(), "{beta}");
            assert_eq!(r, ctx.k_zero_minus_beta_shifted(&beta), "{beta}");
        }
    }
}
