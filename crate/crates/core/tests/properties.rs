use proptest::prelude::*;

use kecs::edge_color::verify_coloring;
use kecs::genio::{
    emit_certificate, gen_nearly_bipartite, gen_random_bipartite, gen_random_multigraph, parse_edge_list,
    verify_certificate, write_edge_list,
};
use kecs::graph::odd_cycle_transversal_number;
use kecs::solver::{nu_oracle, solve, solve_augmenting, solve_flow, Method};
use kecs::spectrum::{default_method, spectrum};

fn bipartite() -> impl Strategy<Value = kecs::graph::MultiGraph> {
    (1usize..5, 1usize..5, 0.0f64..1.0, 1usize..4, any::<u64>())
        .prop_map(|(nu, nw, p, mult, seed)| gen_random_bipartite(nu, nw, p, mult, seed))
        .prop_filter("oracle stays small", |g| g.m() <= 16)
}

fn general() -> impl Strategy<Value = kecs::graph::MultiGraph> {
    (1usize..7, 0.0f64..0.7, 1usize..3, any::<u64>())
        .prop_map(|(n, p, mult, seed)| gen_random_multigraph(n, p, mult, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn methods_agree_on_bipartite(g in bipartite(), k in 0usize..6) {
        let a = solve_augmenting(&g, k).unwrap();
        let f = solve_flow(&g, k).unwrap();
        let o = nu_oracle(&g, k, None).unwrap();
        prop_assert!(o.stats.exact);
        prop_assert_eq!(a.nu, f.nu);
        prop_assert_eq!(f.nu, o.nu);
        for r in [&a, &f, &o] {
            prop_assert!(r.subgraph.max_degree() <= k);
            prop_assert!(verify_coloring(&g, &r.subgraph, r.coloring.as_slice(), k).is_valid());
        }
    }

    #[test]
    fn oracle_results_are_certified(g in general(), k in 0usize..5) {
        let r = solve(&g, k, Method::Oracle, None).unwrap();
        let text = emit_certificate(&r, &g, None);
        let chk = verify_certificate(&text);
        prop_assert!(chk.is_valid(), "{:?}", chk.violations);
    }

    #[test]
    fn edge_list_round_trip(g in general()) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn spectrum_is_monotone_and_bounded(g in general()) {
        let s = spectrum(&g, default_method(&g), None).unwrap();
        prop_assert_eq!(s.values[0], 0);
        for k in 1..s.values.len() {
            prop_assert!(s.values[k - 1] <= s.values[k]);
            prop_assert!(s.values[k] - s.values[k - 1] <= g.n() / 2);
        }
        prop_assert_eq!(*s.values.last().unwrap(), g.m());
    }

    #[test]
    fn nearly_bipartite_generator(nu in 0usize..4, nw in 0usize..4, p in 0.0f64..1.0, apex in 0usize..8, seed in any::<u64>()) {
        let g = gen_nearly_bipartite(nu, nw, p, 2, apex, seed);
        prop_assert!(odd_cycle_transversal_number(&g, None).unwrap() <= 1);
    }
}
