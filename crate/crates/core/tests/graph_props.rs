use coordgame::graph::{er_gnm, er_gnp, Graph};
use coordgame::io::{emit_graph6, parse_graph6};
use proptest::prelude::*;

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.0..=1.0f64).prop_map(|(n, seed, p)| er_gnp(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn graph6_round_trip(g in any_graph(64)) {
        let text = emit_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn structural_invariants(g in any_graph(40)) {
        prop_assert!(g.validate());
        let degree_sum: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for (u, v) in g.edge_list() {
            prop_assert!(u < v && g.has_edge(v, u));
        }
        let comps = g.connected_components();
        prop_assert_eq!(comps.iter().map(|c| c.len()).sum::<usize>(), g.order());
        prop_assert_eq!(comps.len() == 1, g.is_connected());
        for c in &comps {
            prop_assert!(g.induces_connected(c));
        }
    }

    #[test]
    fn truncation_is_rejected(g in any_graph(30)) {
        let text = emit_graph6(&g);
        if g.order() > 2 {
            let cut = &text[..text.len() - 1];
            let err = parse_graph6(cut).unwrap_err();
            prop_assert!(err.offset <= text.len());
        }
    }

    #[test]
    fn gnm_has_exact_size(n in 2usize..30, frac in 0.0..=1.0f64, seed in any::<u64>()) {
        let max = n * (n - 1) / 2;
        let m = (frac * max as f64).floor() as usize;
        let g = er_gnm(n, m, seed).unwrap();
        prop_assert_eq!(g.edge_count(), m);
    }
}
