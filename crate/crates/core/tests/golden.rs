use kecs::genio::{gen_regular_bipartite, parse_edge_list, write_edge_list};

#[test]
fn regular_bipartite_matches_pinned_file() {
    let text = include_str!("golden/regular_bipartite_4_2_seed7.el");
    let pinned = parse_edge_list(text).unwrap();
    let g = gen_regular_bipartite(4, 2, 7);
    assert_eq!(g, pinned);
    assert!(text.ends_with(&write_edge_list(&g)));
}
