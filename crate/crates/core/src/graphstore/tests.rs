use std::io::Cursor;

use proptest::prelude::*;

use super::named::*;
use super::*;
use crate::ordering::Rank;
use crate::setcore::{HashVertexSet, HybridBitmapSet, SortedArraySet};

fn parse(text: &str, opts: LoadOptions) -> Result<EdgeList, GraphError> {
    parse_edge_list(Cursor::new(text), opts)
}

#[test]
fn loads_plain_edge_list() {
    let e = parse("0 1\n1 2\n", LoadOptions::default()).unwrap();
    assert_eq!(e.pairs, vec![(0, 1), (1, 2)]);
    assert_eq!(e.n, 3);
}

#[test]
fn loader_keeps_self_loops_and_skips_comments() {
    let e = parse("# c\n2 2\n0 1\n", LoadOptions::default()).unwrap();
    assert_eq!(e.pairs, vec![(2, 2), (0, 1)]);
    let e = parse("% konect header\n0\t1", LoadOptions::default()).unwrap();
    assert_eq!(e.pairs, vec![(0, 1)]);
}

#[test]
fn one_based_ids_shift_down() {
    let opts = LoadOptions { one_based: true, ..LoadOptions::default() };
    assert_eq!(parse("1 2\n", opts).unwrap().pairs, vec![(0, 1)]);
    assert!(parse("0 2\n", opts).is_err());
}

#[test]
fn sparse_ids_compact_in_first_appearance_order() {
    let e = parse("10 5\n5 7\n", LoadOptions::default()).unwrap();
    assert_eq!(e.n, 3);
    assert_eq!(e.pairs, vec![(0, 1), (1, 2)]);
}

#[test]
fn malformed_lines_report_line_numbers() {
    match parse("0 1\n1 x\n", LoadOptions::default()) {
        Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
    match parse("0 1\n\n3\n", LoadOptions::default()) {
        Err(GraphError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse("0 -4\n", LoadOptions::default()), Err(GraphError::NegativeId { line: 1, id: -4 })));
    let strict = LoadOptions { allow_comments: false, ..LoadOptions::default() };
    assert!(matches!(parse("# x\n0 1\n", strict), Err(GraphError::Parse { line: 1, .. })));
}

#[test]
fn load_from_disk_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.el");
    std::fs::write(&path, "0 1\n1 2").unwrap();
    let e = load_edge_list(&path, LoadOptions::default()).unwrap();
    assert_eq!(e.pairs, vec![(0, 1), (1, 2)]);
    assert!(matches!(load_edge_list(&dir.path().join("nope"), LoadOptions::default()), Err(GraphError::Io { .. })));
}

#[test]
fn build_dedupes_and_drops_loops() {
    let g: SetGraph<SortedArraySet> = build_graph(&EdgeList::new(2, vec![(0, 1), (1, 0), (1, 1), (0, 1)]));
    assert_eq!(g.num_vertices(), 2);
    assert_eq!(g.num_edges(), 1);
    assert_eq!(g.neighbors(0).to_sorted_vec(), vec![1]);
}

#[test]
fn build_small_shapes() {
    let p: SetGraph<HybridBitmapSet> = build_graph(&path(3));
    assert_eq!(p.degrees(), vec![1, 2, 1]);
    let k4: SetGraph<HashVertexSet> = build_graph(&complete(4));
    assert_eq!(k4.num_edges(), 6);
    assert!(k4.vertices().all(|v| k4.degree(v) == 3));
}

#[test]
fn write_then_load_round_trips() {
    let g: SetGraph<SortedArraySet> = build_graph(&petersen());
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf).unwrap();
    let back: SetGraph<SortedArraySet> = build_graph(&parse(std::str::from_utf8(&buf).unwrap(), LoadOptions::default()).unwrap());
    assert_eq!(g, back);
}

#[test]
fn orientation_of_triangle_and_cycle() {
    let k3: SetGraph<SortedArraySet> = build_graph(&complete(3));
    let id = Rank::identity(3);
    let d = orient_by_rank(&k3, &id).unwrap();
    assert_eq!((0..3).map(|v| d.out_degree(v)).collect::<Vec<_>>(), vec![2, 1, 0]);

    let c5: SetGraph<SortedArraySet> = build_graph(&cycle(5));
    let id = Rank::identity(5);
    let d = orient_by_rank(&c5, &id).unwrap();
    assert_eq!((0..5).map(|v| d.out_degree(v)).sum::<usize>(), 5);
    assert_eq!(d.arcs().len(), 5);
}

#[test]
fn reversed_rank_swaps_in_and_out() {
    let g: SetGraph<HybridBitmapSet> = build_graph(&petersen());
    let r = Rank::from_order(vec![3, 1, 4, 0, 5, 9, 2, 6, 8, 7]).unwrap();
    let rev = r.reversed();
    let a = orient_by_rank(&g, &r).unwrap();
    let b = orient_by_rank(&g, &rev).unwrap();
    for v in g.vertices() {
        assert_eq!(a.out_neighbors(v).to_sorted_vec(), b.in_neighbors(v).to_sorted_vec());
        assert_eq!(a.in_neighbors(v).to_sorted_vec(), b.out_neighbors(v).to_sorted_vec());
    }
}

#[test]
fn orientation_rejects_wrong_size_rank() {
    let g: SetGraph<SortedArraySet> = build_graph(&complete(3));
    let r = Rank::identity(4);
    assert!(matches!(orient_by_rank(&g, &r), Err(GraphError::RankSizeMismatch { rank_len: 4, n: 3 })));
    assert!(Rank::from_ranks(vec![0, 0, 1]).is_err());
}

#[test]
fn erdos_renyi_extremes_and_mean() {
    assert_eq!(generate_erdos_renyi::<SortedArraySet>(100, 0.0, 3).unwrap().num_edges(), 0);
    assert_eq!(generate_erdos_renyi::<SortedArraySet>(100, 1.0, 3).unwrap().num_edges(), 4950);
    let m = generate_erdos_renyi::<SortedArraySet>(1000, 0.01, 7).unwrap().num_edges() as f64;
    // Binomial(499500, 0.01): mean 4995, sd sqrt(4995 * 0.99) ~ 70.3.
    let sd = (499_500.0f64 * 0.01 * 0.99).sqrt();
    assert!((sd - 70.3).abs() < 0.05);
    assert!((m - 4995.0).abs() <= 3.0 * sd, "m = {m}");
    assert!(erdos_renyi_edges(10, 1.5, 0).is_err());
}

#[test]
fn erdos_renyi_geometric_path_matches_density() {
    let n = 20_000usize;
    let p = 0.0005;
    let e = erdos_renyi_edges(n, p, 99).unwrap();
    let pairs = (n * (n - 1) / 2) as f64;
    let sd = (pairs * p * (1.0 - p)).sqrt();
    assert!((e.pairs.len() as f64 - pairs * p).abs() <= 4.0 * sd);
    assert!(e.pairs.iter().all(|&(u, v)| u < v && (v as usize) < n));
    let g: SetGraph<SortedArraySet> = build_graph(&e);
    assert_eq!(g.num_edges(), e.pairs.len(), "geometric skipping never repeats a pair");
    assert_eq!(e, erdos_renyi_edges(n, p, 99).unwrap());
}

#[test]
fn kronecker_shape_and_determinism() {
    let g = generate_powerlaw::<SortedArraySet>(4, 8, 1).unwrap();
    assert_eq!(g.num_vertices(), 16);
    assert!(g.num_edges() <= 128);
    assert_eq!(kronecker_edges(4, 8, 1).unwrap(), kronecker_edges(4, 8, 1).unwrap());
    assert_ne!(kronecker_edges(4, 8, 1).unwrap(), kronecker_edges(4, 8, 2).unwrap());

    let g = generate_powerlaw::<HybridBitmapSet>(10, 16, 3).unwrap();
    let avg = 2.0 * g.num_edges() as f64 / g.num_vertices() as f64;
    assert!(g.max_degree() as f64 > 4.0 * avg, "max {} avg {avg}", g.max_degree());
    assert!(kronecker_edges(0, 8, 1).is_err());
}

#[test]
fn generators_reproducible_under_different_pools() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let a = generate_erdos_renyi::<HybridBitmapSet>(300, 0.05, 11).unwrap();
    let b = pool.install(|| generate_erdos_renyi::<HybridBitmapSet>(300, 0.05, 11).unwrap());
    assert_eq!(a, b);
}

#[test]
fn representation_sizes() {
    let empty: SetGraph<SortedArraySet> = SetGraph::empty(5);
    assert_eq!(empty.representation_size(), 5 * std::mem::size_of::<SortedArraySet>());

    let k4: SetGraph<SortedArraySet> = build_graph(&complete(4));
    let per_set = std::mem::size_of::<SortedArraySet>();
    assert_eq!(k4.representation_size(), 12 * 4 + 4 * per_set);

    let hybrid: SetGraph<HybridBitmapSet> = k4.convert();
    assert!(representation_size(&k4) > 0 && representation_size(&hybrid) > 0);
}

fn all_kinds_agree(e: &EdgeList) {
    let a: SetGraph<SortedArraySet> = build_graph(e);
    let b: SetGraph<HybridBitmapSet> = build_graph(e);
    let c: SetGraph<HashVertexSet> = build_graph(e);
    assert_eq!((a.num_vertices(), a.num_edges()), (b.num_vertices(), b.num_edges()));
    assert_eq!((a.num_vertices(), a.num_edges()), (c.num_vertices(), c.num_edges()));
    for v in a.vertices() {
        let nv = a.neighbors(v).to_sorted_vec();
        assert_eq!(nv, b.neighbors(v).to_sorted_vec());
        assert_eq!(nv, c.neighbors(v).to_sorted_vec());
    }
}

proptest! {
    #[test]
    fn construction_is_order_insensitive_and_simple(
        pairs in proptest::collection::vec((0u32..30, 0u32..30), 0..120),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let e = EdgeList::new(30, pairs.clone());
        let mut shuffled = pairs;
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let g: SetGraph<SortedArraySet> = build_graph(&e);
        let h: SetGraph<SortedArraySet> = build_graph(&EdgeList::new(30, shuffled));
        prop_assert_eq!(&g, &h);

        let degree_sum: usize = g.degrees().iter().sum();
        prop_assert_eq!(degree_sum, 2 * g.num_edges());
        for v in g.vertices() {
            prop_assert!(!g.is_adjacent(v, v));
            for u in g.neighbors(v).iter() {
                prop_assert!(g.is_adjacent(u, v));
            }
        }
        all_kinds_agree(&e);
    }

    #[test]
    fn orientation_is_acyclic_partition(
        pairs in proptest::collection::vec((0u32..20, 0u32..20), 0..80),
        perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g: SetGraph<HybridBitmapSet> = build_graph(&EdgeList::new(20, pairs));
        let mut order: Vec<u32> = (0..20).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let rank = Rank::from_order(order).unwrap();
        let d = orient_by_rank(&g, &rank).unwrap();
        let mut total = 0;
        for v in g.vertices() {
            let out = d.out_neighbors(v);
            let inn = d.in_neighbors(v);
            prop_assert_eq!(out.intersect(&inn).cardinality(), 0);
            prop_assert_eq!(out.union(&inn).to_sorted_vec(), g.neighbors(v).to_sorted_vec());
            // Every arc goes forward in rank, so rank order is a topological order.
            for u in out.iter() {
                prop_assert!(rank.rank(u) > rank.rank(v));
            }
            total += out.cardinality();
        }
        prop_assert_eq!(total, g.num_edges());
    }
}
