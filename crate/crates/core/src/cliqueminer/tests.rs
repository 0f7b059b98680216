use proptest::prelude::*;

use super::*;
use crate::graphstore::named::*;
use crate::graphstore::{build_graph, generate_erdos_renyi, orient_by_rank, EdgeList, SetGraph};
use crate::ordering::{compute_rank, OrderKind};
use crate::setcore::{HashVertexSet, HybridBitmapSet, SortedArraySet, VertexSet};

fn g(e: EdgeList) -> SetGraph<SortedArraySet> {
    build_graph(&e)
}

fn set(v: &[u32]) -> SortedArraySet {
    SortedArraySet::from_sorted(v)
}

fn is_clique<S: VertexSet>(g: &SetGraph<S>, members: &[u32]) -> bool {
    members.iter().enumerate().all(|(i, &a)| members[i + 1..].iter().all(|&b| g.is_adjacent(a, b)))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0u64..1 << n).map(move |mask| (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect())
}

fn brute_maximal<S: VertexSet>(g: &SetGraph<S>) -> Vec<Clique> {
    let n = g.num_vertices();
    let mut out: Vec<Clique> = subsets(n)
        .filter(|s| !s.is_empty() && is_clique(g, s))
        .filter(|s| !(0..n as u32).any(|w| !s.contains(&w) && s.iter().all(|&v| g.is_adjacent(v, w))))
        .map(Clique::from_members)
        .collect();
    out.sort();
    out
}

fn brute_k_count<S: VertexSet>(g: &SetGraph<S>, k: usize) -> u64 {
    subsets(g.num_vertices()).filter(|s| s.len() == k && is_clique(g, s)).count() as u64
}

fn mine<S: VertexSet>(g: &SetGraph<S>, kind: OrderKind, opts: BkOptions) -> Vec<Clique> {
    let sink = Sink::collecting();
    let stats = maximal_cliques(g, kind, opts, &sink).unwrap();
    let items = canonicalize(sink.into_items());
    assert_eq!(stats.cliques as usize, items.len());
    items
}

fn cl(v: &[u32]) -> Clique {
    Clique::from_members(v.to_vec())
}

const ORDERS: [OrderKind; 3] = [OrderKind::Degree, OrderKind::Degeneracy, OrderKind::ApproxDegeneracy { epsilon: 0.1 }];

fn all_opts() -> [BkOptions; 4] {
    [
        BkOptions { pivot: true, subgraph_h: true },
        BkOptions { pivot: true, subgraph_h: false },
        BkOptions { pivot: false, subgraph_h: true },
        BkOptions { pivot: false, subgraph_h: false },
    ]
}

#[test]
fn maximal_clique_examples() {
    for opts in all_opts() {
        for kind in ORDERS {
            assert_eq!(mine(&g(complete(4)), kind, opts), vec![cl(&[0, 1, 2, 3])]);
            assert_eq!(mine(&g(path(3)), kind, opts), vec![cl(&[0, 1]), cl(&[1, 2])]);
            let mm = mine(&g(complete_multipartite(3, 3)), kind, opts);
            assert_eq!(mm.len(), 27);
            assert!(mm.iter().all(|c| c.len() == 3));
        }
    }
    let mm = g(complete_multipartite(3, 3));
    assert_eq!(mine(&mm, OrderKind::Degeneracy, BkOptions::default()), brute_maximal(&mm));
}

#[test]
fn isolated_vertices_are_maximal_cliques() {
    let graph = g(EdgeList::new(4, vec![(0, 1)]));
    let got = mine(&graph, OrderKind::Degeneracy, BkOptions::default());
    assert_eq!(got, vec![cl(&[0, 1]), cl(&[2]), cl(&[3])]);
    let empty: SetGraph<SortedArraySet> = SetGraph::empty(0);
    assert!(mine(&empty, OrderKind::Degree, BkOptions::default()).is_empty());
}

#[test]
fn pivot_select_examples() {
    let k4 = g(complete(4));
    assert_eq!(bk_pivot_select(&set(&[1, 2, 3]), &set(&[]), &k4).unwrap(), 1);
    assert_eq!(bk_pivot_select(&set(&[2]), &set(&[]), &k4).unwrap(), 2);
    assert!(matches!(bk_pivot_select(&set(&[]), &set(&[]), &k4), Err(MineError::EmptyPivotPool)));

    // Vertex 0 (in X) is adjacent to all of P = {1, 2, 3}, which is an
    // independent set, so 0 covers three candidates and each of 1, 2, 3 none.
    let graph = g(EdgeList::new(5, vec![(0, 1), (0, 2), (0, 3), (3, 4)]));
    assert_eq!(bk_pivot_select(&set(&[1, 2, 3]), &set(&[0]), &graph).unwrap(), 0);
}

#[test]
fn sink_overflow_and_modes() {
    let mm = g(complete_multipartite(3, 3));
    let sink = Sink::collecting_with_cap(10);
    let err = maximal_cliques(&mm, OrderKind::Degeneracy, BkOptions::default(), &sink).unwrap_err();
    assert!(matches!(err, MineError::SinkOverflow { cap: 10 }));

    let counting = Sink::counting();
    let stats = maximal_cliques(&mm, OrderKind::Degeneracy, BkOptions::default(), &counting).unwrap();
    assert_eq!((stats.cliques, counting.count()), (27, 27));
    assert_eq!(counting.mode(), SinkMode::Count);

    let seen = std::sync::Mutex::new(Vec::new());
    let streaming = Sink::streaming(|c: Clique| seen.lock().unwrap().push(c));
    maximal_cliques(&mm, OrderKind::Degree, BkOptions::default(), &streaming).unwrap();
    assert_eq!(streaming.count(), 27);
    drop(streaming);
    assert_eq!(canonicalize(seen.into_inner().unwrap()), brute_maximal(&mm));
}

#[test]
fn rank_of_wrong_size_is_rejected() {
    let graph = g(complete(4));
    let rank = crate::ordering::Rank::identity(3);
    let err = maximal_cliques_ranked(&graph, &rank, BkOptions::default(), &Sink::counting()).unwrap_err();
    assert!(matches!(err, MineError::Graph(_)));
}

#[test]
fn pivoting_only_prunes() {
    for seed in 0..20 {
        let graph = generate_erdos_renyi::<SortedArraySet>(14, 0.4, seed).unwrap();
        let rank = compute_rank(&graph, OrderKind::Degeneracy).unwrap();
        for subgraph_h in [false, true] {
            let on = bk_visited_states(&graph, &rank, BkOptions { pivot: true, subgraph_h }).unwrap();
            let off = bk_visited_states(&graph, &rank, BkOptions { pivot: false, subgraph_h }).unwrap();
            assert!(on.len() <= off.len());
            let mut it = off.iter().peekable();
            for s in &on {
                while it.next_if(|o| *o < s).is_some() {}
                assert_eq!(it.next(), Some(s), "pivot state {s} missing without pivoting");
            }
            assert_eq!(
                mine(&graph, OrderKind::Degeneracy, BkOptions { pivot: true, subgraph_h }),
                mine(&graph, OrderKind::Degeneracy, BkOptions { pivot: false, subgraph_h })
            );
        }
    }
}

#[test]
fn k_clique_count_examples() {
    let k5 = g(complete(5));
    for mode in [ParallelMode::Vertex, ParallelMode::Edge] {
        for kind in ORDERS {
            assert_eq!(count_k_cliques(&k5, 3, kind, mode).unwrap(), 10);
            assert_eq!(count_k_cliques(&k5, 4, kind, mode).unwrap(), 5);
            assert_eq!(count_k_cliques(&k5, 5, kind, mode).unwrap(), 1);
            assert_eq!(count_k_cliques(&k5, 6, kind, mode).unwrap(), 0);
            assert_eq!(count_k_cliques(&g(petersen()), 3, kind, mode).unwrap(), 0);
        }
    }
    assert!(matches!(count_k_cliques(&k5, 1, OrderKind::Degree, ParallelMode::Vertex), Err(MineError::InvalidK(1))));
    let empty: SetGraph<SortedArraySet> = SetGraph::empty(0);
    assert_eq!(count_k_cliques(&empty, 3, OrderKind::Degeneracy, ParallelMode::Edge).unwrap(), 0);
}

fn listed(graph: &SetGraph<SortedArraySet>, k: usize, mode: ParallelMode) -> Vec<Clique> {
    let sink = Sink::collecting();
    list_k_cliques(graph, k, OrderKind::Degeneracy, mode, &sink).unwrap();
    canonicalize(sink.into_items())
}

#[test]
fn k_clique_listing_examples() {
    for mode in [ParallelMode::Vertex, ParallelMode::Edge] {
        assert_eq!(
            listed(&g(complete(4)), 3, mode),
            vec![cl(&[0, 1, 2]), cl(&[0, 1, 3]), cl(&[0, 2, 3]), cl(&[1, 2, 3])]
        );
        assert!(listed(&g(cycle(5)), 3, mode).is_empty());
        let pendant = g(EdgeList::new(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]));
        assert_eq!(listed(&pendant, 3, mode), vec![cl(&[0, 1, 2])]);
        assert_eq!(listed(&pendant, 2, mode).len(), 4);
    }
    let counting = Sink::counting();
    list_k_cliques(&g(complete(6)), 3, OrderKind::Degree, ParallelMode::Edge, &counting).unwrap();
    assert_eq!(counting.count(), 20);
}

#[test]
fn triangle_examples() {
    assert_eq!(triangle_count(&g(complete(4))), 4);
    assert_eq!(triangle_count(&g(path(9))), 0);
    assert_eq!(triangle_count(&g(star(7))), 0);
    let er = generate_erdos_renyi::<SortedArraySet>(50, 0.2, 11).unwrap();
    let mut brute = 0;
    for a in 0..50u32 {
        for b in a + 1..50 {
            for c in b + 1..50 {
                if er.is_adjacent(a, b) && er.is_adjacent(a, c) && er.is_adjacent(b, c) {
                    brute += 1;
                }
            }
        }
    }
    assert_eq!(triangle_count(&er), brute);
}

fn stars<S: VertexSet>(graph: &SetGraph<S>, k: usize) -> Vec<(Clique, Vec<u32>)> {
    let sink = Sink::collecting();
    k_clique_stars(graph, k, &sink).unwrap();
    let mut out: Vec<_> = sink.into_items().into_iter().map(|cs| (cs.clique, cs.star.to_sorted_vec())).collect();
    out.sort();
    out
}

#[test]
fn k_clique_star_examples() {
    assert_eq!(
        stars(&g(complete(4)), 3),
        vec![(cl(&[0, 1, 2]), vec![3]), (cl(&[0, 1, 3]), vec![2]), (cl(&[0, 2, 3]), vec![1]), (cl(&[1, 2, 3]), vec![0])]
    );
    assert_eq!(
        stars(&g(complete(3)), 2),
        vec![(cl(&[0, 1]), vec![2]), (cl(&[0, 2]), vec![1]), (cl(&[1, 2]), vec![0])]
    );
    assert!(stars(&g(cycle(5)), 2).is_empty());
    assert!(k_clique_stars(&g(cycle(5)), 1, &Sink::collecting()).is_err());

    let counting = Sink::counting();
    k_clique_stars(&g(complete(5)), 3, &counting).unwrap();
    assert_eq!(counting.count(), 10);
}

#[test]
fn output_format() {
    let mut buf = Vec::new();
    write_cliques(&[cl(&[3, 1, 2]), cl(&[0])], &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "1 2 3\n0\n");
}

#[test]
fn results_invariant_across_kinds_and_threads() {
    let base = generate_erdos_renyi::<SortedArraySet>(120, 0.15, 3).unwrap();
    let expect = mine(&base, OrderKind::Degeneracy, BkOptions::default());
    let k4 = count_k_cliques(&base, 4, OrderKind::Degeneracy, ParallelMode::Vertex).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let hy = base.convert::<HybridBitmapSet>();
            let hs = base.convert::<HashVertexSet>();
            for kind in ORDERS {
                for opts in all_opts() {
                    assert_eq!(mine(&hy, kind, opts), expect);
                    assert_eq!(mine(&hs, kind, opts), expect);
                }
                for mode in [ParallelMode::Vertex, ParallelMode::Edge] {
                    assert_eq!(count_k_cliques(&hy, 4, kind, mode).unwrap(), k4);
                    assert_eq!(count_k_cliques(&hs, 4, kind, mode).unwrap(), k4);
                }
            }
        });
    }
}

#[test]
fn oriented_entry_points_agree() {
    let graph = generate_erdos_renyi::<HybridBitmapSet>(80, 0.2, 21).unwrap();
    let rank = compute_rank(&graph, OrderKind::Degree).unwrap();
    let dag = orient_by_rank(&graph, &rank).unwrap();
    let sink = Sink::collecting();
    list_k_cliques_oriented(&dag, 4, ParallelMode::Edge, &sink).unwrap();
    assert_eq!(sink.count(), count_k_cliques_oriented(&dag, 4, ParallelMode::Vertex).unwrap());
    let items = sink.into_items();
    assert!(items.iter().all(|c| c.len() == 4 && is_clique(&graph, c.members())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maximal_cliques_match_brute_force(n in 1usize..11, pairs in proptest::collection::vec((0u32..11, 0u32..11), 0..40)) {
        let pairs: Vec<_> = pairs.into_iter().filter(|&(a, b)| (a as usize) < n && (b as usize) < n).collect();
        let graph = g(EdgeList::new(n, pairs));
        let expect = brute_maximal(&graph);
        for kind in ORDERS {
            for opts in all_opts() {
                prop_assert_eq!(&mine(&graph, kind, opts), &expect);
            }
        }
    }

    #[test]
    fn k_clique_counts_match_brute_force(n in 2usize..14, p in 0.1f64..0.9, seed in 0u64..1000) {
        let graph = generate_erdos_renyi::<SortedArraySet>(n, p, seed).unwrap();
        prop_assert_eq!(count_k_cliques(&graph, 2, OrderKind::Degree, ParallelMode::Vertex).unwrap(), graph.num_edges() as u64);
        prop_assert_eq!(count_k_cliques(&graph, 3, OrderKind::Degeneracy, ParallelMode::Edge).unwrap(), triangle_count(&graph));
        for k in 2..=6 {
            let expect = brute_k_count(&graph, k);
            for mode in [ParallelMode::Vertex, ParallelMode::Edge] {
                prop_assert_eq!(count_k_cliques(&graph, k, OrderKind::adg(0.1), mode).unwrap(), expect);
            }
        }
    }

    #[test]
    fn clique_stars_are_valid(n in 3usize..12, p in 0.2f64..0.9, seed in 0u64..1000, k in 2usize..5) {
        let graph = generate_erdos_renyi::<HybridBitmapSet>(n, p, seed).unwrap();
        let got = stars(&graph, k);
        let mut expect = 0;
        for s in subsets(n).filter(|s| s.len() == k && is_clique(&graph, s)) {
            if (0..n as u32).any(|w| !s.contains(&w) && s.iter().all(|&v| graph.is_adjacent(v, w))) {
                expect += 1;
            }
        }
        prop_assert_eq!(got.len(), expect);
        for (c, star) in &got {
            prop_assert!(c.len() == k && is_clique(&graph, c.members()));
            prop_assert!(!star.is_empty());
            for &s in star {
                let mut bigger = c.members().to_vec();
                prop_assert!(!bigger.contains(&s));
                bigger.push(s);
                prop_assert!(is_clique(&graph, &bigger));
            }
        }
    }
}
