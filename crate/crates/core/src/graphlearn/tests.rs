use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::graphstore::named::*;
use crate::graphstore::{build_graph, generate_erdos_renyi, EdgeList, SetGraph};
use crate::setcore::{HashVertexSet, HybridBitmapSet, SortedArraySet, VertexSet};

type M = SimilarityMeasure;

fn g(e: EdgeList) -> SetGraph<SortedArraySet> {
    build_graph(&e)
}

/// `N(u) = {1,2,3}`, `N(v) = {2,3,4}` with `u = 0`, `v = 5`; vertices 2 and 3
/// have degree 2.
fn example() -> SetGraph<SortedArraySet> {
    g(EdgeList::new(6, vec![(0, 1), (0, 2), (0, 3), (5, 2), (5, 3), (5, 4)]))
}

#[test]
fn similarity_examples() {
    let e = example();
    assert_eq!(similarity(&e, 0, 5, M::Jaccard), 0.5);
    assert!((similarity(&e, 0, 5, M::Overlap) - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(similarity(&e, 0, 5, M::CommonNeighbors), 2.0);
    assert_eq!(similarity(&e, 0, 5, M::PreferentialAttachment), 9.0);
    assert_eq!(similarity(&e, 0, 5, M::TotalNeighbors), 4.0);
    assert!((similarity(&e, 0, 5, M::AdamicAdar) - 2.0 / 2f64.ln()).abs() < 1e-12);
    assert!((similarity(&e, 0, 5, M::AdamicAdar) - 2.8854).abs() < 1e-4);
    assert_eq!(similarity(&e, 0, 5, M::ResourceAllocation), 1.0);
    assert_eq!(similarity(&e, 0, 0, M::Jaccard), 1.0);
}

#[test]
fn degenerate_similarities() {
    let graph = g(EdgeList::new(4, vec![(0, 1)]));
    assert_eq!(similarity(&graph, 2, 3, M::Jaccard), 0.0);
    assert_eq!(similarity(&graph, 2, 3, M::Overlap), 0.0);
    assert_eq!(similarity(&graph, 0, 2, M::Overlap), 0.0);
    // The only common neighbor has degree 1 and is skipped.
    let p2 = g(path(2));
    assert_eq!(similarity(&p2, 0, 0, M::AdamicAdar), 0.0);
}

#[test]
fn measure_parsing() {
    for m in M::ALL {
        assert_eq!(m.to_string().parse::<M>().unwrap(), m);
    }
    assert_eq!("AA".parse::<M>().unwrap(), M::AdamicAdar);
    assert_eq!("preferential_attachment".parse::<M>().unwrap(), M::PreferentialAttachment);
    assert!("cosine".parse::<M>().is_err());
}

#[test]
fn split_examples() {
    let graph = g(EdgeList::new(10, (0..10).map(|i| (i, (i + 1) % 10)).collect()));
    let s = make_split(&graph, 0.2, 4).unwrap();
    assert_eq!((s.removed.len(), s.sparse_edges.len()), (2, 8));
    assert_eq!(s, make_split(&graph, 0.2, 4).unwrap());

    let k4 = g(complete(4));
    let s = make_split(&k4, 0.5, 1).unwrap();
    assert_eq!(s.removed.len(), 3);
    let sparse: SetGraph<SortedArraySet> = s.sparse_graph();
    assert_eq!(sparse.num_edges(), 3);
    let mut all: Vec<_> = s.sparse_edges.iter().chain(&s.removed).copied().collect();
    all.sort();
    assert_eq!(all, k4.edges());

    assert!(matches!(make_split(&k4, 0.0, 1), Err(LearnError::InvalidFraction(_))));
    assert!(matches!(make_split(&k4, 1.0, 1), Err(LearnError::InvalidFraction(_))));
    assert!(matches!(make_split(&k4, 0.05, 1), Err(LearnError::EmptyRemoval { .. })));
    let empty: SetGraph<SortedArraySet> = SetGraph::empty(3);
    assert!(make_split(&empty, 0.5, 1).is_err());
}

#[test]
fn k4_single_removal_is_always_recovered() {
    let k4 = g(complete(4));
    for seed in 0..10 {
        let s = make_split(&k4, 0.1, seed).unwrap();
        assert_eq!(s.removed.len(), 1);
        for m in M::ALL {
            let rep = evaluate_link_prediction::<SortedArraySet>(&s, m).unwrap();
            assert_eq!((rep.eff, rep.precision), (1, 1.0), "{m}");
        }
    }
}

#[test]
fn zero_scores_fill_lexicographically() {
    // Sparse graph without edges: every pair scores 0 for CN.
    let split = LinkPredictionSplit { n: 5, sparse_edges: vec![], removed: vec![(0, 2), (3, 4)], seed: 0 };
    let rep = evaluate_link_prediction::<HybridBitmapSet>(&split, M::CommonNeighbors).unwrap();
    let pairs: Vec<_> = rep.predictions.iter().map(|p| (p.u, p.v)).collect();
    assert_eq!(pairs, vec![(0, 1), (0, 2)]);
    assert_eq!(rep.eff, 1);
    assert!((0.0..=1.0).contains(&rep.precision));
}

#[test]
fn full_pool_limit() {
    let big: SetGraph<SortedArraySet> = SetGraph::empty(FULL_POOL_MAX_VERTICES + 1);
    assert!(matches!(predict_links(&big, M::PreferentialAttachment, 3), Err(LearnError::PoolTooLarge { .. })));
    assert_eq!(predict_links(&big, M::Jaccard, 2).unwrap().len(), 2);
}

#[test]
fn prediction_export() {
    let preds = [LinkPrediction { u: 0, v: 3, score: 2.5 }, LinkPrediction { u: 1, v: 2, score: 0.0 }];
    let mut buf = Vec::new();
    write_predictions(&preds, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "0 3 2.5\n1 2 0\n");
}

#[test]
fn jarvis_patrick_examples() {
    let bt = g(bridged_triangles());
    let c = jarvis_patrick(&bt, 1);
    assert_eq!(c.cluster_sizes(), vec![3, 3]);
    assert_ne!(c.label[2], c.label[3]);

    let two = g(EdgeList::new(6, vec![(0, 1), (2, 3), (3, 4)]));
    assert_eq!(jarvis_patrick(&two, 0).label, vec![0, 0, 1, 1, 1, 2]);

    assert_eq!(jarvis_patrick(&g(complete(4)), 2).num_clusters(), 1);
    assert_eq!(jarvis_patrick(&g(complete(4)), 3).num_clusters(), 4);

    let mut buf = Vec::new();
    jarvis_patrick(&g(path(2)), 0).write_text(&mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "0 0\n1 0\n");
}

/// Reference scores computed from plain ordered sets.
fn model_score(adj: &[BTreeSet<u32>], u: u32, v: u32, m: M) -> f64 {
    let (a, b) = (&adj[u as usize], &adj[v as usize]);
    let common: Vec<u32> = a.intersection(b).copied().collect();
    let union = a.union(b).count();
    let ratio = |x: usize, y: usize| if y == 0 { 0.0 } else { x as f64 / y as f64 };
    match m {
        M::Jaccard => ratio(common.len(), union),
        M::Overlap => ratio(common.len(), a.len().min(b.len())),
        M::CommonNeighbors => common.len() as f64,
        M::TotalNeighbors => union as f64,
        M::PreferentialAttachment => (a.len() * b.len()) as f64,
        M::AdamicAdar => {
            common.iter().map(|&w| adj[w as usize].len()).filter(|&d| d > 1).map(|d| 1.0 / (d as f64).ln()).sum()
        }
        M::ResourceAllocation => common.iter().map(|&w| 1.0 / adj[w as usize].len() as f64).sum(),
    }
}

fn model_eff(split: &LinkPredictionSplit, m: M) -> usize {
    let mut adj = vec![BTreeSet::new(); split.n];
    for &(u, v) in &split.sparse_edges {
        adj[u as usize].insert(v);
        adj[v as usize].insert(u);
    }
    let mut pool = Vec::new();
    for u in 0..split.n as u32 {
        for v in u + 1..split.n as u32 {
            if !adj[u as usize].contains(&v) {
                pool.push((model_score(&adj, u, v, m), u, v));
            }
        }
    }
    pool.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    pool.iter().take(split.removed.len()).filter(|&&(_, u, v)| split.removed.contains(&(u, v))).count()
}

#[test]
fn link_prediction_matches_model_and_is_stable() {
    for seed in 0..12u64 {
        let graph = generate_erdos_renyi::<SortedArraySet>(18 + seed as usize, 0.25, seed).unwrap();
        let split = make_split(&graph, 0.2, seed + 100).unwrap();
        for m in M::ALL {
            let sorted = evaluate_link_prediction::<SortedArraySet>(&split, m).unwrap();
            assert_eq!(sorted.eff, model_eff(&split, m), "{m} seed {seed}");
            let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
            let hybrid = pool.install(|| evaluate_link_prediction::<HybridBitmapSet>(&split, m).unwrap());
            let hash = evaluate_link_prediction::<HashVertexSet>(&split, m).unwrap();
            assert_eq!(sorted, hybrid);
            assert_eq!(sorted, hash);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measures_symmetric_and_bounded(n in 2usize..30, p in 0.05f64..0.8, seed in 0u64..10_000) {
        let graph = generate_erdos_renyi::<HybridBitmapSet>(n, p, seed).unwrap();
        let hash = graph.convert::<HashVertexSet>();
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                for m in M::ALL {
                    prop_assert_eq!(similarity(&graph, u, v, m), similarity(&graph, v, u, m));
                    prop_assert_eq!(similarity(&graph, u, v, m), similarity(&hash, u, v, m));
                }
                let j = similarity(&graph, u, v, M::Jaccard);
                let o = similarity(&graph, u, v, M::Overlap);
                prop_assert!((0.0..=1.0).contains(&j) && j <= o && o <= 1.0);
                let cn = graph.neighbors(u).intersect_count(graph.neighbors(v));
                prop_assert_eq!(similarity(&graph, u, v, M::CommonNeighbors), cn as f64);
            }
        }
    }

    #[test]
    fn jp_zero_is_components(pairs in proptest::collection::vec((0u32..25, 0u32..25), 0..40), tau in 0usize..4) {
        let graph = g(EdgeList::new(25, pairs.clone()));
        let mut parent: Vec<usize> = (0..25).collect();
        fn root(p: &mut Vec<usize>, v: usize) -> usize {
            if p[v] != v { let r = root(p, p[v]); p[v] = r; }
            p[v]
        }
        for &(a, b) in &pairs {
            let (x, y) = (root(&mut parent, a as usize), root(&mut parent, b as usize));
            parent[x] = y;
        }
        let c = jarvis_patrick(&graph, 0);
        for a in 0..25 {
            for b in 0..25 {
                prop_assert_eq!(c.label[a] == c.label[b], root(&mut parent, a) == root(&mut parent, b));
            }
        }
        // Raising the threshold only refines the partition.
        let fine = jarvis_patrick(&graph, tau);
        for a in 0..25 {
            for b in 0..25 {
                if fine.label[a] == fine.label[b] {
                    prop_assert_eq!(c.label[a], c.label[b]);
                }
            }
        }
    }
}
