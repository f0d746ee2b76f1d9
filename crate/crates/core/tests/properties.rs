//! Randomized properties of reduction, closure, canonical codes,
//! serialization and decomposition.

mod common;

use common::{
    palette, permute_vertices, random_gallai, random_reduced_maximal, reduced_maximal, rng,
};
use gallai_core::cliques::double_edge_cliques;
use gallai_core::color::ColorSet;
use gallai_core::decomposition::{
    check_tree_property, decompose, prune_block, DecompositionSequence,
};
use gallai_core::maximal::{is_maximal, max_witness_violation, maximal_closure};
use gallai_core::mixed::MixedGraph;
use gallai_core::multigraph::ColoredMultigraph;
use gallai_core::oracle::canonical::canonical_form;
use gallai_core::oracle::roundtrip::roundtrip_check;
use gallai_core::rainbow::is_gallai;
use gallai_core::reduce::{is_reduced, reduce};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn any_graph() -> impl Strategy<Value = ColoredMultigraph> {
    (1usize..=6, 1usize..=4).prop_flat_map(|(n, c)| {
        let sets = ColorSet::nonempty_subsets(c, c);
        proptest::collection::vec(proptest::sample::select(sets), n * (n - 1) / 2)
            .prop_map(move |colors| ColoredMultigraph::new(n, palette(c), colors).unwrap())
    })
}

fn gallai_graph() -> impl Strategy<Value = ColoredMultigraph> {
    (1usize..=7, 1usize..=4, any::<u64>())
        .prop_map(|(n, c, seed)| random_gallai(&mut rng(seed), n, &palette(c)))
}

fn reduced_maximal_graph() -> impl Strategy<Value = ColoredMultigraph> {
    (2usize..=4, any::<u64>()).prop_map(|(c, seed)| random_reduced_maximal(seed, 8, &palette(c)))
}

/// An induced subgraph of a reduced maximal Gallai multigraph.
fn closed_subgraph() -> impl Strategy<Value = ColoredMultigraph> {
    (reduced_maximal_graph(), any::<u64>()).prop_map(|(h, seed)| {
        let mut vs: Vec<usize> = (0..h.n()).collect();
        let mut r = rng(seed);
        vs.shuffle(&mut r);
        let keep = 1 + (seed as usize % h.n());
        h.induced_subgraph(&vs[..keep]).unwrap()
    })
}

fn colors_between(g: &ColoredMultigraph, us: &[usize], vs: &[usize]) -> ColorSet {
    us.iter()
        .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
        .fold(ColorSet::EMPTY, |acc, (u, v)| acc.union(g.colors(u, v)))
}

fn partition_of(m: &MixedGraph) -> Vec<Vec<usize>> {
    let mut p: Vec<Vec<usize>> = m.blocks.iter().map(|b| b.vertices.clone()).collect();
    p.sort();
    p
}

fn check_structure(seq: &DecompositionSequence) -> Result<(), TestCaseError> {
    let n = seq.source.n();
    prop_assert!(seq.levels.len() <= n.max(1));
    for (k, m) in seq.levels.iter().enumerate() {
        prop_assert_eq!(m.level, k);
        let mut all: Vec<usize> = m
            .blocks
            .iter()
            .flat_map(|b| b.vertices.iter().copied())
            .collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        if k > 0 {
            prop_assert!(m.size() < seq.levels[k - 1].size());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduce_is_idempotent_and_reduces(g in any_graph()) {
        let r = reduce(&g);
        prop_assert!(is_reduced(&r.graph));
        prop_assert_eq!(reduce(&r.graph).graph, r.graph.clone());
        prop_assert_eq!(r.merge.len(), g.n());
        prop_assert!(r.merge.iter().all(|&v| v < r.graph.n()));
    }

    #[test]
    fn reduce_keeps_gallai(g in gallai_graph()) {
        prop_assert!(is_gallai(&reduce(&g).graph));
        let h = reduced_maximal(&g);
        prop_assert!(is_gallai(&h) && is_maximal(&h) && (h.n() < 3 || is_reduced(&h)));
    }

    #[test]
    fn closure_is_a_maximal_gallai_superset(g in gallai_graph()) {
        let h = maximal_closure(&g).unwrap();
        prop_assert!(is_gallai(&h));
        prop_assert!(is_maximal(&h));
        prop_assert!(g.raw_colors().iter().zip(h.raw_colors()).all(|(a, b)| a.is_subset(*b)));
        prop_assert_eq!(maximal_closure(&h).unwrap(), h.clone());
        prop_assert_eq!(max_witness_violation(&h), None);
    }

    #[test]
    fn closure_rejects_rainbow_input(g in any_graph()) {
        prop_assert_eq!(maximal_closure(&g).is_ok(), is_gallai(&g));
    }

    #[test]
    fn canonical_code_ignores_relabeling(g in any_graph(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.shuffle(&mut r);
        let mut perm: Vec<usize> = (0..g.palette().len()).collect();
        perm.shuffle(&mut r);
        let h = permute_vertices(&g, &order).recolored(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn multigraph_json_roundtrips(g in any_graph()) {
        prop_assert_eq!(ColoredMultigraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn decomposition_is_deterministic_and_serializable(g in any_graph()) {
        let seq = decompose(&g);
        prop_assert_eq!(&decompose(&g), &seq);
        check_structure(&seq)?;
        prop_assert_eq!(seq.to_json(), decompose(&g).to_json());
        for m in &seq.levels {
            prop_assert_eq!(&MixedGraph::from_json(&m.to_json()).unwrap(), m);
        }
    }

    #[test]
    fn mixed_canonical_code_ignores_relabeling(g in closed_subgraph(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let seq = decompose(&g);
        for m in &seq.levels {
            let mut order: Vec<usize> = (0..m.size()).collect();
            order.shuffle(&mut r);
            let mut perm: Vec<usize> = (0..m.palette.len()).collect();
            perm.shuffle(&mut r);
            let h = m.relabeled(&order).recolored(&perm);
            prop_assert_eq!(m.canonical_code(), h.canonical_code());
        }
    }

    #[test]
    fn reduced_maximal_pairs_carry_one_or_two_colors(h in reduced_maximal_graph()) {
        prop_assert!(h.raw_colors().iter().all(|s| (1..=2).contains(&s.len())));
        prop_assert!(double_edge_cliques(&h).is_ok());
    }

    #[test]
    fn reduced_maximal_graphs_roundtrip(h in reduced_maximal_graph()) {
        let report = roundtrip_check(&h);
        prop_assert!(report.passed, "{:?} on {}", report, h.to_json());
    }

    #[test]
    fn closed_subgraphs_decompose_into_rooted_trees(g in closed_subgraph()) {
        let seq = decompose(&g);
        check_structure(&seq)?;
        for m in &seq.levels {
            let r = check_tree_property(m);
            prop_assert!(r.is_ok(), "level {}: {:?} on {}", m.level, r, g.to_json());
        }
    }

    #[test]
    fn closed_subgraph_invariants(g in closed_subgraph()) {
        let seq = decompose(&g);
        for (k, m) in seq.levels.iter().enumerate() {
            let verts = |b: usize| m.blocks[b].vertices.as_slice();
            for e in &m.directed {
                for w in (0..m.size()).filter(|&w| w != e.from && w != e.to) {
                    let uw = colors_between(&g, verts(e.from), verts(w));
                    if let Some(c) = uw.only().filter(|&c| !e.colors.contains(c)) {
                        prop_assert_eq!(colors_between(&g, verts(e.to), verts(w)), ColorSet::single(c));
                    }
                }
            }
            for b in 0..m.size() {
                let tau = seq.tau(k, b);
                prop_assert!(tau.is_some_and(|t| t.is_empty() || t.len() == 2));
                let tau = tau.unwrap();
                prop_assert!(m.out_edges(b).all(|e| e.colors == tau));
                if verts(b).len() > 1 {
                    let r = m.blocks[b].base_root.unwrap();
                    let rest: Vec<usize> = verts(b).iter().copied().filter(|&v| v != r).collect();
                    prop_assert_eq!(colors_between(&g, &[r], &rest), tau);
                }
            }
        }
    }

    #[test]
    fn pruning_any_block_keeps_the_rest(g in closed_subgraph()) {
        let seq = decompose(&g);
        for level in 0..seq.levels.len() {
            for b in 0..seq.levels[level].size() {
                if seq.levels[level].blocks[b].vertices.len() == g.n() {
                    prop_assert!(prune_block(&g, &seq, level, b).is_err());
                    continue;
                }
                let r = prune_block(&g, &seq, level, b).unwrap();
                prop_assert!(r.passed, "{:?} on {}", r, g.to_json());
            }
        }
    }

    #[test]
    fn level_partitions_coarsen(g in any_graph()) {
        let seq = decompose(&g);
        for k in 1..seq.levels.len() {
            let finer = partition_of(&seq.levels[k - 1]);
            for block in partition_of(&seq.levels[k]) {
                let covered: usize = finer.iter().filter(|f| f.iter().all(|v| block.contains(v))).map(Vec::len).sum();
                prop_assert_eq!(covered, block.len());
            }
        }
    }
}
