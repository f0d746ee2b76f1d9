//! Seeds of undirected mixed graphs and the bounded closure under the tree
//! and forest constructions.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::color::{ColorSet, Palette};
use crate::construction::delta::{delta_f_all, delta_t, SigmaChoice};
use crate::construction::gamma::{for_each_realization, LeafPool};
use crate::error::{GallaiError, Result};
use crate::mixed::{MixedCode, MixedGraph};
use crate::multigraph::{pair_count, ColoredMultigraph};
use crate::oracle::canonical::{canonical_form, CanonicalCode, Canonicalizer};

/// The undirected mixed graph mirroring a simple coloring with at most two colors.
pub fn gallai_graph_base(outer: &ColoredMultigraph) -> Result<MixedGraph> {
    let mut used = ColorSet::EMPTY;
    let mut edges = Vec::new();
    for (u, v) in outer.pairs() {
        let set = outer.colors(u, v);
        let Some(c) = set.only() else {
            return Err(GallaiError::Construction(format!(
                "pair ({u},{v}) carries {} colors",
                set.len()
            )));
        };
        used.insert(c);
        edges.push((u, v, c));
    }
    if used.len() > 2 {
        return Err(GallaiError::Construction(format!(
            "{} colors used, at most two allowed",
            used.len()
        )));
    }
    Ok(MixedGraph::from_parts(
        outer.palette().clone(),
        outer.n(),
        edges,
        [],
    ))
}

/// Every simple Gallai coloring on up to `max_n` vertices, one per
/// isomorphism class (vertex and color relabeling), sorted by size then code.
/// Built by nesting: substitute smaller Gallai colorings into the vertices
/// of a two-colored complete graph.
pub fn simple_gallai_graphs(max_n: usize, palette: &Palette) -> Result<Vec<ColoredMultigraph>> {
    let c = palette.len();
    let color_pairs: Vec<ColorSet> = if c == 1 {
        vec![ColorSet::single(0)]
    } else {
        (0..c)
            .tuple_combinations()
            .map(|(a, b)| ColorSet::pair(a, b))
            .collect()
    };
    // every color labeling, up to vertex relabeling, by size
    let mut labeled: Vec<Vec<ColoredMultigraph>> = vec![Vec::new(); max_n + 1];
    if max_n >= 1 {
        labeled[1].push(ColoredMultigraph::point(palette.clone()));
    }
    for n in 2..=max_n {
        let pool =
            LeafPool::empty(palette, n - 1).with_graphs(labeled[..n].iter().flatten().cloned());
        let mut seen: BTreeSet<CanonicalCode> = BTreeSet::new();
        let vertex_canon = Canonicalizer::vertices_only(n, c);
        let mut found = Vec::new();
        for k in 2..=n {
            for &pair in &color_pairs {
                let colors: Vec<usize> = pair.iter().collect();
                for outer in (0..pair_count(k))
                    .map(|_| colors.iter().copied())
                    .multi_cartesian_product()
                {
                    let sets = outer.into_iter().map(ColorSet::single).collect();
                    let outer = ColoredMultigraph::new(k, palette.clone(), sets)?;
                    let base = gallai_graph_base(&outer)?;
                    for_each_realization(&base, &pool, n, &mut |_, r| {
                        if r.graph.n() == n
                            && seen.insert(vertex_canon.canonicalize(r.graph.raw_colors()).code)
                        {
                            found.push(r.graph.clone());
                        }
                    })?;
                }
            }
        }
        labeled[n] = found;
    }
    let mut reps: BTreeMap<(usize, CanonicalCode), ColoredMultigraph> = BTreeMap::new();
    for g in labeled.into_iter().flatten() {
        reps.entry((g.n(), canonical_form(&g))).or_insert(g);
    }
    Ok(reps.into_values().collect())
}

/// Bounded closure: start from every simple Gallai coloring as an undirected
/// mixed graph, then `depth` times add all tree and forest constructions
/// applied to the family so far. Members are unique up to vertex and color
/// relabeling, sorted by size then code.
pub fn iterate_m_prime(
    size_bound: usize,
    palette: &Palette,
    depth: usize,
) -> Result<Vec<MixedGraph>> {
    if size_bound == 0 {
        return Err(GallaiError::Bounds("size bound must be positive".into()));
    }
    let mut family: BTreeMap<(usize, MixedCode), MixedGraph> = BTreeMap::new();
    for g in simple_gallai_graphs(size_bound, palette)? {
        let edges = g
            .pairs()
            .map(|(u, v)| (u, v, g.colors(u, v).only().expect("simple")));
        let m = MixedGraph::from_parts(palette.clone(), g.n(), edges.collect::<Vec<_>>(), []);
        family.insert((m.size(), m.canonical_code()), m);
    }
    let c = palette.len();
    let pairs: Vec<ColorSet> = (0..c)
        .tuple_combinations()
        .map(|(a, b)| ColorSet::pair(a, b))
        .collect();
    for _ in 0..depth {
        let members: Vec<&MixedGraph> = family.values().collect();
        let trees: Vec<MixedGraph> = members
            .iter()
            .filter(|m| m.is_rooted_tree())
            .map(|m| (*m).clone())
            .collect();
        let batches: Vec<Result<Vec<MixedGraph>>> = members
            .par_iter()
            .map(|m| {
                let mut out = Vec::new();
                if m.size() < size_bound {
                    for &p in &pairs {
                        out.extend(delta_t(m, p, SigmaChoice::AllCoarsenings)?);
                    }
                }
                delta_f_all(m, &trees, size_bound, &mut |f| out.push(f))?;
                Ok(out)
            })
            .collect();
        let before = family.len();
        for batch in batches {
            for m in batch? {
                family.entry((m.size(), m.canonical_code())).or_insert(m);
            }
        }
        if family.len() == before {
            break;
        }
    }
    Ok(family.into_values().collect())
}
