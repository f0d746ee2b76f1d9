//! Growing mixed graphs: adding a dominating root (trees) and substituting
//! trees for the vertices of a base (forests).

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use petgraph::unionfind::UnionFind;

use crate::color::{Color, ColorSet};
use crate::construction::gamma::{check_signature, out_colors};
use crate::construction::tilde::{signature_choices, tilde_classes};
use crate::error::{GallaiError, Result};
use crate::mixed::{Link, MixedCode, MixedGraph};

/// How the classes of the new root edges are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaChoice {
    /// Every equivalence containing the generated relation.
    #[default]
    AllCoarsenings,
    /// Only the generated relation itself.
    GeneratedOnly,
}

/// All set partitions of `0..k` as restricted growth strings.
pub fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, next: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..=next {
            cur.push(b);
            rec(k, next.max(b + 1), cur, out);
            cur.pop();
        }
    }
    rec(k, 0, &mut cur, &mut out);
    out
}

fn check_pair(m: &MixedGraph, two_colors: ColorSet) -> Result<()> {
    if two_colors.len() != 2 || !two_colors.is_subset(m.palette.full()) {
        return Err(GallaiError::Construction(
            "tree colors must be two palette colors".into(),
        ));
    }
    Ok(())
}

/// Groups of weak components that the root must treat alike: components
/// joined by an edge colored outside `two_colors`. Returns, per vertex,
/// the index of its group.
fn root_groups(m: &MixedGraph, two_colors: ColorSet) -> Vec<usize> {
    let comps = m.weak_components();
    let mut comp_of = vec![0; m.size()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut uf = UnionFind::<usize>::new(comps.len());
    for e in &m.undirected {
        if !two_colors.contains(e.color) {
            uf.union(comp_of[e.a], comp_of[e.b]);
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let group_of_comp: Vec<usize> = (0..comps.len())
        .map(|c| {
            let next = ids.len();
            *ids.entry(uf.find(c)).or_insert(next)
        })
        .collect();
    comp_of.iter().map(|&c| group_of_comp[c]).collect()
}

/// Trees with a new root `0` dominating every vertex of `m` (shifted by one)
/// with `two_colors`.
pub fn delta_t(
    m: &MixedGraph,
    two_colors: ColorSet,
    choice: SigmaChoice,
) -> Result<Vec<MixedGraph>> {
    check_pair(m, two_colors)?;
    let groups = root_groups(m, two_colors);
    let g = groups.iter().copied().max().map_or(0, |x| x + 1);
    let partitions = match choice {
        SigmaChoice::AllCoarsenings => set_partitions(g),
        SigmaChoice::GeneratedOnly => vec![(0..g).collect()],
    };
    // keys for new classes sit above every inherited class id
    let fresh = m
        .directed
        .iter()
        .map(|e| e.sigma_class + 1)
        .max()
        .unwrap_or(0);
    Ok(partitions
        .into_iter()
        .map(|part| {
            let undirected = m.undirected.iter().map(|e| (e.a + 1, e.b + 1, e.color));
            let inherited = m
                .directed
                .iter()
                .map(|e| (e.from + 1, e.to + 1, e.colors, e.sigma_class));
            let root = (0..m.size()).map(|v| (0, v + 1, two_colors, fresh + part[groups[v]]));
            let mut t = MixedGraph::from_parts(
                m.palette.clone(),
                m.size() + 1,
                undirected,
                inherited.chain(root),
            );
            t.level = 0;
            t
        })
        .collect())
}

/// Substitutes `trees[u]` for every vertex `u` of `base`. Cross pairs become
/// undirected edges colored by the base edge, or by the signature of the
/// dominating side.
pub fn delta_f(
    base: &MixedGraph,
    trees: &[MixedGraph],
    signatures: &BTreeMap<(usize, usize), Vec<Color>>,
) -> Result<MixedGraph> {
    let fail = |msg: String| Err(GallaiError::Construction(msg));
    base.validate_complete()?;
    let k = base.size();
    if trees.len() != k {
        return fail(format!("{} trees for {k} base vertices", trees.len()));
    }
    for (u, t) in trees.iter().enumerate() {
        if t.palette != base.palette {
            return fail(format!("tree {u} uses a different palette"));
        }
        t.validate_complete()?;
        let Some(tau) = t.tree_tau() else {
            return fail(format!("tree {u} is not a rooted tree"));
        };
        if let Some(want) = out_colors(base, u)? {
            if t.size() < 2 {
                return fail(format!(
                    "dominating vertex {u} needs a tree with at least two vertices"
                ));
            }
            if tau != want {
                return fail(format!(
                    "tree {u} dominates with other colors than its out-edges"
                ));
            }
        }
    }
    for key in signatures.keys() {
        if !base.directed.iter().any(|e| (e.from, e.to) == *key) {
            return fail(format!(
                "signature for {key:?}, which is not a directed edge"
            ));
        }
    }
    let mut by_class: BTreeMap<usize, &Vec<Color>> = BTreeMap::new();
    for e in &base.directed {
        let Some(sig) = signatures.get(&(e.from, e.to)) else {
            return fail(format!(
                "no signature for directed edge ({},{})",
                e.from, e.to
            ));
        };
        check_signature(
            &format!("edge ({},{})", e.from, e.to),
            &trees[e.from],
            sig,
            e.colors,
        )?;
        if by_class
            .insert(e.sigma_class, sig)
            .is_some_and(|prev| prev != sig)
        {
            return fail(format!(
                "edge ({},{}) disagrees with its signature class",
                e.from, e.to
            ));
        }
    }
    Ok(flatten(base, trees, signatures))
}

fn flatten(
    base: &MixedGraph,
    trees: &[MixedGraph],
    signatures: &BTreeMap<(usize, usize), Vec<Color>>,
) -> MixedGraph {
    let mut offset = Vec::with_capacity(trees.len());
    let mut total = 0;
    for t in trees {
        offset.push(total);
        total += t.size();
    }
    let stride = trees.iter().map(|t| t.directed.len()).max().unwrap_or(0) + 1;
    let mut undirected = Vec::new();
    let mut directed = Vec::new();
    for (u, t) in trees.iter().enumerate() {
        let o = offset[u];
        undirected.extend(t.undirected.iter().map(|e| (e.a + o, e.b + o, e.color)));
        directed.extend(
            t.directed
                .iter()
                .map(|e| (e.from + o, e.to + o, e.colors, u * stride + e.sigma_class)),
        );
    }
    let links = base.links();
    for v in 1..trees.len() {
        for u in 0..v {
            for x in 0..trees[u].size() {
                for y in 0..trees[v].size() {
                    let color = match links.get(u, v) {
                        Link::Undirected(c) => c,
                        Link::Out(..) => signatures[&(u, v)][x],
                        Link::In(..) => signatures[&(v, u)][y],
                        Link::None | Link::Conflict => unreachable!("validated base is complete"),
                    };
                    undirected.push((x + offset[u], y + offset[v], color));
                }
            }
        }
    }
    MixedGraph::from_parts(base.palette.clone(), total, undirected, directed)
}

/// `t` under every palette permutation, without repeats.
pub fn color_variants(t: &MixedGraph) -> Vec<MixedGraph> {
    let c = t.palette.len();
    let mut seen: BTreeSet<MixedCode> = BTreeSet::new();
    let mut out = Vec::new();
    for perm in (0..c).permutations(c) {
        let v = t.recolored(&perm);
        if seen.insert(v.vertex_code()) {
            out.push(v);
        }
    }
    out
}

/// Visits every forest substitution over `base` from the given trees (tried
/// under all color relabelings) with at most `max_size` vertices in total.
pub fn delta_f_all(
    base: &MixedGraph,
    trees: &[MixedGraph],
    max_size: usize,
    visit: &mut dyn FnMut(MixedGraph),
) -> Result<()> {
    base.validate_complete()?;
    let k = base.size();
    if k > max_size {
        return Ok(());
    }
    let mut variants: Vec<(ColorSet, MixedGraph)> = Vec::new();
    for t in trees.iter().filter(|t| t.size() <= max_size + 1 - k) {
        for v in color_variants(t) {
            if let Some(tau) = v.tree_tau() {
                variants.push((tau, v));
            }
        }
    }
    let mut wants = Vec::with_capacity(k);
    for u in 0..k {
        wants.push(out_colors(base, u)?);
    }
    let mut chosen: Vec<&MixedGraph> = Vec::with_capacity(k);
    choose_trees(base, &variants, &wants, max_size - k, &mut chosen, visit)
}

fn choose_trees<'a>(
    base: &MixedGraph,
    variants: &'a [(ColorSet, MixedGraph)],
    wants: &[Option<ColorSet>],
    spare: usize,
    chosen: &mut Vec<&'a MixedGraph>,
    visit: &mut dyn FnMut(MixedGraph),
) -> Result<()> {
    let u = chosen.len();
    if u == base.size() {
        return choose_forest_signatures(base, chosen, visit);
    }
    for (tau, t) in variants {
        if t.size() > spare + 1 {
            continue;
        }
        if let Some(want) = wants[u] {
            if t.size() < 2 || *tau != want {
                continue;
            }
        }
        chosen.push(t);
        choose_trees(base, variants, wants, spare + 1 - t.size(), chosen, visit)?;
        chosen.pop();
    }
    Ok(())
}

fn choose_forest_signatures(
    base: &MixedGraph,
    trees: &[&MixedGraph],
    visit: &mut dyn FnMut(MixedGraph),
) -> Result<()> {
    let mut classes: BTreeMap<usize, (usize, ColorSet)> = BTreeMap::new();
    for e in &base.directed {
        classes.entry(e.sigma_class).or_insert((e.from, e.colors));
    }
    let mut options: Vec<(usize, Vec<Vec<Color>>)> = Vec::with_capacity(classes.len());
    for (&class, &(from, colors)) in &classes {
        let parts = tilde_classes(trees[from], colors)?;
        options.push((class, signature_choices(&parts, colors)?));
    }
    if options.iter().any(|(_, o)| o.is_empty()) {
        return Ok(());
    }
    let owned: Vec<MixedGraph> = trees.iter().map(|t| (*t).clone()).collect();
    if options.is_empty() {
        visit(flatten(base, &owned, &BTreeMap::new()));
        return Ok(());
    }
    for pick in options
        .iter()
        .map(|(_, o)| 0..o.len())
        .multi_cartesian_product()
    {
        let by_class: BTreeMap<usize, &Vec<Color>> = options
            .iter()
            .zip(&pick)
            .map(|((class, o), &i)| (*class, &o[i]))
            .collect();
        let signatures = base
            .directed
            .iter()
            .map(|e| ((e.from, e.to), by_class[&e.sigma_class].clone()))
            .collect();
        visit(flatten(base, &owned, &signatures));
    }
    Ok(())
}
