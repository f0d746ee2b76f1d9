//! Dominance between vertex sets and the level sequence `M_0, M_1, ...`
//! obtained by repeatedly collapsing weak components of the dominance graph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::color::ColorSet;
use crate::error::{GallaiError, Result};
use crate::mixed::{Block, DirectedEdge, Link, MixedGraph, MixedGraphJson, UndirectedEdge};
use crate::multigraph::{ColoredMultigraph, MultigraphJson, PairColoring};

/// `u -> ρ[uV]` for each `u` of the dominating side, sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<(usize, ColorSet)>);

impl Signature {
    pub fn get(&self, u: usize) -> Option<ColorSet> {
        self.0.iter().find(|(v, _)| *v == u).map(|(_, c)| *c)
    }

    pub fn image(&self) -> ColorSet {
        self.0
            .iter()
            .fold(ColorSet::EMPTY, |acc, (_, c)| acc.union(*c))
    }
}

fn check_sets(n: usize, us: &[usize], vs: &[usize]) -> Result<()> {
    if us.is_empty() || vs.is_empty() {
        return Err(GallaiError::VertexSet(
            "dominance needs nonempty sets".into(),
        ));
    }
    if let Some(x) = us.iter().chain(vs).find(|&&x| x >= n) {
        return Err(GallaiError::VertexSet(format!("vertex {x} out of range")));
    }
    if us.iter().any(|u| vs.contains(u)) {
        return Err(GallaiError::VertexSet(
            "dominance needs disjoint sets".into(),
        ));
    }
    Ok(())
}

/// The signature of `U ⊳ V` when `U` dominates `V`.
pub fn dominates(g: &ColoredMultigraph, us: &[usize], vs: &[usize]) -> Result<Option<Signature>> {
    check_sets(g.n(), us, vs)?;
    Ok(dominance(g, us, vs))
}

fn dominance(g: &ColoredMultigraph, us: &[usize], vs: &[usize]) -> Option<Signature> {
    if g.colors_between(us, vs).len() < 2 {
        return None;
    }
    if us.len() == 1 && vs.len() == 1 {
        return (us[0] < vs[0]).then(|| Signature(vec![(us[0], g.colors(us[0], vs[0]))]));
    }
    let mut sig = Vec::with_capacity(us.len());
    for &u in us {
        let first = g.colors(u, vs[0]);
        if vs[1..].iter().any(|&v| g.colors(u, v) != first) {
            return None;
        }
        sig.push((u, first));
    }
    sig.sort();
    Some(Signature(sig))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSequence {
    pub source: ColoredMultigraph,
    /// `M_0` through the first level whose partition repeats.
    pub levels: Vec<MixedGraph>,
}

impl DecompositionSequence {
    pub fn last_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// Level `k`, or the last level when the sequence was already stationary.
    pub fn level(&self, k: usize) -> &MixedGraph {
        &self.levels[k.min(self.last_level())]
    }

    /// Index of the block at level `k` holding vertex `u` (`[u]_k`).
    pub fn block_of(&self, k: usize, u: usize) -> usize {
        self.level(k)
            .blocks
            .iter()
            .position(|b| b.vertices.contains(&u))
            .expect("levels partition the vertex set")
    }

    /// `τ` of block `b` at level `k`: at level 0 the union of the colors
    /// `b` dominates with, above that `τ(rt(b))`. `None` when the root is
    /// undefined because the block is not a rooted tree.
    pub fn tau(&self, k: usize, b: usize) -> Option<ColorSet> {
        let m = self.level(k);
        if k.min(self.last_level()) == 0 {
            return Some(
                m.out_edges(b)
                    .fold(ColorSet::EMPTY, |acc, e| acc.union(e.colors)),
            );
        }
        let child = m.blocks[b].root_child?;
        self.tau(k.min(self.last_level()) - 1, child)
    }

    pub fn to_json_value(&self) -> DecompositionJson {
        DecompositionJson {
            source: self.source.to_json_value(),
            levels: self.levels.iter().map(MixedGraph::to_json_value).collect(),
            tau: (0..self.levels.len())
                .map(|k| {
                    (0..self.levels[k].size())
                        .map(|b| self.tau(k, b).map(|s| self.source.palette().labels_of(s)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionJson {
    pub source: MultigraphJson,
    pub levels: Vec<MixedGraphJson>,
    /// Per level, per block.
    pub tau: Vec<Vec<Option<Vec<String>>>>,
}

/// Builds the mixed graph on a partition of the vertices of `g`.
fn build_level(g: &ColoredMultigraph, level: usize, blocks: Vec<Block>) -> MixedGraph {
    let k = blocks.len();
    let mut undirected = Vec::new();
    let mut arcs: Vec<(usize, usize, ColorSet, Signature)> = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let (us, vs) = (&blocks[a].vertices, &blocks[b].vertices);
            if a < b {
                if let Some(c) = g.colors_between(us, vs).only() {
                    undirected.push(UndirectedEdge { a, b, color: c });
                }
            }
            if let Some(sig) = dominance(g, us, vs) {
                arcs.push((a, b, g.colors_between(us, vs), sig));
            }
        }
    }
    // classes: equal signature out of the same block
    let mut class_ids: BTreeMap<(usize, Signature), usize> = BTreeMap::new();
    let mut directed = Vec::with_capacity(arcs.len());
    for (from, to, colors, sig) in arcs {
        let next = class_ids.len();
        let sigma_class = *class_ids.entry((from, sig)).or_insert(next);
        directed.push(DirectedEdge {
            from,
            to,
            colors,
            sigma_class,
        });
    }
    let mut m = MixedGraph {
        level,
        palette: g.palette().clone(),
        blocks,
        undirected,
        directed,
    };
    m.normalize();
    m
}

/// Child with an arc to every other child of the component, if exactly one exists.
fn root_child(m: &MixedGraph, comp: &[usize]) -> Option<usize> {
    if comp.len() == 1 {
        return Some(comp[0]);
    }
    let links = m.links();
    let mut roots = comp.iter().copied().filter(|&r| {
        comp.iter()
            .all(|&v| v == r || matches!(links.get(r, v), Link::Out(..)))
    });
    let r = roots.next()?;
    roots.next().is_none().then_some(r)
}

fn next_blocks(m: &MixedGraph) -> Vec<Block> {
    m.weak_components()
        .into_iter()
        .enumerate()
        .map(|(id, comp)| {
            let mut vertices: Vec<usize> = comp
                .iter()
                .flat_map(|&c| m.blocks[c].vertices.iter().copied())
                .collect();
            vertices.sort_unstable();
            let root = root_child(m, &comp);
            Block {
                id,
                vertices,
                base_root: root.and_then(|r| m.blocks[r].base_root),
                root_child: root,
                children: comp,
            }
        })
        .collect()
}

/// The sequence `M_0(g), M_1(g), ...` up to the first repeated partition.
pub fn decompose(g: &ColoredMultigraph) -> DecompositionSequence {
    let mut levels = vec![build_level(g, 0, (0..g.n()).map(Block::point).collect())];
    loop {
        let last = levels.last().expect("nonempty");
        let blocks = next_blocks(last);
        if blocks.len() == last.size() {
            break;
        }
        let next = build_level(g, levels.len(), blocks);
        levels.push(next);
    }
    DecompositionSequence {
        source: g.clone(),
        levels,
    }
}

/// First failed clause of the tree property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum TreeViolation {
    /// (1) a block pair without exactly one edge.
    Incomplete { a: usize, b: usize, edges: usize },
    /// (2) an edge whose color list has the wrong size.
    ColorCount {
        a: usize,
        b: usize,
        directed: bool,
        colors: usize,
    },
    /// (3) a weak component that is not a rooted tree.
    NotRootedTree {
        component: Vec<usize>,
        reason: String,
    },
    /// (4) `(u,v)` and `(v,w)` directed but `(u,v)`, `(u,w)` in different classes.
    SignatureSplit { u: usize, v: usize, w: usize },
}

impl TreeViolation {
    pub fn clause(&self) -> u8 {
        match self {
            Self::Incomplete { .. } => 1,
            Self::ColorCount { .. } => 2,
            Self::NotRootedTree { .. } => 3,
            Self::SignatureSplit { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub level: usize,
    pub passed: bool,
    pub violation: Option<TreeViolation>,
}

/// Checks completeness, color counts, rooted-tree components and
/// signature agreement along directed paths.
pub fn check_tree_property(m: &MixedGraph) -> std::result::Result<(), TreeViolation> {
    let k = m.size();
    let mut count = vec![0usize; k * k];
    for e in &m.undirected {
        count[e.a * k + e.b] += 1;
    }
    for e in &m.directed {
        count[e.from.min(e.to) * k + e.from.max(e.to)] += 1;
    }
    for a in 0..k {
        for b in a + 1..k {
            if count[a * k + b] != 1 {
                return Err(TreeViolation::Incomplete {
                    a,
                    b,
                    edges: count[a * k + b],
                });
            }
        }
    }
    for e in &m.undirected {
        if e.a == e.b {
            return Err(TreeViolation::Incomplete {
                a: e.a,
                b: e.b,
                edges: 1,
            });
        }
    }
    for e in &m.directed {
        if e.colors.len() != 2 {
            return Err(TreeViolation::ColorCount {
                a: e.from,
                b: e.to,
                directed: true,
                colors: e.colors.len(),
            });
        }
    }
    let links = m.links();
    for comp in m.weak_components() {
        if let Err(reason) = m.component_root(&comp, &links) {
            return Err(TreeViolation::NotRootedTree {
                component: comp,
                reason,
            });
        }
    }
    for uv in &m.directed {
        for vw in m.out_edges(uv.to) {
            let same = links
                .out(uv.from, vw.to)
                .is_some_and(|(_, s)| s == uv.sigma_class);
            if vw.to != uv.from && !same {
                return Err(TreeViolation::SignatureSplit {
                    u: uv.from,
                    v: uv.to,
                    w: vw.to,
                });
            }
        }
    }
    Ok(())
}

pub fn verify_tree_property(seq: &DecompositionSequence, level: usize) -> Result<TreeReport> {
    if level > seq.last_level() {
        return Err(GallaiError::Precondition(format!(
            "level {level} beyond the last level {}",
            seq.last_level()
        )));
    }
    let violation = check_tree_property(&seq.levels[level]).err();
    Ok(TreeReport {
        level,
        passed: violation.is_none(),
        violation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PruneReport {
    pub level: usize,
    pub block: Vec<usize>,
    pub passed: bool,
    /// First level where the partitions disagree.
    pub mismatch: Option<usize>,
}

/// Removes the level-`level` block `block` and checks that decomposing the
/// remainder reproduces every lower level outside the block.
pub fn prune_block(
    g: &ColoredMultigraph,
    seq: &DecompositionSequence,
    level: usize,
    block: usize,
) -> Result<PruneReport> {
    if level > seq.last_level() || block >= seq.levels[level].size() {
        return Err(GallaiError::Precondition(format!(
            "no block {block} at level {level}"
        )));
    }
    let removed = &seq.levels[level].blocks[block].vertices;
    let kept: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    if kept.is_empty() {
        return Err(GallaiError::Precondition(
            "removing the block leaves no vertices".into(),
        ));
    }
    let h = g.induced_subgraph(&kept)?;
    let hseq = decompose(&h);
    let mismatch = (0..=level).find(|&k| {
        let mut expected: Vec<Vec<usize>> = seq
            .level(k)
            .blocks
            .iter()
            .map(|b| b.vertices.clone())
            .collect();
        expected.sort();
        let mut got: Vec<Vec<usize>> = hseq
            .level(k)
            .blocks
            .iter()
            .map(|b| b.vertices.iter().map(|&v| kept[v]).collect())
            .chain(
                seq.level(k)
                    .blocks
                    .iter()
                    .filter(|b| b.vertices.iter().all(|v| removed.contains(v)))
                    .map(|b| b.vertices.clone()),
            )
            .collect();
        got.sort();
        got != expected
    });
    Ok(PruneReport {
        level,
        block: removed.clone(),
        passed: mismatch.is_none(),
        mismatch,
    })
}
