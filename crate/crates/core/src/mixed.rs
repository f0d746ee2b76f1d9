//! Edge-colored mixed graphs: blocks joined by single-color undirected
//! edges and two-color directed edges, with a signature partition on the
//! directed edges that share an initial block.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::color::{Color, ColorSet, Palette};
use crate::error::{GallaiError, Result};
use crate::multigraph::PairColoring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub id: usize,
    /// Vertices of the source multigraph, sorted.
    pub vertices: Vec<usize>,
    /// Blocks of the previous level making up this one.
    pub children: Vec<usize>,
    /// `rt(U)`: the child at the root of this block's tree.
    pub root_child: Option<usize>,
    /// `brt(U)`: the source vertex reached by following roots down to level 0.
    pub base_root: Option<usize>,
}

impl Block {
    pub fn point(id: usize) -> Self {
        Self {
            id,
            vertices: vec![id],
            children: Vec::new(),
            root_child: None,
            base_root: Some(id),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UndirectedEdge {
    pub a: usize,
    pub b: usize,
    pub color: Color,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub from: usize,
    pub to: usize,
    pub colors: ColorSet,
    pub sigma_class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    pub level: usize,
    pub palette: Palette,
    pub blocks: Vec<Block>,
    pub undirected: Vec<UndirectedEdge>,
    pub directed: Vec<DirectedEdge>,
}

/// What joins an ordered pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    None,
    Undirected(Color),
    /// `a -> b`.
    Out(ColorSet, usize),
    /// `b -> a`.
    In(ColorSet, usize),
    /// More than one edge on the pair.
    Conflict,
}

/// Dense view of a mixed graph's pairs.
#[derive(Debug, Clone)]
pub struct LinkTable {
    k: usize,
    cells: Vec<Link>,
}

impl LinkTable {
    pub fn get(&self, a: usize, b: usize) -> Link {
        self.cells[a * self.k + b]
    }

    pub fn out(&self, a: usize, b: usize) -> Option<(ColorSet, usize)> {
        match self.get(a, b) {
            Link::Out(c, s) => Some((c, s)),
            _ => None,
        }
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.out(a, b).is_some()
    }
}

impl MixedGraph {
    /// A graph whose blocks are the points `0..k`, with sigma classes given
    /// by arbitrary keys and renumbered canonically.
    pub fn from_parts(
        palette: Palette,
        k: usize,
        undirected: impl IntoIterator<Item = (usize, usize, Color)>,
        directed: impl IntoIterator<Item = (usize, usize, ColorSet, usize)>,
    ) -> Self {
        let mut g = Self {
            level: 0,
            palette,
            blocks: (0..k).map(Block::point).collect(),
            undirected: undirected
                .into_iter()
                .map(|(a, b, color)| UndirectedEdge {
                    a: a.min(b),
                    b: a.max(b),
                    color,
                })
                .collect(),
            directed: directed
                .into_iter()
                .map(|(from, to, colors, sigma_class)| DirectedEdge {
                    from,
                    to,
                    colors,
                    sigma_class,
                })
                .collect(),
        };
        g.normalize();
        g
    }

    /// A single block with no edges.
    pub fn point(palette: Palette) -> Self {
        Self::from_parts(palette, 1, [], [])
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// Sorts edges and renumbers sigma classes in order of first appearance.
    pub fn normalize(&mut self) {
        self.undirected.sort();
        self.directed.sort_by_key(|e| (e.from, e.to));
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &mut self.directed {
            let next = ids.len();
            e.sigma_class = *ids.entry(e.sigma_class).or_insert(next);
        }
    }

    pub fn links(&self) -> LinkTable {
        let k = self.size();
        let mut cells = vec![Link::None; k * k];
        let mut put = |a: usize, b: usize, l: Link| {
            let c = &mut cells[a * k + b];
            *c = if *c == Link::None { l } else { Link::Conflict };
        };
        for e in &self.undirected {
            put(e.a, e.b, Link::Undirected(e.color));
            put(e.b, e.a, Link::Undirected(e.color));
        }
        for e in &self.directed {
            put(e.from, e.to, Link::Out(e.colors, e.sigma_class));
            put(e.to, e.from, Link::In(e.colors, e.sigma_class));
        }
        LinkTable { k, cells }
    }

    pub fn out_edges(&self, from: usize) -> impl Iterator<Item = &DirectedEdge> {
        self.directed.iter().filter(move |e| e.from == from)
    }

    pub fn is_dominating(&self, v: usize) -> bool {
        self.directed.iter().any(|e| e.from == v)
    }

    /// Weak components of the directed part; undirected edges are ignored.
    /// Sorted by smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let k = self.size();
        let mut uf = UnionFind::<usize>::new(k);
        for e in &self.directed {
            uf.union(e.from, e.to);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..k {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Root of `comp` when its directed edges form a rooted tree: a strict
    /// partial order whose Hasse diagram is a tree with a least element.
    pub fn component_root(
        &self,
        comp: &[usize],
        links: &LinkTable,
    ) -> std::result::Result<usize, String> {
        if comp.len() == 1 {
            return Ok(comp[0]);
        }
        for &a in comp {
            for &b in comp {
                if a != b && links.has_arc(a, b) && links.has_arc(b, a) {
                    return Err(format!("arcs in both directions between {a} and {b}"));
                }
                if links.get(a, b) == Link::Conflict {
                    return Err(format!("more than one edge between {a} and {b}"));
                }
            }
        }
        for &a in comp {
            for &b in comp.iter().filter(|&&b| links.has_arc(a, b)) {
                for &c in comp.iter().filter(|&&c| c != a && links.has_arc(b, c)) {
                    if !links.has_arc(a, c) {
                        return Err(format!("not transitive: {a}->{b}->{c} without {a}->{c}"));
                    }
                }
            }
        }
        let root = comp
            .iter()
            .copied()
            .find(|&r| comp.iter().all(|&v| v == r || links.has_arc(r, v)))
            .ok_or_else(|| "no vertex reaches every other member".to_string())?;
        for &v in comp.iter().filter(|&&v| v != root) {
            let preds: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&p| links.has_arc(p, v))
                .collect();
            // the predecessors of v must form a chain
            for (i, &p) in preds.iter().enumerate() {
                for &q in &preds[i + 1..] {
                    if !links.has_arc(p, q) && !links.has_arc(q, p) {
                        return Err(format!("{v} has incomparable predecessors {p} and {q}"));
                    }
                }
            }
        }
        Ok(root)
    }

    /// Root of the whole graph when it is one rooted tree.
    pub fn tree_root(&self) -> Option<usize> {
        let comps = self.weak_components();
        if comps.len() != 1 {
            return None;
        }
        self.component_root(&comps[0], &self.links()).ok()
    }

    pub fn is_rooted_tree(&self) -> bool {
        self.tree_root().is_some()
    }

    /// Colors the root dominates with: empty for a single block, `None`
    /// when the graph is not a rooted tree or the root's edges disagree.
    pub fn tree_tau(&self) -> Option<ColorSet> {
        let root = self.tree_root()?;
        let mut sets = self.out_edges(root).map(|e| e.colors);
        match sets.next() {
            None => Some(ColorSet::EMPTY),
            Some(first) => sets.all(|s| s == first).then_some(first),
        }
    }

    /// Every pair joined by exactly one edge, undirected edges single-colored,
    /// directed edges two-colored, and sigma classes confined to one initial block.
    pub fn validate_complete(&self) -> Result<()> {
        let k = self.size();
        let links = self.links();
        let full = self.palette.full();
        for a in 0..k {
            for b in a + 1..k {
                match links.get(a, b) {
                    Link::None => {
                        return Err(GallaiError::Construction(format!(
                            "no edge between {a} and {b}"
                        )))
                    }
                    Link::Conflict => {
                        return Err(GallaiError::Construction(format!(
                            "several edges between {a} and {b}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        for e in &self.undirected {
            if e.color >= self.palette.len() {
                return Err(GallaiError::Construction(format!(
                    "edge {{{},{}}} color outside palette",
                    e.a, e.b
                )));
            }
        }
        let mut class_owner: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.directed {
            if e.colors.len() != 2 || !e.colors.is_subset(full) {
                return Err(GallaiError::Construction(format!(
                    "directed edge ({},{}) must carry two palette colors",
                    e.from, e.to
                )));
            }
            if *class_owner.entry(e.sigma_class).or_insert(e.from) != e.from {
                return Err(GallaiError::Construction(format!(
                    "sigma class {} spans several initial blocks",
                    e.sigma_class
                )));
            }
        }
        Ok(())
    }

    /// Applies the color relabeling `perm[old] = new`.
    pub fn recolored(&self, perm: &[Color]) -> Self {
        let mut g = self.clone();
        for e in &mut g.undirected {
            e.color = perm[e.color];
        }
        for e in &mut g.directed {
            e.colors = e.colors.permuted(perm);
        }
        g
    }

    /// Abstract copy (point blocks) where new vertex `i` is old vertex `order[i]`.
    pub fn relabeled(&self, order: &[usize]) -> Self {
        let mut inv = vec![usize::MAX; self.size()];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        Self::from_parts(
            self.palette.clone(),
            order.len(),
            self.undirected
                .iter()
                .map(|e| (inv[e.a], inv[e.b], e.color)),
            self.directed
                .iter()
                .map(|e| (inv[e.from], inv[e.to], e.colors, e.sigma_class)),
        )
    }

    /// Copy with point blocks and level 0, keeping edges and classes.
    pub fn abstracted(&self) -> Self {
        let order: Vec<usize> = (0..self.size()).collect();
        self.relabeled(&order)
    }

    /// Isomorphism code under vertex relabeling and palette permutation.
    pub fn canonical_code(&self) -> MixedCode {
        let c = self.palette.len();
        let color_perms: Vec<Vec<Color>> = (0..c).permutations(c).collect();
        self.min_code(&color_perms)
    }

    /// Isomorphism code under vertex relabeling only.
    pub fn vertex_code(&self) -> MixedCode {
        let id: Vec<Color> = (0..self.palette.len()).collect();
        self.min_code(&[id])
    }

    fn min_code(&self, color_perms: &[Vec<Color>]) -> MixedCode {
        let k = self.size();
        let links = self.links();
        let mut best: Option<Vec<u32>> = None;
        let mut code = Vec::new();
        for perm in (0..k).permutations(k) {
            for cp in color_perms {
                code.clear();
                code.push(k as u32);
                for b in 1..k {
                    for a in 0..b {
                        let (kind, mask) = match links.get(perm[a], perm[b]) {
                            Link::None => (0, 0),
                            Link::Undirected(col) => (1, 1 << cp[col]),
                            Link::Out(s, _) => (2, s.permuted(cp).bits()),
                            Link::In(s, _) => (3, s.permuted(cp).bits()),
                            Link::Conflict => (4, 0),
                        };
                        code.push((kind << 24) | mask);
                    }
                }
                for a in 0..k {
                    for b in 0..k {
                        let Some((_, sb)) = links.out(perm[a], perm[b]) else {
                            continue;
                        };
                        for c2 in b + 1..k {
                            if let Some((_, sc)) = links.out(perm[a], perm[c2]) {
                                code.push(u32::from(sb == sc));
                            }
                        }
                    }
                }
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code.clone());
                }
            }
        }
        MixedCode(best.unwrap_or_default())
    }

    pub fn to_json_value(&self) -> MixedGraphJson {
        MixedGraphJson {
            level: self.level,
            palette: Some(self.palette.labels().to_vec()),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockJson {
                    id: b.id,
                    vertices: b.vertices.clone(),
                    children: b.children.clone(),
                    root_child: b.root_child,
                    base_root: b.base_root,
                })
                .collect(),
            undirected: self
                .undirected
                .iter()
                .map(|e| UndirectedJson {
                    a: e.a,
                    b: e.b,
                    color: self.palette.label(e.color).to_string(),
                })
                .collect(),
            directed: self
                .directed
                .iter()
                .map(|e| DirectedJson {
                    from: e.from,
                    to: e.to,
                    colors: self.palette.labels_of(e.colors),
                    sigma_class: e.sigma_class,
                })
                .collect(),
        }
    }

    /// Parses the wire format. Without a `palette` field the palette is the
    /// sorted set of labels used.
    pub fn from_json_value(j: MixedGraphJson) -> Result<Self> {
        let palette = match j.palette {
            Some(p) => Palette::new(p)?,
            None => {
                let mut labels: Vec<String> = j
                    .undirected
                    .iter()
                    .map(|e| e.color.clone())
                    .chain(j.directed.iter().flat_map(|e| e.colors.iter().cloned()))
                    .collect();
                labels.sort();
                labels.dedup();
                if labels.is_empty() {
                    labels.push("A".into());
                }
                Palette::new(labels)?
            }
        };
        let k = j.blocks.len();
        for (i, b) in j.blocks.iter().enumerate() {
            if b.id != i {
                return Err(GallaiError::Schema(format!(
                    "block ids must be 0..{k} in order"
                )));
            }
        }
        let check = |v: usize| {
            if v < k {
                Ok(v)
            } else {
                Err(GallaiError::Schema(format!(
                    "edge endpoint {v} out of range"
                )))
            }
        };
        let mut undirected = Vec::new();
        for e in &j.undirected {
            if check(e.a)? == check(e.b)? {
                return Err(GallaiError::Schema("loop edge".into()));
            }
            undirected.push(UndirectedEdge {
                a: e.a.min(e.b),
                b: e.a.max(e.b),
                color: palette.index_of(&e.color)?,
            });
        }
        let mut directed = Vec::new();
        for e in &j.directed {
            if check(e.from)? == check(e.to)? {
                return Err(GallaiError::Schema("loop edge".into()));
            }
            directed.push(DirectedEdge {
                from: e.from,
                to: e.to,
                colors: palette.set_of(&e.colors)?,
                sigma_class: e.sigma_class,
            });
        }
        let blocks = j
            .blocks
            .into_iter()
            .map(|b| Block {
                id: b.id,
                vertices: b.vertices,
                children: b.children,
                root_child: b.root_child,
                base_root: b.base_root,
            })
            .collect();
        let mut g = Self {
            level: j.level,
            palette,
            blocks,
            undirected,
            directed,
        };
        g.normalize();
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    /// Graphviz rendering. Directed edges carry both colors and one tick
    /// mark per rank of their sigma class among the classes leaving the
    /// same block; undirected edges carry their color.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  node [shape=box];");
        for b in &self.blocks {
            let members = b.vertices.iter().map(|v| v.to_string()).join(",");
            let _ = writeln!(out, "  b{} [label=\"{{{}}}\"];", b.id, members);
        }
        let mut rank: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &self.directed {
            let next = rank.keys().filter(|(f, _)| *f == e.from).count();
            rank.entry((e.from, e.sigma_class)).or_insert(next);
        }
        for e in &self.directed {
            let ticks = "/".repeat(rank[&(e.from, e.sigma_class)] + 1);
            let _ = writeln!(
                out,
                "  b{} -> b{} [label=\"{} {}\"];",
                e.from,
                e.to,
                self.palette.labels_of(e.colors).join(","),
                ticks
            );
        }
        for e in &self.undirected {
            let _ = writeln!(
                out,
                "  b{} -> b{} [dir=none, label=\"{}\"];",
                e.a,
                e.b,
                self.palette.label(e.color)
            );
        }
        out.push_str("}\n");
        out
    }
}

impl PairColoring for MixedGraph {
    fn vertex_count(&self) -> usize {
        self.size()
    }

    fn pair_colors(&self, u: usize, v: usize) -> ColorSet {
        let mut out = ColorSet::EMPTY;
        for e in &self.undirected {
            if (e.a, e.b) == (u.min(v), u.max(v)) {
                out.insert(e.color);
            }
        }
        for e in &self.directed {
            if (e.from, e.to) == (u, v) || (e.from, e.to) == (v, u) {
                out = out.union(e.colors);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedCode(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedGraphJson {
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub palette: Option<Vec<String>>,
    pub blocks: Vec<BlockJson>,
    pub undirected: Vec<UndirectedJson>,
    pub directed: Vec<DirectedJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub id: usize,
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<usize>,
    pub root_child: Option<usize>,
    pub base_root: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UndirectedJson {
    pub a: usize,
    pub b: usize,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectedJson {
    pub from: usize,
    pub to: usize,
    pub colors: Vec<String>,
    pub sigma_class: usize,
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn abc() -> Palette {
        Palette::standard(3).unwrap()
    }

    pub fn ab() -> ColorSet {
        ColorSet::pair(0, 1)
    }
}
