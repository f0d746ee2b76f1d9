//! Realizing a mixed graph as a multigraph by substituting a leaf
//! multigraph for every vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::color::{Color, ColorSet, Palette};
use crate::construction::tilde::{signature_choices, tilde_classes};
use crate::error::{GallaiError, Result};
use crate::mixed::{Link, MixedGraph, MixedGraphJson};
use crate::multigraph::{ColoredMultigraph, MultigraphJson};
use crate::oracle::canonical::Canonicalizer;
use crate::rainbow::first_rainbow;

/// A base mixed graph together with the free choices of the realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub base: MixedGraph,
    /// One leaf per base vertex.
    pub leaves: Vec<ColoredMultigraph>,
    /// For each directed edge `(from, to)`, the color every leaf vertex of
    /// `from` uses toward the leaf of `to`.
    pub signatures: BTreeMap<(usize, usize), Vec<Color>>,
}

/// A realized multigraph and, for each of its vertices, the base vertex
/// and leaf-local index it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub graph: ColoredMultigraph,
    pub origin: Vec<(usize, usize)>,
}

fn fail<T>(msg: String) -> Result<T> {
    Err(GallaiError::Construction(msg))
}

/// Colors a dominating vertex uses on all its out-edges.
pub(crate) fn out_colors(base: &MixedGraph, u: usize) -> Result<Option<ColorSet>> {
    let mut sets = base.out_edges(u).map(|e| e.colors);
    let Some(first) = sets.next() else {
        return Ok(None);
    };
    if sets.any(|s| s != first) {
        return fail(format!("vertex {u} dominates with different color pairs"));
    }
    Ok(Some(first))
}

/// Checks a signature: right length, colors from `colors`, onto, and
/// constant on the classes of `leaf` relative to `colors`.
pub(crate) fn check_signature<P: crate::multigraph::PairColoring>(
    what: &str,
    leaf: &P,
    sig: &[Color],
    colors: ColorSet,
) -> Result<()> {
    if sig.len() != leaf.vertex_count() {
        return fail(format!(
            "{what}: signature has {} entries for {} vertices",
            sig.len(),
            leaf.vertex_count()
        ));
    }
    if let Some(c) = sig.iter().find(|&&c| !colors.contains(c)) {
        return fail(format!(
            "{what}: signature color {c} outside the edge colors"
        ));
    }
    if sig.iter().copied().collect::<ColorSet>() != colors {
        return fail(format!("{what}: signature is not onto both colors"));
    }
    let classes = tilde_classes(leaf, colors)?;
    for (x, y) in classes.generators {
        if sig[x] != sig[y] {
            return fail(format!(
                "{what}: vertices {x} and {y} must share a signature color"
            ));
        }
    }
    Ok(())
}

impl ConstructionSpec {
    pub fn validate(&self) -> Result<()> {
        let base = &self.base;
        base.validate_complete()?;
        let k = base.size();
        if self.leaves.len() != k {
            return fail(format!(
                "{} leaves for {k} base vertices",
                self.leaves.len()
            ));
        }
        for (u, leaf) in self.leaves.iter().enumerate() {
            if leaf.palette() != &base.palette {
                return fail(format!("leaf {u} uses a different palette"));
            }
            match out_colors(base, u)? {
                Some(tau) => {
                    if leaf.n() < 2 {
                        return fail(format!(
                            "dominating vertex {u} needs a leaf with at least two vertices"
                        ));
                    }
                    if leaf.uniform_colors() != Some(tau) {
                        return fail(format!(
                            "leaf {u} must be uniformly colored with its out-edge colors"
                        ));
                    }
                }
                None => {
                    if let Some(t) = first_rainbow(leaf) {
                        return fail(format!("leaf {u} has rainbow triangle {t:?}"));
                    }
                }
            }
        }
        for key in self.signatures.keys() {
            if !base.directed.iter().any(|e| (e.from, e.to) == *key) {
                return fail(format!(
                    "signature for {key:?}, which is not a directed edge"
                ));
            }
        }
        let mut by_class: BTreeMap<usize, &Vec<Color>> = BTreeMap::new();
        for e in &base.directed {
            let Some(sig) = self.signatures.get(&(e.from, e.to)) else {
                return fail(format!(
                    "no signature for directed edge ({},{})",
                    e.from, e.to
                ));
            };
            check_signature(
                &format!("edge ({},{})", e.from, e.to),
                &self.leaves[e.from],
                sig,
                e.colors,
            )?;
            if let Some(prev) = by_class.insert(e.sigma_class, sig) {
                if prev != sig {
                    return fail(format!(
                        "edge ({},{}) disagrees with its signature class {}",
                        e.from, e.to, e.sigma_class
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> SpecJson {
        let p = &self.base.palette;
        SpecJson {
            base: self.base.to_json_value(),
            leaves: self
                .leaves
                .iter()
                .enumerate()
                .map(|(vertex, g)| LeafJson {
                    vertex,
                    graph: g.to_json_value(),
                })
                .collect(),
            signatures: self
                .signatures
                .iter()
                .map(|(&(a, b), sig)| SignatureJson {
                    edge: [a, b],
                    map: sig
                        .iter()
                        .enumerate()
                        .map(|(x, &c)| (x.to_string(), p.label(c).to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    /// Leaves missing from the JSON default to single vertices.
    pub fn from_json_value(j: SpecJson) -> Result<Self> {
        let base = MixedGraph::from_json_value(j.base)?;
        let mut leaves: Vec<Option<ColoredMultigraph>> = vec![None; base.size()];
        for l in j.leaves {
            if l.vertex >= base.size() {
                return Err(GallaiError::Schema(format!(
                    "leaf for unknown vertex {}",
                    l.vertex
                )));
            }
            if leaves[l.vertex].is_some() {
                return Err(GallaiError::Schema(format!(
                    "two leaves for vertex {}",
                    l.vertex
                )));
            }
            leaves[l.vertex] = Some(ColoredMultigraph::from_json_value(l.graph)?);
        }
        let point = ColoredMultigraph::point(base.palette.clone());
        let leaves: Vec<ColoredMultigraph> = leaves
            .into_iter()
            .map(|l| l.unwrap_or_else(|| point.clone()))
            .collect();
        let sizes: Vec<usize> = leaves.iter().map(ColoredMultigraph::n).collect();
        let signatures = signatures_from_json(&j.signatures, &sizes, &base.palette)?;
        Ok(Self {
            base,
            leaves,
            signatures,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(text)?)
    }
}

/// Parses signature maps; `sizes[u]` is the number of vertices that
/// vertex `u` of the base is replaced by.
pub fn signatures_from_json(
    sigs: &[SignatureJson],
    sizes: &[usize],
    palette: &Palette,
) -> Result<BTreeMap<(usize, usize), Vec<Color>>> {
    let mut signatures = BTreeMap::new();
    for s in sigs {
        let [a, b] = s.edge;
        if a >= sizes.len() || b >= sizes.len() {
            return Err(GallaiError::Schema(format!(
                "signature edge {:?} out of range",
                s.edge
            )));
        }
        let n = sizes[a];
        let mut sig = vec![None; n];
        for (key, label) in &s.map {
            let x: usize = key
                .parse()
                .ok()
                .filter(|&x| x < n)
                .ok_or_else(|| GallaiError::Schema(format!("bad signature key {key:?}")))?;
            sig[x] = Some(palette.index_of(label)?);
        }
        let sig: Option<Vec<Color>> = sig.into_iter().collect();
        let sig = sig.ok_or_else(|| {
            GallaiError::Schema(format!("signature for {:?} is incomplete", s.edge))
        })?;
        if signatures.insert((a, b), sig).is_some() {
            return Err(GallaiError::Schema(format!(
                "two signatures for {:?}",
                s.edge
            )));
        }
    }
    Ok(signatures)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub base: MixedGraphJson,
    #[serde(default)]
    pub leaves: Vec<LeafJson>,
    #[serde(default)]
    pub signatures: Vec<SignatureJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafJson {
    pub vertex: usize,
    pub graph: MultigraphJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureJson {
    pub edge: [usize; 2],
    pub map: BTreeMap<String, String>,
}

/// The realized multigraph with its vertex origins. Leaves are laid out in
/// base vertex order.
pub fn gamma_with_origin(spec: &ConstructionSpec) -> Result<Realization> {
    spec.validate()?;
    Ok(realize(spec))
}

pub fn gamma(spec: &ConstructionSpec) -> Result<ColoredMultigraph> {
    gamma_with_origin(spec).map(|r| r.graph)
}

/// Builds the realization without validating the spec.
fn realize(spec: &ConstructionSpec) -> Realization {
    let base = &spec.base;
    let links = base.links();
    let origin: Vec<(usize, usize)> = spec
        .leaves
        .iter()
        .enumerate()
        .flat_map(|(u, l)| (0..l.n()).map(move |x| (u, x)))
        .collect();
    let n = origin.len();
    let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            let ((u, x), (v, y)) = (origin[i], origin[j]);
            let set = if u == v {
                spec.leaves[u].colors(x, y)
            } else {
                match links.get(u, v) {
                    Link::Undirected(c) => ColorSet::single(c),
                    Link::Out(..) => ColorSet::single(spec.signatures[&(u, v)][x]),
                    Link::In(..) => ColorSet::single(spec.signatures[&(v, u)][y]),
                    Link::None | Link::Conflict => unreachable!("validated base is complete"),
                }
            };
            colors.push(set);
        }
    }
    Realization {
        graph: ColoredMultigraph::from_raw(n, base.palette.clone(), colors),
        origin,
    }
}

/// Candidate leaves for vertices that dominate nothing, indexed by size.
#[derive(Debug, Clone)]
pub struct LeafPool {
    palette: Palette,
    by_size: Vec<Vec<ColoredMultigraph>>,
}

impl LeafPool {
    /// No leaves at all, up to `max_size` vertices.
    pub fn empty(palette: &Palette, max_size: usize) -> Self {
        Self {
            palette: palette.clone(),
            by_size: vec![Vec::new(); max_size + 1],
        }
    }

    /// Uniformly colored Gallai leaves: a point, cliques on one or two
    /// colors, and two-vertex leaves with any color set.
    pub fn uniform(palette: &Palette, max_size: usize) -> Self {
        let c = palette.len();
        let mut by_size = vec![Vec::new(); max_size + 1];
        if max_size >= 1 {
            by_size[1].push(ColoredMultigraph::point(palette.clone()));
        }
        for (s, slot) in by_size.iter_mut().enumerate().skip(2) {
            let cap = if s == 2 { c } else { 2 };
            for set in ColorSet::nonempty_subsets(c, cap) {
                slot.push(ColoredMultigraph::uniform(s, palette.clone(), set).expect("valid"));
            }
        }
        Self {
            palette: palette.clone(),
            by_size,
        }
    }

    /// Uniform leaves plus the given graphs (deduplicated up to vertex
    /// relabeling, colors kept).
    pub fn with_graphs(mut self, graphs: impl IntoIterator<Item = ColoredMultigraph>) -> Self {
        let mut seen: Vec<BTreeSet<Vec<u8>>> = self
            .by_size
            .iter()
            .map(|gs| gs.iter().map(vertex_code).collect())
            .collect();
        for g in graphs {
            if g.n() >= self.by_size.len() || g.palette() != &self.palette {
                continue;
            }
            if seen[g.n()].insert(vertex_code(&g)) {
                self.by_size[g.n()].push(g);
            }
        }
        self
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len().saturating_sub(1)
    }

    pub fn of_size(&self, s: usize) -> &[ColoredMultigraph] {
        self.by_size.get(s).map_or(&[], Vec::as_slice)
    }
}

fn vertex_code(g: &ColoredMultigraph) -> Vec<u8> {
    Canonicalizer::vertices_only(g.n(), g.palette().len())
        .canonicalize(g.raw_colors())
        .code
        .as_bytes()
        .to_vec()
}

/// Visits every realization of `base` with at most `max_total` vertices:
/// every leaf choice from `pool` (uniform cliques of the out-edge colors at
/// dominating vertices) and every admissible signature per class.
pub fn for_each_realization(
    base: &MixedGraph,
    pool: &LeafPool,
    max_total: usize,
    visit: &mut dyn FnMut(&ConstructionSpec, &Realization),
) -> Result<()> {
    base.validate_complete()?;
    let k = base.size();
    let mut taus = Vec::with_capacity(k);
    for u in 0..k {
        taus.push(out_colors(base, u)?);
    }
    if k > max_total {
        return Ok(());
    }
    let mut leaves: Vec<ColoredMultigraph> = Vec::with_capacity(k);
    choose_leaves(base, pool, &taus, max_total - k, &mut leaves, visit)
}

fn choose_leaves(
    base: &MixedGraph,
    pool: &LeafPool,
    taus: &[Option<ColorSet>],
    spare: usize,
    leaves: &mut Vec<ColoredMultigraph>,
    visit: &mut dyn FnMut(&ConstructionSpec, &Realization),
) -> Result<()> {
    let u = leaves.len();
    if u == base.size() {
        return choose_signatures(base, leaves, visit);
    }
    match taus[u] {
        Some(tau) => {
            for s in 2..=spare + 1 {
                leaves.push(ColoredMultigraph::uniform(s, base.palette.clone(), tau)?);
                choose_leaves(base, pool, taus, spare + 1 - s, leaves, visit)?;
                leaves.pop();
            }
        }
        None => {
            for s in 1..=(spare + 1).min(pool.max_size()) {
                for leaf in pool.of_size(s) {
                    leaves.push(leaf.clone());
                    choose_leaves(base, pool, taus, spare + 1 - s, leaves, visit)?;
                    leaves.pop();
                }
            }
        }
    }
    Ok(())
}

fn choose_signatures(
    base: &MixedGraph,
    leaves: &[ColoredMultigraph],
    visit: &mut dyn FnMut(&ConstructionSpec, &Realization),
) -> Result<()> {
    // one representative edge per class
    let mut classes: BTreeMap<usize, (usize, ColorSet)> = BTreeMap::new();
    for e in &base.directed {
        classes.entry(e.sigma_class).or_insert((e.from, e.colors));
    }
    let mut options: Vec<(usize, Vec<Vec<Color>>)> = Vec::with_capacity(classes.len());
    for (&class, &(from, colors)) in &classes {
        let parts = tilde_classes(&leaves[from], colors)?;
        options.push((class, signature_choices(&parts, colors)?));
    }
    if options.iter().any(|(_, o)| o.is_empty()) {
        return Ok(());
    }
    let mut pick = vec![0usize; options.len()];
    loop {
        let chosen: BTreeMap<usize, &Vec<Color>> = options
            .iter()
            .zip(&pick)
            .map(|((class, o), &i)| (*class, &o[i]))
            .collect();
        let signatures = base
            .directed
            .iter()
            .map(|e| ((e.from, e.to), chosen[&e.sigma_class].clone()))
            .collect();
        let spec = ConstructionSpec {
            base: base.clone(),
            leaves: leaves.to_vec(),
            signatures,
        };
        let r = realize(&spec);
        visit(&spec, &r);
        // odometer
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(());
            }
            pick[i] += 1;
            if pick[i] < options[i].1.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
