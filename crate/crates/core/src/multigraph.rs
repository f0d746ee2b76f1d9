//! Complete, loop-free edge-colored multigraphs.

use serde::{Deserialize, Serialize};

use crate::color::{Color, ColorSet, Palette};
use crate::error::{GallaiError, Result};

/// Position of the unordered pair `{u, v}` in colex order:
/// `(0,1), (0,2), (1,2), (0,3), ...`.
#[inline]
pub fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Anything that assigns a color set to each pair of its vertices.
pub trait PairColoring {
    fn vertex_count(&self) -> usize;

    /// Colors on the pair `{u, v}`; empty when `u == v` or the pair is absent.
    fn pair_colors(&self, u: usize, v: usize) -> ColorSet;

    /// `ρ[UV]`: every color on a pair with one end in `us` and the other in `vs`.
    fn colors_between(&self, us: &[usize], vs: &[usize]) -> ColorSet {
        let mut out = ColorSet::EMPTY;
        for &u in us {
            for &v in vs {
                out = out.union(self.pair_colors(u, v));
            }
        }
        out
    }

    /// Colors on pairs inside `us`.
    fn colors_within(&self, us: &[usize]) -> ColorSet {
        let mut out = ColorSet::EMPTY;
        for (i, &u) in us.iter().enumerate() {
            for &v in &us[i + 1..] {
                out = out.union(self.pair_colors(u, v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredMultigraph {
    n: usize,
    palette: Palette,
    colors: Vec<ColorSet>,
}

impl ColoredMultigraph {
    /// Builds a graph from colex-ordered pair colors, validating completeness
    /// and palette membership.
    pub fn new(n: usize, palette: Palette, colors: Vec<ColorSet>) -> Result<Self> {
        if colors.len() != pair_count(n) {
            return Err(GallaiError::Schema(format!(
                "{} vertices need {} pairs, got {}",
                n,
                pair_count(n),
                colors.len()
            )));
        }
        let full = palette.full();
        for (i, s) in colors.iter().enumerate() {
            if s.is_empty() {
                return Err(GallaiError::Schema(format!("pair #{i} has no color")));
            }
            if !s.is_subset(full) {
                return Err(GallaiError::Schema(format!(
                    "pair #{i} uses a color outside the palette"
                )));
            }
        }
        Ok(Self { n, palette, colors })
    }

    /// Every pair colored with `set`.
    pub fn uniform(n: usize, palette: Palette, set: ColorSet) -> Result<Self> {
        Self::new(n, palette, vec![set; pair_count(n)])
    }

    pub fn point(palette: Palette) -> Self {
        Self {
            n: 1,
            palette,
            colors: Vec::new(),
        }
    }

    /// Builds from `(u, v, colors)` triples covering every pair exactly once.
    pub fn from_pairs(
        n: usize,
        palette: Palette,
        pairs: impl IntoIterator<Item = (usize, usize, ColorSet)>,
    ) -> Result<Self> {
        let mut colors = vec![ColorSet::EMPTY; pair_count(n)];
        let mut seen = vec![false; pair_count(n)];
        for (u, v, s) in pairs {
            if u == v || u >= n || v >= n {
                return Err(GallaiError::Schema(format!(
                    "invalid pair ({u},{v}) for {n} vertices"
                )));
            }
            let i = pair_index(u, v);
            if seen[i] {
                return Err(GallaiError::Schema(format!("pair ({u},{v}) listed twice")));
            }
            seen[i] = true;
            colors[i] = s;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let (u, v) = pair_of_index(i);
            return Err(GallaiError::Schema(format!("pair ({u},{v}) missing")));
        }
        Self::new(n, palette, colors)
    }

    pub(crate) fn from_raw(n: usize, palette: Palette, colors: Vec<ColorSet>) -> Self {
        debug_assert_eq!(colors.len(), pair_count(n));
        Self { n, palette, colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    /// Pair colors in colex order.
    pub fn raw_colors(&self) -> &[ColorSet] {
        &self.colors
    }

    pub fn colors(&self, u: usize, v: usize) -> ColorSet {
        self.colors[pair_index(u, v)]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// Copy with one color added to `{u, v}`.
    pub fn with_color(&self, u: usize, v: usize, c: Color) -> Self {
        let mut g = self.clone();
        let i = pair_index(u, v);
        g.colors[i] = g.colors[i].with(c);
        g
    }

    pub fn set_colors(&mut self, u: usize, v: usize, set: ColorSet) {
        assert!(!set.is_empty() && set.is_subset(self.palette.full()));
        self.colors[pair_index(u, v)] = set;
    }

    /// Every pair carries the same color set.
    pub fn is_uniform(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    /// The common color set of a uniform graph with at least one pair.
    pub fn uniform_colors(&self) -> Option<ColorSet> {
        (self.is_uniform() && !self.colors.is_empty()).then(|| self.colors[0])
    }

    /// Restriction to `subset`, renumbered `0..|subset|` in increasing order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Self> {
        if subset.is_empty() {
            return Err(GallaiError::VertexSet(
                "induced subgraph of an empty set".into(),
            ));
        }
        let mut s = subset.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(GallaiError::VertexSet("repeated vertex".into()));
        }
        if *s.last().unwrap() >= self.n {
            return Err(GallaiError::VertexSet(format!(
                "vertex out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.relabeled(&s))
    }

    /// Graph on `order.len()` vertices where new vertex `i` is old vertex `order[i]`.
    pub(crate) fn relabeled(&self, order: &[usize]) -> Self {
        let m = order.len();
        let mut colors = Vec::with_capacity(pair_count(m));
        for b in 1..m {
            for a in 0..b {
                colors.push(self.colors(order[a], order[b]));
            }
        }
        Self::from_raw(m, self.palette.clone(), colors)
    }

    /// Applies the color relabeling `perm[old] = new` (a permutation of the palette).
    pub fn recolored(&self, perm: &[Color]) -> Self {
        let colors = self.colors.iter().map(|s| s.permuted(perm)).collect();
        Self::from_raw(self.n, self.palette.clone(), colors)
    }

    pub fn to_json_value(&self) -> MultigraphJson {
        MultigraphJson {
            palette: self.palette.labels().to_vec(),
            vertices: self.n,
            edges: self
                .pairs()
                .map(|(u, v)| EdgeJson {
                    u,
                    v,
                    colors: self.palette.labels_of(self.colors(u, v)),
                })
                .collect(),
        }
    }

    pub fn from_json_value(j: MultigraphJson) -> Result<Self> {
        let palette = Palette::new(j.palette)?;
        let mut pairs = Vec::with_capacity(j.edges.len());
        for e in &j.edges {
            if e.u >= e.v {
                return Err(GallaiError::Schema(format!(
                    "edge ({},{}) must satisfy u < v",
                    e.u, e.v
                )));
            }
            pairs.push((e.u, e.v, palette.set_of(&e.colors)?));
        }
        Self::from_pairs(j.vertices, palette, pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: MultigraphJson = serde_json::from_str(text)?;
        Self::from_json_value(j)
    }
}

impl PairColoring for ColoredMultigraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn pair_colors(&self, u: usize, v: usize) -> ColorSet {
        if u == v {
            ColorSet::EMPTY
        } else {
            self.colors(u, v)
        }
    }
}

pub(crate) fn pair_of_index(i: usize) -> (usize, usize) {
    let mut b = 1;
    while (b + 1) * b / 2 <= i {
        b += 1;
    }
    (i - b * (b - 1) / 2, b)
}

/// Wire format of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultigraphJson {
    pub palette: Vec<String>,
    pub vertices: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub colors: Vec<String>,
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// `spec` lists `(u, v, "AB")`-style entries; labels are single letters.
    pub fn graph(n: usize, palette: &str, spec: &[(usize, usize, &str)]) -> ColoredMultigraph {
        let p = Palette::new(palette.chars().map(|c| c.to_string())).unwrap();
        let pairs = spec.iter().map(|&(u, v, cs)| {
            let labels: Vec<String> = cs.chars().map(|c| c.to_string()).collect();
            (u, v, p.set_of(&labels).unwrap())
        });
        ColoredMultigraph::from_pairs(n, p.clone(), pairs.collect::<Vec<_>>()).unwrap()
    }

    pub fn uniform(n: usize, palette: &str, colors: &str) -> ColoredMultigraph {
        let spec: Vec<(usize, usize, &str)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v, colors)))
            .collect();
        graph(n, palette, &spec)
    }
}
