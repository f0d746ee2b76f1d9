//! Rainbow triangle detection.
//!
//! A triple is rainbow when one color can be picked on each of its three
//! pairs with all three picks distinct. By Hall's theorem that happens
//! exactly when every pair is colored, every two pairs together carry at
//! least two colors, and all three carry at least three.

use serde::Serialize;

use crate::color::{Color, ColorSet};
use crate::multigraph::{ColoredMultigraph, PairColoring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Triangle {
    /// `u < v < w`.
    pub vertices: [usize; 3],
    /// Chosen colors on `uv`, `uw`, `vw`.
    pub witness: [Color; 3],
}

/// Hall's condition for three color sets to admit distinct representatives.
#[inline]
pub fn sets_are_rainbow(x: ColorSet, y: ColorSet, z: ColorSet) -> bool {
    !x.is_empty()
        && !y.is_empty()
        && !z.is_empty()
        && x.union(y).len() >= 2
        && x.union(z).len() >= 2
        && y.union(z).len() >= 2
        && x.union(y).union(z).len() >= 3
}

/// One choice of distinct representatives, if any.
pub fn rainbow_witness(x: ColorSet, y: ColorSet, z: ColorSet) -> Option<[Color; 3]> {
    if !sets_are_rainbow(x, y, z) {
        return None;
    }
    for a in x.iter() {
        for b in y.iter().filter(|&b| b != a) {
            if let Some(c) = z.iter().find(|&c| c != a && c != b) {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Rainbow triangles in lexicographic vertex order, stopping after `limit`.
pub fn rainbow_triangles(g: &ColoredMultigraph, limit: Option<usize>) -> Vec<Triangle> {
    let n = g.n();
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for u in 0..n {
        for v in u + 1..n {
            let uv = g.colors(u, v);
            for w in v + 1..n {
                if let Some(witness) = rainbow_witness(uv, g.colors(u, w), g.colors(v, w)) {
                    out.push(Triangle {
                        vertices: [u, v, w],
                        witness,
                    });
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

pub fn is_gallai(g: &ColoredMultigraph) -> bool {
    first_rainbow(g).is_none()
}

pub fn first_rainbow<P: PairColoring>(g: &P) -> Option<[usize; 3]> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            let uv = g.pair_colors(u, v);
            for w in v + 1..n {
                if sets_are_rainbow(uv, g.pair_colors(u, w), g.pair_colors(v, w)) {
                    return Some([u, v, w]);
                }
            }
        }
    }
    None
}

/// Whether adding `c` to `{u, v}` would close a rainbow triangle.
pub fn addition_creates_rainbow(g: &ColoredMultigraph, u: usize, v: usize, c: Color) -> bool {
    let uv = g.colors(u, v).with(c);
    (0..g.n())
        .filter(|&w| w != u && w != v)
        .any(|w| sets_are_rainbow(uv, g.colors(u, w), g.colors(v, w)))
}
