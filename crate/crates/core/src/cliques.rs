//! Vertices joined by two edges in a reduced maximal Gallai multigraph.

use serde::Serialize;
use thiserror::Error;

use crate::color::{Color, ColorSet};
use crate::maximal::find_addable;
use crate::multigraph::ColoredMultigraph;
use crate::rainbow::first_rainbow;
use crate::reduce::find_isolated;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueClass {
    pub vertices: Vec<usize>,
    /// Shared two-color set; `None` for singletons.
    pub colors: Option<ColorSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("not Gallai: rainbow triangle {0:?}")]
    NotGallai([usize; 3]),
    #[error("not reduced: pair {0:?} is isolated")]
    NotReduced((usize, usize)),
    #[error("not maximal: color {2} can be added to ({0},{1})")]
    NotMaximal(usize, usize, Color),
    #[error("double edges {0:?} are not a uniformly colored clique")]
    Violation([usize; 3]),
}

/// Partitions the vertices by `u ~ v iff |ρ[uv]| = 2`, checking that the
/// relation is transitive with one color pair per class.
pub fn double_edge_cliques(g: &ColoredMultigraph) -> Result<Vec<CliqueClass>, CliqueError> {
    if let Some(t) = first_rainbow(g) {
        return Err(CliqueError::NotGallai(t));
    }
    if let Some(p) = find_isolated(g) {
        if g.n() > 1 {
            return Err(CliqueError::NotReduced(p));
        }
    }
    if let Some((u, v, c)) = find_addable(g) {
        return Err(CliqueError::NotMaximal(u, v, c));
    }
    check_cliques(g)
}

/// The clique check alone, without the precondition gate.
pub fn check_cliques(g: &ColoredMultigraph) -> Result<Vec<CliqueClass>, CliqueError> {
    let n = g.n();
    let double = |u: usize, v: usize| g.colors(u, v).len() == 2;
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u && double(u, v)) {
            for w in (0..n).filter(|&w| w != u && w != v && double(v, w)) {
                if g.colors(u, w) != g.colors(u, v) || g.colors(v, w) != g.colors(u, v) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    return Err(CliqueError::Violation(t));
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        let mut members = vec![u];
        members.extend((u + 1..n).filter(|&v| double(u, v)));
        for &m in &members {
            assigned[m] = true;
        }
        let colors = (members.len() > 1).then(|| g.colors(members[0], members[1]));
        out.push(CliqueClass {
            vertices: members,
            colors,
        });
    }
    Ok(out)
}
