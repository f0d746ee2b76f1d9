//! Isolated pairs and reduction.

use serde::Serialize;

use crate::multigraph::ColoredMultigraph;

/// `uv` is isolated when every other vertex meets `u` and `v` with the same
/// single color. With two vertices every pair is vacuously isolated.
pub fn is_isolated(g: &ColoredMultigraph, u: usize, v: usize) -> bool {
    (0..g.n()).filter(|&w| w != u && w != v).all(|w| {
        let uw = g.colors(u, w);
        uw.len() == 1 && uw == g.colors(v, w)
    })
}

/// First isolated pair in lexicographic order.
pub fn find_isolated(g: &ColoredMultigraph) -> Option<(usize, usize)> {
    g.pairs().find(|&(u, v)| is_isolated(g, u, v))
}

pub fn is_reduced(g: &ColoredMultigraph) -> bool {
    find_isolated(g).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    #[serde(skip)]
    pub graph: ColoredMultigraph,
    /// `merge[v]` is the output vertex that original vertex `v` collapsed into.
    pub merge: Vec<usize>,
}

/// Collapses isolated pairs (lowest pair first, the higher vertex folding
/// into the lower) until none remain or a single vertex is left.
pub fn reduce(g: &ColoredMultigraph) -> Reduction {
    // survivors[i] = original vertex behind current vertex i
    let mut survivors: Vec<usize> = (0..g.n()).collect();
    let mut owner: Vec<usize> = (0..g.n()).collect();
    let mut current = g.clone();
    while current.n() > 1 {
        let Some((u, v)) = find_isolated(&current) else {
            break;
        };
        let gone = survivors[v];
        let keep = survivors[u];
        for o in owner.iter_mut() {
            if *o == gone {
                *o = keep;
            }
        }
        survivors.remove(v);
        let order: Vec<usize> = (0..current.n()).filter(|&i| i != v).collect();
        current = current.relabeled(&order);
    }
    let merge = owner
        .iter()
        .map(|o| {
            survivors
                .iter()
                .position(|s| s == o)
                .expect("owner survives")
        })
        .collect();
    Reduction {
        graph: current,
        merge,
    }
}
