//! Maximality with respect to a graph's palette, and greedy closure.

use crate::color::{Color, ColorSet};
use crate::error::{GallaiError, Result};
use crate::multigraph::ColoredMultigraph;
use crate::rainbow::{addition_creates_rainbow, first_rainbow};

/// A `(pair, color)` that can be added without creating a rainbow triangle.
pub fn find_addable(g: &ColoredMultigraph) -> Option<(usize, usize, Color)> {
    let palette = g.palette().full();
    for (u, v) in g.pairs() {
        for c in palette.difference(g.colors(u, v)).iter() {
            if !addition_creates_rainbow(g, u, v, c) {
                return Some((u, v, c));
            }
        }
    }
    None
}

/// Gallai and no palette color can be added anywhere.
pub fn is_maximal(g: &ColoredMultigraph) -> bool {
    first_rainbow(g).is_none() && find_addable(g).is_none()
}

/// Adds colors greedily, color by color in palette order and, for each
/// color, pair by pair in lexicographic order. Passes repeat until one adds
/// nothing. Greedy closure is not confluent; this picks one member of the
/// closure family deterministically.
pub fn maximal_closure(g: &ColoredMultigraph) -> Result<ColoredMultigraph> {
    if let Some(t) = first_rainbow(g) {
        return Err(GallaiError::NotGallai(t));
    }
    let palette = g.palette().full();
    let mut out = g.clone();
    loop {
        let mut changed = false;
        let pairs: Vec<_> = out.pairs().collect();
        for c in palette.iter() {
            for &(u, v) in &pairs {
                if !out.colors(u, v).contains(c) && !addition_creates_rainbow(&out, u, v, c) {
                    out = out.with_color(u, v, c);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(out);
        }
    }
}

/// Checks the structural consequence of maximality: for every pair `uv`,
/// `A ∈ ρ[uv]` and `B ∉ ρ[uv]` there is a third vertex `w` and a color
/// `C ∉ {A, B}` with `A ∈ ρ[uw], C ∈ ρ[wv]` or `C ∈ ρ[uw], A ∈ ρ[wv]`.
/// Returns the first `(u, v, A, B)` lacking such a witness.
pub fn max_witness_violation(g: &ColoredMultigraph) -> Option<(usize, usize, Color, Color)> {
    let palette = g.palette().full();
    for (u, v) in g.pairs() {
        let uv = g.colors(u, v);
        for a in uv.iter() {
            for b in palette.difference(uv).iter() {
                let found = (0..g.n()).filter(|&w| w != u && w != v).any(|w| {
                    let uw = g.colors(u, w);
                    let wv = g.colors(w, v);
                    let others = palette.difference(ColorSet::pair(a, b));
                    (uw.contains(a) && !wv.intersection(others).is_empty())
                        || (wv.contains(a) && !uw.intersection(others).is_empty())
                });
                if !found {
                    return Some((u, v, a, b));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::test_support::*;

    #[test]
    fn closure_of_single_color_triangle() {
        let g = uniform(3, "ABC", "A");
        let m = maximal_closure(&g).unwrap();
        assert_eq!(m, uniform(3, "ABC", "AB"));
        assert!(is_maximal(&m));
    }

    #[test]
    fn closure_without_triangles_fills_the_palette() {
        let g = uniform(2, "AB", "A");
        assert_eq!(maximal_closure(&g).unwrap(), uniform(2, "AB", "AB"));
    }

    #[test]
    fn maximal_input_is_fixed() {
        let g = uniform(3, "ABC", "AB");
        assert!(is_maximal(&g));
        assert_eq!(maximal_closure(&g).unwrap(), g);
    }

    #[test]
    fn rejects_non_gallai() {
        let g = graph(3, "ABC", &[(0, 1, "A"), (0, 2, "B"), (1, 2, "C")]);
        assert!(matches!(
            maximal_closure(&g),
            Err(GallaiError::NotGallai([0, 1, 2]))
        ));
    }

    #[test]
    fn not_maximal_example() {
        let g = graph(3, "ABC", &[(0, 1, "AB"), (0, 2, "A"), (1, 2, "B")]);
        assert!(!is_maximal(&g));
        assert_eq!(find_addable(&g), Some((0, 2, 1)));
    }

    #[test]
    fn witness_property_on_maximal_graph() {
        let g = uniform(3, "ABC", "AB");
        assert_eq!(max_witness_violation(&g), None);
    }
}
