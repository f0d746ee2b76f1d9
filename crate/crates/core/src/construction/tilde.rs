//! Which vertices of a dominating side must share a signature color.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::color::{Color, ColorSet};
use crate::error::{GallaiError, Result};
use crate::multigraph::PairColoring;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TildePartition {
    /// Classes sorted by smallest member; members sorted.
    pub classes: Vec<Vec<usize>>,
    /// Pairs whose colors leave the two dominating colors.
    pub generators: Vec<(usize, usize)>,
}

impl TildePartition {
    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&v))
            .expect("partition covers every vertex")
    }
}

fn check_two(two_colors: ColorSet) -> Result<()> {
    if two_colors.len() != 2 {
        return Err(GallaiError::Construction(format!(
            "expected two dominating colors, got {}",
            two_colors.len()
        )));
    }
    Ok(())
}

/// Finest equivalence joining `x`, `y` whenever `ρ[xy] ⊄ two_colors`.
pub fn tilde_classes<P: PairColoring>(t: &P, two_colors: ColorSet) -> Result<TildePartition> {
    check_two(two_colors)?;
    let n = t.vertex_count();
    let mut uf = UnionFind::<usize>::new(n);
    let mut generators = Vec::new();
    for y in 1..n {
        for x in 0..y {
            if !t.pair_colors(x, y).is_subset(two_colors) {
                uf.union(x, y);
                generators.push((x, y));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(v);
    }
    Ok(TildePartition {
        classes,
        generators,
    })
}

/// Every map from the classes onto `two_colors`, lifted to one color per
/// vertex. Class `i` takes the larger color when bit `i` of the choice is set.
pub fn signature_choices(
    classes: &TildePartition,
    two_colors: ColorSet,
) -> Result<Vec<Vec<Color>>> {
    check_two(two_colors)?;
    let k = classes.classes.len();
    if k >= 64 {
        return Err(GallaiError::Bounds(format!(
            "{k} classes is too many to enumerate"
        )));
    }
    let lo = two_colors.min().expect("two colors");
    let hi = two_colors
        .difference(ColorSet::single(lo))
        .min()
        .expect("two colors");
    let n: usize = classes.classes.iter().map(Vec::len).sum();
    let all = (1u64 << k) - 1;
    Ok((1..all)
        .map(|mask| {
            let mut sig = vec![lo; n];
            for (i, class) in classes.classes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &v in class {
                        sig[v] = hi;
                    }
                }
            }
            sig
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Palette;
    use crate::mixed::MixedGraph;

    fn tree(c1c2: Color) -> MixedGraph {
        let ab = ColorSet::pair(0, 1);
        MixedGraph::from_parts(
            Palette::standard(3).unwrap(),
            3,
            [(1, 2, c1c2)],
            [(0, 1, ab, 0), (0, 2, ab, 0)],
        )
    }

    #[test]
    fn third_color_joins_children() {
        let p = tilde_classes(&tree(2), ColorSet::pair(0, 1)).unwrap();
        assert_eq!(p.classes, vec![vec![0], vec![1, 2]]);
        assert_eq!(p.generators, vec![(1, 2)]);
    }

    #[test]
    fn dominating_color_keeps_singletons() {
        let p = tilde_classes(&tree(0), ColorSet::pair(0, 1)).unwrap();
        assert_eq!(p.classes, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn outside_colors_everywhere_give_one_class() {
        let g = MixedGraph::from_parts(
            Palette::standard(3).unwrap(),
            3,
            [(0, 1, 2), (0, 2, 2), (1, 2, 2)],
            [],
        );
        let p = tilde_classes(&g, ColorSet::pair(0, 1)).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1, 2]]);
        assert!(signature_choices(&p, ColorSet::pair(0, 1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn choice_counts() {
        let two = tilde_classes(&tree(2), ColorSet::pair(0, 1)).unwrap();
        assert_eq!(
            signature_choices(&two, ColorSet::pair(0, 1)).unwrap().len(),
            2
        );
        let three = tilde_classes(&tree(0), ColorSet::pair(0, 1)).unwrap();
        let sigs = signature_choices(&three, ColorSet::pair(0, 1)).unwrap();
        assert_eq!(sigs.len(), 6);
        assert!(sigs.iter().all(|s| s.contains(&0) && s.contains(&1)));
        assert!(tilde_classes(&tree(0), ColorSet::single(0)).is_err());
    }
}
