//! Canonical codes under simultaneous vertex and color relabeling.
//!
//! The code is the lexicographically smallest serialization of the pair
//! color matrix over all `n! * c!` relabelings. That is exhaustive on
//! purpose and only meant for small graphs.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::color::ColorSet;
use crate::multigraph::{pair_count, pair_index, ColoredMultigraph};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Precomputed relabelings for graphs of a fixed size and palette size.
#[derive(Debug, Clone)]
pub struct Canonicalizer {
    n: usize,
    palette_size: usize,
    /// For each vertex permutation, old pair index at each new colex position.
    vertex_maps: Vec<Vec<usize>>,
    /// For each color permutation, image of every mask.
    color_tables: Vec<Vec<u32>>,
}

/// Result of canonicalizing one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub code: CanonicalCode,
    /// Canonical pair colors in colex order.
    pub colors: Vec<ColorSet>,
    /// Number of (vertex, color) relabelings fixing the graph.
    pub automorphisms: u64,
}

impl Canonicalizer {
    pub fn new(n: usize, palette_size: usize) -> Self {
        assert!(
            palette_size <= 16,
            "exhaustive canonicalization needs a small palette"
        );
        let vertex_maps = (0..n)
            .permutations(n)
            .map(|perm| {
                // perm[new] = old
                let mut map = Vec::with_capacity(pair_count(n));
                for b in 1..n {
                    for a in 0..b {
                        map.push(pair_index(perm[a], perm[b]));
                    }
                }
                map
            })
            .collect();
        let color_tables = (0..palette_size)
            .permutations(palette_size)
            .map(|perm| {
                (0..(1u32 << palette_size))
                    .map(|m| ColorSet::from_bits(m).permuted(&perm).bits())
                    .collect()
            })
            .collect();
        Self {
            n,
            palette_size,
            vertex_maps,
            color_tables,
        }
    }

    /// Like [`Canonicalizer::new`] but colors keep their labels.
    pub fn vertices_only(n: usize, palette_size: usize) -> Self {
        let mut c = Self::new(n, 1);
        c.palette_size = palette_size;
        c.color_tables = vec![(0..(1u32 << palette_size)).collect()];
        c
    }

    pub fn group_order(&self) -> u64 {
        (self.vertex_maps.len() * self.color_tables.len()) as u64
    }

    pub fn canonicalize(&self, colors: &[ColorSet]) -> Canonical {
        debug_assert_eq!(colors.len(), pair_count(self.n));
        let m = colors.len();
        let mut best: Vec<u32> = Vec::new();
        let mut autos = 0u64;
        for vmap in &self.vertex_maps {
            for table in &self.color_tables {
                if autos == 0 {
                    best = (0..m)
                        .map(|k| table[colors[vmap[k]].bits() as usize])
                        .collect();
                    autos = 1;
                    continue;
                }
                let mut ord = std::cmp::Ordering::Equal;
                let mut k = 0;
                while k < m {
                    let x = table[colors[vmap[k]].bits() as usize];
                    if x != best[k] {
                        ord = x.cmp(&best[k]);
                        break;
                    }
                    k += 1;
                }
                match ord {
                    std::cmp::Ordering::Greater => {}
                    std::cmp::Ordering::Equal => autos += 1,
                    std::cmp::Ordering::Less => {
                        for j in k..m {
                            best[j] = table[colors[vmap[j]].bits() as usize];
                        }
                        autos = 1;
                    }
                }
            }
        }
        let width = self.palette_size.div_ceil(8).max(1);
        let mut bytes = Vec::with_capacity(2 + m * width);
        bytes.push(self.n as u8);
        bytes.push(self.palette_size as u8);
        for &x in &best {
            bytes.extend_from_slice(&x.to_be_bytes()[4 - width..]);
        }
        Canonical {
            code: CanonicalCode(bytes),
            colors: best.into_iter().map(ColorSet::from_bits).collect(),
            automorphisms: autos,
        }
    }
}

/// Canonical code of `g`, invariant under vertex relabeling and palette permutation.
pub fn canonical_form(g: &ColoredMultigraph) -> CanonicalCode {
    Canonicalizer::new(g.n(), g.palette().len())
        .canonicalize(g.raw_colors())
        .code
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &ColoredMultigraph) -> ColoredMultigraph {
    let c = Canonicalizer::new(g.n(), g.palette().len()).canonicalize(g.raw_colors());
    ColoredMultigraph::from_raw(g.n(), g.palette().clone(), c.colors)
}
