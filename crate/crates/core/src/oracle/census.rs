//! Exhaustive census of complete edge-colored multigraphs.
//!
//! Pairs are colored in colex order with backtracking: a triangle is
//! checked as soon as its last pair is colored, so only Gallai graphs reach
//! the leaves. Colors are introduced in order of first use, which keeps at
//! least one member of every color-relabeling orbit. Leaves are deduplicated
//! by canonical code; labeled counts come from orbit sizes.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::color::{ColorSet, Palette};
use crate::error::{GallaiError, Result};
use crate::multigraph::{pair_count, pair_index, ColoredMultigraph, MultigraphJson};
use crate::oracle::canonical::{CanonicalCode, Canonicalizer};
use crate::rainbow::sets_are_rainbow;

/// Environment variable overriding [`SearchBounds::default`], formatted `N,C`.
pub const MAX_SEARCH_ENV: &str = "GALLAI_MAX_SEARCH";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_vertices: usize,
    pub max_colors: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_vertices: 5,
            max_colors: 4,
        }
    }
}

impl SearchBounds {
    /// Defaults, overridden by `GALLAI_MAX_SEARCH=N,C` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_SEARCH_ENV) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || {
            GallaiError::Bounds(format!(
                "{MAX_SEARCH_ENV} must look like `N,C`, got {text:?}"
            ))
        };
        let (n, c) = text.split_once(',').ok_or_else(bad)?;
        Ok(Self {
            max_vertices: n.trim().parse().map_err(|_| bad())?,
            max_colors: c.trim().parse().map_err(|_| bad())?,
        })
    }

    pub fn check(&self, n: usize, palette_size: usize) -> Result<()> {
        if n > self.max_vertices || palette_size > self.max_colors {
            return Err(GallaiError::Bounds(format!(
                "n={n}, colors={palette_size} exceeds n<={}, colors<={} (set {MAX_SEARCH_ENV} to override)",
                self.max_vertices, self.max_colors
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassCount {
    pub isomorphism_classes: u64,
    pub labeled: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusCounts {
    pub total: ClassCount,
    pub gallai: ClassCount,
    pub reduced_gallai: ClassCount,
    pub reduced_maximal_gallai: ClassCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusRecord {
    pub n: usize,
    pub palette: Vec<String>,
    pub multiplicity_cap: usize,
    pub counts: CensusCounts,
}

/// Canonical representatives, sorted by canonical code.
#[derive(Debug, Clone)]
pub struct Census {
    pub record: CensusRecord,
    pub gallai: Vec<ColoredMultigraph>,
    pub reduced_gallai: Vec<ColoredMultigraph>,
    pub reduced_maximal_gallai: Vec<ColoredMultigraph>,
}

/// `census.json` layout: the record plus the reduced maximal representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusFixture {
    pub record: CensusRecord,
    pub reduced_maximal_gallai: Vec<MultigraphJson>,
}

impl Census {
    pub fn fixture(&self) -> CensusFixture {
        CensusFixture {
            record: self.record.clone(),
            reduced_maximal_gallai: self
                .reduced_maximal_gallai
                .iter()
                .map(|g| g.to_json_value())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct LeafInfo {
    reduced: bool,
    maximal: bool,
    orbit: u64,
}

/// Enumerates every complete multigraph on `n` vertices whose pairs carry
/// `1..=cap` colors from `palette`, classifying each isomorphism class.
pub fn enumerate_census(
    n: usize,
    palette: &Palette,
    cap: usize,
    bounds: &SearchBounds,
) -> Result<Census> {
    bounds.check(n, palette.len())?;
    if cap == 0 {
        return Err(GallaiError::Bounds(
            "multiplicity cap must be positive".into(),
        ));
    }
    let c = palette.len();
    let cap = cap.min(c);
    let subsets = ColorSet::nonempty_subsets(c, cap);
    let canon = Canonicalizer::new(n, c);
    let m = pair_count(n);

    let found: BTreeMap<CanonicalCode, (Vec<ColorSet>, LeafInfo)> = if m == 0 {
        let can = canon.canonicalize(&[]);
        let info = LeafInfo {
            reduced: true,
            maximal: true,
            orbit: canon.group_order() / can.automorphisms,
        };
        BTreeMap::from([(can.code, (can.colors, info))])
    } else {
        let search = Search::new(n, c, &subsets);
        search
            .prefixes()
            .into_par_iter()
            .map(|prefix| {
                let mut local = BTreeMap::new();
                search.run(prefix, &mut |colors| {
                    let can = canon.canonicalize(colors);
                    local.entry(can.code).or_insert_with(|| {
                        let g = ColoredMultigraph::from_raw(n, palette.clone(), can.colors.clone());
                        let info = LeafInfo {
                            reduced: crate::reduce::is_reduced(&g),
                            maximal: crate::maximal::find_addable(&g).is_none(),
                            orbit: canon.group_order() / can.automorphisms,
                        };
                        (can.colors, info)
                    });
                });
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                a.extend(b);
                a
            })
    };

    let mut counts = CensusCounts {
        total: ClassCount {
            isomorphism_classes: count_orbits(n, c, &subsets) as u64,
            labeled: (subsets.len() as u128).pow(m as u32) as u64,
        },
        ..Default::default()
    };
    let mut census = Census {
        record: CensusRecord {
            n,
            palette: palette.labels().to_vec(),
            multiplicity_cap: cap,
            counts,
        },
        gallai: Vec::new(),
        reduced_gallai: Vec::new(),
        reduced_maximal_gallai: Vec::new(),
    };
    for (_, (colors, info)) in found {
        let g = ColoredMultigraph::from_raw(n, palette.clone(), colors);
        add(&mut counts.gallai, info.orbit);
        census.gallai.push(g.clone());
        if info.reduced {
            add(&mut counts.reduced_gallai, info.orbit);
            census.reduced_gallai.push(g.clone());
            if info.maximal {
                add(&mut counts.reduced_maximal_gallai, info.orbit);
                census.reduced_maximal_gallai.push(g);
            }
        }
    }
    census.record.counts = counts;
    Ok(census)
}

fn add(c: &mut ClassCount, orbit: u64) {
    c.isomorphism_classes += 1;
    c.labeled += orbit;
}

/// Backtracking over pair colorings with first-use color ordering.
struct Search {
    /// `(a, b)` for each colex pair position.
    pairs: Vec<(usize, usize)>,
    /// For each count of colors already in use: the admissible sets and the
    /// count after using them.
    candidates: Vec<Vec<(ColorSet, usize)>>,
}

impl Search {
    fn new(n: usize, c: usize, subsets: &[ColorSet]) -> Self {
        let mut pairs = Vec::new();
        for b in 1..n {
            for a in 0..b {
                pairs.push((a, b));
            }
        }
        let candidates = (0..=c)
            .map(|used| {
                subsets
                    .iter()
                    .filter_map(|&s| {
                        let fresh = s.difference(ColorSet::full(used));
                        let t = fresh.len();
                        let expected = ColorSet::full(used + t).difference(ColorSet::full(used));
                        (fresh == expected).then_some((s, used + t))
                    })
                    .collect()
            })
            .collect();
        Self { pairs, candidates }
    }

    /// Colorings of the first few pairs, used to split the search.
    fn prefixes(&self) -> Vec<Vec<ColorSet>> {
        let depth = self.pairs.len().min(3);
        let mut out = Vec::new();
        let mut colors = vec![ColorSet::EMPTY; self.pairs.len()];
        self.collect_prefixes(0, 0, depth, &mut colors, &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        k: usize,
        used: usize,
        depth: usize,
        colors: &mut Vec<ColorSet>,
        out: &mut Vec<Vec<ColorSet>>,
    ) {
        if k == depth {
            out.push(colors[..k].to_vec());
            return;
        }
        for &(s, next) in &self.candidates[used] {
            colors[k] = s;
            if self.consistent(k, colors) {
                self.collect_prefixes(k + 1, next, depth, colors, out);
            }
        }
    }

    fn consistent(&self, k: usize, colors: &[ColorSet]) -> bool {
        let (a, b) = self.pairs[k];
        let ab = colors[k];
        (0..a).all(|w| !sets_are_rainbow(ab, colors[pair_index(w, a)], colors[pair_index(w, b)]))
    }

    fn run(&self, prefix: Vec<ColorSet>, visit: &mut dyn FnMut(&[ColorSet])) {
        let mut colors = vec![ColorSet::EMPTY; self.pairs.len()];
        colors[..prefix.len()].copy_from_slice(&prefix);
        let used = prefix
            .iter()
            .fold(ColorSet::EMPTY, |acc, s| acc.union(*s))
            .len();
        self.extend(prefix.len(), used, &mut colors, visit);
    }

    fn extend(
        &self,
        k: usize,
        used: usize,
        colors: &mut Vec<ColorSet>,
        visit: &mut dyn FnMut(&[ColorSet]),
    ) {
        if k == self.pairs.len() {
            visit(colors);
            return;
        }
        for &(s, next) in &self.candidates[used] {
            colors[k] = s;
            if self.consistent(k, colors) {
                self.extend(k + 1, next, colors, visit);
            }
        }
    }
}

/// Number of isomorphism classes of all colorings, by Burnside's lemma over
/// vertex permutations times palette permutations.
pub fn count_orbits(n: usize, c: usize, subsets: &[ColorSet]) -> u128 {
    let color_perms: Vec<Vec<usize>> = (0..c).permutations(c).collect();
    let mut total: u128 = 0;
    for vperm in (0..n).permutations(n) {
        let cycles = pair_cycle_lengths(n, &vperm);
        for cperm in &color_perms {
            let mut fixed: u128 = 1;
            for &len in &cycles {
                let count = subsets
                    .iter()
                    .filter(|s| power_fixes(cperm, len, **s))
                    .count() as u128;
                fixed *= count;
                if fixed == 0 {
                    break;
                }
            }
            total += fixed;
        }
    }
    let order = (1..=n as u128).product::<u128>() * (1..=c as u128).product::<u128>();
    total / order
}

fn power_fixes(perm: &[usize], power: usize, s: ColorSet) -> bool {
    let mut t = s;
    for _ in 0..power {
        t = t.permuted(perm);
    }
    t == s
}

fn pair_cycle_lengths(n: usize, perm: &[usize]) -> Vec<usize> {
    let m = pair_count(n);
    let mut image = vec![0; m];
    for b in 1..n {
        for a in 0..b {
            image[pair_index(a, b)] = pair_index(perm[a], perm[b]);
        }
    }
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = image[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Reduced maximal Gallai representatives for every vertex count `1..=n`.
pub fn reduced_maximal_up_to(
    n: usize,
    palette: &Palette,
    bounds: &SearchBounds,
) -> Result<Vec<ColoredMultigraph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_census(k, palette, 2, bounds)?.reduced_maximal_gallai);
    }
    Ok(out)
}
