//! Every reduced maximal Gallai multigraph should be a realization of some
//! member of the constructed family.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::color::Palette;
use crate::construction::{for_each_realization, iterate_m_prime, LeafPool};
use crate::error::Result;
use crate::multigraph::MultigraphJson;
use crate::oracle::canonical::{CanonicalCode, Canonicalizer};
use crate::oracle::census::{reduced_maximal_up_to, SearchBounds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub vertices: usize,
    pub palette: Vec<String>,
    pub passed: bool,
    /// Reduced maximal Gallai classes on `1..=vertices` vertices.
    pub targets: usize,
    pub found: usize,
    pub family_size: usize,
    pub realizations: u64,
    /// Targets no realization reproduced.
    pub missing: Vec<MultigraphJson>,
}

/// Compares the census of reduced maximal Gallai multigraphs on up to `n`
/// vertices with the canonical codes of all realizations (at most `n`
/// vertices, uniformly colored leaves) of the family bounded by `n`.
pub fn completeness_check(
    n: usize,
    palette: &Palette,
    bounds: &SearchBounds,
) -> Result<CompletenessReport> {
    let targets = reduced_maximal_up_to(n, palette, bounds)?;
    let family = iterate_m_prime(n, palette, n)?;
    let pool = LeafPool::uniform(palette, n);
    let c = palette.len();
    let canon: Vec<Canonicalizer> = (0..=n).map(|k| Canonicalizer::new(k, c)).collect();
    let wanted: BTreeMap<CanonicalCode, usize> = targets
        .iter()
        .enumerate()
        .map(|(i, g)| (canon[g.n()].canonicalize(g.raw_colors()).code, i))
        .collect();
    let per_base: Vec<Result<(BTreeSet<usize>, u64)>> = family
        .par_iter()
        .map(|base| {
            let mut hits = BTreeSet::new();
            let mut count = 0u64;
            for_each_realization(base, &pool, n, &mut |_, r| {
                count += 1;
                let code = canon[r.graph.n()].canonicalize(r.graph.raw_colors()).code;
                if let Some(&i) = wanted.get(&code) {
                    hits.insert(i);
                }
            })?;
            Ok((hits, count))
        })
        .collect();
    let mut hit = BTreeSet::new();
    let mut realizations = 0;
    for r in per_base {
        let (h, count) = r?;
        hit.extend(h);
        realizations += count;
    }
    let missing: Vec<MultigraphJson> = targets
        .iter()
        .enumerate()
        .filter(|(i, _)| !hit.contains(i))
        .map(|(_, g)| g.to_json_value())
        .collect();
    Ok(CompletenessReport {
        vertices: n,
        palette: palette.labels().to_vec(),
        passed: missing.is_empty(),
        targets: targets.len(),
        found: hit.len(),
        family_size: family.len(),
        realizations,
        missing,
    })
}
