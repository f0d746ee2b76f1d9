//! Rebuilding a reduced maximal Gallai multigraph from its first
//! decomposition level.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::construction::{gamma_with_origin, ConstructionSpec};
use crate::decomposition::decompose;
use crate::maximal::find_addable;
use crate::multigraph::ColoredMultigraph;
use crate::rainbow::first_rainbow;
use crate::reduce::find_isolated;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub passed: bool,
    /// Set when the input is not reduced, maximal and Gallai.
    pub precondition: Option<String>,
    /// Decomposition level used as the base.
    pub level: Option<usize>,
    /// Why the rebuilt graph differs, if it does.
    pub mismatch: Option<String>,
}

impl RoundtripReport {
    fn precondition(msg: String) -> Self {
        Self {
            passed: false,
            precondition: Some(msg),
            level: None,
            mismatch: None,
        }
    }
}

/// Takes `M_1(g)` (or `M_0` for a single level), uses the induced subgraphs
/// on its blocks as leaves and the signatures read off `g`, and checks that
/// the realization equals `g` vertex for vertex.
pub fn roundtrip_check(g: &ColoredMultigraph) -> RoundtripReport {
    if let Some(t) = first_rainbow(g) {
        return RoundtripReport::precondition(format!("not Gallai: rainbow triangle {t:?}"));
    }
    if g.n() > 1 {
        if let Some(p) = find_isolated(g) {
            return RoundtripReport::precondition(format!("not reduced: pair {p:?} is isolated"));
        }
    }
    if let Some((u, v, c)) = find_addable(g) {
        return RoundtripReport::precondition(format!(
            "not maximal: color {} can be added to ({u},{v})",
            g.palette().label(c)
        ));
    }
    let seq = decompose(g);
    let level = seq.last_level().min(1);
    let m = &seq.levels[level];
    let mut leaves = Vec::with_capacity(m.size());
    for b in &m.blocks {
        match g.induced_subgraph(&b.vertices) {
            Ok(leaf) => leaves.push(leaf),
            Err(e) => return RoundtripReport::precondition(e.to_string()),
        }
    }
    let signatures: BTreeMap<(usize, usize), Vec<usize>> = m
        .directed
        .iter()
        .map(|e| {
            let to = &m.blocks[e.to].vertices;
            let sig = m.blocks[e.from]
                .vertices
                .iter()
                .map(|&u| g.colors(u, to[0]).min().expect("pairs are colored"))
                .collect();
            ((e.from, e.to), sig)
        })
        .collect();
    let spec = ConstructionSpec {
        base: m.abstracted(),
        leaves,
        signatures,
    };
    let fail = |msg: String| RoundtripReport {
        passed: false,
        precondition: None,
        level: Some(level),
        mismatch: Some(msg),
    };
    let r = match gamma_with_origin(&spec) {
        Ok(r) => r,
        Err(e) => {
            return fail(format!(
                "level {level} does not form a valid construction: {e}"
            ))
        }
    };
    // realization vertex i came from block b, local index x
    let order: Vec<usize> = r
        .origin
        .iter()
        .map(|&(b, x)| m.blocks[b].vertices[x])
        .collect();
    for j in 1..order.len() {
        for i in 0..j {
            if r.graph.colors(i, j) != g.colors(order[i], order[j]) {
                return fail(format!(
                    "pair ({},{}) is colored differently",
                    order[i], order[j]
                ));
            }
        }
    }
    RoundtripReport {
        passed: true,
        precondition: None,
        level: Some(level),
        mismatch: None,
    }
}
