//! The exhaustive census against frozen fixtures and an independent
//! brute-force classification.

mod common;

use std::collections::BTreeSet;

use common::{all_colorings, palette, permute_vertices};
use gallai_core::color::ColorSet;
use gallai_core::multigraph::ColoredMultigraph;
use gallai_core::oracle::canonical::canonical_form;
use gallai_core::oracle::census::{
    count_orbits, enumerate_census, CensusFixture, ClassCount, SearchBounds,
};
use itertools::Itertools;

fn fixture(n: usize, c: usize) -> CensusFixture {
    let path = format!(
        "{}/tests/fixtures/census_n{n}_c{c}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check_fixture(n: usize, c: usize) {
    let census = enumerate_census(n, &palette(c), 2, &SearchBounds::default()).unwrap();
    assert_eq!(
        census.fixture(),
        fixture(n, c),
        "census n={n} c={c} drifted from its fixture"
    );
}

#[test]
fn census_n3_c3_matches_fixture() {
    check_fixture(3, 3);
}

#[test]
fn census_n4_c3_matches_fixture() {
    check_fixture(4, 3);
}

#[test]
fn census_n4_c4_matches_fixture() {
    check_fixture(4, 4);
}

#[test]
fn census_n5_c3_matches_fixture() {
    check_fixture(5, 3);
}

#[test]
fn census_n5_c4_matches_fixture() {
    check_fixture(5, 4);
}

fn rainbow_by_selection(g: &ColoredMultigraph) -> bool {
    (0..g.n()).tuple_combinations().any(|(a, b, c)| {
        let (ab, ac, bc) = (g.colors(a, b), g.colors(a, c), g.colors(b, c));
        ab.iter().any(|x| {
            ac.iter()
                .any(|y| bc.iter().any(|z| x != y && y != z && x != z))
        })
    })
}

/// Isolated pair: every third vertex sees both ends in the same single color.
fn reduced_by_definition(g: &ColoredMultigraph) -> bool {
    (0..g.n()).tuple_combinations().all(|(u, v)| {
        !(0..g.n())
            .filter(|&w| w != u && w != v)
            .all(|w| g.colors(u, w) == g.colors(v, w) && g.colors(u, w).len() == 1)
    })
}

fn maximal_by_definition(g: &ColoredMultigraph) -> bool {
    (0..g.n()).tuple_combinations().all(|(u, v)| {
        (0..g.palette().len())
            .filter(|&c| !g.colors(u, v).contains(c))
            .all(|c| rainbow_by_selection(&g.with_color(u, v, c)))
    })
}

/// Minimum encoding over every vertex order and color permutation.
fn brute_key(g: &ColoredMultigraph) -> Vec<u32> {
    let (n, c) = (g.n(), g.palette().len());
    let mut best: Option<Vec<u32>> = None;
    for order in (0..n).permutations(n) {
        let h = permute_vertices(g, &order);
        for perm in (0..c).permutations(c) {
            let key: Vec<u32> = h
                .raw_colors()
                .iter()
                .map(|s| s.permuted(&perm).bits())
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Default)]
struct Tally {
    labeled: u64,
    classes: BTreeSet<Vec<u32>>,
}

impl Tally {
    fn add(&mut self, key: &[u32]) {
        self.labeled += 1;
        self.classes.insert(key.to_vec());
    }

    fn count(&self) -> ClassCount {
        ClassCount {
            isomorphism_classes: self.classes.len() as u64,
            labeled: self.labeled,
        }
    }
}

fn brute_force_agrees(n: usize, c: usize, cap: usize) {
    let (mut total, mut gallai, mut reduced, mut reduced_max) = (
        Tally::default(),
        Tally::default(),
        Tally::default(),
        Tally::default(),
    );
    for g in all_colorings(n, c, cap) {
        let key = brute_key(&g);
        total.add(&key);
        if rainbow_by_selection(&g) {
            continue;
        }
        gallai.add(&key);
        if reduced_by_definition(&g) {
            reduced.add(&key);
            if maximal_by_definition(&g) {
                reduced_max.add(&key);
            }
        }
    }
    let census = enumerate_census(n, &palette(c), cap, &SearchBounds::default()).unwrap();
    let k = census.record.counts;
    assert_eq!(k.total, total.count(), "total n={n} c={c} cap={cap}");
    assert_eq!(k.gallai, gallai.count(), "gallai n={n} c={c} cap={cap}");
    assert_eq!(
        k.reduced_gallai,
        reduced.count(),
        "reduced n={n} c={c} cap={cap}"
    );
    assert_eq!(
        k.reduced_maximal_gallai,
        reduced_max.count(),
        "reduced maximal n={n} c={c} cap={cap}"
    );
    let subsets = ColorSet::nonempty_subsets(c, cap);
    assert_eq!(count_orbits(n, c, &subsets), total.classes.len() as u128);
    // representatives are pairwise non-isomorphic and sorted by code
    let codes: Vec<_> = census.gallai.iter().map(canonical_form).collect();
    assert!(codes.windows(2).all(|w| w[0] < w[1]));
    let keys: BTreeSet<Vec<u32>> = census.gallai.iter().map(brute_key).collect();
    assert_eq!(keys.len(), census.gallai.len());
}

#[test]
fn brute_force_counts_small() {
    for n in 1..=3 {
        for c in 1..=3 {
            for cap in 1..=c {
                brute_force_agrees(n, c, cap);
            }
        }
    }
}

#[test]
fn brute_force_counts_four_vertices() {
    brute_force_agrees(4, 2, 2);
    brute_force_agrees(4, 3, 1);
    brute_force_agrees(4, 3, 2);
}

#[test]
fn simple_triangle_counts() {
    let census = enumerate_census(3, &palette(3), 1, &SearchBounds::default()).unwrap();
    assert_eq!(census.record.counts.total.labeled, 27);
    assert_eq!(census.record.counts.gallai.labeled, 27 - 6);
}

#[test]
fn bounds_are_enforced() {
    let small = SearchBounds {
        max_vertices: 3,
        max_colors: 3,
    };
    assert!(enumerate_census(4, &palette(3), 2, &small).is_err());
    assert!(enumerate_census(3, &palette(4), 2, &small).is_err());
    assert_eq!(
        SearchBounds::parse("6, 2").unwrap(),
        SearchBounds {
            max_vertices: 6,
            max_colors: 2
        }
    );
    assert!(SearchBounds::parse("6").is_err());
}

#[test]
fn fixture_members_are_reduced_maximal_gallai() {
    for (n, c) in [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4)] {
        for j in fixture(n, c).reduced_maximal_gallai {
            let g = ColoredMultigraph::from_json_value(j).unwrap();
            assert_eq!(g.n(), n);
            assert!(!rainbow_by_selection(&g));
            assert!(reduced_by_definition(&g));
            assert!(maximal_by_definition(&g));
            // a reduced maximal Gallai multigraph never carries three colors on a pair
            assert!(g.raw_colors().iter().all(|s| (1..=2).contains(&s.len())));
        }
    }
}
