//! Shared generators for the integration tests.
#![allow(dead_code)]

use gallai_core::color::{ColorSet, Palette};
use gallai_core::maximal::maximal_closure;
use gallai_core::multigraph::{pair_count, ColoredMultigraph};
use gallai_core::rainbow::addition_creates_rainbow;
use gallai_core::reduce::reduce;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn palette(c: usize) -> Palette {
    Palette::standard(c).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Builds a graph from `(u, v, "AB")` triples; unlisted pairs get the first color.
pub fn graph(n: usize, labels: &str, spec: &[(usize, usize, &str)]) -> ColoredMultigraph {
    let p = Palette::new(labels.chars().map(String::from)).unwrap();
    let mut g = ColoredMultigraph::uniform(n, p.clone(), ColorSet::single(0)).unwrap();
    for &(u, v, cs) in spec {
        let names: Vec<String> = cs.chars().map(String::from).collect();
        g.set_colors(u, v, p.set_of(&names).unwrap());
    }
    g
}

/// Every complete coloring on `n` vertices with at most `cap` colors per pair.
pub fn all_colorings(n: usize, c: usize, cap: usize) -> Vec<ColoredMultigraph> {
    let sets = ColorSet::nonempty_subsets(c, cap);
    let mut out = Vec::new();
    let mut digits = vec![0usize; pair_count(n)];
    loop {
        let colors = digits.iter().map(|&d| sets[d]).collect();
        out.push(ColoredMultigraph::new(n, palette(c), colors).unwrap());
        let Some(i) = digits.iter().position(|&d| d + 1 < sets.len()) else {
            return out;
        };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|d| *d = 0);
    }
}

/// Vertex `i` of the result is vertex `order[i]` of `g`.
pub fn permute_vertices(g: &ColoredMultigraph, order: &[usize]) -> ColoredMultigraph {
    let n = order.len();
    let mut colors = Vec::with_capacity(pair_count(n));
    for b in 1..n {
        for a in 0..b {
            colors.push(g.colors(order[a], order[b]));
        }
    }
    ColoredMultigraph::new(n, g.palette().clone(), colors).unwrap()
}

/// A simple Gallai coloring: a random two-colored complete graph with
/// smaller random Gallai colorings substituted for its vertices.
pub fn random_simple_gallai(rng: &mut StdRng, n: usize, p: &Palette) -> ColoredMultigraph {
    if n == 1 {
        return ColoredMultigraph::point(p.clone());
    }
    let c = p.len();
    let a = rng.gen_range(0..c);
    let b = if c == 1 {
        a
    } else {
        (a + rng.gen_range(1..c)) % c
    };
    let k = rng.gen_range(2..=n);
    // random composition of n into k positive parts
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..k - 1].to_vec();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(k);
    let mut last = 0;
    for &cut in cuts.iter().chain(std::iter::once(&n)) {
        sizes.push(cut - last);
        last = cut;
    }
    let leaves: Vec<ColoredMultigraph> = sizes
        .iter()
        .map(|&s| random_simple_gallai(rng, s, p))
        .collect();
    let outer: Vec<usize> = (0..pair_count(k))
        .map(|_| if rng.gen_bool(0.5) { a } else { b })
        .collect();
    let owner: Vec<(usize, usize)> = leaves
        .iter()
        .enumerate()
        .flat_map(|(i, l)| (0..l.n()).map(move |x| (i, x)))
        .collect();
    let mut colors = Vec::with_capacity(pair_count(n));
    for j in 1..n {
        for i in 0..j {
            let ((u, x), (v, y)) = (owner[i], owner[j]);
            colors.push(if u == v {
                leaves[u].colors(x, y)
            } else {
                let (lo, hi) = (u.min(v), u.max(v));
                ColorSet::single(outer[hi * (hi - 1) / 2 + lo])
            });
        }
    }
    ColoredMultigraph::new(n, p.clone(), colors).unwrap()
}

/// A Gallai multigraph: a simple Gallai coloring plus random extra colors
/// that keep it rainbow-free.
pub fn random_gallai(rng: &mut StdRng, n: usize, p: &Palette) -> ColoredMultigraph {
    let mut g = random_simple_gallai(rng, n, p);
    if n < 2 {
        return g;
    }
    for _ in 0..rng.gen_range(0..=2 * pair_count(n)) {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(0..p.len());
        if !g.colors(u, v).contains(c) && !addition_creates_rainbow(&g, u, v, c) {
            g = g.with_color(u, v, c);
        }
    }
    g
}

/// Alternates closure and reduction until both are fixed points.
pub fn reduced_maximal(g: &ColoredMultigraph) -> ColoredMultigraph {
    let mut g = g.clone();
    loop {
        let closed = maximal_closure(&g).unwrap();
        let r = reduce(&closed).graph;
        if r == closed {
            return r;
        }
        g = r;
    }
}

/// A reduced maximal Gallai multigraph with at least three vertices when
/// one turns up within a few derived seeds.
pub fn random_reduced_maximal(seed: u64, max_n: usize, p: &Palette) -> ColoredMultigraph {
    let mut r = rng(seed);
    let mut best = ColoredMultigraph::point(p.clone());
    for _ in 0..32 {
        let n = r.gen_range(3..=max_n);
        let h = reduced_maximal(&random_gallai(&mut r, n, p));
        if h.n() >= 3 {
            return h;
        }
        if h.n() > best.n() {
            best = h;
        }
    }
    best
}
