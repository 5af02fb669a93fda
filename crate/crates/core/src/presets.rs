//! Named graph families and seeded random graphs. All presets use unit weights.

use rand::Rng;

use crate::{Error, IndependenceGraph, Rational, Result};

/// `a, b, c, ...` for up to 26 generators, `s0, s1, ...` beyond that.
pub fn generator_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("s{i}")).collect()
    }
}

fn unit_graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<IndependenceGraph> {
    let names = generator_names(n);
    let pairs: Vec<(String, String)> = edges.into_iter().map(|(i, j)| (names[i].clone(), names[j].clone())).collect();
    IndependenceGraph::new(names.iter().map(|s| (s.clone(), Rational::from_integer(1))), pairs)
}

/// Free monoid on `n` generators (no edges).
pub fn free(n: usize) -> Result<IndependenceGraph> {
    unit_graph(n, [])
}

/// Free abelian monoid `N^k` (complete graph).
pub fn abelian(k: usize) -> Result<IndependenceGraph> {
    unit_graph(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
}

/// Free abelian monoid with the given generator weights.
pub fn abelian_weighted(weights: &[Rational]) -> Result<IndependenceGraph> {
    let names = generator_names(weights.len());
    let k = weights.len();
    let pairs: Vec<(String, String)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .map(|(i, j)| (names[i].clone(), names[j].clone()))
        .collect();
    IndependenceGraph::new(names.iter().cloned().zip(weights.iter().copied()), pairs)
}

/// Path `s0 - s1 - ... - s(n-1)`.
pub fn path(n: usize) -> Result<IndependenceGraph> {
    unit_graph(n, (1..n).map(|i| (i - 1, i)))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<IndependenceGraph> {
    if n < 3 {
        return Err(Error::InvalidPreset(format!("cycle:{n}")));
    }
    unit_graph(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Graph on `n` vertices where each pair commutes with probability `p`.
pub fn random<R: Rng>(rng: &mut R, n: usize, p: f64) -> Result<IndependenceGraph> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    unit_graph(n, edges)
}

/// Graph on `n` vertices whose edges are the set bits of `mask`, pairs
/// `(i, j)`, `i < j`, taken in lexicographic order.
pub fn from_edge_mask(n: usize, mask: u64) -> Result<IndependenceGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    unit_graph(
        n,
        pairs.into_iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| e),
    )
}

/// Parses `free:n`, `abelian:k`, `path:n` or `cycle:n`.
pub fn parse(spec: &str) -> Result<IndependenceGraph> {
    let bad = || Error::InvalidPreset(spec.to_string());
    let (family, n) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    match family.trim() {
        "free" => free(n),
        "abelian" => abelian(n),
        "path" => path(n),
        "cycle" => cycle(n),
        _ => Err(bad()),
    }
}
