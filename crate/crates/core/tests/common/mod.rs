//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the library's growth, clique, root-finding or thermo
//! code. The monoid is touched only through graph accessors and, for the
//! join search, through multiplication of normal forms.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use qlo_core::{presets, Generator, IndependenceGraph, Rational, Trace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct NamedGraph {
    pub name: String,
    pub graph: IndependenceGraph,
}

fn named(name: &str, graph: IndependenceGraph) -> NamedGraph {
    NamedGraph {
        name: name.to_string(),
        graph,
    }
}

/// Seeded random graphs on 2 to 6 vertices, each pair commuting with
/// probability 1/2.
pub fn random_graphs(seed: u64, count: usize, vertices: std::ops::RangeInclusive<usize>) -> Vec<IndependenceGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(vertices.clone());
            presets::random(&mut rng, n, 0.5).unwrap()
        })
        .collect()
}

pub fn test_graphs() -> Vec<NamedGraph> {
    let mut out = vec![
        named("free:2", presets::free(2).unwrap()),
        named("free:3", presets::free(3).unwrap()),
        named("abelian:2", presets::abelian(2).unwrap()),
        named("abelian:3", presets::abelian(3).unwrap()),
        named("path:3", presets::path(3).unwrap()),
        named("path:4", presets::path(4).unwrap()),
        named("cycle:5", presets::cycle(5).unwrap()),
        named(
            "abelian:2 weights 1, 3/2",
            presets::abelian_weighted(&[Rational::from_integer(1), Rational::new(3, 2)]).unwrap(),
        ),
    ];
    for (i, g) in random_graphs(2024, 10, 2..=6).into_iter().enumerate() {
        let name = format!("random-{i} ({} vertices, {} edges)", g.len(), g.edges().len());
        out.push(NamedGraph { name, graph: g });
    }
    out
}

fn commute_masks(g: &IndependenceGraph) -> Vec<u64> {
    let gens: Vec<Generator> = g.generators().collect();
    gens.iter()
        .map(|&a| {
            gens.iter()
                .filter(|&&b| a != b && g.commute(a, b))
                .fold(0u64, |m, b| m | 1 << b.index())
        })
        .collect()
}

fn letter_units(g: &IndependenceGraph) -> Vec<u64> {
    let scale = g.scale() as i64;
    g.weights()
        .iter()
        .map(|w| (w * Rational::from_integer(scale)).to_integer() as u64)
        .collect()
}

/// Number of elements of each weight, indexed by `weight * scale`, for
/// weights up to `max_units`.
///
/// Counts words in lexicographic normal form: a word is rejected when it
/// contains a factor `b u a` with `a < b` and `a` commuting with `b` and with
/// every letter of `u`. The automaton state records, for each letter `y`,
/// the alphabet read since its last occurrence (`DEAD` once `y` can no
/// longer witness a violation).
pub fn lex_normal_counts(g: &IndependenceGraph, max_units: u64) -> Vec<BigUint> {
    const DEAD: u64 = u64::MAX;
    let n = g.len();
    let commute = commute_masks(g);
    let units = letter_units(g);
    let witness_possible = |y: usize, seen: u64| (0..y).any(|a| commute[y] >> a & 1 == 1 && seen & !commute[a] == 0);

    let mut levels: Vec<HashMap<Vec<u64>, BigUint>> = vec![HashMap::new(); max_units as usize + 1];
    levels[0].insert(vec![DEAD; n], BigUint::from(1u8));
    let mut counts = vec![BigUint::zero(); max_units as usize + 1];
    for k in 0..=max_units as usize {
        let level = std::mem::take(&mut levels[k]);
        for (state, count) in level {
            counts[k] += &count;
            for a in 0..n {
                let next_units = k as u64 + units[a];
                if next_units > max_units {
                    continue;
                }
                let violates = (a + 1..n).any(|y| {
                    state[y] != DEAD && commute[a] >> y & 1 == 1 && state[y] & !commute[a] == 0
                });
                if violates {
                    continue;
                }
                let mut next = state.clone();
                for (y, seen) in next.iter_mut().enumerate() {
                    if y == a {
                        *seen = 0;
                    } else if *seen != DEAD {
                        *seen |= 1 << a;
                    }
                    if *seen != DEAD && !witness_possible(y, *seen) {
                        *seen = DEAD;
                    }
                }
                *levels[next_units as usize].entry(next).or_insert_with(BigUint::zero) += &count;
            }
        }
    }
    counts
}

/// Cliques of the commutation graph as (size, weight in units), including
/// the empty clique, by scanning all subsets.
pub fn clique_terms(g: &IndependenceGraph) -> Vec<(u32, u64)> {
    let n = g.len();
    let commute = commute_masks(g);
    let units = letter_units(g);
    (0u64..1 << n)
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 0 || (m & !(1 << i)) & !commute[i] == 0))
        .map(|m| (m.count_ones(), (0..n).filter(|i| m >> i & 1 == 1).map(|i| units[i]).sum()))
        .collect()
}

/// The clique polynomial evaluated at `t` (a power of `t^{1/scale}`).
pub fn clique_poly_at(g: &IndependenceGraph, t: f64) -> f64 {
    let u = t.powf(1.0 / g.scale() as f64);
    clique_terms(g)
        .iter()
        .map(|&(size, w)| if size % 2 == 0 { 1.0 } else { -1.0 } * u.powi(w as i32))
        .sum()
}

/// Partition function summed from the lexicographic counts.
pub fn truncated_partition(g: &IndependenceGraph, counts: &[BigUint], beta: f64) -> f64 {
    let scale = g.scale() as f64;
    counts
        .iter()
        .enumerate()
        .map(|(k, c)| c.to_f64().unwrap() * (-beta * k as f64 / scale).exp())
        .sum()
}

/// A uniformly random word of length `0..=max_len`, normalized.
pub fn random_trace<R: Rng>(rng: &mut R, g: &IndependenceGraph, max_len: usize) -> Trace {
    let gens: Vec<Generator> = g.generators().collect();
    let len = rng.gen_range(0..=max_len);
    let word: Vec<Generator> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
    g.normalize(&word)
}

/// Least common upper bound by exhaustive search over all common upper
/// bounds of length at most `|p| + |q|`, using only multiplication.
pub struct JoinSearch<'a> {
    g: &'a IndependenceGraph,
    traces: Vec<Trace>,
    ids: HashMap<Trace, u32>,
    all: Vec<Trace>,
    /// `multiples[i][k]`: sorted ids of `traces[i] w` with `|w| <= k`.
    multiples: Vec<Vec<Vec<u32>>>,
}

impl<'a> JoinSearch<'a> {
    pub fn new(g: &'a IndependenceGraph, max_len: usize) -> Self {
        let traces = g.traces_up_to_length(max_len);
        let mut s = Self {
            g,
            traces: traces.clone(),
            ids: HashMap::new(),
            all: Vec::new(),
            multiples: Vec::new(),
        };
        for p in &traces {
            let mut by_len: Vec<Vec<u32>> = vec![Vec::new(); max_len + 1];
            for w in &traces {
                let id = s.intern(g.multiply(p, w).unwrap());
                for bucket in by_len.iter_mut().skip(w.len()) {
                    bucket.push(id);
                }
            }
            for bucket in &mut by_len {
                bucket.sort_unstable();
                bucket.dedup();
            }
            s.multiples.push(by_len);
        }
        s
    }

    fn intern(&mut self, t: Trace) -> u32 {
        if let Some(&id) = self.ids.get(&t) {
            return id;
        }
        let id = self.all.len() as u32;
        self.ids.insert(t.clone(), id);
        self.all.push(t);
        id
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    /// `None` when there is no common upper bound. Panics if the minimal
    /// common upper bound is not unique or does not divide the others.
    pub fn join(&self, i: usize, j: usize) -> Option<Trace> {
        let (p, q) = (&self.traces[i], &self.traces[j]);
        let a = &self.multiples[i][q.len()];
        let b = &self.multiples[j][p.len()];
        let common: Vec<u32> = intersect(a, b);
        let min_len = common.iter().map(|&c| self.all[c as usize].len()).min()?;
        let minimal: Vec<u32> = common
            .iter()
            .copied()
            .filter(|&c| self.all[c as usize].len() == min_len)
            .collect();
        assert_eq!(minimal.len(), 1, "several minimal common upper bounds");
        let m = &self.all[minimal[0] as usize];
        let room = p.len() + q.len() - m.len();
        for &c in &common {
            let c = &self.all[c as usize];
            let reached = self
                .traces
                .iter()
                .filter(|v| v.len() == c.len() - m.len() && v.len() <= room)
                .any(|v| self.g.multiply(m, v).unwrap() == *c);
            assert!(reached, "minimal common upper bound does not divide another one");
        }
        Some(m.clone())
    }
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
