//! Weighted right-angled Artin monoids and their Foata normal forms.
//!
//! Generators are indexed `0..n` (n <= 64) so that sets of generators fit in
//! a `u64` bitmask. A trace is stored as its Foata block sequence: each block
//! is a clique of the commutation graph and every letter of block `i + 1`
//! depends on (equals or fails to commute with) some letter of block `i`.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result};

/// Index of a generator in its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(pub(crate) u8);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn bit(self) -> u64 {
        1u64 << self.0
    }
}

/// Finite weighted commutation graph presenting the monoid.
#[derive(Clone, Debug)]
pub struct IndependenceGraph {
    names: Vec<String>,
    weights: Vec<Rational>,
    adjacency: Vec<u64>,
    /// lcm of the weight denominators
    scale: u64,
    /// weights multiplied by `scale`
    units: Vec<u64>,
    fingerprint: u64,
}

impl PartialEq for IndependenceGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.weights == other.weights && self.adjacency == other.adjacency
    }
}

impl Eq for IndependenceGraph {}

impl IndependenceGraph {
    /// Validates and builds a graph. `edges` lists the commuting pairs.
    pub fn new<N, E, S>(generators: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (S, Rational)>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, w) in generators {
            let name = name.as_ref().to_string();
            if names.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight(name));
            }
            names.push(name);
            weights.push(w);
        }
        if names.is_empty() {
            return Err(Error::NoGenerators);
        }
        if names.len() > 64 {
            return Err(Error::TooManyGenerators(names.len()));
        }
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownEndpoint(s.to_string()))
        };
        let mut adjacency = vec![0u64; names.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = lookup(a)?;
            let j = lookup(b)?;
            if i == j {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if adjacency[i] & (1 << j) != 0 {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            adjacency[i] |= 1 << j;
            adjacency[j] |= 1 << i;
        }

        let scale = weights
            .iter()
            .fold(1i64, |acc, w| acc.lcm(w.denom()))
            .to_u64()
            .expect("positive lcm");
        let units = weights
            .iter()
            .map(|w| (w.numer() * (scale as i64 / w.denom())) as u64)
            .collect();

        let mut h = DefaultHasher::new();
        names.hash(&mut h);
        weights.hash(&mut h);
        adjacency.hash(&mut h);
        let fingerprint = h.finish();

        Ok(Self {
            names,
            weights,
            adjacency,
            scale,
            units,
            fingerprint,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.names.len()).map(|i| Generator(i as u8))
    }

    pub fn generator(&self, name: &str) -> Option<Generator> {
        self.names.iter().position(|n| n == name).map(|i| Generator(i as u8))
    }

    pub fn name(&self, s: Generator) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, s: Generator) -> Rational {
        self.weights[s.index()]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Common denominator of all weights; weights of elements are integer
    /// multiples of `1 / scale`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Weight of a generator in units of `1 / scale`.
    pub fn units(&self, s: Generator) -> u64 {
        self.units[s.index()]
    }

    pub fn min_weight(&self) -> Rational {
        *self.weights.iter().min().expect("nonempty")
    }

    /// Converts a rational cutoff into the largest admissible unit count.
    pub fn cutoff_units(&self, cutoff: Rational) -> Result<u64> {
        if cutoff.is_negative() {
            return Err(Error::NegativeCutoff);
        }
        let scaled = cutoff * Rational::from_integer(self.scale as i64);
        Ok(scaled.floor().to_integer() as u64)
    }

    pub fn units_to_weight(&self, units: u64) -> Rational {
        Rational::new(units as i64, self.scale as i64)
    }

    pub fn commute(&self, a: Generator, b: Generator) -> bool {
        self.adjacency[a.index()] & b.bit() != 0
    }

    pub(crate) fn neighbours(&self, s: usize) -> u64 {
        self.adjacency[s]
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Letters that do not commute with `s`, including `s` itself.
    pub(crate) fn dependents(&self, s: usize) -> u64 {
        self.full_mask() & !self.adjacency[s]
    }

    /// Commuting pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(Generator, Generator)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i] & (1 << j) != 0 {
                    out.push((Generator(i as u8), Generator(j as u8)));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        (0..self.len()).all(|i| self.adjacency[i] | (1 << i) == self.full_mask())
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// True when the generators in `mask` commute pairwise.
    pub fn is_clique(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rest & !self.adjacency[s] != 0 {
                return false;
            }
        }
        true
    }

    /// Whether `t` was built over this graph.
    pub fn owns(&self, t: &Trace) -> bool {
        t.graph == self.fingerprint
    }

    pub(crate) fn check(&self, t: &Trace) -> Result<()> {
        if self.owns(t) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// Parses a word. Single-character generator names are read character by
    /// character; otherwise letters are separated by whitespace.
    pub fn parse_word(&self, word: &str) -> Result<Vec<Generator>> {
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let lookup = |tok: &str| self.generator(tok).ok_or_else(|| Error::UnknownGenerator(tok.to_string()));
        if single {
            word.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| lookup(&c.to_string()))
                .collect()
        } else {
            word.split_whitespace().map(lookup).collect()
        }
    }

    pub fn identity(&self) -> Trace {
        Trace {
            graph: self.fingerprint,
            blocks: Vec::new(),
            units: 0,
            weight: Rational::zero(),
            len: 0,
        }
    }

    pub fn letter(&self, s: Generator) -> Trace {
        self.normalize(&[s])
    }

    /// Normalizes a word given by names, see [`IndependenceGraph::parse_word`].
    pub fn trace(&self, word: &str) -> Result<Trace> {
        Ok(self.normalize(&self.parse_word(word)?))
    }

    /// Foata normal form of a word.
    pub fn normalize(&self, word: &[Generator]) -> Trace {
        let mut t = self.identity();
        for &s in word {
            self.push_letter(&mut t, s.index());
        }
        t
    }

    /// Builds the trace with the given Foata blocks, validating the invariants.
    pub fn from_blocks(&self, blocks: &[u64]) -> Option<Trace> {
        let mut t = self.identity();
        for (i, &b) in blocks.iter().enumerate() {
            if b == 0 || b & !self.full_mask() != 0 || !self.is_clique(b) {
                return None;
            }
            if i > 0 && !self.can_follow(blocks[i - 1], b) {
                return None;
            }
            t.blocks.push(b);
            t.len += b.count_ones() as usize;
            t.units += self.mask_units(b);
        }
        t.weight = self.units_to_weight(t.units);
        Some(t)
    }

    /// Trace from a block sequence already known to satisfy the Foata
    /// invariants.
    pub(crate) fn trace_from_valid_blocks(&self, blocks: Vec<u64>) -> Trace {
        let units = blocks.iter().map(|&b| self.mask_units(b)).sum();
        let len = blocks.iter().map(|b| b.count_ones() as usize).sum();
        Trace {
            graph: self.fingerprint,
            blocks,
            units,
            weight: self.units_to_weight(units),
            len,
        }
    }

    /// Whether a block `next` may follow `prev` in a Foata sequence.
    pub(crate) fn can_follow(&self, prev: u64, next: u64) -> bool {
        let mut rest = next;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.dependents(s) & prev == 0 {
                return false;
            }
        }
        true
    }

    pub(crate) fn mask_units(&self, mask: u64) -> u64 {
        let mut rest = mask;
        let mut total = 0;
        while rest != 0 {
            total += self.units[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        total
    }

    /// Appends one letter on the right, placing it one level above the
    /// highest block holding a dependent letter.
    fn push_letter(&self, t: &mut Trace, s: usize) {
        let dep = self.dependents(s);
        let level = t.blocks.iter().rposition(|&b| b & dep != 0).map_or(0, |i| i + 1);
        if level == t.blocks.len() {
            t.blocks.push(1 << s);
        } else {
            t.blocks[level] |= 1 << s;
        }
        t.len += 1;
        t.units += self.units[s];
        t.weight = self.units_to_weight(t.units);
    }

    pub fn multiply(&self, p: &Trace, q: &Trace) -> Result<Trace> {
        self.check(p)?;
        self.check(q)?;
        let mut out = p.clone();
        for s in q.letters() {
            self.push_letter(&mut out, s.index());
        }
        Ok(out)
    }

    /// Removes a minimal letter `s` from the front of `x` and renormalizes.
    fn strip_front(&self, x: &Trace, s: Generator) -> Trace {
        debug_assert!(x.blocks.first().is_some_and(|b| b & s.bit() != 0));
        let mut word: Vec<Generator> = x.letters().collect();
        let pos = word.iter().position(|&l| l == s).expect("minimal letter present");
        word.remove(pos);
        self.normalize(&word)
    }

    /// Generators `s` with `s <= p`; this is the first Foata block.
    pub fn min_letters(&self, p: &Trace) -> Vec<Generator> {
        mask_letters(p.blocks.first().copied().unwrap_or(0)).collect()
    }

    fn try_left_quotient(&self, p: &Trace, x: &Trace) -> Option<Trace> {
        let mut cur = x.clone();
        for s in p.letters() {
            if cur.blocks.first().map_or(true, |b| b & s.bit() == 0) {
                return None;
            }
            cur = self.strip_front(&cur, s);
        }
        Some(cur)
    }

    /// `p <= x` in the left divisibility order.
    pub fn divides(&self, p: &Trace, x: &Trace) -> Result<bool> {
        self.check(p)?;
        self.check(x)?;
        if p.len > x.len {
            return Ok(false);
        }
        Ok(self.try_left_quotient(p, x).is_some())
    }

    /// The unique `y` with `p y = x`.
    pub fn left_quotient(&self, p: &Trace, x: &Trace) -> Result<Trace> {
        self.check(p)?;
        self.check(x)?;
        self.try_left_quotient(p, x).ok_or(Error::NotADivisor)
    }

    /// Least common upper bound in the divisibility order.
    ///
    /// Peels minimal letters `s` off `p`, replacing `q` by the residual
    /// `s \ q`: `s^-1 q` if `s` is a minimal letter of `q`, `q` itself if `s`
    /// commutes with every letter of `q` and does not occur in it, and no
    /// upper bound otherwise.
    pub fn join(&self, p: &Trace, q: &Trace) -> Result<JoinResult> {
        self.check(p)?;
        self.check(q)?;
        let mut p = p.clone();
        let mut q = q.clone();
        let mut prefix = self.identity();
        while let Some(&first) = p.blocks.first() {
            let s = Generator(first.trailing_zeros() as u8);
            p = self.strip_front(&p, s);
            if q.blocks.first().is_some_and(|b| b & s.bit() != 0) {
                q = self.strip_front(&q, s);
            } else if q.alphabet() & self.dependents(s.index()) != 0 {
                return Ok(JoinResult::Infinity);
            }
            self.push_letter(&mut prefix, s.index());
        }
        Ok(JoinResult::Finite(self.multiply(&prefix, &q)?))
    }

    /// Wick reordering `v_p* v_q = v_a v_b*` with `a = p^-1 (p v q)` and
    /// `b = q^-1 (p v q)`, or zero when `p v q` does not exist.
    pub fn wick(&self, p: &Trace, q: &Trace) -> Result<Wick> {
        match self.join(p, q)? {
            JoinResult::Infinity => Ok(Wick::Zero),
            JoinResult::Finite(j) => Ok(Wick::Pair(self.left_quotient(p, &j)?, self.left_quotient(q, &j)?)),
        }
    }

    /// Letters in normal-form order; space separated when names are longer
    /// than one character. The identity prints as `e`.
    pub fn format_trace(&self, t: &Trace) -> String {
        if t.is_identity() {
            return "e".to_string();
        }
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = t.letters().map(|s| self.name(s)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// All traces with at most `max_len` letters, without duplicates.
    /// Intended for exhaustive checks on small graphs.
    pub fn traces_up_to_length(&self, max_len: usize) -> Vec<Trace> {
        let mut seen: HashSet<Trace> = HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        let mut out = vec![self.identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for t in &frontier {
                for s in self.generators() {
                    let mut u = t.clone();
                    self.push_letter(&mut u, s.index());
                    if seen.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

pub(crate) fn mask_letters(mask: u64) -> impl Iterator<Item = Generator> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let s = rest.trailing_zeros();
            rest &= rest - 1;
            Some(Generator(s as u8))
        }
    })
}

/// Monoid element in Foata normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    graph: u64,
    blocks: Vec<u64>,
    units: u64,
    weight: Rational,
    len: usize,
}

impl Trace {
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Sum of the letter weights, `w(p) = log N(p)`.
    pub fn weight(&self) -> Rational {
        self.weight
    }

    pub fn weight_f64(&self) -> f64 {
        self.weight.to_f64().expect("finite weight")
    }

    /// Weight in units of `1 / scale` of the owning graph.
    pub fn units(&self) -> u64 {
        self.units
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn graph_fingerprint(&self) -> u64 {
        self.graph
    }

    /// Letters in normal-form order: block by block, ascending within a block.
    pub fn letters(&self) -> impl Iterator<Item = Generator> + '_ {
        self.blocks.iter().flat_map(|&b| mask_letters(b))
    }

    /// Set of generators occurring in the trace.
    pub fn alphabet(&self) -> u64 {
        self.blocks.iter().fold(0, |acc, b| acc | b)
    }
}

impl Hash for Trace {
    // the remaining fields are determined by these two
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
        self.blocks.hash(state);
    }
}

impl Ord for Trace {
    /// Weight first, then the normal-form word compared letter by letter.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.letters().cmp(other.letters()))
            .then_with(|| self.graph.cmp(&other.graph))
    }
}

impl PartialOrd for Trace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Outcome of a join: `Infinity` when no common upper bound exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum JoinResult {
    Finite(Trace),
    Infinity,
}

impl JoinResult {
    pub fn finite(&self) -> Option<&Trace> {
        match self {
            JoinResult::Finite(t) => Some(t),
            JoinResult::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, JoinResult::Infinity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Wick {
    Zero,
    Pair(Trace, Trace),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(names: &[&str], edges: &[(&str, &str)]) -> IndependenceGraph {
        IndependenceGraph::new(
            names.iter().map(|n| (*n, Rational::from_integer(1))),
            edges.iter().copied(),
        )
        .unwrap()
    }

    fn path3() -> IndependenceGraph {
        unit(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
    }

    #[test]
    fn build_graph_examples() {
        let free = unit(&["a", "b"], &[]);
        assert!(free.edges().is_empty());
        let n2 = unit(&["a", "b"], &[("a", "b")]);
        assert_eq!(n2.edges().len(), 1);
        assert!(n2.is_complete());
        let err = IndependenceGraph::new(
            [("a", Rational::from_integer(1)), ("b", Rational::from_integer(0))],
            [],
        );
        assert_eq!(err.unwrap_err(), Error::NonPositiveWeight("b".into()));
    }

    #[test]
    fn build_graph_errors() {
        let one = Rational::from_integer(1);
        assert_eq!(
            IndependenceGraph::new([("a", one), ("a", one)], []).unwrap_err(),
            Error::DuplicateGenerator("a".into())
        );
        assert_eq!(
            IndependenceGraph::new([("a", one)], [("a", "z")]).unwrap_err(),
            Error::UnknownEndpoint("z".into())
        );
        assert_eq!(
            IndependenceGraph::new([("a", one)], [("a", "a")]).unwrap_err(),
            Error::SelfLoop("a".into())
        );
        assert_eq!(
            IndependenceGraph::new([("a", one), ("b", one)], [("a", "b"), ("b", "a")]).unwrap_err(),
            Error::DuplicateEdge("b".into(), "a".into())
        );
        assert_eq!(
            IndependenceGraph::new(Vec::<(&str, Rational)>::new(), []).unwrap_err(),
            Error::NoGenerators
        );
        assert_eq!(
            IndependenceGraph::new([("a", Rational::new(-1, 2))], []).unwrap_err(),
            Error::NonPositiveWeight("a".into())
        );
    }

    #[test]
    fn rational_weights_scale() {
        let g = IndependenceGraph::new(
            [("a", Rational::from_integer(1)), ("b", Rational::new(3, 2))],
            [("a", "b")],
        )
        .unwrap();
        assert_eq!(g.scale(), 2);
        let t = g.trace("abb").unwrap();
        assert_eq!(t.weight(), Rational::from_integer(4));
        assert_eq!(t.units(), 8);
    }

    #[test]
    fn normalize_examples() {
        let g = path3();
        let ba = g.trace("ba").unwrap();
        assert_eq!(ba.blocks(), &[0b011]);
        let ca = g.trace("ca").unwrap();
        assert_eq!(ca.blocks(), &[0b100, 0b001]);
        assert!(g.trace("").unwrap().is_identity());
        assert_eq!(g.trace("ab").unwrap(), g.trace("ba").unwrap());
        assert_ne!(g.trace("ac").unwrap(), g.trace("ca").unwrap());
        assert!(matches!(g.trace("ax"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn multiply_examples() {
        let free = unit(&["a", "b"], &[]);
        let n2 = unit(&["a", "b"], &[("a", "b")]);
        let a = free.trace("a").unwrap();
        let b = free.trace("b").unwrap();
        assert_eq!(free.multiply(&free.identity(), &a).unwrap(), a);
        assert_eq!(free.multiply(&a, &b).unwrap().blocks(), &[0b01, 0b10]);
        let ab = n2.multiply(&n2.trace("a").unwrap(), &n2.trace("b").unwrap()).unwrap();
        assert_eq!(ab.blocks(), &[0b11]);
        assert_eq!(free.multiply(&a, &n2.trace("a").unwrap()), Err(Error::GraphMismatch));
    }

    #[test]
    fn divides_and_quotient_examples() {
        let g = path3();
        let t = |w| g.trace(w).unwrap();
        assert!(g.divides(&t("a"), &t("ab")).unwrap());
        assert!(!g.divides(&t("c"), &t("ab")).unwrap());
        assert!(g.divides(&g.identity(), &t("cab")).unwrap());
        assert!(g.left_quotient(&t("abc"), &t("abc")).unwrap().is_identity());
        assert_eq!(g.left_quotient(&t("b"), &t("ab")).unwrap(), t("a"));
        let free = unit(&["a", "b"], &[]);
        assert_eq!(
            free.left_quotient(&free.trace("a").unwrap(), &free.trace("ab").unwrap()).unwrap(),
            free.trace("b").unwrap()
        );
        assert_eq!(g.left_quotient(&t("c"), &t("ab")), Err(Error::NotADivisor));
    }

    #[test]
    fn min_letters_examples() {
        let g = path3();
        assert!(g.min_letters(&g.identity()).is_empty());
        let names = |v: Vec<Generator>| v.into_iter().map(|s| g.name(s).to_string()).collect::<Vec<_>>();
        assert_eq!(names(g.min_letters(&g.trace("ab").unwrap())), ["a", "b"]);
        assert_eq!(names(g.min_letters(&g.trace("ca").unwrap())), ["c"]);
        let free = unit(&["b", "c"], &[]);
        let cb = free.trace("cb").unwrap();
        assert_eq!(free.min_letters(&cb), vec![free.generator("c").unwrap()]);
    }

    #[test]
    fn join_examples() {
        let g = path3();
        let t = |w| g.trace(w).unwrap();
        assert_eq!(g.join(&t("a"), &t("b")).unwrap(), JoinResult::Finite(t("ab")));
        assert_eq!(g.join(&t("a"), &t("c")).unwrap(), JoinResult::Infinity);
        assert_eq!(g.join(&t("a"), &t("a")).unwrap(), JoinResult::Finite(t("a")));
        assert_eq!(g.join(&g.identity(), &t("cab")).unwrap(), JoinResult::Finite(t("cab")));
        // b commutes with both letters of ac
        assert_eq!(g.join(&t("ac"), &t("b")).unwrap(), JoinResult::Finite(t("acb")));
    }

    #[test]
    fn wick_examples() {
        let n2 = unit(&["a", "b"], &[("a", "b")]);
        let a = n2.trace("a").unwrap();
        let b = n2.trace("b").unwrap();
        assert_eq!(n2.wick(&a, &b).unwrap(), Wick::Pair(b.clone(), a.clone()));
        let g = path3();
        assert_eq!(g.wick(&g.trace("a").unwrap(), &g.trace("c").unwrap()).unwrap(), Wick::Zero);
        let p = g.trace("abc").unwrap();
        assert_eq!(g.wick(&p, &p).unwrap(), Wick::Pair(g.identity(), g.identity()));
    }

    #[test]
    fn from_blocks_validates() {
        let g = path3();
        assert_eq!(g.from_blocks(&[0b011]).unwrap(), g.trace("ab").unwrap());
        assert!(g.from_blocks(&[0b101]).is_none()); // a, c do not commute
        assert!(g.from_blocks(&[0b001, 0b100]).is_some());
        assert!(g.from_blocks(&[0b001, 0b010]).is_none()); // b could move left
    }

    #[test]
    fn length_enumeration_counts() {
        // path graph: 1 + 3 + 7 traces of length <= 2
        assert_eq!(path3().traces_up_to_length(2).len(), 11);
    }
}
