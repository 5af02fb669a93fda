//! Slow reference implementations used by the invariant suite.
//!
//! These rely only on multiplication of normal forms, never on the
//! divisibility, join or clique-digraph machinery they are checked against.

use std::collections::{BTreeSet, HashSet};

use crate::monoid::{IndependenceGraph, JoinResult, Trace};
use crate::{Rational, Result};

/// All elements of weight at most `cutoff`, found by breadth-first search over
/// words with deduplication of normal forms. Sorted like
/// [`crate::growth::enumerate_up_to`].
pub fn enumerate_by_words(g: &IndependenceGraph, cutoff: Rational) -> Result<Vec<Trace>> {
    let max = g.cutoff_units(cutoff)?;
    let letters: Vec<Trace> = g.generators().map(|s| g.letter(s)).collect();
    let mut seen: HashSet<Trace> = HashSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &letters {
                let y = g.multiply(x, s)?;
                if y.units() <= max && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Trace> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Right multiples `p w` with `|w| <= len`.
fn multiples(g: &IndependenceGraph, p: &Trace, tails: &[Trace]) -> Result<BTreeSet<Trace>> {
    tails.iter().map(|w| g.multiply(p, w)).collect()
}

/// Least common upper bound found by search: every common multiple of `p`
/// and `q` that is minimal has length at most `|p| + |q|`, so it is reached
/// as both `p u` and `q v` with `|u| <= |q|`, `|v| <= |p|`. Among those the
/// shortest is returned, after checking it is unique and divides the rest.
pub fn join_by_search(g: &IndependenceGraph, p: &Trace, q: &Trace) -> Result<JoinResult> {
    let tails = g.traces_up_to_length(p.len().max(q.len()));
    let short = |n: usize| -> Vec<Trace> { tails.iter().filter(|t| t.len() <= n).cloned().collect() };
    let from_p = multiples(g, p, &short(q.len()))?;
    let from_q = multiples(g, q, &short(p.len()))?;
    let common: Vec<&Trace> = from_p.intersection(&from_q).collect();
    let Some(min_len) = common.iter().map(|t| t.len()).min() else {
        return Ok(JoinResult::Infinity);
    };
    let minimal: Vec<&Trace> = common.iter().copied().filter(|t| t.len() == min_len).collect();
    assert_eq!(minimal.len(), 1, "least common multiple is not unique");
    let j = minimal[0].clone();
    let j_multiples = multiples(g, &j, &tails)?;
    for c in &common {
        assert!(j_multiples.contains(*c), "shortest common multiple does not divide all others");
    }
    Ok(JoinResult::Finite(j))
}

/// `p <= x` decided by searching for `w` with `p w = x`.
pub fn divides_by_search(g: &IndependenceGraph, p: &Trace, x: &Trace) -> Result<bool> {
    if p.len() > x.len() {
        return Ok(false);
    }
    for w in g.traces_up_to_length(x.len() - p.len()) {
        if w.len() == x.len() - p.len() && g.multiply(p, &w)? == *x {
            return Ok(true);
        }
    }
    Ok(false)
}
