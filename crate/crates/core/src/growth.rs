//! Counting monoid elements by weight.
//!
//! Foata normal forms are walks in the "successor clique" digraph: a
//! nonempty clique `B'` may follow `B` when every letter of `B'` depends on
//! some letter of `B`. Counting walks by accumulated weight gives the growth
//! table; inverting the clique polynomial gives the same numbers.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::monoid::IndependenceGraph;
use crate::poly::WeightedPolynomial;
use crate::{par, Rational, Result, Trace};

/// A nonempty clique of the commutation graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Clique {
    pub mask: u64,
    pub units: u64,
}

impl Clique {
    pub fn size(&self) -> u32 {
        self.mask.count_ones()
    }
}

/// All nonempty cliques, ordered by bitmask.
///
/// Every clique extends uniquely by its largest vertex, so recursing on the
/// candidate set `N(v) ∩ {u > v}` visits each exactly once.
pub fn cliques(g: &IndependenceGraph) -> Vec<Clique> {
    fn extend(g: &IndependenceGraph, current: u64, candidates: u64, out: &mut Vec<Clique>) {
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mask = current | (1 << v);
            out.push(Clique {
                mask,
                units: g.mask_units(mask),
            });
            extend(g, mask, rest & g.neighbours(v), out);
        }
    }
    let mut out = Vec::new();
    extend(g, 0, g.full_mask(), &mut out);
    out.sort_by_key(|c| c.mask);
    out
}

/// Maximal cliques by Bron–Kerbosch with pivoting, each as a bitmask.
pub fn maximal_cliques(g: &IndependenceGraph) -> Vec<u64> {
    fn bk(g: &IndependenceGraph, r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot_pool = p | x;
        let pivot = crate::monoid::mask_letters(pivot_pool)
            .max_by_key(|u| (p & g.neighbours(u.index())).count_ones())
            .expect("nonempty pool");
        let mut candidates = p & !g.neighbours(pivot.index());
        let (mut p, mut x) = (p, x);
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let nv = g.neighbours(v);
            bk(g, r | (1 << v), p & nv, x & nv, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    bk(g, 0, g.full_mask(), 0, &mut out);
    out.sort_unstable();
    out
}

struct CliqueDigraph {
    cliques: Vec<Clique>,
    successors: Vec<Vec<usize>>,
    predecessors: Vec<Vec<usize>>,
}

impl CliqueDigraph {
    fn new(g: &IndependenceGraph) -> Self {
        let cliques = cliques(g);
        let n = cliques.len();
        let mut successors = vec![Vec::new(); n];
        let mut predecessors = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if g.can_follow(cliques[i].mask, cliques[j].mask) {
                    successors[i].push(j);
                    predecessors[j].push(i);
                }
            }
        }
        Self {
            cliques,
            successors,
            predecessors,
        }
    }
}

/// Every trace of weight at most `cutoff`, ordered by weight and then by
/// normal-form word.
pub fn enumerate_up_to(g: &IndependenceGraph, cutoff: Rational) -> Result<Vec<Trace>> {
    let max_units = g.cutoff_units(cutoff)?;
    let dg = CliqueDigraph::new(g);
    let starts: Vec<usize> = (0..dg.cliques.len()).filter(|&i| dg.cliques[i].units <= max_units).collect();

    let mut out = par::flat_map(&starts, |&first| {
        let mut found = Vec::new();
        let mut blocks = vec![dg.cliques[first].mask];
        dfs(g, &dg, first, dg.cliques[first].units, max_units, &mut blocks, &mut found);
        found
    });
    out.push(g.identity());
    out.sort();
    Ok(out)
}

fn dfs(
    g: &IndependenceGraph,
    dg: &CliqueDigraph,
    last: usize,
    units: u64,
    max_units: u64,
    blocks: &mut Vec<u64>,
    found: &mut Vec<Trace>,
) {
    found.push(g.trace_from_valid_blocks(blocks.clone()));
    for &next in &dg.successors[last] {
        let u = units + dg.cliques[next].units;
        if u <= max_units {
            blocks.push(dg.cliques[next].mask);
            dfs(g, dg, next, u, max_units, blocks, found);
            blocks.pop();
        }
    }
}

/// One weight level `lambda_n` with multiplicity `a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub lambda: Rational,
    pub units: u64,
    pub count: BigUint,
}

/// Distinct weights up to a cutoff together with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    rows: Vec<GrowthRow>,
    cutoff: Rational,
    scale: u64,
}

impl GrowthTable {
    pub fn rows(&self) -> &[GrowthRow] {
        &self.rows
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Multiplicity at exponent units `units` (zero if that weight is not realized).
    pub fn count_at_units(&self, units: u64) -> BigUint {
        self.rows
            .binary_search_by_key(&units, |r| r.units)
            .map(|i| self.rows[i].count.clone())
            .unwrap_or_default()
    }

    /// Number of elements of weight at most the cutoff.
    pub fn total(&self) -> BigUint {
        self.rows.iter().map(|r| &r.count).sum()
    }

    /// `sum_n a_n exp(-beta lambda_n)` over the tabulated levels.
    pub fn partition_sum(&self, beta: f64) -> f64 {
        self.rows
            .iter()
            .map(|r| (ln_biguint(&r.count) - beta * r.lambda.to_f64().unwrap()).exp())
            .sum()
    }

    /// Same sum restricted to levels `lambda_n <= limit`.
    pub fn partition_sum_below(&self, beta: f64, limit: Rational) -> f64 {
        self.rows
            .iter()
            .take_while(|r| r.lambda <= limit)
            .map(|r| (ln_biguint(&r.count) - beta * r.lambda.to_f64().unwrap()).exp())
            .sum()
    }
}

/// Natural logarithm of a big unsigned integer; `-inf` for zero.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Growth table by dynamic programming over (last Foata block, weight).
pub fn growth_table(g: &IndependenceGraph, cutoff: Rational) -> Result<GrowthTable> {
    let max_units = g.cutoff_units(cutoff)?;
    let counts = counts_by_units(g, max_units);
    let rows = counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(u, count)| GrowthRow {
            lambda: g.units_to_weight(u as u64),
            units: u as u64,
            count,
        })
        .collect();
    Ok(GrowthTable {
        rows,
        cutoff,
        scale: g.scale(),
    })
}

/// `a[u]` = number of elements of weight `u / scale`, for `u <= max_units`.
fn counts_by_units(g: &IndependenceGraph, max_units: u64) -> Vec<BigUint> {
    let dg = CliqueDigraph::new(g);
    let n = dg.cliques.len();
    let k = max_units as usize;
    // ending[u][j]: traces of weight u whose last block is clique j
    let mut ending: Vec<Vec<BigUint>> = Vec::with_capacity(k + 1);
    ending.push(vec![BigUint::zero(); n]);
    for u in 1..=k {
        let row = par::map_range(n, |j| {
            let cu = dg.cliques[j].units as usize;
            if cu > u {
                return BigUint::zero();
            }
            let base = u - cu;
            let mut s = if base == 0 { BigUint::from(1u32) } else { BigUint::zero() };
            for &i in &dg.predecessors[j] {
                s += &ending[base][i];
            }
            s
        });
        ending.push(row);
    }
    let mut totals: Vec<BigUint> = ending.iter().map(|row| row.iter().sum()).collect();
    totals[0] = BigUint::from(1u32);
    totals
}

/// `sum over cliques F (including the empty one) of (-1)^|F| t^{w(F)}`.
pub fn clique_polynomial(g: &IndependenceGraph) -> WeightedPolynomial {
    let mut terms = vec![(0u64, BigInt::from(1))];
    for c in cliques(g) {
        let sign = if c.size() % 2 == 0 { 1 } else { -1 };
        terms.push((c.units, BigInt::from(sign)));
    }
    WeightedPolynomial::from_terms(g.scale(), terms)
}

/// Series reciprocal of `c` up to exponent `cutoff`.
pub fn invert_series(c: &WeightedPolynomial, cutoff: Rational) -> Result<WeightedPolynomial> {
    if cutoff < Rational::zero() {
        return Err(crate::Error::NegativeCutoff);
    }
    let max_units = (cutoff * Rational::from_integer(c.scale() as i64)).floor().to_integer() as u64;
    c.invert_series_units(max_units)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: Rational,
    pub series: BigInt,
    pub count: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionReport {
    pub matches: bool,
    pub first_mismatch: Option<Mismatch>,
    pub terms_checked: usize,
}

/// Compares the reciprocal of the clique polynomial with the growth table,
/// coefficient by coefficient.
pub fn verify_inversion(g: &IndependenceGraph, cutoff: Rational) -> Result<InversionReport> {
    let max_units = g.cutoff_units(cutoff)?;
    let inverse = clique_polynomial(g).invert_series_units(max_units)?;
    let counts = counts_by_units(g, max_units);
    let first_mismatch = (0..=max_units).find_map(|u| {
        let series = inverse.coeff(u);
        let count = counts[u as usize].clone();
        (series != BigInt::from(count.clone())).then(|| Mismatch {
            exponent: g.units_to_weight(u),
            series,
            count,
        })
    });
    Ok(InversionReport {
        matches: first_mismatch.is_none(),
        first_mismatch,
        terms_checked: max_units as usize + 1,
    })
}

/// Whether every pair of elements has a join; for these monoids this holds
/// exactly when all generators commute.
pub fn is_lattice_ordered(g: &IndependenceGraph) -> bool {
    g.is_complete()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn counts(t: &GrowthTable) -> Vec<u64> {
        t.rows().iter().map(|r| r.count.to_u64().unwrap()).collect()
    }

    #[test]
    fn enumerate_examples() {
        let free = presets::free(2).unwrap();
        let all = enumerate_up_to(&free, r(2)).unwrap();
        let words: Vec<String> = all.iter().map(|t| free.format_trace(t)).collect();
        assert_eq!(words, ["e", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(enumerate_up_to(&presets::path(3).unwrap(), r(2)).unwrap().len(), 11);
        assert_eq!(enumerate_up_to(&presets::cycle(5).unwrap(), r(0)).unwrap(), vec![presets::cycle(5).unwrap().identity()]);
    }

    #[test]
    fn growth_table_examples() {
        let t = growth_table(&presets::free(2).unwrap(), r(6)).unwrap();
        assert_eq!(counts(&t), [1, 2, 4, 8, 16, 32, 64]);
        let t = growth_table(&presets::abelian(2).unwrap(), r(6)).unwrap();
        assert_eq!(counts(&t), [1, 2, 3, 4, 5, 6, 7]);
        let t = growth_table(&presets::path(3).unwrap(), r(5)).unwrap();
        assert_eq!(counts(&t), [1, 3, 7, 15, 31, 63]);
        assert_eq!(t.rows()[0].lambda, r(0));
    }

    #[test]
    fn rational_weight_levels() {
        let g = presets::abelian_weighted(&[r(1), Rational::new(3, 2)]).unwrap();
        let t = growth_table(&g, r(3)).unwrap();
        let levels: Vec<(Rational, u64)> = t.rows().iter().map(|x| (x.lambda, x.count.to_u64().unwrap())).collect();
        // a^i b^j with i + 3j/2 <= 3
        assert_eq!(
            levels,
            [(r(0), 1), (r(1), 1), (Rational::new(3, 2), 1), (r(2), 1), (Rational::new(5, 2), 1), (r(3), 2)]
        );
    }

    #[test]
    fn clique_polynomial_examples() {
        assert_eq!(clique_polynomial(&presets::free(2).unwrap()).to_string(), "1 - 2*t^1");
        assert_eq!(clique_polynomial(&presets::abelian(2).unwrap()).to_string(), "1 - 2*t^1 + 1*t^2");
        assert_eq!(clique_polynomial(&presets::path(3).unwrap()).to_string(), "1 - 3*t^1 + 2*t^2");
    }

    #[test]
    fn invert_series_examples() {
        let c = clique_polynomial(&presets::free(2).unwrap());
        assert_eq!(invert_series(&c, r(3)).unwrap().to_string(), "1 + 2*t^1 + 4*t^2 + 8*t^3");
        let c = clique_polynomial(&presets::path(3).unwrap());
        assert_eq!(invert_series(&c, r(3)).unwrap().to_string(), "1 + 3*t^1 + 7*t^2 + 15*t^3");
        assert!(invert_series(&c, r(-1)).is_err());
    }

    #[test]
    fn verify_inversion_examples() {
        for g in [presets::free(2).unwrap(), presets::path(3).unwrap()] {
            assert!(verify_inversion(&g, r(10)).unwrap().matches);
        }
        let g = presets::abelian_weighted(&[r(1), Rational::new(3, 2)]).unwrap();
        let rep = verify_inversion(&g, r(6)).unwrap();
        assert!(rep.matches);
        assert_eq!(rep.terms_checked, 13);
    }

    #[test]
    fn lattice_order_examples() {
        assert!(is_lattice_ordered(&presets::abelian(2).unwrap()));
        assert!(!is_lattice_ordered(&presets::free(2).unwrap()));
        assert!(!is_lattice_ordered(&presets::path(3).unwrap()));
    }

    #[test]
    fn maximal_cliques_of_path() {
        assert_eq!(maximal_cliques(&presets::path(3).unwrap()), vec![0b011, 0b110]);
        assert_eq!(maximal_cliques(&presets::abelian(3).unwrap()), vec![0b111]);
        assert_eq!(maximal_cliques(&presets::free(3).unwrap()), vec![0b001, 0b010, 0b100]);
    }

    #[test]
    fn ln_of_big_counts() {
        let n = BigUint::from(1u32) << 3000u32;
        assert!((ln_biguint(&n) - 3000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }
}
