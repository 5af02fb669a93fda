//! Truncated left regular representation.
//!
//! The Hilbert space is spanned by `eps_x` for the elements `x` of weight at
//! most the cutoff `W`. `L_p` sends `eps_x` to `eps_{px}` when `w(px) <= W`
//! and to zero otherwise; its adjoint is the combinatorial backward map
//! `eps_y -> eps_{p^-1 y}`. With this convention every diagonal identity
//! (range projections, Nica covariance, the vacuum projection) holds
//! exactly at every cutoff, and only the Gibbs numerics feel the truncation.

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::growth;
use crate::monoid::{IndependenceGraph, JoinResult, Trace};
use crate::thermo::{Method, ThermoContext};
use crate::{par, Error, Rational, Result};

/// Sparse complex matrix with at most one entry per position, sorted by
/// `(row, column)` and without explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    /// Sums repeated positions and drops zeros.
    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut raw: Vec<(usize, usize, Complex64)> = entries.into_iter().collect();
        for &(r, c, _) in &raw {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside dimension {dim}");
        }
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        Self { dim, entries: merged }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: Vec::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Complex64::new(1.0, 0.0)))
    }

    pub fn diagonal<I: IntoIterator<Item = Complex64>>(values: I) -> Self {
        let values: Vec<Complex64> = values.into_iter().collect();
        let dim = values.len();
        Self::from_entries(dim, values.into_iter().enumerate().map(|(i, v)| (i, i, v)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .map(|i| self.entries[i].2)
            .unwrap_or_default()
    }

    pub fn adjoint(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v.conj())).collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        Self { dim: self.dim, entries }
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        // entries are sorted by row, so each row of `other` is a contiguous run
        let mut start = vec![0usize; self.dim + 1];
        for &(r, _, _) in &other.entries {
            start[r + 1] += 1;
        }
        for i in 0..self.dim {
            start[i + 1] += start[i];
        }
        let products = self.entries.iter().flat_map(|&(i, k, a)| {
            other.entries[start[k]..start[k + 1]].iter().map(move |&(_, j, b)| (i, j, a * b))
        });
        Ok(Self::from_entries(self.dim, products))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self::from_entries(self.dim, self.entries.iter().chain(&other.entries).copied()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self::from_entries(
            self.dim,
            self.entries.iter().copied().chain(other.entries.iter().map(|&(r, c, v)| (r, c, -v))),
        ))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self::from_entries(self.dim, self.entries.iter().map(|&(r, c, v)| (r, c, v * z)))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|(r, c, _)| r == c)
    }

    pub fn diagonal_values(&self) -> Vec<Complex64> {
        let mut d = vec![Complex64::default(); self.dim];
        for &(r, c, v) in &self.entries {
            if r == c {
                d[r] = v;
            }
        }
        d
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.iter().filter(|(r, c, _)| r == c).map(|e| e.2).sum()
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.entries.iter().map(|e| e.2.norm()).fold(0.0, f64::max))
    }
}

/// Finite model of `l^2(P)` below a weight cutoff.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    graph: IndependenceGraph,
    cutoff: Rational,
    max_units: u64,
    basis: Vec<Trace>,
    index: FxHashMap<Trace, usize>,
}

/// Result of comparing `psi(AB)` with `psi(B alpha_{i beta}(A))` numerically.
#[derive(Clone, Debug, PartialEq)]
pub struct KmsNumericReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Truncation bound the residual must respect.
    pub bound: f64,
    pub within_bound: bool,
}

impl TruncatedRep {
    pub fn new(graph: &IndependenceGraph, cutoff: Rational) -> Result<Self> {
        let max_units = graph.cutoff_units(cutoff)?;
        let basis = growth::enumerate_up_to(graph, cutoff)?;
        let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(Self {
            graph: graph.clone(),
            cutoff,
            max_units,
            basis,
            index,
        })
    }

    pub fn graph(&self) -> &IndependenceGraph {
        &self.graph
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Trace] {
        &self.basis
    }

    pub fn position(&self, t: &Trace) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    /// Truncated `L_p`.
    pub fn left_op(&self, p: &Trace) -> Result<SparseOperator> {
        let end = self.admissible_prefix(p)?;
        let cols = par::map_range(end, |i| {
            let px = self.graph.multiply(p, &self.basis[i]).expect("same graph");
            (self.index[&px], i, Self::one())
        });
        Ok(SparseOperator::from_entries(self.dim(), cols))
    }

    /// `L_p*` built directly as `eps_y -> eps_{p^-1 y}` for `p <= y`.
    pub fn left_op_adjoint(&self, p: &Trace) -> Result<SparseOperator> {
        self.graph.check(p)?;
        let cols = par::map_range(self.dim(), |j| {
            let y = &self.basis[j];
            self.graph
                .left_quotient(p, y)
                .ok()
                .map(|x| (self.index[&x], j, Self::one()))
        });
        Ok(SparseOperator::from_entries(self.dim(), cols.into_iter().flatten()))
    }

    /// `L_p L_q*`.
    ///
    /// Built directly as `sum_x |p x><q x|` over the `x` with both `p x` and
    /// `q x` inside the truncation, which is the product of the two
    /// truncated shifts.
    pub fn monomial(&self, p: &Trace, q: &Trace) -> Result<SparseOperator> {
        let end = self.admissible_prefix(p)?.min(self.admissible_prefix(q)?);
        let entries = par::map_range(end, |i| {
            let x = &self.basis[i];
            let px = self.graph.multiply(p, x).expect("same graph");
            let qx = self.graph.multiply(q, x).expect("same graph");
            (self.index[&px], self.index[&qx], Self::one())
        });
        Ok(SparseOperator::from_entries(self.dim(), entries))
    }

    /// Indicator of `{x : p <= x}` over the basis.
    pub fn range_indicator(&self, p: &Trace) -> Result<Vec<bool>> {
        let mut ind = vec![false; self.dim()];
        for i in self.range_support(p)? {
            ind[i] = true;
        }
        Ok(ind)
    }

    /// Number of basis elements `y` with `p y` still inside the truncation.
    /// The basis is ordered by weight, so these form a prefix.
    fn admissible_prefix(&self, p: &Trace) -> Result<usize> {
        self.graph.check(p)?;
        Ok(match self.max_units.checked_sub(p.units()) {
            Some(room) => self.basis.partition_point(|y| y.units() <= room),
            None => 0,
        })
    }

    /// Sorted basis positions of the multiples `p y` inside the truncation.
    pub fn range_support(&self, p: &Trace) -> Result<Vec<usize>> {
        let end = self.admissible_prefix(p)?;
        let mut out = par::map_range(end, |i| {
            let py = self.graph.multiply(p, &self.basis[i]).expect("same graph");
            self.index[&py]
        });
        out.sort_unstable();
        Ok(out)
    }

    /// `L_p L_p*`, the projection onto multiples of `p`.
    pub fn range_projection(&self, p: &Trace) -> Result<SparseOperator> {
        let support = self.range_support(p)?;
        Ok(SparseOperator::from_entries(
            self.dim(),
            support.into_iter().map(|i| (i, i, Self::one())),
        ))
    }

    fn join_support(&self, p: &Trace, q: &Trace) -> Result<Vec<usize>> {
        match self.graph.join(p, q)? {
            JoinResult::Finite(j) => self.range_support(&j),
            JoinResult::Infinity => Ok(Vec::new()),
        }
    }

    /// `L_p L_p* L_q L_q* = L_{p v q} L_{p v q}*`, with `L_inf = 0`, compared
    /// exactly as 0/1 diagonals.
    pub fn nica_check(&self, p: &Trace, q: &Trace) -> Result<bool> {
        let a = self.range_support(p)?;
        let b = self.range_support(q)?;
        Ok(intersect(&a, &b) == self.join_support(p, q)?)
    }

    /// Nica covariance for every ordered pair drawn from `traces`, reusing
    /// range supports. Returns the first failing pair.
    pub fn nica_check_all(&self, traces: &[Trace]) -> Result<Option<(Trace, Trace)>> {
        let supports: Vec<Vec<usize>> = traces.iter().map(|t| self.range_support(t)).collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..traces.len()).flat_map(|i| (0..traces.len()).map(move |j| (i, j))).collect();
        let bad = par::find_failure(&pairs, |&(i, j)| {
            let rhs = self.join_support(&traces[i], &traces[j]).expect("same graph");
            intersect(&supports[i], &supports[j]) == rhs
        });
        Ok(bad.map(|k| (traces[pairs[k].0].clone(), traces[pairs[k].1].clone())))
    }

    /// `Q_e`, computed both as `prod_s (1 - L_s L_s*)` and as the clique sum
    /// `sum_F (-1)^|F| L_{vF} L_{vF}*`; errors if the two disagree.
    pub fn vacuum_projection(&self) -> Result<SparseOperator> {
        let g = &self.graph;
        let letters: Vec<Trace> = g.generators().map(|s| g.letter(s)).collect();
        let product = par::map(&self.basis, |x| {
            letters
                .iter()
                .map(|s| 1 - i64::from(g.divides(s, x).expect("same graph")))
                .product::<i64>()
        });

        let mut joins: Vec<(i64, Trace)> = vec![(1, g.identity())];
        for c in growth::cliques(g) {
            let mut acc = JoinResult::Finite(g.identity());
            for s in crate::monoid::mask_letters(c.mask) {
                if let JoinResult::Finite(t) = acc {
                    acc = g.join(&t, &g.letter(s))?;
                }
            }
            let JoinResult::Finite(top) = acc else {
                unreachable!("letters of a clique always have a join");
            };
            joins.push((if c.size() % 2 == 0 { 1 } else { -1 }, top));
        }
        let sum = par::map(&self.basis, |x| {
            joins
                .iter()
                .filter(|(_, j)| g.divides(j, x).expect("same graph"))
                .map(|(sign, _)| sign)
                .sum::<i64>()
        });

        if let Some(i) = (0..self.dim()).find(|&i| product[i] != sum[i]) {
            return Err(Error::VacuumMismatch(i));
        }
        Ok(SparseOperator::diagonal(product.into_iter().map(|v| Complex64::new(v as f64, 0.0))))
    }

    fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.basis.iter().map(|t| t.weight_f64())
    }

    /// `e^{-beta H}` restricted to the basis.
    pub fn density(&self, beta: f64) -> Result<SparseOperator> {
        if !(beta >= 0.0) {
            return Err(Error::NegativeBeta);
        }
        Ok(SparseOperator::diagonal(self.weights().map(|w| Complex64::new((-beta * w).exp(), 0.0))))
    }

    /// `U_t = e^{itH}` restricted to the basis.
    pub fn phase(&self, t: f64) -> SparseOperator {
        SparseOperator::diagonal(self.weights().map(|w| Complex64::from_polar(1.0, t * w)))
    }

    /// Trace of the truncated density.
    pub fn partition_sum(&self, beta: f64) -> f64 {
        self.weights().map(|w| (-beta * w).exp()).sum()
    }

    /// `Tr(A e^{-beta H}) / Tr(e^{-beta H})` over the basis.
    pub fn gibbs_numeric(&self, a: &SparseOperator, beta: f64) -> Result<Complex64> {
        if !(beta > 0.0) {
            return Err(Error::NonPositiveBeta);
        }
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch(a.dim(), self.dim()));
        }
        let z = self.partition_sum(beta);
        if z == 0.0 {
            return Err(Error::ZeroDenominator);
        }
        let numerator: Complex64 = a
            .entries()
            .iter()
            .filter(|(r, c, _)| r == c)
            .map(|&(r, _, v)| v * (-beta * self.basis[r].weight_f64()).exp())
            .sum();
        Ok(numerator / z)
    }

    /// KMS condition `psi(AB) = psi(B alpha_{i beta}(A))` for the truncated
    /// Gibbs state and monomials `A = L_p1 L_q1*`, `B = L_p2 L_q2*`.
    ///
    /// The bound accounts for basis vectors whose path through the four
    /// factors leaves the truncation: with `M` the largest weight excursion
    /// along either product and `tau = Z(beta) - Z_{W - M}(beta)`, each
    /// truncated Gibbs value is within `2 tau / Z_W` of its exact value.
    pub fn kms_numeric_check(
        &self,
        ctx: &ThermoContext,
        (p1, q1): (&Trace, &Trace),
        (p2, q2): (&Trace, &Trace),
        beta: f64,
        tol: f64,
    ) -> Result<KmsNumericReport> {
        if !(tol > 0.0) {
            return Err(Error::InvalidTolerance);
        }
        let z_closed = ctx.partition_function(beta, Method::Closed)?;
        let a = self.monomial(p1, q1)?;
        let b = self.monomial(p2, q2)?;
        let lhs = self.gibbs_numeric(&a.mul(&b)?, beta)?;
        let twist = dynamics_factor(p1, q1, Complex64::new(0.0, beta));
        let rhs = twist * self.gibbs_numeric(&b.mul(&a)?, beta)?;
        let residual = (lhs - rhs).norm();

        let excursion = |steps: [Rational; 4]| {
            let mut acc = Rational::from_integer(0);
            let mut top = acc;
            for s in steps {
                acc += s;
                top = top.max(acc);
            }
            top
        };
        let (wp1, wq1, wp2, wq2) = (p1.weight(), q1.weight(), p2.weight(), q2.weight());
        let m = excursion([-wq2, wp2, -wq1, wp1]).max(excursion([-wq1, wp1, -wq2, wp2]));
        let reduced = self.cutoff - m;
        let inner = if reduced < Rational::from_integer(0) {
            0.0
        } else {
            ctx.growth_table(reduced)?.partition_sum(beta)
        };
        let tau = (z_closed - inner).max(0.0);
        let bound = 2.0 * tau * (1.0 + twist.norm()) / self.partition_sum(beta);
        Ok(KmsNumericReport {
            lhs,
            rhs,
            residual,
            bound,
            within_bound: residual <= bound + tol,
        })
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
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

/// Analytic extension of the dynamics on `L_p L_q*`: `e^{iz (w(p) - w(q))}`.
pub fn dynamics_factor(p: &Trace, q: &Trace, z: Complex64) -> Complex64 {
    let r = p.weight_f64() - q.weight_f64();
    (Complex64::new(0.0, 1.0) * z * r).exp()
}
