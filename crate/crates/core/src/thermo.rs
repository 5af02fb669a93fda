//! Partition function, critical inverse temperature and closed-form state
//! values.
//!
//! The growth series `sum_p t^{w(p)}` equals `1 / C(t)` for the clique
//! polynomial `C`, so the partition function at inverse temperature `beta`
//! is `1 / C(e^{-beta})` and its abscissa of convergence is `-ln t*`, with
//! `t*` the smallest root of `C` in `(0, 1]`. Roots are located with exact
//! arithmetic on `C(u^scale)`; floats appear only in reported values.

use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::growth::{self, GrowthTable};
use crate::monoid::{IndependenceGraph, Trace, Wick};
use crate::poly::WeightedPolynomial;
use crate::roots::{self, RootBracket, SturmSequence, UPoly};
use crate::{Error, Rational, Result};

/// Relative bracket width the smallest root is refined to at construction.
const CONSTRUCTION_TOL: f64 = 1e-15;

/// Value of a state on a monomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateValue {
    /// `e^{-beta r}` for the stored exponent `r`.
    Exact(Rational),
    ExactZero,
    Numeric(f64),
}

impl StateValue {
    pub fn one() -> Self {
        StateValue::Exact(Rational::zero())
    }

    pub fn at(&self, beta: f64) -> f64 {
        match self {
            StateValue::Exact(r) => (-beta * rational_f64(*r)).exp(),
            StateValue::ExactZero => 0.0,
            StateValue::Numeric(x) => *x,
        }
    }

    pub fn exponent(&self) -> Option<Rational> {
        match self {
            StateValue::Exact(r) => Some(*r),
            _ => None,
        }
    }

    /// Product; `ExactZero` absorbs everything.
    pub fn mul(self, other: StateValue) -> StateValue {
        use StateValue::*;
        match (self, other) {
            (ExactZero, _) | (_, ExactZero) => ExactZero,
            (Exact(a), Exact(b)) => Exact(a + b),
            (Numeric(x), y) | (y, Numeric(x)) => Numeric(x * y.at(1.0)),
        }
    }
}

pub(crate) fn rational_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// `1 / C(e^{-beta})`.
    Closed,
    /// Sum over elements of weight at most the cutoff.
    Truncated(Rational),
}

/// A root of the clique polynomial in `t`, with a certified bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitRoot {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub multiplicity: usize,
    pub exact: bool,
    /// Set when numerically indistinguishable roots were merged into this one.
    pub merged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootsReport {
    pub roots: Vec<UnitRoot>,
    /// Roots strictly between the smallest root and 1.
    pub subcritical: Vec<f64>,
}

/// Certificate that no root of the clique polynomial lies below the
/// reported smallest root.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallestRootCertificate {
    /// Distinct roots in `(0, lower]`, counted by a Sturm sequence.
    pub roots_below: usize,
    pub lower: f64,
    pub upper: f64,
}

impl SmallestRootCertificate {
    pub fn holds(&self) -> bool {
        self.roots_below == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KmsIdentityReport {
    pub holds: bool,
    pub lhs: StateValue,
    pub rhs: StateValue,
}

impl KmsIdentityReport {
    pub fn lhs_exponent(&self) -> Option<Rational> {
        self.lhs.exponent()
    }

    pub fn rhs_exponent(&self) -> Option<Rational> {
        self.rhs.exponent()
    }
}

#[derive(Clone, Debug)]
pub struct ThermoContext {
    graph: IndependenceGraph,
    clique_poly: WeightedPolynomial,
    /// clique polynomial as a polynomial in `u = t^{1/scale}`
    in_u: UPoly,
    square_free: UPoly,
    sturm: SturmSequence,
    brackets: Vec<RootBracket>,
    /// smallest root, in `u`
    smallest: RootBracket,
    critical_is_zero: bool,
    eta: Rational,
}

impl ThermoContext {
    pub fn new(graph: IndependenceGraph) -> Result<Self> {
        let clique_poly = growth::clique_polynomial(&graph);
        let in_u = UPoly::from_ints(&clique_poly.dense_in_u());
        let square_free = in_u.square_free();
        let sturm = SturmSequence::new(&square_free);
        let brackets = roots::isolate(&sturm, &BigRational::zero(), &BigRational::one());
        let first = brackets.first().cloned().ok_or(Error::NoRootInUnitInterval)?;
        let critical_is_zero = clique_poly.value_at_one().is_zero() && brackets.len() == 1;
        let scale = graph.scale();
        let smallest = if critical_is_zero {
            RootBracket {
                lo: BigRational::one(),
                hi: BigRational::one(),
            }
        } else {
            roots::refine(&square_free, &first, |b| relative_width_t(b, scale) <= CONSTRUCTION_TOL)
        };
        let eta = graph.min_weight();
        Ok(Self {
            graph,
            clique_poly,
            in_u,
            square_free,
            sturm,
            brackets,
            smallest,
            critical_is_zero,
            eta,
        })
    }

    pub fn graph(&self) -> &IndependenceGraph {
        &self.graph
    }

    pub fn clique_polynomial(&self) -> &WeightedPolynomial {
        &self.clique_poly
    }

    /// Smallest generator weight.
    pub fn eta(&self) -> Rational {
        self.eta
    }

    /// Upper bound `ln |S| / min_s w(s)` for the critical inverse temperature.
    pub fn critical_upper_bound(&self) -> f64 {
        (self.graph.len() as f64).ln() / rational_f64(self.eta)
    }

    /// Whether the critical inverse temperature is exactly zero, i.e. the
    /// only root of the clique polynomial in `(0, 1]` is `t = 1`.
    pub fn critical_is_zero(&self) -> bool {
        self.critical_is_zero
    }

    fn smallest_in_t(&self, tol: f64) -> Result<RootBracket> {
        check_tol(tol)?;
        if self.critical_is_zero {
            return Ok(self.smallest.clone());
        }
        let scale = self.graph.scale();
        let b = roots::refine(&self.square_free, &self.smallest, |b| relative_width_t(b, scale) <= tol);
        Ok(to_t(&b, scale))
    }

    /// `beta_c` within `tol`; exactly `0.0` when the smallest root is 1.
    pub fn beta_critical(&self, tol: f64) -> Result<f64> {
        let b = self.smallest_in_t(tol)?;
        if self.critical_is_zero {
            return Ok(0.0);
        }
        let upper = -roots::to_f64(&b.lo).ln();
        let lower = -roots::to_f64(&b.hi).ln();
        Ok(0.5 * (upper + lower))
    }

    /// Largest value `beta_c` can take given the stored bracket.
    fn beta_critical_upper(&self) -> f64 {
        if self.critical_is_zero {
            0.0
        } else {
            let b = to_t(&self.smallest, self.graph.scale());
            -roots::to_f64(&b.lo).ln()
        }
    }

    /// Sturm certificate that `C` has no root in `(0, lower]`, where
    /// `(lower, upper]` brackets the smallest root.
    pub fn certify_smallest_root(&self, tol: f64) -> Result<SmallestRootCertificate> {
        check_tol(tol)?;
        let scale = self.graph.scale();
        let b = if self.critical_is_zero {
            self.smallest.clone()
        } else {
            roots::refine(&self.square_free, &self.smallest, |b| relative_width_t(b, scale) <= tol)
        };
        let roots_below = if b.is_exact() {
            // (0, lo) excludes the root itself
            let below = self.sturm.count(&BigRational::zero(), &b.lo);
            below - usize::from(self.square_free.eval(&b.lo).is_zero())
        } else {
            self.sturm.count(&BigRational::zero(), &b.lo)
        };
        let t = to_t(&b, scale);
        Ok(SmallestRootCertificate {
            roots_below,
            lower: roots::to_f64(&t.lo),
            upper: roots::to_f64(&t.hi),
        })
    }

    /// Every root of `C` in `(0, 1]`, each bracketed to width `tol` in `t`.
    pub fn clique_roots_in_unit_interval(&self, tol: f64) -> Result<RootsReport> {
        check_tol(tol)?;
        let scale = self.graph.scale();
        let mut found: Vec<UnitRoot> = Vec::new();
        for b in &self.brackets {
            let r = roots::refine(&self.square_free, b, |x| absolute_width_t(x, scale) <= tol);
            let multiplicity = roots::multiplicity(&self.in_u, &r);
            let t = to_t(&r, scale);
            let (lower, upper) = (roots::to_f64(&t.lo), roots::to_f64(&t.hi));
            found.push(UnitRoot {
                value: if r.is_exact() { lower } else { 0.5 * (lower + upper) },
                lower,
                upper,
                multiplicity,
                exact: r.is_exact(),
                merged: false,
            });
        }

        let mut merged: Vec<UnitRoot> = Vec::new();
        for r in found {
            match merged.last_mut() {
                Some(prev) if (r.value - prev.value).abs() < 2.0 * tol => {
                    prev.multiplicity += r.multiplicity;
                    prev.upper = r.upper;
                    prev.merged = true;
                }
                _ => merged.push(r),
            }
        }

        let one_is_root = self.clique_poly.value_at_one().is_zero();
        let subcritical = merged
            .iter()
            .skip(1)
            .filter(|r| !(one_is_root && r.upper >= 1.0))
            .map(|r| r.value)
            .collect();
        Ok(RootsReport { roots: merged, subcritical })
    }

    pub fn growth_table(&self, cutoff: Rational) -> Result<GrowthTable> {
        growth::growth_table(&self.graph, cutoff)
    }

    pub fn partition_function(&self, beta: f64, method: Method) -> Result<f64> {
        match method {
            Method::Closed => {
                let beta_c = self.beta_critical_upper();
                if !(beta > beta_c) {
                    return Err(Error::NotAboveCritical { beta, beta_c });
                }
                let c = self.clique_poly.eval((-beta).exp());
                if !(c > 0.0) {
                    return Err(Error::NotAboveCritical { beta, beta_c });
                }
                Ok(1.0 / c)
            }
            Method::Truncated(cutoff) => {
                if !(beta > 0.0) {
                    return Err(Error::NonPositiveBeta);
                }
                Ok(self.growth_table(cutoff)?.partition_sum(beta))
            }
        }
    }

    /// `Z(beta) - Z_W(beta)`: the mass of elements heavier than the cutoff.
    pub fn tail_bound(&self, beta: f64, cutoff: Rational) -> Result<f64> {
        let closed = self.partition_function(beta, Method::Closed)?;
        let truncated = if cutoff < Rational::zero() {
            0.0
        } else {
            self.partition_function(beta, Method::Truncated(cutoff))?
        };
        Ok((closed - truncated).max(0.0))
    }

    /// `(1 / lambda_max) ln #{p : w(p) <= lambda_max}` for the heaviest level
    /// at or below the cutoff.
    pub fn beta_critical_limsup_estimate(&self, cutoff: Rational) -> Result<f64> {
        let table = self.growth_table(cutoff)?;
        if table.rows().len() < 2 {
            return Err(Error::InsufficientData);
        }
        let lambda_max = table.rows().last().expect("nonempty").lambda;
        Ok(growth::ln_biguint(&table.total()) / rational_f64(lambda_max))
    }

    /// Gibbs state on `v_p v_q*`: `e^{-beta w(p)}` if `p = q`, else 0.
    pub fn gibbs_value(&self, p: &Trace, q: &Trace) -> Result<StateValue> {
        self.graph.check(p)?;
        self.graph.check(q)?;
        Ok(if p == q {
            StateValue::Exact(p.weight())
        } else {
            StateValue::ExactZero
        })
    }

    /// Vacuum (Fock) state on `v_p v_q*`: 1 if `p = q = e`, else 0.
    pub fn fock_state_value(&self, p: &Trace, q: &Trace) -> Result<StateValue> {
        self.graph.check(p)?;
        self.graph.check(q)?;
        Ok(if p.is_identity() && q.is_identity() {
            StateValue::one()
        } else {
            StateValue::ExactZero
        })
    }

    /// Gibbs value of `v_a v_b* v_c v_d*`, reduced with the Wick rule
    /// `v_b* v_c = v_x v_y*`.
    fn gibbs_of_product(&self, a: &Trace, b: &Trace, c: &Trace, d: &Trace) -> Result<StateValue> {
        match self.graph.wick(b, c)? {
            Wick::Zero => Ok(StateValue::ExactZero),
            Wick::Pair(x, y) => {
                let left = self.graph.multiply(a, &x)?;
                let right = self.graph.multiply(d, &y)?;
                self.gibbs_value(&left, &right)
            }
        }
    }

    /// Symbolic check of
    /// `N(p1)^beta phi(v_p1 v_q1* v_p2 v_q2*) = N(q1)^beta phi(v_q1 v_p1* v_q2 v_p2*)`
    /// for the Gibbs state, as an identity of exponents valid for every beta.
    pub fn kms_identity_check(&self, p1: &Trace, q1: &Trace, p2: &Trace, q2: &Trace) -> Result<KmsIdentityReport> {
        let lhs = StateValue::Exact(-p1.weight()).mul(self.gibbs_of_product(p1, q1, p2, q2)?);
        let rhs = StateValue::Exact(-q1.weight()).mul(self.gibbs_of_product(q1, p1, q2, p2)?);
        let holds = match (lhs, rhs) {
            (StateValue::ExactZero, StateValue::ExactZero) => true,
            (StateValue::Exact(a), StateValue::Exact(b)) => a == b,
            _ => false,
        };
        Ok(KmsIdentityReport { holds, lhs, rhs })
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance)
    }
}

fn pow_scale(x: &BigRational, scale: u64) -> BigRational {
    if scale == 1 {
        x.clone()
    } else {
        Pow::pow(x, scale as u32)
    }
}

fn to_t(b: &RootBracket, scale: u64) -> RootBracket {
    RootBracket {
        lo: pow_scale(&b.lo, scale),
        hi: pow_scale(&b.hi, scale),
    }
}

fn absolute_width_t(b: &RootBracket, scale: u64) -> f64 {
    let t = to_t(b, scale);
    roots::to_f64(&t.width())
}

/// `(hi - lo) / lo` in `t`, an upper bound on the width of the bracket in
/// `beta = -ln t`.
fn relative_width_t(b: &RootBracket, scale: u64) -> f64 {
    let t = to_t(b, scale);
    if t.lo.is_zero() {
        return f64::INFINITY;
    }
    roots::to_f64(&(t.width() / &t.lo))
}
