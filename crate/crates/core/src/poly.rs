//! Exact polynomials in `t` with nonnegative rational exponents.
//!
//! All exponents live on the lattice `(1/scale) Z`, so a polynomial is stored
//! as a map from integer exponent units to nonzero big-integer coefficients.
//! Substituting `t = u^scale` turns it into an ordinary polynomial in `u`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolynomial {
    terms: BTreeMap<u64, BigInt>,
    scale: u64,
}

impl WeightedPolynomial {
    pub fn zero(scale: u64) -> Self {
        assert!(scale > 0, "scale must be positive");
        Self {
            terms: BTreeMap::new(),
            scale,
        }
    }

    pub fn one(scale: u64) -> Self {
        Self::from_terms(scale, [(0, BigInt::one())])
    }

    /// Builds from `(exponent units, coefficient)` pairs, summing repeats and
    /// dropping zeros.
    pub fn from_terms<I, C>(scale: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(scale);
        for (k, c) in terms {
            p.add_term(k, c.into());
        }
        p
    }

    fn add_term(&mut self, units: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(units).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&units);
        }
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at exponent `units / scale`.
    pub fn coeff(&self, units: u64) -> BigInt {
        self.terms.get(&units).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn exponent(&self, units: u64) -> Rational {
        Rational::new(units as i64, self.scale as i64)
    }

    /// `(units, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent in units, 0 for the zero polynomial.
    pub fn degree_units(&self) -> u64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// Same polynomial on the finer lattice `(1/new_scale) Z`.
    pub fn rescaled(&self, new_scale: u64) -> Self {
        assert!(new_scale % self.scale == 0, "new scale must be a multiple of the old one");
        let f = new_scale / self.scale;
        Self {
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
            scale: new_scale,
        }
    }

    fn common_scale(&self, other: &Self) -> (Self, Self) {
        let s = self.scale.lcm(&other.scale);
        (self.rescaled(s), other.rescaled(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common_scale(other);
        let mut out = Self::zero(a.scale);
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                out.add_term(i + j, x * y);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = self.common_scale(other);
        for (k, c) in b.terms {
            a.add_term(k, -c);
        }
        a
    }

    /// Drops every term with exponent units above `max_units`.
    pub fn truncated(&self, max_units: u64) -> Self {
        Self {
            terms: self.terms.range(..=max_units).map(|(k, c)| (*k, c.clone())).collect(),
            scale: self.scale,
        }
    }

    /// Exact value at `t = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Floating-point value at `t` in `[0, 1]`, via `u = t^(1/scale)`.
    pub fn eval(&self, t: f64) -> f64 {
        let u = if self.scale == 1 { t } else { t.powf(1.0 / self.scale as f64) };
        self.terms
            .iter()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * u.powi(*k as i32))
            .sum()
    }

    /// Dense coefficients of the polynomial in `u = t^(1/scale)`, lowest
    /// degree first.
    pub fn dense_in_u(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree_units() as usize + 1];
        for (k, c) in &self.terms {
            out[*k as usize] = c.clone();
        }
        out
    }

    /// Series reciprocal up to exponent units `max_units`.
    ///
    /// With `c_0 = 1`, the coefficients satisfy the triangular recurrence
    /// `r_k = -sum_{j=1..k} c_j r_{k-j}` on the integer exponent lattice.
    pub fn invert_series_units(&self, max_units: u64) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = max_units as usize;
        let mut r: Vec<BigInt> = Vec::with_capacity(n + 1);
        r.push(BigInt::one());
        let body: Vec<(usize, &BigInt)> = self.terms.iter().filter(|(k, _)| **k > 0).map(|(k, c)| (*k as usize, c)).collect();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for &(j, c) in &body {
                if j > k {
                    break;
                }
                acc -= c * &r[k - j];
            }
            r.push(acc);
        }
        Ok(Self::from_terms(self.scale, r.into_iter().enumerate().map(|(k, c)| (k as u64, c))))
    }
}

fn fmt_exponent(e: Rational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for WeightedPolynomial {
    /// `1 - 2*t^1 + 1*t^2`; rational exponents print as `t^(3/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, *k) {
                (0, _) if c.is_negative() => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if *k == 0 {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}*t^{}", c.abs(), fmt_exponent(self.exponent(*k)))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(scale: u64, terms: &[(u64, i64)]) -> WeightedPolynomial {
        WeightedPolynomial::from_terms(scale, terms.iter().copied())
    }

    #[test]
    fn display_format() {
        assert_eq!(p(1, &[(0, 1), (1, -2), (2, 1)]).to_string(), "1 - 2*t^1 + 1*t^2");
        assert_eq!(p(2, &[(0, 1), (2, -1), (3, -1), (5, 1)]).to_string(), "1 - 1*t^1 - 1*t^(3/2) + 1*t^(5/2)");
        assert_eq!(p(1, &[(1, -3)]).to_string(), "-3*t^1");
        assert_eq!(WeightedPolynomial::zero(1).to_string(), "0");
    }

    #[test]
    fn invert_geometric() {
        let c = p(1, &[(0, 1), (1, -2)]);
        assert_eq!(c.invert_series_units(3).unwrap(), p(1, &[(0, 1), (1, 2), (2, 4), (3, 8)]));
    }

    #[test]
    fn invert_path_polynomial() {
        let c = p(1, &[(0, 1), (1, -3), (2, 2)]);
        assert_eq!(c.invert_series_units(3).unwrap(), p(1, &[(0, 1), (1, 3), (2, 7), (3, 15)]));
    }

    #[test]
    fn invert_one_and_bad_constant() {
        assert_eq!(WeightedPolynomial::one(1).invert_series_units(7).unwrap(), WeightedPolynomial::one(1));
        assert_eq!(p(1, &[(0, 2), (1, 1)]).invert_series_units(3), Err(Error::ConstantTermNotOne));
        assert_eq!(p(1, &[(1, 1)]).invert_series_units(3), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn mul_rescales_and_cancels() {
        let a = p(1, &[(0, 1), (1, -1)]);
        let b = p(2, &[(0, 1), (3, -1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.scale(), 2);
        assert_eq!(prod, p(2, &[(0, 1), (2, -1), (3, -1), (5, 1)]));
        assert!(prod.sub(&prod).is_zero());
    }

    #[test]
    fn eval_and_value_at_one() {
        let c = p(1, &[(0, 1), (1, -3), (2, 2)]);
        assert_eq!(c.value_at_one(), BigInt::zero());
        assert!((c.eval(0.5)).abs() < 1e-15);
        let half = p(2, &[(0, 1), (1, -1)]);
        assert!((half.eval(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dense_in_u_layout() {
        let c = p(2, &[(0, 1), (3, -1)]);
        let d = c.dense_in_u();
        assert_eq!(d.len(), 4);
        assert_eq!(d[3], BigInt::from(-1));
        assert!(d[1].is_zero());
    }
}
