//! Exact real-root isolation for univariate polynomials with rational
//! coefficients.
//!
//! Roots are isolated with Sturm sequences of the square-free part, so double
//! roots such as those of `(1 - t)^2` or `(1 - 2t)^2` are found and counted
//! once. Brackets are refined by exact bisection; no floating point is
//! involved until a caller converts an endpoint.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder of polynomial long division.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if rem.len() < divisor.0.len() {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / divisor.lead();
            if !c.is_zero() {
                for (i, d) in divisor.0.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Self(self.0.iter().map(|c| c / &l).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Polynomial with the same roots, each simple.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence(Vec<UPoly>);

impl SturmSequence {
    pub fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.degree() == 0 {
            return Self(seq);
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        Self(seq)
    }

    pub fn polynomial(&self) -> &UPoly {
        &self.0[0]
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A root in the half-open interval `(lo, hi]`, or exactly `lo` when the two
/// endpoints coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Isolates the distinct roots of the square-free polynomial behind `seq`
/// in `(a, b]`, in increasing order.
pub fn isolate(seq: &SturmSequence, a: &BigRational, b: &BigRational) -> Vec<RootBracket> {
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        match seq.count(&lo, &hi) {
            0 => {}
            1 => out.push(RootBracket { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                // pushed right first so the left half is processed first
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|x, y| x.hi.cmp(&y.hi));
    out
}

/// Bisects a bracket holding exactly one simple root of `p` until `done`
/// accepts it or the root is hit exactly.
pub fn refine<F>(p: &UPoly, bracket: &RootBracket, mut done: F) -> RootBracket
where
    F: FnMut(&RootBracket) -> bool,
{
    let mut b = bracket.clone();
    if b.is_exact() {
        return b;
    }
    let hi_sign = p.sign_at(&b.hi);
    if hi_sign == 0 {
        return RootBracket {
            lo: b.hi.clone(),
            hi: b.hi,
        };
    }
    while !done(&b) {
        let mid = b.midpoint();
        match p.sign_at(&mid) {
            0 => return RootBracket { lo: mid.clone(), hi: mid },
            s if s == hi_sign => b.hi = mid,
            _ => b.lo = mid,
        }
    }
    b
}

/// Multiplicity in `p` of the single root isolated by `bracket`.
pub fn multiplicity(p: &UPoly, bracket: &RootBracket) -> usize {
    let mut m = 0;
    let mut g = p.clone();
    while g.degree() > 0 {
        let has_root = if bracket.is_exact() {
            g.eval(&bracket.lo).is_zero()
        } else {
            SturmSequence::new(&g.square_free()).count(&bracket.lo, &bracket.hi) > 0
        };
        if !has_root {
            break;
        }
        m += 1;
        g = g.gcd(&g.derivative());
    }
    m
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> BigRational {
    BigRational::one()
}
