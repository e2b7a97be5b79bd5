//! Truncated Laurent series in one variable `t` with tracked absolute precision.
//!
//! A value is `sum_k c_k t^(val+k) + O(t^prec)`. Exact values (finite sums with
//! no error term) carry `prec = None`. Arithmetic propagates precision the
//! usual way, so any coefficient reported by [`Laurent::coeff`] is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<Rational>,
    prec: Option<i64>,
}

impl Laurent {
    /// Builds and normalizes; coefficients at or above `prec` are dropped.
    pub fn new(val: i64, mut coeffs: Vec<Rational>, prec: Option<i64>) -> Laurent {
        if let Some(p) = prec {
            let keep = (p - val).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let (val, coeffs) = match lead {
            None => (prec.unwrap_or(0), Vec::new()),
            Some(k) => {
                coeffs.drain(..k);
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                (val + k as i64, coeffs)
            }
        };
        Laurent { val, coeffs, prec }
    }

    pub fn exact(val: i64, coeffs: Vec<Rational>) -> Laurent {
        Laurent::new(val, coeffs, None)
    }

    pub fn constant(c: Rational) -> Laurent {
        Laurent::new(0, vec![c], None)
    }

    /// `c t^e`.
    pub fn monomial(c: Rational, e: i64) -> Laurent {
        Laurent::new(e, vec![c], None)
    }

    /// The unknown quantity `O(t^prec)`.
    pub fn big_o(prec: i64) -> Laurent {
        Laurent::new(prec, Vec::new(), Some(prec))
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// Exponent of the leading known-nonzero term; `None` when no nonzero term is known.
    pub fn order(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Coefficient of `t^e`, or `None` if it lies beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if let Some(p) = self.prec {
            if e >= p {
                return None;
            }
        }
        if e < self.val {
            return Some(Rational::zero());
        }
        Some(self.coeffs.get((e - self.val) as usize).cloned().unwrap_or_else(Rational::zero))
    }

    /// A lower bound for the true order: the leading exponent, or the precision when no term is known.
    fn order_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec.unwrap_or(i64::MAX)
        } else {
            self.val
        }
    }

    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Drops everything at or above `t^prec`.
    pub fn truncate(&self, prec: i64) -> Laurent {
        let p = self.prec.map_or(prec, |q| q.min(prec));
        Laurent::new(self.val, self.coeffs.clone(), Some(p))
    }

    /// Inverse with `rel` terms of relative precision when the result is an infinite series.
    pub fn inv_with(&self, rel: usize) -> Option<Laurent> {
        let lead = self.coeffs.first()?;
        if self.coeffs.len() == 1 && self.prec.is_none() {
            return Some(Laurent::monomial(lead.inv()?, -self.val));
        }
        let rel = match self.prec {
            Some(p) => (p - self.val) as usize,
            None => rel,
        };
        let body = super::poly::series_divide(&[Rational::one()], &self.coeffs, rel);
        Some(Laurent::new(-self.val, body, Some(-self.val + rel as i64)))
    }

    fn add_impl(&self, rhs: &Laurent) -> Laurent {
        if rhs.is_exact_zero() {
            return self.clone();
        }
        if self.is_exact_zero() {
            return rhs.clone();
        }
        let prec = match (self.prec, rhs.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let lo = self.val.min(rhs.val);
        let hi_a = self.val + self.coeffs.len() as i64;
        let hi_b = rhs.val + rhs.coeffs.len() as i64;
        let mut hi = hi_a.max(hi_b);
        if let Some(p) = prec {
            hi = hi.min(p);
        }
        if hi <= lo {
            return Laurent::new(lo, Vec::new(), prec);
        }
        let mut out = vec![Rational::zero(); (hi - lo) as usize];
        for (src, v) in [(&self.coeffs, self.val), (&rhs.coeffs, rhs.val)] {
            for (k, c) in src.iter().enumerate() {
                let e = v + k as i64;
                if e < hi {
                    out[(e - lo) as usize] += c;
                }
            }
        }
        Laurent::new(lo, out, prec)
    }

    fn mul_impl(&self, rhs: &Laurent) -> Laurent {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Laurent::zero();
        }
        let pa = self.prec.map(|p| p.saturating_add(rhs.order_bound()));
        let pb = rhs.prec.map(|p| p.saturating_add(self.order_bound()));
        let prec = match (pa, pb) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let val = self.val + rhs.val;
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Laurent::new(val, Vec::new(), prec);
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - val).max(0) as usize);
        }
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Laurent::new(val, out, prec)
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent { val: 0, coeffs: Vec::new(), prec: None }
    }

    /// True when no nonzero coefficient is known (exact zero or `O(t^p)`).
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::constant(Rational::one())
    }
}

impl Default for Laurent {
    fn default() -> Self {
        Laurent::zero()
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        self.add_impl(&rhs)
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.add_impl(rhs)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        self.add_impl(&-rhs)
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.add_impl(&-rhs)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        self.mul_impl(&rhs)
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.mul_impl(rhs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in self.coeffs.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -self.clone()
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&Laurent> for Laurent {
    fn mul_assign(&mut self, rhs: &Laurent) {
        *self = self.mul_impl(rhs);
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})t^{}", self.val + k as i64)?;
        }
        match self.prec {
            Some(p) if first => write!(f, "O(t^{p})"),
            Some(p) => write!(f, " + O(t^{p})"),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}
