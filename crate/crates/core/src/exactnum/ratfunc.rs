//! The field of univariate rational functions over `Rational`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::poly::{series_divide, Poly};
use super::{ExactError, Rational};

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and normalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.leading();
        if !lead.is_one() {
            let li = lead.inv().expect("nonzero");
            num = num.scale(&li);
            den = den.scale(&li);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The indeterminate `x`.
    pub fn x() -> RatFunc {
        RatFunc::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> RatFunc {
        RatFunc::new(self.num.reflect(), self.den.reflect())
    }

    /// `f(a)`, failing at a pole.
    pub fn eval(&self, a: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(ExactError::PoleAtPoint(a.clone()));
        }
        Ok(self.num.eval(a) / d)
    }

    /// Order `r` and the first `count` coefficients of the expansion in powers of `(x - a)`.
    pub fn laurent_at(&self, a: &Rational, count: usize) -> Result<(i64, Vec<Rational>), ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::ZeroFunction);
        }
        let n = self.num.taylor_shift(a);
        let d = self.den.taylor_shift(a);
        let vn = n.valuation().expect("nonzero");
        let vd = d.valuation().expect("nonzero");
        let coeffs = series_divide(&n.coeffs()[vn..], &d.coeffs()[vd..], count);
        Ok((vn as i64 - vd as i64, coeffs))
    }

    /// Coefficients of `x^0, x^-1, ..., x^-k` of the expansion at infinity.
    pub fn series_at_infinity(&self, k: usize) -> Result<Vec<Rational>, ExactError> {
        let dn = match self.num.degree() {
            None => return Ok(vec![Rational::zero(); k + 1]),
            Some(d) => d,
        };
        let dd = self.den.degree().expect("nonzero denominator");
        if dn > dd {
            return Err(ExactError::PoleAtInfinity);
        }
        // f(1/t) = t^(dd-dn) * rev(num)(t) / rev(den)(t)
        let shift = dd - dn;
        let rn = self.num.reversed(dn + 1);
        let rd = self.den.reversed(dd + 1);
        let body = series_divide(&rn, &rd, (k + 1).saturating_sub(shift));
        let mut out = vec![Rational::zero(); shift.min(k + 1)];
        out.extend(body);
        Ok(out)
    }
}

/// `f(a)` with `PoleAtPoint` when the denominator vanishes.
pub fn ratfunc_eval(f: &RatFunc, a: &Rational) -> Result<Rational, ExactError> {
    f.eval(a)
}

/// Laurent order and the first `count` coefficients of `f` at `x = a`.
pub fn laurent_at_point(f: &RatFunc, a: &Rational, count: usize) -> Result<(i64, Vec<Rational>), ExactError> {
    f.laurent_at(a, count)
}

/// Expansion coefficients of `f` in `1/x` up to `x^-k`.
pub fn series_at_infinity(f: &RatFunc, k: usize) -> Result<Vec<Rational>, ExactError> {
    f.series_at_infinity(k)
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

fn add_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return RatFunc::new(&a.num + &b.num, a.den.clone());
    }
    RatFunc::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
}

fn mul_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() || b.is_zero() {
        return RatFunc::zero();
    }
    if a.den.degree() == Some(0) && b.den.degree() == Some(0) {
        return RatFunc::from_poly(&a.num * &b.num);
    }
    RatFunc::new(&a.num * &b.num, &a.den * &b.den)
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_rf(self, rhs)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        add_rf(&self, &rhs)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_rf(self, &-rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        add_rf(&self, &-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        mul_rf(self, rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        mul_rf(&self, &rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        mul_rf(&self, rhs)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        mul_rf(self, &rhs.inv().expect("division by zero rational function"))
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = add_rf(self, rhs);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = add_rf(self, &-rhs);
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = mul_rf(self, rhs);
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(poly(n), poly(d))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf(&[1], &[-1, 1]).eval(&q(3, 1)).unwrap(), q(1, 2));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]).eval(&q(1, 1)).unwrap(), q(2, 1));
        assert!(matches!(rf(&[1], &[0, 1]).eval(&q(0, 1)), Err(ExactError::PoleAtPoint(_))));
    }

    #[test]
    fn laurent_examples() {
        let z = Rational::zero();
        assert_eq!(rf(&[1], &[0, 1]).laurent_at(&z, 2).unwrap(), (-1, vec![q(1, 1), q(0, 1)]));
        assert_eq!(rf(&[2, 1], &[0, 1]).laurent_at(&z, 2).unwrap(), (-1, vec![q(2, 1), q(1, 1)]));
        assert_eq!(rf(&[0, 0, 1], &[1]).laurent_at(&z, 1).unwrap(), (2, vec![q(1, 1)]));
        assert!(matches!(RatFunc::zero().laurent_at(&z, 1), Err(ExactError::ZeroFunction)));
    }

    #[test]
    fn infinity_examples() {
        assert_eq!(RatFunc::one().series_at_infinity(2).unwrap(), vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(rf(&[0, 1], &[-1, 1]).series_at_infinity(2).unwrap(), vec![q(1, 1); 3]);
        assert_eq!(rf(&[1], &[2, 1]).series_at_infinity(2).unwrap(), vec![q(0, 1), q(1, 1), q(-2, 1)]);
        assert!(matches!(rf(&[0, 0, 1], &[1, 1]).series_at_infinity(2), Err(ExactError::PoleAtInfinity)));
    }

    #[test]
    fn normalization_is_canonical() {
        let a = rf(&[2, 2], &[4, 4, 0]);
        assert_eq!(a, RatFunc::constant(q(1, 2)));
        let b = rf(&[1], &[0, 3]);
        assert!(b.denom().leading().is_one());
        assert_eq!(b.reflect(), -&b);
    }
}
