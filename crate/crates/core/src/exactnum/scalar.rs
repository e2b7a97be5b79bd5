//! The scalar abstraction shared by every matrix routine, and specializers that
//! turn affine expressions in a formal parameter into concrete scalars.

use std::fmt::Debug;
use std::ops::{AddAssign, Neg, SubAssign};

use num_traits::{One, Zero};

use super::{ExactError, Fp, Laurent, Poly, RatFunc, Rational};

/// An exact field-like scalar.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// Multiplicative inverse, `None` for zero (or for series with no known leading term).
    fn inv(&self) -> Option<Self>;

    /// `self += a * b`.
    fn add_prod(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        *self += &p;
    }
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        Rational::inv(self)
    }
}

impl Scalar for RatFunc {
    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
}

impl Scalar for Laurent {
    fn from_rational(q: &Rational) -> Self {
        Laurent::constant(q.clone())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    /// Exact multi-term values are inverted to 8 terms of relative precision.
    fn inv(&self) -> Option<Self> {
        self.inv_with(8)
    }
}

impl Scalar for Fp {
    /// Panics if the denominator is divisible by the modulus; use
    /// [`Fp::try_from_rational`] where that matters.
    fn from_rational(q: &Rational) -> Self {
        Fp::try_from_rational(q).expect("denominator divisible by the modulus")
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn inv(&self) -> Option<Self> {
        Fp::inv(*self)
    }
    #[inline]
    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }
}

/// The affine expression `a + b x` in a formal parameter `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lin {
    pub a: Rational,
    pub b: Rational,
}

impl Lin {
    pub fn new(a: Rational, b: Rational) -> Lin {
        Lin { a, b }
    }

    pub fn constant(a: Rational) -> Lin {
        Lin { a, b: Rational::zero() }
    }

    /// The parameter itself.
    pub fn var() -> Lin {
        Lin { a: Rational::zero(), b: Rational::one() }
    }

    pub fn add(&self, o: &Lin) -> Lin {
        Lin { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &Lin) -> Lin {
        Lin { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn shift(&self, c: &Rational) -> Lin {
        Lin { a: &self.a + c, b: self.b.clone() }
    }

    pub fn neg(&self) -> Lin {
        Lin { a: -&self.a, b: -&self.b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.a + &(&self.b * x)
    }
}

/// Maps affine expressions in the formal parameter to scalars of type `Out`.
pub trait Specializer: Sync {
    type Out: Scalar;

    fn lin(&self, l: &Lin) -> Self::Out;

    /// `1 / l`. Fails when `l` vanishes identically, or at the point for pointwise specializers.
    fn inv_lin(&self, l: &Lin) -> Result<Self::Out, ExactError>;

    fn constant(&self, q: &Rational) -> Self::Out {
        Self::Out::from_rational(q)
    }
}

/// Exact rational functions of the parameter.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Specializer for Symbolic {
    type Out = RatFunc;

    fn lin(&self, l: &Lin) -> RatFunc {
        RatFunc::from_poly(Poly::linear(l.a.clone(), l.b.clone()))
    }

    fn inv_lin(&self, l: &Lin) -> Result<RatFunc, ExactError> {
        if l.is_zero() {
            return Err(ExactError::VanishingLinear);
        }
        Ok(RatFunc::new(Poly::one(), Poly::linear(l.a.clone(), l.b.clone())))
    }
}

/// Evaluation at a rational point.
#[derive(Clone, Debug)]
pub struct AtPoint(pub Rational);

impl Specializer for AtPoint {
    type Out = Rational;

    fn lin(&self, l: &Lin) -> Rational {
        l.eval(&self.0)
    }

    fn inv_lin(&self, l: &Lin) -> Result<Rational, ExactError> {
        if l.is_zero() {
            return Err(ExactError::VanishingLinear);
        }
        l.eval(&self.0).inv().ok_or_else(|| ExactError::PoleAtPoint(self.0.clone()))
    }
}

/// Laurent expansion in `t = x - point`, with infinite series cut at absolute precision `prec`.
#[derive(Clone, Debug)]
pub struct SeriesAt {
    pub point: Rational,
    pub prec: i64,
}

impl Specializer for SeriesAt {
    type Out = Laurent;

    fn lin(&self, l: &Lin) -> Laurent {
        Laurent::exact(0, vec![l.eval(&self.point), l.b.clone()])
    }

    fn inv_lin(&self, l: &Lin) -> Result<Laurent, ExactError> {
        let c0 = l.eval(&self.point);
        match (c0.is_zero(), l.b.is_zero()) {
            (true, true) => Err(ExactError::VanishingLinear),
            (true, false) => Ok(Laurent::monomial(Rational::one() / &l.b, -1)),
            (false, true) => Ok(Laurent::constant(Rational::one() / &c0)),
            (false, false) => {
                // 1/(c0 + b t) = sum_m (-b)^m t^m / c0^(m+1)
                let c0i = Rational::one() / &c0;
                let ratio = -(&l.b * &c0i);
                let mut term = c0i;
                let mut out = Vec::new();
                for _ in 0..self.prec.max(0) {
                    out.push(term.clone());
                    term = &term * &ratio;
                }
                Ok(Laurent::new(0, out, Some(self.prec)))
            }
        }
    }
}

/// Expansion in `t = 1/x` around `x = infinity`, with infinite series cut at absolute precision `prec`.
#[derive(Clone, Debug)]
pub struct SeriesAtInfinity {
    pub prec: i64,
}

impl Specializer for SeriesAtInfinity {
    type Out = Laurent;

    fn lin(&self, l: &Lin) -> Laurent {
        // a + b/t
        Laurent::exact(-1, vec![l.b.clone(), l.a.clone()])
    }

    fn inv_lin(&self, l: &Lin) -> Result<Laurent, ExactError> {
        match (l.a.is_zero(), l.b.is_zero()) {
            (true, true) => Err(ExactError::VanishingLinear),
            (_, true) => Ok(Laurent::constant(Rational::one() / &l.a)),
            (true, false) => Ok(Laurent::monomial(Rational::one() / &l.b, 1)),
            (false, false) => {
                // t/(b + a t) = sum_m (-a)^m t^(m+1) / b^(m+1)
                let bi = Rational::one() / &l.b;
                let ratio = -(&l.a * &bi);
                let mut term = bi;
                let mut out = Vec::new();
                for _ in 1..self.prec.max(1) {
                    out.push(term.clone());
                    term = &term * &ratio;
                }
                Ok(Laurent::new(1, out, Some(self.prec.max(1))))
            }
        }
    }
}
