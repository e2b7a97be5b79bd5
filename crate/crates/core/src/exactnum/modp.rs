//! Arithmetic modulo the Mersenne prime `2^61 - 1`.
//!
//! Used only for one-sided rank certificates: reduction modulo a prime is a
//! ring homomorphism on p-integral rationals, so a rank observed modulo `p`
//! is a lower bound for the rank over the rationals.

use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

pub const MODULUS: u64 = (1u64 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(u64);

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & MODULUS;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & MODULUS) + ((x >> 122) as u64);
    while s >= MODULUS {
        s -= MODULUS;
    }
    s
}

impl Fp {
    pub fn new(v: u64) -> Fp {
        Fp(reduce128(v as u128))
    }

    pub fn from_i64(v: i64) -> Fp {
        let m = v.rem_euclid(MODULUS as i64) as u64;
        Fp(m)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Fp> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(MODULUS - 2))
        }
    }

    fn from_bigint(b: &BigInt) -> Fp {
        let m = BigInt::from(MODULUS);
        let r = ((b % &m) + &m) % &m;
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    /// The rational `a/b` with `|a|, b < 2^30` that reduces to this residue, if there is one.
    pub fn reconstruct(self) -> Option<Rational> {
        const BOUND: i128 = 1 << 30;
        let (mut r0, mut r1) = (MODULUS as i128, self.0 as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 >= BOUND {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if s1 == 0 || s1.abs() >= BOUND {
            return None;
        }
        let (num, den) = if s1 < 0 { (-r1, -s1) } else { (r1, s1) };
        if num_integer::Integer::gcd(&num, &den) != 1 {
            return None;
        }
        Some(Rational::new(num as i64, den as i64))
    }

    /// Reduction of a rational; `None` when the denominator is divisible by the modulus.
    pub fn try_from_rational(q: &Rational) -> Option<Fp> {
        let (n, d) = match q.as_small() {
            Some((n, d)) => (Fp::from_i64(n), Fp::from_i64(d)),
            None => (Fp::from_bigint(&q.numer()), Fp::from_bigint(&q.denom())),
        };
        d.inv().map(|di| n * di)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + MODULUS - rhs.0 })
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        Fp(reduce128(self.0 as u128 * rhs.0 as u128))
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { MODULUS - self.0 })
    }
}

impl AddAssign<&Fp> for Fp {
    #[inline]
    fn add_assign(&mut self, rhs: &Fp) {
        *self = *self + *rhs;
    }
}

impl SubAssign<&Fp> for Fp {
    #[inline]
    fn sub_assign(&mut self, rhs: &Fp) {
        *self = *self - *rhs;
    }
}

impl MulAssign<&Fp> for Fp {
    #[inline]
    fn mul_assign(&mut self, rhs: &Fp) {
        *self = *self * *rhs;
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp(1)
    }
}
