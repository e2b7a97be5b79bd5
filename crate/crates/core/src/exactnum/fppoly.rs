//! Dense univariate polynomials over the prime field, enough to find a root.

use num_traits::{One, Zero};
use rand::Rng;

use super::{Fp, MODULUS};

/// Coefficients, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly(Vec<Fp>);

impl FpPoly {
    pub fn new(mut c: Vec<Fp>) -> FpPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FpPoly(c)
    }

    pub fn x() -> FpPoly {
        FpPoly(vec![Fp::zero(), Fp::one()])
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.0.len().max(o.0.len());
        let at = |p: &FpPoly, i: usize| p.0.get(i).copied().unwrap_or_default();
        FpPoly::new((0..n).map(|i| at(self, i) - at(o, i)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly(Vec::new());
        }
        let mut out = vec![Fp::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        FpPoly::new(out)
    }

    /// Remainder of division by a nonzero `m`.
    pub fn rem(&self, m: &FpPoly) -> FpPoly {
        let dm = m.degree().expect("division by zero polynomial");
        let lead = m.0[dm].inv().expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let f = r[top] * lead;
            if !f.is_zero() {
                for (k, c) in m.0.iter().enumerate() {
                    let i = top - dm + k;
                    r[i] = r[i] - f * *c;
                }
            }
            r.pop();
        }
        FpPoly::new(r)
    }

    pub fn monic(&self) -> FpPoly {
        match self.0.last() {
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                FpPoly(self.0.iter().map(|c| *c * inv).collect())
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::new(vec![Fp::one()]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// A root in the prime field, if there is one: the linear part `gcd(x^p - x, f)` is split
    /// by random `gcd((x + a)^((p-1)/2) - 1, ·)` until a single factor remains.
    pub fn find_root<R: Rng>(&self, rng: &mut R) -> Option<Fp> {
        self.degree().filter(|&d| d >= 1)?;
        let x = FpPoly::x();
        let mut g = x.pow_mod(MODULUS, self).sub(&x).gcd(self);
        for _ in 0..256 {
            match g.degree() {
                Some(1) => return Some(-g.0[0]),
                Some(0) | None => return None,
                _ => {}
            }
            let shifted = FpPoly::new(vec![Fp::new(rng.gen::<u64>()), Fp::one()]);
            let h = shifted.pow_mod((MODULUS - 1) / 2, &g).sub(&FpPoly::new(vec![Fp::one()])).gcd(&g);
            if h.degree().is_some_and(|dh| dh >= 1 && Some(dh) < g.degree()) {
                g = h;
            }
        }
        None
    }

    pub fn eval(&self, x: Fp) -> Fp {
        self.0.iter().rev().fold(Fp::zero(), |acc, c| acc * x + *c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> FpPoly {
        FpPoly::new(c.iter().map(|&x| Fp::from_i64(x)).collect())
    }

    #[test]
    fn roots_of_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // (x - 3)(x - 7)(x^2 + 1)(x^2 + 2)
        let f = p(&[-3, 1]).mul(&p(&[-7, 1])).mul(&p(&[1, 0, 1])).mul(&p(&[2, 0, 1]));
        let r = f.find_root(&mut rng).unwrap();
        assert!(f.eval(r).is_zero());
        assert!(r == Fp::from_i64(3) || r == Fp::from_i64(7));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-3, 1])), p(&[1]));
    }

    #[test]
    fn remainder_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert!(a.rem(&b).is_zero());
        assert_eq!(a.gcd(&p(&[-1, 0, 0, 1])), p(&[-1, 1]));
    }
}
