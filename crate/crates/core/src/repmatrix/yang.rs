//! The Yang R-matrix `R(u,v) = u - v - P`, its twisted partner
//! `R'(u,v) = -(u + v + Q)`, and the normalized forms
//! `R̆ = 1 - P/(u-v)`, `R̆' = 1 + Q/(u+v)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{AtPoint, Lin, Rational, Scalar, Specializer};
use crate::tensor::{structural_ops, GForm, Matrix};
use crate::QMatrix;

use super::RepError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RKind {
    R,
    RPrime,
    RBreve,
    RBrevePrime,
}

/// `P` and `Q` for a fixed form, shared by every factor built from it.
#[derive(Clone, Debug)]
pub struct LocalOps {
    pub site: usize,
    pub p: QMatrix,
    pub q: QMatrix,
}

impl LocalOps {
    pub fn new(form: &GForm) -> LocalOps {
        let (p, q) = structural_ops(form);
        LocalOps { site: form.n(), p, q }
    }

    /// The two-leg factor of the given kind at spectral parameters `(u, v)`.
    pub fn factor<S: Specializer>(&self, sp: &S, kind: RKind, u: &Lin, v: &Lin) -> Result<Matrix<S::Out>, RepError> {
        let singular = |l: &Lin| RepError::SingularParameter(format!("{kind:?} factor: {} + {}·x vanishes", l.a, l.b));
        let minus_one = S::Out::from_rational(&-Rational::one());
        let (a, b, x) = match kind {
            RKind::R => (sp.lin(&u.sub(v)), minus_one, &self.p),
            RKind::RPrime => (sp.lin(&u.add(v).neg()), minus_one, &self.q),
            RKind::RBreve => {
                let d = u.sub(v);
                (S::Out::one(), -sp.inv_lin(&d).map_err(|_| singular(&d))?, &self.p)
            }
            RKind::RBrevePrime => {
                let s = u.add(v);
                (S::Out::one(), sp.inv_lin(&s).map_err(|_| singular(&s))?, &self.q)
            }
        };
        let n = x.rows();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let xv = &x[(i, j)];
                let mut e = if xv.is_zero() { S::Out::zero() } else { b.mul_ref(&S::Out::from_rational(xv)) };
                if i == j {
                    e += &a;
                }
                m[(i, j)] = e;
            }
        }
        Ok(m)
    }
}

/// `(R, R', R̆, R̆')` at numeric `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct YangMatrices {
    pub r: QMatrix,
    pub r_prime: QMatrix,
    pub r_breve: QMatrix,
    pub r_breve_prime: QMatrix,
}

/// All four two-leg matrices; `SingularParameter` when `u = v` or `u = -v`.
pub fn yang_matrices(form: &GForm, u: &Rational, v: &Rational) -> Result<YangMatrices, RepError> {
    let ops = LocalOps::new(form);
    let sp = AtPoint(Rational::zero());
    let (lu, lv) = (Lin::constant(u.clone()), Lin::constant(v.clone()));
    Ok(YangMatrices {
        r: ops.factor(&sp, RKind::R, &lu, &lv)?,
        r_prime: ops.factor(&sp, RKind::RPrime, &lu, &lv)?,
        r_breve: ops.factor(&sp, RKind::RBreve, &lu, &lv)?,
        r_breve_prime: ops.factor(&sp, RKind::RBrevePrime, &lu, &lv)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{FormKind, Slots};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn substitution_and_normalization() {
        let f = GForm::standard(FormKind::Orthogonal, 2).unwrap();
        let y = yang_matrices(&f, &q(1), &q(0)).unwrap();
        let id: QMatrix = Matrix::identity(4);
        let (p, qq) = structural_ops(&f);
        assert_eq!(y.r, id.sub(&p));
        let y = yang_matrices(&f, &Rational::new(7, 3), &Rational::new(-1, 2)).unwrap();
        assert_eq!(y.r_breve.scale(&Rational::new(17, 6)), y.r);
        assert_eq!(y.r_breve_prime.scale(&-Rational::new(11, 6)), y.r_prime);
        assert_eq!(y.r_breve_prime, id.add(&qq.scale(&Rational::new(6, 11))));
    }

    #[test]
    fn singular_points() {
        let f = GForm::standard(FormKind::Symplectic, 2).unwrap();
        assert!(matches!(yang_matrices(&f, &q(2), &q(2)), Err(RepError::SingularParameter(_))));
        assert!(matches!(yang_matrices(&f, &q(2), &q(-2)), Err(RepError::SingularParameter(_))));
    }

    #[test]
    fn yang_baxter_at_reference_point() {
        for f in [GForm::standard(FormKind::Orthogonal, 2).unwrap(), GForm::standard(FormKind::Orthogonal, 3).unwrap()] {
            let ops = LocalOps::new(&f);
            let sp = AtPoint(Rational::zero());
            let s = Slots::uniform(f.n(), 3);
            let u = [q(5), q(2), q(-1)].map(Lin::constant);
            let r = |a: usize, b: usize| s.embed(&ops.factor(&sp, RKind::R, &u[a], &u[b]).unwrap(), &[a, b]).unwrap();
            let lhs = r(0, 1).mul(&r(0, 2)).mul(&r(1, 2));
            let rhs = r(1, 2).mul(&r(0, 2)).mul(&r(0, 1));
            assert_eq!(lhs, rhs);
        }
    }
}
