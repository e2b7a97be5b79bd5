//! The bilinear form `g` that defines the transposition `A^t = g A^T g^-1`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{linalg, Matrix, TensorError};
use crate::exactnum::{Rational, Scalar};
use crate::QMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    #[serde(rename = "so")]
    Orthogonal,
    #[serde(rename = "sp")]
    Symplectic,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Orthogonal => "so",
            FormKind::Symplectic => "sp",
        })
    }
}

impl FromStr for FormKind {
    type Err = TensorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "so" | "orthogonal" => Ok(FormKind::Orthogonal),
            "sp" | "symplectic" => Ok(FormKind::Symplectic),
            other => Err(TensorError::InvalidForm(format!("unknown form kind {other:?}"))),
        }
    }
}

/// A non-degenerate symmetric (orthogonal) or skew-symmetric (symplectic) form on `C^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GForm {
    kind: FormKind,
    g: QMatrix,
    g_inv: QMatrix,
}

impl GForm {
    /// Identity for `so`, `J = sum_i (e_{i,i+N/2} - e_{i+N/2,i})` for `sp`.
    pub fn standard(kind: FormKind, n: usize) -> Result<GForm, TensorError> {
        let g = match kind {
            FormKind::Orthogonal => Matrix::identity(n),
            FormKind::Symplectic => {
                let h = n / 2;
                let mut g = Matrix::zeros(n, n);
                for i in 0..h {
                    g[(i, i + h)] = Rational::one();
                    g[(i + h, i)] = -Rational::one();
                }
                g
            }
        };
        GForm::custom(kind, g)
    }

    pub fn custom(kind: FormKind, g: QMatrix) -> Result<GForm, TensorError> {
        let n = g.rows();
        if n == 0 || !g.is_square() {
            return Err(TensorError::InvalidForm("g must be a non-empty square matrix".into()));
        }
        let gt = g.transpose();
        match kind {
            FormKind::Orthogonal if gt != g => {
                return Err(TensorError::InvalidForm("orthogonal form requires g^T = g".into()))
            }
            FormKind::Symplectic if n % 2 == 1 => {
                return Err(TensorError::InvalidForm("symplectic form requires even N".into()))
            }
            FormKind::Symplectic if gt != g.neg() => {
                return Err(TensorError::InvalidForm("symplectic form requires g^T = -g".into()))
            }
            _ => {}
        }
        let g_inv =
            linalg::inverse(&g).ok_or_else(|| TensorError::InvalidForm("g must be non-degenerate".into()))?;
        Ok(GForm { kind, g, g_inv })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// The site dimension `N`.
    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn g(&self) -> &QMatrix {
        &self.g
    }

    pub fn g_inv(&self) -> &QMatrix {
        &self.g_inv
    }

    /// `x^t = g x^T g^-1` for a single-site matrix.
    pub fn transpose<T: Scalar>(&self, x: &Matrix<T>) -> Matrix<T> {
        self.g.lift::<T>().mul(&x.transpose()).mul(&self.g_inv.lift())
    }

    /// True for the standard matrix of this kind and size.
    pub fn is_standard(&self) -> bool {
        GForm::standard(self.kind, self.n()).is_ok_and(|s| s == *self)
    }
}

impl fmt::Display for GForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n())?;
        if !self.is_standard() {
            write!(f, "[custom g]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn validation() {
        assert!(GForm::standard(FormKind::Symplectic, 3).is_err());
        assert!(GForm::standard(FormKind::Symplectic, 4).is_ok());
        let sym = Matrix::from_rows(vec![
            vec![Rational::zero(), Rational::one()],
            vec![Rational::one(), Rational::zero()],
        ]);
        assert!(GForm::custom(FormKind::Orthogonal, sym.clone()).is_ok());
        assert!(GForm::custom(FormKind::Symplectic, sym).is_err());
        let degenerate = Matrix::zeros(2, 2);
        assert!(GForm::custom(FormKind::Orthogonal, degenerate).is_err());
    }

    #[test]
    fn transpose_is_involutive_antihomomorphism() {
        let f = GForm::standard(FormKind::Symplectic, 2).unwrap();
        let a: QMatrix = Matrix::from_fn(2, 2, |i, j| Rational::from_integer((3 * i + j) as i64 - 1));
        let b: QMatrix = Matrix::from_fn(2, 2, |i, j| Rational::new((i * j) as i64 + 1, 2));
        assert_eq!(f.transpose(&f.transpose(&a)), a);
        assert_eq!(f.transpose(&a.mul(&b)), f.transpose(&b).mul(&f.transpose(&a)));
    }
}
