//! Subspaces given by explicit bases, and matrices of operators restricted to them.

use super::linalg::{bareiss, inverse};
use super::{Matrix, TensorError};
use crate::exactnum::Scalar;
use crate::QMatrix;

/// Linearly independent column vectors in an ambient coordinate space.
///
/// Coordinates are recovered from a fixed set of pivot rows on which the basis
/// matrix is invertible; every extraction is followed by a membership check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    vectors: QMatrix,
    pivot_rows: Vec<usize>,
    sel_inv: QMatrix,
}

impl Basis {
    /// Fails with `LinearlyDependent` unless the columns are independent.
    pub fn new(vectors: QMatrix) -> Result<Basis, TensorError> {
        let e = bareiss(&vectors.transpose());
        if e.pivots.len() != vectors.cols() {
            return Err(TensorError::LinearlyDependent);
        }
        let sel = vectors.select_rows(&e.pivots);
        let sel_inv = inverse(&sel).ok_or(TensorError::LinearlyDependent)?;
        Ok(Basis { vectors, pivot_rows: e.pivots, sel_inv })
    }

    pub fn standard(n: usize) -> Basis {
        Basis { vectors: Matrix::identity(n), pivot_rows: (0..n).collect(), sel_inv: Matrix::identity(n) }
    }

    pub fn empty(ambient: usize) -> Basis {
        Basis { vectors: Matrix::zeros(ambient, 0), pivot_rows: Vec::new(), sel_inv: Matrix::zeros(0, 0) }
    }

    pub fn dim(&self) -> usize {
        self.vectors.cols()
    }

    pub fn ambient(&self) -> usize {
        self.vectors.rows()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn vectors(&self) -> &QMatrix {
        &self.vectors
    }

    /// Coordinates of the columns of `v`; `NotInvariant` if some column leaves the span.
    pub fn coords<T: Scalar>(&self, v: &Matrix<T>) -> Result<Matrix<T>, TensorError> {
        if v.rows() != self.ambient() {
            return Err(TensorError::DimensionMismatch { expected: self.ambient(), found: v.rows() });
        }
        let x = self.sel_inv.lift::<T>().mul(&v.select_rows(&self.pivot_rows));
        if !self.vectors.lift::<T>().mul(&x).agrees_with(v) {
            return Err(TensorError::NotInvariant);
        }
        Ok(x)
    }

    /// The product basis of a tensor product, first factor slowest.
    pub fn tensor(parts: &[&Basis]) -> Basis {
        let mut out = Basis::standard(1);
        for p in parts {
            let amb = p.ambient();
            let pivot_rows = out
                .pivot_rows
                .iter()
                .flat_map(|&a| p.pivot_rows.iter().map(move |&b| a * amb + b))
                .collect();
            out = Basis {
                vectors: out.vectors.kron(&p.vectors),
                pivot_rows,
                sel_inv: out.sel_inv.kron(&p.sel_inv),
            };
        }
        out
    }
}

/// The matrix of `a` from `domain` to `codomain`.
pub fn restrict<T: Scalar>(a: &Matrix<T>, domain: &Basis, codomain: &Basis) -> Result<Matrix<T>, TensorError> {
    if a.cols() != domain.ambient() {
        return Err(TensorError::DimensionMismatch { expected: domain.ambient(), found: a.cols() });
    }
    codomain.coords(&a.mul(&domain.vectors.lift()))
}

/// Basis of the column space made of the pivot columns of `a`.
pub fn image_basis(a: &QMatrix) -> Basis {
    let e = bareiss(a);
    let vectors = a.select_cols(&e.pivots);
    Basis::new(vectors).expect("pivot columns are independent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::tensor::ops::flip;

    #[test]
    fn symmetric_and_antisymmetric_parts() {
        let p = flip(2);
        let id: QMatrix = Matrix::identity(4);
        let anti = image_basis(&id.sub(&p));
        let sym = image_basis(&id.add(&p));
        assert_eq!(anti.dim(), 1);
        assert_eq!(sym.dim(), 3);
        assert_eq!(image_basis(&id).dim(), 4);
        let r = restrict(&p, &anti, &anti).unwrap();
        assert_eq!(r, Matrix::from_rows(vec![vec![Rational::from_integer(-1)]]));
        assert_eq!(restrict(&id, &sym, &sym).unwrap(), Matrix::identity(3));
        assert!(matches!(restrict(&p, &anti, &sym), Err(TensorError::NotInvariant)));
    }

    #[test]
    fn tensor_basis_coordinates() {
        let p = flip(2);
        let id: QMatrix = Matrix::identity(4);
        let sym = image_basis(&id.add(&p));
        let anti = image_basis(&id.sub(&p));
        let t = Basis::tensor(&[&sym, &anti]);
        assert_eq!(t.dim(), 3);
        let direct = Basis::new(sym.vectors().kron(anti.vectors())).unwrap();
        let v = direct.vectors().select_cols(&[1]);
        assert_eq!(t.coords(&v).unwrap(), direct.coords(&v).unwrap());
        assert!(matches!(Basis::new(Matrix::from_rows(vec![vec![Rational::from_integer(1), Rational::from_integer(2)]])), Err(TensorError::LinearlyDependent)));
    }
}
