//! Tensor product layouts and the action of local operators on them.
//!
//! A [`Slots`] value describes a space `V_1 ⊗ ... ⊗ V_m` with slot 0 the
//! slowest-varying index. Operators acting on a subset of slots are applied
//! directly without materializing the full embedding.

use crate::exactnum::Scalar;

use super::{Matrix, TensorError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slots {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

struct Layout {
    /// Offsets of the local multi-index, in local row-major order.
    local: Vec<usize>,
    /// Offsets of the complementary slots.
    rest: Vec<usize>,
}

impl Slots {
    pub fn new(dims: Vec<usize>) -> Slots {
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Slots { dims, strides }
    }

    /// `n` slots of dimension `site`.
    pub fn uniform(site: usize, n: usize) -> Slots {
        Slots::new(vec![site; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension of the local space spanned by the listed slots.
    pub fn local_dim(&self, on: &[usize]) -> usize {
        on.iter().map(|&s| self.dims[s]).product()
    }

    fn check(&self, on: &[usize]) -> Result<(), TensorError> {
        for (k, &s) in on.iter().enumerate() {
            if s >= self.dims.len() || on[..k].contains(&s) {
                return Err(TensorError::IndexOutOfRange { index: s, len: self.dims.len() });
            }
        }
        Ok(())
    }

    fn layout(&self, on: &[usize]) -> Layout {
        let mut local = vec![0usize];
        for &s in on {
            let mut next = Vec::with_capacity(local.len() * self.dims[s]);
            for &o in &local {
                for i in 0..self.dims[s] {
                    next.push(o + i * self.strides[s]);
                }
            }
            local = next;
        }
        let mut rest = vec![0usize];
        for s in 0..self.dims.len() {
            if on.contains(&s) {
                continue;
            }
            let mut next = Vec::with_capacity(rest.len() * self.dims[s]);
            for &o in &rest {
                for i in 0..self.dims[s] {
                    next.push(o + i * self.strides[s]);
                }
            }
            rest = next;
        }
        Layout { local, rest }
    }

    fn nonzeros<T: Scalar>(op: &Matrix<T>) -> Vec<Vec<(usize, &T)>> {
        (0..op.rows())
            .map(|a| op.row(a).iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect()
    }

    /// `(op on slots ⊗ identity elsewhere) · m`.
    pub fn apply_left<T: Scalar>(&self, op: &Matrix<T>, on: &[usize], m: &Matrix<T>) -> Result<Matrix<T>, TensorError> {
        self.check(on)?;
        let d = self.local_dim(on);
        if op.rows() != d || op.cols() != d || m.rows() != self.total() {
            return Err(TensorError::DimensionMismatch {
                expected: self.total(),
                found: m.rows(),
            });
        }
        let lay = self.layout(on);
        let nz = Self::nonzeros(op);
        let cols = m.cols();
        let mut out: Matrix<T> = Matrix::zeros(m.rows(), cols);
        for &r in &lay.rest {
            for (a, row_nz) in nz.iter().enumerate() {
                let orow = r + lay.local[a];
                for &(b, v) in row_nz {
                    let irow = r + lay.local[b];
                    for j in 0..cols {
                        let x = &m[(irow, j)];
                        if !x.is_zero() {
                            out[(orow, j)].add_prod(v, x);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `m · (op on slots ⊗ identity elsewhere)`.
    pub fn apply_right<T: Scalar>(&self, m: &Matrix<T>, op: &Matrix<T>, on: &[usize]) -> Result<Matrix<T>, TensorError> {
        self.check(on)?;
        let d = self.local_dim(on);
        if op.rows() != d || op.cols() != d || m.cols() != self.total() {
            return Err(TensorError::DimensionMismatch {
                expected: self.total(),
                found: m.cols(),
            });
        }
        let lay = self.layout(on);
        let nz = Self::nonzeros(op);
        let mut out: Matrix<T> = Matrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            let mrow = m.row(i);
            let orow = out.row_mut(i);
            for &r in &lay.rest {
                for (a, row_nz) in nz.iter().enumerate() {
                    let x = &mrow[r + lay.local[a]];
                    if x.is_zero() {
                        continue;
                    }
                    for &(b, v) in row_nz {
                        orow[r + lay.local[b]].add_prod(x, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The full matrix of `op` acting on the listed slots.
    pub fn embed<T: Scalar>(&self, op: &Matrix<T>, on: &[usize]) -> Result<Matrix<T>, TensorError> {
        self.apply_left(op, on, &Matrix::identity(self.total()))
    }

    /// Plain transposition of the indices belonging to one slot.
    pub fn partial_transpose<T: Scalar>(&self, m: &Matrix<T>, slot: usize) -> Result<Matrix<T>, TensorError> {
        self.check(&[slot])?;
        let n = self.total();
        if m.rows() != n || m.cols() != n {
            return Err(TensorError::DimensionMismatch { expected: n, found: m.rows() });
        }
        let (st, dim) = (self.strides[slot], self.dims[slot]);
        let digit = |x: usize| (x / st) % dim;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (di, dj) = (digit(i), digit(j));
                let si = i - di * st + dj * st;
                let sj = j - dj * st + di * st;
                out[(si, sj)] = m[(i, j)].clone();
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::QMatrix;

    fn rnd(n: usize, seed: i64) -> QMatrix {
        Matrix::from_fn(n, n, |i, j| Rational::new(((i * 7 + j * 3) as i64 * seed) % 11 - 5, 1 + (i + j) as i64 % 3))
    }

    #[test]
    fn apply_matches_kronecker_embedding() {
        let s = Slots::new(vec![2, 3, 2]);
        let op = rnd(4, 3);
        // op on slots (0, 2): compare with a Kronecker construction after permuting slot order.
        let e = s.embed(&op, &[0, 2]).unwrap();
        let id3: QMatrix = Matrix::identity(3);
        // Kronecker in order (0,2,1), then permute rows/cols back to (0,1,2).
        let k = op.kron(&id3);
        let idx = |a: usize, b: usize, c: usize| a * 6 + b * 2 + c;
        let kidx = |a: usize, b: usize, c: usize| a * 6 + c * 3 + b;
        for a in 0..2 {
            for b in 0..3 {
                for c in 0..2 {
                    for a2 in 0..2 {
                        for b2 in 0..3 {
                            for c2 in 0..2 {
                                assert_eq!(e[(idx(a, b, c), idx(a2, b2, c2))], k[(kidx(a, b, c), kidx(a2, b2, c2))]);
                            }
                        }
                    }
                }
            }
        }
        let m = rnd(12, 5);
        assert_eq!(s.apply_left(&op, &[0, 2], &m).unwrap(), e.mul(&m));
        assert_eq!(s.apply_right(&m, &op, &[0, 2]).unwrap(), m.mul(&e));
    }

    #[test]
    fn partial_transpose_of_product_state() {
        let s = Slots::new(vec![2, 3]);
        let a = rnd(2, 2);
        let b = rnd(3, 4);
        let pt = s.partial_transpose(&a.kron(&b), 0).unwrap();
        assert_eq!(pt, a.transpose().kron(&b));
    }

    #[test]
    fn out_of_range_slot() {
        let s = Slots::uniform(2, 2);
        let op: QMatrix = Matrix::identity(4);
        assert!(s.embed(&op, &[0, 2]).is_err());
        assert!(s.embed(&op, &[1, 1]).is_err());
    }
}
