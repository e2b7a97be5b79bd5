//! Partial traces over the first tensor factor of `W ⊗ Z`.

use super::{Matrix, TensorError};
use crate::exactnum::Scalar;

fn split(m: &Matrix<impl Scalar>, dim_w: usize) -> Result<usize, TensorError> {
    if dim_w == 0 || !m.is_square() || m.rows() % dim_w != 0 {
        return Err(TensorError::DimensionMismatch { expected: dim_w, found: m.rows() });
    }
    Ok(m.rows() / dim_w)
}

/// `Tr_W M` for `M` on `W ⊗ Z`.
pub fn partial_trace_first<T: Scalar>(m: &Matrix<T>, dim_w: usize) -> Result<Matrix<T>, TensorError> {
    let dz = split(m, dim_w)?;
    let mut out = Matrix::zeros(dz, dz);
    for w in 0..dim_w {
        for z in 0..dz {
            for z2 in 0..dz {
                out[(z, z2)] += &m[(w * dz + z, w * dz + z2)];
            }
        }
    }
    Ok(out)
}

/// `Tr_W((A ⊗ 1) M)`.
pub fn contract<T: Scalar>(m: &Matrix<T>, a: &Matrix<T>, dim_w: usize) -> Result<Matrix<T>, TensorError> {
    let dz = split(m, dim_w)?;
    if a.rows() != dim_w || a.cols() != dim_w {
        return Err(TensorError::DimensionMismatch { expected: dim_w, found: a.rows() });
    }
    let mut out: Matrix<T> = Matrix::zeros(dz, dz);
    for w in 0..dim_w {
        for w2 in 0..dim_w {
            let x = &a[(w, w2)];
            if x.is_zero() {
                continue;
            }
            for z in 0..dz {
                for z2 in 0..dz {
                    out[(z, z2)].add_prod(x, &m[(w2 * dz + z, w * dz + z2)]);
                }
            }
        }
    }
    Ok(out)
}

/// The matrix of `A ↦ Tr_W((A ⊗ 1) M)`, rows indexed by `(z, z')`, columns by `(w, w')`, row-major.
pub fn contraction_matrix<T: Scalar>(m: &Matrix<T>, dim_w: usize) -> Result<Matrix<T>, TensorError> {
    let dz = split(m, dim_w)?;
    let mut out = Matrix::zeros(dz * dz, dim_w * dim_w);
    for w in 0..dim_w {
        for w2 in 0..dim_w {
            for z in 0..dz {
                for z2 in 0..dz {
                    out[(z * dz + z2, w * dim_w + w2)] = m[(w2 * dz + z, w * dz + z2)].clone();
                }
            }
        }
    }
    Ok(out)
}
