//! Structural operators on `(C^N)^{⊗n}`. Legs are numbered from 1, leg 1 being
//! the slowest-varying tensor index.

use num_traits::One;

use super::{GForm, Matrix, Slots, TensorError};
use crate::exactnum::{Rational, Scalar};
use crate::QMatrix;

/// The flip `P = sum e_ij ⊗ e_ji` on `C^N ⊗ C^N`.
pub fn flip(n: usize) -> QMatrix {
    let mut p = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p[(i * n + j, j * n + i)] = Rational::one();
        }
    }
    p
}

/// `Q = sum e^t_ij ⊗ e_ji` with `e^t = g e^T g^-1`.
pub fn q_operator(form: &GForm) -> QMatrix {
    let n = form.n();
    let mut q = Matrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e: QMatrix = Matrix::zeros(n, n);
            e[(i, j)] = Rational::one();
            let et = form.transpose(&e);
            let mut eji: QMatrix = Matrix::zeros(n, n);
            eji[(j, i)] = Rational::one();
            q = q.add(&et.kron(&eji));
        }
    }
    q
}

/// `(P, Q)` for the given form.
pub fn structural_ops(form: &GForm) -> (QMatrix, QMatrix) {
    (flip(form.n()), q_operator(form))
}

/// `op` acting on legs `a` (its first slot) and `b` (its second slot) of `n` legs.
pub fn embed_two_leg<T: Scalar>(op: &Matrix<T>, a: usize, b: usize, n: usize, site: usize) -> Result<Matrix<T>, TensorError> {
    if a == 0 || b == 0 || a > n || b > n || a == b {
        return Err(TensorError::IndexOutOfRange { index: a.max(b), len: n });
    }
    Slots::uniform(site, n).embed(op, &[a - 1, b - 1])
}

/// The leg permutation operator for `perm` (with `perm[k-1] = σ(k)`): the factor in leg `k`
/// is moved to leg `σ(k)`. Composition is covariant: `op(σ)·op(τ) = op(σ∘τ)`.
pub fn permutation_op(perm: &[usize], site: usize) -> Result<QMatrix, TensorError> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(TensorError::NotPermutation(perm.to_vec()));
        }
        seen[p - 1] = true;
    }
    let dim = site.pow(n as u32);
    let mut out = Matrix::zeros(dim, dim);
    let mut digits = vec![0usize; n];
    let mut target = vec![0usize; n];
    for src in 0..dim {
        let mut x = src;
        for k in (0..n).rev() {
            digits[k] = x % site;
            x /= site;
        }
        for k in 0..n {
            target[perm[k] - 1] = digits[k];
        }
        let dst = target.iter().fold(0, |acc, &d| acc * site + d);
        out[(dst, src)] = Rational::one();
    }
    Ok(out)
}

/// `σ̂_n`, the reversal of `n` legs.
pub fn reversal(n: usize, site: usize) -> QMatrix {
    let perm: Vec<usize> = (1..=n).rev().collect();
    permutation_op(&perm, site).expect("reversal is a permutation")
}

/// Applies `x ↦ g x^T g^-1` on each selected leg.
pub fn transpose_legs<T: Scalar>(a: &Matrix<T>, legs: &[usize], form: &GForm) -> Result<Matrix<T>, TensorError> {
    let site = form.n();
    let mut n = 0;
    while site.pow(n as u32) < a.rows() {
        n += 1;
    }
    if site.pow(n as u32) != a.rows() || !a.is_square() {
        return Err(TensorError::DimensionMismatch { expected: site.pow(n as u32), found: a.rows() });
    }
    let slots = Slots::uniform(site, n);
    let g: Matrix<T> = form.g().lift();
    let gi: Matrix<T> = form.g_inv().lift();
    let mut out = a.clone();
    for &leg in legs {
        if leg == 0 || leg > n {
            return Err(TensorError::IndexOutOfRange { index: leg, len: n });
        }
        out = slots.partial_transpose(&out, leg - 1)?;
        out = slots.apply_left(&g, &[leg - 1], &out)?;
        out = slots.apply_right(&out, &gi, &[leg - 1])?;
    }
    Ok(out)
}

/// `t^{(n)}`: the transposition on every leg.
pub fn transpose_all<T: Scalar>(a: &Matrix<T>, n: usize, form: &GForm) -> Result<Matrix<T>, TensorError> {
    let legs: Vec<usize> = (1..=n).collect();
    if n == 0 {
        return Ok(a.clone());
    }
    transpose_legs(a, &legs, form)
}
