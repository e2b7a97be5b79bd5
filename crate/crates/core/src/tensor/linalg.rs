//! Exact rank, kernel and inverse.
//!
//! Rank and kernel over the rationals use fraction-free (Bareiss) elimination
//! on rows cleared of denominators. A reduction modulo a large prime gives a
//! cheap lower bound for the rank; when that bound already equals the maximal
//! possible rank it is the exact answer and the rational elimination is skipped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Matrix;
use crate::exactnum::{Fp, Rational, Scalar};
use crate::QMatrix;

/// Row echelon form with integer entries; `rows.len()` is the rank.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

fn clear_denominators(row: &mut [Rational]) {
    let mut l = BigInt::one();
    for x in row.iter() {
        if !x.is_integer() {
            l = l.lcm(&x.denom());
        }
    }
    if !l.is_one() {
        let f = Rational::from_bigint(l);
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &f;
            }
        }
    }
}

/// Fraction-free elimination; pivots are chosen leftmost column first, topmost row first.
pub fn bareiss(m: &QMatrix) -> Echelon {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..nr).map(|i| m.row(i).to_vec()).collect();
    for row in a.iter_mut() {
        clear_denominators(row);
    }
    let mut prev = Rational::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let piv = &prow[c];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..nc {
                let mut v = if row[j].is_zero() { Rational::zero() } else { piv * &row[j] };
                if !f.is_zero() && !prow[j].is_zero() {
                    v -= &(&f * &prow[j]);
                }
                if !v.is_zero() && !prev.is_one() {
                    v = &v / &prev;
                }
                row[j] = v;
            }
            row[c] = Rational::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Reduction modulo the fixed prime; `None` if some denominator is divisible by it.
pub fn reduce_mod(m: &QMatrix) -> Option<Matrix<Fp>> {
    m.try_map(|x| Fp::try_from_rational(x).ok_or(())).ok()
}

/// Gauss-Jordan reduction over a field. Returns the reduced rows and pivot columns.
pub fn rref<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..nc {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..nc {
            a[(r, j)] = a[(r, j)].mul_ref(&inv);
        }
        let prow: Vec<T> = a.row(r).to_vec();
        for i in 0..nr {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            let row = a.row_mut(i);
            for j in c..nc {
                if !prow[j].is_zero() {
                    let t = f.mul_ref(&prow[j]);
                    row[j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank over a field by forward elimination, touching only the nonzero entries of each pivot row.
pub fn rank_field<T: Scalar>(m: &Matrix<T>) -> usize {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..nc {
                let t = std::mem::replace(&mut a[(p, j)], T::zero());
                a[(p, j)] = std::mem::replace(&mut a[(r, j)], t);
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        let prow: Vec<(usize, T)> = (c + 1..nc)
            .filter(|&j| !a[(r, j)].is_zero())
            .map(|j| (j, a[(r, j)].mul_ref(&inv)))
            .collect();
        for i in r + 1..nr {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut a[(i, c)], T::zero());
            let row = a.row_mut(i);
            for (j, v) in &prow {
                let t = f.mul_ref(v);
                row[*j] -= &t;
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis (as columns) over a field.
pub fn nullspace_field<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let (a, pivots) = rref(m);
    let nc = m.cols();
    let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(nc, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            out[(p, k)] = -a[(i, f)].clone();
        }
    }
    out
}

/// Rank modulo the prime (a lower bound for the rational rank), if the reduction exists.
pub fn rank_mod(m: &QMatrix) -> Option<usize> {
    reduce_mod(m).map(|x| rank_field(&x))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Row and column sets of the connected components of the nonzero pattern, skipping zero rows
/// and columns. The rank of `m` is the sum of the ranks of these blocks.
pub fn sparse_blocks<T: Scalar>(m: &Matrix<T>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..nr + nc).collect();
    let mut used = vec![false; nr + nc];
    for i in 0..nr {
        for (j, x) in m.row(i).iter().enumerate() {
            if !x.is_zero() {
                used[i] = true;
                used[nr + j] = true;
                let (a, b) = (find(&mut parent, i), find(&mut parent, nr + j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut index = vec![usize::MAX; nr + nc];
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for k in 0..nr + nc {
        if !used[k] {
            continue;
        }
        let root = find(&mut parent, k);
        if index[root] == usize::MAX {
            index[root] = blocks.len();
            blocks.push((Vec::new(), Vec::new()));
        }
        let b = &mut blocks[index[root]];
        if k < nr {
            b.0.push(k);
        } else {
            b.1.push(k - nr);
        }
    }
    blocks
}

fn submatrix<T: Scalar>(m: &Matrix<T>, rows: &[usize], cols: &[usize]) -> Matrix<T> {
    Matrix::from_fn(rows.len(), cols.len(), |a, b| m[(rows[a], cols[b])].clone())
}

/// Rank over a field, eliminating each independent block of the nonzero pattern separately.
pub fn rank_blocked<T: Scalar>(m: &Matrix<T>) -> usize {
    sparse_blocks(m).iter().map(|(r, c)| rank_field(&submatrix(m, r, c))).sum()
}

/// Exact rank over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    let blocks = sparse_blocks(m);
    if blocks.len() > 1 {
        return blocks.iter().map(|(r, c)| rank(&submatrix(m, r, c))).sum();
    }
    let full = m.rows().min(m.cols());
    if rank_mod(m) == Some(full) {
        return full;
    }
    rank_by_kernel(m)
        .or_else(|| rank_by_kernel(&m.transpose()))
        .unwrap_or_else(|| bareiss(m).rows.len())
}

/// Lifts the kernel found modulo `p` by rational reconstruction. If every lifted vector is an
/// exact kernel vector, the rank modulo `p` is also an upper bound, hence the rational rank.
fn rank_by_kernel(m: &QMatrix) -> Option<usize> {
    let k = nullspace_field(&reduce_mod(m)?);
    for c in 0..k.cols() {
        let v = (0..k.rows()).map(|i| k[(i, c)].reconstruct()).collect::<Option<Vec<Rational>>>()?;
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        for i in 0..m.rows() {
            let row = m.row(i);
            let mut acc = Rational::zero();
            for &j in &support {
                if !row[j].is_zero() {
                    acc.add_prod(&row[j], &v[j]);
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
    }
    Some(m.cols() - k.cols())
}

/// Kernel basis over the rationals, one vector per non-pivot column.
pub fn nullspace(m: &QMatrix) -> QMatrix {
    let e = bareiss(m);
    let nc = m.cols();
    let free: Vec<usize> = (0..nc).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Matrix::zeros(nc, free.len());
    for (k, &f) in free.iter().enumerate() {
        let mut x = vec![Rational::zero(); nc];
        x[f] = Rational::one();
        for i in (0..e.pivots.len()).rev() {
            let p = e.pivots[i];
            let row = &e.rows[i];
            let mut s = Rational::zero();
            for j in p + 1..nc {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += &(&row[j] * &x[j]);
                }
            }
            x[p] = -(s / &row[p]);
        }
        for (i, v) in x.into_iter().enumerate() {
            out[(i, k)] = v;
        }
    }
    out
}

/// Inverse over a field, `None` when singular.
pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Matrix::hstack(&[m.clone(), Matrix::identity(n)]);
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.block(0, n, n, n))
}

/// A row space grown one vector at a time, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace<T> {
    width: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> RowSpace<T> {
    pub fn new(width: usize) -> RowSpace<T> {
        RowSpace { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The basis in reduced echelon form, pivots normalized to one.
    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows; the remainder is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<T>) -> Vec<T> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    let t = f.mul_ref(r);
                    *x -= &t;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.width, "row width");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            *x = x.mul_ref(&inv);
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    let t = f.mul_ref(r);
                    *x -= &t;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
    }

    #[test]
    fn bareiss_rank_and_pivots() {
        let a = m(&[&[0, 2, 4], &[0, 1, 2], &[3, 0, 1]]);
        let e = bareiss(&a);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank_field(&a), 2);
    }

    #[test]
    fn nullspace_annihilates() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]).scale(&Rational::new(1, 3));
        let k = nullspace(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert_eq!(nullspace_field(&a).cols(), 2);
        assert!(a.mul(&nullspace_field(&a)).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]).scale(&Rational::new(1, 5));
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(rank_mod(&a), Some(1));
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn blocked_rank() {
        let q = |x: i64| Rational::from_integer(x);
        let m = Matrix::from_rows(vec![
            vec![q(1), q(0), q(2), q(0)],
            vec![q(0), q(3), q(0), q(0)],
            vec![q(2), q(0), q(4), q(0)],
            vec![q(0), q(0), q(0), q(0)],
        ]);
        let blocks = sparse_blocks(&m);
        assert_eq!(blocks, vec![(vec![0, 2], vec![0, 2]), (vec![1], vec![1])]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_blocked(&m), 2);
    }

    #[test]
    fn row_space_growth() {
        let q = |x: i64| Rational::from_integer(x);
        let mut s = RowSpace::new(3);
        assert!(s.insert(vec![q(0), q(2), q(4)]));
        assert!(s.insert(vec![q(1), q(1), q(0)]));
        assert!(!s.insert(vec![q(2), q(5), q(6)]));
        assert!(s.reduce(vec![q(3), q(1), q(-4)]).iter().all(|x| x.is_zero()));
        assert!(s.insert(vec![q(0), q(0), q(1)]));
        assert_eq!(s.dim(), 3);
    }
}
