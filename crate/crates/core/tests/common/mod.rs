//! Independent reference computations shared by the integration tests. Nothing here calls the
//! library routine it is used to check.

#![allow(dead_code)]

use num_traits::{One, Zero};
use yfusion::{QMatrix, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn identity(n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
}

pub fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (br, bc) = (b.rows(), b.cols());
    QMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| &a[(i / br, j / bc)] * &b[(i % br, j % bc)])
}

pub fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    assert_eq!(a.cols(), b.rows());
    QMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut s = Rational::zero();
        for k in 0..a.cols() {
            if !a[(i, k)].is_zero() && !b[(k, j)].is_zero() {
                s = &s + &(&a[(i, k)] * &b[(k, j)]);
            }
        }
        s
    })
}

pub fn scaled(a: &QMatrix, c: &Rational) -> QMatrix {
    QMatrix::from_fn(a.rows(), a.cols(), |i, j| &a[(i, j)] * c)
}

pub fn add(a: &QMatrix, b: &QMatrix) -> QMatrix {
    QMatrix::from_fn(a.rows(), a.cols(), |i, j| &a[(i, j)] + &b[(i, j)])
}

/// `e_ij` in `End(C^n)`.
pub fn unit(n: usize, i: usize, j: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |a, b| if a == i && b == j { Rational::one() } else { Rational::zero() })
}

/// `P = Σ e_ij ⊗ e_ji`.
pub fn flip(n: usize) -> QMatrix {
    let mut p = QMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            p = add(&p, &kron(&unit(n, i, j), &unit(n, j, i)));
        }
    }
    p
}

pub fn inverse(a: &QMatrix) -> QMatrix {
    let n = a.rows();
    let mut m: Vec<Vec<Rational>> = (0..n).map(|i| (0..2 * n).map(|j| if j < n { a[(i, j)].clone() } else if j - n == i { q(1) } else { q(0) }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("invertible");
        m.swap(c, p);
        let inv = &Rational::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    QMatrix::from_fn(n, n, |i, j| m[i][n + j].clone())
}

/// `Q = Σ e^t_ij ⊗ e_ji` with `e^t_ij = g e_ji g⁻¹`.
pub fn q_op(g: &QMatrix) -> QMatrix {
    let n = g.rows();
    let gi = inverse(g);
    let mut out = QMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let et = matmul(&matmul(g, &unit(n, j, i)), &gi);
            out = add(&out, &kron(&et, &unit(n, j, i)));
        }
    }
    out
}

/// Permutation of tensor legs: leg `k` of the input lands in leg `perm[k]`.
pub fn leg_permutation(perm: &[usize], n: usize) -> QMatrix {
    let legs = perm.len();
    let total = n.pow(legs as u32);
    let digits = |mut x: usize| {
        let mut d = vec![0; legs];
        for k in (0..legs).rev() {
            d[k] = x % n;
            x /= n;
        }
        d
    };
    let index = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * n + x);
    let mut out = QMatrix::zeros(total, total);
    for col in 0..total {
        let d = digits(col);
        let mut e = vec![0; legs];
        for k in 0..legs {
            e[perm[k]] = d[k];
        }
        out[(index(&e), col)] = q(1);
    }
    out
}

/// Exact rank by Gauss-Jordan elimination over the rationals.
pub fn rank(a: &QMatrix) -> usize {
    let mut m: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..a.cols() {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot[c];
                for (x, y) in m[i].iter_mut().zip(&pivot).skip(c) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// Commutant dimension of a set of square matrices, from the full commutator system.
pub fn commutant_dim(mats: &[&QMatrix]) -> usize {
    let d = mats[0].rows();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for b in mats {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![q(0); d * d];
                for k in 0..d {
                    row[i * d + k] = &row[i * d + k] + &b[(k, j)];
                    row[k * d + j] = &row[k * d + j] - &b[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    let m = QMatrix::from_fn(rows.len(), d * d, |i, j| rows[i][j].clone());
    d * d - rank(&m)
}

/// Boxes `(i, j)` of `λ/μ`, 1-based.
pub fn boxes(lambda: &[usize], mu: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &l) in lambda.iter().enumerate() {
        let m = mu.get(i).copied().unwrap_or(0);
        for j in m + 1..=l {
            out.push((i + 1, j));
        }
    }
    out
}

/// Contents `j - i` read column by column, each column top to bottom.
pub fn column_contents(lambda: &[usize], mu: &[usize]) -> Vec<i64> {
    let mut b = boxes(lambda, mu);
    b.sort_by_key(|&(i, j)| (j, i));
    b.iter().map(|&(i, j)| j as i64 - i as i64).collect()
}

/// Semistandard fillings with entries in `1..=n`, by brute force over all `n^boxes` fillings.
pub fn ssyt_brute(lambda: &[usize], mu: &[usize], n: usize) -> u64 {
    let b = boxes(lambda, mu);
    let pos = |i: usize, j: usize| b.iter().position(|&x| x == (i, j));
    let total = n.pow(b.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut fill = vec![0; b.len()];
        let mut c = code;
        for f in fill.iter_mut() {
            *f = c % n + 1;
            c /= n;
        }
        let ok = b.iter().enumerate().all(|(k, &(i, j))| {
            let right = pos(i, j + 1).is_none_or(|r| fill[k] <= fill[r]);
            let below = pos(i + 1, j).is_none_or(|r| fill[k] < fill[r]);
            right && below
        });
        count += u64::from(ok);
    }
    count
}

/// Whether a parameter tuple avoids `2 z_i ∈ Z`, `z_i - z_j ∈ Z` and `z_i + z_j ∈ Z`.
pub fn off_wall(z: &[Rational]) -> bool {
    let is_int = |x: &Rational| x.is_integer();
    z.iter().all(|x| !is_int(&(x * &q(2))))
        && (0..z.len()).all(|i| (i + 1..z.len()).all(|j| !is_int(&(&z[i] - &z[j])) && !is_int(&(&z[i] + &z[j]))))
}
