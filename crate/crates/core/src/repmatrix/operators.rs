//! Factorized R-matrices between fusion modules, the S-matrices `S_V`, `S_Z`,
//! and the Yangian and twisted Yangian actions on `Z`.
//!
//! Every operator is assembled on the slot structure of the product of fusion
//! images: two-factor blocks are computed on `(C^N)^{⊗(m+n)}` and restricted
//! first, so the ambient space of the whole product is never formed.

use num_traits::{One, Zero};

use crate::exactnum::{Lin, Rational, Scalar, SeriesAtInfinity, Specializer, Symbolic};
use crate::tensor::{Basis, Matrix, Slots};
use crate::{QMatrix, RfMatrix};

use super::module::{FusedModule, Part};
use super::yang::{LocalOps, RKind};
use super::RepError;

/// A module placed at parameters `z_i + shift`.
#[derive(Clone, Copy, Debug)]
pub struct Placed<'a> {
    pub module: &'a FusedModule,
    pub shift: &'a Lin,
}

impl<'a> Placed<'a> {
    pub fn new(module: &'a FusedModule, shift: &'a Lin) -> Placed<'a> {
        Placed { module, shift }
    }
}

fn descending(kind: RKind) -> bool {
    matches!(kind, RKind::RPrime | RKind::RBrevePrime)
}

/// Ordered product of local factors acting on a slot structure, starting from the identity.
pub fn assemble<T: Scalar>(slots: &Slots, factors: &[(Matrix<T>, Vec<usize>)]) -> Result<Matrix<T>, RepError> {
    let mut m = Matrix::identity(slots.total());
    for (f, on) in factors {
        m = slots.apply_right(&m, f, on)?;
    }
    Ok(m)
}

/// `∏ op_k` on `(C^N)^{⊗legs}`, applied to the columns of `basis` and expressed in `basis`.
fn restricted_product<T: Scalar>(n: usize, legs: usize, factors: &[(Matrix<T>, [usize; 2])], basis: &Basis) -> Result<Matrix<T>, RepError> {
    let slots = Slots::uniform(n, legs);
    let mut v: Matrix<T> = basis.vectors().lift();
    for (f, on) in factors.iter().rev() {
        v = slots.apply_left(f, on, &v)?;
    }
    Ok(basis.coords(&v)?)
}

/// The block `X_{V_a, V_b}(w, z)` of the given kind, restricted to `V_a ⊗ V_b`. For `R` and `R̆`
/// boxes of `a` run downwards and boxes of `b` upwards; for the primed kinds both run downwards.
pub fn block<S: Specializer>(sp: &S, ops: &LocalOps, kind: RKind, a: &Part, sa: &Lin, b: &Part, sb: &Lin) -> Result<Matrix<S::Out>, RepError> {
    let (u, v) = (a.box_params(sa), b.box_params(sb));
    let (m, n) = (u.len(), v.len());
    let mut factors = Vec::with_capacity(m * n);
    for p in (0..m).rev() {
        let qs: Vec<usize> = if descending(kind) { (0..n).rev().collect() } else { (0..n).collect() };
        for q in qs {
            factors.push((ops.factor(sp, kind, &u[p], &v[q])?, [p, m + q]));
        }
    }
    restricted_product(ops.site, m + n, &factors, &Basis::tensor(&[a.basis(), b.basis()]))
}

/// The factor list of `X_{W,Z}` on the slots of `W ⊗ Z`: blocks `(i, j)` with `i` descending
/// and `j` ascending for `R`, `R̆`, both descending for `R'`, `R̆'`.
fn r_factors<S: Specializer>(sp: &S, w: Placed, z: Placed, kind: RKind) -> Result<Vec<(Matrix<S::Out>, Vec<usize>)>, RepError> {
    let ops = LocalOps::new(z.module.form());
    let (k, l) = (w.module.parts.len(), z.module.parts.len());
    let mut factors = Vec::with_capacity(k * l);
    for i in (0..k).rev() {
        let js: Vec<usize> = if descending(kind) { (0..l).rev().collect() } else { (0..l).collect() };
        for j in js {
            let b = block(sp, &ops, kind, &w.module.parts[i], w.shift, &z.module.parts[j], z.shift)?;
            factors.push((b, vec![i, k + j]));
        }
    }
    Ok(factors)
}

fn pair_slots(w: &FusedModule, z: &FusedModule) -> Slots {
    Slots::new([w.dims(), z.dims()].concat())
}

/// `X_{W,Z}` on the slots of `W ⊗ Z`.
pub fn r_factorized<S: Specializer>(sp: &S, w: Placed, z: Placed, kind: RKind) -> Result<Matrix<S::Out>, RepError> {
    assemble(&pair_slots(w.module, z.module), &r_factors(sp, w, z, kind)?)
}

/// `S_V(z) = ∏_{p=n..1} ∏_{q=p-1..1} R'_pq(v_p, v_q)` restricted to `V`.
pub fn s_elementary_part<S: Specializer>(sp: &S, ops: &LocalOps, part: &Part, shift: &Lin) -> Result<Matrix<S::Out>, RepError> {
    let v = part.box_params(shift);
    let n = v.len();
    let mut factors = Vec::new();
    for p in (0..n).rev() {
        for q in (0..p).rev() {
            factors.push((ops.factor(sp, RKind::RPrime, &v[p], &v[q])?, [p, q]));
        }
    }
    restricted_product(ops.site, n, &factors, part.basis())
}

/// `S_{V_ω}(z)` for a single factor at a rational point.
pub fn s_elementary(module: &FusedModule, factor: usize) -> Result<QMatrix, RepError> {
    let sp = crate::exactnum::AtPoint(Rational::zero());
    s_elementary_part(&sp, &LocalOps::new(module.form()), &module.parts[factor], &Lin::constant(Rational::zero()))
}

/// The factor list of `S_Z = ∏_{i=ℓ..1} ( S_{V_i}(z_i) ∏_{j=i-1..1} R'_{V_i,V_j}(z_i, z_j) )`.
fn s_fused_factors<S: Specializer>(sp: &S, z: Placed, offset: usize) -> Result<Vec<(Matrix<S::Out>, Vec<usize>)>, RepError> {
    let ops = LocalOps::new(z.module.form());
    let parts = &z.module.parts;
    let mut factors = Vec::new();
    for i in (0..parts.len()).rev() {
        factors.push((s_elementary_part(sp, &ops, &parts[i], z.shift)?, vec![offset + i]));
        for j in (0..i).rev() {
            factors.push((block(sp, &ops, RKind::RPrime, &parts[i], z.shift, &parts[j], z.shift)?, vec![offset + i, offset + j]));
        }
    }
    Ok(factors)
}

/// `S_Z` on the slots of `Z`.
pub fn s_fused<S: Specializer>(sp: &S, z: Placed) -> Result<Matrix<S::Out>, RepError> {
    assemble(&z.module.slots(), &s_fused_factors(sp, z, 0)?)
}

/// `S_Z` assembled by splitting `Z = A ⊗ B` recursively and applying `S_{A⊗B} = S_B R'_{B,A} S_A`,
/// splitting off the last factor when `right_first` and the first factor otherwise.
pub fn s_fused_bracketed<S: Specializer>(sp: &S, z: Placed, right_first: bool) -> Result<Matrix<S::Out>, RepError> {
    let ops = LocalOps::new(z.module.form());
    let slots = z.module.slots();
    let parts = &z.module.parts;
    fn rec<S: Specializer>(
        sp: &S,
        ops: &LocalOps,
        slots: &Slots,
        parts: &[Part],
        shift: &Lin,
        range: (usize, usize),
        right_first: bool,
    ) -> Result<Vec<(Matrix<S::Out>, Vec<usize>)>, RepError> {
        let (lo, hi) = range;
        if hi - lo == 1 {
            return Ok(vec![(s_elementary_part(sp, ops, &parts[lo], shift)?, vec![lo])]);
        }
        let mid = if right_first { hi - 1 } else { lo + 1 };
        let mut out = rec(sp, ops, slots, parts, shift, (mid, hi), right_first)?;
        for i in (mid..hi).rev() {
            for j in (lo..mid).rev() {
                out.push((block(sp, ops, RKind::RPrime, &parts[i], shift, &parts[j], shift)?, vec![i, j]));
            }
        }
        out.extend(rec(sp, ops, slots, parts, shift, (lo, mid), right_first)?);
        Ok(out)
    }
    if parts.is_empty() {
        return Ok(Matrix::identity(1));
    }
    let factors = rec(sp, &ops, &slots, parts, z.shift, (0, parts.len()), right_first)?;
    assemble(&slots, &factors)
}

/// The local factors of `S_{W,Z}` in order, with the slot structure of `W ⊗ Z` they act on.
pub fn s_wz_factors<S: Specializer>(sp: &S, w: Placed, z: Placed) -> Result<(Slots, Vec<(Matrix<S::Out>, Vec<usize>)>), RepError> {
    let mut factors = r_factors(sp, w, z, RKind::RBrevePrime)?;
    factors.extend(s_fused_factors(sp, w, 0)?);
    factors.extend(r_factors(sp, w, z, RKind::RBreve)?);
    Ok((pair_slots(w.module, z.module), factors))
}

/// `S_{W,Z} = R̆'_{W,Z} S_W R̆_{W,Z}` on the slots of `W ⊗ Z`.
pub fn s_wz<S: Specializer>(sp: &S, w: Placed, z: Placed) -> Result<Matrix<S::Out>, RepError> {
    let (slots, factors) = s_wz_factors(sp, w, z)?;
    assemble(&slots, &factors)
}

/// `T_Z(u) = ∏_q R̆_{0q}(u, v_q)` over all boxes in order, on `C^N ⊗ Z` with the auxiliary slot first.
pub fn t_matrix<S: Specializer>(sp: &S, z: Placed, u: &Lin) -> Result<Matrix<S::Out>, RepError> {
    let aux = FusedModule::auxiliary(z.module.form())?;
    r_factorized(sp, Placed::new(&aux, u), z, RKind::RBreve)
}

/// `X^t` on the auxiliary slot of `C^N ⊗ Z`: `(g ⊗ 1) X^{T_0} (g^{-1} ⊗ 1)`.
pub fn aux_transpose<T: Scalar>(z: &FusedModule, x: &Matrix<T>) -> Result<Matrix<T>, RepError> {
    let n = z.n();
    let slots = Slots::new(vec![n, z.dim()]);
    let pt = slots.partial_transpose(x, 0)?;
    let gl = slots.apply_left(&z.form().g().lift(), &[0], &pt)?;
    Ok(slots.apply_right(&gl, &z.form().g_inv().lift(), &[0])?)
}

/// `S_Z(u) = T^t(-u) T(u)` with `t` applied to the auxiliary slot.
pub fn s_matrix<S: Specializer>(sp: &S, z: Placed, u: &Lin) -> Result<Matrix<S::Out>, RepError> {
    let tu = t_matrix(sp, z, u)?;
    let tneg = aux_transpose(z.module, &t_matrix(sp, z, &u.neg())?)?;
    Ok(tneg.mul(&tu))
}

/// `S_Z(u) = R̆'_{0,Z}(u) T(u)`, where the descending product of `R̆'_{0q}(u, v_q)` replaces `T^t(-u)`.
pub fn s_matrix_via_prime<S: Specializer>(sp: &S, z: Placed, u: &Lin) -> Result<Matrix<S::Out>, RepError> {
    let aux = FusedModule::auxiliary(z.module.form())?;
    let w = Placed::new(&aux, u);
    Ok(r_factorized(sp, w, z, RKind::RBrevePrime)?.mul(&r_factorized(sp, w, z, RKind::RBreve)?))
}

/// `T_Z(u)` with entries in `Q(u)`; the `(i, j)` entry is the `dim Z` block at `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TAction {
    pub n: usize,
    pub dim: usize,
    pub matrix: RfMatrix,
}

impl TAction {
    pub fn entry(&self, i: usize, j: usize) -> RfMatrix {
        self.matrix.block(i * self.dim, j * self.dim, self.dim, self.dim)
    }
}

pub fn t_action(z: &FusedModule) -> Result<TAction, RepError> {
    let zero = Lin::constant(Rational::zero());
    let matrix = t_matrix(&Symbolic, Placed::new(z, &zero), &Lin::var())?;
    Ok(TAction { n: z.n(), dim: z.dim(), matrix })
}

/// `ρ(S^{(k)}_{ij})` for `0 ≤ k ≤ K`, indexed `[k][i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrices {
    pub k: usize,
    pub rho: Vec<Vec<Vec<QMatrix>>>,
}

impl GeneratorMatrices {
    /// The matrices with `1 ≤ k ≤ upto`, in `(k, i, j)` order.
    pub fn flat(&self, upto: usize) -> Vec<&QMatrix> {
        self.rho.iter().skip(1).take(upto).flat_map(|s| s.iter().flatten()).collect()
    }
}

/// Splits `Σ_k t^k Σ_{ij} e_ij ⊗ X^{(k)}_ij` into the coefficient blocks.
fn coefficient_blocks(m: &Matrix<crate::Laurent>, n: usize, dim: usize, k: usize) -> Result<Vec<Vec<Vec<QMatrix>>>, RepError> {
    let mut out = Vec::with_capacity(k + 1);
    for e in 0..=k as i64 {
        let c = m.try_map(|x| x.coeff(e).ok_or_else(|| RepError::Spec(format!("series precision exhausted at order {e}"))))?;
        out.push((0..n).map(|i| (0..n).map(|j| c.block(i * dim, j * dim, dim, dim)).collect()).collect());
    }
    Ok(out)
}

/// Expands `S_Z(u)` at `u = ∞` to order `K` and returns the generator images.
pub fn s_generators(z: &FusedModule, k: usize) -> Result<GeneratorMatrices, RepError> {
    let sp = SeriesAtInfinity { prec: k as i64 + 1 };
    let zero = Lin::constant(Rational::zero());
    let s = s_matrix(&sp, Placed::new(z, &zero), &Lin::var())?;
    Ok(GeneratorMatrices { k, rho: coefficient_blocks(&s, z.n(), z.dim(), k)? })
}

/// `ρ(T^{(k)}_{ij})` for `0 ≤ k ≤ K`, indexed `[k][i][j]`.
pub fn t_generators(z: &FusedModule, k: usize) -> Result<Vec<Vec<Vec<QMatrix>>>, RepError> {
    let sp = SeriesAtInfinity { prec: k as i64 + 1 };
    let zero = Lin::constant(Rational::zero());
    let t = t_matrix(&sp, Placed::new(z, &zero), &Lin::var())?;
    coefficient_blocks(&t, z.n(), z.dim(), k)
}

/// Whether the slice `k = 0` is `δ_ij · 1`.
pub fn is_trivial_slice(slice: &[Vec<QMatrix>]) -> bool {
    slice.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, m)| {
            let expect: QMatrix = if i == j { Matrix::identity(m.rows()) } else { Matrix::zeros(m.rows(), m.cols()) };
            *m == expect
        })
    })
}

/// Entrywise check that `m` is `c · 1` for some `c`, returning `c`.
pub fn scalar_value(m: &QMatrix) -> Option<Rational> {
    let c = if m.rows() == 0 { Rational::one() } else { m[(0, 0)].clone() };
    (*m == Matrix::identity(m.rows()).scale(&c)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{AtPoint, SeriesAt};
    use crate::repmatrix::module::FusedModuleSpec;
    use crate::repmatrix::yang::yang_matrices;
    use crate::tensor::linalg::inverse;
    use crate::tensor::ops::flip;
    use crate::tensor::{FormKind, GForm};

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn module(kind: FormKind, n: usize, text: &str) -> FusedModule {
        FusedModule::new(&FusedModuleSpec::parse(GForm::standard(kind, n).unwrap(), text).unwrap()).unwrap()
    }

    fn at0() -> AtPoint {
        AtPoint(Rational::zero())
    }

    fn c(x: Rational) -> Lin {
        Lin::constant(x)
    }

    #[test]
    fn single_boxes_reduce_to_yang() {
        let w = module(FormKind::Orthogonal, 2, "1:3");
        let z = module(FormKind::Orthogonal, 2, "1:1");
        let zero = c(Rational::zero());
        let r = r_factorized(&at0(), Placed::new(&w, &zero), Placed::new(&z, &zero), RKind::R).unwrap();
        let y = yang_matrices(w.form(), &Rational::from_integer(3), &Rational::from_integer(1)).unwrap();
        assert_eq!(r, y.r);
        let rp = r_factorized(&at0(), Placed::new(&w, &zero), Placed::new(&z, &zero), RKind::RPrime).unwrap();
        assert_eq!(rp, y.r_prime);
    }

    #[test]
    fn t_of_single_box() {
        let z = module(FormKind::Symplectic, 2, "1:1/3");
        let t = t_action(&z).unwrap();
        let u = q(5, 2);
        let at = t.matrix.try_map(|f| f.eval(&u)).unwrap();
        assert_eq!(at, yang_matrices(z.form(), &u, &q(1, 3)).unwrap().r_breve);
        let gens = t_generators(&z, 3).unwrap();
        assert!(is_trivial_slice(&gens[0]));
    }

    #[test]
    fn s_routes_agree() {
        for (kind, n, text) in [(FormKind::Symplectic, 2, "1:1/3;1:7/5"), (FormKind::Orthogonal, 3, "1,1:2/7"), (FormKind::Orthogonal, 2, "2:1/5;1:-3/4")] {
            let z = module(kind, n, text);
            let zero = c(Rational::zero());
            for u in [q(9, 2), q(-11, 3)] {
                let a = s_matrix(&at0(), Placed::new(&z, &zero), &c(u.clone())).unwrap();
                let b = s_matrix_via_prime(&at0(), Placed::new(&z, &zero), &c(u)).unwrap();
                assert_eq!(a, b, "{text}");
            }
            let g = s_generators(&z, 4).unwrap();
            assert!(is_trivial_slice(&g.rho[0]));
        }
    }

    #[test]
    fn s_fused_bracketings() {
        let zero = c(Rational::zero());
        for (kind, n, text) in [(FormKind::Symplectic, 2, "1:1/3;1:7/5"), (FormKind::Orthogonal, 2, "1:1/3;1:7/5;1,1:2/9"), (FormKind::Orthogonal, 3, "1:1/2;2:1/3;1:5/4")] {
            let z = module(kind, n, text);
            let flat = s_fused(&at0(), Placed::new(&z, &zero)).unwrap();
            assert_eq!(flat, s_fused_bracketed(&at0(), Placed::new(&z, &zero), true).unwrap(), "{text}");
            assert_eq!(flat, s_fused_bracketed(&at0(), Placed::new(&z, &zero), false).unwrap(), "{text}");
            assert!(inverse(&flat).is_some());
        }
        let z = module(FormKind::Orthogonal, 2, "2,1/1:1/3");
        assert_eq!(s_fused(&at0(), Placed::new(&z, &zero)).unwrap(), s_elementary(&z, 0).unwrap());
    }

    #[test]
    fn single_box_s_family() {
        // ℓ = 1: S_{W,Z}(ζ) = (1 + Q/(2z + ζ))(1 - P/ζ).
        let z = module(FormKind::Symplectic, 2, "1:1/3");
        let (zero, var) = (c(Rational::zero()), Lin::var());
        let s = s_wz(&Symbolic, Placed::new(&z, &var), Placed::new(&z, &zero)).unwrap();
        let zeta = q(3, 7);
        let at = s.try_map(|f| f.eval(&zeta)).unwrap();
        let y = yang_matrices(z.form(), &(&zeta + &q(1, 3)), &q(1, 3)).unwrap();
        assert_eq!(at, y.r_breve_prime.mul(&y.r_breve));
        let sr = s_wz(&SeriesAt { point: Rational::zero(), prec: 3 }, Placed::new(&z, &var), Placed::new(&z, &zero)).unwrap();
        assert_eq!(sr.data().iter().filter_map(|x| x.order()).min(), Some(-1));
    }

    #[test]
    fn vertical_domino_s_elementary_is_scalar() {
        let z = module(FormKind::Orthogonal, 2, "1,1:1");
        let s = s_elementary(&z, 0).unwrap();
        assert_eq!(s.rows(), 1);
        // R'(v_2, v_1) = -(v_1 + v_2 + Q) on the antisymmetric line: contents (0, -1), z = 1.
        let (_, qq) = crate::tensor::structural_ops(z.form());
        let id: QMatrix = Matrix::identity(4);
        let anti = id.sub(&flip(2));
        let rp = id.scale(&-Rational::from_integer(1)).sub(&qq);
        assert_eq!(rp.mul(&anti), anti.scale(&s[(0, 0)]));
    }
}
