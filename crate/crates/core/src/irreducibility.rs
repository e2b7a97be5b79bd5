//! Irreducibility of fusion modules over the twisted Yangian at rational points.
//!
//! Two independent engines are combined. The first takes `W` to be a copy of `Z`
//! with every parameter shifted by `ζ`, expands `S_{W,Z}(ζ)` at `ζ = 0`, and tests
//! whether the trace-contracted leading coefficient `Φ₀ : End(W) → End(Z)` is onto.
//! The second works with the generator images `ρ(S^{(k)}_ij)` directly: the
//! dimension of their commutant and of the algebra they generate.
//!
//! Ranks are first computed modulo a 61-bit prime. A full rank there is a proof of
//! full rank over `Q`; anything else falls back to exact arithmetic.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{Fp, FpPoly, Laurent, Lin, Rational, Scalar, SeriesAt, Symbolic};
use crate::repmatrix::operators::assemble;
use crate::repmatrix::{s_generators, s_wz, s_wz_factors, FusedModule, FusedModuleSpec, GeneratorMatrices, Placed, RepError, SpecEcho};
use crate::tensor::linalg::{nullspace, nullspace_field, rank, rank_blocked, rank_field, reduce_mod, rref};
use crate::tensor::{contraction_matrix, Matrix, RowSpace, Slots};
use crate::{FpMatrix, LsMatrix, QMatrix, RfMatrix};

pub const DEFAULT_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrrError {
    #[error("singular family: {0}")]
    SingularFamily(String),
    #[error("the first {depth} Laurent coefficients all contract to zero")]
    ExhaustedDepth { depth: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("generator truncation K = {0} is below 2")]
    TruncationTooSmall(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn lift_rep(e: RepError) -> IrrError {
    match e {
        RepError::SingularParameter(s) => IrrError::SingularFamily(s),
        RepError::Exact(x) => IrrError::SingularFamily(x.to_string()),
        other => IrrError::Rep(other),
    }
}

/// `S_{W,Z}(ζ)` with entries in `Q(ζ)`, on the slots of `W ⊗ Z`.
pub fn s_wz_family(z: &FusedModule) -> Result<RfMatrix, IrrError> {
    let (zero, var) = (Lin::constant(Rational::zero()), Lin::var());
    s_wz(&Symbolic, Placed::new(z, &var), Placed::new(z, &zero)).map_err(lift_rep)
}

/// `S_{W,Z}(ζ)` expanded at `ζ = 0` with absolute precision `prec` on every inverted factor.
pub fn s_wz_series(z: &FusedModule, prec: i64) -> Result<LsMatrix, IrrError> {
    let (zero, var) = (Lin::constant(Rational::zero()), Lin::var());
    s_wz(&SeriesAt { point: Rational::zero(), prec }, Placed::new(z, &var), Placed::new(z, &zero)).map_err(lift_rep)
}

/// `Φ₀` with the order of the coefficient it was taken from and the minimal order of the
/// matrix family itself. `map` is the exact `dim(Z)² x dim(W)²` matrix, rows `(z, z')` and
/// columns `(w, w')`; it is left out when a modular computation already proved full rank.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiOperator {
    pub order: i64,
    pub matrix_order: i64,
    pub rows: usize,
    pub rank: usize,
    pub map: Option<QMatrix>,
}

impl PhiOperator {
    fn exact(order: i64, matrix_order: i64, map: QMatrix) -> PhiOperator {
        PhiOperator { order, matrix_order, rows: map.rows(), rank: rank(&map), map: Some(map) }
    }
}

type Factors<T> = Vec<(Matrix<T>, Vec<usize>)>;

/// Valuation and leading coefficient of every local factor of `S_{W,Z}(ζ)`, or `None` if some
/// factor is not resolved at precision `prec`.
fn leading_factors(z: &FusedModule, prec: i64) -> Result<Option<(i64, Slots, Factors<Rational>)>, IrrError> {
    let (zero, var) = (Lin::constant(Rational::zero()), Lin::var());
    let sp = SeriesAt { point: Rational::zero(), prec };
    let (slots, factors) = s_wz_factors(&sp, Placed::new(z, &var), Placed::new(z, &zero)).map_err(lift_rep)?;
    let mut total = 0;
    let mut leads = Vec::with_capacity(factors.len());
    for (f, on) in factors {
        let known = f.data().iter().filter_map(Laurent::precision).min().unwrap_or(i64::MAX);
        let Some(v) = f.data().iter().filter_map(Laurent::order).min().filter(|&v| v < known) else {
            return Ok(None);
        };
        total += v;
        leads.push((f.map(|x| x.coeff(v).expect("within precision")), on));
    }
    Ok(Some((total, slots, leads)))
}

/// The coefficient of order `Σ v_k` of a product of series with valuations `v_k` is the product
/// of their leading coefficients. When that product is nonzero it is the leading coefficient of
/// `S_{W,Z}`, and `Φ₀` is a rearrangement of its entries.
fn phi_from_factors(z: &FusedModule, depth: usize) -> Result<Option<PhiOperator>, IrrError> {
    let dim_w = z.dim();
    let mut resolved = None;
    for prec in [depth as i64 + 1, 2 * z.boxes() as i64 + 2, 4 * z.boxes() as i64 + 4] {
        if let Some(x) = leading_factors(z, prec)? {
            resolved = Some(x);
            break;
        }
    }
    let Some((order, slots, leads)) = resolved else {
        return Ok(None);
    };
    let reduced: Option<Factors<Fp>> = leads.iter().map(|(f, on)| reduce_mod(f).map(|m| (m, on.clone()))).collect();
    if let Some(red) = reduced {
        let prod = assemble(&slots, &red).map_err(lift_rep)?;
        if !prod.is_zero() {
            let map = contraction_matrix(&prod, dim_w).map_err(RepError::from)?;
            let r = rank_blocked(&map);
            if r == map.rows() {
                return Ok(Some(PhiOperator { order, matrix_order: order, rows: r, rank: r, map: None }));
            }
        }
    }
    let prod = assemble(&slots, &leads).map_err(lift_rep)?;
    if prod.is_zero() {
        return Ok(None);
    }
    let map = contraction_matrix(&prod, dim_w).map_err(RepError::from)?;
    Ok(Some(PhiOperator::exact(order, order, map)))
}

/// Leading term of `A ↦ Tr_W((A ⊗ 1) S_{W,Z}(ζ))` at `ζ = 0`, inspecting at most `depth`
/// coefficients starting from the minimal order of the matrix family.
pub fn phi_leading(z: &FusedModule, depth: usize) -> Result<PhiOperator, IrrError> {
    if let Some(phi) = phi_from_factors(z, depth)? {
        return Ok(phi);
    }
    phi_from_series(z, depth)
}

/// [`phi_leading`] through the full expansion of `S_{W,Z}(ζ)`.
pub fn phi_from_series(z: &FusedModule, depth: usize) -> Result<PhiOperator, IrrError> {
    let dim_w = z.dim();
    let depth = depth.max(1);
    let mut prec = depth as i64 + 1;
    let mut level: Option<i64> = None;
    let mut order: Option<i64> = None;
    for _ in 0..64 {
        let m = s_wz_series(z, prec)?;
        let known = m.data().iter().filter_map(Laurent::precision).min().unwrap_or(i64::MAX);
        if order.is_none() {
            order = m.data().iter().filter_map(Laurent::order).min().filter(|&r| r < known);
        }
        let Some(r) = order else {
            prec += depth as i64 + 1;
            continue;
        };
        let mut lv = level.unwrap_or(r);
        while lv < r + depth as i64 {
            if lv >= known {
                break;
            }
            let c = m.map(|x| x.coeff(lv).expect("within precision"));
            let map = contraction_matrix(&c, dim_w).map_err(RepError::from)?;
            if !map.is_zero() {
                return Ok(PhiOperator::exact(lv, r, map));
            }
            lv += 1;
        }
        if lv >= r + depth as i64 {
            return Err(IrrError::ExhaustedDepth { depth });
        }
        level = Some(lv);
        prec += lv - known + 1;
    }
    Err(IrrError::SingularFamily("Laurent expansion did not resolve".into()))
}

/// `(rank, surjective)`; surjective iff the rank is `dim(Z)²`.
pub fn surjectivity(phi: &PhiOperator) -> (usize, bool) {
    (phi.rank, phi.rank == phi.rows)
}

fn vec_of<T: Clone>(m: &Matrix<T>) -> Vec<T> {
    m.data().to_vec()
}

/// Rows of the linear system `X B - B X = 0` in the unknowns `vec(X)`.
fn commutator_rows<T: Scalar>(b: &Matrix<T>) -> Vec<Vec<T>> {
    let d = b.rows();
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut row = vec![T::zero(); d * d];
            // (XB)_ij = Σ_k X_ik B_kj ; (BX)_ij = Σ_k B_ik X_kj
            for k in 0..d {
                row[i * d + k] += &b[(k, j)];
                row[k * d + j] -= &b[(i, k)];
            }
            rows.push(row);
        }
    }
    rows
}

fn random_combination(mats: &[FpMatrix], rng: &mut ChaCha8Rng) -> FpMatrix {
    let d = mats[0].rows();
    let mut out: FpMatrix = Matrix::zeros(d, d);
    for m in mats {
        let c = Fp::new(rng.gen::<u64>());
        for (o, x) in out.data_mut().iter_mut().zip(m.data()) {
            o.add_prod(&c, x);
        }
    }
    out
}

fn certificate_rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_f00d)
}

fn random_vector(d: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    Matrix::from_fn(d, 1, |_, _| Fp::new(rng.gen::<u64>()))
}

/// A random element `B` of the span, the minimal polynomial of a random vector under it, and
/// whether that vector is cyclic.
fn krylov_element(red: &[FpMatrix], rng: &mut ChaCha8Rng) -> (FpMatrix, FpPoly, bool) {
    let d = red[0].rows();
    let b = random_combination(red, rng);
    let mut krylov = vec![random_vector(d, rng)];
    for k in 0..d {
        let next = b.mul(&krylov[k]);
        krylov.push(next);
    }
    // The first m Krylov vectors are independent and the (m+1)-st is their combination.
    let aug = Matrix::from_fn(d, d + 1, |i, k| krylov[k][(i, 0)]);
    let (r, pivots) = rref(&aug);
    let m = pivots.len();
    let mut chi: Vec<Fp> = (0..m).map(|k| -r[(k, m)]).collect();
    chi.push(Fp::one());
    (b, FpPoly::new(chi), m == d)
}

/// A random element `B` of the span with a cyclic vector, and its characteristic polynomial.
fn cyclic_element(red: &[FpMatrix], rng: &mut ChaCha8Rng) -> Option<(FpMatrix, FpPoly)> {
    (0..4).map(|_| krylov_element(red, rng)).find(|k| k.2).map(|(b, chi, _)| (b, chi))
}

/// Commutant dimension of `{B, C}` for a cyclic `B`: everything commuting with `B` is a
/// polynomial in `B`, so only `d` unknowns remain.
fn cyclic_commutant(b: &FpMatrix, c: &FpMatrix) -> usize {
    let d = b.rows();
    let mut power: FpMatrix = Matrix::identity(d);
    let mut rows = Vec::with_capacity(d);
    for _ in 0..d {
        let comm = power.mul(c).sub(&c.mul(&power));
        rows.push(comm.data().to_vec());
        power = b.mul(&power);
    }
    d - rank_field(&Matrix::from_rows(rows))
}

/// Span of the orbit of `v` under `mats`.
fn spin(v: Vec<Fp>, mats: &[FpMatrix]) -> RowSpace<Fp> {
    let d = v.len();
    let mut space: RowSpace<Fp> = RowSpace::new(d);
    let mut queue = Vec::new();
    if space.insert(v.clone()) {
        queue.push(Matrix::from_vec(d, 1, v));
    }
    let mut next = 0;
    while next < queue.len() && space.dim() < d {
        let w = queue[next].clone();
        next += 1;
        for m in mats {
            let x = m.mul(&w);
            if space.insert(x.data().to_vec()) {
                queue.push(x);
            }
        }
    }
    space
}

enum KernelTest {
    Irreducible,
    Invariant(RowSpace<Fp>),
    Unknown,
}

/// The kernel test modulo `p` for `θ = B - λ`, `λ` an eigenvalue. With nullity one, a proper
/// submodule either meets `ker θ` or its annihilator meets `ker θᵀ`, so the module is
/// irreducible once a kernel vector of each spins up to the whole space. A vector that does
/// not spin up yields a proper invariant subspace instead.
fn kernel_test(red: &[FpMatrix], b: &FpMatrix, chi: &FpPoly, rng: &mut ChaCha8Rng) -> KernelTest {
    let d = b.rows();
    let Some(lambda) = chi.find_root(rng) else {
        return KernelTest::Unknown;
    };
    let theta = b.sub(&Matrix::<Fp>::identity(d).scale(&lambda));
    let k = nullspace_field(&theta);
    if k.cols() == 0 {
        return KernelTest::Unknown;
    }
    let orbit = spin(k.select_cols(&[0]).flatten(), red);
    if orbit.dim() < d {
        return KernelTest::Invariant(orbit);
    }
    let kt = nullspace_field(&theta.transpose());
    let transposed: Vec<FpMatrix> = red.iter().map(Matrix::transpose).collect();
    let dual = spin(kt.select_cols(&[0]).flatten(), &transposed);
    if dual.dim() < d {
        // The annihilator of an invariant subspace of the transposes is invariant.
        let ann = nullspace_field(&Matrix::from_rows(dual.rows().to_vec()));
        let mut space = RowSpace::new(d);
        for c in 0..ann.cols() {
            space.insert(ann.select_cols(&[c]).flatten());
        }
        return KernelTest::Invariant(space);
    }
    if k.cols() == 1 {
        KernelTest::Irreducible
    } else {
        KernelTest::Unknown
    }
}

/// Lifts a subspace found modulo `p` to the rationals and checks exactly that every matrix in
/// `mats` maps it into itself. Returns its dimension on success.
fn lift_invariant(space: &RowSpace<Fp>, mats: &[&QMatrix]) -> Option<usize> {
    let d = space.width();
    let mut exact: RowSpace<Rational> = RowSpace::new(d);
    for row in space.rows() {
        let lifted = row.iter().map(|x| x.reconstruct()).collect::<Option<Vec<Rational>>>()?;
        exact.insert(lifted);
    }
    if exact.dim() != space.dim() {
        return None;
    }
    for m in mats {
        for u in exact.rows() {
            let image = m.mul(&Matrix::from_vec(d, 1, u.clone())).flatten();
            if exact.reduce(image).iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
    }
    Some(exact.dim())
}

/// Modular certificate that `red` generates all of `End(F_p^d)`: the commutant is the scalars
/// and the module is irreducible, so the density theorem applies.
fn full_algebra_mod_p(red: &[FpMatrix], rng: &mut ChaCha8Rng) -> bool {
    for _ in 0..3 {
        let Some((b, chi)) = cyclic_element(red, rng) else {
            return false;
        };
        let c = random_combination(red, rng);
        if cyclic_commutant(&b, &c) == 1 && matches!(kernel_test(red, &b, &chi, rng), KernelTest::Irreducible) {
            return true;
        }
    }
    false
}

/// Dimension of the commutant of `mats`, all of size `d`.
pub fn commutant_of(mats: &[&QMatrix], d: usize) -> usize {
    if d <= 1 || mats.is_empty() {
        return if mats.is_empty() { d * d } else { 1 };
    }
    let full = d * d - 1;
    let reduced: Option<Vec<FpMatrix>> = mats.iter().map(|m| reduce_mod(m)).collect();
    if let Some(red) = &reduced {
        let mut rng = certificate_rng();
        if let Some((b, _)) = cyclic_element(red, &mut rng) {
            // The commutant of two elements of the span contains that of all generators, and
            // its dimension modulo p bounds the rational one from above.
            if cyclic_commutant(&b, &random_combination(red, &mut rng)) == 1 {
                return 1;
            }
        }
        // Rows of the system for random elements of the span lie in its row space,
        // so reaching rank d² - 1 proves the commutant is the scalars.
        let mut rng = certificate_rng();
        let mut space: RowSpace<Fp> = RowSpace::new(d * d);
        for _ in 0..3 {
            for row in commutator_rows(&random_combination(red, &mut rng)) {
                space.insert(row);
            }
            if space.dim() == full {
                return 1;
            }
        }
        // The full system modulo p; independent rows stay independent over Q.
        let mut space: RowSpace<Fp> = RowSpace::new(d * d);
        let mut chosen = Vec::new();
        for (g, m) in red.iter().enumerate() {
            for (r, row) in commutator_rows(m).into_iter().enumerate() {
                if space.insert(row) {
                    chosen.push((g, r));
                }
            }
            if space.dim() == full {
                return 1;
            }
        }
        // The kernel of the chosen rows has dimension d² - rank_p over Q; it is the commutant
        // exactly when each kernel vector commutes with every generator.
        let sub: Vec<Vec<Rational>> = chosen
            .iter()
            .map(|&(g, r)| commutator_rows(mats[g]).swap_remove(r))
            .collect();
        let k = nullspace(&Matrix::from_rows(sub));
        let all_commute = (0..k.cols()).all(|c| {
            let x = Matrix::from_vec(d, d, k.select_cols(&[c]).flatten());
            mats.iter().all(|m| x.mul(m) == m.mul(&x))
        });
        if all_commute {
            return k.cols();
        }
    }
    let mut space: RowSpace<Rational> = RowSpace::new(d * d);
    for m in mats {
        for row in commutator_rows(m) {
            space.insert(row);
        }
        if space.dim() == full {
            return 1;
        }
    }
    d * d - space.dim()
}

/// Commutant dimension of `ρ(S^{(k)}_ij)`, `1 ≤ k ≤ K`, and whether it agrees with `K - 1`.
pub fn commutant_dim(gens: &GeneratorMatrices, d: usize) -> (usize, bool) {
    let at_k = commutant_of(&gens.flat(gens.k), d);
    let at_prev = commutant_of(&gens.flat(gens.k - 1), d);
    (at_k, at_k == at_prev)
}

/// Exact closure of `span{1}` under left multiplication by `gens`, seeded with `seed`.
fn closure<T: Scalar>(gens: &[Matrix<T>], seed: Vec<Matrix<T>>, d: usize) -> Vec<Matrix<T>> {
    let mut space: RowSpace<T> = RowSpace::new(d * d);
    let mut words = Vec::new();
    for w in seed {
        if space.insert(vec_of(&w)) {
            words.push(w);
        }
    }
    let mut next = 0;
    while next < words.len() && space.dim() < d * d {
        let w = words[next].clone();
        next += 1;
        for g in gens {
            let p = g.mul(&w);
            if space.insert(vec_of(&p)) {
                words.push(p);
            }
        }
    }
    words
}

/// Dimension of the unital algebra generated by `mats`, all of size `d`.
pub fn algebra_of(mats: &[&QMatrix], d: usize) -> usize {
    let id: QMatrix = Matrix::identity(d);
    let reduced: Option<Vec<FpMatrix>> = mats.iter().map(|m| reduce_mod(m)).collect();
    if let Some(red) = reduced {
        // Reductions of words span a space no larger than the words over Q.
        let mut rng = certificate_rng();
        if d > 1 && full_algebra_mod_p(&red, &mut rng) {
            return d * d;
        }
        let combos: Vec<FpMatrix> = (0..2).map(|_| random_combination(&red, &mut rng)).collect();
        if closure(&combos, vec![Matrix::identity(d)], d).len() == d * d {
            return d * d;
        }
        if closure(&red, vec![Matrix::identity(d)], d).len() == d * d {
            return d * d;
        }
    }
    let mut span: RowSpace<Rational> = RowSpace::new(d * d);
    let gens: Vec<QMatrix> = mats.iter().filter(|m| span.insert(vec_of(m))).map(|m| (*m).clone()).collect();
    closure(&gens, vec![id], d).len()
}

/// Largest module dimension for which the generated algebra is measured by exact closure when
/// no modular certificate settles it.
pub const EXACT_ALGEBRA_DIM: usize = 20;

/// What is known about the unital algebra generated by a set of matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraStructure {
    /// Exact dimension, when certified or small enough to compute.
    pub dim: Option<usize>,
    /// Dimension of a proper invariant subspace verified over the rationals.
    pub invariant_subspace: Option<usize>,
}

impl AlgebraStructure {
    pub fn is_full(&self, d: usize) -> bool {
        self.dim == Some(d * d)
    }

    pub fn is_proper(&self, d: usize) -> bool {
        self.invariant_subspace.is_some() || self.dim.is_some_and(|a| a < d * d)
    }
}

/// Either a modular proof that `mats` generate `End(Q^d)`, or a proper invariant subspace found
/// modulo `p` and verified exactly; exact closure for small `d` otherwise.
pub fn algebra_structure(mats: &[&QMatrix], d: usize) -> AlgebraStructure {
    let mut out = AlgebraStructure { dim: None, invariant_subspace: None };
    let reduced: Option<Vec<FpMatrix>> = mats.iter().map(|m| reduce_mod(m)).collect();
    if let (Some(red), true) = (reduced, d > 1 && !mats.is_empty()) {
        let mut rng = certificate_rng();
        for _ in 0..4 {
            let (b, chi, cyclic) = krylov_element(&red, &mut rng);
            match kernel_test(&red, &b, &chi, &mut rng) {
                KernelTest::Irreducible if cyclic && cyclic_commutant(&b, &random_combination(&red, &mut rng)) == 1 => {
                    out.dim = Some(d * d);
                    return out;
                }
                KernelTest::Invariant(space) => {
                    if let Some(k) = lift_invariant(&space, mats) {
                        out.invariant_subspace = Some(k);
                        break;
                    }
                }
                _ => {}
            }
        }
    }
    if d <= EXACT_ALGEBRA_DIM {
        out.dim = Some(algebra_of(mats, d));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallKind {
    Single,
    Difference,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    HalfIntegers,
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallConstraint {
    pub kind: WallKind,
    /// 1-based factor indices.
    pub indices: Vec<usize>,
    pub lattice: Lattice,
    pub violated: bool,
}

impl std::fmt::Display for WallConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let i = &self.indices;
        match self.kind {
            WallKind::Single => write!(f, "z{} in Z/2", i[0]),
            WallKind::Difference => write!(f, "z{}-z{} in Z", i[0], i[1]),
            WallKind::Sum => write!(f, "z{}+z{} in Z", i[0], i[1]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSet {
    pub constraints: Vec<WallConstraint>,
}

impl WallSet {
    pub fn on_wall(&self) -> bool {
        self.constraints.iter().any(|c| c.violated)
    }

    pub fn violated(&self) -> Vec<String> {
        self.constraints.iter().filter(|c| c.violated).map(ToString::to_string).collect()
    }
}

/// `z_i ∈ ½Z` for every `i`, and `z_i - z_j ∈ Z`, `z_i + z_j ∈ Z` for every `i < j`.
pub fn walls(spec: &FusedModuleSpec) -> WallSet {
    let z = spec.params();
    let two = Rational::from_integer(2);
    let mut constraints = Vec::new();
    for (i, zi) in z.iter().enumerate() {
        constraints.push(WallConstraint {
            kind: WallKind::Single,
            indices: vec![i + 1],
            lattice: Lattice::HalfIntegers,
            violated: (zi * &two).is_integer(),
        });
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            constraints.push(WallConstraint {
                kind: WallKind::Difference,
                indices: vec![i + 1, j + 1],
                lattice: Lattice::Integers,
                violated: (&z[i] - &z[j]).is_integer(),
            });
            constraints.push(WallConstraint {
                kind: WallKind::Sum,
                indices: vec![i + 1, j + 1],
                lattice: Lattice::Integers,
                violated: (&z[i] + &z[j]).is_integer(),
            });
        }
    }
    WallSet { constraints }
}

const ODD_PRIMES: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// `l` parameters `a_i / p_i` with distinct odd primes `p_i ∤ a_i`, so no wall contains the point.
pub fn random_off_wall<R: Rng>(l: usize, rng: &mut R) -> Vec<Rational> {
    assert!(l <= ODD_PRIMES.len(), "too many factors for the prime table");
    let mut primes = ODD_PRIMES.to_vec();
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        let p = primes.swap_remove(rng.gen_range(0..primes.len()));
        let a = loop {
            let a = rng.gen_range(-3 * p..=3 * p);
            if a % p != 0 {
                break a;
            }
        };
        out.push(Rational::new(a, p));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Irreducible,
    Inconclusive,
    Reducible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub spec: SpecEcho,
    pub on_wall: Vec<String>,
    pub laurent_order: Option<i64>,
    pub phi_rank: Option<usize>,
    pub phi_surjective: bool,
    pub commutant_dim: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub stabilized: bool,
    pub verdict: Verdict,
    pub module_dim: usize,
    pub algebra_dim: Option<usize>,
    pub invariant_subspace: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_note: Option<String>,
}

/// Generator truncation used when none is given: `S(u)` has numerator and denominator of
/// degree at most `2n`, so `K = 2n` already captures every generator image.
pub fn default_k(z: &FusedModule) -> usize {
    2 * z.boxes() + 2
}

/// Runs both engines and combines them. Irreducible if `Φ₀` is onto or the generators span
/// `End(Z)` as an algebra; reducible if the commutant is larger than the scalars at a stabilized
/// truncation, or if the generators at a complete truncation have a proper invariant subspace
/// or span a proper algebra; inconclusive otherwise.
pub fn verdict(z: &FusedModule, k: Option<usize>, depth: usize) -> Result<IrreducibilityReport, IrrError> {
    let k = k.unwrap_or_else(|| default_k(z));
    if k < 2 {
        return Err(IrrError::TruncationTooSmall(k));
    }
    let d = z.dim();
    let wall = walls(&z.spec);
    let (laurent_order, phi_rank, phi_surjective, phi_note) = match phi_leading(z, depth) {
        Ok(phi) => {
            let (r, s) = surjectivity(&phi);
            (Some(phi.order), Some(r), s, None)
        }
        Err(e @ IrrError::ExhaustedDepth { .. }) => (None, None, false, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let gens = s_generators(z, k).map_err(lift_rep)?;
    let (commutant, stabilized) = commutant_dim(&gens, d);
    let algebra = algebra_structure(&gens.flat(k), d);
    let (full, proper) = (algebra.is_full(d), algebra.is_proper(d));
    if phi_surjective && (commutant != 1 || proper) {
        return Err(IrrError::InternalInconsistency(format!(
            "{}: Φ₀ is onto but the commutant has dimension {commutant} and the algebra is {algebra:?}",
            z.spec
        )));
    }
    if full && (commutant != 1 || proper) {
        return Err(IrrError::InternalInconsistency(format!("{}: full algebra with commutant {commutant}, {algebra:?}", z.spec)));
    }
    let exact_k = k >= 2 * z.boxes();
    let verdict = if phi_surjective || full {
        Verdict::Irreducible
    } else if (commutant > 1 && stabilized) || (exact_k && proper) {
        Verdict::Reducible
    } else {
        Verdict::Inconclusive
    };
    Ok(IrreducibilityReport {
        spec: SpecEcho::from(&z.spec),
        on_wall: wall.violated(),
        laurent_order,
        phi_rank,
        phi_surjective,
        commutant_dim: commutant,
        k,
        stabilized,
        verdict,
        module_dim: d,
        algebra_dim: algebra.dim,
        invariant_subspace: algebra.invariant_subspace,
        phi_note,
    })
}

/// Leading Laurent coefficient of `R̆_{W,Z}(ζ)` at `ζ = 0` and the scalar `h` with
/// `coefficient = h · P_{W,Z}`, if it is a multiple of the flip of the two copies.
pub fn r_breve_leading(z: &FusedModule) -> Result<(i64, QMatrix, Option<Rational>), IrrError> {
    use crate::repmatrix::{r_factorized, RKind};
    let (zero, var) = (Lin::constant(Rational::zero()), Lin::var());
    let boxes = z.boxes() as i64;
    let m = r_factorized(&SeriesAt { point: Rational::zero(), prec: boxes * boxes + 2 }, Placed::new(z, &var), Placed::new(z, &zero), RKind::RBreve)
        .map_err(lift_rep)?;
    let known = m.data().iter().filter_map(Laurent::precision).min().unwrap_or(i64::MAX);
    let r = m
        .data()
        .iter()
        .filter_map(Laurent::order)
        .min()
        .filter(|&r| r < known)
        .ok_or_else(|| IrrError::SingularFamily("leading coefficient beyond precision".into()))?;
    let c = m.map(|x| x.coeff(r).expect("within precision"));
    let d = z.dim();
    let flip: QMatrix = Matrix::from_fn(d * d, d * d, |a, b| if b == (a % d) * d + a / d { Rational::one() } else { Rational::zero() });
    let h = (0..d * d).map(|a| c[(a, (a % d) * d + a / d)].clone()).next();
    let h = h.filter(|h| c == flip.scale(h));
    Ok((r, c, h))
}
