//! The fusion operator `F_ω`: the limit at the content point of the ordered
//! product of breve R-matrices over pairs of boxes, approached along a line
//! `v_p = c_p + s_{col(p)} ε`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagrams::{column_tableau, sharp, ssyt_count, DiagramError, SkewDiagram};
use crate::exactnum::{AtPoint, Laurent, Lin, Rational, SeriesAt, Specializer, Symbolic};
use crate::repmatrix::yang::{LocalOps, RKind};
use crate::repmatrix::RepError;
use crate::tensor::{image_basis, reversal, transpose_all, Basis, FormKind, GForm, Matrix, Slots, TensorError};
use crate::QMatrix;

pub const DEFAULT_BOX_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("fusion product has a pole at the content point of {0}")]
    LimitSingular(String),
    #[error("slopes must be distinct: {0:?}")]
    SlopeCollision(Vec<i64>),
    #[error("need one positive slope per column ({columns} columns), got {given:?}")]
    InvalidSlopes { columns: usize, given: Vec<i64> },
    #[error("{boxes} boxes exceed the cap of {cap}")]
    TooManyBoxes { boxes: usize, cap: usize },
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl From<RepError> for FusionError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::SingularParameter(s) => FusionError::SingularParameter(s),
            RepError::Fusion(f) => f,
            other => FusionError::SingularParameter(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionOperator {
    pub diagram: SkewDiagram,
    pub n: usize,
    pub matrix: QMatrix,
    pub basis: Basis,
}

impl FusionOperator {
    pub fn legs(&self) -> usize {
        self.diagram.size()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// How the limit is taken. The default uses slope `j` on column `j` and lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionOptions {
    pub slopes: Option<Vec<i64>>,
    /// Multiply the pair factors in reverse lexicographic order.
    pub reversed: bool,
    pub box_cap: usize,
}

impl Default for FusionOptions {
    fn default() -> Self {
        FusionOptions { slopes: None, reversed: false, box_cap: DEFAULT_BOX_CAP }
    }
}

fn check_slopes(w: &SkewDiagram, slopes: Option<&[i64]>) -> Result<Vec<i64>, FusionError> {
    let columns = w.lambda().first().copied().unwrap_or(0);
    let Some(s) = slopes else {
        return Ok((1..=columns as i64).collect());
    };
    if s.len() != columns || s.iter().any(|&x| x <= 0) {
        return Err(FusionError::InvalidSlopes { columns, given: s.to_vec() });
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(FusionError::SlopeCollision(s.to_vec()));
    }
    Ok(s.to_vec())
}

fn pairs(n: usize, reversed: bool) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    if reversed {
        out.reverse();
    }
    out
}

/// Box parameters along the approach line, as affine functions of `ε`.
fn path(w: &SkewDiagram, slopes: &[i64]) -> Vec<Lin> {
    let t = column_tableau(w);
    t.boxes
        .iter()
        .zip(&t.contents)
        .map(|(&(_, j), &c)| Lin::new(Rational::from_integer(c), Rational::from_integer(slopes[j - 1])))
        .collect()
}

/// `∏ R̆_pq(v_p, v_q)` over the chosen pair order, with entries produced by `sp`.
pub fn fusion_product<S: Specializer>(sp: &S, w: &SkewDiagram, n: usize, slopes: &[i64], reversed: bool) -> Result<Matrix<S::Out>, FusionError> {
    let form = GForm::standard(FormKind::Orthogonal, n)?;
    let ops = LocalOps::new(&form);
    let v = path(w, slopes);
    let legs = v.len();
    let slots = Slots::uniform(n, legs);
    let mut m: Matrix<S::Out> = Matrix::identity(slots.total());
    for (p, q) in pairs(legs, reversed) {
        let f = ops.factor(sp, RKind::RBreve, &v[p], &v[q])?;
        m = slots.apply_right(&m, &f, &[p, q])?;
    }
    Ok(m)
}

fn limit_from_series(m: &Matrix<Laurent>) -> Result<Option<QMatrix>, ()> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = &m[(i, j)];
            if e.order().is_some_and(|k| k < 0) {
                return Err(());
            }
            match e.coeff(0) {
                Some(c) => out[(i, j)] = c,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

/// The limit at `ε = 0` computed by truncated Laurent series in `ε`.
fn limit_series(w: &SkewDiagram, n: usize, slopes: &[i64], reversed: bool) -> Result<QMatrix, FusionError> {
    let contents = column_tableau(w).contents;
    let poles = pairs(contents.len(), false).iter().filter(|&&(p, q)| contents[p] == contents[q]).count() as i64;
    let mut prec = poles + 1;
    loop {
        let m = fusion_product(&SeriesAt { point: Rational::zero(), prec }, w, n, slopes, reversed)?;
        match limit_from_series(&m) {
            Ok(Some(f)) => return Ok(f),
            Ok(None) => prec += poles.max(1),
            Err(()) => return Err(FusionError::LimitSingular(w.to_string())),
        }
    }
}

/// The same limit through exact rational functions of `ε`; slower, used as a cross-check.
pub fn fusion_limit_symbolic(w: &SkewDiagram, n: usize, slopes: Option<&[i64]>) -> Result<QMatrix, FusionError> {
    let slopes = check_slopes(w, slopes)?;
    let m = fusion_product(&Symbolic, w, n, &slopes, false)?;
    m.try_map(|f| f.eval(&Rational::zero())).map_err(|_| FusionError::LimitSingular(w.to_string()))
}

fn build(w: &SkewDiagram, n: usize, opts: &FusionOptions) -> Result<FusionOperator, FusionError> {
    let slopes = check_slopes(w, opts.slopes.as_deref())?;
    let matrix = limit_series(w, n, &slopes, opts.reversed)?;
    let basis = image_basis(&matrix);
    Ok(FusionOperator { diagram: w.clone(), n, matrix, basis })
}

type Cache = RwLock<HashMap<(SkewDiagram, usize), Arc<FusionOperator>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `F_ω` with the given options. Results for the default path are cached per `(ω, N)`.
pub fn fusion_operator_with(w: &SkewDiagram, n: usize, opts: &FusionOptions) -> Result<Arc<FusionOperator>, FusionError> {
    if w.size() > opts.box_cap {
        return Err(FusionError::TooManyBoxes { boxes: w.size(), cap: opts.box_cap });
    }
    w.check_fits(n)?;
    let cacheable = opts.slopes.is_none() && !opts.reversed;
    let key = (w.clone(), n);
    if cacheable {
        if let Some(f) = cache().read().expect("fusion cache poisoned").get(&key) {
            return Ok(f.clone());
        }
    }
    let f = Arc::new(build(w, n, opts)?);
    if cacheable {
        cache().write().expect("fusion cache poisoned").insert(key, f.clone());
    }
    Ok(f)
}

pub fn fusion_operator(w: &SkewDiagram, n: usize, slopes: Option<&[i64]>) -> Result<Arc<FusionOperator>, FusionError> {
    fusion_operator_with(w, n, &FusionOptions { slopes: slopes.map(<[i64]>::to_vec), ..FusionOptions::default() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionReport {
    pub diagram: SkewDiagram,
    pub n: usize,
    pub form: FormKind,
    pub dim: usize,
    pub ssyt_count: u64,
    pub t_invariant: bool,
    pub sharp_conjugation: bool,
    pub slope_independent: bool,
    pub reversed_order: bool,
    pub dim_matches: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.t_invariant && self.sharp_conjugation && self.slope_independent && self.reversed_order && self.dim_matches
    }
}

/// Checks `t(F) = F`, `σ̂ F σ̂ = F_{ω♯}`, independence of the approach line and of the
/// pair order, and `dim im F = #SSYT`. Failures, including errors, become report entries.
pub fn verify_fusion_invariants(f: &FusionOperator, form: &GForm) -> FusionReport {
    let (w, n, legs) = (&f.diagram, f.n, f.legs());
    let mut notes = Vec::new();
    let mut note = |what: &str, e: &dyn std::fmt::Display| notes.push(format!("{what}: {e}"));

    let t_invariant = if form.n() != n {
        note("t-invariance", &format!("form acts on C^{}, operator on C^{n}", form.n()));
        false
    } else {
        match transpose_all(&f.matrix, legs, form) {
            Ok(t) => t == f.matrix,
            Err(e) => {
                note("t-invariance", &e);
                false
            }
        }
    };

    let sharp_conjugation = match sharp(w).map_err(FusionError::from).and_then(|(ws, _)| fusion_operator(&ws, n, None)) {
        Ok(fs) => {
            let s = reversal(legs, n);
            s.mul(&f.matrix).mul(&s) == fs.matrix
        }
        Err(e) => {
            note("sharp conjugation", &e);
            false
        }
    };

    let columns = w.lambda().first().copied().unwrap_or(0) as i64;
    let alt: Vec<i64> = (1..=columns).map(|j| j * j + 1).collect();
    let opts = FusionOptions { slopes: Some(alt), box_cap: usize::MAX, ..FusionOptions::default() };
    let slope_independent = match fusion_operator_with(w, n, &opts) {
        Ok(g) => g.matrix == f.matrix,
        Err(e) => {
            note("slope independence", &e);
            false
        }
    };
    let opts = FusionOptions { reversed: true, box_cap: usize::MAX, ..FusionOptions::default() };
    let reversed_order = match fusion_operator_with(w, n, &opts) {
        Ok(g) => g.matrix == f.matrix,
        Err(e) => {
            note("reversed order", &e);
            false
        }
    };

    let count = ssyt_count(w, n);
    FusionReport {
        diagram: w.clone(),
        n,
        form: form.kind(),
        dim: f.dim(),
        ssyt_count: count,
        t_invariant,
        sharp_conjugation,
        slope_independent,
        reversed_order,
        dim_matches: f.dim() as u64 == count,
        notes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwiningReport {
    pub diagram: SkewDiagram,
    pub n: usize,
    pub z: Rational,
    pub samples: usize,
    pub degree_bound: usize,
    pub passed: bool,
}

/// Sample points `u` safely away from every box parameter `z + c_p`.
pub fn default_u_samples(w: &SkewDiagram, z: &Rational) -> Vec<Rational> {
    let n = w.size() as i64;
    (0..n + 2).map(|k| z + &Rational::new(2 * (n + k) + 3, 2)).collect()
}

/// Checks `T_asc(u) (1 ⊗ F) = (1 ⊗ F) T_desc(u)` where `T_asc = R̆_{01} ... R̆_{0n}` and
/// `T_desc = R̆_{0n} ... R̆_{01}` are taken at `v_p = z + c_p`. Both sides times `∏(u - v_p)`
/// are polynomials of degree `n` in `u`, so more than `n` samples decide every coefficient.
pub fn intertwining_check(w: &SkewDiagram, n: usize, z: &Rational, us: Option<&[Rational]>) -> Result<IntertwiningReport, FusionError> {
    let f = fusion_operator(w, n, None)?;
    let contents = column_tableau(w).contents;
    let v: Vec<Lin> = contents.iter().map(|&c| Lin::constant(z + &Rational::from_integer(c))).collect();
    let samples = us.map_or_else(|| default_u_samples(w, z), <[Rational]>::to_vec);
    let legs = v.len();
    for u in &samples {
        if let Some(q) = v.iter().position(|vq| &vq.a == u) {
            return Err(FusionError::SingularParameter(format!("R̆_(0,{})(u, v_{}) has a pole at u = {u}", q + 1, q + 1)));
        }
    }
    let form = GForm::standard(FormKind::Orthogonal, n)?;
    let ops = LocalOps::new(&form);
    let slots = Slots::uniform(n, legs + 1);
    let one_f = Matrix::<Rational>::identity(n).kron(&f.matrix);
    let sp = AtPoint(Rational::zero());
    let mut passed = true;
    for u in &samples {
        let lu = Lin::constant(u.clone());
        let mut lhs = one_f.clone();
        let mut rhs = one_f.clone();
        for q in (0..legs).rev() {
            lhs = slots.apply_left(&ops.factor(&sp, RKind::RBreve, &lu, &v[q])?, &[0, q + 1], &lhs)?;
        }
        for q in (0..legs).rev() {
            rhs = slots.apply_right(&rhs, &ops.factor(&sp, RKind::RBreve, &lu, &v[q])?, &[0, q + 1])?;
        }
        passed &= lhs == rhs;
    }
    Ok(IntertwiningReport {
        diagram: w.clone(),
        n,
        z: z.clone(),
        samples: samples.len(),
        degree_bound: legs,
        passed: passed && samples.len() > legs,
    })
}

/// `1` on the zero-leg space of the empty diagram.
pub fn is_scalar_one(m: &QMatrix) -> bool {
    m.rows() == 1 && m.cols() == 1 && m[(0, 0)].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_skew;
    use crate::tensor::ops::flip;

    fn d(s: &str) -> SkewDiagram {
        parse_skew(s).unwrap()
    }

    #[test]
    fn small_shapes() {
        let f = fusion_operator(&SkewDiagram::single_box(), 3, None).unwrap();
        assert_eq!(f.matrix, Matrix::identity(3));
        let f = fusion_operator(&d("1,1"), 3, None).unwrap();
        let id: QMatrix = Matrix::identity(9);
        assert_eq!(f.matrix, id.sub(&flip(3)));
        assert_eq!(f.dim(), 3);
        let f = fusion_operator(&d("2"), 2, None).unwrap();
        assert_eq!(f.matrix, Matrix::<Rational>::identity(4).add(&flip(2)));
        assert!(is_scalar_one(&fusion_operator(&SkewDiagram::empty(), 2, None).unwrap().matrix));
    }

    #[test]
    fn genuine_limits() {
        assert_eq!(fusion_operator(&d("2,2"), 2, None).unwrap().dim(), 1);
        assert_eq!(fusion_operator(&d("2,1"), 2, None).unwrap().dim(), 2);
        assert_eq!(fusion_operator(&d("2,1/1"), 2, None).unwrap().dim(), 4);
    }

    #[test]
    fn symbolic_route_agrees() {
        for s in ["2,2", "2,1", "3,1/1", "2,2/1"] {
            let w = d(s);
            let series = fusion_operator(&w, 2, None).unwrap();
            assert_eq!(fusion_limit_symbolic(&w, 2, None).unwrap(), series.matrix, "{s}");
        }
    }

    #[test]
    fn invariants_for_small_shapes() {
        let so = GForm::standard(FormKind::Orthogonal, 2).unwrap();
        let sp = GForm::standard(FormKind::Symplectic, 2).unwrap();
        for s in ["1,1", "2", "2,2/1", "2,1", "3,2/1"] {
            let f = fusion_operator(&d(s), 2, None).unwrap();
            for form in [&so, &sp] {
                let r = verify_fusion_invariants(&f, form);
                assert!(r.passed(), "{s}: {r:?}");
            }
        }
    }

    #[test]
    fn slope_errors() {
        let w = d("2,2");
        assert_eq!(fusion_operator(&w, 2, Some(&[3, 3])).unwrap_err(), FusionError::SlopeCollision(vec![3, 3]));
        assert!(matches!(fusion_operator(&w, 2, Some(&[1])), Err(FusionError::InvalidSlopes { .. })));
        assert_eq!(fusion_operator(&w, 2, Some(&[5, 2])).unwrap().matrix, fusion_operator(&w, 2, None).unwrap().matrix);
        assert!(matches!(fusion_operator(&d("1,1,1"), 2, None), Err(FusionError::Diagram(_))));
        let opts = FusionOptions { box_cap: 3, ..FusionOptions::default() };
        assert!(matches!(fusion_operator_with(&d("2,2"), 2, &opts), Err(FusionError::TooManyBoxes { boxes: 4, cap: 3 })));
    }

    #[test]
    fn intertwining() {
        let z = Rational::new(1, 3);
        assert!(intertwining_check(&SkewDiagram::single_box(), 2, &z, None).unwrap().passed);
        assert!(intertwining_check(&d("1,1"), 2, &z, None).unwrap().passed);
        assert!(intertwining_check(&d("2,1"), 3, &z, None).unwrap().passed);
        let bad = [Rational::new(-2, 3)];
        assert!(matches!(intertwining_check(&d("1,1"), 2, &z, Some(&bad)), Err(FusionError::SingularParameter(_))));
    }
}
