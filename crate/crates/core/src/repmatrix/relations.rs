//! Checks of the RTT and reflection relations on a fusion module, and of the
//! duality between `V_{ω♯}(z♯)` and the contragredient of `V_ω(z)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagrams::{column_tableau, sharp, SkewDiagram};
use crate::exactnum::{AtPoint, Lin, Rational, SeriesAtInfinity};
use crate::fusion::fusion_operator;
use crate::tensor::{reversal, transpose_all, GForm, Matrix, Slots};
use crate::QMatrix;

use super::module::{FusedModule, SpecEcho};
use super::operators::{s_matrix, t_matrix, Placed};
use super::yang::{LocalOps, RKind};
use super::RepError;

/// Both relations, cleared of denominators, have degree at most `2n + 2` in each variable.
pub fn degree_bound(boxes: usize) -> usize {
    2 * boxes + 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub u: Rational,
    pub v: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rtt: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflection: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub spec: SpecEcho,
    pub degree_bound: usize,
    /// Side lengths of the largest product grid found among the valid samples.
    pub grid: (usize, usize),
    pub rtt_holds: bool,
    pub reflection_holds: bool,
    pub passed: bool,
    pub samples: Vec<SampleOutcome>,
}

/// Values avoiding every `±v_q`, so both `T(u)` and `T(-u)` are regular there.
fn safe_values(z: &FusedModule, count: usize, num: impl Fn(i64) -> i64, den: i64) -> Vec<Rational> {
    let zero = Lin::constant(Rational::zero());
    let poles: BTreeSet<Rational> = z.box_params(&zero).into_iter().flat_map(|l| [l.a.clone(), -l.a]).collect();
    (1..)
        .map(|k| Rational::new(num(k), den))
        .filter(|x| !poles.contains(x))
        .take(count)
        .collect()
}

/// A full `(D+1) x (D+1)` grid of regular sample points.
pub fn sample_grid(z: &FusedModule) -> Vec<(Rational, Rational)> {
    let m = degree_bound(z.boxes()) + 1;
    let us = safe_values(z, m, |k| 3 * k + 1, 4);
    let vs = safe_values(z, m, |k| -(5 * k + 2), 6);
    us.iter().flat_map(|u| vs.iter().map(move |v| (u.clone(), v.clone()))).collect()
}

/// Greedy search for `U x V` inside the given points with both sides as large as `need`;
/// returns the side lengths found (never overstating what is present).
fn grid_within(points: &[(Rational, Rational)], need: usize) -> (usize, usize) {
    let mut by_u: BTreeMap<&Rational, BTreeSet<&Rational>> = BTreeMap::new();
    for (u, v) in points {
        by_u.entry(u).or_default().insert(v);
    }
    let mut rows: Vec<&BTreeSet<&Rational>> = by_u.values().collect();
    rows.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let Some(first) = rows.first() else {
        return (0, 0);
    };
    let mut common: BTreeSet<&Rational> = (*first).clone();
    let mut count = 1;
    for r in &rows[1..] {
        let next: BTreeSet<&Rational> = common.intersection(r).copied().collect();
        if next.len() >= need {
            common = next;
            count += 1;
        }
    }
    (count, common.len())
}

/// Evaluates `R T_1 T_2 = T_2 T_1 R` and `R S_1 R' S_2 = S_2 R' S_1 R` on `C^N ⊗ C^N ⊗ Z` at each
/// sample. The verdict requires every regular sample to pass and the regular samples to contain
/// a product grid exceeding the degree bound in both variables.
pub fn check_defining_relations(z: &FusedModule, samples: &[(Rational, Rational)]) -> Result<RelationReport, RepError> {
    let n = z.n();
    let d = z.dim();
    let slots = Slots::new(vec![n, n, d]);
    let ops = LocalOps::new(z.form());
    let sp = AtPoint(Rational::zero());
    let zero = Lin::constant(Rational::zero());
    let place = Placed::new(z, &zero);
    // `T(x)` and `S(x)` depend on one coordinate only, so each distinct value is evaluated once.
    let mut actions: BTreeMap<&Rational, Result<(QMatrix, QMatrix), RepError>> = BTreeMap::new();
    for x in samples.iter().flat_map(|(u, v)| [u, v]) {
        actions.entry(x).or_insert_with(|| {
            let lx = Lin::constant(x.clone());
            Ok((t_matrix(&sp, place, &lx)?, s_matrix(&sp, place, &lx)?))
        });
    }
    let action = |x: &Rational| actions[x].clone();
    let eval = |u: &Rational, v: &Rational| -> Result<(bool, bool), RepError> {
        let (lu, lv) = (Lin::constant(u.clone()), Lin::constant(v.clone()));
        let r = ops.factor(&sp, RKind::R, &lu, &lv)?;
        let rp = ops.factor(&sp, RKind::RPrime, &lu, &lv)?;
        let ((tu, su), (tv, sv)) = (action(u)?, action(v)?);
        let chain = |ops_: &[(&QMatrix, &[usize])]| -> Result<QMatrix, RepError> {
            let mut m = Matrix::identity(slots.total());
            for (f, on) in ops_ {
                m = slots.apply_right(&m, f, on)?;
            }
            Ok(m)
        };
        let (a, b, ab) = (&[0usize, 2][..], &[1usize, 2][..], &[0usize, 1][..]);
        let rtt = chain(&[(&r, ab), (&tu, a), (&tv, b)])? == chain(&[(&tv, b), (&tu, a), (&r, ab)])?;
        let refl = chain(&[(&r, ab), (&su, a), (&rp, ab), (&sv, b)])? == chain(&[(&sv, b), (&rp, ab), (&su, a), (&r, ab)])?;
        Ok((rtt, refl))
    };
    let mut outcomes = Vec::with_capacity(samples.len());
    let mut good = Vec::new();
    let (mut rtt_all, mut refl_all) = (true, true);
    for (u, v) in samples {
        match eval(u, v) {
            Ok((rtt, refl)) => {
                rtt_all &= rtt;
                refl_all &= refl;
                good.push((u.clone(), v.clone()));
                outcomes.push(SampleOutcome { u: u.clone(), v: v.clone(), rtt: Some(rtt), reflection: Some(refl), error: None });
            }
            Err(e @ RepError::SingularParameter(_)) => {
                outcomes.push(SampleOutcome { u: u.clone(), v: v.clone(), rtt: None, reflection: None, error: Some(e.to_string()) });
            }
            Err(e) => return Err(e),
        }
    }
    let bound = degree_bound(z.boxes());
    let grid = grid_within(&good, bound + 1);
    let certified = grid.0 > bound && grid.1 > bound;
    Ok(RelationReport {
        spec: SpecEcho::from(&z.spec),
        degree_bound: bound,
        grid,
        rtt_holds: rtt_all,
        reflection_holds: refl_all,
        passed: rtt_all && refl_all && certified,
        samples: outcomes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub diagram: SkewDiagram,
    pub sharp: SkewDiagram,
    pub z: Rational,
    pub z_sharp: Rational,
    pub form: String,
    /// Number of instantiated generators `(k, i, j)`.
    pub checked: usize,
    /// `σ̂ h(w♯) σ̂ F_{ω♯} = σ̂ (σ̂ h(-w)^t σ̂ F_ω)^t σ̂` for every generator.
    pub identity_holds: bool,
    /// The same right side with `F_ω` moved to the left: `σ̂ F_ω (σ̂ h(-w)^t σ̂)^t σ̂`.
    pub moved_form_holds: bool,
    pub passed: bool,
}

/// Coefficients of `u^{-k}`, `0 ≤ k ≤ kmax`, of `R̆_{0,n}(u, w_n) ... R̆_{0,1}(u, w_1)` on
/// `C^N ⊗ (C^N)^{⊗n}`, split into the `N x N` grid of auxiliary blocks.
fn generator_images(form: &GForm, w: &[Rational], kmax: usize) -> Result<Vec<Vec<Vec<QMatrix>>>, RepError> {
    let n = form.n();
    let legs = w.len();
    let ops = LocalOps::new(form);
    let sp = SeriesAtInfinity { prec: kmax as i64 + 1 };
    let slots = Slots::uniform(n, legs + 1);
    let u = Lin::var();
    let mut m = Matrix::identity(slots.total());
    for q in (0..legs).rev() {
        let f = ops.factor(&sp, RKind::RBreve, &u, &Lin::constant(w[q].clone()))?;
        m = slots.apply_right(&m, &f, &[0, q + 1])?;
    }
    let d = slots.total() / n;
    let mut out = Vec::with_capacity(kmax + 1);
    for e in 0..=kmax as i64 {
        let c = m.try_map(|x| x.coeff(e).ok_or_else(|| RepError::Spec(format!("series precision exhausted at order {e}"))))?;
        out.push((0..n).map(|i| (0..n).map(|j| c.block(i * d, j * d, d, d)).collect()).collect());
    }
    Ok(out)
}

/// Checks the duality identity with `h` running over the `u^{-k}` coefficients (`1 ≤ k ≤ 2|ω|`)
/// of the defining action on `|ω|` legs, `τ` acting as `t^{(n)}` with `u ↦ -u`, and the module
/// parameters `w_p = z + c_{n+1-p}` and `w♯_p = z♯ + c♯_{n+1-p}`, `z♯ = -z - c`.
pub fn duality_check(w: &SkewDiagram, z: &Rational, form: &GForm) -> Result<DualityReport, RepError> {
    let n = form.n();
    let (ws, c) = sharp(w)?;
    let f = fusion_operator(w, n, None)?;
    let fs = fusion_operator(&ws, n, None)?;
    let legs = w.size();
    let zs = -z - &Rational::from_integer(c);
    let params = |zz: &Rational, d: &SkewDiagram| -> Vec<Rational> {
        column_tableau(d).contents.iter().rev().map(|&cp| zz + &Rational::from_integer(cp)).collect()
    };
    let w_sharp = params(&zs, &ws);
    let w_neg: Vec<Rational> = params(z, w).iter().map(|x| -x).collect();
    let kmax = 2 * legs;
    let h_sharp = generator_images(form, &w_sharp, kmax)?;
    let h_neg = generator_images(form, &w_neg, kmax)?;
    let s = reversal(legs, n);
    let t = |a: &QMatrix| transpose_all(a, legs, form);
    let (mut identity_holds, mut moved_form_holds, mut checked) = (true, true, 0);
    for k in 1..=kmax {
        for i in 0..n {
            for j in 0..n {
                let lhs = s.mul(&h_sharp[k][i][j]).mul(&s).mul(&fs.matrix);
                let inner = s.mul(&t(&h_neg[k][i][j])?).mul(&s);
                let rhs = s.mul(&t(&inner.mul(&f.matrix))?).mul(&s);
                let moved = s.mul(&f.matrix).mul(&t(&inner)?).mul(&s);
                identity_holds &= lhs == rhs;
                moved_form_holds &= lhs == moved;
                checked += 1;
            }
        }
    }
    Ok(DualityReport {
        diagram: w.clone(),
        sharp: ws,
        z: z.clone(),
        z_sharp: zs,
        form: form.kind().to_string(),
        checked,
        identity_holds,
        moved_form_holds,
        passed: identity_holds && moved_form_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::parse_skew;
    use crate::repmatrix::module::FusedModuleSpec;
    use crate::tensor::FormKind;

    fn module(kind: FormKind, n: usize, text: &str) -> FusedModule {
        FusedModule::new(&FusedModuleSpec::parse(GForm::standard(kind, n).unwrap(), text).unwrap()).unwrap()
    }

    #[test]
    fn relations_on_small_modules() {
        for (kind, n, text) in [(FormKind::Symplectic, 2, "1:1/3;1:7/5"), (FormKind::Orthogonal, 2, "1,1:1/3"), (FormKind::Orthogonal, 3, "2:-2/7")] {
            let z = module(kind, n, text);
            let r = check_defining_relations(&z, &sample_grid(&z)).unwrap();
            assert!(r.passed, "{text}: {r:?}");
        }
    }

    #[test]
    fn too_few_samples_do_not_certify() {
        let z = module(FormKind::Symplectic, 2, "1:1/3;1:7/5");
        let grid = sample_grid(&z);
        let r = check_defining_relations(&z, &grid[..7]).unwrap();
        assert!(r.rtt_holds && r.reflection_holds && !r.passed);
    }

    #[test]
    fn singular_samples_are_excluded() {
        let z = module(FormKind::Orthogonal, 2, "1:1/3");
        let mut grid = sample_grid(&z);
        grid.push((Rational::new(1, 3), Rational::from_integer(5)));
        grid.push((Rational::from_integer(5), Rational::new(-1, 3)));
        let r = check_defining_relations(&z, &grid).unwrap();
        assert_eq!(r.samples.iter().filter(|s| s.error.is_some()).count(), 2);
        assert!(r.passed);
    }

    #[test]
    fn duality_small() {
        for kind in [FormKind::Orthogonal, FormKind::Symplectic] {
            let f = GForm::standard(kind, 2).unwrap();
            for s in ["1", "1,1", "2", "2,1/1"] {
                let r = duality_check(&parse_skew(s).unwrap(), &Rational::new(2, 5), &f).unwrap();
                assert!(r.passed, "{kind} {s}: {r:?}");
            }
        }
    }
}
