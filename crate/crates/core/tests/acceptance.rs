//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Pass criterion numbers as arguments to run a subset.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use yfusion::cli::{random_rational, run_with, scan, scan_points, ybe_holds, ScanResult};
use yfusion::diagrams::{column_tableau, enumerate_tight, parse_skew, sharp, ssyt_count, SkewDiagram};
use yfusion::fusion::{fusion_operator, verify_fusion_invariants};
use yfusion::irreducibility::{r_breve_leading, DEFAULT_DEPTH};
use yfusion::repmatrix::{check_defining_relations, duality_check, s_generators, sample_grid, yang_matrices, FusedModule, FusedModuleSpec};
use yfusion::tensor::{structural_ops, FormKind, GForm};
use yfusion::{QMatrix, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn form(kind: FormKind, n: usize) -> GForm {
    GForm::standard(kind, n).expect("standard form")
}

/// Form kinds defined on `C^n`.
fn kinds(n: usize) -> Vec<FormKind> {
    if n % 2 == 0 {
        vec![FormKind::Orthogonal, FormKind::Symplectic]
    } else {
        vec![FormKind::Orthogonal]
    }
}

fn module(g: &GForm, text: &str) -> FusedModule {
    FusedModule::new(&FusedModuleSpec::parse(g.clone(), text).expect("spec")).expect("module")
}

fn fitting(max_boxes: usize, n: usize) -> Vec<SkewDiagram> {
    enumerate_tight(max_boxes, max_boxes, max_boxes).into_iter().filter(|w| w.check_fits(n).is_ok()).collect()
}

/// `R(u, v) = (u - v) - P` on two legs.
fn yang_r(n: usize, u: &Rational, v: &Rational) -> QMatrix {
    add(&scaled(&identity(n * n), &(u - v)), &scaled(&flip(n), &q(-1)))
}

fn c1_yang_baxter() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for n in [2, 3] {
        let id = identity(n);
        let p23 = kron(&id, &flip(n));
        for _ in 0..5 {
            let u = [(); 3].map(|_| random_rational(&mut rng));
            let r12 = |a: &Rational, b: &Rational| kron(&yang_r(n, a, b), &id);
            let r23 = |a: &Rational, b: &Rational| kron(&id, &yang_r(n, a, b));
            let r13 = |a: &Rational, b: &Rational| matmul(&matmul(&p23, &r12(a, b)), &p23);
            let left = matmul(&matmul(&r12(&u[0], &u[1]), &r13(&u[0], &u[2])), &r23(&u[1], &u[2]));
            let right = matmul(&matmul(&r23(&u[1], &u[2]), &r13(&u[0], &u[2])), &r12(&u[0], &u[1]));
            ensure(left == right, || format!("reference YBE fails at N={n}, {u:?}"))?;
            for kind in kinds(n) {
                let g = form(kind, n);
                ensure(ybe_holds(&g, &u), || format!("library YBE fails at N={n} {kind}, {u:?}"))?;
                if u[0] != u[1] && u[0] != -&u[1] {
                    let y = yang_matrices(&g, &u[0], &u[1]).map_err(|e| e.to_string())?;
                    ensure(y.r == yang_r(n, &u[0], &u[1]), || format!("R differs from (u-v)-P at N={n}"))?;
                }
            }
            checked += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("{checked} triples, {t:.2?}"))
}

fn c2_structural() -> Outcome {
    let mut cases = 0;
    for n in [2, 3, 4] {
        for kind in kinds(n) {
            let g = form(kind, n);
            let (p, qq) = structural_ops(&g);
            let (p_ref, q_ref) = (flip(n), q_op(g.g()));
            ensure(p == p_ref && qq == q_ref, || format!("structural operators differ from reference at N={n} {kind}"))?;
            ensure(matmul(&p, &p) == identity(n * n), || format!("P^2 != 1 at N={n}"))?;
            ensure(matmul(&qq, &qq) == scaled(&qq, &q(n as i64)), || format!("Q^2 != NQ at N={n} {kind}"))?;
            ensure(matmul(&matmul(&p, &qq), &p) == qq, || format!("Q_21 != Q at N={n} {kind}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (N, form) cases"))
}

fn c3_relations() -> Outcome {
    let start = Instant::now();
    let mut specs: Vec<(GForm, String)> = Vec::new();
    for (n, kind) in [(2, FormKind::Orthogonal), (2, FormKind::Symplectic), (3, FormKind::Orthogonal)] {
        let g = form(kind, n);
        for w in fitting(3, n) {
            specs.push((g.clone(), format!("{w}:1/3")));
        }
        for z in ["1:1/3;1:7/5", "1:1/2;1:-1/2", "1:-2/9;1:5/4"] {
            specs.push((g.clone(), z.to_string()));
        }
    }
    let mut min_side = usize::MAX;
    for (g, text) in &specs {
        let z = module(g, text);
        let grid = sample_grid(&z);
        let rep = check_defining_relations(&z, &grid).map_err(|e| format!("{text}: {e}"))?;
        ensure(rep.rtt_holds && rep.reflection_holds && rep.passed, || format!("{text} N={} {}: relations fail", g.n(), g.kind()))?;
        ensure(rep.grid.0 > rep.degree_bound && rep.grid.1 > rep.degree_bound, || format!("{text}: grid {:?} vs bound {}", rep.grid, rep.degree_bound))?;
        ensure(rep.samples.iter().all(|s| s.error.is_none()), || format!("{text}: a sample errored"))?;
        min_side = min_side.min(rep.grid.0.min(rep.grid.1) - rep.degree_bound);
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("{} modules, grid exceeds degree bound by at least {min_side} per axis, {t:.2?}", specs.len()))
}

fn c4_dimensions() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        for w in fitting(4, n) {
            let f = fusion_operator(&w, n, None).map_err(|e| format!("{w}: {e}"))?;
            let expected = ssyt_brute(w.lambda(), w.mu(), n);
            ensure(ssyt_count(&w, n) == expected, || format!("{w} N={n}: ssyt_count {} vs brute force {expected}", ssyt_count(&w, n)))?;
            ensure(f.dim() as u64 == expected, || format!("{w} N={n}: dim im F = {} vs {expected}", f.dim()))?;
            ensure(rank(&f.matrix) == f.dim(), || format!("{w} N={n}: image basis size differs from rank"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (diagram, N) pairs"))
}

/// `t^{(n)}(F) = G F^T G^-1` with `G = g^{⊗n}`.
fn t_all(g: &GForm, f: &QMatrix, legs: usize) -> QMatrix {
    let one = identity(1);
    let gg = (0..legs).fold(one.clone(), |m, _| kron(&m, g.g()));
    let gi = (0..legs).fold(one, |m, _| kron(&m, g.g_inv()));
    matmul(&matmul(&gg, &f.transpose()), &gi)
}

fn c5_invariants() -> Outcome {
    let mut count = 0;
    for n in [2, 3] {
        for w in fitting(4, n) {
            let f = fusion_operator(&w, n, None).map_err(|e| format!("{w}: {e}"))?;
            let legs = w.size();
            for kind in kinds(n) {
                let g = form(kind, n);
                let rep = verify_fusion_invariants(&f, &g);
                ensure(rep.t_invariant && rep.sharp_conjugation && rep.slope_independent, || format!("{w} N={n} {kind}: {rep:?}"))?;
                ensure(t_all(&g, &f.matrix, legs) == f.matrix, || format!("{w} N={n} {kind}: reference t-invariance fails"))?;
            }
            let (ws, _) = sharp(&w).map_err(|e| e.to_string())?;
            let fs = fusion_operator(&ws, n, None).map_err(|e| format!("{ws}: {e}"))?;
            let sigma = leg_permutation(&(0..legs).rev().collect::<Vec<_>>(), n);
            ensure(matmul(&matmul(&sigma, &f.matrix), &sigma) == fs.matrix, || format!("{w} N={n}: reference sharp conjugation fails"))?;
            let columns = w.lambda()[0] as i64;
            let reversed: Vec<i64> = (1..=columns).rev().collect();
            let spread: Vec<i64> = (1..=columns).map(|j| 3 * j + 1).collect();
            for slopes in [reversed, spread] {
                let other = fusion_operator(&w, n, Some(&slopes)).map_err(|e| format!("{w} slopes {slopes:?}: {e}"))?;
                ensure(other.matrix == f.matrix, || format!("{w} N={n}: limit depends on slopes {slopes:?}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} (diagram, N) pairs"))
}

/// Box set moved so that its smallest row and column are 1.
fn normalized(b: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let r = b.iter().map(|x| x.0).min().unwrap_or(1);
    let c = b.iter().map(|x| x.1).min().unwrap_or(1);
    b.iter().map(|&(i, j)| (i + 1 - r, j + 1 - c)).collect()
}

fn c6_sharp() -> Outcome {
    let all = enumerate_tight(6, 6, 6);
    for w in &all {
        let (ws, c) = sharp(w).map_err(|e| format!("{w}: {e}"))?;
        let (back, c2) = sharp(&ws).map_err(|e| format!("{ws}: {e}"))?;
        ensure(&back == w && c2 == c, || format!("{w}: sharp twice gives {back}"))?;
        let (lam, mu) = (w.lambda(), w.mu());
        let (rows, cols) = (lam.len(), lam[0]);
        let rotated: Vec<(usize, usize)> = boxes(lam, mu).iter().map(|&(i, j)| (rows + 1 - i, cols + 1 - j)).collect();
        ensure(normalized(&rotated) == normalized(&boxes(ws.lambda(), ws.mu())), || format!("{w}: {ws} is not the rotation"))?;
        let (a, b) = (column_contents(lam, mu), column_contents(ws.lambda(), ws.mu()));
        let k = a.len();
        ensure((0..k).all(|p| a[p] + b[k - 1 - p] == c), || format!("{w}: contents sums not constant {c}"))?;
    }
    let w = parse_skew("6,5,3,1/3,2").map_err(|e| e.to_string())?;
    let expected = vec![-2, -3, -1, 1, 0, 3, 2, 4, 3, 5];
    ensure(column_tableau(&w).contents == expected, || format!("contents {:?}", column_tableau(&w).contents))?;
    ensure(column_contents(w.lambda(), w.mu()) == expected, || "reference contents differ".into())?;
    let (ws, c) = sharp(&w).map_err(|e| e.to_string())?;
    ensure(ws == parse_skew("6,6,4,3/5,3,1").unwrap() && c == 2, || format!("sharp is {ws} with c = {c}"))?;
    Ok(format!("{} diagrams, example contents match, sharp {ws} with c = {c}", all.len()))
}

fn c7_duality() -> Outcome {
    let mut count = 0;
    for kind in kinds(2) {
        let g = form(kind, 2);
        for d in ["1", "1,1"] {
            for z in [frac(1, 3), frac(-2, 7), frac(5, 4)] {
                let w = parse_skew(d).unwrap();
                let rep = duality_check(&w, &z, &g).map_err(|e| format!("{d} at {z}: {e}"))?;
                ensure(rep.passed && rep.identity_holds && rep.checked > 0, || format!("{d} at {z} {kind}: {rep:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (diagram, z, form) cases"))
}

fn c8_leading() -> Outcome {
    let mut count = 0;
    for (n, kind) in [(2, FormKind::Orthogonal), (2, FormKind::Symplectic), (3, FormKind::Orthogonal)] {
        let g = form(kind, n);
        for text in ["1:1/3", "1:0", "1:1/3;1:7/5", "1:2/9;1:-5/3", "1:0;1:1/2"] {
            let z = module(&g, text);
            let (order, c, h) = r_breve_leading(&z).map_err(|e| format!("{text}: {e}"))?;
            let legs = z.boxes();
            let perm: Vec<usize> = (0..2 * legs).map(|k| (k + legs) % (2 * legs)).collect();
            let p = leg_permutation(&perm, n);
            let h = h.ok_or_else(|| format!("{text} N={n} {kind}: leading coefficient is not a multiple of the flip"))?;
            ensure(!h.is_zero() && c == scaled(&p, &h), || format!("{text} N={n} {kind}: reference flip comparison fails"))?;
            ensure(order < 0, || format!("{text}: order {order}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

/// Shapes with one or two factors of at most two boxes each.
fn shapes() -> Vec<(usize, FormKind, String)> {
    let small = ["1", "2", "1,1", "2,1/1"];
    let mut out = Vec::new();
    for (n, kind) in [(2, FormKind::Symplectic), (3, FormKind::Orthogonal)] {
        for a in small {
            out.push((n, kind, format!("{a}:0")));
        }
        for a in small {
            for b in small {
                out.push((n, kind, format!("{a}:0;{b}:0")));
            }
        }
    }
    out
}

struct ScanRecord {
    label: String,
    result: ScanResult,
    elapsed: Duration,
}

fn run_scan(n: usize, kind: FormKind, text: &str, grid: &[Rational], random: usize, seed: u64) -> ScanRecord {
    let spec = FusedModuleSpec::parse(form(kind, n), text).expect("spec");
    let start = Instant::now();
    let points = scan_points(&spec, grid, None, random, seed);
    let result = scan(&spec, &points, yfusion::fusion::DEFAULT_BOX_CAP, None, DEFAULT_DEPTH);
    ScanRecord { label: format!("N={n} {kind} {text}"), result, elapsed: start.elapsed() }
}

fn c9_main(records: &mut Vec<ScanRecord>) -> Outcome {
    let mut slowest = (Duration::ZERO, String::new());
    let list = shapes();
    for (i, (n, kind, text)) in list.iter().enumerate() {
        let r = run_scan(*n, *kind, text, &[], 10, 100 + i as u64);
        let pts = &r.result.points;
        ensure(pts.len() >= 10, || format!("{}: only {} points", r.label, pts.len()))?;
        for p in pts {
            ensure(off_wall(&p.params) && p.on_wall.is_empty(), || format!("{}: {:?} lies on a wall", r.label, p.params))?;
            let rep = p.report.as_ref().ok_or_else(|| format!("{} at {:?}: {}", r.label, p.params, p.error.clone().unwrap_or_default()))?;
            ensure(rep.phi_surjective && rep.commutant_dim == 1, || format!("{} at {:?}: surjective {} commutant {}", r.label, p.params, rep.phi_surjective, rep.commutant_dim))?;
        }
        ensure(r.elapsed < Duration::from_secs(300), || format!("{}: took {:?}", r.label, r.elapsed))?;
        if r.elapsed > slowest.0 {
            slowest = (r.elapsed, r.label.clone());
        }
        records.push(r);
    }
    Ok(format!("{} shapes x 10 points, slowest {} in {:.1?}", list.len(), slowest.1, slowest.0))
}

/// Wall grid scans on the shapes small enough to cover the full grid quickly.
fn wall_scans() -> Vec<ScanRecord> {
    let grid: Vec<Rational> = ["0", "1/2", "1", "-1/2", "3/2", "1/3", "-2/5"].iter().map(|s| s.parse().unwrap()).collect();
    let mut out = Vec::new();
    for (n, kind, text) in shapes() {
        let boxes: usize = text.split(';').map(|f| parse_skew(f.split(':').next().unwrap()).unwrap().size()).sum();
        let factors = text.split(';').count();
        if n == 3 && factors == 2 && boxes > 2 {
            continue;
        }
        out.push(run_scan(n, kind, &text, &grid, 3, 5));
    }
    out
}

fn c10_soundness(records: &mut Vec<ScanRecord>) -> Outcome {
    records.extend(wall_scans());
    let (mut points, mut walls, mut checked) = (0, 0, 0);
    for r in records.iter() {
        for p in &r.result.points {
            points += 1;
            walls += usize::from(!p.on_wall.is_empty());
            if let Some(e) = &p.error {
                ensure(!e.contains("internal inconsistency"), || format!("{} at {:?}: {e}", r.label, p.params))?;
                continue;
            }
            let rep = p.report.as_ref().unwrap();
            ensure(!rep.phi_surjective || rep.commutant_dim == 1, || format!("{} at {:?}: surjective but commutant {}", r.label, p.params, rep.commutant_dim))?;
            if rep.module_dim <= 4 {
                let spec = FusedModuleSpec::parse(form(if r.result.spec.form == "sp" { FormKind::Symplectic } else { FormKind::Orthogonal }, r.result.spec.n), &r.result.spec.modules).unwrap().with_params(&p.params);
                let z = FusedModule::new(&spec).unwrap();
                let gens = s_generators(&z, rep.k).map_err(|e| e.to_string())?;
                let reference = commutant_dim(&gens.flat(rep.k));
                ensure(reference == rep.commutant_dim, || format!("{} at {:?}: commutant {} vs reference {reference}", r.label, p.params, rep.commutant_dim))?;
                ensure(!rep.phi_surjective || reference == 1, || format!("{} at {:?}: reference commutant {reference}", r.label, p.params))?;
                checked += 1;
            }
        }
        ensure(r.result.summary.soundness_violations == 0, || format!("{}: summary reports violations", r.label))?;
    }
    Ok(format!("{} scans, {points} points ({walls} on walls), zero violations, {checked} commutants recomputed", records.len()))
}

fn capture(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("yfusion").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn c11_determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["scan", "--n", "2", "--form", "sp", "--modules", "1:0;2:0", "--grid", "0,1/2,1/3", "--random", "4", "--seed", "17", "--json"],
        &["scan", "--n", "3", "--form", "so", "--modules", "1:0;1,1:0", "--random", "3", "--seed", "9", "--json"],
        &["check-ybe", "--n", "3", "--samples", "5", "--seed", "17", "--json"],
    ];
    for args in runs {
        let (c1, a) = capture(args);
        let (c2, b) = capture(args);
        ensure(c1 == 0 && c2 == 0, || format!("{args:?}: exit codes {c1}, {c2}"))?;
        serde_json::from_slice::<serde_json::Value>(&a).map_err(|e| format!("{args:?}: invalid JSON: {e}"))?;
        ensure(a == b, || format!("{args:?}: outputs differ"))?;
        let bin = env!("CARGO_BIN_EXE_yfusion");
        let p1 = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let p2 = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(p1.status.success() && p1.stdout == p2.stdout && p1.stdout == a, || format!("{args:?}: separate processes differ"))?;
    }
    Ok(format!("{} commands, in process and as separate processes", runs.len()))
}

fn main() {
    let only: BTreeSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |k: usize| only.is_empty() || only.contains(&k);
    let mut records = Vec::new();
    let mut failed = 0;
    for k in 1..=11 {
        if !wanted(k) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| match k {
            1 => c1_yang_baxter(),
            2 => c2_structural(),
            3 => c3_relations(),
            4 => c4_dimensions(),
            5 => c5_invariants(),
            6 => c6_sharp(),
            7 => c7_duality(),
            8 => c8_leading(),
            9 => c9_main(&mut records),
            10 => c10_soundness(&mut records),
            _ => c11_determinism(),
        }))
        .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {k}: PASS ({msg}; {secs:.1} s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL ({msg}; {secs:.1} s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
