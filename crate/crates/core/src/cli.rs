//! Command-line front end.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails, 2 on usage errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::parse_skew;
use crate::exactnum::{Lin, Rational};
use crate::fusion::{fusion_operator_with, verify_fusion_invariants, FusionOptions};
use crate::irreducibility::{random_off_wall, verdict, walls, IrreducibilityReport, Verdict, DEFAULT_DEPTH};
use crate::repmatrix::{check_defining_relations, duality_check, sample_grid, FusedModule, FusedModuleSpec, LocalOps, RKind, SpecEcho};
use crate::tensor::{FormKind, GForm, Matrix, Slots};
use crate::QMatrix;

#[derive(Parser, Debug)]
#[command(name = "yfusion", version, about = "Exact fusion modules for Yangians and twisted Yangians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Site dimension N.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Bilinear form: so or sp.
    #[arg(long, default_value = "so")]
    form: FormKind,
    /// Custom form matrix as a JSON array of rows (integers or rational strings).
    #[arg(long)]
    g_file: Option<std::path::PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximal number of boxes.
    #[arg(long, default_value_t = crate::fusion::DEFAULT_BOX_CAP)]
    box_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Yang-Baxter equation at random rational triples.
    CheckYbe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// RTT and reflection relations on a fusion module.
    CheckRelations {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        modules: String,
        /// Points per axis of the sample grid; defaults to one more than the degree bound.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Fusion operator of a skew diagram and its invariants.
    Fusion {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        /// Comma separated slopes, one per column.
        #[arg(long, value_delimiter = ',')]
        slopes: Option<Vec<i64>>,
    },
    /// Duality between the rotated diagram and the contragredient module.
    Duality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        z: Rational,
    },
    /// Irreducibility verdict at one parameter point.
    Irreducible {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        modules: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Verdicts over a set of parameter points.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Template spec; its diagrams are kept and its parameters fill unscanned axes.
        #[arg(long)]
        modules: String,
        /// Comma separated parameter values.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<Rational>,
        /// Scan only this factor (1-based); otherwise the grid is taken on every factor.
        #[arg(long)]
        axis: Option<usize>,
        /// Additional random points off every wall.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn load_form(c: &Common) -> Result<GForm, Usage> {
    let Some(path) = &c.g_file else {
        return Ok(GForm::standard(c.form, c.n)?);
    };
    let text = std::fs::read_to_string(path)?;
    let rows: Vec<Vec<serde_json::Value>> = serde_json::from_str(&text)?;
    let parse = |v: &serde_json::Value| -> Result<Rational, Usage> {
        match v {
            serde_json::Value::Number(x) => Ok(x.to_string().parse()?),
            serde_json::Value::String(s) => Ok(s.parse()?),
            other => Err(Usage(format!("bad matrix entry {other}"))),
        }
    };
    let rows = rows.iter().map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Usage("form matrix must be square".into()));
    }
    let form = GForm::custom(c.form, Matrix::from_rows(rows))?;
    if form.n() != c.n {
        return Err(Usage(format!("form matrix is {0}x{0} but --n is {1}", form.n(), c.n)));
    }
    Ok(form)
}

fn load_module(c: &Common, modules: &str) -> Result<FusedModule, Usage> {
    let spec = FusedModuleSpec::parse(load_form(c)?, modules)?;
    Ok(FusedModule::with_cap(&spec, c.box_cap)?)
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce() -> String) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))
    } else {
        writeln!(out, "{}", text())
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct YbeReport {
    n: usize,
    form: String,
    samples: Vec<[Rational; 3]>,
    passed: bool,
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` at one triple.
pub fn ybe_holds(form: &GForm, u: &[Rational; 3]) -> bool {
    let ops = LocalOps::new(form);
    let sp = crate::exactnum::AtPoint(Rational::from_integer(0));
    let s = Slots::uniform(form.n(), 3);
    let l = u.clone().map(Lin::constant);
    let r = |a: usize, b: usize| ops.factor(&sp, RKind::R, &l[a], &l[b]).expect("R is polynomial");
    let chain = |fs: &[(usize, usize)]| {
        fs.iter().fold(Matrix::identity(s.total()), |m: QMatrix, &(a, b)| s.apply_right(&m, &r(a, b), &[a, b]).expect("slots"))
    };
    chain(&[(0, 1), (0, 2), (1, 2)]) == chain(&[(1, 2), (0, 2), (0, 1)])
}

/// Random rational with numerator in `[-20, 20]` and denominator in `[1, 9]`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    use rand::Rng;
    Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// One point of a scan: its parameters and either a report or the error it produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub index: usize,
    pub params: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<IrreducibilityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub on_wall: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub irreducible: usize,
    pub inconclusive: usize,
    pub reducible: usize,
    pub errors: usize,
    pub on_wall: usize,
    /// Points where `Φ₀` is onto but the commutant is not the scalars.
    pub soundness_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: SpecEcho,
    pub points: Vec<ScanPoint>,
    pub summary: ScanSummary,
}

/// Parameter tuples of a scan, in output order: the grid first, then random off-wall points.
pub fn scan_points(template: &FusedModuleSpec, grid: &[Rational], axis: Option<usize>, random: usize, seed: u64) -> Vec<Vec<Rational>> {
    let base = template.params();
    let l = base.len();
    let mut points: Vec<Vec<Rational>> = Vec::new();
    if !grid.is_empty() && l > 0 {
        match axis {
            Some(a) => {
                for g in grid {
                    let mut p = base.clone();
                    p[a - 1] = g.clone();
                    points.push(p);
                }
            }
            None => {
                points.push(Vec::new());
                for _ in 0..l {
                    points = points.into_iter().flat_map(|p| grid.iter().map(move |g| [p.clone(), vec![g.clone()]].concat())).collect();
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        points.push(random_off_wall(l, &mut rng));
    }
    points
}

/// Runs [`verdict`] at every point, in parallel, merging by point index.
pub fn scan(template: &FusedModuleSpec, points: &[Vec<Rational>], cap: usize, k: Option<usize>, depth: usize) -> ScanResult {
    let mut out: Vec<ScanPoint> = points
        .par_iter()
        .enumerate()
        .map(|(index, params)| {
            let spec = template.with_params(params);
            let on_wall = walls(&spec).violated();
            let result = FusedModule::with_cap(&spec, cap).map_err(|e| e.to_string()).and_then(|m| verdict(&m, k, depth).map_err(|e| e.to_string()));
            let (report, error) = match result {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e)),
            };
            ScanPoint { index, params: params.clone(), report, error, on_wall }
        })
        .collect();
    out.sort_by_key(|p| p.index);
    let mut summary = ScanSummary { total: out.len(), ..ScanSummary::default() };
    for p in &out {
        summary.on_wall += usize::from(!p.on_wall.is_empty());
        match &p.report {
            None => summary.errors += 1,
            Some(r) => {
                match r.verdict {
                    Verdict::Irreducible => summary.irreducible += 1,
                    Verdict::Inconclusive => summary.inconclusive += 1,
                    Verdict::Reducible => summary.reducible += 1,
                }
                summary.soundness_violations += usize::from(r.phi_surjective && r.commutant_dim != 1);
            }
        }
        if p.error.as_deref().is_some_and(|e| e.contains("internal inconsistency")) {
            summary.soundness_violations += 1;
        }
    }
    ScanResult { spec: SpecEcho::from(template), points: out, summary }
}

fn report_line(r: &IrreducibilityReport) -> String {
    format!(
        "{} dim={} on_wall=[{}] order={} phi_rank={} surjective={} commutant={} algebra={} K={} stabilized={} verdict={:?}",
        r.spec.modules,
        r.module_dim,
        r.on_wall.join(", "),
        r.laurent_order.map_or("-".into(), |o| o.to_string()),
        r.phi_rank.map_or("-".into(), |o| o.to_string()),
        r.phi_surjective,
        r.commutant_dim,
        r.algebra_dim.map_or("-".into(), |a| a.to_string()),
        r.k,
        r.stabilized,
        r.verdict
    )
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<bool, Usage> {
    match cli.command {
        Command::CheckYbe { common, samples } => {
            let form = load_form(&common)?;
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            let triples: Vec<[Rational; 3]> = (0..samples).map(|_| [(); 3].map(|_| random_rational(&mut rng))).collect();
            let passed = triples.iter().all(|t| ybe_holds(&form, t));
            let rep = YbeReport { n: form.n(), form: form.kind().to_string(), samples: triples, passed };
            emit(out, common.json, &rep, || format!("Yang-Baxter N={} at {} samples: {}", rep.n, rep.samples.len(), mark(passed)))?;
            Ok(passed)
        }
        Command::CheckRelations { common, modules, samples } => {
            let z = load_module(&common, &modules)?;
            let mut grid = sample_grid(&z);
            if let Some(m) = samples {
                let side = (grid.len() as f64).sqrt() as usize;
                let us: Vec<Rational> = grid.iter().step_by(side).map(|p| p.0.clone()).take(m).collect();
                let vs: Vec<Rational> = grid.iter().take(side).map(|p| p.1.clone()).take(m).collect();
                grid = us.iter().flat_map(|u| vs.iter().map(move |v| (u.clone(), v.clone()))).collect();
                if m > side {
                    return Err(Usage(format!("at most {side} samples per axis are generated")));
                }
            }
            let rep = check_defining_relations(&z, &grid)?;
            emit(out, common.json, &rep, || {
                format!(
                    "{}: RTT {}, reflection {}, grid {}x{} vs degree bound {}: {}",
                    z.spec,
                    mark(rep.rtt_holds),
                    mark(rep.reflection_holds),
                    rep.grid.0,
                    rep.grid.1,
                    rep.degree_bound,
                    mark(rep.passed)
                )
            })?;
            Ok(rep.passed)
        }
        Command::Fusion { common, diagram, slopes } => {
            let form = load_form(&common)?;
            let w = parse_skew(&diagram)?;
            let opts = FusionOptions { slopes, box_cap: common.box_cap, ..FusionOptions::default() };
            let f = fusion_operator_with(&w, form.n(), &opts)?;
            let rep = verify_fusion_invariants(&f, &form);
            emit(out, common.json, &rep, || {
                format!(
                    "F[{}] N={}: dim {} (ssyt {}), t-invariant {}, sharp conjugation {}, slope independence {}, reversed order {}",
                    rep.diagram,
                    rep.n,
                    rep.dim,
                    rep.ssyt_count,
                    mark(rep.t_invariant),
                    mark(rep.sharp_conjugation),
                    mark(rep.slope_independent),
                    mark(rep.reversed_order)
                )
            })?;
            Ok(rep.passed())
        }
        Command::Duality { common, diagram, z } => {
            let form = load_form(&common)?;
            let rep = duality_check(&parse_skew(&diagram)?, &z, &form)?;
            emit(out, common.json, &rep, || {
                format!("duality {} at z={} (sharp {} at {}), {} generators: {}", rep.diagram, rep.z, rep.sharp, rep.z_sharp, rep.checked, mark(rep.passed))
            })?;
            Ok(rep.passed)
        }
        Command::Irreducible { common, modules, k, depth } => {
            let z = load_module(&common, &modules)?;
            let rep = match verdict(&z, k, depth) {
                Ok(r) => r,
                Err(e @ crate::irreducibility::IrrError::InternalInconsistency(_)) => {
                    writeln!(out, "soundness check failed: {e}")?;
                    return Ok(false);
                }
                Err(crate::irreducibility::IrrError::TruncationTooSmall(k)) => return Err(Usage(format!("--k must be at least 2, got {k}"))),
                Err(e) => {
                    writeln!(out, "error: {e}")?;
                    return Ok(false);
                }
            };
            emit(out, common.json, &rep, || report_line(&rep))?;
            Ok(true)
        }
        Command::Scan { common, modules, grid, axis, random, k, depth } => {
            let z = load_module(&common, &modules)?;
            if let Some(a) = axis {
                if a == 0 || a > z.spec.len() {
                    return Err(Usage(format!("--axis must lie in 1..={}", z.spec.len())));
                }
            }
            if k.is_some_and(|k| k < 2) {
                return Err(Usage("--k must be at least 2".into()));
            }
            let points = scan_points(&z.spec, &grid, axis, random, common.seed);
            let res = scan(&z.spec, &points, common.box_cap, k, depth);
            emit(out, common.json, &res, || {
                let mut s = String::new();
                for p in &res.points {
                    let params: Vec<String> = p.params.iter().map(ToString::to_string).collect();
                    match &p.report {
                        Some(r) => s.push_str(&format!("#{} [{}] {}\n", p.index, params.join(", "), report_line(r))),
                        None => s.push_str(&format!("#{} [{}] error: {}\n", p.index, params.join(", "), p.error.as_deref().unwrap_or(""))),
                    }
                }
                let m = &res.summary;
                s.push_str(&format!(
                    "total {} irreducible {} inconclusive {} reducible {} errors {} on_wall {} soundness_violations {}",
                    m.total, m.irreducible, m.inconclusive, m.reducible, m.errors, m.on_wall, m.soundness_violations
                ));
                s
            })?;
            Ok(res.summary.soundness_violations == 0)
        }
    }
}

/// Parses `argv` (program name first), runs the command, writes to `out` and returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
