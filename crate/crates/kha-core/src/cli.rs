//! Command-line front end: argument parsing, dispatch and report rendering.

use crate::arith::{parse_rf, RationalFunction};
use crate::error::{KhaError, Result};
use crate::fixedpoint::{gram_matrix, relation_suite, Diagonal, FixedPointLabel, FixedPointModule, ModuleVector, Rel5Scope};
use crate::quiver::{DimVector, Quiver};
use crate::report::Report;
use crate::rmatrix::{block_matrix, coproduct_relation_check, limit_checks, u_aux, vector_limit, BlockKind, RBlock};
use crate::shuffle::{shuffle_mul, wheel_check, word_to_shuffle, ShuffleElement, WheelVerdict};
use crate::taut::{ef_commutator_grid, qz_residue, qz_residue_expected};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "kha", version, about = "Exact computations with shuffle algebras, fixed-point modules and R-matrix blocks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shuffle product of two elements.
    ShuffleMul(ShuffleMulArgs),
    /// Test an element against the wheel conditions.
    WheelCheck(WheelArgs),
    /// Apply operators to a fixed-point class.
    Act(ActArgs),
    /// Check the defining relations on fixed-point bases.
    VerifyRelations(RelationArgs),
    /// Check the vacuum commutator identity in free Chern roots.
    VerifyAction(ActionArgs),
    /// Print an R-matrix block, or check its limits.
    Rmatrix(RmatrixArgs),
    /// Modified pairing on a sector.
    Pair(PairArgs),
}

/// A shuffle element given as a word or as an explicit rational function.
#[derive(Args, Debug, Clone)]
pub struct ElementArgs {
    /// Letters `vertex:d`, comma separated, e.g. `1:0,1:2`.
    #[arg(long)]
    pub word: Option<String>,
    /// Explicit value in `z[i,a]`.
    #[arg(long)]
    pub rf: Option<String>,
    /// Degree of `--rf`, e.g. `2` or `1,1`.
    #[arg(long)]
    pub degree: Option<String>,
}

#[derive(Args, Debug)]
pub struct ShuffleMulArgs {
    pub quiver: PathBuf,
    /// Left factor as a word.
    #[arg(long)]
    pub left: Option<String>,
    /// Right factor as a word.
    #[arg(long)]
    pub right: Option<String>,
    #[arg(long)]
    pub left_rf: Option<String>,
    #[arg(long)]
    pub left_degree: Option<String>,
    #[arg(long)]
    pub right_rf: Option<String>,
    #[arg(long)]
    pub right_degree: Option<String>,
}

#[derive(Args, Debug)]
pub struct WheelArgs {
    pub quiver: PathBuf,
    #[command(flatten)]
    pub element: ElementArgs,
}

#[derive(Args, Debug)]
pub struct ActArgs {
    pub quiver: PathBuf,
    #[arg(long)]
    pub w: String,
    /// Fixed-point label, e.g. `{1,2}` or `{1}|{}`.
    #[arg(long)]
    pub label: String,
    /// Operators `f:i:d`, `e:i:d`, `a:i:d`, `b:i:d`, `qv:i:±1`, `qw:i:±1`, `h+:i:n`, `h-:i:n`, or `shuffle`
    /// (the element given by `--word`/`--rf`, acting by lowering); comma separated, the last one acts first.
    #[arg(long)]
    pub op: String,
    #[command(flatten)]
    pub element: ElementArgs,
    /// Print `h^±_{i,n}` for `n ≤ order` when the operator is `h+:i` or `h-:i`.
    #[arg(long, default_value_t = 3)]
    pub order: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Auto,
    Full,
    Vacuum,
}

#[derive(Args, Debug)]
pub struct RelationArgs {
    pub quiver: PathBuf,
    #[arg(long)]
    pub w: String,
    #[arg(long)]
    pub vmax: Option<String>,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub dmin: i32,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub dmax: i32,
    #[arg(long, value_enum, default_value_t = Scope::Auto)]
    pub scope: Scope,
}

#[derive(Args, Debug)]
pub struct ActionArgs {
    pub quiver: PathBuf,
    /// Largest framing; every `w ≤ wmax` is checked.
    #[arg(long)]
    pub w: String,
    /// Largest dimension vector.
    #[arg(long)]
    pub vmax: String,
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub dmin: i32,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub dmax: i32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LimitArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "inf")]
    Inf,
}

#[derive(Args, Debug)]
pub struct RmatrixArgs {
    pub quiver: PathBuf,
    #[arg(long)]
    pub w: String,
    /// Vertex of the auxiliary framing.
    #[arg(long, default_value = "1")]
    pub vertex: String,
    /// `diag`, `f` or `e`.
    #[arg(long, default_value = "diag")]
    pub block: String,
    /// Source sector.
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long, value_enum)]
    pub limit: Option<LimitArg>,
    /// Run every limit check on sectors up to `--vmax`.
    #[arg(long)]
    pub vmax: Option<String>,
    /// Also check the coproduct identity on `K(w) ⊗ K(w2)`.
    #[arg(long)]
    pub w2: Option<String>,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    pub quiver: PathBuf,
    #[arg(long)]
    pub w: String,
    #[arg(long)]
    pub v: String,
}

/// Result of one invocation.
pub struct Outcome {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
    pub report: Report,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.report.ok()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !self.report.checks.is_empty() {
                    s.push_str(&self.report.to_text());
                }
                s
            }
            Format::Json => {
                let mut v = self.report.to_json(self.command);
                if !self.result.is_null() {
                    v["result"] = self.result.clone();
                }
                let mut s = serde_json::to_string_pretty(&v).unwrap();
                s.push('\n');
                s
            }
        }
    }
}

pub fn load_quiver(path: &Path) -> Result<Quiver> {
    let text = std::fs::read_to_string(path).map_err(|e| KhaError::Io(format!("{}: {e}", path.display())))?;
    Quiver::from_json(&text)
}

fn vertex(q: &Quiver, s: &str) -> Result<usize> {
    if let Some(i) = q.vertex_index(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(k) if k >= 1 && k <= q.n_vertices() => Ok(k - 1),
        _ => Err(KhaError::Config(format!("unknown vertex `{s}`"))),
    }
}

fn dim(q: &Quiver, s: &str, what: &str) -> Result<DimVector> {
    let v = DimVector::parse(s)?;
    if v.len() != q.n_vertices() {
        return Err(KhaError::Config(format!("--{what} has {} entries for {} vertices", v.len(), q.n_vertices())));
    }
    if !v.is_nonnegative() {
        return Err(KhaError::Config(format!("--{what} must be nonnegative")));
    }
    Ok(v)
}

/// `1:0,2:-1` → `[(0,0),(1,-1)]`.
pub fn parse_word(q: &Quiver, s: &str) -> Result<Vec<(usize, i32)>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (v, d) = p.rsplit_once(':').ok_or_else(|| KhaError::Parse(format!("letter `{p}` is not vertex:d")))?;
            let d: i32 = d.parse().map_err(|_| KhaError::Parse(format!("bad exponent in `{p}`")))?;
            Ok((vertex(q, v)?, d))
        })
        .collect()
}

fn element(q: &Quiver, word: Option<&str>, rf: Option<&str>, degree: Option<&str>) -> Result<ShuffleElement> {
    match (word, rf) {
        (Some(w), None) => word_to_shuffle(q, &parse_word(q, w)?),
        (None, Some(r)) => {
            let d = degree.ok_or_else(|| KhaError::Config("an explicit element needs --degree".into()))?;
            ShuffleElement::new(dim(q, d, "degree")?, parse_rf(r)?)
        }
        _ => Err(KhaError::Config("give exactly one of a word or an explicit rational function".into())),
    }
}

fn vector_json(x: &ModuleVector) -> Value {
    Value::Array(x.coeffs.iter().map(|(l, c)| json!({"label": l.to_string(), "coeff": c.to_string()})).collect())
}

fn shuffle_json(r: &ShuffleElement) -> Value {
    json!({"degree": r.degree.0, "value": r.value.to_string()})
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::ShuffleMul(a) => {
            let q = load_quiver(&a.quiver)?;
            let l = element(&q, a.left.as_deref(), a.left_rf.as_deref(), a.left_degree.as_deref())?;
            let r = element(&q, a.right.as_deref(), a.right_rf.as_deref(), a.right_degree.as_deref())?;
            let p = shuffle_mul(&q, &l, &r)?;
            Ok(Outcome { command: "shuffle-mul", text: format!("{}\n", p.value), result: shuffle_json(&p), report: Report::new() })
        }
        Command::WheelCheck(a) => {
            let q = load_quiver(&a.quiver)?;
            let r = element(&q, a.element.word.as_deref(), a.element.rf.as_deref(), a.element.degree.as_deref())?;
            let mut report = Report::new();
            match wheel_check(&q, &r)? {
                WheelVerdict::Pass { specializations } => report.check("wheel", true, format!("{specializations} specializations vanish")),
                WheelVerdict::Vacuous => report.check("wheel", true, "no wheel specializations in this degree"),
                WheelVerdict::Fail { specialization } => report.check("wheel", false, format!("nonzero at {specialization}")),
            }
            Ok(Outcome { command: "wheel-check", text: String::new(), result: shuffle_json(&r), report })
        }
        Command::Act(a) => act(a),
        Command::VerifyRelations(a) => {
            let q = load_quiver(&a.quiver)?;
            let w = dim(&q, &a.w, "w")?;
            let vmax = match &a.vmax {
                Some(s) => dim(&q, s, "vmax")?,
                None => w.clone(),
            };
            let scope = match a.scope {
                Scope::Auto => Rel5Scope::Auto,
                Scope::Full => Rel5Scope::Full,
                Scope::Vacuum => Rel5Scope::Vacuum,
            };
            let report = relation_suite(&q, &w, &vmax, a.dmin, a.dmax, scope)?;
            Ok(Outcome { command: "verify-relations", text: String::new(), result: Value::Null, report })
        }
        Command::VerifyAction(a) => {
            let q = load_quiver(&a.quiver)?;
            let wmax = dim(&q, &a.w, "w")?;
            let vmax = dim(&q, &a.vmax, "vmax")?;
            let mut report = Report::new();
            for w in DimVector::box_below(&wmax) {
                for v in DimVector::box_below(&vmax) {
                    for i in 0..q.n_vertices() {
                        let grid = ef_commutator_grid(&q, i, &v, &w, (a.dmin, a.dmax), (a.dmin, a.dmax))?;
                        let bad: Vec<String> = grid.iter().filter(|e| !e.holds).map(|e| format!("d={} k={}", e.d, e.k)).collect();
                        report.check(format!("commutator i={} v={v} w={w}", i + 1), bad.is_empty(), bad.join(" "));
                        let res = qz_residue(&q, i, &v, &w)?;
                        let expected = qz_residue_expected(&q, i)?;
                        report.check(format!("residue y=qz i={} v={v} w={w}", i + 1), res.rf_eq(&expected), format!("{res}"));
                    }
                }
            }
            Ok(Outcome { command: "verify-action", text: String::new(), result: Value::Null, report })
        }
        Command::Rmatrix(a) => rmatrix(a),
        Command::Pair(a) => {
            let q = load_quiver(&a.quiver)?;
            let w = dim(&q, &a.w, "w")?;
            let v = dim(&q, &a.v, "v")?;
            let m = FixedPointModule::new(&q, &w)?;
            let basis = m.enumerate_basis(&v);
            let g = gram_matrix(&m, &v)?;
            let mut text = String::new();
            let mut diag = Vec::new();
            let mut off_zero = true;
            let mut nonzero = true;
            for (r, row) in g.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if r == c {
                        nonzero &= !x.is_zero();
                        text.push_str(&format!("I[{}]: {x}\n", basis[r]));
                        diag.push(json!({"label": basis[r].to_string(), "value": x.to_string()}));
                    } else {
                        off_zero &= x.is_zero();
                    }
                }
            }
            let mut report = Report::new();
            report.check(format!("gram diagonal w={w} v={v}"), off_zero, "");
            report.check(format!("gram nondegenerate w={w} v={v}"), nonzero, "");
            Ok(Outcome { command: "pair", text, result: Value::Array(diag), report })
        }
    }
}

fn parse_op(q: &Quiver, s: &str) -> Result<(String, usize, i32)> {
    let parts: Vec<&str> = s.split(':').collect();
    let name = parts[0].to_string();
    if name == "shuffle" {
        return Ok((name, 0, 0));
    }
    if parts.len() < 2 || parts.len() > 3 {
        return Err(KhaError::Parse(format!("operator `{s}` is not name:vertex[:n]")));
    }
    let i = vertex(q, parts[1])?;
    let n = match parts.get(2) {
        Some(p) => p.parse().map_err(|_| KhaError::Parse(format!("bad index in `{s}`")))?,
        None => i32::MIN,
    };
    Ok((name, i, n))
}

fn act(a: &ActArgs) -> Result<Outcome> {
    let q = load_quiver(&a.quiver)?;
    let w = dim(&q, &a.w, "w")?;
    let m = FixedPointModule::new(&q, &w)?;
    let label = FixedPointLabel::parse(&a.label, &w)?;
    let ops: Vec<&str> = a.op.split(',').map(str::trim).collect();
    let mut x = ModuleVector::basis(label.clone());

    if let [single] = ops.as_slice() {
        let (name, i, n) = parse_op(&q, single)?;
        if (name == "h+" || name == "h-") && n == i32::MIN {
            let mut text = String::new();
            let mut series = Vec::new();
            for k in 0..=a.order {
                let op = if name == "h+" { Diagonal::HPlus(i, k) } else { Diagonal::HMinus(i, k) };
                let c = m.eigenvalue(op, &label)?;
                text.push_str(&format!("{name}[{},{k}]: {c}\n", i + 1));
                series.push(c.to_string());
            }
            return Ok(Outcome { command: "act", text, result: json!({"label": label.to_string(), "series": series}), report: Report::new() });
        }
    }
    for s in ops.iter().rev() {
        let (name, i, n) = parse_op(&q, s)?;
        let need = |n: i32| if n == i32::MIN { Err(KhaError::Parse(format!("operator `{s}` needs an index"))) } else { Ok(n) };
        x = match name.as_str() {
            "f" => m.act_f(i, need(n)?, &x)?,
            "e" => m.act_e(i, need(n)?, &x)?,
            "a" => m.act_diagonal(Diagonal::A(i, need(n)?), &x)?,
            "b" => m.act_diagonal(Diagonal::B(i, need(n)?), &x)?,
            "qv" => m.act_diagonal(Diagonal::Qv(i, need(n)?.signum()), &x)?,
            "qw" => m.act_diagonal(Diagonal::Qw(i, need(n)?.signum()), &x)?,
            "h+" => m.act_diagonal(Diagonal::HPlus(i, need(n)?.unsigned_abs()), &x)?,
            "h-" => m.act_diagonal(Diagonal::HMinus(i, need(n)?.unsigned_abs()), &x)?,
            "shuffle" => {
                let r = element(&q, a.element.word.as_deref(), a.element.rf.as_deref(), a.element.degree.as_deref())?;
                m.act_shuffle(&r, &x)?
            }
            _ => return Err(KhaError::Parse(format!("unknown operator `{name}`"))),
        };
    }
    Ok(Outcome { command: "act", text: format!("{x}\n"), result: vector_json(&x), report: Report::new() })
}

fn rmatrix(a: &RmatrixArgs) -> Result<Outcome> {
    let q = load_quiver(&a.quiver)?;
    let w = dim(&q, &a.w, "w")?;
    let i = vertex(&q, &a.vertex)?;
    let mut report = Report::new();

    if let Some(vmax) = &a.vmax {
        report.extend(limit_checks(&q, i, &w, &dim(&q, vmax, "vmax")?)?);
        if let Some(w2) = &a.w2 {
            report.extend(coproduct_relation_check(&q, &w, &dim(&q, w2, "w2")?, i)?);
        }
        return Ok(Outcome { command: "rmatrix", text: String::new(), result: Value::Null, report });
    }

    let m = FixedPointModule::new(&q, &w)?;
    let kind = BlockKind::parse(&a.block)?;
    let v = match &a.v {
        Some(s) => dim(&q, s, "v")?,
        None => q.zeros(),
    };
    let block = RBlock::new(kind, i);
    let mut entries = block_matrix(&m, block, &v)?;
    if let Some(lim) = a.limit {
        let dir = match lim {
            LimitArg::Zero => crate::arith::Direction::AtZero,
            LimitArg::Inf => crate::arith::Direction::AtInfinity,
        };
        let mut limited = Vec::new();
        for col in m.enumerate_basis(&v) {
            let x = ModuleVector::basis(col.clone());
            let lhs = vector_limit(&block.apply(&m, &x)?, u_aux(), dir)?;
            if let Some(expect) = expected_limit(&m, kind, i, &v, lim, &x)? {
                report.check(format!("limit {:?} {} at I[{col}]", kind, if lim == LimitArg::Zero { "u->0" } else { "u->inf" }), lhs.equals(&expect), "");
            }
            for (row, c) in lhs.coeffs {
                limited.push((row, col.clone(), c));
            }
        }
        entries = limited;
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (r, c, x) in &entries {
        text.push_str(&format!("I[{r}] <- I[{c}]: {x}\n"));
        rows.push(json!({"row": r.to_string(), "col": c.to_string(), "entry": x.to_string()}));
    }
    Ok(Outcome { command: "rmatrix", text, result: Value::Array(rows), report })
}

/// Closed-form limit of a block on a basis vector, where one is known.
fn expected_limit(m: &FixedPointModule, kind: BlockKind, i: usize, v: &DimVector, lim: LimitArg, x: &ModuleVector) -> Result<Option<ModuleVector>> {
    let one = RationalFunction::one();
    let q = RationalFunction::qh_pow(2);
    let vi = v[i] as i32;
    Ok(match (kind, lim) {
        (BlockKind::Diag00, LimitArg::Zero) => Some(x.scale(&RationalFunction::qh_pow(-vi))),
        (BlockKind::Diag00, LimitArg::Inf) => Some(x.scale(&RationalFunction::qh_pow(vi))),
        (BlockKind::LowerF, LimitArg::Inf) => Some(m.act_f(i, 0, x)?.scale(&RationalFunction::qh_pow(vi - 1).mul(&one.sub(&q)))),
        (BlockKind::RaiseE, LimitArg::Zero) => {
            if !m.quiver().is_edge_free() && !v.is_zero() {
                return Err(KhaError::Unsupported(crate::fixedpoint::NON_GRASSMANNIAN.into()));
            }
            let mut c = RationalFunction::qh_pow(-(vi + 1)).mul(&RationalFunction::qh_pow(-1).sub(&RationalFunction::qh_pow(1)));
            for e in m.quiver().loops(i) {
                c = c.mul(&RationalFunction::qh_pow(1).div(&m.quiver().t(e))?.neg());
            }
            Some(m.act_e(i, 0, x)?.scale(&c))
        }
        _ => None,
    })
}

fn init_threads() {
    if let Ok(s) = std::env::var("KHA_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
}

/// Runs the CLI and returns the process exit status: 0 if every check passed, 1 on a failed check, 2 on an error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    init_threads();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if out.ok() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
