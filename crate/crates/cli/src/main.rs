//! `ptc`: command-line access to the Clebsch-Gordan rules, the decomposition
//! oracle, the Green ring and the verification suites.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pointed_tensor::verify::{self, Level, VerifyReport};
use pointed_tensor::{
    cg_table, decompose_oracle, tensor_rep, validate_params, Execution, GreenElement, GreenRing, IndecompClass,
    IntPoly2, MajidAlgebra, NormalForm, ParamError, Params, PathElement,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Core(#[from] pointed_tensor::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    /// Output was produced but a check failed.
    #[error("verification failed")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Io(_) | CliError::Csv(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "ptc", version, about = "Clebsch-Gordan rules and Green rings of C(n, s, q)")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Config {
    /// Number of vertices of the cyclic quiver.
    #[arg(long, global = true)]
    n: Option<i64>,
    /// The exponent s, 0 <= s < n.
    #[arg(long, global = true)]
    s: Option<i64>,
    /// q = ζ_{n²}^k with k ≡ s (mod n).
    #[arg(long, global = true, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run sweeps on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parameters, the order d of q, and the Green ring presentation.
    Info,
    /// Product of two basis paths p_i^l · p_j^m.
    Pathmul { i: usize, l: usize, j: usize, m: usize },
    /// Decomposition of V(i,e) ⊗ V(j,f).
    Cg {
        i: usize,
        e: usize,
        j: usize,
        f: usize,
        /// Also decompose the tensor product by exact ranks and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// The closed-form decomposition of every pair of indecomposables.
    Table,
    /// Green ring operations on JSON operands (a leading '@' reads a file).
    Green {
        #[command(subcommand)]
        op: GreenOp,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
    },
}

#[derive(Debug, Subcommand)]
enum GreenOp {
    /// Product of one or more Green ring elements.
    Mul {
        #[arg(required = true)]
        operands: Vec<String>,
    },
    /// Normal form of a polynomial, given as JSON or as an expression.
    NormalForm { poly: String },
    /// Green ring element of a normal form.
    FromPoly { normal_form: String },
    /// Normal form of a Green ring element.
    ToPoly { element: String },
}

impl Config {
    fn params(&self) -> CliResult<Params> {
        match (self.n, self.s, self.k) {
            (Some(n), Some(s), Some(k)) => Ok(validate_params(n, s, k)?),
            _ => Err(CliError::Usage("--n, --s and --k are required".into())),
        }
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn format(&self, default: Format, allowed: &[Format]) -> CliResult<Format> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!("format {f:?} is not supported by this command").to_lowercase()))
        }
    }
}

fn operand(src: &str) -> CliResult<String> {
    match src.strip_prefix('@') {
        Some(path) => Ok(fs::read_to_string(path)?),
        None => Ok(src.to_string()),
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn class(i: usize, e: usize, params: &Params) -> CliResult<IndecompClass> {
    if i >= params.n() {
        return Err(CliError::Usage(format!("vertex {i} is out of range for n = {}", params.n())));
    }
    Ok(IndecompClass::new(i, e, params)?)
}

fn cmd_info(config: &Config) -> CliResult<String> {
    let p = config.params()?;
    let format = config.format(Format::Text, &[Format::Text, Format::Json])?;
    let q = format!("zeta_{}^{}", p.order(), p.k());
    let presentation = format!("Z[x,y]/(x^{} - 1, (y - x - 1)f_{}(x,y))", p.n(), p.d());
    Ok(match format {
        Format::Json => to_json(&json!({
            "n": p.n(),
            "s": p.s(),
            "k": p.k(),
            "q": q,
            "d": p.d(),
            "basis_size": p.basis_size(),
            "green_ring": presentation,
        }))?,
        _ => format!(
            "n = {}\ns = {}\nq = {q}\nd = {}\nbasis size = {}\ngreen ring = {presentation}\n",
            p.n(),
            p.s(),
            p.d(),
            p.basis_size()
        ),
    })
}

fn cmd_pathmul(config: &Config, i: usize, l: usize, j: usize, m: usize) -> CliResult<String> {
    let p = config.params()?;
    let format = config.format(Format::Text, &[Format::Text, Format::Json])?;
    let check = |i: usize, l: usize| -> CliResult<PathElement> {
        if i >= p.n() {
            return Err(CliError::Usage(format!("vertex {i} is out of range for n = {}", p.n())));
        }
        Ok(PathElement::new(i, l, &p)?)
    };
    let (a, b) = (check(i, l)?, check(j, m)?);
    let product = MajidAlgebra::shared(&p).path_mul(a, b);
    Ok(match format {
        Format::Json => to_json(&product)?,
        _ => {
            let terms: Vec<String> = product.terms().iter().map(|(q, c)| format!("({c}) {q}")).collect();
            let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            format!("{a} * {b} = {body}\n")
        }
    })
}

fn cmd_cg(config: &Config, i: usize, e: usize, j: usize, f: usize, oracle: bool) -> CliResult<String> {
    let p = config.params()?;
    let format = config.format(Format::Text, &[Format::Text, Format::Json])?;
    let (a, b) = (class(i, e, &p)?, class(j, f, &p)?);
    let formula = pointed_tensor::cg_decompose(a, b, &p);
    let checked = if oracle {
        Some(decompose_oracle(&tensor_rep(a, b, &p)?, p.d())?)
    } else {
        None
    };
    let verdict = checked.as_ref().map(|o| if *o == formula { "MATCH" } else { "MISMATCH" });
    let out = match format {
        Format::Json => {
            let mut value = json!({
                "left": {"i": a.i, "e": a.e},
                "right": {"i": b.i, "e": b.e},
                "decomposition": formula,
            });
            if let (Some(o), Some(v)) = (&checked, verdict) {
                value["oracle"] = serde_json::to_value(o)?;
                value["verdict"] = json!(v);
            }
            to_json(&value)?
        }
        _ => match (&checked, verdict) {
            (Some(o), Some(v)) => format!("{a} ⊗ {b}\nformula: {formula}\noracle:  {o}\n{v}\n"),
            _ => format!("{formula}\n"),
        },
    };
    if verdict == Some("MISMATCH") {
        return Err(CliError::Failed(out));
    }
    Ok(out)
}

fn summand_tokens(d: &pointed_tensor::Decomposition) -> String {
    d.iter()
        .map(|(c, m)| format!("{},{}:{m}", c.i, c.e))
        .collect::<Vec<_>>()
        .join(";")
}

fn cmd_table(config: &Config) -> CliResult<String> {
    let p = config.params()?;
    let format = config.format(Format::Csv, &[Format::Csv, Format::Json, Format::Text])?;
    let rows = cg_table(&p, config.execution());
    Ok(match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["i", "e", "j", "f", "summands"])?;
            for ((a, b), d) in &rows {
                w.write_record([
                    a.i.to_string(),
                    a.e.to_string(),
                    b.i.to_string(),
                    b.e.to_string(),
                    summand_tokens(d),
                ])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| io::Error::other(e.to_string()))?)
                .expect("csv output is UTF-8")
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|((a, b), d)| {
                    let mut row = serde_json::to_value(d).expect("decomposition serializes");
                    row["i"] = json!(a.i);
                    row["e"] = json!(a.e);
                    row["j"] = json!(b.i);
                    row["f"] = json!(b.e);
                    row
                })
                .collect();
            to_json(&json!({"params": p, "rows": rows}))?
        }
        Format::Text => rows.iter().map(|((a, b), d)| format!("{a} ⊗ {b} = {d}\n")).collect(),
    })
}

fn parse_poly(src: &str, params: &Params) -> CliResult<IntPoly2> {
    let src = operand(src)?;
    if src.trim_start().starts_with('{') {
        Ok(IntPoly2::from_json(&src)?)
    } else {
        Ok(IntPoly2::parse(&src, Some(params))?)
    }
}

fn cmd_green(config: &Config, op: &GreenOp) -> CliResult<String> {
    let p = config.params()?;
    let format = config.format(Format::Json, &[Format::Json, Format::Text])?;
    let ring = GreenRing::new(&p)?;
    let element = |s: &str| -> CliResult<GreenElement> { Ok(GreenElement::from_json(&operand(s)?, &p)?) };
    let emit_element = |u: &GreenElement| -> CliResult<String> {
        match format {
            Format::Json => to_json(u),
            _ => Ok(format!("{u}\n")),
        }
    };
    let emit_normal = |nf: &NormalForm| -> CliResult<String> {
        match format {
            Format::Json => to_json(nf),
            _ => Ok(format!("{nf}\n")),
        }
    };
    match op {
        GreenOp::Mul { operands } => {
            let mut acc = GreenElement::one();
            for o in operands {
                acc = ring.mul(&acc, &element(o)?)?;
            }
            emit_element(&acc)
        }
        GreenOp::NormalForm { poly } => emit_normal(&ring.reduce(&parse_poly(poly, &p)?)?),
        GreenOp::FromPoly { normal_form } => {
            let nf = NormalForm::from_json(&operand(normal_form)?, &p)?;
            emit_element(&ring.from_poly(&nf)?)
        }
        GreenOp::ToPoly { element: src } => emit_normal(&ring.to_poly(&element(src)?)?),
    }
}

fn render_report(report: &VerifyReport) -> String {
    let mut out = String::new();
    let line = |out: &mut String, s: &verify::SuiteReport| {
        let status = if s.informational {
            "INFO"
        } else if s.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!("  {status} {:<20} checked {:>8}  failed {:>7}\n", s.name, s.checked, s.failed));
        if let Some(c) = &s.counterexample {
            if !s.passed() || s.informational {
                out.push_str(&format!("       e.g. {c}\n"));
            }
        }
    };
    out.push_str("global\n");
    for s in &report.global {
        line(&mut out, s);
    }
    for sec in &report.sections {
        out.push_str(&format!("{}\n", sec.params));
        for s in &sec.suites {
            line(&mut out, s);
        }
    }
    out.push_str(if report.passed() { "ALL PASS\n" } else { "FAILURES\n" });
    out
}

fn cmd_verify(config: &Config, level: LevelArg) -> CliResult<String> {
    let format = config.format(Format::Text, &[Format::Text, Format::Json])?;
    let (level, params) = match level {
        LevelArg::Quick => (Level::Quick, config.params()?),
        LevelArg::Full => {
            let p = match (config.n, config.s, config.k) {
                (None, None, None) => validate_params(2, 0, 2)?,
                _ => config.params()?,
            };
            (Level::Full, p)
        }
    };
    let report = verify::verify(level, &params, config.execution())?;
    let out = match format {
        Format::Json => to_json(&report)?,
        _ => render_report(&report),
    };
    if report.passed() {
        Ok(out)
    } else {
        let mut out = out;
        if let Some((p, s)) = report.first_failure() {
            let at = p.map(|p| format!(" at {p}")).unwrap_or_default();
            out.push_str(&format!(
                "counterexample ({}{at}): {}\n",
                s.name,
                s.counterexample.as_deref().unwrap_or("none recorded")
            ));
        }
        Err(CliError::Failed(out))
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let c = &cli.config;
    match &cli.command {
        Command::Info => cmd_info(c),
        Command::Pathmul { i, l, j, m } => cmd_pathmul(c, *i, *l, *j, *m),
        Command::Cg { i, e, j, f, oracle } => cmd_cg(c, *i, *e, *j, *f, *oracle),
        Command::Table => cmd_table(c),
        Command::Green { op } => cmd_green(c, op),
        Command::Verify { level } => cmd_verify(c, *level),
    }
}

fn emit(config: &Config, text: &str) -> io::Result<()> {
    match &config.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match emit(&cli.config, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(CliError::Failed(text)) => {
            if let Err(e) = emit(&cli.config, &text) {
                eprintln!("error: {e}");
            }
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
