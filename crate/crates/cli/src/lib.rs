//! Command-line front end: argument parsing, records and exit codes.
//!
//! Exit codes: 0 irreducible or all properties pass, 2 reducible or a
//! property failed, 1 bad input, 3 size guard exceeded.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlirred_core::flag::{
    run_properties, FlagModel, FrobeniusKind, Property, PropertyReport, Status,
};
use dlirred_core::parabolic::{
    double_coset_elements, double_coset_size, max_double_coset_element, min_double_coset_rep,
};
use dlirred_core::{decide_irreducible, CoxeterSystem, Element, Error, GenSet, Twist, Word};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dlirred",
    version,
    about = "Irreducibility of Deligne-Lusztig varieties X_I(w)"
)]
struct Cli {
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether X_I(w) is irreducible.
    Decide(VarietyArgs),
    /// Number of irreducible components as a polynomial in q.
    Components(VarietyArgs),
    /// Smallest F-stable subset containing I and supp(w).
    Closure(VarietyArgs),
    /// Minimal and maximal elements of W_I w W_J.
    DoubleCoset(CosetArgs),
    /// Run brute-force property checks on a flag model.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VarietyArgs {
    /// Cartan type such as "A3", "B2xA1", or "matrix:[[1,3],[3,1]]".
    #[arg(long = "type")]
    ty: String,
    /// Action of Frobenius on the Dynkin diagram.
    #[arg(long, default_value = "id")]
    twist: String,
    /// Parabolic type, 1-based labels separated by commas or spaces.
    #[arg(long = "I", default_value = "", allow_hyphen_values = true)]
    left: String,
    /// Weyl group element as a word of 1-based labels; empty for the identity.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    w: String,
}

#[derive(Args, Debug)]
struct CosetArgs {
    #[arg(long = "type")]
    ty: String,
    #[arg(long = "I", default_value = "", allow_hyphen_values = true)]
    left: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    w: String,
    #[arg(long = "J", default_value = "", allow_hyphen_values = true)]
    right: String,
    /// Report only the minimal element.
    #[arg(long, conflicts_with = "max")]
    min: bool,
    /// Report only the maximal element.
    #[arg(long)]
    max: bool,
    /// Also list every element of the double coset.
    #[arg(long)]
    list: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModelKind {
    Gl,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FrobeniusArg {
    #[value(alias = "id")]
    Standard,
    Unitary,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "gl")]
    model: ModelKind,
    /// Ambient dimension of GL_n.
    #[arg(long)]
    n: usize,
    /// Size of the base field.
    #[arg(long)]
    q: usize,
    #[arg(long, value_enum, default_value = "standard")]
    twist: FrobeniusArg,
    /// Points are taken over F_{q^m}.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Properties to run (repeatable or comma-separated); all by default.
    #[arg(long = "property", value_delimiter = ',')]
    properties: Vec<Property>,
    /// Also list the points of every X_I(w).
    #[arg(long)]
    list: bool,
}

/// One line of `decide`, `components` or `closure` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub command: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub twist: String,
    #[serde(rename = "I")]
    pub left: GenSet,
    /// The input word, 1-based labels separated by spaces.
    pub w: String,
    pub irreducible: bool,
    pub closure: GenSet,
    /// Coefficients by ascending power of q.
    pub component_poly: Vec<u64>,
    /// The polynomial is a consequence of the verdict, not an independent count.
    pub derived: bool,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleCosetRecord {
    pub command: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    #[serde(rename = "I")]
    pub left: GenSet,
    pub w: String,
    #[serde(rename = "J")]
    pub right: GenSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max: Option<String>,
    pub size: u128,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<String>>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub command: &'static str,
    pub model: &'static str,
    pub n: usize,
    pub q: usize,
    pub twist: &'static str,
    pub m: u32,
    #[serde(flatten)]
    pub report: PropertyReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointsRecord {
    pub command: &'static str,
    #[serde(rename = "I")]
    pub left: GenSet,
    pub w: String,
    pub count: usize,
    pub points: Vec<String>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn error(message: String, code: i32) -> Output {
        Output {
            stdout: String::new(),
            stderr: message,
            code,
        }
    }
}

fn failure(context: &str, err: Error) -> Output {
    let code = match err {
        Error::SizeGuard { .. } => EXIT_GUARD,
        _ => EXIT_INPUT,
    };
    Output::error(format!("error: {context}: {err}\n"), code)
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn word_string(sys: &CoxeterSystem, w: &Element) -> String {
    sys.reduced_word(w).to_string()
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::error(text, EXIT_INPUT)
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    let pretty = cli.pretty;
    match cli.command {
        Command::Decide(a) => variety("decide", &a, pretty),
        Command::Components(a) => variety("components", &a, pretty),
        Command::Closure(a) => variety("closure", &a, pretty),
        Command::DoubleCoset(a) => double_coset(&a, pretty),
        Command::Verify(a) => verify(&a, pretty),
    }
}

struct Parsed {
    sys: CoxeterSystem,
    left: GenSet,
    word: Word,
    w: Element,
}

fn parse_inputs(ty: &str, left: &str, w: &str) -> Result<Parsed, Output> {
    let sys = CoxeterSystem::parse(ty).map_err(|e| failure("--type", e))?;
    let left = sys.parse_subset(left).map_err(|e| failure("--I", e))?;
    let word = Word::parse(w, sys.rank()).map_err(|e| failure("--w", e.into()))?;
    let w = sys.from_word(&word).map_err(|e| failure("--w", e))?;
    Ok(Parsed { sys, left, word, w })
}

/// The record `decide`, `components` and `closure` print for these inputs.
pub fn verdict_record(
    command: &str,
    ty: &str,
    twist: &str,
    left: &str,
    w: &str,
) -> Result<VerdictRecord, Output> {
    let start = Instant::now();
    let p = parse_inputs(ty, left, w)?;
    let tw = Twist::parse(twist, &p.sys).map_err(|e| failure("--twist", e))?;
    let verdict = decide_irreducible(&p.sys, p.left, &p.w, &tw).map_err(|e| failure(command, e))?;
    Ok(VerdictRecord {
        command: command.to_string(),
        cartan_type: ty.to_string(),
        twist: twist.to_string(),
        left: p.left,
        w: p.word.to_string(),
        irreducible: verdict.irreducible,
        closure: verdict.closure,
        component_poly: verdict.component_poly.coeffs().to_vec(),
        derived: verdict.derived,
        timing_ms: elapsed_ms(start),
    })
}

fn poly_string(coeffs: &[u64]) -> String {
    dlirred_core::QPoly::from_coeffs(coeffs.to_vec()).to_string()
}

fn variety(command: &str, a: &VarietyArgs, pretty: bool) -> Output {
    let rec = match verdict_record(command, &a.ty, &a.twist, &a.left, &a.w) {
        Ok(r) => r,
        Err(out) => return out,
    };
    let stdout = if pretty {
        let head = format!(
            "{} ({}), I = {}, w = [{}]",
            rec.cartan_type, rec.twist, rec.left, rec.w
        );
        match command {
            "closure" => format!("{head}\nF-stable closure: {}\n", rec.closure),
            "components" => format!(
                "{head}\ncomponents: {} (derived from the verdict)\n",
                poly_string(&rec.component_poly)
            ),
            _ => format!(
                "{head}\n{}\nclosure: {}\ncomponents: {} (derived)\n",
                if rec.irreducible {
                    "irreducible"
                } else {
                    "reducible"
                },
                rec.closure,
                poly_string(&rec.component_poly)
            ),
        }
    } else {
        serde_json::to_string(&rec).expect("record serialises") + "\n"
    };
    let code = if command == "decide" && !rec.irreducible {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    Output {
        stdout,
        stderr: String::new(),
        code,
    }
}

/// The record `double-coset` prints for these inputs.
pub fn double_coset_record(
    ty: &str,
    left: &str,
    w: &str,
    right: &str,
    want_min: bool,
    want_max: bool,
    list: bool,
) -> Result<DoubleCosetRecord, Output> {
    let start = Instant::now();
    let p = parse_inputs(ty, left, w)?;
    let right = p.sys.parse_subset(right).map_err(|e| failure("--J", e))?;
    let sys = &p.sys;
    let d = min_double_coset_rep(sys, p.left, &p.w, right);
    let max = if want_max {
        Some(word_string(
            sys,
            &max_double_coset_element(sys, p.left, &p.w, right).map_err(|e| failure("--max", e))?,
        ))
    } else {
        None
    };
    let size = double_coset_size(sys, p.left, &d, right).map_err(|e| failure("double-coset", e))?;
    let elements = if list {
        let all =
            double_coset_elements(sys, p.left, &d, right).map_err(|e| failure("--list", e))?;
        Some(all.iter().map(|x| word_string(sys, x)).collect())
    } else {
        None
    };
    Ok(DoubleCosetRecord {
        command: "double-coset".into(),
        cartan_type: ty.to_string(),
        left: p.left,
        w: p.word.to_string(),
        right,
        min: want_min.then(|| word_string(sys, &d)),
        max,
        size,
        elements,
        timing_ms: elapsed_ms(start),
    })
}

fn double_coset(a: &CosetArgs, pretty: bool) -> Output {
    let (want_min, want_max) = match (a.min, a.max) {
        (false, false) => (true, true),
        pair => pair,
    };
    let rec = match double_coset_record(&a.ty, &a.left, &a.w, &a.right, want_min, want_max, a.list)
    {
        Ok(r) => r,
        Err(out) => return out,
    };
    let stdout = if pretty {
        let mut s = format!(
            "W_I w W_J with I = {}, w = [{}], J = {} in {}: {} elements\n",
            rec.left, rec.w, rec.right, rec.cartan_type, rec.size
        );
        if let Some(m) = &rec.min {
            s += &format!("min: [{m}]\n");
        }
        if let Some(m) = &rec.max {
            s += &format!("max: [{m}]\n");
        }
        for x in rec.elements.iter().flatten() {
            s += &format!("  [{x}]\n");
        }
        s
    } else {
        serde_json::to_string(&rec).expect("record serialises") + "\n"
    };
    Output {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    }
}

fn verify(a: &VerifyArgs, pretty: bool) -> Output {
    let ModelKind::Gl = a.model;
    let kind = match a.twist {
        FrobeniusArg::Standard => FrobeniusKind::Standard,
        FrobeniusArg::Unitary => FrobeniusKind::Unitary,
    };
    let twist_name = match kind {
        FrobeniusKind::Standard => "standard",
        FrobeniusKind::Unitary => "unitary",
    };
    let model = match FlagModel::new(a.n, a.q, kind, a.m) {
        Ok(m) => m,
        Err(e) => return failure("model", e),
    };
    let explicit = !a.properties.is_empty();
    let props: Vec<Property> = if explicit {
        a.properties.clone()
    } else {
        Property::ALL.to_vec()
    };
    let reports = match run_properties(&model, &props, !explicit) {
        Ok(r) => r,
        Err(e) => return failure("verify", e),
    };
    let mut stdout = String::new();
    if pretty {
        stdout += &format!(
            "GL_{} over F_{}^{} ({twist_name} Frobenius)\n",
            a.n, a.q, a.m
        );
    }
    let mut all_pass = true;
    for report in reports {
        all_pass &= report.passed();
        if pretty {
            let status = match report.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            stdout += &format!(
                "{status} {}: {} ({} checks)\n",
                report.property, report.detail, report.checked
            );
            if let Some(c) = &report.counterexample {
                stdout += &format!("  counterexample: {c}\n");
            }
        } else {
            let rec = VerifyRecord {
                command: "verify",
                model: "gl",
                n: a.n,
                q: a.q,
                twist: twist_name,
                m: a.m,
                report,
            };
            stdout += &(serde_json::to_string(&rec).expect("record serialises") + "\n");
        }
    }
    if a.list {
        match list_points(&model, pretty) {
            Ok(s) => stdout += &s,
            Err(e) => return failure("--list", e),
        }
    }
    Output {
        stdout,
        stderr: String::new(),
        code: if all_pass { EXIT_OK } else { EXIT_NEGATIVE },
    }
}

fn list_points(model: &FlagModel, pretty: bool) -> dlirred_core::Result<String> {
    let sys = model.system();
    let mut out = String::new();
    for left in GenSet::all_subsets(sys.rank()) {
        for (w, flags) in model.dl_partition(left)? {
            let rec = PointsRecord {
                command: "points",
                left,
                w: word_string(sys, &w),
                count: flags.len(),
                points: flags.iter().map(|f| f.to_string()).collect(),
            };
            if pretty {
                out += &format!(
                    "X_I(w) with I = {}, w = [{}]: {} points\n",
                    rec.left, rec.w, rec.count
                );
                for p in &rec.points {
                    out += &format!("  {p}\n");
                }
            } else {
                out += &(serde_json::to_string(&rec).expect("record serialises") + "\n");
            }
        }
    }
    Ok(out)
}
