//! Argument handling and output formatting for the `ramcalc` binary. All
//! arithmetic happens in the `ramcalc` library; this crate only parses
//! flags, dispatches and prints.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ramcalc::acceptance;
use ramcalc::artin_schreier::ASCharacter;
use ramcalc::base_change::{
    check_frobenius_invariance, check_functoriality_sigma, check_functoriality_theta, check_thm_left,
    check_thm_right, descend, transport, CheckReport, Conductors, DiagramReport,
};
use ramcalc::conductor::ConductorReport;
use ramcalc::curve_oracle::{oracle_conductor, OracleBounds};
use ramcalc::{classify, Error, ErrorKind, ExtensionDesc, FieldDesc, GradedForm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ramcalc", version, about = "Conductors of Artin-Schreier characters over K_{a,b}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Degree of the coefficient field F_q over F_p.
    #[arg(long, default_value_t = 1)]
    qdeg: u32,
    /// Root depth of x.
    #[arg(long, default_value_t = 0)]
    a: u32,
    /// Root depth of y.
    #[arg(long, default_value_t = 0)]
    b: u32,
}

#[derive(Args, Debug, Clone)]
struct ExtArgs {
    #[arg(long, default_value_t = 0)]
    da: u32,
    #[arg(long, default_value_t = 0)]
    db: u32,
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Expression in x, y, e.g. "x/y^9" or "x^(1/3)*y^-3 + 2".
    #[arg(long, conflicts_with = "input")]
    expr: Option<String>,
    /// File with one expression per line; `#` starts a comment.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Emit JSON (one object per expression).
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Theorem {
    Right,
    Left,
    Frobenius,
    Theta,
    Sigma,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce f modulo {g^p - g} and classify the character.
    Reduce {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Swan conductor, total dimension, forms and CC coefficients.
    Conductor {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Characteristic form and refined Swan form.
    Charform {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Transport to K_{a+da,b+db}, or descend from it with --descend.
    Basechange {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        ext: ExtArgs,
        /// Read the expression over the larger field and push it down.
        #[arg(long)]
        descend: bool,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Run a conductor bound or functoriality check.
    Check {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Frobenius depth for --theorem frobenius (defaults to --da).
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Lower bounds for sw and dt from restriction to curves.
    Oracle {
        #[command(flatten)]
        field: FieldArgs,
        /// Largest contact multiplicity (defaults to p).
        #[arg(long)]
        max_mu: Option<u32>,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        #[arg(long, default_value_t = 64)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree of the constant extension used for curve coefficients.
        #[arg(long)]
        ext_degree: Option<u32>,
        #[command(flatten)]
        io: InputArgs,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Corpus {
        #[arg(long)]
        json: bool,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn raise(&mut self, code: i32) {
        self.code = self.code.max(code);
    }

    fn error(&mut self, code: i32, msg: impl std::fmt::Display) {
        let _ = writeln!(self.stderr, "error: {msg}");
        self.raise(code);
    }
}

fn domain_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Parse => EXIT_USAGE,
        ErrorKind::Domain => EXIT_DOMAIN,
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Outcome::default();
    match cli.command {
        Command::Corpus { json } => run_corpus(json, &mut out),
        Command::Reduce { field, io } => each(&field, None, &io, &mut out, |c, _| Ok(Rendered::plain(reduce_view(c)))),
        Command::Conductor { field, io } => each(&field, None, &io, &mut out, |c, _| {
            let r = ConductorReport::compute(c)?;
            Ok(Rendered::plain((r.to_json(), conductor_text(&r))))
        }),
        Command::Charform { field, io } => each(&field, None, &io, &mut out, |c, _| {
            let r = ConductorReport::compute(c)?;
            if r.char_form.is_none() {
                return Err(Error::NotRamified);
            }
            let v = json!({
                "char_form": r.char_form.as_ref().map(GradedForm::to_json),
                "rsw": r.rsw.as_ref().map(GradedForm::to_json),
            });
            let text = format!(
                "char_form: {}\nrsw: {} (experimental)",
                form_text(r.char_form.as_ref().expect("ramified")),
                form_text(r.rsw.as_ref().expect("ramified"))
            );
            Ok(Rendered::plain((v, text)))
        }),
        Command::Basechange { field, ext, descend: down, io } => {
            each(&field, Some((&ext, down)), &io, &mut out, |c, ext| {
                let ext = ext.expect("extension given");
                let image = if down { descend(c, ext)? } else { transport(c, ext)? };
                let cond = Conductors::of(&image)?;
                let inv = ext.invariants();
                let v = json!({
                    "direction": if down { "descend" } else { "transport" },
                    "from": ext.from().to_json(),
                    "to": ext.to().to_json(),
                    "invariants": inv,
                    "image": image.f().to_surface_string(),
                    "swan": cond.sw,
                    "dimtot": cond.dt,
                });
                let text = format!(
                    "{} {}\nimage: {}\nswan: {}\ndimtot: {}\ne = {}, n = {}, s = {}, f_dual = {}",
                    if down { "descend along" } else { "transport along" },
                    ext,
                    image.f().to_surface_string(),
                    cond.sw,
                    cond.dt,
                    inv.e,
                    inv.n,
                    inv.s,
                    inv.f_dual
                );
                Ok(Rendered::plain((v, text)))
            })
        }
        Command::Check { field, ext, theorem, n, io } => {
            let over_top = matches!(theorem, Theorem::Left | Theorem::Sigma);
            each(&field, Some((&ext, over_top)), &io, &mut out, |c, e| {
                let e = e.expect("extension given");
                match theorem {
                    Theorem::Right => Ok(check_view(check_thm_right(c, e)?)),
                    Theorem::Left => Ok(check_view(check_thm_left(c, e)?)),
                    Theorem::Frobenius => Ok(check_view(check_frobenius_invariance(c, n.unwrap_or(ext.da))?)),
                    Theorem::Theta => Ok(diagram_view(check_functoriality_theta(c, e)?)),
                    Theorem::Sigma => Ok(diagram_view(check_functoriality_sigma(c, e)?)),
                }
            })
        }
        Command::Oracle { field, max_mu, max_deg, trials, seed, ext_degree, io } => {
            let mu = max_mu.unwrap_or(field.p as u32);
            each(&field, None, &io, &mut out, |c, _| {
                let bounds = OracleBounds { mu_max: mu, deg_max: max_deg, trials, seed, ext_degree };
                let est = oracle_conductor(c.f(), &bounds)?;
                let sym = Conductors::of(c)?;
                let mut v = est.to_json();
                v["symbolic"] = json!({"swan": sym.sw, "dimtot": sym.dt});
                let witness = |w: &Option<ramcalc::curve_oracle::Witness>| match w {
                    Some(w) => format!("u = {}, mu = {}, ratio {}", w.curve, w.mu, w.ratio),
                    None => "none".to_string(),
                };
                let text = format!(
                    "sw_est: {} (ceiling {}), symbolic {}\n  witness {}\ndt_est: {} (ceiling {}), symbolic {}\n  witness {}\ncurves searched: {} over F_{}",
                    v["sw_est"].as_str().unwrap_or_default(),
                    est.sw_ceiling(),
                    sym.sw,
                    witness(&est.sw_witness),
                    v["dt_est"].as_str().unwrap_or_default(),
                    est.dt_ceiling(),
                    sym.dt,
                    witness(&est.dt_witness),
                    est.curves_searched,
                    c.field().fq().order().pow(est.ext_degree)
                );
                Ok(Rendered::plain((v, text)))
            })
        }
    }
    out
}

/// One result: JSON, text and whether a checker failed.
struct Rendered {
    json: Value,
    text: String,
    failed: bool,
}

impl Rendered {
    fn plain((json, text): (Value, String)) -> Self {
        Rendered { json, text, failed: false }
    }
}

fn form_text(g: &GradedForm) -> String {
    let f = &g.form;
    let second = if f.basis() == ramcalc::Basis::Log { "dlog w" } else { "dw" };
    let mut parts = Vec::new();
    if !f.du().is_zero() {
        parts.push(format!("({}) du", f.du().to_surface_string()));
    }
    if !f.d2().is_zero() {
        parts.push(format!("({}) {second}", f.d2().to_surface_string()));
    }
    let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
    format!("{body} at level {}", g.level)
}

fn reduce_view(c: &ASCharacter) -> (Value, String) {
    let cls = classify(c);
    let mut v = serde_json::to_value(c.to_json()).expect("serializable");
    v["classification"] = json!(cls);
    let witness = c.witness().map(|w| w.to_surface_string()).unwrap_or_default();
    let text = format!("reduced: {}\nwitness: {}\nclassification: {}", c.f().to_surface_string(), witness, cls);
    (v, text)
}

fn conductor_text(r: &ConductorReport) -> String {
    let mut s = format!(
        "reduced: {}\nclassification: {}\nswan: {}\ndimtot: {}",
        r.character.f().to_surface_string(),
        r.classification,
        r.sw,
        r.dt
    );
    if let (Some(cf), Some(rsw), Some(cc)) = (&r.char_form, &r.rsw, &r.cc) {
        let _ = write!(
            s,
            "\nchar_form: {}\nrsw: {} (experimental)\ncc: {} [T*X] {} [D.<{}>]",
            form_text(cf),
            form_text(rsw),
            cc.zero_section_coeff,
            cc.divisor_coeff,
            cc.direction()
        );
    }
    s
}

fn check_view(r: CheckReport) -> Rendered {
    let text = format!(
        "theorem {}: status {}\nimage: {}\nsw: {} <= {} (factor {}, rhs {})\ndt: {} <= {} (factor {}, rhs {})",
        r.theorem,
        r.status.as_str(),
        r.image,
        r.lhs.sw,
        r.bound.sw,
        r.factor,
        r.rhs.sw,
        r.lhs.dt,
        r.bound.dt,
        r.factor,
        r.rhs.dt
    );
    Rendered { failed: r.status.is_fail(), json: r.to_json(), text }
}

fn diagram_view(r: DiagramReport) -> Rendered {
    let text = format!(
        "square {}: {} (status {})\nlevel {} (from {}), untwisted {}, killed {:?}\nlhs: {}\nrhs: {}",
        r.theorem,
        r.outcome(),
        r.status.as_str(),
        r.level,
        r.source_level,
        r.untwisted,
        r.killed,
        form_text(&r.lhs),
        form_text(&r.rhs)
    );
    Rendered { failed: r.status.is_fail(), json: r.to_json(), text }
}

fn read_expressions(io: &InputArgs) -> Result<Vec<String>, String> {
    if let Some(e) = &io.expr {
        return Ok(vec![e.clone()]);
    }
    let Some(path) = &io.input else {
        return Err("one of --expr or --in is required".into());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

/// Builds the field(s), then parses and processes every expression.
fn each(
    field: &FieldArgs,
    ext: Option<(&ExtArgs, bool)>,
    io: &InputArgs,
    out: &mut Outcome,
    mut f: impl FnMut(&ASCharacter, Option<&ExtensionDesc>) -> Result<Rendered, Error>,
) {
    let base = match FieldDesc::with_prime(field.p, field.qdeg, field.a, field.b) {
        Ok(k) => k,
        Err(e) => return out.error(EXIT_DOMAIN, e),
    };
    let ext_desc = match ext.map(|(e, _)| ExtensionDesc::try_over(&base, e.da, e.db)).transpose() {
        Ok(d) => d,
        Err(e) => return out.error(EXIT_DOMAIN, e),
    };
    let parse_field = match (&ext_desc, ext) {
        (Some(d), Some((_, true))) => d.to().clone(),
        _ => base.clone(),
    };
    let exprs = match read_expressions(io) {
        Ok(v) => v,
        Err(msg) => return out.error(EXIT_USAGE, msg),
    };
    let several = exprs.len() > 1;
    for (i, text) in exprs.iter().enumerate() {
        let c = match ASCharacter::parse(&parse_field, text) {
            Ok(c) => c,
            Err(e) => {
                out.error(domain_code(&e), format!("{text:?}: {e}"));
                continue;
            }
        };
        match f(&c, ext_desc.as_ref()) {
            Ok(r) => {
                if r.failed {
                    out.raise(EXIT_CHECK_FAILED);
                }
                if io.json {
                    let _ = writeln!(out.stdout, "{}", serde_json::to_string(&r.json).expect("serializable"));
                } else {
                    if several {
                        if i > 0 {
                            out.stdout.push('\n');
                        }
                        let _ = writeln!(out.stdout, "# {text}");
                    }
                    let _ = writeln!(out.stdout, "{}", r.text);
                }
            }
            Err(e) => out.error(domain_code(&e), format!("{text:?}: {e}")),
        }
    }
}

fn run_corpus(json_out: bool, out: &mut Outcome) {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        if json_out {
            let v = json!({
                "criterion": o.id,
                "title": o.title,
                "passed": o.passed,
                "detail": o.detail,
                "elapsed_ms": o.elapsed.as_secs_f64() * 1e3,
            });
            let _ = writeln!(out.stdout, "{v}");
        } else {
            let _ = writeln!(out.stdout, "{}", o.line());
        }
        if !o.passed {
            out.raise(EXIT_CHECK_FAILED);
        }
    }
}
