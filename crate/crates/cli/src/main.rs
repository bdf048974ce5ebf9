use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use freecurve_core::arrangement::{cone_construction, multiplicity_bound_check, trichotomy};
use freecurve_core::pencils::{
    generic_pencil_freeness, product_trichotomy, residual_syzygy, residual_trichotomy, total_mu_check,
    wedge_syzygy,
};
use freecurve_core::syzygy::is_primitive;
use freecurve_core::{
    classify, discriminant, lattice, run_suite, tau_combinatorial, verify_syzygy, Backend, Classification, Error,
    Field, Fixture, LineArrangement, PencilProductSpec, ProjPoint, Scalar, SuiteConfig, FIXTURE_NAMES,
};

mod input;

#[derive(Parser)]
#[command(name = "freecurve", version, about = "Jacobian syzygies, Tjurina numbers and freeness of plane curves")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Coefficient field: Q or Fp:<prime>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Primes used by the modular rank backend.
    #[arg(long, global = true, default_value_t = 3)]
    primes: usize,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Use fraction-free elimination over Z instead of modular ranks.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// mdr, τ and the free / nearly free classification of a curve.
    Analyze {
        /// File, fixture name or polynomial.
        input: String,
    },
    /// Line arrangements: lattice, trichotomy, cone construction, bound.
    #[command(subcommand)]
    Arrangement(ArrangementCmd),
    /// Pencils of curves: discriminant, product freeness, explicit syzygies.
    #[command(subcommand)]
    Pencil(PencilCmd),
    /// Run the verification criteria.
    Suite {
        /// A criterion id, or text matched against criterion names and tags.
        #[arg(long)]
        filter: Option<String>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Damage the fixtures of one criterion.
        #[arg(long, hide = true)]
        corrupt: Option<u32>,
    },
    /// List fixture names.
    Fixtures,
}

#[derive(Subcommand)]
enum ArrangementCmd {
    /// Intersection points and their multiplicities.
    Lattice {
        /// Line file (three coefficients per line) or fixture name.
        input: String,
    },
    /// Place mdr relative to the multiplicity of a point.
    Trichotomy {
        /// Line file (three coefficients per line) or fixture name.
        input: String,
        /// Point as a:b:c; defaults to a point of maximal multiplicity.
        #[arg(long)]
        point: Option<String>,
    },
    /// Add the lines joining an apex to every multiple point.
    Cone {
        /// Line file (three coefficients per line) or fixture name.
        input: String,
        /// Apex as a:b:c.
        #[arg(long)]
        apex: String,
    },
    /// Compare m(A) with 2d/(mdr + 2).
    Bound {
        /// Line file (three coefficients per line) or fixture name.
        input: String,
    },
}

#[derive(Subcommand)]
enum PencilCmd {
    /// The discriminant of the pencil and its root structure.
    Discriminant {
        /// Pencil JSON file or fixture name.
        input: String,
    },
    /// Freeness of a product of members.
    Classify {
        /// Pencil JSON file or fixture name.
        input: String,
    },
    /// The explicit syzygy carried by a product of members.
    Syzygy {
        /// Pencil JSON file or fixture name.
        input: String,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_inconsistency() {
            Failure::Math(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

struct Env {
    field: Option<Field>,
    backend: Backend,
    seed: u64,
}

impl Env {
    fn new(opts: &Opts) -> Result<Self, Failure> {
        let field = opts.field.as_deref().map(str::parse::<Field>).transpose()?;
        let backend = if opts.exact {
            Backend::Exact
        } else {
            Backend::modular(opts.primes, opts.seed)
        };
        Ok(Env {
            field,
            backend,
            seed: opts.seed,
        })
    }

    fn load(&self, input: &str) -> Result<Fixture, Failure> {
        Ok(input::load(input, self.field)?)
    }

    fn lines(&self, input: &str) -> Result<(Fixture, LineArrangement), Failure> {
        let fx = self.load(input)?;
        let a = fx
            .arrangement
            .clone()
            .ok_or_else(|| Failure::Input(format!("`{input}` is not a line arrangement")))?;
        Ok((fx, a))
    }

    fn pencil(&self, input: &str) -> Result<(Fixture, PencilProductSpec), Failure> {
        let fx = self.load(input)?;
        let p = fx
            .pencil
            .clone()
            .ok_or_else(|| Failure::Input(format!("`{input}` is not a pencil product")))?;
        Ok((fx, p))
    }
}

fn parse_point(text: &str, field: Field) -> Result<ProjPoint, Failure> {
    let parts: Vec<&str> = text.trim_matches(|c| c == '(' || c == ')').split([':', ',']).collect();
    if parts.len() != 3 {
        return Err(Failure::Input(format!("point `{text}` needs three coordinates a:b:c")));
    }
    let mut c = Vec::new();
    for p in parts {
        let q = freecurve_core::algebra::scalar::parse_rational(p.trim())
            .ok_or_else(|| Failure::Input(format!("`{p}` is not a rational number")))?;
        c.push(Scalar::from_rational(field, &q)?);
    }
    Ok(ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone()])?)
}

fn analyze(env: &Env, input: &str) -> Outcome {
    let fx = env.load(input)?;
    let report = classify(&fx.f, &env.backend)?;
    let mut v = serde_json::to_value(&report)?;
    v["input"] = json!(fx.name);
    v["f"] = json!(fx.f.to_string());
    Ok(v)
}

fn arrangement(env: &Env, cmd: &ArrangementCmd) -> Outcome {
    match cmd {
        ArrangementCmd::Lattice { input } => {
            let (_, a) = env.lines(input)?;
            let lat = lattice(&a)?;
            let counts: serde_json::Map<String, Value> =
                lat.counts().iter().map(|(m, n)| (m.to_string(), json!(n))).collect();
            Ok(json!({
                "d": a.degree(),
                "field": a.field().to_string(),
                "points": lat.points,
                "counts": counts,
                "max_multiplicity": lat.max_multiplicity(),
                "tau_combinatorial": tau_combinatorial(&lat),
            }))
        }
        ArrangementCmd::Trichotomy { input, point } => {
            let (_, a) = env.lines(input)?;
            let p = match point {
                Some(text) => parse_point(text, a.field())?,
                None => lattice(&a)?
                    .max_point()
                    .ok_or_else(|| Failure::Input("the arrangement has no multiple point".into()))?
                    .point
                    .clone(),
            };
            let t = trichotomy(&a, &p, &env.backend)?;
            let mut v = serde_json::to_value(&t)?;
            v["case_label"] = json!(t.case.label());
            Ok(v)
        }
        ArrangementCmd::Cone { input, apex } => {
            let (_, a) = env.lines(input)?;
            let p = parse_point(apex, a.field())?;
            let b = cone_construction(&a, &p)?;
            let report = classify(&b.arrangement.polynomial(), &env.backend)?;
            let confirmed = report.class == b.expected_class
                && report.tau as i64 == b.expected_tau
                && (b.expected_class == Classification::Cone || report.exponents == Some(b.expected_exponents));
            if !confirmed {
                return Err(Failure::Math(format!(
                    "B(A,p) expected {} {:?} with tau {}, classified {} {:?} with tau {}",
                    b.expected_class, b.expected_exponents, b.expected_tau, report.class, report.exponents, report.tau
                )));
            }
            Ok(json!({
                "construction": b,
                "lines": b.arrangement.to_text().lines().collect::<Vec<_>>(),
                "classification": report,
            }))
        }
        ArrangementCmd::Bound { input } => {
            let (_, a) = env.lines(input)?;
            Ok(serde_json::to_value(multiplicity_bound_check(&a, &env.backend)?)?)
        }
    }
}

/// Structural checks only apply under their hypotheses; a failed
/// precondition is reported as such, an inconsistency aborts.
fn applicable(r: freecurve_core::Result<serde_json::Result<Value>>) -> Outcome {
    match r {
        Ok(v) => Ok(v?),
        Err(e) if e.is_inconsistency() => Err(Failure::Math(e.to_string())),
        Err(e) => Ok(json!({ "not_applicable": e.to_string() })),
    }
}

fn pencil(env: &Env, cmd: &PencilCmd) -> Outcome {
    match cmd {
        PencilCmd::Discriminant { input } => {
            let (_, spec) = env.pencil(input)?;
            let d = discriminant(&spec.pencil)?;
            let mut v = serde_json::to_value(&d)?;
            v["total_mu"] = serde_json::to_value(total_mu_check(&spec.pencil)?)?;
            Ok(v)
        }
        PencilCmd::Classify { input } => {
            let (fx, spec) = env.pencil(input)?;
            let report = classify(&fx.f, &env.backend)?;
            let (criterion, tri) = if spec.h.is_none() {
                (
                    applicable(generic_pencil_freeness(&spec, &env.backend).map(|v| serde_json::to_value(v)))?,
                    applicable(product_trichotomy(&spec, &env.backend).map(|v| serde_json::to_value(v)))?,
                )
            } else {
                (
                    json!({ "not_applicable": "the product has an extra factor h" }),
                    applicable(residual_trichotomy(&spec, &env.backend).map(|v| serde_json::to_value(v)))?,
                )
            };
            Ok(json!({
                "k": spec.k(),
                "m": spec.m(),
                "d": fx.f.degree(),
                "classification": report,
                "pencil_criterion": criterion,
                "trichotomy": tri,
            }))
        }
        PencilCmd::Syzygy { input } => {
            let (fx, spec) = env.pencil(input)?;
            let s = match &spec.h {
                None => wedge_syzygy(&spec.pencil, &fx.f)?,
                Some(h) => residual_syzygy(&spec.pencil, h, spec.m(), &fx.f)?,
            };
            Ok(json!({
                "kind": if spec.h.is_none() { "wedge" } else { "residual" },
                "certificate": s.to_json(),
                "verified": verify_syzygy(&fx.f, &s)?,
                "primitive": is_primitive(&s),
            }))
        }
    }
}

fn suite(env: &Env, filter: Option<String>, jobs: Option<usize>, corrupt: Option<u32>) -> (Value, bool) {
    let config = SuiteConfig {
        backend: env.backend.clone(),
        seed: env.seed,
        filter,
        corrupt,
        jobs,
    };
    let results = run_suite(&config);
    let ok = results.iter().all(|r| r.passed);
    (json!({ "passed": ok, "criteria": results }), ok)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// key: value lines, nested objects indented.
fn table(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        table(val, indent + 2, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            table(item, indent + 4, out);
                        }
                    }
                    Value::Array(items) => {
                        let parts: Vec<String> = items.iter().map(scalar).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn suite_table(v: &Value) -> String {
    let mut out = String::new();
    for r in v["criteria"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "{} [{:>2}] {} ({} ms / {} ms): {}\n",
            if r["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
            r["id"].as_u64().unwrap_or(0),
            scalar(&r["name"]),
            r["elapsed_ms"],
            r["limit_ms"],
            scalar(&r["detail"]),
        ));
    }
    out
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn write_out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn emit(v: &Value, as_json: bool) {
    if as_json {
        write_out(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
    } else {
        let mut out = String::new();
        table(v, 0, &mut out);
        write_out(&out);
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let env = Env::new(&cli.opts)?;
    let as_json = cli.opts.json;
    let value = match &cli.command {
        Command::Analyze { input } => analyze(&env, input)?,
        Command::Arrangement(cmd) => arrangement(&env, cmd)?,
        Command::Pencil(cmd) => pencil(&env, cmd)?,
        Command::Fixtures => json!(FIXTURE_NAMES),
        Command::Suite { filter, jobs, corrupt } => {
            let (v, ok) = suite(&env, filter.clone(), *jobs, *corrupt);
            if as_json {
                emit(&v, true);
            } else {
                write_out(&suite_table(&v));
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    if let (Command::Fixtures, false) = (&cli.command, as_json) {
        write_out(&FIXTURE_NAMES.iter().map(|n| format!("{n}\n")).collect::<String>());
    } else {
        emit(&value, as_json);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(2)
        }
    }
}
