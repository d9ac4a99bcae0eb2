use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use divalg::hurwitz::{hurwitz, invinv_algebra, InvInvLabel, InvInvSpec};
use divalg::identity::{catalog, catalog_list, check_exact_multilinear, check_sampled, parse_identity, Verdict};
use divalg::json::{algebra_from_json, algebra_to_json, class_datum_from_json, report};
use divalg::normal_form::{membership, reduce, Family};
use divalg::structure::{fingerprint, left_inversion, nuclei, tder};
use divalg::{Algebra, Error, LinearMap};

const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser)]
#[command(name = "divalg", version, about = "Computations with finite-dimensional real division algebras")]
struct Cli {
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Overrides the tolerance stored with loaded algebras.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build or inspect algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Check identities or list the built-in catalogs.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Ternary derivations and nuclei.
    Tder {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Test for inversion on the left.
    Inversion {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Build and check the ten algebras with involutive inversion.
    InvinvVerify,
    /// Reduce a classification datum to its normal form.
    NormalForm {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Build(BuildArgs),
    /// Print the fingerprint of an algebra file.
    Describe { file: PathBuf },
}

#[derive(Args)]
struct BuildArgs {
    /// Hurwitz algebra of dimension 1, 2, 4 or 8.
    #[arg(long, group = "source")]
    hurwitz: Option<usize>,
    /// One of the ten involutive-inversion algebras, e.g. O-113.
    #[arg(long, group = "source")]
    invinv: Option<String>,
    /// An existing algebra file.
    #[arg(long, group = "source")]
    from: Option<PathBuf>,
    /// JSON `{"alpha": rows, "beta": rows}`; forms the isotope `α(x)β(y)`.
    #[arg(long)]
    isotope: Option<PathBuf>,
    #[arg(long)]
    opposite: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the fingerprint of the result.
    #[arg(long)]
    describe: bool,
}

#[derive(Subcommand)]
enum IdentityCmd {
    Check {
        #[arg(long)]
        algebra: PathBuf,
        /// Catalog entry `family:key`.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        catalog: Option<String>,
        #[arg(long)]
        expr: Option<String>,
        /// Multilinear check on all basis assignments (balanced identities only).
        #[arg(long)]
        exact: bool,
    },
    /// List a catalog: table1, bol-moufang, moufang-bol, involutive-inversion.
    Catalog { family: String },
}

/// Failure carrying the process exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Schema(_) | Error::UnknownLabel(_) | Error::Domain(_) | Error::NotBalanced | Error::Budget(_) => 2,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Out = Result<(Value, u8), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path, tol: Option<f64>) -> Result<Algebra, Fail> {
    let a = algebra_from_json(&read(path)?).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    Ok(match tol {
        Some(t) => a.with_tol(t),
        None => a,
    })
}

fn matrix(v: &Value, n: usize, what: &str) -> Result<LinearMap, Fail> {
    let rows: Vec<Vec<f64>> = serde_json::from_value(v.clone()).map_err(|e| Fail(2, format!("{what}: {e}")))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Fail(2, format!("{what} must be {n}×{n}")));
    }
    Ok(LinearMap::from_fn(n, n, |i, j| rows[i][j]))
}

fn describe(a: &Algebra, seed: u64, spec: Option<&InvInvSpec>) -> Result<Value, Fail> {
    let fp = fingerprint(a, seed, spec)?;
    let mut v = report("fingerprint", &fp);
    if let Some(labels) = a.labels() {
        v["labels"] = json!(labels);
    }
    Ok(v)
}

fn cmd_build(cli: &Cli, args: &BuildArgs) -> Out {
    let (mut a, mut spec) = match (&args.hurwitz, &args.invinv, &args.from) {
        (Some(n), _, _) => (hurwitz(*n)?.into_algebra(), None),
        (_, Some(label), _) => {
            let (a, s) = invinv_algebra(label)?;
            (a, Some(s))
        }
        (_, _, Some(path)) => (load_algebra(path, None)?, None),
        _ => return Err(Fail(2, "one of --hurwitz, --invinv, --from is required".into())),
    };
    if let Some(path) = &args.isotope {
        let maps: Value = serde_json::from_str(&read(path)?).map_err(|e| Fail(2, e.to_string()))?;
        let alpha = matrix(&maps["alpha"], a.dim(), "alpha")?;
        let beta = matrix(&maps["beta"], a.dim(), "beta")?;
        a = a.isotope(&alpha, &beta)?;
        spec = None;
    }
    if args.opposite {
        a = a.opposite();
        spec = None;
    }
    if let Some(t) = cli.tol {
        a = a.with_tol(t);
    }
    let doc = algebra_to_json(&a);
    if let Some(out) = &args.out {
        fs::write(out, format!("{doc}\n")).map_err(|e| Fail(1, format!("{}: {e}", out.display())))?;
    }
    let value = if args.describe {
        describe(&a, cli.seed, spec.as_ref())?
    } else if args.out.is_some() {
        json!({"schema": divalg::json::SCHEMA, "kind": "written", "dim": a.dim(), "constants": a.constants().len()})
    } else {
        serde_json::from_str(&doc).expect("own output parses")
    };
    Ok((value, 0))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => 0,
        Verdict::Fails => 3,
        Verdict::Inconclusive => 4,
    }
}

fn cmd_identity(cli: &Cli, cmd: &IdentityCmd) -> Out {
    match cmd {
        IdentityCmd::Check { algebra, catalog: entry, expr, exact } => {
            let a = load_algebra(algebra, cli.tol)?;
            let id = match (entry, expr) {
                (Some(name), _) => catalog(name)?,
                (_, Some(src)) => parse_identity(src).map_err(Error::from)?,
                _ => unreachable!("clap requires one identity source"),
            };
            let r = if *exact { check_exact_multilinear(&a, &id)? } else { check_sampled(&a, &id, cli.trials, cli.seed)? };
            let mut v = report("identity-check", &r);
            v["identity"] = json!(id.to_string());
            Ok((v, verdict_code(r.verdict)))
        }
        IdentityCmd::Catalog { family } => {
            let list = catalog_list(family)?;
            Ok((report("catalog", &json!({"family": family, "count": list.len(), "entries": list})), 0))
        }
    }
}

#[derive(Serialize)]
struct TderSummary {
    dim: usize,
    gap: f64,
    projections: [usize; 3],
    kernels: [usize; 3],
    nuclei_dims: (usize, usize, usize),
    nuclei_min_gap: f64,
}

fn cmd_tder(cli: &Cli, path: &Path) -> Out {
    let a = load_algebra(path, cli.tol)?;
    let t = tder(&a);
    let nu = nuclei(&a);
    let s = TderSummary { dim: t.dim, gap: t.gap, projections: t.projections, kernels: t.kernels, nuclei_dims: nu.dims(), nuclei_min_gap: nu.min_gap() };
    Ok((report("tder", &s), 0))
}

fn cmd_inversion(cli: &Cli, path: &Path, samples: usize) -> Out {
    let a = load_algebra(path, cli.tol)?;
    let r = left_inversion(&a, samples, cli.seed)?;
    Ok((report("inversion", &r), if r.has_left_inversion { 0 } else { 3 }))
}

fn cmd_invinv_verify(cli: &Cli) -> Out {
    let identity = catalog("involutive-inversion:inversion")?;
    let mut rows = Vec::new();
    let mut prints = Vec::new();
    let mut first_failure: Option<String> = None;
    for label in InvInvLabel::ALL {
        let (a, spec) = invinv_algebra(label.as_str())?;
        let relations = spec.relation_residual();
        let check = check_sampled(&a, &identity, cli.trials, cli.seed)?;
        let inversion = left_inversion(&a, 10, cli.seed)?;
        let fp = fingerprint(&a, cli.seed, Some(&spec))?;
        let pass = relations < 1e-10 && check.verdict == Verdict::Holds && inversion.has_left_inversion && inversion.involutive;
        if !pass && first_failure.is_none() {
            first_failure = Some(format!("{label}: relations {relations:.3e}, identity {:?}, inversion {}", check.verdict, inversion.has_left_inversion));
        }
        rows.push(json!({
            "label": label.as_str(),
            "relation_residual": relations,
            "identity_residual": check.max_residual,
            "identity_verdict": check.verdict,
            "involutive_inversion": inversion.involutive,
            "fingerprint": fp,
            "pass": pass,
        }));
        prints.push((label, fp));
    }
    for (i, (l1, f1)) in prints.iter().enumerate() {
        for (l2, f2) in &prints[i + 1..] {
            if f1 == f2 && first_failure.is_none() {
                first_failure = Some(format!("fingerprints of {l1} and {l2} coincide"));
            }
        }
    }
    let passed = rows.iter().filter(|r| r["pass"] == json!(true)).count();
    let v = report("invinv-verify", &json!({"algebras": rows, "passed": passed, "total": rows.len(), "first_failure": first_failure}));
    Ok((v, if first_failure.is_some() { 3 } else { 0 }))
}

fn cmd_normal_form(family: &Option<String>, path: &Path) -> Out {
    let family: Option<Family> = family.as_deref().map(str::parse).transpose()?;
    let x = class_datum_from_json(&read(path)?, family)?;
    let r = reduce(&x)?;
    let mut v = report("normal-form", &r);
    v["membership"] = json!(membership(&r));
    Ok((v, 0))
}

fn text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .filter(|(k, _)| k.as_str() != "schema")
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> Out {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Fail(1, e.to_string()))?;
    }
    match &cli.command {
        Command::Algebra(AlgebraCmd::Build(args)) => cmd_build(cli, args),
        Command::Algebra(AlgebraCmd::Describe { file }) => Ok((describe(&load_algebra(file, cli.tol)?, cli.seed, None)?, 0)),
        Command::Identity(cmd) => cmd_identity(cli, cmd),
        Command::Tder { algebra } => cmd_tder(cli, algebra),
        Command::Inversion { algebra, samples } => cmd_inversion(cli, algebra, *samples),
        Command::InvinvVerify => cmd_invinv_verify(cli),
        Command::NormalForm { family, input } => cmd_normal_form(family, input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, code)) => {
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("values serialize"),
                Format::Text => text(&value),
            };
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
