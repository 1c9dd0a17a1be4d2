use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eqkt::clifford_spinor::{a_factor, cyclic_actions, perp_supertrace, ElementAction};
use eqkt::group_rep::{build_group, GroupFamily, VirtualCharacter};
use eqkt::models::{circle_spectrum, product_pushforward, sphere_index_character, Geometry, SphereGeometry};
use eqkt::spectral_eta::{xi_reduced, SpectrumJson};
use eqkt::verify::{run_suite, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "eqkt", version, about = "Verification suites and calculators for equivariant eta invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more named verification suites.
    Verify {
        /// Suite names (default: all).
        suites: Vec<String>,
        /// Additional suite name; may repeat.
        #[arg(long = "suite", value_name = "SUITE")]
        suite_flags: Vec<String>,
        /// Tolerance for route-agreement checks.
        #[arg(long)]
        tol: Option<f64>,
        /// Truncation degree for characteristic series.
        #[arg(long)]
        trunc: Option<u32>,
        /// Quadrature points per axis.
        #[arg(long)]
        quad: Option<usize>,
        /// Directory for report JSON; reports go to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON run configuration, overridden by flags.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Compute a single quantity from a JSON input file.
    Compute {
        kind: Kind,
        file: PathBuf,
        /// Emit CSV instead of JSON (tables only).
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Xi,
    Index,
    Table,
    AFactor,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suites, suite_flags, tol, trunc, quad, out, config } => {
            verify(suites.into_iter().chain(suite_flags).collect(), tol, trunc, quad, out, config)
        }
        Command::Compute { kind, file, csv } => compute(kind, &file, csv).map(|text| {
            println!("{text}");
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!(
                "usage: eqkt verify <{}> [--tol T] [--trunc D] [--quad N] [--out DIR] [--config FILE]",
                Suite::NAMES.join("|")
            );
            eprintln!("       eqkt compute <xi|index|table|a-factor> FILE [--csv]");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn verify(
    mut suites: Vec<String>,
    tol: Option<f64>,
    trunc: Option<u32>,
    quad: Option<usize>,
    out: Option<PathBuf>,
    config: Option<PathBuf>,
) -> Result<bool, Failure> {
    let mut cfg = match config {
        Some(path) => {
            let text =
                std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            RunConfig::from_json_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(t) = tol {
        cfg.tolerance = t;
    }
    if let Some(d) = trunc {
        cfg.truncation_degree = d;
    }
    if let Some(q) = quad {
        cfg.quadrature_resolution = q;
    }
    if out.is_some() {
        cfg.output_dir = out;
    }
    if suites.is_empty() {
        suites = cfg.suites.clone();
    }
    if suites.is_empty() {
        suites.push("all".into());
    }
    for s in &suites {
        s.parse::<Suite>().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let mut all_pass = true;
    for name in &suites {
        let report = run_suite(name, &cfg)?;
        for r in report.failures() {
            eprintln!("FAIL {} {} distance {:e}", report.suite, r.name, r.distance);
        }
        eprintln!(
            "{}: {} ({} checks, {:.0} ms)",
            report.suite,
            if report.pass { "pass" } else { "FAIL" },
            report.records.len(),
            report.elapsed_ms
        );
        match &cfg.output_dir {
            Some(dir) => {
                let path = report.write_to(dir)?;
                eprintln!("report written to {}", path.display());
            }
            None => println!("{}", serde_json::to_string_pretty(&report)?),
        }
        all_pass &= report.pass;
    }
    Ok(all_pass)
}

struct Input<'a> {
    path: &'a Path,
    text: String,
    value: Value,
}

impl Input<'_> {
    fn read(path: &Path) -> Result<Input<'_>, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(Input { path, text, value })
    }

    /// Decodes the whole file, keeping serde's line and column diagnostics.
    fn decode<T: serde::de::DeserializeOwned>(&self, what: &str) -> Result<T, Failure> {
        serde_json::from_str(&self.text)
            .map_err(|e| Failure::Usage(format!("{}: not a valid {what}: {e}", self.path.display())))
    }
}

fn decode<T: serde::de::DeserializeOwned>(path: &Path, value: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("{}: not a valid {what}: {e}", path.display())))
}

fn parse_group(path: &Path, v: &Value) -> Result<GroupFamily, Failure> {
    match v {
        Value::String(s) => s.parse().map_err(|e| Failure::Usage(format!("{}: group: {e}", path.display()))),
        other => decode(path, other.clone(), "group"),
    }
}

fn virtual_json(v: &VirtualCharacter) -> Value {
    json!({
        "group": v.table().group().family(),
        "coefficients": v.coeffs(),
        "class_function": v.to_class_function().values().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    })
}

fn compute(kind: Kind, path: &Path, csv: bool) -> Result<String, Failure> {
    let file = Input::read(path)?;
    let input = &file.value;
    if csv && !matches!(kind, Kind::Table) {
        return Err(Failure::Usage("--csv applies to tables only".into()));
    }
    let out = match kind {
        Kind::Xi => {
            if input.get("kind").is_some() {
                match file.decode::<Geometry>("geometry")? {
                    Geometry::Circle(g) => xi_reduced(&circle_spectrum(&g)?)?.to_json(),
                    Geometry::Product(g) => json!({ "torus": product_pushforward(&g)?.to_json() }),
                    Geometry::Sphere(_) => {
                        return Err(Failure::Usage("a sphere is even-dimensional; use `compute index`".into()))
                    }
                }
            } else {
                let spec: SpectrumJson = file.decode("spectrum")?;
                xi_reduced(&spec.build()?)?.to_json()
            }
        }
        Kind::Index => {
            let geom: SphereGeometry = match input.get("kind") {
                Some(_) => match file.decode::<Geometry>("geometry")? {
                    Geometry::Sphere(g) => g,
                    _ => return Err(Failure::Usage("index needs a sphere geometry".into())),
                },
                None => file.decode("sphere geometry")?,
            };
            virtual_json(&sphere_index_character(&geom)?)
        }
        Kind::Table => {
            let family = parse_group(path, input.get("group").unwrap_or(input))?;
            let (_, table) = build_group(&family)?;
            if csv {
                return Ok(table.to_csv().trim_end().to_string());
            }
            table.to_json()
        }
        Kind::AFactor => a_factor_json(&file)?,
    };
    Ok(serde_json::to_string_pretty(&out)?)
}

/// Accepts a single element action `{angles, fixed_dim, negative}`, a
/// cyclic representation `{group, weights, fixed_dim, negative_generator}`,
/// or explicit actions `{group, actions}`.
fn a_factor_json(file: &Input) -> Result<Value, Failure> {
    let (path, input) = (file.path, &file.value);
    let Some(group) = input.get("group") else {
        let action: ElementAction = file.decode("element action")?;
        let v = perp_supertrace(&action)?;
        return Ok(json!({ "value": [v.re, v.im], "modulus": v.norm() }));
    };
    let family = parse_group(path, group)?;
    let (g, _) = build_group(&family)?;
    let actions: Vec<ElementAction> = if let Some(a) = input.get("actions") {
        decode(path, a.clone(), "action list")?
    } else {
        let GroupFamily::Cyclic { k } = family else {
            return Err(Failure::Usage("weights are only accepted for cyclic groups; give `actions`".into()));
        };
        let weights: Vec<i64> = decode(path, input.get("weights").cloned().unwrap_or(json!([])), "weight list")?;
        let fixed = input.get("fixed_dim").and_then(Value::as_u64).unwrap_or(0) as usize;
        let negative = input.get("negative_generator").and_then(Value::as_bool).unwrap_or(false);
        cyclic_actions(k, &weights, fixed, negative)
    };
    Ok(a_factor(&g, &actions)?.to_json())
}
