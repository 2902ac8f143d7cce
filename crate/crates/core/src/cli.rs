//! Command-line front end: argument types and JSON rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::localize::QuasiSimpleSet;
use crate::oracle::{verify_suite, VerifyBounds};
use crate::registry::{parse_alpha, Config, LambdaSet, TubeRegistry};
use crate::resolving::ResolvingFilter;
use crate::tube::Finite;
use crate::{BranchModule, TiltingDescriptor, SCHEMA};

#[derive(Debug, Parser)]
#[command(
    name = "tametilt",
    version,
    about = "Large tilting modules over tame hereditary algebras"
)]
pub struct Cli {
    /// Named preset registry (see `presets`).
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// JSON registry config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every branch module of the registry.
    BranchEnumerate,
    /// Canonical descriptor of a class of large tilting modules.
    Classify(Target),
    /// Dual cotilting module.
    Dual(Target),
    /// Per-tube summand report.
    Decompose(Target),
    /// Tube data of the universal localization at a set of quasi-simples.
    Localize {
        #[arg(long)]
        at: String,
    },
    /// Summands of R_U/R with multiplicities.
    Quotient {
        #[arg(long)]
        at: String,
        /// JSON object `{"alpha": {"tube:index": n}, "alpha_generic": n}`.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Noetherianity, Σ-pure-injectivity and localization form.
    Predicates(Target),
    /// Run the brute-force verification suite.
    Verify {
        #[arg(long, default_value_t = VerifyBounds::default().rank_max)]
        rank_max: u32,
    },
    /// List the shipped presets.
    Presets,
}

#[derive(Debug, Args)]
pub struct Target {
    /// `{"branch": [...], "lambda": {"named": [...], "rest": bool}}`.
    #[arg(long, conflicts_with = "filter", required_unless_present = "filter")]
    pub pair: Option<String>,
    /// `{tube: {"rays": [...], "region": ["i[l]", ...]}}`.
    #[arg(long)]
    pub filter: Option<String>,
}

/// Text for stdout and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn error_document(e: &Error) -> Value {
    json!({
        "schema": SCHEMA,
        "error": {"check": e.check_id(), "message": e.to_string()},
    })
}

pub fn usage_error(message: &str) -> Outcome {
    Outcome {
        stdout: format!("{}\n", error_document(&Error::Usage(message.to_string()))),
        code: 2,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(stdout) => Outcome { stdout, code: 0 },
        Err(Failure::Error(e)) => Outcome {
            stdout: format!("{}\n", error_document(&e)),
            code: if e.is_usage() { 2 } else { 1 },
        },
        Err(Failure::Report(stdout)) => Outcome { stdout, code: 1 },
    }
}

enum Failure {
    Error(Error),
    /// A verification report with failures.
    Report(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn load_config(cli: &Cli, fallback: impl FnOnce() -> Result<Config>) -> Result<Config> {
    match (&cli.preset, &cli.config) {
        (Some(_), Some(_)) => Err(Error::Usage("give either --preset or --config".into())),
        (Some(name), None) => Ok(Config::new(TubeRegistry::preset(name)?)),
        (None, Some(path)) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            Config::from_json(&src)
        }
        (None, None) => fallback(),
    }
}

fn document(mut v: Value) -> String {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    format!("{v}\n")
}

fn execute(cli: &Cli) -> std::result::Result<String, Failure> {
    let kronecker = || Ok(Config::new(TubeRegistry::preset("kronecker")?));
    Ok(match &cli.command {
        Command::Presets => {
            let presets: BTreeMap<&str, Value> = TubeRegistry::preset_names()
                .map(|n| {
                    let reg = TubeRegistry::preset(n).expect("shipped presets parse");
                    (n, Config::new(reg).to_value())
                })
                .collect();
            document(json!({ "presets": presets }))
        }
        Command::BranchEnumerate => {
            let cfg = load_config(cli, kronecker)?;
            let all = cfg.registry.enumerate_branch_modules();
            document(json!({ "branch_modules": all }))
        }
        Command::Classify(t) => document(descriptor(cli, t)?.to_json()),
        Command::Dual(t) => document(descriptor(cli, t)?.cotilting_dual().to_json()),
        Command::Decompose(t) => {
            let d = descriptor(cli, t)?;
            document(d.decompose()?.to_json(d.registry()))
        }
        Command::Predicates(t) => {
            let d = descriptor(cli, t)?;
            document(d.predicates().to_json(d.registry()))
        }
        Command::Localize { at } => {
            let cfg = load_config(cli, kronecker)?;
            let u = parse_qs_set(&cfg.registry, at)?;
            document(cfg.registry.localize_registry(&u)?.to_json())
        }
        Command::Quotient { at, alpha } => {
            let cfg = load_config(cli, kronecker)?;
            let u = parse_qs_set(&cfg.registry, at)?;
            let alpha = match alpha {
                Some(src) => parse_alpha_flag(&cfg.registry, src)?,
                None => cfg.alpha.clone(),
            };
            document(cfg.registry.quotient_decomposition(&u, &alpha)?.to_json())
        }
        Command::Verify { rank_max } => {
            let bounds = VerifyBounds {
                rank_max: *rank_max,
            };
            let cfg = load_config(cli, || {
                Ok(Config::new(TubeRegistry::custom(
                    &[("a", (*rank_max).max(2))],
                    true,
                )?))
            })?;
            let report = verify_suite(&cfg.registry, bounds)?;
            let lines = report.to_json_lines();
            if !report.passed() {
                return Err(Failure::Report(lines));
            }
            lines
        }
    })
}

fn descriptor(cli: &Cli, t: &Target) -> Result<TiltingDescriptor> {
    let cfg = load_config(cli, || Ok(Config::new(TubeRegistry::preset("kronecker")?)))?;
    let reg = &cfg.registry;
    let (y, l) = match (&t.pair, &t.filter) {
        (Some(src), None) => parse_pair(reg, src)?,
        (None, Some(src)) => {
            let v: Value =
                serde_json::from_str(src).map_err(|e| Error::Parse(format!("filter: {e}")))?;
            reg.pair_from_resolving(&ResolvingFilter::from_value(&v)?)?
        }
        _ => {
            return Err(Error::Usage(
                "give exactly one of --pair or --filter".into(),
            ))
        }
    };
    reg.descriptor_from_pair(&y, &l)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    #[serde(default)]
    branch: Vec<Finite>,
    #[serde(default)]
    lambda: LambdaSet,
}

pub fn parse_pair(reg: &TubeRegistry, src: &str) -> Result<(BranchModule, LambdaSet)> {
    let raw: RawPair = serde_json::from_str(src).map_err(|e| Error::Parse(format!("pair: {e}")))?;
    let y = reg.branch_module(raw.branch.into_iter().collect::<BTreeSet<_>>())?;
    let l = reg.validate_lambda(&raw.lambda)?;
    Ok((y, l))
}

pub fn parse_qs_set(reg: &TubeRegistry, src: &str) -> Result<QuasiSimpleSet> {
    let keys: Vec<String> =
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("quasi-simple set: {e}")))?;
    QuasiSimpleSet::from_keys(reg, &keys)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlpha {
    #[serde(default)]
    alpha: BTreeMap<String, u32>,
    #[serde(default = "one")]
    alpha_generic: u32,
}

fn one() -> u32 {
    1
}

fn parse_alpha_flag(reg: &TubeRegistry, src: &str) -> Result<crate::MultiplicityMap> {
    let raw: RawAlpha =
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("alpha: {e}")))?;
    parse_alpha(reg, &raw.alpha, raw.alpha_generic)
}
