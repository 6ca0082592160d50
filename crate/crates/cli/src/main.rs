//! `qplane`: construct, verify and search for quantum-plane symmetries.
//!
//! Every invocation prints one JSON document on stdout. Exit codes: 0 on
//! success, 1 when a verification fails or a search result contradicts
//! `--expect`, 2 on usage or input errors.

mod config;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qplane::actions::{
    conjugate, generic_family, line_family, minus_identity_family, Action, LineAction, LineKind,
};
use qplane::autgroup::{sigma_power, Auto, Sl2};
use qplane::scalars::Unit;
use qplane::search::{finite_order_obstruction, run_batch, Job, Mode};
use qplane::uqsl2::{parse_word, pbw_normalize_with, Strategy};
use qplane::verifier::{verify_line_action, verify_module_algebra, Report};

use config::JobConfig;

#[derive(Parser)]
#[command(name = "qplane", version, about = "Symmetries of the Laurent quantum plane")]
struct Cli {
    /// JSON config with defaults for mode, q, tolerance, indeterminates, N, B, seed.
    #[arg(long, env = "QPLANE_CONFIG", global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a plane action from a classified family.
    Family {
        #[command(subcommand)]
        which: FamilyCmd,
    },
    /// Verify a plane action read from stdin (or --input).
    Verify(VerifyArgs),
    /// Conjugate a plane action read from stdin by an automorphism.
    Conjugate {
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Order of an automorphism, if finite.
    Order {
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long, default_value_t = 24)]
        max: u32,
        /// Also report the finite-order obstruction verdict.
        #[arg(long)]
        obstruction: bool,
    },
    /// N-th power of an SL(2,Z) matrix via the closed form.
    SigmaPower {
        #[arg(long)]
        sigma: Sl2,
        #[arg(long = "N", allow_hyphen_values = true)]
        n: i64,
    },
    /// Normal form f^i k^j e^l of a word such as "e f k".
    PbwNormalize {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Order::Leftmost)]
        strategy: Order,
    },
    /// Search for actions with a given k-automorphism and bounded support.
    Search(SearchArgs),
    /// Build an action on the Laurent polynomial ring in one variable.
    LineFamily {
        /// 1, sign or 2
        #[arg(long)]
        kind: LineKind,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Unit,
        #[arg(long, default_value = "a", allow_hyphen_values = true)]
        a: Unit,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        r: i64,
    },
    /// Verify a line action read from stdin (or --input).
    LineVerify(VerifyArgs),
}

#[derive(Subcommand)]
enum FamilyCmd {
    Generic {
        #[arg(long, allow_hyphen_values = true)]
        u: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Unit,
        #[arg(long, allow_hyphen_values = true)]
        beta: Unit,
        #[arg(long, default_value = "a", allow_hyphen_values = true)]
        a: Unit,
    },
    MinusIdentity {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Unit,
        #[arg(long, allow_hyphen_values = true)]
        beta: Unit,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long = "N")]
    n: Option<i64>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Only list failing checks in the report.
    #[arg(long)]
    failures_only: bool,
}

#[derive(clap::Args)]
struct AutoArgs {
    #[arg(long)]
    sigma: Sl2,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: Unit,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: Unit,
}

impl AutoArgs {
    fn auto(&self) -> Auto {
        Auto::new(self.sigma, self.alpha.clone(), self.beta.clone())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Empty,
    Nonempty,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, required_unless_present = "job")]
    sigma: Option<Sl2>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    alpha: Unit,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: Unit,
    #[arg(long = "B")]
    bound: Option<i64>,
    /// Draw the weight constants from the seed instead of using --alpha/--beta.
    #[arg(long)]
    numeric: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// A job file: one job object or a list of them.
    #[arg(long, conflicts_with = "sigma")]
    job: Option<PathBuf>,
    #[arg(long, value_enum)]
    expect: Option<Expect>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn report_json<T: serde::Serialize + Clone>(r: &Report<T>, failures_only: bool) -> Result<Value> {
    if failures_only {
        let fails: Vec<_> = r.failures().cloned().collect();
        Ok(json!({ "checks": fails, "pass": r.pass, "total": r.checks.len() }))
    } else {
        Ok(serde_json::to_value(r)?)
    }
}

/// Runs one command; returns the JSON document and whether it counts as success.
fn run(cli: Cli) -> Result<(Value, bool)> {
    let cfg = JobConfig::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Family { which } => {
            let act = match which {
                FamilyCmd::Generic { u, v, alpha, beta, a } => generic_family(u, v, alpha, beta, a)?,
                FamilyCmd::MinusIdentity { alpha, beta } => minus_identity_family(alpha, beta),
            };
            Ok((serde_json::to_value(&act)?, true))
        }
        Cmd::Verify(args) => {
            let act: Action = serde_json::from_str(&read_input(&args.input)?).context("parsing action JSON")?;
            let n = args.n.unwrap_or(cfg.degree_bound);
            if n < 1 {
                bail!("N must be at least 1");
            }
            let r = verify_module_algebra(&act, n);
            Ok((report_json(&r, args.failures_only)?, r.pass))
        }
        Cmd::LineVerify(args) => {
            let act: LineAction = serde_json::from_str(&read_input(&args.input)?).context("parsing line action JSON")?;
            let n = args.n.unwrap_or(cfg.degree_bound);
            if n < 1 {
                bail!("N must be at least 1");
            }
            let r = verify_line_action(&act, n);
            Ok((report_json(&r, args.failures_only)?, r.pass))
        }
        Cmd::Conjugate { auto, input } => {
            let act: Action = serde_json::from_str(&read_input(&input)?).context("parsing action JSON")?;
            Ok((serde_json::to_value(conjugate(&act, &auto.auto()))?, true))
        }
        Cmd::Order { auto, max, obstruction } => {
            let phi = auto.auto();
            let mut out = json!({ "order": phi.order(max) });
            if obstruction {
                out["obstruction"] = serde_json::to_value(finite_order_obstruction(&phi))?;
            }
            Ok((out, true))
        }
        Cmd::SigmaPower { sigma, n } => {
            let p = sigma_power(sigma, n)?;
            Ok((json!({ "sigma": sigma.rows(), "N": n, "power": p.rows() }), true))
        }
        Cmd::PbwNormalize { word, strategy } => {
            let w = parse_word(&word)?;
            let s = match strategy {
                Order::Leftmost => Strategy::Leftmost,
                Order::Rightmost => Strategy::Rightmost,
            };
            Ok((serde_json::to_value(pbw_normalize_with(&w, s))?, true))
        }
        Cmd::LineFamily { kind, gamma, a, r } => {
            Ok((serde_json::to_value(line_family(kind, gamma, a, r)?)?, true))
        }
        Cmd::Search(args) => search(args, &cfg),
    }
}

fn search(args: SearchArgs, cfg: &JobConfig) -> Result<(Value, bool)> {
    let (jobs, single) = match &args.job {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let v: Value = serde_json::from_str(&text).context("parsing job JSON")?;
            match v {
                Value::Array(_) => (serde_json::from_value::<Vec<Job>>(v)?, false),
                _ => (vec![serde_json::from_value::<Job>(v)?], true),
            }
        }
        None => {
            let sigma = args.sigma.expect("clap requires --sigma without --job");
            let mode = if args.numeric { Mode::Numeric } else { cfg.mode };
            let job = Job {
                sigma: sigma.rows(),
                alpha: args.alpha.clone(),
                beta: args.beta.clone(),
                bound: args.bound.unwrap_or(cfg.box_bound),
                mode,
                seed: args.seed.unwrap_or(cfg.seed),
            };
            (vec![job], true)
        }
    };
    let mut results = Vec::new();
    for r in run_batch(&jobs) {
        results.push(r?);
    }
    let ok = results.iter().all(|r| match args.expect {
        None => true,
        Some(Expect::Empty) => r.solutions.is_empty(),
        Some(Expect::Nonempty) => !r.solutions.is_empty(),
    });
    let out = if single {
        let r = &results[0];
        json!({ "k": r.k, "solutions": r.solutions })
    } else {
        serde_json::to_value(&results)?
    };
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((v, ok)) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            if writeln!(std::io::stdout().lock(), "{text}").is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
