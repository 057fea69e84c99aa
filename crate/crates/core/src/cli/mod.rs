//! The `diskfactor` command-line front end.
//!
//! Every subcommand writes machine-readable artifacts into `--out` and prints a
//! short summary. Exit codes: 0 when every gate passes, 1 on a gate failure,
//! 2 on a usage error. CSV artifacts start with a `# config:` line holding the
//! resolved configuration as JSON; JSON artifacts carry it under `config`.

mod commands;
pub mod specs;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::circle::DEFAULT_GRID;
use crate::error::Error;

#[derive(Parser, Debug)]
#[command(
    name = "diskfactor",
    version,
    about = "Canonical factorization and weighted Lipschitz diagnostics on the unit disk"
)]
struct Cli {
    /// Grid size (power of two, at least 8).
    #[arg(long, global = true, env = "DISKFACTOR_GRID", default_value_t = DEFAULT_GRID)]
    grid: usize,

    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Artifact directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Tolerance override, `key=value`; repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    tol: Vec<(String, f64)>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Axioms, power condition and square condition for a modulus.
    ModulusCheck {
        /// `holder:<alpha>`, `log:<alpha>` or `csv:<path>`.
        modulus: String,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
    },
    /// Inner-outer factorization of a boundary function.
    Factor {
        #[arg(short = 'f', long = "function")]
        function: String,
    },
    /// Carleson integral of a closed boundary set.
    Carleson {
        #[arg(long)]
        set: String,
    },
    /// Randomized sweep of the radial decay bound for inner functions.
    VerifyFpr2 {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Radial profile of the outer factor against `A|f|`.
    VerifyFpr1 {
        #[arg(short = 'f', long = "function", default_value = "oneminusz")]
        function: String,
        #[arg(long, default_value = "holder:0.5")]
        omega: String,
        #[arg(long, default_value = "0.9,0.99,0.999")]
        radii: String,
        #[arg(long, default_value_t = crate::factorization::DEFAULT_FPR1_A)]
        a: f64,
    },
    /// Convergence of `ψ_δ·f → f` as `δ → 0`.
    VerifyMollifier {
        #[arg(short = 'f', long = "function", default_value = "oneminusz")]
        function: String,
        #[arg(long, default_value = "holder:0.5")]
        omega: String,
        /// Mollifier zeros, as a set spec of points.
        #[arg(long, default_value = "points:1")]
        points: String,
        #[arg(long, default_value = "1e-1,1e-2,1e-3,1e-4")]
        deltas: String,
        /// Run the negative control (`f ≡ 1`) instead.
        #[arg(long)]
        control: bool,
    },
    /// Exhaustion diagnostics for the product family `S·g²·g_{Γ_N^c}`.
    VerifyProp1 {
        /// Catalog name or `json:<path>`.
        #[arg(long, default_value = "point")]
        scenario: String,
        /// Run the swapped-complement negative control instead.
        #[arg(long)]
        control: bool,
    },
    /// Exhaustion diagnostics for the power family `S·U_g·O_g^ρ·g_{Γ_N^c}`.
    VerifyProp3 {
        #[arg(long, default_value = "point")]
        scenario: String,
        #[arg(long)]
        control: bool,
    },
    /// Disk-versus-boundary seminorm ratio.
    Tamrazov {
        #[arg(short = 'f', long = "function")]
        function: String,
        #[arg(long, default_value = "holder:0.5")]
        omega: String,
        #[arg(long, default_value_t = crate::boundary::DEFAULT_PAIR_BUDGET)]
        budget: usize,
    },
    /// Standard-ideal membership of `f` for `(E, U)`.
    Membership {
        #[arg(short = 'f', long = "function")]
        function: String,
        #[arg(long)]
        set: String,
        /// Inline JSON, `json:<path>` or `trivial`.
        #[arg(long, default_value = "trivial")]
        inner: String,
    },
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected key=value")?;
    let v: f64 = v.parse().map_err(|_| format!("bad number `{v}`"))?;
    Ok((k.trim().to_string(), v))
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidArgument { .. } | Error::GridSize(_) | Error::GridMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Resolved settings shared by all commands.
pub(crate) struct Context {
    pub grid: usize,
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub tolerances: BTreeMap<String, f64>,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
}

impl Context {
    pub fn seed(&self) -> Result<u64, Failure> {
        self.seed
            .ok_or_else(|| Failure::Usage(format!("--seed is required for {}", self.command)))
    }

    pub fn tol(&self, key: &str) -> f64 {
        self.tolerances[key]
    }

    pub fn config(&self) -> Value {
        json!({
            "command": self.command,
            "grid": self.grid,
            "seed": self.seed,
            "inputs": self.inputs,
            "tolerances": self.tolerances,
        })
    }
}

/// Tolerance keys accepted by each command, with defaults.
fn default_tolerances(cmd: &Command) -> BTreeMap<String, f64> {
    let pairs: &[(&str, f64)] = match cmd {
        Command::Factor { .. } => &[("unimodular", 1e-5), ("exclusion", 1e-2)],
        Command::Carleson { .. } => &[("stability", 1e-4)],
        Command::Tamrazov { .. } => &[("tamrazov", 10.0), ("stability", 0.2)],
        Command::Membership { .. } => &[("vanish", 1e-6)],
        _ => &[],
    };
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::ModulusCheck { .. } => "modulus-check",
        Command::Factor { .. } => "factor",
        Command::Carleson { .. } => "carleson",
        Command::VerifyFpr2 { .. } => "verify-fpr2",
        Command::VerifyFpr1 { .. } => "verify-fpr1",
        Command::VerifyMollifier { .. } => "verify-mollifier",
        Command::VerifyProp1 { .. } => "verify-prop1",
        Command::VerifyProp3 { .. } => "verify-prop3",
        Command::Tamrazov { .. } => "tamrazov",
        Command::Membership { .. } => "membership",
    }
}

/// Runs the command line `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            eprintln!("diskfactor: usage: {line}");
            return 2;
        }
    };
    match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            eprintln!("diskfactor: usage: {}", m.replace('\n', " "));
            2
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("diskfactor: error: {}", m.replace('\n', " "));
            1
        }
    }
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    crate::circle::check_grid_size(cli.grid)?;
    let mut tolerances = default_tolerances(&cli.command);
    for (k, v) in &cli.tol {
        match tolerances.get_mut(k) {
            Some(slot) => *slot = *v,
            None => {
                return Err(Failure::Usage(format!(
                    "unknown tolerance `{k}` for {}",
                    command_name(&cli.command)
                )))
            }
        }
    }
    let mut ctx = Context {
        grid: cli.grid,
        seed: cli.seed,
        out: cli.out.clone(),
        tolerances,
        command: command_name(&cli.command).to_string(),
        inputs: BTreeMap::new(),
    };
    std::fs::create_dir_all(&ctx.out).map_err(|e| Failure::Usage(format!("{}: {e}", ctx.out.display())))?;
    match cli.command {
        Command::ModulusCheck { modulus, rho } => commands::modulus_check(&mut ctx, &modulus, rho),
        Command::Factor { function } => commands::factor(&mut ctx, &function),
        Command::Carleson { set } => commands::carleson(&mut ctx, &set),
        Command::VerifyFpr2 { trials } => commands::verify_fpr2(&mut ctx, trials),
        Command::VerifyFpr1 {
            function,
            omega,
            radii,
            a,
        } => commands::verify_fpr1(&mut ctx, &function, &omega, &radii, a),
        Command::VerifyMollifier {
            function,
            omega,
            points,
            deltas,
            control,
        } => commands::verify_mollifier(&mut ctx, &function, &omega, &points, &deltas, control),
        Command::VerifyProp1 { scenario, control } => {
            commands::verify_prop(&mut ctx, &scenario, crate::ideal::Family::Product, control)
        }
        Command::VerifyProp3 { scenario, control } => {
            commands::verify_prop(&mut ctx, &scenario, crate::ideal::Family::Power, control)
        }
        Command::Tamrazov {
            function,
            omega,
            budget,
        } => commands::tamrazov(&mut ctx, &function, &omega, budget),
        Command::Membership { function, set, inner } => commands::membership(&mut ctx, &function, &set, &inner),
    }
}
