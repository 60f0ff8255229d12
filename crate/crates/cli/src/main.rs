//! `qutrit-lindblad`: entanglement dynamics of two V-type three-level atoms.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 parse error, 3 physics error,
//! 4 I/O error.

mod commands;
mod config;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::{CommandKind, Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qutrit-lindblad",
    version,
    about = "Entanglement dynamics of two V-type three-level atoms"
)]
struct Cli {
    /// JSON run configuration; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the master equation and write the trajectory.
    Evolve(EvolveArgs),
    /// Negativity of an initial state.
    Negativity(StateArgs),
    /// Long-time limit under maximal interference.
    Asymptote(AsymptoteArgs),
    /// Negativity curves for one figure (3 to 8) plus a manifest.
    Figure(FigureArgs),
    /// Run the invariant suites.
    Validate(ValidateArgs),
    /// Final negativities over one varied parameter, in parallel.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct StateArgs {
    /// `psimax`, `pure:theta=..,phi=..`, `isotropic:p=..` or `file:PATH`.
    #[arg(long)]
    state: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct IntegratorArgs {
    /// Horizon in units of the inverse largest decay rate.
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Record every n-th step.
    #[arg(long, value_name = "N")]
    sample_every: Option<usize>,
    /// Enable step halving with this tolerance.
    #[arg(long, value_name = "TOL")]
    adapt: Option<f64>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// `sysI:g1=..,g2=..,beta=..` or `sysII:ge=..,gu=..`; rates are rescaled so the largest is 1.
    #[arg(long)]
    model: Option<String>,
    /// Number of atoms; one atom evolves the reduced state of atom A.
    #[arg(long)]
    atoms: Option<usize>,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    integrator: IntegratorArgs,
    /// Matrix elements to export, as one-based labels such as `15` or `1,5`.
    #[arg(long, num_args = 1..)]
    elements: Vec<String>,
    /// Level shifts of a diagonal Hamiltonian, `w1=..,w2=..`.
    #[arg(long)]
    hamiltonian: Option<String>,
}

#[derive(Debug, Args)]
struct AsymptoteArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Compare with a long RK4 run at `gu = 0`.
    #[arg(long)]
    check_numeric: bool,
    #[command(flatten)]
    integrator: IntegratorArgs,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Figure number, 3 to 8.
    n: Option<u8>,
    #[command(flatten)]
    output: OutputArgs,
    #[command(flatten)]
    integrator: IntegratorArgs,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Run a single suite.
    #[arg(long)]
    suite: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    state: StateArgs,
    #[command(flatten)]
    integrator: IntegratorArgs,
    /// `key=v1,v2,...`; keys `theta`, `phi`, `p` vary the state, others the model.
    #[arg(long)]
    vary: Option<String>,
}

fn set<T>(slot: &mut Option<T>, v: Option<T>) {
    if v.is_some() {
        *slot = v;
    }
}

impl OutputArgs {
    fn merge(self, cfg: &mut RunConfig) {
        set(&mut cfg.output, self.out);
        set(&mut cfg.format, self.format);
    }
}

impl StateArgs {
    fn merge(self, cfg: &mut RunConfig) {
        set(&mut cfg.state, self.state);
        self.output.merge(cfg);
    }
}

impl IntegratorArgs {
    fn merge(self, cfg: &mut RunConfig) {
        let i = &mut cfg.integrator;
        set(&mut i.t_end, self.t_end);
        set(&mut i.dt, self.dt);
        set(&mut i.sample_every, self.sample_every);
        set(&mut i.adapt, self.adapt);
    }
}

impl ModelArgs {
    fn merge(self, cfg: &mut RunConfig) {
        set(&mut cfg.model, self.model);
        set(&mut cfg.atoms, self.atoms);
    }
}

impl Command {
    fn merge(self, cfg: &mut RunConfig) {
        let kind = match self {
            Self::Evolve(a) => {
                a.model.merge(cfg);
                a.state.merge(cfg);
                a.integrator.merge(cfg);
                if !a.elements.is_empty() {
                    cfg.elements = a.elements;
                }
                set(&mut cfg.hamiltonian, a.hamiltonian);
                CommandKind::Evolve
            }
            Self::Negativity(a) => {
                a.merge(cfg);
                CommandKind::Negativity
            }
            Self::Asymptote(a) => {
                a.state.merge(cfg);
                a.integrator.merge(cfg);
                cfg.check_numeric |= a.check_numeric;
                CommandKind::Asymptote
            }
            Self::Figure(a) => {
                set(&mut cfg.figure, a.n);
                a.output.merge(cfg);
                a.integrator.merge(cfg);
                CommandKind::Figure
            }
            Self::Validate(a) => {
                set(&mut cfg.seed, a.seed);
                set(&mut cfg.suite, a.suite);
                a.output.merge(cfg);
                CommandKind::Validate
            }
            Self::Sweep(a) => {
                a.model.merge(cfg);
                a.state.merge(cfg);
                a.integrator.merge(cfg);
                set(&mut cfg.vary, a.vary);
                CommandKind::Sweep
            }
        };
        cfg.command = Some(kind);
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(cmd) = cli.command {
        cmd.merge(&mut cfg);
    }
    match cfg.command {
        Some(CommandKind::Evolve) => commands::evolve::run(&cfg),
        Some(CommandKind::Negativity) => commands::negativity::run(&cfg),
        Some(CommandKind::Asymptote) => commands::asymptote::run(&cfg),
        Some(CommandKind::Figure) => commands::figure::run(&cfg),
        Some(CommandKind::Validate) => commands::validate::run(&cfg),
        Some(CommandKind::Sweep) => commands::sweep::run(&cfg),
        None => Err(CliError::Parse("no command given (see --help)".into())),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.report.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
