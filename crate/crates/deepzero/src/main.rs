use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use deepzero::commands;
use deepzero::config::{parse_degrees, parse_thetas, PadSpec};
use deepzero::{CommandKind, OutputFormat, ParityArg, RunConfig};

#[derive(Parser)]
#[command(name = "deepzero", version, about = "Deep-zero numerics for the Bargmann-Fock space")]
struct Cli {
    /// Optional key=value config file; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every module's invariant suite.
    Verify {
        /// Pass tolerance for each residual.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sweep the sampling constant (smallest Gram eigenvalue) over degrees.
    SamplingSweep {
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// Comma-separated strictly increasing truncation degrees.
        #[arg(long)]
        degrees: Option<String>,
        /// `auto` or an explicit pad width.
        #[arg(long)]
        pad: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the counterexample ratio over theta.
    ThetaSweep {
        #[arg(long)]
        beta: Option<f64>,
        /// Comma-separated strictly decreasing positive thetas.
        #[arg(long)]
        thetas: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recovery demo: consistent data round-trips, incompatible data blows up.
    RecoverDemo {
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the seminorm Gram matrix.
    GramExport {
        /// Truncation degree of the exported matrix.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn kind(&self) -> CommandKind {
        match self {
            Command::Verify { .. } => CommandKind::Verify,
            Command::SamplingSweep { .. } => CommandKind::SamplingSweep,
            Command::ThetaSweep { .. } => CommandKind::ThetaSweep,
            Command::RecoverDemo { .. } => CommandKind::RecoverDemo,
            Command::GramExport { .. } => CommandKind::GramExport,
        }
    }

    /// Folds the flags into `cfg` (on top of defaults and any config file).
    fn apply(&self, cfg: &mut RunConfig) -> Result<(), String> {
        match self {
            Command::Verify { tol } => {
                if let Some(t) = tol {
                    cfg.tol = *t;
                }
            }
            Command::SamplingSweep { beta, parity, degrees, pad, out } => {
                if let Some(b) = beta {
                    cfg.beta = *b;
                }
                if let Some(p) = parity {
                    cfg.parity = *p;
                }
                if let Some(d) = degrees {
                    cfg.degrees = parse_degrees(d)?;
                }
                if let Some(p) = pad {
                    cfg.pad = PadSpec::parse(p)?;
                }
                if let Some(o) = out {
                    cfg.out = Some(o.clone());
                }
            }
            Command::ThetaSweep { beta, thetas, out } => {
                if let Some(b) = beta {
                    cfg.beta = *b;
                }
                if let Some(t) = thetas {
                    cfg.thetas = parse_thetas(t)?;
                }
                if let Some(o) = out {
                    cfg.out = Some(o.clone());
                }
            }
            Command::RecoverDemo { beta, out } => {
                if let Some(b) = beta {
                    cfg.beta = *b;
                }
                if let Some(o) = out {
                    cfg.out = Some(o.clone());
                }
            }
            Command::GramExport { degree, beta, parity, format, out } => {
                if let Some(d) = degree {
                    cfg.degree = *d;
                }
                if let Some(b) = beta {
                    cfg.beta = *b;
                }
                if let Some(p) = parity {
                    cfg.parity = *p;
                }
                if let Some(f) = format {
                    cfg.format = *f;
                }
                if let Some(o) = out {
                    cfg.out = Some(o.clone());
                }
            }
        }
        Ok(())
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::defaults(cli.command.kind());
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        cfg.apply_file(&text)?;
    }
    cli.command.apply(&mut cfg)?;
    cfg.validate()?;
    Ok(cfg)
}

fn init_thread_pool() -> Result<(), String> {
    let Ok(raw) = std::env::var("DEEPZERO_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .map_err(|_| format!("DEEPZERO_THREADS must be a positive integer, got `{raw}`"))?;
    if n == 0 {
        return Err("DEEPZERO_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("cannot configure thread pool: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_thread_pool() {
        eprintln!("deepzero: {msg}");
        return ExitCode::from(2);
    }
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("deepzero: configuration error: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = match cfg.command {
        CommandKind::Verify => commands::cmd_verify(&cfg),
        CommandKind::SamplingSweep => commands::cmd_sampling_sweep(&cfg),
        CommandKind::ThetaSweep => commands::cmd_theta_sweep(&cfg),
        CommandKind::RecoverDemo => commands::cmd_recover_demo(&cfg),
        CommandKind::GramExport => commands::cmd_gram_export(&cfg),
    };
    ExitCode::from(code as u8)
}
