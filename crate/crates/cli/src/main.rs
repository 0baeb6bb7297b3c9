use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wyd_cli::config::{
    parse_beta_grid, parse_beta_list, resolve_tolerances, ToleranceOverrides, VerifyConfig,
};
use wyd_cli::dump::run_case;
use wyd_cli::instance::InstanceSpec;
use wyd_cli::sweep::run_sweep;
use wyd_cli::verify::run_verify;
use wyd_cli::CliError;

/// Verification toolkit for the variance–skew-information uncertainty
/// inequality on weighted block-trace algebras.
#[derive(Parser)]
#[command(name = "wyd", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Override the quantity tolerance base (default 1e-9)
    #[arg(long)]
    tol_q: Option<f64>,
    /// Override the oracle tolerance base (default 1e-8)
    #[arg(long)]
    tol_orc: Option<f64>,
    /// Override the linear-identity tolerance base (default 1e-10)
    #[arg(long)]
    tol_lin: Option<f64>,
    /// Override the Hermiticity tolerance base (default 1e-10)
    #[arg(long)]
    tol_herm: Option<f64>,
    /// Override the trace-normalization tolerance (default 1e-9)
    #[arg(long)]
    tol_norm: Option<f64>,
    /// Override the eigenvalue clamping window base (default 1e-12)
    #[arg(long)]
    tol_psd: Option<f64>,
}

impl TolArgs {
    fn overrides(&self) -> ToleranceOverrides {
        ToleranceOverrides {
            herm: self.tol_herm,
            lin: self.tol_lin,
            norm: self.tol_norm,
            psd: self.tol_psd,
            quantity: self.tol_q,
            oracle: self.tol_orc,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded random instances and run the full identity and
    /// inequality battery over them
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Upper bound on the total dimension (>= 2)
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
        /// Comma-separated beta values in (0,1)
        #[arg(long, default_value = "0.1,0.25,0.5,0.75,0.9")]
        betas: String,
        #[command(flatten)]
        tol: TolArgs,
        /// Output path for the line-delimited JSON report
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the gap over a beta grid for one instance file
    Sweep {
        #[arg(long)]
        instance: PathBuf,
        /// Grid as LO:HI:STEP, endpoints in (0,1)
        #[arg(long)]
        beta_grid: String,
        /// Output path for the CSV
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Evaluate one instance at one beta, optionally dumping measures
    Case {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        dump_measures: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Evaluate the kernel at one point
    Kernel {
        /// Comma-separated L1,L2,L3,L4 (nonnegative)
        #[arg(long)]
        lambdas: String,
        #[arg(long)]
        beta: f64,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify { seed, trials, max_dim, max_blocks, betas, tol, out } => {
            let config = VerifyConfig {
                seed,
                trials,
                max_dim,
                max_blocks,
                betas: parse_beta_list(&betas)?,
                tolerances: resolve_tolerances(&tol.overrides())?,
                out,
            };
            let summary = run_verify(&config)?;
            println!("cases: {}", summary.cases);
            println!("violations: {}", summary.violation_cases);
            println!("min gap: {:.16e}", summary.min_gap);
            println!("max oracle defect: {:.16e}", summary.max_oracle_defect);
            println!("report: {}", config.out.display());
            Ok(if summary.pass { 0 } else { 1 })
        }
        Command::Sweep { instance, beta_grid, out, tol } => {
            let spec = InstanceSpec::load(&instance)?;
            let grid = parse_beta_grid(&beta_grid)?;
            let tolerances = resolve_tolerances(&tol.overrides())?;
            let findings = run_sweep(&spec, &grid, tolerances, &out)?;
            println!(
                "monotone on [0.5,1): {} (max decrease {:.3e})",
                findings.monotone_pass, findings.max_decrease
            );
            println!(
                "beta mirror symmetry: {} (max defect {:.3e} over {} pairs)",
                findings.symmetry_pass, findings.max_symmetry_defect, findings.mirrored_pairs
            );
            println!("rows: {}", out.display());
            Ok(if findings.pass() { 0 } else { 1 })
        }
        Command::Case { instance, beta, dump_measures, tol } => {
            let spec = InstanceSpec::load(&instance)?;
            let tolerances = resolve_tolerances(&tol.overrides())?;
            let document = run_case(&spec, beta, dump_measures, tolerances)?;
            let text = serde_json::to_string_pretty(&document)
                .map_err(|e| CliError::Input(e.to_string()))?;
            println!("{text}");
            Ok(if document.pass { 0 } else { 1 })
        }
        Command::Kernel { lambdas, beta } => {
            let parts: Vec<f64> = lambdas
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Input(format!("invalid lambda: {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            if parts.len() != 4 {
                return Err(CliError::Input(format!(
                    "expected 4 lambdas, got {}",
                    parts.len()
                )));
            }
            let k = wyd_core::kernel(parts[0], parts[1], parts[2], parts[3], beta)
                .map_err(|e| CliError::Input(e.to_string()))?;
            println!("{k:.16e}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
