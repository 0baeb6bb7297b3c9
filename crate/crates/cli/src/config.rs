//! Run configuration and tolerance resolution. Tolerances resolve in
//! three layers: built-in defaults, then `WYD_TOL_*` environment
//! variables, then command-line flags; flags always win.

use std::path::PathBuf;

use wyd_core::Tolerances;

use crate::CliError;

pub const BETA_RANGE_MESSAGE: &str = "beta must lie in open interval (0,1)";

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_dim: usize,
    pub max_blocks: usize,
    pub betas: Vec<f64>,
    pub tolerances: Tolerances,
    pub out: PathBuf,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials < 1 {
            return Err(CliError::Input("trials must be at least 1".into()));
        }
        if self.max_dim < 2 {
            return Err(CliError::Input("max-dim must be at least 2".into()));
        }
        if self.max_blocks < 1 {
            return Err(CliError::Input("max-blocks must be at least 1".into()));
        }
        if self.betas.is_empty() {
            return Err(CliError::Input("betas must be nonempty".into()));
        }
        validate_betas(&self.betas)?;
        Ok(())
    }
}

pub fn validate_betas(betas: &[f64]) -> Result<(), CliError> {
    for &beta in betas {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(CliError::Input(BETA_RANGE_MESSAGE.into()));
        }
    }
    Ok(())
}

pub fn parse_beta_list(text: &str) -> Result<Vec<f64>, CliError> {
    let betas: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("invalid beta value: {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    validate_betas(&betas)?;
    Ok(betas)
}

/// `LO:HI:STEP`, endpoints included (up to roundoff on the last step).
pub fn parse_beta_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!(
            "beta grid must be LO:HI:STEP, got {text:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("invalid grid number: {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || step.is_nan() || hi < lo {
        return Err(CliError::Input("beta grid requires hi >= lo and step > 0".into()));
    }
    let count = ((hi - lo) / step).round() as usize;
    let mut grid = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let beta = lo + step * i as f64;
        if beta <= hi + 1e-12 {
            grid.push(beta);
        }
    }
    validate_betas(&grid)?;
    Ok(grid)
}

/// Optional per-field overrides coming from the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct ToleranceOverrides {
    pub herm: Option<f64>,
    pub lin: Option<f64>,
    pub norm: Option<f64>,
    pub psd: Option<f64>,
    pub quantity: Option<f64>,
    pub oracle: Option<f64>,
}

fn env_tolerance(name: &str) -> Result<Option<f64>, CliError> {
    match std::env::var(name) {
        Ok(text) => {
            let value: f64 = text
                .parse()
                .map_err(|_| CliError::Input(format!("{name} is not a number: {text:?}")))?;
            if value <= 0.0 || !value.is_finite() {
                return Err(CliError::Input(format!("{name} must be a positive number")));
            }
            Ok(Some(value))
        }
        Err(_) => Ok(None),
    }
}

pub fn resolve_tolerances(flags: &ToleranceOverrides) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    if let Some(v) = env_tolerance("WYD_TOL_HERM")? {
        tol.herm = v;
    }
    if let Some(v) = env_tolerance("WYD_TOL_LIN")? {
        tol.lin = v;
    }
    if let Some(v) = env_tolerance("WYD_TOL_NORM")? {
        tol.norm = v;
    }
    if let Some(v) = env_tolerance("WYD_TOL_PSD")? {
        tol.psd = v;
    }
    if let Some(v) = env_tolerance("WYD_TOL_Q")? {
        tol.quantity = v;
    }
    if let Some(v) = env_tolerance("WYD_TOL_ORC")? {
        tol.oracle = v;
    }
    if let Some(v) = flags.herm {
        tol.herm = v;
    }
    if let Some(v) = flags.lin {
        tol.lin = v;
    }
    if let Some(v) = flags.norm {
        tol.norm = v;
    }
    if let Some(v) = flags.psd {
        tol.psd = v;
    }
    if let Some(v) = flags.quantity {
        tol.quantity = v;
    }
    if let Some(v) = flags.oracle {
        tol.oracle = v;
    }
    Ok(tol)
}
