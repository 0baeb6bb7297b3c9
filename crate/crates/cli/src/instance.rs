//! On-disk instance format: a single JSON document with the block
//! structure and one complex matrix per block for `rho`, `a` and `b`.
//! Complex entries are `[re, im]` pairs; numbers round-trip exactly.

use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use wyd_core::{BlockOperator, Complex64, DensityOperator, Tolerances, TraceAlgebra};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub dim: usize,
    pub weight: f64,
}

/// Row-major matrix with `[re, im]` entries.
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub blocks: Vec<BlockSpec>,
    pub rho: Vec<MatrixSpec>,
    pub a: Vec<MatrixSpec>,
    pub b: Vec<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Validated in-memory form of an instance.
#[derive(Debug, Clone)]
pub struct CoreInstance {
    pub alg: Arc<TraceAlgebra>,
    pub rho: DensityOperator,
    pub a: BlockOperator,
    pub b: BlockOperator,
}

fn matrices_to_operator(
    alg: &Arc<TraceAlgebra>,
    name: &str,
    mats: &[MatrixSpec],
) -> Result<BlockOperator, CliError> {
    if mats.len() != alg.num_blocks() {
        return Err(CliError::Input(format!(
            "{name}: expected {} blocks, got {}",
            alg.num_blocks(),
            mats.len()
        )));
    }
    let mut data = Vec::with_capacity(mats.len());
    for (k, (mat, block)) in mats.iter().zip(alg.blocks()).enumerate() {
        let d = block.dim;
        if mat.len() != d || mat.iter().any(|row| row.len() != d) {
            return Err(CliError::Input(format!(
                "{name}: block {k} is not a {d}x{d} matrix"
            )));
        }
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        for (i, row) in mat.iter().enumerate() {
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(CliError::Input(format!(
                        "{name}: non-finite entry at block {k} ({i},{j})"
                    )));
                }
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        data.push(m);
    }
    BlockOperator::new(Arc::clone(alg), data)
        .map_err(|e| CliError::Input(format!("{name}: {e}")))
}

pub fn operator_to_matrices(x: &BlockOperator) -> Vec<MatrixSpec> {
    x.data()
        .iter()
        .map(|m| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect()
        })
        .collect()
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("instance parse error: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization cannot fail")
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Builds and validates the core objects: shapes must match, `rho`
    /// must be a density, `a` and `b` must be Hermitian.
    pub fn to_core(&self, tolerances: Tolerances) -> Result<CoreInstance, CliError> {
        let blocks: Vec<(usize, f64)> = self.blocks.iter().map(|b| (b.dim, b.weight)).collect();
        let alg = TraceAlgebra::with_tolerances(&blocks, tolerances)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let rho_op = matrices_to_operator(&alg, "rho", &self.rho)?;
        let a = matrices_to_operator(&alg, "a", &self.a)?;
        let b = matrices_to_operator(&alg, "b", &self.b)?;
        for (name, x) in [("a", &a), ("b", &b)] {
            if !x.is_hermitian() {
                return Err(CliError::Input(format!(
                    "{name} is not Hermitian (defect {:e})",
                    x.hermiticity_defect()
                )));
            }
        }
        let rho = DensityOperator::new(rho_op).map_err(|e| CliError::Input(format!("rho: {e}")))?;
        Ok(CoreInstance { alg, rho, a, b })
    }
}
