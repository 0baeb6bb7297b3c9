//! Hermitian eigendecomposition, functional calculus and density
//! operators.
//!
//! Decompositions keep one rank-1 projection per eigenvalue slot, with
//! repeated eigenvalues left unmerged; every downstream sum is
//! refinement-invariant, and [`SpectralDecomposition::merge_close`]
//! exists for display and for testing that invariance.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::{BlockOperator, TraceAlgebra};
use crate::error::{Error, Result};

/// How a projection is represented internally. Rank-1 projections carry
/// their block index and unit eigenvector so bilinear forms against them
/// stay quadratic in the block dimension; merged projections fall back
/// to the stored matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Carrier {
    Vector { block: usize, v: DVector<Complex64> },
    General,
}

/// Eigenvalues (ascending, duplicates allowed) with orthogonal spectral
/// projections of a Hermitian [`BlockOperator`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    algebra: Arc<TraceAlgebra>,
    eigenvalues: Vec<f64>,
    projections: Vec<BlockOperator>,
    carriers: Vec<Carrier>,
}

impl SpectralDecomposition {
    pub fn algebra(&self) -> &Arc<TraceAlgebra> {
        &self.algebra
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projections(&self) -> &[BlockOperator] {
        &self.projections
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub(crate) fn carrier(&self, i: usize) -> &Carrier {
        &self.carriers[i]
    }

    /// Functional calculus: `Σ f(λ_i) P_i`. Fails if `f` is not finite
    /// at some eigenvalue.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> Result<BlockOperator> {
        let mut blocks: Vec<DMatrix<Complex64>> = self
            .algebra
            .blocks()
            .iter()
            .map(|b| DMatrix::zeros(b.dim, b.dim))
            .collect();
        for (i, lambda) in self.eigenvalues.iter().enumerate() {
            let value = f(*lambda);
            if !value.is_finite() {
                return Err(Error::NonFiniteFunctionValue(*lambda));
            }
            let c = Complex64::new(value, 0.0);
            match &self.carriers[i] {
                Carrier::Vector { block, v } => {
                    let target = &mut blocks[*block];
                    for r in 0..v.len() {
                        for s in 0..v.len() {
                            target[(r, s)] += v[r] * v[s].conj() * c;
                        }
                    }
                }
                Carrier::General => {
                    for (k, m) in self.projections[i].data().iter().enumerate() {
                        blocks[k] += m * c;
                    }
                }
            }
        }
        BlockOperator::new(Arc::clone(&self.algebra), blocks)
    }

    /// Reconstructs `Σ λ_i P_i`.
    pub fn reconstruct(&self) -> BlockOperator {
        self.apply(|t| t).expect("identity is finite")
    }

    /// Returns a decomposition in which eigenvalues closer than `tol`
    /// are clustered into a single (generally higher-rank) projection
    /// at the cluster's first eigenvalue. Used for human-readable dumps
    /// and for refinement-invariance tests; computation never clusters.
    pub fn merge_close(&self, tol: f64) -> SpectralDecomposition {
        let mut eigenvalues: Vec<f64> = Vec::new();
        let mut projections: Vec<BlockOperator> = Vec::new();
        for (i, lambda) in self.eigenvalues.iter().enumerate() {
            match eigenvalues.last() {
                Some(last) if (lambda - last).abs() <= tol => {
                    let merged = &projections[eigenvalues.len() - 1] + &self.projections[i];
                    projections[eigenvalues.len() - 1] = merged;
                }
                _ => {
                    eigenvalues.push(*lambda);
                    projections.push(self.projections[i].clone());
                }
            }
        }
        let carriers = vec![Carrier::General; eigenvalues.len()];
        SpectralDecomposition {
            algebra: Arc::clone(&self.algebra),
            eigenvalues,
            projections,
            carriers,
        }
    }
}

impl BlockOperator {
    /// Hermitian eigendecomposition. The input must have Hermiticity
    /// defect within tolerance; it is re-symmetrized to `(x + x*)/2`
    /// before solving. Eigenvalues come out ascending with a stable
    /// (block, column) tie order, so the result is deterministic for
    /// fixed input bits.
    pub fn eigendecompose(&self) -> Result<SpectralDecomposition> {
        let tol = self.algebra().tolerances();
        let defect = self.hermiticity_defect();
        let herm_tol = tol.herm_for(self.max_norm());
        if defect > herm_tol {
            return Err(Error::NotHermitian { defect, tolerance: herm_tol });
        }
        let h = self.symmetrized();

        let mut slots: Vec<(f64, usize, DVector<Complex64>)> = Vec::with_capacity(self.algebra().total_dim());
        for (k, m) in h.data().iter().enumerate() {
            let eig = SymmetricEigen::new(m.clone());
            for col in 0..m.nrows() {
                let lambda = eig.eigenvalues[col];
                if !lambda.is_finite() {
                    return Err(Error::EigensolverResidual {
                        residual: f64::INFINITY,
                        tolerance: tol.lin_for(self.max_norm()),
                    });
                }
                slots.push((lambda, k, eig.eigenvectors.column(col).into_owned()));
            }
        }
        slots.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));

        let algebra = Arc::clone(self.algebra());
        let mut eigenvalues = Vec::with_capacity(slots.len());
        let mut projections = Vec::with_capacity(slots.len());
        let mut carriers = Vec::with_capacity(slots.len());
        for (lambda, block, v) in slots {
            let mut data: Vec<DMatrix<Complex64>> = algebra
                .blocks()
                .iter()
                .map(|b| DMatrix::zeros(b.dim, b.dim))
                .collect();
            for r in 0..v.len() {
                for s in 0..v.len() {
                    data[block][(r, s)] = v[r] * v[s].conj();
                }
            }
            eigenvalues.push(lambda);
            projections.push(BlockOperator::new(Arc::clone(&algebra), data)?);
            carriers.push(Carrier::Vector { block, v });
        }

        let dec = SpectralDecomposition { algebra, eigenvalues, projections, carriers };

        let residual = (&dec.reconstruct() - &h).max_norm();
        let res_tol = tol.lin_for(h.max_norm());
        if residual > res_tol {
            return Err(Error::EigensolverResidual { residual, tolerance: res_tol });
        }
        Ok(dec)
    }
}

/// A normal state: a Hermitian, positive semidefinite operator with
/// weighted trace 1, stored together with its decomposition. Eigenvalues
/// in `[-ε_psd, 0)` are clamped to 0 at validation; anything more
/// negative is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    operator: BlockOperator,
    decomposition: SpectralDecomposition,
}

impl DensityOperator {
    pub fn new(x: BlockOperator) -> Result<Self> {
        let tol = *x.algebra().tolerances();
        let psd_tol = tol.psd_for(x.max_norm());
        let mut dec = x.eigendecompose()?;
        for lambda in &mut dec.eigenvalues {
            if *lambda < -psd_tol {
                return Err(Error::NotPositive { eigenvalue: *lambda, tolerance: psd_tol });
            }
            if *lambda < 0.0 {
                *lambda = 0.0;
            }
        }
        let operator = x.symmetrized();
        let trace = operator.trace();
        if (trace - Complex64::ONE).norm() > tol.norm {
            return Err(Error::NotNormalized { trace: trace.re, tolerance: tol.norm });
        }
        Ok(Self { operator, decomposition: dec })
    }

    pub fn algebra(&self) -> &Arc<TraceAlgebra> {
        self.operator.algebra()
    }

    pub fn operator(&self) -> &BlockOperator {
        &self.operator
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    /// Fractional power `ρ^β` for `β ∈ (0,1)`, with the convention
    /// `0^β = 0`. Endpoints are rejected.
    pub fn power(&self, beta: f64) -> Result<BlockOperator> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::BetaOutOfRange(beta));
        }
        self.decomposition.apply(|t| if t == 0.0 { 0.0 } else { t.powf(beta) })
    }

    /// `ω(x) = τ(ρ x)`.
    pub fn expectation(&self, x: &BlockOperator) -> Complex64 {
        crate::algebra::trace_product(&self.operator, x)
    }
}
