//! Seeded instance generation.
//!
//! The generator is ChaCha8 used as a counter-based splittable PRNG:
//! trial `t` of seed `s` draws from `ChaCha8Rng::seed_from_u64(s)` with
//! stream id `t`, so trials are independent of execution order and the
//! whole run is reproducible bit for bit.
//!
//! Draw order per instance (fixed): block count, then block dimensions
//! (redrawn until the total lies in `[2, max_dim]`), then weights, then
//! the Gaussian entries of `a`, `b` and the Wishart factor of `rho`
//! (per block, row-major, real part before imaginary part), then the
//! rank-deficiency coin.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use wyd_core::{BlockOperator, Complex64, TraceAlgebra};

use crate::instance::{operator_to_matrices, BlockSpec, InstanceSpec};

#[derive(Debug, Clone, Copy)]
pub struct GeneratorBounds {
    /// Upper bound for the total dimension (and for any single block).
    pub max_dim: usize,
    pub max_blocks: usize,
}

/// Per-trial substream: same `(seed, trial)` always yields the same
/// generator state.
pub fn substream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random_ginibre(rng: &mut ChaCha8Rng, alg: &Arc<TraceAlgebra>) -> BlockOperator {
    let data = alg
        .blocks()
        .iter()
        .map(|b| {
            DMatrix::from_fn(b.dim, b.dim, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
        })
        .collect();
    BlockOperator::new(Arc::clone(alg), data).expect("generator shapes match")
}

/// Probability of the rank-deficiency branch.
const RANK_DEFICIENCY_PROB: f64 = 0.1;

pub fn generate_instance(rng: &mut ChaCha8Rng, bounds: &GeneratorBounds) -> InstanceSpec {
    let block_count = rng.random_range(1..=bounds.max_blocks);
    let dims: Vec<usize> = loop {
        let dims: Vec<usize> = (0..block_count)
            .map(|_| rng.random_range(1..=bounds.max_dim))
            .collect();
        let total: usize = dims.iter().sum();
        if (2..=bounds.max_dim).contains(&total) {
            break dims;
        }
    };
    let blocks: Vec<(usize, f64)> = dims
        .iter()
        .map(|&dim| (dim, rng.random_range(0.5..=2.0)))
        .collect();
    let alg = TraceAlgebra::new(&blocks).expect("generator blocks are valid");

    let a = random_ginibre(rng, &alg).symmetrized();
    let b = random_ginibre(rng, &alg).symmetrized();

    let g = random_ginibre(rng, &alg);
    let w = &g * &g.adjoint();
    let mut rho = w.scaled(Complex64::new(1.0 / w.trace().re, 0.0));
    if rng.random::<f64>() < RANK_DEFICIENCY_PROB {
        let dec = rho.eigendecompose().expect("Wishart factor is Hermitian");
        let lam0 = dec.eigenvalues()[0];
        let stripped = &rho - &dec.projections()[0].scaled(Complex64::new(lam0, 0.0));
        let t = stripped.trace().re;
        if t > 0.1 {
            rho = stripped.scaled(Complex64::new(1.0 / t, 0.0));
        }
    }

    InstanceSpec {
        blocks: blocks.iter().map(|&(dim, weight)| BlockSpec { dim, weight }).collect(),
        rho: operator_to_matrices(&rho),
        a: operator_to_matrices(&a),
        b: operator_to_matrices(&b),
        label: None,
    }
}
