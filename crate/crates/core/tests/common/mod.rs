//! Seeded random generators shared by the property suites. These are
//! deliberately independent of the CLI's instance generator: tests that
//! cross-check the library should not lean on the code under test.
#![allow(dead_code)] // each test binary uses its own subset

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use wyd_core::{BlockOperator, Complex64, DensityOperator, TraceAlgebra};

pub struct TestInstance {
    pub alg: Arc<TraceAlgebra>,
    pub rho: DensityOperator,
    pub a: BlockOperator,
    pub b: BlockOperator,
}

pub fn random_algebra(
    rng: &mut ChaCha8Rng,
    max_blocks: usize,
    max_total_dim: usize,
) -> Arc<TraceAlgebra> {
    loop {
        let k = rng.random_range(1..=max_blocks);
        let dims: Vec<usize> = (0..k).map(|_| rng.random_range(1..=max_total_dim)).collect();
        let total: usize = dims.iter().sum();
        if (2..=max_total_dim).contains(&total) {
            let blocks: Vec<(usize, f64)> = dims
                .iter()
                .map(|&d| (d, rng.random_range(0.5..=2.0)))
                .collect();
            return TraceAlgebra::new(&blocks).unwrap();
        }
    }
}

/// Entrywise complex Gaussian.
pub fn random_ginibre(rng: &mut ChaCha8Rng, alg: &Arc<TraceAlgebra>) -> BlockOperator {
    let data = alg
        .blocks()
        .iter()
        .map(|b| {
            DMatrix::from_fn(b.dim, b.dim, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
        })
        .collect();
    BlockOperator::new(Arc::clone(alg), data).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, alg: &Arc<TraceAlgebra>) -> BlockOperator {
    random_ginibre(rng, alg).symmetrized()
}

/// Wishart-style density `GG*/τ(GG*)`; with probability
/// `rank_deficiency_prob` the smallest eigenvalue is removed and the
/// state renormalized.
pub fn random_density(
    rng: &mut ChaCha8Rng,
    alg: &Arc<TraceAlgebra>,
    rank_deficiency_prob: f64,
) -> DensityOperator {
    let g = random_ginibre(rng, alg);
    let w = &g * &g.adjoint();
    let mut op = w.scaled(Complex64::new(1.0 / w.trace().re, 0.0));
    if rng.random::<f64>() < rank_deficiency_prob {
        let dec = op.eigendecompose().unwrap();
        let lam0 = dec.eigenvalues()[0];
        let p0 = &dec.projections()[0];
        let stripped = &op - &p0.scaled(Complex64::new(lam0, 0.0));
        let t = stripped.trace().re;
        if t > 0.1 {
            op = stripped.scaled(Complex64::new(1.0 / t, 0.0));
        }
    }
    DensityOperator::new(op).unwrap()
}

pub fn random_instance(rng: &mut ChaCha8Rng, rank_deficiency_prob: f64) -> TestInstance {
    let alg = random_algebra(rng, 3, 8);
    let rho = random_density(rng, &alg, rank_deficiency_prob);
    let a = random_hermitian(rng, &alg);
    let b = random_hermitian(rng, &alg);
    TestInstance { alg, rho, a, b }
}

/// Random real polynomial of degree <= `deg` with coefficients in
/// [-1, 1], returned as an owned closure.
pub fn random_polynomial(rng: &mut ChaCha8Rng, deg: usize) -> impl Fn(f64) -> f64 + Clone {
    let coeffs: Vec<f64> = (0..=deg).map(|_| rng.random_range(-1.0..=1.0)).collect();
    move |t: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Density with a prescribed spectrum, conjugated by a random unitary
/// (QR of a Ginibre block). The spectrum must sum to 1 under the
/// weighted trace for the result to validate.
pub fn density_with_spectrum(
    rng: &mut ChaCha8Rng,
    alg: &Arc<TraceAlgebra>,
    spectrum: &[f64],
) -> DensityOperator {
    let g = random_ginibre(rng, alg);
    let mut data = Vec::new();
    let mut offset = 0;
    for (k, b) in alg.blocks().iter().enumerate() {
        let q = g.block(k).clone().qr().q();
        let mut lam = DMatrix::<Complex64>::zeros(b.dim, b.dim);
        for i in 0..b.dim {
            lam[(i, i)] = Complex64::new(spectrum[offset + i], 0.0);
        }
        offset += b.dim;
        data.push(&q * lam * q.adjoint());
    }
    DensityOperator::new(BlockOperator::new(Arc::clone(alg), data).unwrap()).unwrap()
}
