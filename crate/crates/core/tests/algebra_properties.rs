//! Seeded batteries for the trace functional, the eigendecomposition
//! contract and the functional calculus.

mod common;

use common::{random_density, random_ginibre, random_hermitian, random_instance, random_polynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wyd_core::{trace_product, BlockOperator, Complex64};

#[test]
fn trace_is_positive_and_faithful() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..500 {
        let inst = random_instance(&mut rng, 0.0);
        let x = random_ginibre(&mut rng, &inst.alg);
        let t = trace_product(&x.adjoint(), &x);
        let scale = x.l2_norm() * x.l2_norm();
        assert!(t.im.abs() <= 1e-10 * scale.max(1.0));
        assert!(t.re >= -1e-10 * scale.max(1.0));
        // faithfulness: tau(x*x) dominates the largest entry
        let eps_lin = 1e-10;
        if t.re <= eps_lin {
            assert!(x.max_norm() <= (eps_lin / inst.alg.min_weight()).sqrt());
        }
        // contrapositive, quantitatively: w_min * max_entry^2 <= tau(x*x)
        assert!(inst.alg.min_weight() * x.max_norm() * x.max_norm() <= t.re * (1.0 + 1e-12) + 1e-12);
    }
    // a tiny but nonzero operator exercises the faithfulness branch
    let alg = wyd_core::TraceAlgebra::new(&[(2, 0.5)]).unwrap();
    let x = BlockOperator::identity(&alg).scaled(Complex64::new(1e-8, 0.0));
    let t = trace_product(&x.adjoint(), &x);
    assert!(t.re <= 1e-10);
    assert!(x.max_norm() <= (1e-10f64 / alg.min_weight()).sqrt());
}

#[test]
fn trace_is_tracial() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..500 {
        let inst = random_instance(&mut rng, 0.0);
        let x = random_ginibre(&mut rng, &inst.alg);
        let y = random_ginibre(&mut rng, &inst.alg);
        let defect = (trace_product(&x, &y) - trace_product(&y, &x)).norm();
        let bound = 1e-10 * x.max_norm() * y.max_norm() * inst.alg.total_dim() as f64;
        assert!(defect <= bound, "traciality defect {defect} > {bound}");
    }
}

#[test]
fn decomposition_round_trip_battery() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..1000 {
        let inst = random_instance(&mut rng, 0.0);
        let x = random_hermitian(&mut rng, &inst.alg);
        let dec = x.eigendecompose().unwrap();

        let eps = 1e-10 * x.max_norm().max(1.0);
        let residual = (&dec.reconstruct() - &x).max_norm();
        assert!(residual <= eps, "reconstruction residual {residual} > {eps}");

        // ascending eigenvalues
        for w in dec.eigenvalues().windows(2) {
            assert!(w[0] <= w[1]);
        }

        // resolution of identity
        let mut sum = BlockOperator::zero(&inst.alg);
        for p in dec.projections() {
            sum = &sum + p;
        }
        assert!((&sum - &BlockOperator::identity(&inst.alg)).max_norm() <= 1e-10);

        // pairwise orthogonality
        for i in 0..dec.len() {
            for j in (i + 1)..dec.len() {
                let prod = &dec.projections()[i] * &dec.projections()[j];
                assert!(prod.max_norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn functional_calculus_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..300 {
        let inst = random_instance(&mut rng, 0.1);
        let rho = random_density(&mut rng, &inst.alg, 0.1);
        let dec = rho.decomposition();
        let f = random_polynomial(&mut rng, 3);
        let g = random_polynomial(&mut rng, 3);
        let fg = {
            let (f, g) = (f.clone(), g.clone());
            move |t: f64| f(t) * g(t)
        };
        let lhs = dec.apply(fg).unwrap();
        let rhs = &dec.apply(f).unwrap() * &dec.apply(g).unwrap();
        let scale = lhs.max_norm().max(rhs.max_norm()).max(1.0);
        assert!((&lhs - &rhs).max_norm() <= 1e-10 * scale);
    }
}
