//! Scalar uncertainty quantities and the variance–skew-information
//! inequality
//!
//! ```text
//! Var(A)·Var(B) − (Re Cov(A,B))²  ≥  I_β(A)·I_β(B) − (Re Corr_β(A,B))²
//! ```
//!
//! computed two independent ways: directly from trace formulas on
//! centered operators, and as `¼ ∫ K dμ` against the 4-dimensional
//! positive product measure assembled from the atomic correlation
//! measures. Agreement of the two routes is the strongest self-test the
//! toolkit has.

use num_complex::Complex64;

use crate::algebra::{commutator, trace_product, BlockOperator};
use crate::error::{Error, Result};
use crate::measure::{build_measure, AtomicMeasure2D};
use crate::spectral::DensityOperator;

/// All scalar quantities for one `(ρ, A, B, β)` instance, with the pass
/// flags and the tolerance they were judged against. The stored `lhs`,
/// `rhs` and `gap` satisfy the defining arithmetic relations exactly as
/// written, bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub beta: f64,
    pub var_a: f64,
    pub var_b: f64,
    pub cov: Complex64,
    pub corr: Complex64,
    pub info_a: f64,
    pub info_b: f64,
    pub schrodinger_lhs: f64,
    pub schrodinger_bound: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub eps_q: f64,
    pub gap_pass: bool,
    pub schrodinger_pass: bool,
    pub heisenberg_pass: bool,
    pub quantities_nonnegative: bool,
}

/// One atom of the 4D product measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom4D {
    pub coords: [f64; 4],
    pub weight: f64,
}

/// Result of [`schrodinger_check`]: the textbook uncertainty relation
/// and its weaker variance-product form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerReport {
    pub lhs: f64,
    pub bound: f64,
    pub gap: f64,
    pub heisenberg_lhs: f64,
    pub heisenberg_gap: f64,
}

fn require_hermitian(x: &BlockOperator) -> Result<()> {
    let defect = x.hermiticity_defect();
    let tol = x.algebra().tolerances().herm_for(x.max_norm());
    if defect > tol {
        return Err(Error::NotHermitian { defect, tolerance: tol });
    }
    Ok(())
}

fn require_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(Error::BetaOutOfRange(beta))
    }
}

/// `x − ω(x)·I`. The expectation of a Hermitian operator is real, so
/// its real part is subtracted and the result stays Hermitian.
pub fn center(rho: &DensityOperator, x: &BlockOperator) -> Result<BlockOperator> {
    require_hermitian(x)?;
    let mean = rho.expectation(x).re;
    Ok(x.plus_identity(Complex64::new(-mean, 0.0)))
}

/// `Cov(A,B) = τ(ρAB) − τ(ρA)τ(ρB)`.
pub fn covariance(
    rho: &DensityOperator,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<Complex64> {
    require_hermitian(a)?;
    require_hermitian(b)?;
    let r = rho.operator();
    Ok(trace_product(&(r * a), b) - rho.expectation(a) * rho.expectation(b))
}

/// `Var(A) = Re Cov(A,A)`.
pub fn variance(rho: &DensityOperator, a: &BlockOperator) -> Result<f64> {
    Ok(covariance(rho, a, a)?.re)
}

/// `Corr_β(A,B) = τ(ρAB) − τ(ρ^β A ρ^{1−β} B)`.
pub fn beta_correlation(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<Complex64> {
    require_beta(beta)?;
    require_hermitian(a)?;
    require_hermitian(b)?;
    let r = rho.operator();
    let rb = rho.power(beta)?;
    let r1b = rho.power(1.0 - beta)?;
    Ok(trace_product(&(r * a), b) - trace_product(&(&rb * a), &(&r1b * b)))
}

/// Skew information `I_β(A) = Re Corr_β(A,A)`; vanishes iff `ρ` and `A`
/// commute, and is bounded by the variance.
pub fn beta_information(rho: &DensityOperator, beta: f64, a: &BlockOperator) -> Result<f64> {
    Ok(beta_correlation(rho, beta, a, a)?.re)
}

/// Robertson–Schrödinger relation:
/// `Var(A)Var(B) − (Re Cov)² ≥ ¼|τ(ρ[A,B])|²`, plus the weaker
/// variance-product (Heisenberg) form.
pub fn schrodinger_check(
    rho: &DensityOperator,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<SchrodingerReport> {
    let var_a = variance(rho, a)?;
    let var_b = variance(rho, b)?;
    let cov = covariance(rho, a, b)?;
    let bound = 0.25 * rho.expectation(&commutator(a, b)).norm_sqr();
    let lhs = var_a * var_b - cov.re * cov.re;
    let heisenberg_lhs = var_a * var_b;
    Ok(SchrodingerReport {
        lhs,
        bound,
        gap: lhs - bound,
        heisenberg_lhs,
        heisenberg_gap: heisenberg_lhs - bound,
    })
}

/// The nonnegative kernel
/// `K = (λ₁+λ₂)λ₃^β λ₄^{1−β} + λ₁^β λ₂^{1−β}(λ₃+λ₄) − 2 λ₁^β λ₂^{1−β} λ₃^β λ₄^{1−β}`,
/// evaluated in the factored form
/// `(λ₁+λ₂−λ₁^β λ₂^{1−β})λ₃^β λ₄^{1−β} + λ₁^β λ₂^{1−β}(λ₃+λ₄−λ₃^β λ₄^{1−β})`
/// whose brackets are nonnegative by the weighted mean inequality, so
/// the sign survives floating point. `0^β = 0`.
pub fn kernel(l1: f64, l2: f64, l3: f64, l4: f64, beta: f64) -> Result<f64> {
    require_beta(beta)?;
    for l in [l1, l2, l3, l4] {
        if l < 0.0 || l.is_nan() {
            return Err(Error::NegativeLambda(l));
        }
    }
    let p12 = l1.powf(beta) * l2.powf(1.0 - beta);
    let p34 = l3.powf(beta) * l4.powf(1.0 - beta);
    Ok((l1 + l2 - p12) * p34 + p12 * (l3 + l4 - p34))
}

fn require_diagonal(m: &AtomicMeasure2D, name: &str) -> Result<()> {
    if !m.is_diagonal() {
        return Err(Error::ContextMismatch(format!(
            "{name} must be a diagonal measure (sigma = rho, b = a)"
        )));
    }
    Ok(())
}

/// Assembles the 4D measure
/// `μ = μ_aa ⊗ μ_bb + μ_bb ⊗ μ_aa − 2 Re μ_ab ⊗ Re μ_ab`
/// as an atom list on the common eigenvalue grid. The diagonal measures
/// are real, so their real parts enter the products. Every weight is
/// nonnegative up to roundoff; that positivity is the content of the
/// check the harness runs on these atoms.
pub fn product_measure(
    mu_aa: &AtomicMeasure2D,
    mu_bb: &AtomicMeasure2D,
    mu_ab: &AtomicMeasure2D,
) -> Result<Vec<Atom4D>> {
    require_diagonal(mu_aa, "mu_aa")?;
    require_diagonal(mu_bb, "mu_bb")?;
    let dec = &mu_aa.context().dec_rho;
    for (m, name) in [(mu_bb, "mu_bb"), (mu_ab, "mu_ab")] {
        if &m.context().dec_rho != dec || &m.context().dec_sigma != dec {
            return Err(Error::ContextMismatch(format!(
                "{name} was built from a different spectral decomposition"
            )));
        }
    }
    if mu_ab.context().a != mu_aa.context().a || mu_ab.context().b != mu_bb.context().a {
        return Err(Error::ContextMismatch(
            "mu_ab operands do not match mu_aa / mu_bb".into(),
        ));
    }

    let n = mu_aa.atoms().len();
    let mut atoms = Vec::with_capacity(n * n);
    for first in 0..n {
        let aa_ij = mu_aa.atoms()[first];
        let bb_ij = mu_bb.atoms()[first];
        let ab_ij = mu_ab.atoms()[first];
        for second in 0..n {
            let aa_kl = mu_aa.atoms()[second];
            let bb_kl = mu_bb.atoms()[second];
            let ab_kl = mu_ab.atoms()[second];
            let weight = aa_ij.weight.re * bb_kl.weight.re + bb_ij.weight.re * aa_kl.weight.re
                - 2.0 * ab_ij.weight.re * ab_kl.weight.re;
            atoms.push(Atom4D {
                coords: [aa_ij.x, aa_ij.y, bb_kl.x, bb_kl.y],
                weight,
            });
        }
    }
    Ok(atoms)
}

/// `¼ Σ K(coords, β) · weight` over product-measure atoms, in atom
/// order. Exact zero weights are skipped.
pub fn gap_from_product_atoms(atoms: &[Atom4D], beta: f64) -> Result<f64> {
    require_beta(beta)?;
    let mut acc = 0.0;
    for atom in atoms {
        if atom.weight == 0.0 {
            continue;
        }
        let [l1, l2, l3, l4] = atom.coords;
        acc += kernel(l1, l2, l3, l4, beta)? * atom.weight;
    }
    Ok(0.25 * acc)
}

/// The main inequality, evaluated from trace formulas on centered
/// operators. A negative gap beyond tolerance is flagged in the report,
/// never silently passed.
pub fn uncertainty_gap(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<UncertaintyReport> {
    require_beta(beta)?;
    let a0 = center(rho, a)?;
    let b0 = center(rho, b)?;
    let r = rho.operator();
    let rb = rho.power(beta)?;
    let r1b = rho.power(1.0 - beta)?;

    let raa = trace_product(&(r * &a0), &a0);
    let rbb = trace_product(&(r * &b0), &b0);
    let cov = trace_product(&(r * &a0), &b0);
    let taa = trace_product(&(&rb * &a0), &(&r1b * &a0));
    let tbb = trace_product(&(&rb * &b0), &(&r1b * &b0));
    let tab = trace_product(&(&rb * &a0), &(&r1b * &b0));

    let var_a = raa.re;
    let var_b = rbb.re;
    let info_a = (raa - taa).re;
    let info_b = (rbb - tbb).re;
    let corr = cov - tab;

    let lhs = var_a * var_b - cov.re * cov.re;
    let rhs = info_a * info_b - corr.re * corr.re;
    let gap = lhs - rhs;
    let schrodinger_bound = 0.25 * trace_product(r, &commutator(&a0, &b0)).norm_sqr();

    let eps_q = rho.algebra().tolerances().quantity_for(var_a * var_b);
    Ok(UncertaintyReport {
        beta,
        var_a,
        var_b,
        cov,
        corr,
        info_a,
        info_b,
        schrodinger_lhs: lhs,
        schrodinger_bound,
        lhs,
        rhs,
        gap,
        eps_q,
        gap_pass: gap >= -eps_q,
        schrodinger_pass: lhs - schrodinger_bound >= -eps_q,
        heisenberg_pass: var_a * var_b - schrodinger_bound >= -eps_q,
        quantities_nonnegative: [var_a, var_b, info_a, info_b].iter().all(|&q| q >= -eps_q),
    })
}

/// The measure-route gap `¼ Σ K·w` alone, without the cross-check.
pub fn gap_via_measure_unchecked(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<f64> {
    require_beta(beta)?;
    let a0 = center(rho, a)?;
    let b0 = center(rho, b)?;
    let dec = rho.decomposition();
    let mu_aa = build_measure(dec, dec, &a0, &a0)?;
    let mu_bb = build_measure(dec, dec, &b0, &b0)?;
    let mu_ab = build_measure(dec, dec, &a0, &b0)?;
    let atoms = product_measure(&mu_aa, &mu_bb, &mu_ab)?;
    gap_from_product_atoms(&atoms, beta)
}

/// The measure-route gap with its built-in oracle check against the
/// trace route; disagreement beyond the oracle tolerance signals an
/// eigensolver or measure bug and is reported as an error.
pub fn gap_via_measure(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<f64> {
    let report = uncertainty_gap(rho, beta, a, b)?;
    let measured = gap_via_measure_unchecked(rho, beta, a, b)?;
    let tol = rho.algebra().tolerances().oracle_for(report.lhs);
    if (measured - report.gap).abs() > tol {
        return Err(Error::InternalConsistency {
            what: "gap via measure",
            left: report.gap,
            right: measured,
            tolerance: tol,
        });
    }
    Ok(measured)
}

/// Gap as a function of β over a grid. Each entry is `(β, gap)`.
pub fn g_curve(
    rho: &DensityOperator,
    a: &BlockOperator,
    b: &BlockOperator,
    beta_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    for &beta in beta_grid {
        require_beta(beta)?;
    }
    beta_grid
        .iter()
        .map(|&beta| Ok((beta, uncertainty_gap(rho, beta, a, b)?.gap)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TraceAlgebra;
    use crate::spectral::DensityOperator;
    use nalgebra::DMatrix;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qubit() -> Arc<TraceAlgebra> {
        TraceAlgebra::new(&[(2, 1.0)]).unwrap()
    }

    fn op(alg: &Arc<TraceAlgebra>, rows: [[Complex64; 2]; 2]) -> BlockOperator {
        BlockOperator::new(
            Arc::clone(alg),
            vec![DMatrix::from_row_slice(2, 2, &[rows[0][0], rows[0][1], rows[1][0], rows[1][1]])],
        )
        .unwrap()
    }

    fn pauli_x(alg: &Arc<TraceAlgebra>) -> BlockOperator {
        op(alg, [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
    }

    fn pauli_y(alg: &Arc<TraceAlgebra>) -> BlockOperator {
        op(alg, [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
    }

    fn pauli_z(alg: &Arc<TraceAlgebra>) -> BlockOperator {
        BlockOperator::diagonal(alg, &[1.0, -1.0]).unwrap()
    }

    fn rho_34(alg: &Arc<TraceAlgebra>) -> DensityOperator {
        DensityOperator::new(BlockOperator::diagonal(alg, &[0.75, 0.25]).unwrap()).unwrap()
    }

    // Scalar closed forms for rho = diag(p, q), a = sigma_x, b = sigma_y:
    // lhs = 1, I_beta = 1 - s(beta) with s = p^b q^(1-b) + q^b p^(1-b),
    // Re corr = 0, so gap = 1 - (1 - s)^2.
    fn s_closed(p: f64, q: f64, beta: f64) -> f64 {
        p.powf(beta) * q.powf(1.0 - beta) + q.powf(beta) * p.powf(1.0 - beta)
    }

    #[test]
    fn centering_subtracts_the_mean() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let z0 = center(&rho, &pauli_z(&alg)).unwrap();
        // omega(sigma_z) = 0.5
        assert!((z0.block(0)[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!((z0.block(0)[(1, 1)].re + 1.5).abs() < 1e-14);
        assert!(rho.expectation(&z0).norm() < 1e-14);

        let x0 = center(&rho, &pauli_x(&alg)).unwrap();
        assert!((&x0 - &pauli_x(&alg)).max_norm() < 1e-14);

        let id0 = center(&rho, &BlockOperator::identity(&alg)).unwrap();
        assert!(id0.max_norm() < 1e-14);
    }

    #[test]
    fn variances_and_covariance() {
        let alg = qubit();
        let rho = rho_34(&alg);
        assert!((variance(&rho, &pauli_x(&alg)).unwrap() - 1.0).abs() < 1e-14);
        assert!((variance(&rho, &pauli_z(&alg)).unwrap() - 0.75).abs() < 1e-14);
        let cov = covariance(&rho, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        assert!(cov.re.abs() < 1e-14);
        // tau(rho sigma_x sigma_y) = i(2p-1) = 0.5i
        assert!((cov.im - 0.5).abs() < 1e-14);
    }

    #[test]
    fn covariance_matches_centered_form() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let a = op(&alg, [[c(0.4, 0.0), c(0.2, 0.7)], [c(0.2, -0.7), c(-1.1, 0.0)]]);
        let b = op(&alg, [[c(-0.3, 0.0), c(1.0, -0.2)], [c(1.0, 0.2), c(0.6, 0.0)]]);
        let direct = covariance(&rho, &a, &b).unwrap();
        let a0 = center(&rho, &a).unwrap();
        let b0 = center(&rho, &b).unwrap();
        let centered = trace_product(&(rho.operator() * &a0), &b0);
        assert!((direct - centered).norm() < 1e-13);
    }

    #[test]
    fn skew_information_closed_form() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let got = beta_information(&rho, 0.5, &pauli_x(&alg)).unwrap();
        let expected = 1.0 - 3.0f64.sqrt() / 2.0;
        assert!((got - expected).abs() < 1e-13);
        // commuting observable carries no skew information
        for beta in [0.1, 0.5, 0.9] {
            assert!(beta_information(&rho, beta, &pauli_z(&alg)).unwrap().abs() < 1e-13);
        }
        let corr = beta_correlation(&rho, 0.5, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        assert!(corr.re.abs() < 1e-13);
    }

    #[test]
    fn schrodinger_qubit_case() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let r = schrodinger_check(&rho, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-13);
        assert!((r.bound - 0.25).abs() < 1e-13);
        assert!((r.gap - 0.75).abs() < 1e-13);
        assert!(r.heisenberg_gap >= r.gap - 1e-13);
    }

    #[test]
    fn schrodinger_equal_operands() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let sx = pauli_x(&alg);
        let r = schrodinger_check(&rho, &sx, &sx).unwrap();
        assert!(r.bound.abs() < 1e-14);
        assert!(r.gap.abs() < 1e-13);
    }

    #[test]
    fn schrodinger_maximally_mixed() {
        let alg = qubit();
        let rho = DensityOperator::new(BlockOperator::diagonal(&alg, &[0.5, 0.5]).unwrap()).unwrap();
        let r = schrodinger_check(&rho, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        assert!(r.bound.abs() < 1e-14);
        assert!((r.lhs - 1.0).abs() < 1e-13);
    }

    #[test]
    fn kernel_values() {
        assert!((kernel(1.0, 1.0, 1.0, 1.0, 0.3).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(kernel(0.0, 0.0, 1.0, 1.0, 0.7).unwrap(), 0.0);
        assert!((kernel(4.0, 1.0, 1.0, 1.0, 0.5).unwrap() - 5.0).abs() < 1e-14);
        assert!(matches!(kernel(-1.0, 1.0, 1.0, 1.0, 0.5), Err(Error::NegativeLambda(_))));
        assert!(matches!(kernel(1.0, 1.0, 1.0, 1.0, 1.0), Err(Error::BetaOutOfRange(_))));
    }

    fn qubit_product_atoms(
        rho: &DensityOperator,
        a: &BlockOperator,
        b: &BlockOperator,
    ) -> Vec<Atom4D> {
        let a0 = center(rho, a).unwrap();
        let b0 = center(rho, b).unwrap();
        let dec = rho.decomposition();
        let mu_aa = build_measure(dec, dec, &a0, &a0).unwrap();
        let mu_bb = build_measure(dec, dec, &b0, &b0).unwrap();
        let mu_ab = build_measure(dec, dec, &a0, &b0).unwrap();
        product_measure(&mu_aa, &mu_bb, &mu_ab).unwrap()
    }

    #[test]
    fn product_measure_qubit_atoms() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let atoms = qubit_product_atoms(&rho, &pauli_x(&alg), &pauli_y(&alg));
        assert_eq!(atoms.len(), 16);
        let mut twos = 0;
        for atom in &atoms {
            let off_first = (atom.coords[0] - atom.coords[1]).abs() > 0.1;
            let off_second = (atom.coords[2] - atom.coords[3]).abs() > 0.1;
            if off_first && off_second {
                assert!((atom.weight - 2.0).abs() < 1e-13);
                twos += 1;
            } else {
                assert!(atom.weight.abs() < 1e-13);
            }
        }
        assert_eq!(twos, 4);
    }

    #[test]
    fn product_measure_equal_operands_vanishes() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let sx = pauli_x(&alg);
        for atom in qubit_product_atoms(&rho, &sx, &sx) {
            assert!(atom.weight.abs() < 1e-13);
        }
    }

    #[test]
    fn product_measure_zero_operand() {
        let alg = qubit();
        let rho = rho_34(&alg);
        for atom in qubit_product_atoms(&rho, &pauli_x(&alg), &BlockOperator::zero(&alg)) {
            assert_eq!(atom.weight, 0.0);
        }
    }

    #[test]
    fn product_measure_rejects_foreign_context() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let sx = pauli_x(&alg);
        let sy = pauli_y(&alg);
        let dec = rho.decomposition();
        let mu_aa = build_measure(dec, dec, &sx, &sx).unwrap();
        let mu_bb = build_measure(dec, dec, &sy, &sy).unwrap();
        let mu_ab = build_measure(dec, dec, &sx, &sx).unwrap(); // wrong b
        assert!(matches!(
            product_measure(&mu_aa, &mu_bb, &mu_ab),
            Err(Error::ContextMismatch(_))
        ));
    }

    #[test]
    fn gap_qubit_closed_form() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let report = uncertainty_gap(&rho, 0.5, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        let s = s_closed(0.75, 0.25, 0.5);
        assert!((report.lhs - 1.0).abs() < 1e-13);
        assert!((report.rhs - (1.0 - s) * (1.0 - s)).abs() < 1e-13);
        assert!((report.gap - (1.0 - (1.0 - s) * (1.0 - s))).abs() < 1e-13);
        assert!(report.gap_pass && report.schrodinger_pass && report.heisenberg_pass);
        assert!(report.quantities_nonnegative);
    }

    #[test]
    fn report_fields_satisfy_their_defining_relations_exactly() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let a = op(&alg, [[c(0.4, 0.0), c(0.2, 0.7)], [c(0.2, -0.7), c(-1.1, 0.0)]]);
        let b = op(&alg, [[c(-0.3, 0.0), c(1.0, -0.2)], [c(1.0, 0.2), c(0.6, 0.0)]]);
        let r = uncertainty_gap(&rho, 0.35, &a, &b).unwrap();
        // bit-exact, not within tolerance: the stored fields are the
        // source of truth for the derived ones
        assert_eq!(r.lhs, r.var_a * r.var_b - r.cov.re * r.cov.re);
        assert_eq!(r.rhs, r.info_a * r.info_b - r.corr.re * r.corr.re);
        assert_eq!(r.gap, r.lhs - r.rhs);
        assert_eq!(r.schrodinger_lhs, r.lhs);
    }

    #[test]
    fn gap_equal_operands_degenerates_to_zero() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let sx = pauli_x(&alg);
        let report = uncertainty_gap(&rho, 0.25, &sx, &sx).unwrap();
        assert!(report.gap.abs() <= report.eps_q);
        assert!(report.gap_pass);
    }

    #[test]
    fn gap_commuting_family_reduces_to_lhs() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let a = pauli_z(&alg);
        let b = BlockOperator::diagonal(&alg, &[2.0, -1.0]).unwrap();
        let report = uncertainty_gap(&rho, 0.5, &a, &b).unwrap();
        assert!(report.rhs.abs() < 1e-13);
        assert!((report.gap - report.lhs).abs() < 1e-13);
        assert!(report.gap >= -report.eps_q);
    }

    #[test]
    fn measure_route_matches_trace_route() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let report = uncertainty_gap(&rho, 0.5, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        let measured = gap_via_measure(&rho, 0.5, &pauli_x(&alg), &pauli_y(&alg)).unwrap();
        assert!((measured - report.gap).abs() < 1e-12);
        // hand value: 1/4 * 4 atoms * weight 2 * K(.75,.25,.75,.25; .5)
        let k = kernel(0.75, 0.25, 0.75, 0.25, 0.5).unwrap();
        assert!((measured - 2.0 * k).abs() < 1e-13);
    }

    #[test]
    fn measure_route_zero_operand() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let got = gap_via_measure(&rho, 0.5, &pauli_x(&alg), &BlockOperator::zero(&alg)).unwrap();
        assert_eq!(got, 0.0);
    }

    #[test]
    fn g_curve_grid_and_symmetry() {
        let alg = qubit();
        let rho = rho_34(&alg);
        let sx = pauli_x(&alg);
        let sy = pauli_y(&alg);
        let curve = g_curve(&rho, &sx, &sy, &[0.5, 0.7]).unwrap();
        let g_half = 1.0 - (1.0 - s_closed(0.75, 0.25, 0.5)).powi(2);
        let g_07 = 1.0 - (1.0 - s_closed(0.75, 0.25, 0.7)).powi(2);
        assert!((curve[0].1 - g_half).abs() < 1e-13);
        assert!((curve[1].1 - g_07).abs() < 1e-13);
        assert!(curve[1].1 >= curve[0].1);

        let mirrored = g_curve(&rho, &sx, &sy, &[0.3, 0.7]).unwrap();
        assert!((mirrored[0].1 - mirrored[1].1).abs() < 1e-12);

        // commuting pair: rhs = 0 so the curve is flat at lhs
        let a = pauli_z(&alg);
        let b = BlockOperator::diagonal(&alg, &[2.0, -1.0]).unwrap();
        let flat = g_curve(&rho, &a, &b, &[0.2, 0.5, 0.8]).unwrap();
        for (_, g) in &flat {
            assert!((g - flat[0].1).abs() < 1e-12);
        }
        assert!(matches!(
            g_curve(&rho, &sx, &sy, &[0.5, 1.5]),
            Err(Error::BetaOutOfRange(_))
        ));
    }
}
