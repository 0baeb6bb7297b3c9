//! The verification battery: drives generated instances through the
//! gap computation (both routes), the Robertson–Schrödinger bound, the
//! 4D positivity check and every measure identity, recording one
//! line-delimited JSON record per `(instance, beta)`.
//!
//! Per trial, the substream is consumed in a fixed order: instance
//! draws first, then the two polynomial coefficient sets for the
//! integration identity, then the rectangle-bound subset masks. Trials
//! run in parallel but records are written in trial order, so reports
//! are byte-identical across runs of the same configuration.

use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;
use serde::Serialize;

use wyd_core::{
    build_measure, center, check_positivity, gap_from_product_atoms, polarized_measure,
    product_measure, real_part_symmetry_defect, schrodinger_check, trace_product, uncertainty_gap,
    wyd_pairing_sides, Complex64,
};

use crate::config::VerifyConfig;
use crate::generate::{generate_instance, substream, GeneratorBounds};
use crate::instance::CoreInstance;
use crate::CliError;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub record: &'static str,
    pub trial: u64,
    pub beta: f64,
    pub dims: Vec<usize>,
    pub weights: Vec<f64>,
    pub rank_deficient: bool,
    pub var_a: f64,
    pub var_b: f64,
    pub cov_re: f64,
    pub cov_im: f64,
    pub corr_re: f64,
    pub corr_im: f64,
    pub info_a: f64,
    pub info_b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub gap_measure: f64,
    pub oracle_defect: f64,
    pub schrodinger_bound: f64,
    pub schrodinger_gap: f64,
    pub heisenberg_gap: f64,
    pub atom4_min_weight: f64,
    pub atom4_floor: f64,
    pub mass_defect: f64,
    pub polarization_defect: f64,
    pub positivity_min_re: f64,
    pub positivity_max_im: f64,
    pub resym_defect: f64,
    pub integrate_defect: f64,
    pub pairing_defect: f64,
    pub rectangle_defect: f64,
    pub eps_q: f64,
    pub eps_orc: f64,
    pub violations: Vec<&'static str>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub record: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub betas: Vec<f64>,
    pub max_dim: usize,
    pub max_blocks: usize,
    pub cases: u64,
    pub violation_cases: u64,
    pub min_gap: f64,
    pub min_gap_margin: f64,
    pub max_oracle_defect: f64,
    pub pass: bool,
}

/// Everything about one instance that does not depend on beta.
struct InstanceChecks {
    dims: Vec<usize>,
    weights: Vec<f64>,
    rank_deficient: bool,
    schrodinger_bound: f64,
    schrodinger_gap: f64,
    heisenberg_gap: f64,
    schrodinger_ok: bool,
    heisenberg_ok: bool,
    atom4_min_weight: f64,
    atom4_floor: f64,
    mass_defect: f64,
    mass_ok: bool,
    polarization_defect: f64,
    polarization_ok: bool,
    positivity_min_re: f64,
    positivity_max_im: f64,
    positivity_ok: bool,
    resym_defect: f64,
    resym_ok: bool,
    integrate_defect: f64,
    integrate_ok: bool,
    rectangle_defect: f64,
    rectangle_ok: bool,
    atoms4: Vec<wyd_core::Atom4D>,
}

fn instance_checks(
    rng: &mut ChaCha8Rng,
    inst: &CoreInstance,
    dims: Vec<usize>,
    weights: Vec<f64>,
) -> InstanceChecks {
    let tol = *inst.alg.tolerances();
    let dec = inst.rho.decomposition();
    let (a, b) = (&inst.a, &inst.b);
    let ab_scale = a.l2_norm() * b.l2_norm();

    let m_ab = build_measure(dec, dec, a, b).expect("same algebra by construction");
    let mass_defect = (m_ab.total_mass() - trace_product(&a.adjoint(), b)).norm();
    let mass_ok = mass_defect <= tol.lin_for(ab_scale);

    let polar = polarized_measure(dec, dec, a, b).expect("same algebra by construction");
    let mut polarization_defect: f64 = 0.0;
    for (d, p) in m_ab.atoms().iter().zip(polar.atoms()) {
        polarization_defect = polarization_defect.max((d.weight - p.weight).norm());
    }
    let polarization_ok = polarization_defect <= tol.lin_for(1.0);

    let m_aa = build_measure(dec, dec, a, a).expect("same algebra by construction");
    let m_bb = build_measure(dec, dec, b, b).expect("same algebra by construction");
    let rep_a = check_positivity(&m_aa).expect("diagonal by construction");
    let rep_b = check_positivity(&m_bb).expect("diagonal by construction");
    let positivity_min_re = rep_a.min_real.min(rep_b.min_real);
    let positivity_max_im = rep_a.max_abs_imag.max(rep_b.max_abs_imag);
    let positivity_ok =
        positivity_min_re >= -tol.lin_for(1.0) && positivity_max_im <= tol.lin_for(1.0);

    let resym_defect =
        real_part_symmetry_defect(dec, dec, a, b).expect("observables are Hermitian");
    let resym_ok = resym_defect <= tol.lin_for(1.0);

    // integration identity with seeded random polynomials
    let coeffs_g: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let coeffs_h: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let poly = |coeffs: Vec<f64>| move |t: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c);
    let g = poly(coeffs_g);
    let h = poly(coeffs_h);
    let integral = m_ab
        .integrate(|x| Complex64::new(g(x), 0.0), |y| Complex64::new(h(y), 0.0))
        .expect("polynomials are finite");
    let trace_side = trace_product(
        &(&dec.apply(g.clone()).expect("finite") * &a.adjoint()),
        &(&dec.apply(h.clone()).expect("finite") * b),
    );
    let mut l1 = 0.0;
    let mut max_gh: f64 = 0.0;
    for atom in m_ab.atoms() {
        l1 += atom.weight.norm();
        max_gh = max_gh.max((g(atom.x) * h(atom.y)).abs());
    }
    let integrate_defect = (integral - trace_side).norm();
    let integrate_ok = integrate_defect <= tol.lin_for(l1 * max_gh);

    // rectangle bound on sampled atom subsets
    let n_atoms = m_ab.atoms().len();
    let mut rectangle_defect: f64 = 0.0;
    for _ in 0..8 {
        let indices: Vec<usize> = (0..n_atoms).filter(|_| rng.random::<bool>()).collect();
        let overshoot = m_ab.subset_mass(&indices).norm() - ab_scale;
        rectangle_defect = rectangle_defect.max(overshoot);
    }
    let rectangle_ok = rectangle_defect <= tol.lin_for(1.0);

    // 4D product measure over centered operands
    let a0 = center(&inst.rho, a).expect("observable is Hermitian");
    let b0 = center(&inst.rho, b).expect("observable is Hermitian");
    let mu_aa = build_measure(dec, dec, &a0, &a0).expect("same algebra");
    let mu_bb = build_measure(dec, dec, &b0, &b0).expect("same algebra");
    let mu_ab = build_measure(dec, dec, &a0, &b0).expect("same algebra");
    let atoms4 = product_measure(&mu_aa, &mu_bb, &mu_ab).expect("coherent context");
    let mut atom4_min_weight = f64::INFINITY;
    for atom in &atoms4 {
        atom4_min_weight = atom4_min_weight.min(atom.weight);
    }
    let a0b0 = a0.l2_norm() * b0.l2_norm();
    let atom4_floor = tol.lin * a0b0 * a0b0;

    let schr = schrodinger_check(&inst.rho, a, b).expect("observables are Hermitian");
    let eps_schr = tol.quantity_for(schr.heisenberg_lhs);

    let rank_deficient = dec.eigenvalues().iter().any(|&l| l.abs() <= 1e-12);

    InstanceChecks {
        dims,
        weights,
        rank_deficient,
        schrodinger_bound: schr.bound,
        schrodinger_gap: schr.gap,
        heisenberg_gap: schr.heisenberg_gap,
        schrodinger_ok: schr.gap >= -eps_schr,
        heisenberg_ok: schr.heisenberg_gap >= -eps_schr,
        atom4_min_weight,
        atom4_floor,
        mass_defect,
        mass_ok,
        polarization_defect,
        polarization_ok,
        positivity_min_re,
        positivity_max_im,
        positivity_ok,
        resym_defect,
        resym_ok,
        integrate_defect,
        integrate_ok,
        rectangle_defect,
        rectangle_ok,
        atoms4,
    }
}

fn run_trial(config: &VerifyConfig, trial: u64) -> Vec<VerifyRecord> {
    let bounds = GeneratorBounds { max_dim: config.max_dim, max_blocks: config.max_blocks };
    let mut rng = substream(config.seed, trial);
    let spec = generate_instance(&mut rng, &bounds);
    let inst = spec.to_core(config.tolerances).expect("generated instances validate");
    let dims: Vec<usize> = spec.blocks.iter().map(|b| b.dim).collect();
    let weights: Vec<f64> = spec.blocks.iter().map(|b| b.weight).collect();
    let checks = instance_checks(&mut rng, &inst, dims, weights);
    let tol = *inst.alg.tolerances();

    let mut records = Vec::with_capacity(config.betas.len());
    for &beta in &config.betas {
        let report = uncertainty_gap(&inst.rho, beta, &inst.a, &inst.b)
            .expect("beta validated, observables Hermitian");
        let gap_measure =
            gap_from_product_atoms(&checks.atoms4, beta).expect("coordinates are nonnegative");
        let oracle_defect = (gap_measure - report.gap).abs();
        let eps_orc = tol.oracle_for(report.lhs);

        let (pair_t, pair_m) =
            wyd_pairing_sides(&inst.rho, beta, &inst.a, &inst.b).expect("valid instance");
        let pairing_defect = (pair_t - pair_m).norm();
        let pairing_ok =
            pairing_defect <= tol.lin_for(inst.a.l2_norm() * inst.b.l2_norm());

        let mut violations: Vec<&'static str> = Vec::new();
        if !report.gap_pass {
            violations.push("gap");
        }
        if oracle_defect > eps_orc {
            violations.push("oracle");
        }
        if !report.quantities_nonnegative {
            violations.push("negative-quantity");
        }
        if checks.atom4_min_weight < -checks.atom4_floor {
            violations.push("atom4-positivity");
        }
        if !checks.schrodinger_ok {
            violations.push("schrodinger");
        }
        if !checks.heisenberg_ok {
            violations.push("heisenberg");
        }
        if !checks.mass_ok {
            violations.push("mass");
        }
        if !checks.polarization_ok {
            violations.push("polarization");
        }
        if !checks.positivity_ok {
            violations.push("mu-positivity");
        }
        if !checks.resym_ok {
            violations.push("resym");
        }
        if !checks.integrate_ok {
            violations.push("integrate");
        }
        if !pairing_ok {
            violations.push("pairing");
        }
        if !checks.rectangle_ok {
            violations.push("rectangle");
        }
        let pass = violations.is_empty();

        records.push(VerifyRecord {
            record: "case",
            trial,
            beta,
            dims: checks.dims.clone(),
            weights: checks.weights.clone(),
            rank_deficient: checks.rank_deficient,
            var_a: report.var_a,
            var_b: report.var_b,
            cov_re: report.cov.re,
            cov_im: report.cov.im,
            corr_re: report.corr.re,
            corr_im: report.corr.im,
            info_a: report.info_a,
            info_b: report.info_b,
            lhs: report.lhs,
            rhs: report.rhs,
            gap: report.gap,
            gap_measure,
            oracle_defect,
            schrodinger_bound: checks.schrodinger_bound,
            schrodinger_gap: checks.schrodinger_gap,
            heisenberg_gap: checks.heisenberg_gap,
            atom4_min_weight: checks.atom4_min_weight,
            atom4_floor: checks.atom4_floor,
            mass_defect: checks.mass_defect,
            polarization_defect: checks.polarization_defect,
            positivity_min_re: checks.positivity_min_re,
            positivity_max_im: checks.positivity_max_im,
            resym_defect: checks.resym_defect,
            integrate_defect: checks.integrate_defect,
            pairing_defect,
            rectangle_defect: checks.rectangle_defect,
            eps_q: report.eps_q,
            eps_orc,
            violations,
            pass,
        });
    }
    records
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerifySummary, CliError> {
    config.validate()?;

    let per_trial: Vec<Vec<VerifyRecord>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect();

    let mut cases = 0u64;
    let mut violation_cases = 0u64;
    let mut min_gap = f64::INFINITY;
    let mut min_gap_margin = f64::INFINITY;
    let mut max_oracle_defect: f64 = 0.0;

    let file = File::create(&config.out)?;
    let mut out = BufWriter::new(file);
    for records in &per_trial {
        for record in records {
            cases += 1;
            if !record.pass {
                violation_cases += 1;
            }
            min_gap = min_gap.min(record.gap);
            min_gap_margin = min_gap_margin.min(record.gap + record.eps_q);
            max_oracle_defect = max_oracle_defect.max(record.oracle_defect);
            serde_json::to_writer(&mut out, record).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
    }

    let summary = VerifySummary {
        record: "summary",
        seed: config.seed,
        trials: config.trials,
        betas: config.betas.clone(),
        max_dim: config.max_dim,
        max_blocks: config.max_blocks,
        cases,
        violation_cases,
        min_gap,
        min_gap_margin,
        max_oracle_defect,
        pass: violation_cases == 0,
    };
    serde_json::to_writer(&mut out, &summary).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(summary)
}
