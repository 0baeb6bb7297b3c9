//! Single-instance evaluation (`case`) and the measure dump: atoms of
//! the three centered correlation measures, the nonzero 4D atoms with
//! their kernel values, and the reconstructed gap. Coordinates are
//! merged within 1e-12 for display only; the reconstructed value comes
//! from the unmerged atom list.

use serde::Serialize;

use wyd_core::{
    build_measure, center, gap_from_product_atoms, kernel, product_measure, trace_product,
    uncertainty_gap, Atom4D, AtomicMeasure2D, Tolerances, UncertaintyReport,
};

use crate::instance::InstanceSpec;
use crate::CliError;

const DISPLAY_MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Serialize)]
pub struct CaseDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub beta: f64,
    pub report: ReportDocument,
    pub gap_measure: f64,
    pub oracle_defect: f64,
    pub eps_orc: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measures: Option<MeasureDump>,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub var_a: f64,
    pub var_b: f64,
    pub cov_re: f64,
    pub cov_im: f64,
    pub corr_re: f64,
    pub corr_im: f64,
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
}

impl ReportDocument {
    fn from_report(r: &UncertaintyReport) -> Self {
        Self {
            var_a: r.var_a,
            var_b: r.var_b,
            cov_re: r.cov.re,
            cov_im: r.cov.im,
            corr_re: r.corr.re,
            corr_im: r.corr.im,
            info_a: r.info_a,
            info_b: r.info_b,
            schrodinger_lhs: r.schrodinger_lhs,
            schrodinger_bound: r.schrodinger_bound,
            lhs: r.lhs,
            rhs: r.rhs,
            gap: r.gap,
            eps_q: r.eps_q,
            gap_pass: r.gap_pass,
            schrodinger_pass: r.schrodinger_pass,
            heisenberg_pass: r.heisenberg_pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AtomDocument {
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Serialize)]
pub struct MeasureDocument {
    pub total_mass_re: f64,
    pub total_mass_im: f64,
    pub atoms: Vec<AtomDocument>,
}

impl MeasureDocument {
    fn from_measure(m: &AtomicMeasure2D) -> Self {
        let mass = m.total_mass();
        Self {
            total_mass_re: mass.re,
            total_mass_im: mass.im,
            atoms: m
                .merged_atoms(DISPLAY_MERGE_TOL)
                .iter()
                .map(|a| AtomDocument { x: a.x, y: a.y, re: a.weight.re, im: a.weight.im })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Atom4Document {
    pub coords: [f64; 4],
    pub weight: f64,
    pub kernel: f64,
}

#[derive(Debug, Serialize)]
pub struct MeasureDump {
    pub mu_a0a0: MeasureDocument,
    pub mu_b0b0: MeasureDocument,
    pub mu_a0b0: MeasureDocument,
    /// `τ(a₀* b₀)`, which the total mass of `μ_a0b0` must match.
    pub trace_a0b0_re: f64,
    pub trace_a0b0_im: f64,
    pub atoms4: Vec<Atom4Document>,
    /// `¼ Σ K·w` over the unmerged atom list.
    pub gap_reconstructed: f64,
}

fn merged_atoms4(atoms: &[Atom4D], beta: f64) -> Vec<Atom4Document> {
    let mut merged: Vec<Atom4D> = Vec::new();
    for atom in atoms {
        if atom.weight == 0.0 {
            continue;
        }
        match merged.iter_mut().find(|m| {
            m.coords
                .iter()
                .zip(&atom.coords)
                .all(|(p, q)| (p - q).abs() <= DISPLAY_MERGE_TOL)
        }) {
            Some(m) => m.weight += atom.weight,
            None => merged.push(*atom),
        }
    }
    merged
        .iter()
        .map(|m| Atom4Document {
            coords: m.coords,
            weight: m.weight,
            kernel: kernel(m.coords[0], m.coords[1], m.coords[2], m.coords[3], beta)
                .expect("coordinates are nonnegative"),
        })
        .collect()
}

pub fn run_case(
    spec: &InstanceSpec,
    beta: f64,
    dump_measures: bool,
    tolerances: Tolerances,
) -> Result<CaseDocument, CliError> {
    let inst = spec.to_core(tolerances)?;
    let report = uncertainty_gap(&inst.rho, beta, &inst.a, &inst.b)
        .map_err(|e| CliError::Input(e.to_string()))?;

    let a0 = center(&inst.rho, &inst.a).map_err(|e| CliError::Input(e.to_string()))?;
    let b0 = center(&inst.rho, &inst.b).map_err(|e| CliError::Input(e.to_string()))?;
    let dec = inst.rho.decomposition();
    let mu_aa = build_measure(dec, dec, &a0, &a0).map_err(|e| CliError::Input(e.to_string()))?;
    let mu_bb = build_measure(dec, dec, &b0, &b0).map_err(|e| CliError::Input(e.to_string()))?;
    let mu_ab = build_measure(dec, dec, &a0, &b0).map_err(|e| CliError::Input(e.to_string()))?;
    let atoms4 = product_measure(&mu_aa, &mu_bb, &mu_ab).map_err(|e| CliError::Input(e.to_string()))?;
    let gap_measure = gap_from_product_atoms(&atoms4, beta).map_err(|e| CliError::Input(e.to_string()))?;

    let oracle_defect = (gap_measure - report.gap).abs();
    let eps_orc = inst.alg.tolerances().oracle_for(report.lhs);
    let pass = report.gap_pass && report.schrodinger_pass && oracle_defect <= eps_orc;

    let measures = dump_measures.then(|| {
        let tr = trace_product(&a0.adjoint(), &b0);
        MeasureDump {
            mu_a0a0: MeasureDocument::from_measure(&mu_aa),
            mu_b0b0: MeasureDocument::from_measure(&mu_bb),
            mu_a0b0: MeasureDocument::from_measure(&mu_ab),
            trace_a0b0_re: tr.re,
            trace_a0b0_im: tr.im,
            atoms4: merged_atoms4(&atoms4, beta),
            gap_reconstructed: gap_measure,
        }
    });

    Ok(CaseDocument {
        label: spec.label.clone(),
        beta,
        report: ReportDocument::from_report(&report),
        gap_measure,
        oracle_defect,
        eps_orc,
        pass,
        measures,
    })
}
