//! Atomic correlation measures on the plane.
//!
//! For spectral decompositions of `ρ` and `σ` and operators `a`, `b`,
//! the measure places an atom at every eigenvalue pair `(λ_i, κ_j)`
//! with weight `τ(P_i a* Q_j b)`. In finite dimensions this atom list
//! *is* the measure `μ_ab`; rectangle masses, integrals and the pairing
//! identity all reduce to finite sums over it.

use num_complex::Complex64;

use crate::algebra::{trace_product, BlockOperator};
use crate::error::{Error, Result};
use crate::spectral::{Carrier, DensityOperator, SpectralDecomposition};

/// One atom: position `(x, y)` and complex weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom2D {
    pub x: f64,
    pub y: f64,
    pub weight: Complex64,
}

/// The ingredients a measure was built from, kept for coherence checks
/// between related measures.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureContext {
    pub dec_rho: SpectralDecomposition,
    pub dec_sigma: SpectralDecomposition,
    pub a: BlockOperator,
    pub b: BlockOperator,
}

/// Finite atomic measure on the plane, atoms ordered `(i, j)`
/// lexicographically in the source projection indices.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure2D {
    atoms: Vec<Atom2D>,
    rows: usize,
    cols: usize,
    context: MeasureContext,
}

/// Finite union of half-open intervals `[lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &intervals {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::InvalidInterval { lo, hi });
            }
        }
        Ok(Self { intervals })
    }

    pub fn empty() -> Self {
        Self { intervals: Vec::new() }
    }

    pub fn all() -> Self {
        Self { intervals: vec![(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    /// `[center - radius, center + radius)`.
    pub fn around(center: f64, radius: f64) -> Self {
        Self { intervals: vec![(center - radius, center + radius)] }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x < hi)
    }
}

/// Extrema returned by [`check_positivity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    pub max_abs_imag: f64,
    pub min_real: f64,
}

impl AtomicMeasure2D {
    pub fn atoms(&self) -> &[Atom2D] {
        &self.atoms
    }

    /// Grid shape: projection counts of `dec_ρ` and `dec_σ`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn weight_at(&self, i: usize, j: usize) -> Complex64 {
        self.atoms[i * self.cols + j].weight
    }

    pub fn context(&self) -> &MeasureContext {
        &self.context
    }

    /// Same decomposition on both axes and the same operand on both
    /// slots; the case in which the measure is real and positive.
    pub fn is_diagonal(&self) -> bool {
        self.context.dec_rho == self.context.dec_sigma && self.context.a == self.context.b
    }

    /// `Σ w`, in atom order.
    pub fn total_mass(&self) -> Complex64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Mass of `Ω₁ × Ω₂`: sum of weights whose coordinates fall in the
    /// interval sets. Atom membership is exact coordinate comparison.
    pub fn rectangle_mass(&self, omega1: &IntervalSet, omega2: &IntervalSet) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for atom in &self.atoms {
            if omega1.contains(atom.x) && omega2.contains(atom.y) {
                acc += atom.weight;
            }
        }
        acc
    }

    /// Mass of an arbitrary atom index subset, in index order.
    pub fn subset_mass(&self, indices: &[usize]) -> Complex64 {
        indices.iter().map(|&i| self.atoms[i].weight).sum()
    }

    /// `Σ g(x_i) h(y_j) w_ij` in atom order. Fails if `g` or `h` is not
    /// finite at an atom coordinate.
    pub fn integrate<G, H>(&self, g: G, h: H) -> Result<Complex64>
    where
        G: Fn(f64) -> Complex64,
        H: Fn(f64) -> Complex64,
    {
        let mut acc = Complex64::ZERO;
        for atom in &self.atoms {
            let gv = g(atom.x);
            if !gv.re.is_finite() || !gv.im.is_finite() {
                return Err(Error::NonFiniteFunctionValue(atom.x));
            }
            let hv = h(atom.y);
            if !hv.re.is_finite() || !hv.im.is_finite() {
                return Err(Error::NonFiniteFunctionValue(atom.y));
            }
            acc += gv * hv * atom.weight;
        }
        Ok(acc)
    }

    /// Atom list with coordinates merged within `tol` (weights summed).
    /// Display-only; computation always keeps the full grid.
    pub fn merged_atoms(&self, tol: f64) -> Vec<Atom2D> {
        let mut merged: Vec<Atom2D> = Vec::new();
        for atom in &self.atoms {
            match merged
                .iter_mut()
                .find(|m| (m.x - atom.x).abs() <= tol && (m.y - atom.y).abs() <= tol)
            {
                Some(m) => m.weight += atom.weight,
                None => merged.push(*atom),
            }
        }
        merged
    }
}

fn check_common_algebra(
    dec_rho: &SpectralDecomposition,
    dec_sigma: &SpectralDecomposition,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<()> {
    let alg = dec_rho.algebra();
    if !alg.same_blocks(dec_sigma.algebra())
        || !alg.same_blocks(a.algebra())
        || !alg.same_blocks(b.algebra())
    {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// Weight `τ(P_i a* Q_j b)` for one projection pair. Rank-1 carriers in
/// different blocks are exactly zero; same-block carriers reduce to two
/// bilinear forms.
fn pair_weight(
    dec_rho: &SpectralDecomposition,
    dec_sigma: &SpectralDecomposition,
    i: usize,
    j: usize,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Complex64 {
    match (dec_rho.carrier(i), dec_sigma.carrier(j)) {
        (Carrier::Vector { block: p, v }, Carrier::Vector { block: q, v: u }) => {
            if p != q {
                return Complex64::ZERO;
            }
            let am = a.block(*p);
            let bm = b.block(*p);
            let mut uav = Complex64::ZERO;
            let mut ubv = Complex64::ZERO;
            for r in 0..u.len() {
                let mut av = Complex64::ZERO;
                let mut bv = Complex64::ZERO;
                for s in 0..v.len() {
                    av += am[(r, s)] * v[s];
                    bv += bm[(r, s)] * v[s];
                }
                uav += u[r].conj() * av;
                ubv += u[r].conj() * bv;
            }
            // τ(P a* Q b) = w_p (v* a* u)(u* b v) = w_p conj(u* a v)(u* b v)
            uav.conj() * ubv * a.algebra().blocks()[*p].weight
        }
        _ => {
            let p = &dec_rho.projections()[i];
            let q = &dec_sigma.projections()[j];
            trace_product(&(p * &a.adjoint()), &(q * b))
        }
    }
}

/// Builds the atomic correlation measure with atoms
/// `(λ_i, κ_j) ↦ τ(P_i a* Q_j b)` over all projection pairs.
pub fn build_measure(
    dec_rho: &SpectralDecomposition,
    dec_sigma: &SpectralDecomposition,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<AtomicMeasure2D> {
    check_common_algebra(dec_rho, dec_sigma, a, b)?;
    let rows = dec_rho.len();
    let cols = dec_sigma.len();
    let mut atoms = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            atoms.push(Atom2D {
                x: dec_rho.eigenvalues()[i],
                y: dec_sigma.eigenvalues()[j],
                weight: pair_weight(dec_rho, dec_sigma, i, j, a, b),
            });
        }
    }
    Ok(AtomicMeasure2D {
        atoms,
        rows,
        cols,
        context: MeasureContext {
            dec_rho: dec_rho.clone(),
            dec_sigma: dec_sigma.clone(),
            a: a.clone(),
            b: b.clone(),
        },
    })
}

/// Reconstructs `μ_ab` from the four diagonal measures
/// `μ_{a+i^k b, a+i^k b}` via `¼ Σ_k (-i)^k μ_k`. Atomwise equal to
/// [`build_measure`] up to roundoff.
pub fn polarized_measure(
    dec_rho: &SpectralDecomposition,
    dec_sigma: &SpectralDecomposition,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<AtomicMeasure2D> {
    check_common_algebra(dec_rho, dec_sigma, a, b)?;
    let i_pow = [
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(1.0, 0.0),
    ];
    let neg_i_pow = [
        Complex64::new(0.0, -1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(1.0, 0.0),
    ];
    let quarter = Complex64::new(0.25, 0.0);

    let mut combined: Option<Vec<Atom2D>> = None;
    for k in 0..4 {
        let c = &(a + &b.scaled(i_pow[k]));
        let diag = build_measure(dec_rho, dec_sigma, c, c)?;
        match &mut combined {
            None => {
                combined = Some(
                    diag.atoms
                        .iter()
                        .map(|atom| Atom2D {
                            x: atom.x,
                            y: atom.y,
                            weight: neg_i_pow[k] * quarter * atom.weight,
                        })
                        .collect(),
                );
            }
            Some(acc) => {
                for (slot, atom) in acc.iter_mut().zip(&diag.atoms) {
                    slot.weight += neg_i_pow[k] * quarter * atom.weight;
                }
            }
        }
    }
    Ok(AtomicMeasure2D {
        atoms: combined.expect("four polarization terms"),
        rows: dec_rho.len(),
        cols: dec_sigma.len(),
        context: MeasureContext {
            dec_rho: dec_rho.clone(),
            dec_sigma: dec_sigma.clone(),
            a: a.clone(),
            b: b.clone(),
        },
    })
}

/// For a diagonal measure (`σ = ρ`, `b = a`), reports the extrema that
/// witness realness and positivity of the weights. The caller compares
/// them against its tolerance.
pub fn check_positivity(m: &AtomicMeasure2D) -> Result<PositivityReport> {
    if !m.is_diagonal() {
        return Err(Error::ContextMismatch(
            "positivity check requires sigma = rho and b = a".into(),
        ));
    }
    let mut max_abs_imag: f64 = 0.0;
    let mut min_real = f64::INFINITY;
    for atom in m.atoms() {
        max_abs_imag = max_abs_imag.max(atom.weight.im.abs());
        min_real = min_real.min(atom.weight.re);
    }
    Ok(PositivityReport { max_abs_imag, min_real })
}

/// Max over atom slots of `|Re w^{ab}_ij − Re w^{ba}_ij|`; for
/// Hermitian `a`, `b` this is roundoff-small.
pub fn real_part_symmetry_defect(
    dec_rho: &SpectralDecomposition,
    dec_sigma: &SpectralDecomposition,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<f64> {
    for x in [a, b] {
        let defect = x.hermiticity_defect();
        let tol = x.algebra().tolerances().herm_for(x.max_norm());
        if defect > tol {
            return Err(Error::NotHermitian { defect, tolerance: tol });
        }
    }
    let m_ab = build_measure(dec_rho, dec_sigma, a, b)?;
    let m_ba = build_measure(dec_rho, dec_sigma, b, a)?;
    let mut defect: f64 = 0.0;
    for (wa, wb) in m_ab.atoms().iter().zip(m_ba.atoms()) {
        defect = defect.max((wa.weight.re - wb.weight.re).abs());
    }
    Ok(defect)
}

/// Trace side, measure side, and the L1 magnitude of the integral.
fn pairing_parts(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<(Complex64, Complex64, f64)> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::BetaOutOfRange(beta));
    }
    let rho_b = rho.power(beta)?;
    let rho_1b = rho.power(1.0 - beta)?;
    let trace_side = trace_product(&(&rho_b * &a.adjoint()), &(&rho_1b * b));

    let dec = rho.decomposition();
    let m = build_measure(dec, dec, a, b)?;
    let pow = |t: f64, e: f64| if t == 0.0 { 0.0 } else { t.powf(e) };
    let mut measure_side = Complex64::ZERO;
    let mut l1 = 0.0;
    for atom in m.atoms() {
        let factor = pow(atom.x, beta) * pow(atom.y, 1.0 - beta);
        measure_side += atom.weight * factor;
        l1 += atom.weight.norm() * factor;
    }
    Ok((trace_side, measure_side, l1))
}

/// Both sides of the pairing identity
/// `τ(ρ^β a* ρ^{1−β} b) = ∬ x^β y^{1−β} dμ_ab`, without comparing them.
pub fn wyd_pairing_sides(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<(Complex64, Complex64)> {
    let (trace_side, measure_side, _) = pairing_parts(rho, beta, a, b)?;
    Ok((trace_side, measure_side))
}

/// The pairing identity with its built-in cross-check: computes both
/// sides, fails if they disagree beyond the scaled linear tolerance
/// (which would indicate an eigensolver or measure bug), and returns
/// the trace-side value. Use [`wyd_pairing_sides`] to skip the check.
pub fn wyd_pairing(
    rho: &DensityOperator,
    beta: f64,
    a: &BlockOperator,
    b: &BlockOperator,
) -> Result<Complex64> {
    let (trace_side, measure_side, l1) = pairing_parts(rho, beta, a, b)?;
    let tol = rho.algebra().tolerances().lin_for(l1);
    if (trace_side - measure_side).norm() > tol {
        return Err(Error::InternalConsistency {
            what: "pairing identity",
            left: trace_side.re,
            right: measure_side.re,
            tolerance: tol,
        });
    }
    Ok(trace_side)
}
