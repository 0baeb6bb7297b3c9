//! Numerical model of finite-dimensional semifinite trace algebras —
//! block-diagonal complex matrices under a weighted trace — together
//! with the spectral-measure machinery needed to compute and
//! cross-check Wigner-Yanase-Dyson skew information uncertainty
//! quantities.
//!
//! The crate is organised around four layers:
//!
//! * [`algebra`]: the algebra `(M, τ)`, its elements, and the weighted
//!   trace.
//! * [`spectral`]: Hermitian eigendecomposition, functional calculus,
//!   fractional powers, and validated density operators.
//! * [`measure`]: atomic correlation measures `μ_ab` on the plane,
//!   their polarization, positivity and symmetry identities, and the
//!   pairing identity `τ(ρ^β a* ρ^{1−β} b) = ∬ x^β y^{1−β} dμ_ab`.
//! * [`uncertainty`]: variances, covariances, β-correlations, skew
//!   information, the Robertson–Schrödinger bound, and the gap of the
//!   variance–skew-information inequality computed both from trace
//!   formulas and as `¼ ∫ K dμ` against a positive 4D product measure.
//!
//! Everything is pure and immutable after construction; all types are
//! safe to share across threads.

pub mod algebra;
pub mod error;
pub mod measure;
pub mod spectral;
pub mod tolerances;
pub mod uncertainty;

pub use algebra::{commutator, trace_product, Block, BlockOperator, TraceAlgebra};
pub use error::{Error, Result};
pub use measure::{
    build_measure, check_positivity, polarized_measure, real_part_symmetry_defect, wyd_pairing,
    wyd_pairing_sides, Atom2D, AtomicMeasure2D, IntervalSet, PositivityReport,
};
pub use num_complex::Complex64;
pub use spectral::{DensityOperator, SpectralDecomposition};
pub use tolerances::Tolerances;
pub use uncertainty::{
    beta_correlation, beta_information, center, covariance, g_curve, gap_from_product_atoms,
    gap_via_measure, gap_via_measure_unchecked, kernel, product_measure, schrodinger_check,
    uncertainty_gap, variance, Atom4D, SchrodingerReport, UncertaintyReport,
};
