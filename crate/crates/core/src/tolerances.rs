//! Tolerance policy for every numerical check in the crate.
//!
//! Base factors live here; scale-dependent checks multiply them by the
//! stated scale at the call site. All fields can be overridden (the CLI
//! maps flags and environment variables onto this struct).

/// Base tolerances. Scaling conventions:
///
/// * `herm`: Hermiticity defect, scaled by `max(1, ‖x‖_max)`.
/// * `lin`: linear-algebra identities (decomposition residuals, measure
///   identities), scaled per check.
/// * `norm`: trace normalisation of a density, absolute.
/// * `psd`: eigenvalue clamping window for densities, scaled by
///   `max(1, ‖ρ‖_max)`.
/// * `quantity`: uncertainty-quantity inequalities, scaled by
///   `max(1, var_a · var_b)`.
/// * `oracle`: trace-route vs measure-route gap agreement, scaled by
///   `max(1, |lhs|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub lin: f64,
    pub norm: f64,
    pub psd: f64,
    pub quantity: f64,
    pub oracle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            lin: 1e-10,
            norm: 1e-9,
            psd: 1e-12,
            quantity: 1e-9,
            oracle: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn herm_for(&self, max_norm: f64) -> f64 {
        self.herm * max_norm.max(1.0)
    }

    pub fn lin_for(&self, scale: f64) -> f64 {
        self.lin * scale.max(1.0)
    }

    pub fn psd_for(&self, max_norm: f64) -> f64 {
        self.psd * max_norm.max(1.0)
    }

    pub fn quantity_for(&self, var_product: f64) -> f64 {
        self.quantity * var_product.max(1.0)
    }

    pub fn oracle_for(&self, lhs: f64) -> f64 {
        self.oracle * lhs.abs().max(1.0)
    }
}
