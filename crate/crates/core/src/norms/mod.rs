//! Norms on weighted Bergman and tent spaces, the non-tangential maximal
//! function, and grid seminorms of symbols.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod bergman;
mod kernel;
mod seminorms;
mod tent;

pub use bergman::{bergman_norm, bergman_norm_quadrature, circle_mean_pow, moment_norm};
pub use kernel::{kernel_integral_check, KernelCheck};
pub use seminorms::{
    b_phi_seminorm, bloch_seminorm, c1_omega_star_seminorm, cap_doubling, garsia_seminorm,
    lip_seminorm, CapDoubled, CarlesonGrid, GarsiaGrid, SeminormEstimate, SupGrid,
    TRUNCATION_TOLERANCE,
};
pub use tent::{
    calderon_check, maximal_function, maximal_function_norm, stolz_half_angle, tent_inner,
    tent_norm, tent_norm_monte_carlo, CalderonCheck, MonteCarloEstimate,
};

/// Aperture of the Stolz regions `Γ(ζ) = {z : |z − ζ| < 2(|ζ| − |z|)}`.
pub const STOLZ_APERTURE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Starting number of angular samples (even).
    pub n_theta: usize,
    /// Geometrically graded Gauss panels on `[0, 1)`.
    pub radial_panels: usize,
    /// Panel ratio: breakpoints at `1 − grading^k`.
    pub grading: f64,
    /// Gauss order per radial panel.
    pub gauss_order: usize,
    /// Gauss order of the inner radial integral over a Stolz region.
    pub inner_order: usize,
    pub rel_tol: f64,
    /// Upper bound on angular samples per circle.
    pub max_theta: usize,
    /// Boundary samples per side when maximizing over a Stolz region.
    pub max_samples: usize,
    /// Always [`STOLZ_APERTURE`].
    pub stolz_aperture: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            n_theta: 64,
            radial_panels: 40,
            grading: 0.5,
            gauss_order: 16,
            inner_order: 32,
            rel_tol: 1e-10,
            max_theta: 1 << 14,
            max_samples: 128,
            stolz_aperture: STOLZ_APERTURE,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.n_theta < 2 || !self.n_theta.is_multiple_of(2) {
            return bad("n_theta must be even and at least 2");
        }
        if !(self.rel_tol > 0.0) {
            return bad("rel_tol must be positive");
        }
        if !(self.grading > 0.0 && self.grading < 1.0) {
            return bad("grading must lie in (0, 1)");
        }
        if self.radial_panels == 0 || self.gauss_order == 0 || self.inner_order == 0 {
            return bad("panel counts and orders must be positive");
        }
        if self.max_theta < self.n_theta || self.max_samples < 4 {
            return bad("max_theta must be ≥ n_theta and max_samples ≥ 4");
        }
        if self.stolz_aperture != STOLZ_APERTURE {
            return bad("the Stolz aperture is fixed at 2");
        }
        Ok(())
    }

    /// The finer level used for error estimates.
    pub fn refined(&self) -> Self {
        QuadratureConfig {
            radial_panels: self.radial_panels + 8,
            gauss_order: self.gauss_order + 8,
            inner_order: self.inner_order * 2,
            n_theta: self.n_theta * 2,
            max_theta: self.max_theta * 2,
            max_samples: self.max_samples * 2,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// The norm itself (not its `p`-th power).
    pub value: f64,
    /// Difference between two refinement levels, in the same units.
    pub err_est: f64,
    /// False when an adaptive stage hit its budget or the two levels
    /// disagree beyond `rel_tol`.
    pub converged: bool,
    pub config: QuadratureConfig,
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p must be positive and finite, got {p}")))
    }
}

/// Combines two levels into an estimate.
pub(crate) fn two_level(coarse: f64, fine: f64, ok: bool, cfg: &QuadratureConfig) -> NormEstimate {
    let err_est = (fine - coarse).abs();
    let tol = cfg.rel_tol.max(1e-13) * fine.abs().max(f64::MIN_POSITIVE);
    NormEstimate {
        value: fine,
        err_est,
        converged: ok && (err_est <= tol.max(1e3 * f64::EPSILON * fine.abs())),
        config: *cfg,
    }
}
