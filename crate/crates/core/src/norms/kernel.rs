use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Complex64;
use crate::error::{Error, Result};
use crate::norms::QuadratureConfig;
use crate::quadrature::{graded_radial_rule, pairwise_sum, periodic_mean};
use crate::weights::{beta_exponent, default_grid, RadialWeightDescriptor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCheck {
    /// `∫_𝔻 ω(z)/|1 − ξ̄z|^{η+1} dA(z)`.
    pub integral: f64,
    /// `ω̂(|ξ|)/(1 − |ξ|)^η`.
    pub model: f64,
    pub ratio: f64,
    /// `β` certified for `ω`; the check requires `η > β`.
    pub beta: f64,
    pub err_est: f64,
    pub converged: bool,
}

/// `(1/2π)∫|1 − ρe^{iθ}|^{−(η+1)} dθ`; the integrand depends on `|ξ|` only,
/// so the angular refinement near `arg ξ` becomes doubling of a trapezoid
/// rule centred on the peak.
fn circle_mean(rho: f64, eta: f64, cfg: &QuadratureConfig) -> (f64, bool) {
    let (m, _, ok) = periodic_mean(
        |t| (1.0 - Complex64::from_polar(rho, t)).norm().powf(-(eta + 1.0)),
        cfg.n_theta,
        cfg.rel_tol,
        cfg.max_theta,
    );
    (m, ok)
}

fn kernel_integral(xi: f64, eta: f64, w: &RadialWeightDescriptor, cfg: &QuadratureConfig) -> Result<(f64, bool)> {
    let nodes = graded_radial_rule(cfg.radial_panels, cfg.grading, cfg.gauss_order);
    let parts = nodes
        .par_iter()
        .map(|&(r, wt)| {
            let om = w.omega(r)?;
            if om == 0.0 {
                return Ok((0.0, true));
            }
            let (m, ok) = circle_mean(xi * r, eta, cfg);
            Ok((wt * 2.0 * r * om * m, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let vals: Vec<f64> = parts.iter().map(|p| p.0).collect();
    Ok((pairwise_sum(&vals), parts.iter().all(|p| p.1)))
}

/// Compares the kernel integral with its model `ω̂(|ξ|)/(1−|ξ|)^η`.
pub fn kernel_integral_check(
    xi: Complex64,
    eta: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<KernelCheck> {
    cfg.validate()?;
    let x = xi.norm();
    if !(x < 1.0) {
        return Err(Error::Domain(format!("|ξ| must be < 1, got {x}")));
    }
    let beta = beta_exponent(w, &default_grid())?.beta;
    if !(eta > beta) {
        return Err(Error::InvalidParameter(format!(
            "η = {eta} must exceed the certified β = {beta}"
        )));
    }
    let (coarse, ok1) = kernel_integral(x, eta, w, cfg)?;
    let (integral, ok2) = kernel_integral(x, eta, w, &cfg.refined())?;
    let err_est = (integral - coarse).abs();
    let model = w.omega_hat(x)? / (1.0 - x).powf(eta);
    Ok(KernelCheck {
        integral,
        model,
        ratio: integral / model,
        beta,
        err_est,
        converged: ok1 && ok2 && err_est <= 1e-8 * integral.abs(),
    })
}
