use rayon::prelude::*;

use crate::coeff::Complex64;
use crate::error::Result;
use crate::norms::{check_p, two_level, NormEstimate, QuadratureConfig};
use crate::quadrature::{graded_radial_rule, pairwise_sum, periodic_mean};
use crate::taylor::TaylorSeries;
use crate::weights::RadialWeightDescriptor;

/// `‖f‖_{A²_ω} = (Σ |c_n|² m_n)^{1/2}` with the weight's moments.
pub fn moment_norm(f: &TaylorSeries, w: &RadialWeightDescriptor) -> Result<f64> {
    let m = w.moments(f.coeffs().len().saturating_sub(1))?;
    let terms: Vec<f64> = f
        .coeffs()
        .iter()
        .zip(&m)
        .map(|(c, mk)| c.norm_sqr() * mk)
        .collect();
    Ok(pairwise_sum(&terms).sqrt())
}

/// `(1/2π)∫|f(re^{iθ})|^p dθ` by the doubling trapezoid rule.
///
/// For even integer `p` the start level already exceeds `p·deg + 2`, where
/// the rule is exact.
pub fn circle_mean_pow(f: &TaylorSeries, r: f64, p: f64, cfg: &QuadratureConfig) -> (f64, bool) {
    let deg = f.degree();
    let mut n0 = cfg.n_theta;
    if p.fract() == 0.0 && (p as usize).is_multiple_of(2) {
        let need = (p as usize) * deg + 3;
        while n0 < need {
            n0 *= 2;
        }
    }
    let (m, _, ok) = periodic_mean(
        |t| f.evaluate(&Complex64::from_polar(r, t)).norm().powf(p),
        n0,
        cfg.rel_tol,
        cfg.max_theta.max(n0 * 2),
    );
    (m, ok)
}

/// `‖f‖^p` by polar quadrature at one configuration.
fn quadrature_pth_power(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<(f64, bool)> {
    let nodes = graded_radial_rule(cfg.radial_panels, cfg.grading, cfg.gauss_order);
    let parts = nodes
        .par_iter()
        .map(|&(r, wt)| {
            let om = w.omega(r)?;
            if om == 0.0 {
                return Ok((0.0, true));
            }
            let (m, ok) = circle_mean_pow(f, r, p, cfg);
            Ok((wt * 2.0 * r * om * m, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let vals: Vec<f64> = parts.iter().map(|x| x.0).collect();
    Ok((pairwise_sum(&vals), parts.iter().all(|x| x.1)))
}

/// `‖f‖_{A^p_ω}` by polar quadrature, whatever `p` is.
pub fn bergman_norm_quadrature(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<NormEstimate> {
    check_p(p)?;
    cfg.validate()?;
    let (coarse, ok1) = quadrature_pth_power(f, p, w, cfg)?;
    let (fine, ok2) = quadrature_pth_power(f, p, w, &cfg.refined())?;
    Ok(two_level(coarse.powf(1.0 / p), fine.powf(1.0 / p), ok1 && ok2, cfg))
}

/// `‖f‖_{A^p_ω}`; exact moment sum for `p = 2`, polar quadrature otherwise.
pub fn bergman_norm(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<NormEstimate> {
    check_p(p)?;
    cfg.validate()?;
    if p == 2.0 {
        return Ok(NormEstimate {
            value: moment_norm(f, w)?,
            err_est: 0.0,
            converged: true,
            config: *cfg,
        });
    }
    bergman_norm_quadrature(f, p, w, cfg)
}
