//! Tent-space norms over the Stolz regions `Γ(ζ) = {z : |z−ζ| < 2(|ζ|−|z|)}`.
//!
//! In polar coordinates with `ζ = ρe^{iψ}`, `Γ(ζ)` contains the full circle
//! `|z| = s` for `s < ρ/3`, and for `ρ/3 ≤ s < ρ` the arc `|arg z − ψ| <
//! T(s)` with `cos T = (s² + ρ² − 4(ρ−s)²)/(2sρ)`. Arc integrals of `|f|²`
//! are exact through the Fourier coefficients `a_m(s) = Σ_k c_{k+m} c̄_k
//! s^{2k+m}`, which leaves a smooth radial integral; the `√` endpoint at
//! `s = ρ/3` is removed by `s = ρ/3 + (2ρ/3)u²`.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Complex64;
use crate::error::{Error, Result};
use crate::norms::{bergman_norm, check_p, two_level, NormEstimate, QuadratureConfig};
use crate::quadrature::{gauss_rule, graded_radial_rule, pairwise_sum, periodic_mean};
use crate::taylor::TaylorSeries;
use crate::weights::RadialWeightDescriptor;

use std::f64::consts::PI;

/// Half-opening `T(s)` of `Γ(ρ)` on the circle `|z| = s`.
pub fn stolz_half_angle(s: f64, rho: f64) -> f64 {
    if s * 3.0 <= rho {
        PI
    } else if s >= rho {
        0.0
    } else {
        let d = rho - s;
        ((s * s + rho * rho - 4.0 * d * d) / (2.0 * s * rho)).clamp(-1.0, 1.0).acos()
    }
}

/// `a_m(s)`, `m = 0..=deg`, so that `|f(se^{iθ})|² = a₀ + 2 Σ_{m≥1} Re(a_m e^{imθ})`.
pub(crate) fn correlations(c: &[Complex64], s: f64) -> Vec<Complex64> {
    let d = c.len();
    let mut pw = Vec::with_capacity(2 * d);
    let mut x = 1.0;
    for _ in 0..2 * d {
        pw.push(x);
        x *= s;
    }
    (0..d)
        .map(|m| {
            (0..d - m)
                .map(|k| c[k + m] * c[k].conj() * pw[2 * k + m])
                .sum()
        })
        .collect()
}

/// `∫_{c−T}^{c+T} |f(se^{iθ})|² dθ` from the correlations at radius `s`.
pub(crate) fn arc_integral(a: &[Complex64], center: f64, half: f64) -> f64 {
    let mut v = 2.0 * half * a[0].re;
    for (m, am) in a.iter().enumerate().skip(1) {
        let m = m as f64;
        v += (am * Complex64::from_polar(1.0, m * center)).re * 4.0 * (m * half).sin() / m;
    }
    v
}

/// `∫_{Γ(ρ e^{iψ})}|f|² dA` as the trig polynomial
/// `full + Re(arc₀) + Σ_{m≥1} Re(arc_m e^{imψ})`.
struct InnerTent {
    full: f64,
    arc: Vec<Complex64>,
}

impl InnerTent {
    fn new(c: &[Complex64], rho: f64, order: usize) -> Self {
        let third = rho / 3.0;
        let mut full = 0.0;
        let mut pw = third * third;
        for (k, ck) in c.iter().enumerate() {
            full += ck.norm_sqr() * pw / (k + 1) as f64;
            pw *= third * third;
        }
        let mut arc = vec![Complex64::new(0.0, 0.0); c.len()];
        if rho > 0.0 {
            let rule = gauss_rule(order);
            for (u, wu) in rule.mapped(0.0, 1.0) {
                let s = third + 2.0 * third * u * u;
                let jac = 4.0 * third * u;
                let t = stolz_half_angle(s, rho);
                let a = correlations(c, s);
                let base = wu * jac * s / PI;
                arc[0] += a[0] * (base * 2.0 * t);
                for m in 1..a.len() {
                    arc[m] += a[m] * (base * 4.0 * (m as f64 * t).sin() / m as f64);
                }
            }
        }
        InnerTent { full, arc }
    }

    fn mean(&self) -> f64 {
        self.full + self.arc[0].re
    }

    fn at(&self, psi: f64) -> f64 {
        let mut v = self.mean();
        for (m, a) in self.arc.iter().enumerate().skip(1) {
            v += (a * Complex64::from_polar(1.0, m as f64 * psi)).re;
        }
        v
    }
}

/// `∫_{Γ(ζ)} |f|² dA` for a single vertex `ζ ∈ 𝔻`.
pub fn tent_inner(f: &TaylorSeries, zeta: Complex64, cfg: &QuadratureConfig) -> f64 {
    let (rho, psi) = zeta.to_polar();
    InnerTent::new(f.coeffs(), rho, cfg.inner_order).at(psi)
}

fn tent_pth_power(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<(f64, bool)> {
    let nodes = graded_radial_rule(cfg.radial_panels, cfg.grading, cfg.gauss_order);
    let parts = nodes
        .par_iter()
        .map(|&(rho, wt)| {
            let om = w.omega(rho)?;
            if om == 0.0 {
                return Ok((0.0, true));
            }
            let inner = InnerTent::new(f.coeffs(), rho, cfg.inner_order);
            let (m, ok) = if p == 2.0 {
                (inner.mean(), true)
            } else {
                let (m, _, ok) = periodic_mean(
                    |psi| inner.at(psi).max(0.0).powf(p / 2.0),
                    cfg.n_theta,
                    cfg.rel_tol,
                    cfg.max_theta,
                );
                (m, ok)
            };
            Ok((wt * 2.0 * rho * om * m, ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let vals: Vec<f64> = parts.iter().map(|x| x.0).collect();
    Ok((pairwise_sum(&vals), parts.iter().all(|x| x.1)))
}

/// `‖f‖_{AT^p_2(ω)} = (∫_𝔻 (∫_{Γ(ζ)}|f|² dA)^{p/2} ω(ζ) dA(ζ))^{1/p}`.
pub fn tent_norm(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<NormEstimate> {
    check_p(p)?;
    cfg.validate()?;
    let (coarse, ok1) = tent_pth_power(f, p, w, cfg)?;
    let (fine, ok2) = tent_pth_power(f, p, w, &cfg.refined())?;
    Ok(two_level(coarse.powf(1.0 / p), fine.powf(1.0 / p), ok1 && ok2, cfg))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    /// Estimate of `‖f‖²_{AT²_2(ω)}`.
    pub mean: f64,
    /// Standard error of `mean`.
    pub sigma: f64,
    pub samples: u64,
}

const MC_CHUNKS: u64 = 64;

/// Unbiased Monte-Carlo estimate of `‖f‖²_{AT²_2(ω)}`: `(z, ζ)` uniform on
/// `𝔻²` and the integrand `𝟙_{z ∈ Γ(ζ)} |f(z)|² ω(|ζ|)`.
///
/// The sample stream is split into fixed chunks, so the result does not
/// depend on the thread count.
pub fn tent_norm_monte_carlo(
    f: &TaylorSeries,
    w: &RadialWeightDescriptor,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let per = samples.div_ceil(MC_CHUNKS);
    let sums = (0..MC_CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let n = per.min(samples.saturating_sub(chunk * per));
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let zeta = Complex64::from_polar(rng.random::<f64>().sqrt(), PI * 2.0 * rng.random::<f64>());
                let z = Complex64::from_polar(rng.random::<f64>().sqrt(), PI * 2.0 * rng.random::<f64>());
                let x = if (z - zeta).norm() < 2.0 * (zeta.norm() - z.norm()) {
                    f.evaluate(&z).norm_sqr() * w.omega(zeta.norm())?
                } else {
                    0.0
                };
                s1 += x;
                s2 += x * x;
            }
            Ok((s1, s2, n))
        })
        .collect::<Result<Vec<_>>>()?;
    let n: u64 = sums.iter().map(|s| s.2).sum();
    let s1 = pairwise_sum(&sums.iter().map(|s| s.0).collect::<Vec<_>>());
    let s2 = pairwise_sum(&sums.iter().map(|s| s.1).collect::<Vec<_>>());
    let nf = n as f64;
    let mean = s1 / nf;
    let var = (s2 / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    Ok(MonteCarloEstimate {
        mean,
        sigma: (var / nf).sqrt(),
        samples: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalderonCheck {
    /// `‖f‖^p_{A^p_ω}`.
    pub lhs: f64,
    /// `‖f'‖^p_{AT^p_2(ω)} + |f(0)|^p`.
    pub rhs: f64,
    pub ratio: f64,
    pub lhs_err: f64,
    pub rhs_err: f64,
    pub converged: bool,
}

pub fn calderon_check(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<CalderonCheck> {
    let a = bergman_norm(f, p, w, cfg)?;
    let t = tent_norm(&f.differentiate(), p, w, cfg)?;
    let pow_err = |e: &NormEstimate| p * e.value.powf(p - 1.0) * e.err_est;
    let lhs = a.value.powf(p);
    let rhs = t.value.powf(p) + f.value_at_zero().norm().powf(p);
    Ok(CalderonCheck {
        lhs,
        rhs,
        ratio: lhs / rhs,
        lhs_err: pow_err(&a),
        rhs_err: if t.value > 0.0 { pow_err(&t) } else { 0.0 },
        converged: a.converged && t.converged,
    })
}

fn golden_max(mut g: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `ℳf(ζ) = sup_{Γ(ζ)} |f|`, attained on the boundary of `Γ(ζ)` since `|f|`
/// is subharmonic. The boundary is sampled and the best sample refined by
/// golden-section search, so the value is a lower bound of the sup.
pub fn maximal_function(f: &TaylorSeries, zeta: Complex64, samples: usize) -> f64 {
    let (rho, psi) = zeta.to_polar();
    if rho == 0.0 {
        return 0.0;
    }
    let third = rho / 3.0;
    let mut best = 0.0f64;
    for sign in [1.0, -1.0] {
        let val = |u: f64| {
            let s = third + 2.0 * third * u;
            let t = stolz_half_angle(s, rho);
            f.evaluate(&Complex64::from_polar(s, psi + sign * t)).norm()
        };
        let vals: Vec<f64> = (0..=samples).map(|i| val(i as f64 / samples as f64)).collect();
        let (i, &v) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("samples");
        best = best.max(v);
        let lo = i.saturating_sub(1) as f64 / samples as f64;
        let hi = (i + 1).min(samples) as f64 / samples as f64;
        best = best.max(golden_max(val, lo, hi, 48).1);
    }
    best
}

fn maximal_pth_power(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let nodes = graded_radial_rule(cfg.radial_panels, cfg.grading, cfg.gauss_order);
    let n = cfg.n_theta;
    let parts = nodes
        .par_iter()
        .map(|&(rho, wt)| {
            let om = w.omega(rho)?;
            if om == 0.0 {
                return Ok(0.0);
            }
            let vals: Vec<f64> = (0..n)
                .map(|k| {
                    let z = Complex64::from_polar(rho, 2.0 * PI * k as f64 / n as f64);
                    maximal_function(f, z, cfg.max_samples).powf(p)
                })
                .collect();
            Ok(wt * 2.0 * rho * om * pairwise_sum(&vals) / n as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&parts))
}

/// `‖ℳf‖_{L^p_ω}` by polar quadrature over `ζ`.
pub fn maximal_function_norm(
    f: &TaylorSeries,
    p: f64,
    w: &RadialWeightDescriptor,
    cfg: &QuadratureConfig,
) -> Result<NormEstimate> {
    check_p(p)?;
    cfg.validate()?;
    let coarse = maximal_pth_power(f, p, w, cfg)?;
    let fine = maximal_pth_power(f, p, w, &cfg.refined())?;
    Ok(two_level(coarse.powf(1.0 / p), fine.powf(1.0 / p), true, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taylor::Series;

    fn light() -> QuadratureConfig {
        QuadratureConfig {
            radial_panels: 16,
            gauss_order: 10,
            inner_order: 24,
            n_theta: 32,
            max_samples: 32,
            ..Default::default()
        }
    }

    fn in_region(z: Complex64, zeta: Complex64) -> bool {
        (z - zeta).norm() < 2.0 * (zeta.norm() - z.norm())
    }

    #[test]
    fn half_angle_matches_region_test() {
        let rho = 0.8;
        let zeta = Complex64::new(rho, 0.0);
        for i in 1..200 {
            let s = rho * i as f64 / 200.0;
            let t = stolz_half_angle(s, rho);
            if t < PI {
                assert!(in_region(Complex64::from_polar(s, 0.999 * t), zeta));
                assert!(!in_region(Complex64::from_polar(s, 1.001 * t + 1e-9), zeta));
            } else {
                assert!(in_region(Complex64::from_polar(s, PI), zeta));
            }
        }
    }

    #[test]
    fn inner_integral_against_brute_force() {
        let f = Series::polynomial(vec![
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.3, 0.2),
            Complex64::new(0.7, 0.0),
            Complex64::new(0.0, -1.1),
        ]);
        let zeta = Complex64::from_polar(0.7, 0.9);
        let exact = tent_inner(&f, zeta, &QuadratureConfig::default());
        // midpoint rule on a fine polar grid with the membership test
        let (ns, nt) = (1200, 2400);
        let mut acc = 0.0;
        for i in 0..ns {
            let s = 0.7 * (i as f64 + 0.5) / ns as f64;
            for j in 0..nt {
                let t = 2.0 * PI * (j as f64 + 0.5) / nt as f64;
                let z = Complex64::from_polar(s, t);
                if in_region(z, zeta) {
                    acc += f.evaluate(&z).norm_sqr() * s;
                }
            }
        }
        let brute = acc * (0.7 / ns as f64) * (2.0 * PI / nt as f64) / PI;
        assert!(((exact - brute) / exact).abs() < 2e-3, "{exact} vs {brute}");
    }

    #[test]
    fn tent_norm_zero_and_homogeneity() {
        let w = RadialWeightDescriptor::standard(0.0).unwrap();
        let cfg = light();
        assert_eq!(tent_norm(&TaylorSeries::zero(), 2.0, &w, &cfg).unwrap().value, 0.0);
        let f = Series::polynomial(vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.25, 0.0)]);
        for p in [1.0, 2.0, 3.0] {
            let a = tent_norm(&f, p, &w, &cfg).unwrap().value;
            let b = tent_norm(&f.scale(&Complex64::new(3.0, 0.0)), p, &w, &cfg).unwrap().value;
            assert!((b - 3.0 * a).abs() < 1e-12 * b, "p = {p}");
        }
    }

    #[test]
    fn tent_norm_of_one_against_monte_carlo() {
        let w = RadialWeightDescriptor::standard(0.0).unwrap();
        let q = tent_norm(&TaylorSeries::one(), 2.0, &w, &QuadratureConfig::default()).unwrap();
        let mc = tent_norm_monte_carlo(&TaylorSeries::one(), &w, 2_000_000, 11).unwrap();
        let v = q.value * q.value;
        assert!((v - mc.mean).abs() < 3.0 * mc.sigma, "{v} vs {} ± {}", mc.mean, mc.sigma);
        assert!(q.err_est < 1e-10);
    }

    #[test]
    fn calderon_for_constants() {
        let w = RadialWeightDescriptor::standard(1.0).unwrap();
        let c = Series::constant(Complex64::new(2.0, 0.0));
        let r = calderon_check(&c, 3.0, &w, &light()).unwrap();
        assert!((r.rhs - 8.0).abs() < 1e-12);
        assert!((r.ratio - 1.0).abs() < 1e-8);
    }

    #[test]
    fn maximal_function_of_z_is_modulus() {
        let z = Series::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        for zeta in [Complex64::new(0.3, 0.4), Complex64::from_polar(0.95, 2.0)] {
            assert!((maximal_function(&z, zeta, 32) - zeta.norm()).abs() < 1e-12);
        }
        let c = Series::constant(Complex64::new(0.0, -2.0));
        assert!((maximal_function(&c, Complex64::new(0.5, 0.0), 16) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn maximal_norm_of_z_against_monte_carlo() {
        let z = Series::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let w = RadialWeightDescriptor::standard(0.0).unwrap();
        let q = maximal_function_norm(&z, 2.0, &w, &light()).unwrap().value;
        // ζ uniform on the disc: E[ℳz(ζ)²] = E|ζ|²
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 400_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| {
                let zeta = Complex64::from_polar(rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>());
                maximal_function(&z, zeta, 8).powi(2)
            })
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
        assert!((q * q - mean).abs() < 3.0 * sd / (n as f64).sqrt() + 1e-12);
        assert!((q * q - 0.5).abs() < 1e-10);
    }
}
