//! Grid seminorms of symbols. Every value is the largest sample found, i.e.
//! a lower bound for the true supremum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Complex64;
use crate::error::{Error, Result};
use crate::norms::moment_norm;
use crate::norms::tent::{arc_integral, correlations};
use crate::quadrature::{adaptive_gk, graded_radial_rule, pairwise_sum};
use crate::taylor::TaylorSeries;
use crate::weights::{classify_doubling, default_grid, RadialWeightDescriptor, Verdict};

use std::f64::consts::PI;

/// Relative change between caps `N` and `2N` beyond which a value is
/// flagged as truncation-limited.
pub const TRUNCATION_TOLERANCE: f64 = 0.05;

/// Polar sampling grid for suprema over the disc: `r = 0` plus radii
/// geometric in `1 − r` from `1` down to `min_gap`, times `n_theta` angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupGrid {
    pub n_radii: usize,
    pub n_theta: usize,
    pub min_gap: f64,
    /// Step halvings of the local pattern search around the arg-max.
    pub refine_steps: usize,
}

impl Default for SupGrid {
    fn default() -> Self {
        SupGrid {
            n_radii: 96,
            n_theta: 256,
            min_gap: 1e-5,
            refine_steps: 40,
        }
    }
}

impl SupGrid {
    fn validate(&self) -> Result<()> {
        if self.n_radii < 2 || self.n_theta == 0 || !(self.min_gap > 0.0 && self.min_gap < 1.0) {
            return Err(Error::InvalidParameter(
                "sup grid needs n_radii ≥ 2, n_theta ≥ 1 and min_gap in (0, 1)".into(),
            ));
        }
        Ok(())
    }

    fn radii(&self) -> Vec<f64> {
        let n = self.n_radii - 1;
        (0..=n)
            .map(|i| 1.0 - self.min_gap.powf(i as f64 / n as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeminormEstimate {
    pub value: f64,
    /// Point (or square centre) where `value` was attained.
    pub witness: Complex64,
    /// Always true: the value is a sampled sup.
    pub lower_bound: bool,
    pub label: String,
}

/// Sup of `h` over the grid, then a pattern search in `(log(1−r), θ)`.
fn grid_sup(h: impl Fn(Complex64) -> f64 + Sync, grid: &SupGrid, label: &str) -> Result<SeminormEstimate> {
    grid.validate()?;
    let radii = grid.radii();
    let at = |u: f64, t: f64| {
        let r = 1.0 - u.exp();
        if !(0.0..1.0).contains(&r) {
            return f64::NEG_INFINITY;
        }
        let v = h(Complex64::from_polar(r, t));
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let rows: Vec<(f64, usize, usize)> = radii
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            let u = (1.0 - r).ln();
            (0..grid.n_theta)
                .map(|j| (at(u, 2.0 * PI * j as f64 / grid.n_theta as f64), i, j))
                .fold((f64::NEG_INFINITY, i, 0), |a, b| if b.0 > a.0 { b } else { a })
        })
        .collect();
    // first maximum in grid order, independent of scheduling
    let (mut best, i, j) = rows
        .into_iter()
        .fold((f64::NEG_INFINITY, 0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let mut u = (1.0 - radii[i]).ln();
    let mut t = 2.0 * PI * j as f64 / grid.n_theta as f64;
    let mut du = -grid.min_gap.ln() / (grid.n_radii - 1) as f64;
    let mut dt = 2.0 * PI / grid.n_theta as f64;
    let mut halvings = 0;
    while halvings < grid.refine_steps {
        let mut moved = false;
        for (a, b) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let (u2, t2) = (u + a * du, t + b * dt);
            let v = at(u2, t2);
            if v > best {
                best = v;
                u = u2;
                t = t2;
                moved = true;
            }
        }
        if !moved {
            du *= 0.5;
            dt *= 0.5;
            halvings += 1;
        }
    }
    Ok(SeminormEstimate {
        value: best.max(0.0),
        witness: Complex64::from_polar(1.0 - u.exp(), t),
        lower_bound: true,
        label: label.to_string(),
    })
}

/// `sup (1−|z|²)|g'(z)|`.
pub fn bloch_seminorm(g: &TaylorSeries, grid: &SupGrid) -> Result<SeminormEstimate> {
    let d = g.differentiate();
    grid_sup(|z| (1.0 - z.norm_sqr()) * d.evaluate(&z).norm(), grid, "bloch (grid lower bound)")
}

/// `sup (1−|z|)^{1−s}|g'(z)|`, `0 < s < 1`.
pub fn lip_seminorm(g: &TaylorSeries, s: f64, grid: &SupGrid) -> Result<SeminormEstimate> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!("Lipschitz order must lie in (0, 1), got {s}")));
    }
    let d = g.differentiate();
    grid_sup(
        |z| (1.0 - z.norm()).powf(1.0 - s) * d.evaluate(&z).norm(),
        grid,
        &format!("lip_{s} (grid lower bound)"),
    )
}

/// `ρ(g, φ) = sup |g'(z)|/(1 + φ'(|z|))` for weights `ω = e^{−φ}`.
pub fn b_phi_seminorm(g: &TaylorSeries, w: &RadialWeightDescriptor, grid: &SupGrid) -> Result<SeminormEstimate> {
    w.phi_prime(0.0)?;
    let d = g.differentiate();
    grid_sup(
        |z| match w.phi_prime(z.norm()) {
            Ok(p) => d.evaluate(&z).norm() / (1.0 + p),
            Err(_) => f64::NAN,
        },
        grid,
        &format!("b_phi for {} (grid lower bound)", w.label()),
    )
}

/// Points `a` for the Garsia seminorm, and the cap of `g ∘ φ_a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GarsiaGrid {
    pub moduli: Vec<f64>,
    pub angles: usize,
    pub cap: usize,
}

impl Default for GarsiaGrid {
    fn default() -> Self {
        GarsiaGrid {
            moduli: vec![0.0, 0.25, 0.5, 0.75, 0.9],
            angles: 16,
            cap: 256,
        }
    }
}

/// `φ_a(z) = (a − z)/(1 − āz)` truncated at `cap`.
fn disc_automorphism(a: Complex64, cap: usize) -> TaylorSeries {
    let mut c = vec![Complex64::new(0.0, 0.0); cap + 1];
    c[0] = a;
    let k = 1.0 - a.norm_sqr();
    let mut p = Complex64::new(1.0, 0.0);
    for ck in c.iter_mut().skip(1) {
        *ck = -k * p;
        p *= a.conj();
    }
    TaylorSeries::truncated(c)
}

/// `sup_a ‖g∘φ_a − g(a)‖_{A²}` over the grid (unweighted Bergman norm).
pub fn garsia_seminorm(g: &TaylorSeries, grid: &GarsiaGrid) -> Result<SeminormEstimate> {
    if grid.moduli.iter().any(|m| !(0.0..1.0).contains(m)) || grid.angles == 0 {
        return Err(Error::InvalidParameter("Garsia grid needs |a| < 1 and at least one angle".into()));
    }
    let w = RadialWeightDescriptor::standard(0.0)?;
    let points: Vec<Complex64> = grid
        .moduli
        .iter()
        .flat_map(|&m| {
            let n = if m == 0.0 { 1 } else { grid.angles };
            (0..n).map(move |j| Complex64::from_polar(m, 2.0 * PI * j as f64 / n as f64))
        })
        .collect();
    let vals = points
        .par_iter()
        .map(|&a| {
            let h = g.compose(&disc_automorphism(a, grid.cap), grid.cap)?;
            let h = h.sub(&TaylorSeries::constant(g.evaluate(&a)));
            moment_norm(&h, &w)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (k, v) = vals
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    Ok(SeminormEstimate {
        value: v,
        witness: points[k],
        lower_bound: true,
        label: "garsia (grid lower bound)".into(),
    })
}

/// Dyadic Carleson squares `S = {1−h ≤ |z| < 1, |arg z − θ_c| ≤ πh}` with
/// `h = 2^{−j}` and `2^{j+extra_centers_log2}` centres per level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonGrid {
    pub max_level: u32,
    pub extra_centers_log2: u32,
    pub radial_panels: usize,
    pub gauss_order: usize,
}

impl Default for CarlesonGrid {
    fn default() -> Self {
        CarlesonGrid {
            max_level: 12,
            extra_centers_log2: 3,
            radial_panels: 24,
            gauss_order: 12,
        }
    }
}

/// `sup_S ∫_S |g'|² ω★ dA / ω(S)` over dyadic Carleson squares.
///
/// Requires `ω` to pass the upper doubling test.
pub fn c1_omega_star_seminorm(
    g: &TaylorSeries,
    w: &RadialWeightDescriptor,
    grid: &CarlesonGrid,
) -> Result<SeminormEstimate> {
    let report = classify_doubling(w, &default_grid())?;
    if report.in_upper_doubling.verdict != Verdict::Pass {
        let r = report.in_upper_doubling.witness_r.unwrap_or(f64::NAN);
        return Err(Error::NotUpperDoubling {
            witness_r: r,
            ratio: report.in_upper_doubling.observed_sup,
        });
    }
    let d = g.differentiate();
    let rule = graded_radial_rule(grid.radial_panels, 0.5, grid.gauss_order);
    let mut best = (f64::NEG_INFINITY, Complex64::new(0.0, 0.0));
    for j in 0..=grid.max_level {
        let h = 0.5f64.powi(j as i32);
        let half = PI * h;
        // ω(S) = (1/π)·2πh·∫_{1−h}^1 r ω(r) dr
        let mass = adaptive_gk(
            |r| r * w.omega(r).unwrap_or(f64::NAN),
            1.0 - h,
            1.0,
            1e-10,
            0.0,
            4000,
        );
        if !mass.converged {
            return Err(Error::Quadrature(format!("ω(S) at side {h}")));
        }
        let den = 2.0 * h * mass.value;
        // radial nodes on [1−h, 1], graded towards 1; on the whole disc also
        // towards 0, where ω★ has a logarithmic singularity
        let mut mapped: Vec<(f64, f64)> = rule.iter().map(|&(t, wt)| (1.0 - h * (1.0 - t), wt * h)).collect();
        if j == 0 {
            mapped.retain(|&(r, _)| r >= 0.5);
            mapped.extend(rule.iter().map(|&(t, wt)| (0.5 * (1.0 - t), 0.5 * wt)));
        }
        let nodes = mapped
            .into_iter()
            .map(|(r, wt)| {
                Ok((r, wt * r * w.omega_star(r)? / PI, correlations(d.coeffs(), r)))
            })
            .collect::<Result<Vec<_>>>()?;
        let n_centers = 1usize << (j + grid.extra_centers_log2);
        let vals: Vec<f64> = (0..n_centers)
            .into_par_iter()
            .map(|k| {
                let c = 2.0 * PI * k as f64 / n_centers as f64;
                let parts: Vec<f64> = nodes
                    .iter()
                    .map(|(_, wt, a)| wt * arc_integral(a, c, half))
                    .collect();
                pairwise_sum(&parts) / den
            })
            .collect();
        for (k, v) in vals.into_iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Quadrature(format!("Carleson ratio at side {h}")));
            }
            if v > best.0 {
                let c = 2.0 * PI * k as f64 / n_centers as f64;
                best = (v, Complex64::from_polar(1.0 - h / 2.0, c));
            }
        }
    }
    Ok(SeminormEstimate {
        value: best.0.max(0.0),
        witness: best.1,
        lower_bound: true,
        label: format!("c1_omega_star for {} (grid lower bound)", w.label()),
    })
}

/// A seminorm evaluated at caps `N` and `2N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapDoubled {
    pub cap: usize,
    pub at_cap: SeminormEstimate,
    pub at_double_cap: SeminormEstimate,
    pub relative_change: f64,
    pub truncation_limited: bool,
}

/// Evaluates `seminorm` on the truncations `symbol(cap)` and `symbol(2·cap)`.
pub fn cap_doubling(
    symbol: impl Fn(usize) -> TaylorSeries,
    cap: usize,
    seminorm: impl Fn(&TaylorSeries) -> Result<SeminormEstimate>,
) -> Result<CapDoubled> {
    let a = seminorm(&symbol(cap))?;
    let b = seminorm(&symbol(2 * cap))?;
    let scale = a.value.abs().max(b.value.abs());
    let relative_change = if scale == 0.0 { 0.0 } else { (b.value - a.value).abs() / scale };
    Ok(CapDoubled {
        cap,
        at_cap: a,
        at_double_cap: b,
        relative_change,
        truncation_limited: relative_change > TRUNCATION_TOLERANCE,
    })
}
