//! Radial weights `ω(r)` on the disc, their tails `ω̂(r) = ∫_r¹ ω`, moments,
//! `ω★`, and grid tests for the doubling classes.
//!
//! Area measure is normalized, `∫_𝔻 F(|z|) dA = 2∫₀¹ F(r) r dr`.

use serde::{Deserialize, Serialize};
use statrs::function::beta::{beta, beta_reg};

use crate::error::{Error, Result};
use crate::quadrature::{adaptive_gk, gauss_rule};

/// Relative tolerance for tail and moment quadrature.
pub const REL_TOL: f64 = 1e-10;
const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightKind {
    /// `(α+1)(1−r²)^α`, unit mass.
    Standard { alpha: f64 },
    /// `exp(−c/(1−r)^α)`.
    Exponential { c: f64, alpha: f64 },
    /// `exp(exp(−c/(1−r)))`.
    DoubleExponential { c: f64 },
    /// Samples `(r_i, ω_i)`, interpolated by monotone cubics.
    Tabulated { r: Vec<f64>, omega: Vec<f64> },
}

impl WeightKind {
    pub fn name(&self) -> &'static str {
        match self {
            WeightKind::Standard { .. } => "standard",
            WeightKind::Exponential { .. } => "exponential",
            WeightKind::DoubleExponential { .. } => "double_exponential",
            WeightKind::Tabulated { .. } => "tabulated",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WeightSpec {
    #[serde(flatten)]
    kind: WeightKind,
    #[serde(default = "unit")]
    normalization: f64,
}

fn unit() -> f64 {
    1.0
}

/// A radial weight: a [`WeightKind`] times a positive normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightSpec", into = "WeightSpec")]
pub struct RadialWeightDescriptor {
    kind: WeightKind,
    normalization: f64,
    /// PCHIP slopes for tabulated weights.
    slopes: Vec<f64>,
}

impl TryFrom<WeightSpec> for RadialWeightDescriptor {
    type Error = Error;
    fn try_from(s: WeightSpec) -> Result<Self> {
        RadialWeightDescriptor::new(s.kind, s.normalization)
    }
}

impl From<RadialWeightDescriptor> for WeightSpec {
    fn from(w: RadialWeightDescriptor) -> Self {
        WeightSpec {
            kind: w.kind,
            normalization: w.normalization,
        }
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {x}")))
    }
}

impl RadialWeightDescriptor {
    pub fn new(kind: WeightKind, normalization: f64) -> Result<Self> {
        positive("normalization", normalization)?;
        let mut slopes = Vec::new();
        match &kind {
            WeightKind::Standard { alpha } => {
                if !(alpha.is_finite() && *alpha > -1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "standard weight needs alpha > -1, got {alpha}"
                    )));
                }
            }
            WeightKind::Exponential { c, alpha } => {
                positive("c", *c)?;
                positive("alpha", *alpha)?;
            }
            WeightKind::DoubleExponential { c } => positive("c", *c)?,
            WeightKind::Tabulated { r, omega } => {
                if r.len() < 2 || r.len() != omega.len() {
                    return Err(Error::InsufficientGrid(
                        "need at least two (r, ω) samples of equal length".into(),
                    ));
                }
                if r[0] < 0.0 || *r.last().unwrap() > 1.0 || r.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InsufficientGrid(
                        "radii must increase strictly within [0, 1]".into(),
                    ));
                }
                if omega.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::InvalidParameter("tabulated ω must be finite and ≥ 0".into()));
                }
                slopes = pchip_slopes(r, omega);
            }
        }
        Ok(RadialWeightDescriptor {
            kind,
            normalization,
            slopes,
        })
    }

    pub fn standard(alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Standard { alpha }, 1.0)
    }

    pub fn exponential(c: f64, alpha: f64) -> Result<Self> {
        Self::new(WeightKind::Exponential { c, alpha }, 1.0)
    }

    pub fn double_exponential(c: f64) -> Result<Self> {
        Self::new(WeightKind::DoubleExponential { c }, 1.0)
    }

    pub fn tabulated(r: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        Self::new(WeightKind::Tabulated { r, omega }, 1.0)
    }

    pub fn with_normalization(&self, normalization: f64) -> Result<Self> {
        Self::new(self.kind.clone(), normalization)
    }

    /// The same weight rescaled to `∫_𝔻 ω dA = 1`.
    pub fn unit_mass(&self) -> Result<Self> {
        let m = self.moment(0)?;
        self.with_normalization(self.normalization / m)
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    fn check_r(r: f64) -> Result<()> {
        if (0.0..1.0).contains(&r) {
            Ok(())
        } else {
            Err(Error::Domain(format!("radius {r} outside [0, 1)")))
        }
    }

    fn tab_range(&self, lo: f64, hi: f64) -> Result<()> {
        if let WeightKind::Tabulated { r, .. } = &self.kind {
            if lo < r[0] || hi > *r.last().unwrap() {
                return Err(Error::InsufficientGrid(format!(
                    "[{lo}, {hi}] is not covered by the grid [{}, {}]",
                    r[0],
                    r.last().unwrap()
                )));
            }
        }
        Ok(())
    }

    /// `ω(r)` without domain checks; `r` may equal 1 for tabulated grids.
    fn raw(&self, r: f64) -> f64 {
        let v = match &self.kind {
            WeightKind::Standard { alpha } => {
                if *alpha == 0.0 {
                    1.0
                } else {
                    (alpha + 1.0) * ((1.0 - r) * (1.0 + r)).powf(*alpha)
                }
            }
            WeightKind::Exponential { c, alpha } => (-c / (1.0 - r).powf(*alpha)).exp(),
            WeightKind::DoubleExponential { c } => (-c / (1.0 - r)).exp().exp(),
            WeightKind::Tabulated { r: xs, omega } => pchip_eval(xs, omega, &self.slopes, r),
        };
        self.normalization * v
    }

    pub fn omega(&self, r: f64) -> Result<f64> {
        Self::check_r(r)?;
        self.tab_range(r, r)?;
        Ok(self.raw(r))
    }

    /// `ω̂(r) = ∫_r¹ ω(s) ds`.
    pub fn omega_hat(&self, r: f64) -> Result<f64> {
        Self::check_r(r)?;
        match &self.kind {
            WeightKind::Standard { alpha } => {
                let a = *alpha;
                if a == 0.0 {
                    return Ok(self.normalization * (1.0 - r));
                }
                // ∫_r¹ (1−s²)^α ds = ½ B(α+1, ½) I_{1−r²}(α+1, ½)
                let x = (1.0 - r) * (1.0 + r);
                let tail = 0.5 * beta(a + 1.0, 0.5) * beta_reg(a + 1.0, 0.5, x);
                Ok(self.normalization * (a + 1.0) * tail)
            }
            WeightKind::Tabulated { r: xs, omega } => {
                if *xs.last().unwrap() < 1.0 {
                    return Err(Error::InsufficientGrid(format!(
                        "ω̂ needs samples up to r = 1; grid ends at {}",
                        xs.last().unwrap()
                    )));
                }
                self.tab_range(r, 1.0)?;
                Ok(self.normalization * pchip_integral(xs, omega, &self.slopes, r, 1.0))
            }
            _ => self.integrate(r, 1.0, |s| self.raw(s), "ω̂"),
        }
    }

    /// `∫_a^b ω`, `0 ≤ a ≤ b ≤ 1`.
    pub fn mass_between(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        if let WeightKind::Tabulated { r: xs, omega } = &self.kind {
            self.tab_range(a, b)?;
            return Ok(self.normalization * pchip_integral(xs, omega, &self.slopes, a, b));
        }
        if b >= 1.0 {
            return self.omega_hat(a);
        }
        self.integrate(a, b, |s| self.raw(s), "∫ω")
    }

    fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64, what: &str) -> Result<f64> {
        let i = adaptive_gk(f, a, b, REL_TOL, 0.0, MAX_INTERVALS);
        if i.converged {
            Ok(i.value)
        } else {
            Err(Error::Quadrature(format!("{what} on [{a}, {b}] (err {:e})", i.err)))
        }
    }

    /// `2∫₀¹ r^{2n+1} ω(r) dr`, the squared `A²_ω` norm of `zⁿ`.
    pub fn moment(&self, n: usize) -> Result<f64> {
        Ok(*self.moments(n)?.last().expect("n + 1 moments"))
    }

    /// Moments `0..=n_max`.
    pub fn moments(&self, n_max: usize) -> Result<Vec<f64>> {
        match &self.kind {
            WeightKind::Standard { alpha } => {
                // (α+1)B(n+1, α+1) = Π_{k≤n} k/(k+α+1)
                let mut m = Vec::with_capacity(n_max + 1);
                let mut cur = self.normalization;
                m.push(cur);
                for k in 1..=n_max {
                    cur *= k as f64 / (k as f64 + alpha + 1.0);
                    m.push(cur);
                }
                Ok(m)
            }
            WeightKind::Tabulated { r: xs, omega } => {
                self.tab_range(0.0, 1.0)?;
                Ok((0..=n_max)
                    .map(|n| {
                        let rule = gauss_rule(n + 4);
                        let s: f64 = xs
                            .windows(2)
                            .map(|ab| {
                                rule.integrate(ab[0], ab[1], |r| {
                                    2.0 * r.powi(2 * n as i32 + 1) * pchip_eval(xs, omega, &self.slopes, r)
                                })
                            })
                            .sum();
                        self.normalization * s
                    })
                    .collect())
            }
            _ => (0..=n_max)
                .map(|n| {
                    self.integrate(0.0, 1.0, |r| 2.0 * r.powi(2 * n as i32 + 1) * self.raw(r), "moment")
                })
                .collect(),
        }
    }

    /// `ω★(r) = ∫_r¹ s ω(s) log(s/r) ds`, `0 < r < 1`.
    pub fn omega_star(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!(
                "ω★ is defined for 0 < r < 1, got {r}"
            )));
        }
        if let WeightKind::Standard { alpha } = self.kind {
            if alpha == 0.0 {
                return Ok(self.normalization * ((r * r - 1.0) / 4.0 - r.ln() / 2.0));
            }
        }
        if let WeightKind::Tabulated { .. } = self.kind {
            self.tab_range(r, 1.0)?;
        }
        self.integrate(r, 1.0, |s| s * self.raw(s) * (s / r).ln(), "ω★")
    }

    /// `φ'(r)` for `ω = e^{−φ}`.
    pub fn phi_prime(&self, r: f64) -> Result<f64> {
        Self::check_r(r)?;
        match self.kind {
            WeightKind::Exponential { c, alpha } => Ok(c * alpha / (1.0 - r).powf(alpha + 1.0)),
            WeightKind::DoubleExponential { c } => {
                let t = 1.0 - r;
                Ok((-c / t).exp() * c / (t * t))
            }
            _ => Err(Error::WrongWeightKind {
                expected: "exponential or double_exponential",
                found: self.kind.name().into(),
            }),
        }
    }

    /// Short human label for reports.
    pub fn label(&self) -> String {
        let base = match &self.kind {
            WeightKind::Standard { alpha } => format!("standard(alpha={alpha})"),
            WeightKind::Exponential { c, alpha } => format!("exponential(c={c}, alpha={alpha})"),
            WeightKind::DoubleExponential { c } => format!("double_exponential(c={c})"),
            WeightKind::Tabulated { r, .. } => format!("tabulated({} samples)", r.len()),
        };
        if self.normalization == 1.0 {
            base
        } else {
            format!("{base}*{}", self.normalization)
        }
    }
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    if n == 2 {
        return vec![d[0], d[0]];
    }
    let mut m = vec![0.0; n];
    for i in 1..n - 1 {
        if d[i - 1] * d[i] > 0.0 {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= 0.0 {
            0.0
        } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    m[0] = end(h[0], h[1], d[0], d[1]);
    m[n - 1] = end(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}

fn segment(x: &[f64], t: f64) -> usize {
    match x.binary_search_by(|v| v.total_cmp(&t)) {
        Ok(i) => i.min(x.len() - 2),
        Err(i) => i.saturating_sub(1).min(x.len() - 2),
    }
}

fn pchip_eval(x: &[f64], y: &[f64], m: &[f64], t: f64) -> f64 {
    let i = segment(x, t);
    let h = x[i + 1] - x[i];
    let s = (t - x[i]) / h;
    let (s2, s3) = (s * s, s * s * s);
    (2.0 * s3 - 3.0 * s2 + 1.0) * y[i]
        + (s3 - 2.0 * s2 + s) * h * m[i]
        + (-2.0 * s3 + 3.0 * s2) * y[i + 1]
        + (s3 - s2) * h * m[i + 1]
}

/// Exact integral of the Hermite interpolant over `[a, b]`.
fn pchip_integral(x: &[f64], y: &[f64], m: &[f64], a: f64, b: f64) -> f64 {
    let rule = gauss_rule(2);
    let mut total = 0.0;
    for i in 0..x.len() - 1 {
        let lo = x[i].max(a);
        let hi = x[i + 1].min(b);
        if hi > lo {
            total += rule.integrate(lo, hi, |t| pchip_eval(x, y, m, t));
        }
    }
    total
}

/// Verdict of a finite-grid class test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub verdict: Verdict,
    /// Radius where the failure (or the loss of precision) was observed.
    pub witness_r: Option<f64>,
    /// Largest finite ratio seen on the grid.
    pub observed_sup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightClassReport {
    pub in_upper_doubling: ClassVerdict,
    pub in_lower_doubling: ClassVerdict,
    /// `K` of the first passing lower-doubling scan, if any.
    pub lower_doubling_k: Option<u32>,
    /// `sup ω̂(r)/ω̂((1+r)/2)` over the grid.
    pub doubling_sup: f64,
    pub params: String,
}

/// Tail radii on which a ratio may not grow more than this factor per
/// decade of `1 − r`.
pub const DECADE_GROWTH: f64 = 4.0;
pub const LOWER_DOUBLING_K: [u32; 4] = [2, 4, 8, 16];

/// `r = 0` and `1 − r = 10^{−k/8}`, `k = 1..=32`.
pub fn default_grid() -> Vec<f64> {
    let mut g = vec![0.0];
    g.extend((1..=32).map(|k| 1.0 - 10f64.powf(-(k as f64) / 8.0)));
    g
}

/// Judges a ratio sampled on an increasing grid: fail on growth by more
/// than [`DECADE_GROWTH`] across a decade of `1 − r` in the tail
/// `1 − r ≤ 0.1`; non-finite samples make a non-failing test inconclusive.
fn judge(grid: &[f64], ratios: &[Option<f64>]) -> ClassVerdict {
    let observed_sup = ratios
        .iter()
        .flatten()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |a, &b| a.max(b));
    for (i, (&r, q)) in grid.iter().zip(ratios).enumerate() {
        let Some(q) = q.filter(|q| q.is_finite()) else { continue };
        if 1.0 - r > 0.1 {
            continue;
        }
        for (&r2, q2) in grid[i + 1..].iter().zip(&ratios[i + 1..]) {
            if let Some(q2) = q2 {
                if 1.0 - r2 <= (1.0 - r) / 10.0 && (*q2 > DECADE_GROWTH * q || q2.is_infinite()) {
                    return ClassVerdict {
                        verdict: Verdict::Fail,
                        witness_r: Some(r2),
                        observed_sup,
                    };
                }
            }
        }
    }
    let bad = grid
        .iter()
        .zip(ratios)
        .find(|(_, q)| !matches!(q, Some(v) if v.is_finite()));
    match bad {
        Some((&r, _)) => ClassVerdict {
            verdict: Verdict::Inconclusive,
            witness_r: Some(r),
            observed_sup,
        },
        None => ClassVerdict {
            verdict: Verdict::Pass,
            witness_r: None,
            observed_sup,
        },
    }
}

fn ratio(num: Result<f64>, den: Result<f64>) -> Option<f64> {
    match (num, den) {
        (Ok(a), Ok(b)) if a > 0.0 && b > 0.0 => Some(a / b),
        (Ok(a), Ok(b)) if a > 0.0 && b == 0.0 => Some(f64::INFINITY),
        _ => None,
    }
}

/// Upper and lower doubling tests on `grid`.
pub fn classify_doubling(w: &RadialWeightDescriptor, grid: &[f64]) -> Result<WeightClassReport> {
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    if grid.iter().any(|r| !(0.0..1.0).contains(r)) {
        return Err(Error::Domain("grid radii must lie in [0, 1)".into()));
    }
    if grid.last().copied().unwrap_or(0.0) < 0.99 {
        return Err(Error::InvalidParameter("grid must reach r ≥ 0.99".into()));
    }
    let upper: Vec<Option<f64>> = grid
        .iter()
        .map(|&r| ratio(w.omega_hat(r), w.omega_hat(0.5 * (1.0 + r))))
        .collect();
    let in_upper = judge(&grid, &upper);

    let mut first_fail = None;
    let mut inconclusive = None;
    let mut lower = None;
    for k in LOWER_DOUBLING_K {
        let q: Vec<Option<f64>> = grid
            .iter()
            .map(|&r| ratio(w.omega_hat(r), w.mass_between(r, r + (1.0 - r) / k as f64)))
            .collect();
        let v = judge(&grid, &q);
        match v.verdict {
            Verdict::Pass => {
                lower = Some((k, v));
                break;
            }
            Verdict::Fail => {
                first_fail.get_or_insert(v);
            }
            Verdict::Inconclusive => {
                inconclusive.get_or_insert(v);
            }
        }
    }
    let (lower_doubling_k, in_lower) = match (lower, inconclusive, first_fail) {
        (Some((k, v)), _, _) => (Some(k), v),
        (None, Some(v), _) => (None, v),
        (None, None, Some(v)) => (None, v),
        (None, None, None) => unreachable!("at least one K is scanned"),
    };
    Ok(WeightClassReport {
        doubling_sup: in_upper.observed_sup,
        in_upper_doubling: in_upper,
        in_lower_doubling: in_lower,
        lower_doubling_k,
        params: format!(
            "{} radii in [{}, {}], geometric in 1-r; decade growth limit {}; K in {:?}",
            grid.len(),
            grid[0],
            grid.last().unwrap(),
            DECADE_GROWTH,
            LOWER_DOUBLING_K
        ),
    })
}

/// A grid certificate for `ω̂(r) ≤ C((1−r)/(1−t))^β ω̂(t)`, `r ≤ t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaCertificate {
    pub beta: f64,
    pub constant: f64,
}

pub const BETA_STEP: f64 = 0.25;
pub const BETA_MAX: f64 = 64.0;
pub const BETA_CONSTANT: f64 = 2.0;

/// Smallest `β` on the `0.25` lattice whose grid constant is at most 2.
pub fn beta_exponent(w: &RadialWeightDescriptor, grid: &[f64]) -> Result<BetaCertificate> {
    let report = classify_doubling(w, grid)?;
    if report.in_upper_doubling.verdict != Verdict::Pass {
        let witness_r = report.in_upper_doubling.witness_r.unwrap_or(f64::NAN);
        let ratio = w
            .omega_hat(witness_r)
            .and_then(|a| w.omega_hat(0.5 * (1.0 + witness_r)).map(|b| a / b))
            .unwrap_or(f64::INFINITY);
        return Err(Error::NotUpperDoubling { witness_r, ratio });
    }
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let tails = grid
        .iter()
        .map(|&r| w.omega_hat(r))
        .collect::<Result<Vec<_>>>()?;
    let steps = (BETA_MAX / BETA_STEP) as usize;
    for s in 1..=steps {
        let beta = s as f64 * BETA_STEP;
        let mut running = 0.0f64;
        let mut c = 0.0f64;
        for (&r, &t) in grid.iter().zip(&tails) {
            let h = t / (1.0 - r).powf(beta);
            running = running.max(h);
            c = c.max(running / h);
        }
        if c <= BETA_CONSTANT {
            return Ok(BetaCertificate { beta, constant: c });
        }
    }
    Err(Error::NotUpperDoubling {
        witness_r: *grid.last().unwrap(),
        ratio: f64::INFINITY,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn tails_of_standard_weights() {
        let w0 = RadialWeightDescriptor::standard(0.0).unwrap();
        assert_eq!(w0.omega_hat(0.5).unwrap(), 0.5);
        let w1 = RadialWeightDescriptor::standard(1.0).unwrap();
        assert!(close(w1.omega_hat(0.0).unwrap(), 4.0 / 3.0, 1e-13));
        for r in [0.1, 0.5, 0.9, 0.999] {
            let exact = 2.0 * (1.0 - r) - (2.0 / 3.0) * (1.0 - r * r * r);
            assert!(close(w1.omega_hat(r).unwrap(), exact, 1e-11), "r = {r}");
        }
    }

    #[test]
    fn exponential_tail_two_tolerances() {
        let w = RadialWeightDescriptor::exponential(1.0, 1.0).unwrap();
        let v = w.omega_hat(0.9).unwrap();
        let coarse = adaptive_gk(|s| (-1.0 / (1.0 - s)).exp(), 0.9, 1.0, 1e-6, 0.0, 100);
        assert!(close(v, coarse.value, 1e-6));
        assert!(close(v, 4.156_968_929_685_324e-6_f64.mul_add(-1.0, (-10f64).exp() / 10.0), 1e-9));
    }

    #[test]
    fn moments() {
        let w0 = RadialWeightDescriptor::standard(0.0).unwrap();
        assert!(close(w0.moment(1).unwrap(), 0.5, 1e-15));
        let w1 = RadialWeightDescriptor::standard(1.0).unwrap();
        assert!(close(w1.moment(2).unwrap(), 1.0 / 6.0, 1e-15));
        let e = RadialWeightDescriptor::exponential(1.0, 1.0).unwrap();
        let m = e.moments(3).unwrap();
        let mass = 2.0 * adaptive_gk(|r| r * (-1.0 / (1.0 - r)).exp(), 0.0, 1.0, 1e-12, 0.0, 500).value;
        assert!(close(m[0], mass, 1e-9));
        assert!(m.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn omega_star_closed_form_and_riemann() {
        let w = RadialWeightDescriptor::standard(0.0).unwrap();
        assert!(close(w.omega_star(0.5).unwrap(), 0.159_073_590_279_972_7, 1e-12));
        let r = 0.9;
        let n = 200_000;
        let h = (1.0 - r) / n as f64;
        let mid: f64 = (0..n)
            .map(|k| {
                let s = r + (k as f64 + 0.5) * h;
                s * (s / r).ln()
            })
            .sum::<f64>()
            * h;
        assert!((w.omega_star(r).unwrap() - mid).abs() < 1e-8);
        assert!(w.omega_star(1.0 - 1e-9).unwrap() < 1e-15);
        assert!(w.omega_star(0.0).is_err());
    }

    #[test]
    fn phi_prime_values() {
        let e = RadialWeightDescriptor::exponential(1.0, 1.0).unwrap();
        assert_eq!(e.phi_prime(0.0).unwrap(), 1.0);
        assert_eq!(e.phi_prime(0.5).unwrap(), 4.0);
        let d = RadialWeightDescriptor::double_exponential(1.0).unwrap();
        assert!(close(d.phi_prime(0.0).unwrap(), (-1f64).exp(), 1e-15));
        assert!(RadialWeightDescriptor::standard(0.0).unwrap().phi_prime(0.3).is_err());
    }

    #[test]
    fn doubling_examples() {
        let g = default_grid();
        let w0 = RadialWeightDescriptor::standard(0.0).unwrap();
        let rep = classify_doubling(&w0, &g).unwrap();
        assert_eq!(rep.in_upper_doubling.verdict, Verdict::Pass);
        assert!(close(rep.doubling_sup, 2.0, 1e-12));
        let e = RadialWeightDescriptor::exponential(1.0, 1.0).unwrap();
        let rep = classify_doubling(&e, &g).unwrap();
        assert_eq!(rep.in_upper_doubling.verdict, Verdict::Fail);
        let w2 = RadialWeightDescriptor::standard(2.0).unwrap();
        let rep = classify_doubling(&w2, &g).unwrap();
        assert_eq!(rep.in_upper_doubling.verdict, Verdict::Pass);
        assert_eq!(rep.in_lower_doubling.verdict, Verdict::Pass);
    }

    #[test]
    fn beta_examples() {
        let g = default_grid();
        let b = beta_exponent(&RadialWeightDescriptor::standard(0.0).unwrap(), &g).unwrap();
        assert_eq!(b.beta, 1.0);
        assert!(close(b.constant, 1.0, 1e-12));
        let b = beta_exponent(&RadialWeightDescriptor::standard(2.0).unwrap(), &g).unwrap();
        assert_eq!(b.beta, 3.0);
        assert!(b.constant <= 2.0);
        let e = RadialWeightDescriptor::exponential(1.0, 1.0).unwrap();
        assert!(matches!(beta_exponent(&e, &g), Err(Error::NotUpperDoubling { .. })));
    }

    #[test]
    fn tabulated_matches_linear_weight() {
        // ω(r) = 1 − r is reproduced exactly by the monotone cubic
        let r: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let om: Vec<f64> = r.iter().map(|x| 1.0 - x).collect();
        let w = RadialWeightDescriptor::tabulated(r, om).unwrap();
        assert!(close(w.omega(0.33).unwrap(), 0.67, 1e-14));
        assert!(close(w.omega_hat(0.5).unwrap(), 0.125, 1e-14));
        let short = RadialWeightDescriptor::tabulated(vec![0.0, 0.5, 0.9], vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(short.omega_hat(0.2), Err(Error::InsufficientGrid(_))));
        assert!(matches!(short.omega(0.95), Err(Error::InsufficientGrid(_))));
    }

    #[test]
    fn json_roundtrip() {
        let w: RadialWeightDescriptor = serde_json::from_str(r#"{"kind":"standard","alpha":0}"#).unwrap();
        assert_eq!(w, RadialWeightDescriptor::standard(0.0).unwrap());
        let back = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<RadialWeightDescriptor>(&back).unwrap(), w);
        assert!(serde_json::from_str::<RadialWeightDescriptor>(r#"{"kind":"standard","alpha":-2}"#).is_err());
        assert!(serde_json::from_str::<RadialWeightDescriptor>(r#"{"kind":"gamma"}"#).is_err());
    }
}
