//! Quadrature building blocks: cached Gauss–Legendre rules, geometrically
//! graded radial panels, global adaptive Gauss–Kronrod (7/15) with a
//! relative tolerance, and the doubling trapezoid rule for periodic means.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order.max(1)).expect("nonzero order");
        let (nodes, weights) = GaussLegendre::new(order)
            .as_node_weight_pairs()
            .iter()
            .copied()
            .unzip();
        GaussRule { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `(x, w)` pairs mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (h, c) = (0.5 * (b - a), 0.5 * (b + a));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (c + h * x, h * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// Shared rule of the given order.
pub fn gauss_rule(order: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("gauss rule cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(GaussRule::new(order)))
        .clone()
}

/// Breakpoints `0 < 1−q < 1−q² < … < 1−q^P < 1`.
pub fn graded_breakpoints(panels: usize, grading: f64) -> Vec<f64> {
    let mut b: Vec<f64> = (0..=panels).map(|k| 1.0 - grading.powi(k as i32)).collect();
    b.push(1.0);
    b
}

/// Nodes and weights for `∫₀¹ F(r) dr` on geometrically graded panels.
///
/// Nodes that round to `r = 1` are dropped; their panel is narrower than
/// the rounding error of the sum.
pub fn graded_radial_rule(panels: usize, grading: f64, order: usize) -> Vec<(f64, f64)> {
    let rule = gauss_rule(order);
    graded_breakpoints(panels, grading)
        .windows(2)
        .flat_map(|ab| rule.mapped(ab[0], ab[1]).collect::<Vec<_>>())
        .filter(|&(r, _)| r < 1.0)
        .collect()
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub err: f64,
    pub converged: bool,
}

// published 30-digit Kronrod nodes and weights, kept verbatim
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Global adaptive Gauss–Kronrod on `[a, b]`.
///
/// Stops when the summed error estimate is below
/// `max(abs_tol, rel_tol·|value|)`. Non-finite samples or an exhausted
/// subdivision budget leave `converged = false`; nothing is zeroed out.
pub fn adaptive_gk(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            err: 0.0,
            converged: true,
        };
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let value: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if !value.is_finite() || !err.is_finite() {
            return Integral {
                value,
                err,
                converged: false,
            };
        }
        if err <= abs_tol.max(rel_tol * value.abs()) {
            return Integral {
                value,
                err,
                converged: true,
            };
        }
        if parts.len() >= max_intervals {
            return Integral {
                value,
                err,
                converged: false,
            };
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted at machine precision
            return Integral {
                value,
                err,
                converged: false,
            };
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Mean of a `2π`-periodic function by the trapezoid rule, doubling from
/// `n0` points until two levels agree to `rel_tol` (or `max_n` is reached).
///
/// Returns `(mean, |difference of last two levels|, converged)`.
pub fn periodic_mean(
    mut f: impl FnMut(f64) -> f64,
    n0: usize,
    rel_tol: f64,
    max_n: usize,
) -> (f64, f64, bool) {
    let tau = std::f64::consts::TAU;
    let mut n = n0.max(2);
    let mut sum: f64 = (0..n).map(|k| f(tau * k as f64 / n as f64)).sum();
    let mut mean = sum / n as f64;
    loop {
        if 2 * n > max_n {
            return (mean, f64::INFINITY, false);
        }
        let odd: f64 = (0..n)
            .map(|k| f(tau * (2 * k + 1) as f64 / (2 * n) as f64))
            .sum();
        sum += odd;
        n *= 2;
        let next = sum / n as f64;
        let diff = (next - mean).abs();
        mean = next;
        if diff <= rel_tol * mean.abs() || diff <= f64::MIN_POSITIVE {
            return (mean, diff, true);
        }
    }
}

/// Pairwise sum, so the rounding pattern depends only on the slice order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}
