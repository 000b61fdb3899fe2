//! Taylor polynomials about the origin.
//!
//! A [`Series`] stores the coefficients `c_0..=c_N` of either an exact
//! polynomial or the truncation of an analytic function at degree `N` (its
//! cap). Arithmetic between two truncations keeps the smaller cap; an exact
//! polynomial operand has no unknown tail, so a mixed operation keeps the cap
//! of the truncated operand. Exact polynomials grow their degree freely up to
//! a hard limit, past which operations fail with [`Error::DegreeOverflow`].

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Complex64, ExactComplex};
use crate::error::{Error, Result};

/// Default hard degree limit for exact polynomials.
pub const DEFAULT_DEGREE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// All coefficients past the stored ones are zero.
    ExactPolynomial,
    /// Coefficients past the cap are unknown.
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series<C> {
    coeffs: Vec<C>,
    exactness: Exactness,
    degree_limit: usize,
}

/// Double-precision series used by the quadrature code.
pub type TaylorSeries = Series<Complex64>;
/// Exact Gaussian-rational series used by the identity suite.
pub type ExactSeries = Series<ExactComplex>;

impl<C: Coeff> Series<C> {
    /// An exact polynomial; trailing zeros are trimmed.
    pub fn polynomial(coeffs: Vec<C>) -> Self {
        let mut s = Series {
            coeffs,
            exactness: Exactness::ExactPolynomial,
            degree_limit: DEFAULT_DEGREE_LIMIT,
        };
        if s.coeffs.is_empty() {
            s.coeffs.push(C::zero());
        }
        s.trim();
        s
    }

    /// A truncation with cap `coeffs.len() - 1`.
    pub fn truncated(coeffs: Vec<C>) -> Self {
        let mut coeffs = coeffs;
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        Series {
            coeffs,
            exactness: Exactness::Truncated,
            degree_limit: DEFAULT_DEGREE_LIMIT,
        }
    }

    pub fn zero() -> Self {
        Series::polynomial(vec![C::zero()])
    }

    pub fn constant(c: C) -> Self {
        Series::polynomial(vec![c])
    }

    pub fn one() -> Self {
        Series::constant(C::one())
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![C::zero(); k + 1];
        c[k] = C::one();
        Series::polynomial(c)
    }

    /// The identity function `z`.
    pub fn z() -> Self {
        Series::monomial(1)
    }

    pub fn with_degree_limit(mut self, limit: usize) -> Self {
        self.degree_limit = limit;
        self
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Maximum retained degree.
    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::ExactPolynomial
    }

    pub fn degree_limit(&self) -> usize {
        self.degree_limit
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    fn trim(&mut self) {
        if self.is_exact() {
            let d = self.degree();
            self.coeffs.truncate(d + 1);
        }
    }

    /// Coefficientwise equality after trimming trailing zeros.
    pub fn same_coefficients(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Shape of a binary result: exactness, cap (for truncations) and limit.
    fn combine(&self, other: &Self) -> (Exactness, Option<usize>, usize) {
        let limit = self.degree_limit.min(other.degree_limit);
        match (self.exactness, other.exactness) {
            (Exactness::ExactPolynomial, Exactness::ExactPolynomial) => {
                (Exactness::ExactPolynomial, None, limit)
            }
            (Exactness::Truncated, Exactness::Truncated) => {
                (Exactness::Truncated, Some(self.cap().min(other.cap())), limit)
            }
            (Exactness::Truncated, _) => (Exactness::Truncated, Some(self.cap()), limit),
            (_, Exactness::Truncated) => (Exactness::Truncated, Some(other.cap()), limit),
        }
    }

    fn build(coeffs: Vec<C>, exactness: Exactness, cap: Option<usize>, limit: usize) -> Result<Self> {
        let mut coeffs = coeffs;
        if let Some(cap) = cap {
            coeffs.resize(cap + 1, C::zero());
        }
        let mut s = Series {
            coeffs,
            exactness,
            degree_limit: limit,
        };
        if s.coeffs.is_empty() {
            s.coeffs.push(C::zero());
        }
        s.trim();
        if s.cap() > limit {
            return Err(Error::DegreeOverflow {
                degree: s.cap(),
                limit,
            });
        }
        Ok(s)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (ex, cap, limit) = self.combine(other);
        let n = cap.map_or(self.coeffs.len().max(other.coeffs.len()), |c| c + 1);
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        // Sums never exceed the larger input degree.
        Series::build(coeffs, ex, cap, usize::MAX).map(|s| s.with_degree_limit(limit)).expect("sum")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            exactness: self.exactness,
            degree_limit: self.degree_limit,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            exactness: self.exactness,
            degree_limit: self.degree_limit,
        };
        s.trim();
        s
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (ex, cap, limit) = self.combine(other);
        let (da, db) = (self.degree(), other.degree());
        let natural = da + db;
        if cap.is_none() && natural > limit {
            return Err(Error::DegreeOverflow {
                degree: natural,
                limit,
            });
        }
        let top = cap.map_or(natural, |c| c.min(natural));
        let mut out = vec![C::zero(); top + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(da + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(db + 1) {
                if i + j > top {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let t = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = t;
            }
        }
        Series::build(out, ex, cap, limit)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        if n == 0 {
            let unit = Series::one().with_degree_limit(self.degree_limit);
            return Ok(if self.is_exact() { unit } else { unit.truncate_to(self.cap()) });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `f'`: coefficients `k c_k` shifted down one degree.
    pub fn differentiate(&self) -> Self {
        let coeffs: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_int(k as u64))
            .collect();
        let mut s = Series {
            coeffs,
            exactness: self.exactness,
            degree_limit: self.degree_limit,
        };
        if s.coeffs.is_empty() {
            s.coeffs.push(C::zero());
        }
        s.trim();
        s
    }

    /// The primitive vanishing at 0: coefficients `c_k / (k+1)` shifted up.
    ///
    /// A truncation at cap `N` integrates to one at cap `N + 1`, since the
    /// new top coefficient depends only on `c_N`.
    pub fn integrate0(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.div_int(k as u64 + 1));
        }
        let cap = if self.is_exact() { None } else { Some(self.cap() + 1) };
        Series::build(coeffs, self.exactness, cap, self.degree_limit)
    }

    /// `f_λ(z) = f(λz)`, for `|λ| ≤ 1`.
    pub fn dilate(&self, lambda: &C) -> Result<Self> {
        if !lambda.modulus_at_most_one() {
            return Err(Error::DilationOutsideDisc {
                modulus: lambda.to_c64().norm(),
            });
        }
        let mut pw = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * pw.clone());
            pw = pw * lambda.clone();
        }
        let mut s = Series {
            coeffs,
            exactness: self.exactness,
            degree_limit: self.degree_limit,
        };
        s.trim();
        Ok(s)
    }

    /// Horner evaluation. Meaningful for truncations only inside the disc.
    pub fn evaluate(&self, z: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn value_at_zero(&self) -> C {
        self.coeffs[0].clone()
    }

    /// `Π₀ f = f − f(0)`.
    pub fn pi0(&self) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = C::zero();
        s.trim();
        s
    }

    /// Truncates (or pads) to a given cap, marking the result truncated.
    pub fn truncate_to(&self, cap: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(cap + 1, C::zero());
        Series {
            coeffs,
            exactness: Exactness::Truncated,
            degree_limit: self.degree_limit,
        }
    }

    /// `self ∘ inner`, truncated at `cap`. Exact only when both are exact and
    /// `inner` is a polynomial of degree ≤ 1 or `cap` covers the full degree.
    pub fn compose(&self, inner: &Self, cap: usize) -> Result<Self> {
        let inner_t = inner.truncate_to(cap);
        let mut acc = Series::truncated(vec![C::zero(); cap + 1]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner_t)?;
            let mut v = acc.coeffs.clone();
            v[0] = v[0].clone() + c.clone();
            acc = Series::truncated(v);
        }
        Ok(acc.with_degree_limit(self.degree_limit))
    }

    /// Converts the coefficients to double precision.
    pub fn to_c64(&self) -> TaylorSeries {
        Series {
            coeffs: self.coeffs.iter().map(Coeff::to_c64).collect(),
            exactness: self.exactness,
            degree_limit: self.degree_limit,
        }
    }
}

impl TaylorSeries {
    /// Convenience constructor from real coefficients.
    pub fn real_polynomial(coeffs: &[f64]) -> Self {
        Series::polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Maximum coefficientwise distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl ExactSeries {
    /// Exact lift of a double-precision series (every finite double is rational).
    pub fn from_c64(s: &TaylorSeries) -> Self {
        Series {
            coeffs: s.coeffs.iter().map(|&z| ExactComplex::from_c64(z)).collect(),
            exactness: s.exactness,
            degree_limit: s.degree_limit,
        }
    }
}

/// Named analytic symbols used throughout the experiments.
pub mod named {
    use super::*;

    /// Truncation of `log(1/(1−z)) = Σ_{k≥1} z^k / k` at degree `cap`.
    pub fn log_one_minus_inv(cap: usize) -> TaylorSeries {
        let mut c = vec![Complex64::new(0.0, 0.0); cap + 1];
        for (k, ck) in c.iter_mut().enumerate().skip(1) {
            *ck = Complex64::new(1.0 / k as f64, 0.0);
        }
        Series::truncated(c)
    }

    /// Truncation of `(1 − w z)^a` by the binomial series.
    pub fn binomial(a: f64, w: Complex64, cap: usize) -> TaylorSeries {
        let mut c = Vec::with_capacity(cap + 1);
        let mut ck = Complex64::new(1.0, 0.0);
        for k in 0..=cap {
            c.push(ck);
            // coefficient of (−w z)^k in (1+x)^a is C(a,k)
            ck = ck * (k as f64 - a) / (k as f64 + 1.0) * w;
        }
        Series::truncated(c)
    }

    /// Truncation of `1/(1−z)`.
    pub fn geometric(cap: usize) -> TaylorSeries {
        Series::truncated(vec![Complex64::new(1.0, 0.0); cap + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ExactComplex as E;

    fn q(n: i64, d: i64) -> E {
        E::from_ratio(n, d)
    }

    fn ep(c: &[(i64, i64)]) -> ExactSeries {
        Series::polynomial(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = ep(&[(1, 1), (1, 1)]);
        let b = ep(&[(1, 1), (-1, 1)]);
        let p = a.mul(&b).unwrap();
        assert!(p.same_coefficients(&ep(&[(1, 1), (0, 1), (-1, 1)])));
        assert!(p.is_exact());
        let z = ExactSeries::z();
        assert!(z.mul(&z).unwrap().same_coefficients(&ExactSeries::monomial(2)));
    }

    #[test]
    fn truncated_geometric_times_one_minus_z() {
        // (1 + z + z² + z³)(1 − z) = 1 − z⁴, which at cap 3 is 1.
        let g = Series::truncated(vec![q(1, 1); 4]);
        let p = g.mul(&ep(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(p.cap(), 3);
        assert_eq!(p.exactness(), Exactness::Truncated);
        assert!(p.same_coefficients(&ep(&[(1, 1)])));
    }

    #[test]
    fn differentiate_examples() {
        assert!(ExactSeries::monomial(2)
            .differentiate()
            .same_coefficients(&ep(&[(0, 1), (2, 1)])));
        assert!(ExactSeries::constant(q(5, 1)).differentiate().is_zero());
        let exp3 = ep(&[(1, 1), (1, 1), (1, 2), (1, 6)]);
        assert!(exp3
            .differentiate()
            .same_coefficients(&ep(&[(1, 1), (1, 1), (1, 2)])));
    }

    #[test]
    fn integrate_examples() {
        let one = ExactSeries::one();
        assert!(one.integrate0().unwrap().same_coefficients(&ExactSeries::z()));
        let two_z = ep(&[(0, 1), (2, 1)]);
        assert!(two_z
            .integrate0()
            .unwrap()
            .same_coefficients(&ExactSeries::monomial(2)));
        assert!(ExactSeries::monomial(2)
            .integrate0()
            .unwrap()
            .same_coefficients(&ep(&[(0, 1), (0, 1), (0, 1), (1, 3)])));
    }

    #[test]
    fn dilate_examples() {
        let z2 = ExactSeries::monomial(2);
        assert!(z2
            .dilate(&q(1, 2))
            .unwrap()
            .same_coefficients(&ep(&[(0, 1), (0, 1), (1, 4)])));
        let f = ep(&[(1, 1), (1, 1), (1, 1)]);
        assert!(f.dilate(&E::one()).unwrap().same_coefficients(&f));
        let expected = Series::polynomial(vec![E::one(), E::i(), q(-1, 1)]);
        assert!(f.dilate(&E::i()).unwrap().same_coefficients(&expected));
        assert!(matches!(
            f.dilate(&q(3, 2)),
            Err(Error::DilationOutsideDisc { .. })
        ));
    }

    #[test]
    fn pi0_and_evaluate() {
        let f = ep(&[(3, 1), (1, 1)]);
        assert!(f.pi0().same_coefficients(&ExactSeries::z()));
        assert!(f.pi0().pi0().same_coefficients(&f.pi0()));
        let g = TaylorSeries::real_polynomial(&[1.0, 1.0]);
        assert_eq!(g.evaluate(&Complex64::new(0.5, 0.0)), Complex64::new(1.5, 0.0));
    }

    #[test]
    fn degree_limit_fails_loudly() {
        let p = ExactSeries::monomial(3000);
        assert!(matches!(
            p.mul(&p),
            Err(Error::DegreeOverflow { degree: 6000, limit: DEFAULT_DEGREE_LIMIT })
        ));
        let small = ExactSeries::monomial(3).with_degree_limit(4);
        assert!(small.integrate0().is_ok());
        assert!(small.integrate0().unwrap().integrate0().is_err());
    }

    #[test]
    fn truncated_integration_grows_cap_by_one() {
        let g = named::geometric(4);
        assert_eq!(g.integrate0().unwrap().cap(), 5);
        assert_eq!(g.differentiate().cap(), 3);
    }

    #[test]
    fn binomial_series_matches_square_root() {
        let s = named::binomial(0.5, Complex64::new(1.0, 0.0), 40);
        let sq = s.mul(&s).unwrap();
        // (1 − z)^{1/2} squared is 1 − z up to the cap.
        let expect = TaylorSeries::real_polynomial(&[1.0, -1.0]).truncate_to(40);
        assert!(sq.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn composition_with_linear_inner() {
        let f = ep(&[(1, 1), (2, 1), (3, 1)]);
        let inner = ep(&[(0, 1), (-1, 1)]);
        let c = f.compose(&inner, 2).unwrap();
        assert!(c.same_coefficients(&ep(&[(1, 1), (-2, 1), (3, 1)])));
    }
}
