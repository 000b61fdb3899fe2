//! Coefficient backends for [`Series`](crate::taylor::Series).
//!
//! Two rings are provided: [`ExactComplex`] (Gaussian rationals over
//! arbitrary-precision integers) for identity checking, and `Complex64` for
//! quadrature. Both implement [`Coeff`].

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Complex;

pub type Complex64 = Complex<f64>;

/// Ring operations needed by series arithmetic and the paraproducts.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// True for backends whose arithmetic is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    /// The rational number `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn from_exact(z: &ExactComplex) -> Self;
    fn div_int(&self, n: u64) -> Self;
    fn mul_int(&self, n: u64) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// `|self| <= 1`, decided exactly when the backend allows it.
    fn modulus_at_most_one(&self) -> bool;
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn from_exact(z: &ExactComplex) -> Self {
        z.to_c64()
    }
    fn div_int(&self, n: u64) -> Self {
        self / n as f64
    }
    fn mul_int(&self, n: u64) -> Self {
        self * n as f64
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus_at_most_one(&self) -> bool {
        // from_polar(1, θ) can land a few ulps outside the circle
        self.norm_sqr() <= 1.0 + 8.0 * f64::EPSILON
    }
}

/// A Gaussian rational `re + i·im` with exact arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ExactComplex {
            re,
            im: BigRational::zero(),
        }
    }

    /// `a + b i` with integer parts.
    pub fn gaussian(a: i64, b: i64) -> Self {
        ExactComplex::new(
            BigRational::from_integer(BigInt::from(a)),
            BigRational::from_integer(BigInt::from(b)),
        )
    }

    pub fn i() -> Self {
        ExactComplex::gaussian(0, 1)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient; `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &ExactComplex) -> Option<ExactComplex> {
        let den = rhs.norm_sqr();
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &den;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &den;
        Some(ExactComplex { re, im })
    }

    /// Exact conversion: every finite double is a dyadic rational.
    pub fn from_f64_pair(re: f64, im: f64) -> Option<Self> {
        Some(ExactComplex::new(
            BigRational::from_float(re)?,
            BigRational::from_float(im)?,
        ))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Default for ExactComplex {
    fn default() -> Self {
        ExactComplex::gaussian(0, 0)
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Coeff for ExactComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        ExactComplex::gaussian(0, 0)
    }
    fn one() -> Self {
        ExactComplex::gaussian(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        ExactComplex::gaussian(n, 0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        ExactComplex::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
    fn from_c64(z: Complex64) -> Self {
        ExactComplex::from_f64_pair(z.re, z.im).expect("finite coefficient")
    }
    fn from_exact(z: &ExactComplex) -> Self {
        z.clone()
    }
    fn div_int(&self, n: u64) -> Self {
        let d = BigRational::from_integer(BigInt::from(n));
        ExactComplex::new(&self.re / &d, &self.im / &d)
    }
    fn mul_int(&self, n: u64) -> Self {
        let m = BigRational::from_integer(BigInt::from(n));
        ExactComplex::new(&self.re * &m, &self.im * &m)
    }
    fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn modulus_at_most_one(&self) -> bool {
        self.norm_sqr() <= BigRational::one()
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: Self) -> Self {
        ExactComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: Self) -> Self {
        ExactComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        ExactComplex::new(re, im)
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> Self {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl Div for ExactComplex {
    type Output = ExactComplex;
    /// Panics on division by zero; use [`ExactComplex::checked_div`] otherwise.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero ExactComplex")
    }
}

impl Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Error for malformed rational literals.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational literal `{0}` (expected \"p\" or \"p/q\" with q != 0)")]
pub struct ParseRationalError(pub String);

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| err()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
