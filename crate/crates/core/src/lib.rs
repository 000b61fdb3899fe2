//! Analytic paraproducts `M_g`, `S_g`, `T_g` on weighted Bergman spaces.
//!
//! The crate has two halves. The exact half normalizes g-operators (linear
//! combinations of words in the three paraproducts) to their ST-canonical
//! form over Gaussian rationals, and checks operator identities by exact
//! application to polynomials. The numeric half computes `A^p_ω`, tent-space
//! and maximal-function norms for radial weights, a handful of symbol
//! seminorms, and certified lower bounds for operator norms.
//!
//! Modules:
//! - [`taylor`]: truncated and exact Taylor polynomials ([`taylor::Series`]).
//! - [`weights`]: radial weight descriptors, tails, moments, doubling tests.
//! - [`norms`]: Bergman, tent, maximal-function norms and seminorms.
//! - [`paraproducts`]: the operators themselves and word application.
//! - [`words`]: ST-canonical forms, decompositions and commutators.
//! - [`opnorm`]: operator-norm lower bounds and experiment drivers.
//! - [`literal`]: JSON literal formats for series, weights and operators.

pub mod coeff;
pub mod error;
pub mod literal;
pub mod norms;
pub mod opnorm;
pub mod paraproducts;
pub mod quadrature;
pub mod taylor;
pub mod weights;
pub mod words;

pub use coeff::{Coeff, Complex64, ExactComplex};
pub use error::{Error, Result};
pub use taylor::{ExactSeries, Exactness, Series, TaylorSeries};
