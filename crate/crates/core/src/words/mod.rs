//! Exact algebra of g-operators: words, ST-normal forms, graded basis
//! words, iterated commutators with `T`, and equality on `H₀`.

mod canonical;
mod expr;
mod ops;
mod suite;

pub use canonical::{canonicalize, canonicalize_with_limit, CanonicalSTForm, DEFAULT_TERM_LIMIT};
pub use expr::{word_class, BivariatePoly, GOperatorExpr, Letter, Word};
pub use ops::{
    commutator_iter, cor22_basis, cor22_decompose, equal_on_h0, equal_on_h0_seeded, is_trivial,
    random_gaussian_poly, rebase, Cor22Decomposition, H0Comparison, H0Witness, H0_RANDOM_PAIRS,
};
pub use suite::{run_identity_suite, IdentitySuiteReport};
