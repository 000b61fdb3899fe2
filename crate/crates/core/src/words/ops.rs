use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coeff, ExactComplex};
use crate::error::{Error, Result};
use crate::paraproducts::{apply_operator, Symbol};
use crate::taylor::ExactSeries;
use crate::words::canonical::{canonicalize, CanonicalSTForm, DEFAULT_TERM_LIMIT};
use crate::words::expr::{GOperatorExpr, Word};

/// The word `(S^{q+1}T)^d (S^qT)^{n+j−d}` with `q = ⌊(m−j)/(n+j)⌋` and
/// `d = m − j − (n+j)q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cor22Decomposition {
    pub m: usize,
    pub n: usize,
    pub j: usize,
    pub q: usize,
    pub d: usize,
    pub word: Word,
}

pub fn cor22_decompose(m: usize, n: usize, j: usize) -> Result<Cor22Decomposition> {
    if j > m {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds m = {m}")));
    }
    let k = n + j;
    if k == 0 {
        return Err(Error::DivisionByZero);
    }
    let q = (m - j) / k;
    let d = m - j - k * q;
    let word = Word::st(q + 1, 1).pow(d).concat(&Word::st(q, 1).pow(k - d));
    Ok(Cor22Decomposition { m, n, j, q, d, word })
}

/// The basis `ℒ_{m,n,j}`, `j = 0..=m`, as expressions.
pub fn cor22_basis(m: usize, n: usize) -> Result<Vec<GOperatorExpr>> {
    (0..=m)
        .map(|j| cor22_decompose(m, n, j).map(|c| GOperatorExpr::word(c.word)))
        .collect()
}

/// Expresses `L = ℒ₀ + Σ_{j≥1} a_j ℒ_j` on `H₀` and returns `(a_1, …, a_m)`.
///
/// `basis[j]` must canonicalize with leading term `S^{m−j}T^{n+j}` and no
/// term with a higher S-power; `basis[0]` must lead with coefficient 1.
pub fn rebase(expr: &GOperatorExpr, basis: &[GOperatorExpr]) -> Result<Vec<ExactComplex>> {
    let target = canonicalize(expr)?.graded();
    let (&(m, n), lead) = target
        .iter()
        .max_by_key(|((a, _), _)| *a)
        .ok_or_else(|| Error::Shape("operator is zero on H₀".into()))?;
    if lead != &ExactComplex::one() {
        return Err(Error::Shape(format!("leading coefficient of S^{m}T^{n} is {lead}, not 1")));
    }
    if let Some(((a, b), _)) = target.iter().find(|((a, b), _)| a + b != m + n) {
        return Err(Error::Shape(format!("term S^{a}T^{b} is off the grade {}", m + n)));
    }
    if basis.len() != m + 1 {
        return Err(Error::Shape(format!(
            "expected {} basis elements, got {}",
            m + 1,
            basis.len()
        )));
    }
    let forms = basis
        .iter()
        .map(canonicalize)
        .collect::<Result<Vec<_>>>()?;
    for (j, f) in forms.iter().enumerate() {
        let g = f.graded();
        let lead = f.coeff(m - j, n + j);
        let higher = g.keys().any(|&(a, _)| a > m - j);
        if lead.is_zero() || higher || (j == 0 && lead != ExactComplex::one()) {
            return Err(Error::SingularBasis { index: j });
        }
    }

    let mut residual = target.clone();
    let sub = |residual: &mut std::collections::BTreeMap<_, ExactComplex>,
                   f: &CanonicalSTForm,
                   c: &ExactComplex| {
        for (k, v) in f.graded() {
            let e = residual.entry(k).or_insert_with(ExactComplex::zero);
            *e = e.clone() - v * c.clone();
        }
        residual.retain(|_, v| !v.is_zero());
    };
    sub(&mut residual, &forms[0], &ExactComplex::one());
    let mut a = Vec::with_capacity(m);
    for (j, f) in forms.iter().enumerate().skip(1) {
        let r = residual
            .get(&(m - j, n + j))
            .cloned()
            .unwrap_or_else(ExactComplex::zero);
        let aj = r
            .checked_div(&f.coeff(m - j, n + j))
            .ok_or(Error::SingularBasis { index: j })?;
        sub(&mut residual, f, &aj);
        a.push(aj);
    }
    if !residual.is_empty() {
        return Err(Error::Shape("operator is not in the span of the basis".into()));
    }

    let rebuilt = a
        .iter()
        .zip(&basis[1..])
        .fold(basis[0].clone(), |acc, (c, l)| acc.add(&l.scale(c)));
    if !canonicalize(&rebuilt)?.same_on_h0(&canonicalize(expr)?) {
        return Err(Error::Shape("rebased operator does not reproduce the input".into()));
    }
    Ok(a)
}

/// `[L, T]_k`: `[L,T]₀ = L`, `[L,T]_{k+1} = [L,T]_k T − T [L,T]_k`.
pub fn commutator_iter(expr: &GOperatorExpr, k: usize) -> Result<GOperatorExpr> {
    let t = GOperatorExpr::word(Word::st(0, 1));
    let mut x = expr.clone();
    for _ in 0..k {
        x = x.compose(&t).sub(&t.compose(&x));
        if x.terms().len() > DEFAULT_TERM_LIMIT {
            return Err(Error::TermExplosion {
                limit: DEFAULT_TERM_LIMIT,
            });
        }
    }
    Ok(x)
}

/// An operator is trivial when its ST-form has no `S^aT^b` and no pure-S part.
pub fn is_trivial(expr: &GOperatorExpr) -> Result<bool> {
    Ok(canonicalize(expr)?.is_trivial())
}

/// A pair `(g, f)` with `f(0) = 0` on which two operators differ.
#[derive(Debug, Clone)]
pub struct H0Witness {
    pub g: ExactSeries,
    pub f: ExactSeries,
    pub lhs: ExactSeries,
    pub rhs: ExactSeries,
}

#[derive(Debug, Clone)]
pub struct H0Comparison {
    pub equal: bool,
    pub canonical_agree: bool,
    pub witness: Option<H0Witness>,
}

pub const H0_RANDOM_PAIRS: usize = 10;
const H0_SEED: u64 = 0x5e_ed0f_4a11;

/// Polynomial of degree `≤ deg` with Gaussian-integer coefficients in
/// `[-3, 3] + i[-3, 3]`; the constant term is dropped when `vanish_at_zero`.
pub fn random_gaussian_poly(rng: &mut impl RngExt, deg: usize, vanish_at_zero: bool) -> ExactSeries {
    let coeffs = (0..=deg)
        .map(|k| {
            if k == 0 && vanish_at_zero {
                ExactComplex::zero()
            } else {
                ExactComplex::gaussian(rng.random_range(-3..=3), rng.random_range(-3..=3))
            }
        })
        .collect();
    ExactSeries::polynomial(coeffs)
}

/// Decides `L1 = L2` on `H₀`.
///
/// Canonical forms decide; exact application on `(z, z)` and on ten random
/// pairs of degree ≤ 5 guards against rewriting bugs and supplies the
/// witness.
pub fn equal_on_h0(l1: &GOperatorExpr, l2: &GOperatorExpr) -> Result<H0Comparison> {
    equal_on_h0_seeded(l1, l2, H0_SEED)
}

pub fn equal_on_h0_seeded(l1: &GOperatorExpr, l2: &GOperatorExpr, seed: u64) -> Result<H0Comparison> {
    let canonical_agree = canonicalize(l1)?.same_on_h0(&canonicalize(l2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = vec![(ExactSeries::z(), ExactSeries::z())];
    for _ in 0..H0_RANDOM_PAIRS {
        let g = random_gaussian_poly(&mut rng, 5, false);
        let f = random_gaussian_poly(&mut rng, 5, true);
        pairs.push((g, f));
    }
    for (g, f) in pairs {
        let sym = Symbol::new(g.clone());
        let lhs = apply_operator(l1, &sym, &f)?;
        let rhs = apply_operator(l2, &sym, &f)?;
        if !lhs.same_coefficients(&rhs) {
            return Ok(H0Comparison {
                equal: false,
                canonical_agree,
                witness: Some(H0Witness { g, f, lhs, rhs }),
            });
        }
    }
    Ok(H0Comparison {
        equal: canonical_agree,
        canonical_agree,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GOperatorExpr {
        GOperatorExpr::parse_word(s).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let c = cor22_decompose(4, 2, 0).unwrap();
        assert_eq!((c.q, c.d, c.word.to_string()), (2, 0, "SSTSST".to_string()));
        let c = cor22_decompose(4, 2, 1).unwrap();
        assert_eq!((c.q, c.d, c.word.to_string()), (1, 0, "STSTST".to_string()));
        let c = cor22_decompose(0, 1, 0).unwrap();
        assert_eq!((c.q, c.d, c.word.to_string()), (0, 0, "T".to_string()));
        assert_eq!(cor22_decompose(0, 0, 0), Err(Error::DivisionByZero));
        assert!(cor22_decompose(1, 1, 2).is_err());
    }

    #[test]
    fn rebase_examples() {
        let basis = cor22_basis(2, 1).unwrap();
        assert_eq!(
            rebase(&w("SST"), &basis).unwrap(),
            vec![ExactComplex::zero(), ExactComplex::zero()]
        );
        let l = w("SST").add(&w("STT").scale(&ExactComplex::from_i64(3)));
        assert_eq!(
            rebase(&l, &basis).unwrap(),
            vec![ExactComplex::from_i64(3), ExactComplex::zero()]
        );
        assert_eq!(
            rebase(&w("ST"), &cor22_basis(1, 1).unwrap()).unwrap(),
            vec![ExactComplex::zero()]
        );
    }

    #[test]
    fn rebase_rejects_bad_shapes() {
        let basis = cor22_basis(2, 1).unwrap();
        let l = w("SST").scale(&ExactComplex::from_i64(2));
        assert!(matches!(rebase(&l, &basis), Err(Error::Shape(_))));
        let mut bad = basis.clone();
        bad[1] = w("SST");
        assert_eq!(rebase(&w("SST"), &bad), Err(Error::SingularBasis { index: 1 }));
    }

    #[test]
    fn commutator_examples() {
        let c = canonicalize(&commutator_iter(&w("S"), 1).unwrap()).unwrap();
        assert_eq!(c.st_terms(), vec![(ExactComplex::one(), 0, 2)]);
        assert!(c.s_poly().is_empty());
        for k in 1..4 {
            assert_eq!(commutator_iter(&w("T"), k).unwrap(), GOperatorExpr::zero());
        }
        let c = canonicalize(&commutator_iter(&w("SST"), 2).unwrap()).unwrap();
        assert_eq!(c.st_terms(), vec![(ExactComplex::from_i64(2), 0, 5)]);
    }

    #[test]
    fn h0_equality_examples() {
        let r = equal_on_h0(&w("M"), &w("S").add(&w("T"))).unwrap();
        assert!(r.equal && r.canonical_agree);
        let r = equal_on_h0(&w("ST"), &w("TS")).unwrap();
        assert!(!r.equal);
        let wit = r.witness.unwrap();
        assert!(wit.g.same_coefficients(&ExactSeries::z()));
        assert_eq!(wit.lhs.coeff(3), ExactComplex::from_ratio(1, 3));
        assert_eq!(wit.rhs.coeff(3), ExactComplex::from_ratio(1, 6));
        let l = w("MTS").add(&w("TT").scale(&ExactComplex::gaussian(2, -1)));
        assert!(equal_on_h0(&l, &l).unwrap().equal);
    }

    #[test]
    fn trivial_predicate() {
        assert!(is_trivial(&GOperatorExpr::delta0()).unwrap());
        assert!(is_trivial(&w("M").sub(&w("S")).sub(&w("T"))).unwrap());
        assert!(!is_trivial(&w("TS")).unwrap());
    }
}
