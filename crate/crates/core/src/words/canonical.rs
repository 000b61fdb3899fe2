//! ST-normal forms.
//!
//! On `H₀` every word rewrites, via `M = S + T` and `TS = ST − T²`, into a
//! combination of `S^a T^b`. Constants are tracked separately: an operator
//! acts as `Lf = H(Π₀f) + f(0)·L1`, and `L1` is a polynomial in `g₀` and
//! `g(0)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::coeff::{Coeff, ExactComplex};
use crate::error::{Error, Result};
use crate::words::expr::{BivariatePoly, GOperatorExpr, Letter, Word};

pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

/// `Σ c_{a,b} S^aT^b + Σ s_a S^a + c_I·I + P(g₀, g(0))·δ₀`.
///
/// `st_terms` hold `b ≥ 1`, `s_poly` holds `a ≥ 1`. The rank-one part is the
/// residual that makes the sum equal to the input on all of `H(𝔻)`, not
/// only on `H₀`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CanonicalSTForm {
    st: BTreeMap<(usize, usize), ExactComplex>,
    s_poly: BTreeMap<usize, ExactComplex>,
    identity: ExactComplex,
    rank_one: BivariatePoly,
}

impl CanonicalSTForm {
    /// `(coeff, a, b)` with `b ≥ 1`, ordered by `(a, b)`.
    pub fn st_terms(&self) -> Vec<(ExactComplex, usize, usize)> {
        self.st
            .iter()
            .map(|(&(a, b), c)| (c.clone(), a, b))
            .collect()
    }

    /// Coefficients of `Q(S) = Σ s_a S^a`, `a ≥ 1`.
    pub fn s_poly(&self) -> &BTreeMap<usize, ExactComplex> {
        &self.s_poly
    }

    /// Coefficient of the empty word.
    pub fn identity(&self) -> &ExactComplex {
        &self.identity
    }

    pub fn rank_one(&self) -> &BivariatePoly {
        &self.rank_one
    }

    /// Coefficient of `S^aT^b` for any `(a, b)`, the pure-S and identity
    /// parts included.
    pub fn coeff(&self, a: usize, b: usize) -> ExactComplex {
        match (a, b) {
            (0, 0) => self.identity.clone(),
            (a, 0) => self.s_poly.get(&a).cloned().unwrap_or_else(ExactComplex::zero),
            _ => self.st.get(&(a, b)).cloned().unwrap_or_else(ExactComplex::zero),
        }
    }

    /// All `H₀` terms as one map over `(a, b)`.
    pub fn graded(&self) -> BTreeMap<(usize, usize), ExactComplex> {
        let mut out = self.st.clone();
        for (a, c) in &self.s_poly {
            out.insert((*a, 0), c.clone());
        }
        if !self.identity.is_zero() {
            out.insert((0, 0), self.identity.clone());
        }
        out
    }

    /// Same operator on `H₀`: the rank-one part is ignored.
    pub fn same_on_h0(&self, other: &Self) -> bool {
        self.st == other.st && self.s_poly == other.s_poly && self.identity == other.identity
    }

    /// No `S^aT^b` and no pure-S terms.
    pub fn is_trivial(&self) -> bool {
        self.st.is_empty() && self.s_poly.is_empty()
    }

    /// The form as an operator expression over the words `S^aT^b`.
    pub fn as_expression(&self) -> GOperatorExpr {
        let words = self
            .graded()
            .into_iter()
            .map(|((a, b), c)| (c, Word::st(a, b)));
        GOperatorExpr::from_terms(words).with_rank_one(self.rank_one.clone())
    }

    fn from_graded(
        graded: BTreeMap<(usize, usize), ExactComplex>,
        value_on_one: BivariatePoly,
    ) -> Self {
        let mut form = CanonicalSTForm {
            identity: ExactComplex::zero(),
            ..Default::default()
        };
        let mut h0_on_one = BivariatePoly::zero();
        for ((a, b), c) in graded {
            if c.is_zero() {
                continue;
            }
            h0_on_one = h0_on_one.add(&BivariatePoly::one().apply_word(&Word::st(a, b)).scale(&c));
            match (a, b) {
                (0, 0) => form.identity = c,
                (a, 0) => {
                    form.s_poly.insert(a, c);
                }
                _ => {
                    form.st.insert((a, b), c);
                }
            }
        }
        form.rank_one = value_on_one.add(&h0_on_one.scale(&-ExactComplex::one()));
        form
    }
}

impl fmt::Display for CanonicalSTForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_expression())
    }
}

type Graded = BTreeMap<(usize, usize), BigInt>;

struct Rewriter {
    memo: HashMap<Vec<Letter>, std::rc::Rc<Graded>>,
    produced: usize,
    limit: usize,
}

impl Rewriter {
    fn charge(&mut self, n: usize) -> Result<()> {
        self.produced += n;
        if self.produced > self.limit {
            Err(Error::TermExplosion { limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Normal form of an S/T word.
    fn normal(&mut self, w: &[Letter]) -> Result<std::rc::Rc<Graded>> {
        if let Some(r) = self.memo.get(w) {
            return Ok(r.clone());
        }
        let inversion = w
            .windows(2)
            .position(|p| p[0] == Letter::T && p[1] == Letter::S);
        let out = match inversion {
            None => {
                let a = w.iter().take_while(|&&l| l == Letter::S).count();
                let mut g = Graded::new();
                g.insert((a, w.len() - a), BigInt::one());
                g
            }
            Some(i) => {
                let mut swapped = w.to_vec();
                swapped[i] = Letter::S;
                swapped[i + 1] = Letter::T;
                let mut squared = w.to_vec();
                squared[i + 1] = Letter::T;
                let left = self.normal(&swapped)?;
                let right = self.normal(&squared)?;
                let mut g = (*left).clone();
                for (k, c) in right.iter() {
                    let e = g.entry(*k).or_insert_with(BigInt::zero);
                    *e -= c;
                }
                g.retain(|_, c| !c.is_zero());
                g
            }
        };
        self.charge(out.len().max(1))?;
        let out = std::rc::Rc::new(out);
        self.memo.insert(w.to_vec(), out.clone());
        Ok(out)
    }
}

/// Expands every `M` into `S + T`.
fn eliminate_m(w: &Word, rw: &mut Rewriter) -> Result<Vec<Vec<Letter>>> {
    let mut acc: Vec<Vec<Letter>> = vec![Vec::new()];
    for &l in w.letters() {
        let choices = match l {
            Letter::M => vec![Letter::S, Letter::T],
            other => vec![other],
        };
        rw.charge(acc.len() * (choices.len() - 1))?;
        acc = acc
            .into_iter()
            .flat_map(|p| {
                choices.clone().into_iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    Ok(acc)
}

/// Canonical form with the default term limit.
pub fn canonicalize(expr: &GOperatorExpr) -> Result<CanonicalSTForm> {
    canonicalize_with_limit(expr, DEFAULT_TERM_LIMIT)
}

pub fn canonicalize_with_limit(expr: &GOperatorExpr, limit: usize) -> Result<CanonicalSTForm> {
    let mut rw = Rewriter {
        memo: HashMap::new(),
        produced: 0,
        limit,
    };
    let mut graded: BTreeMap<(usize, usize), ExactComplex> = BTreeMap::new();
    for (w, c) in expr.terms() {
        for st_word in eliminate_m(w, &mut rw)? {
            let nf = rw.normal(&st_word)?;
            for (k, n) in nf.iter() {
                let n = ExactComplex::real(BigRational::from_integer(n.clone()));
                let e = graded.entry(*k).or_insert_with(ExactComplex::zero);
                *e = e.clone() + n * c.clone();
            }
        }
    }
    graded.retain(|_, c| !c.is_zero());
    Ok(CanonicalSTForm::from_graded(graded, expr.value_on_one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(s: &str) -> CanonicalSTForm {
        canonicalize(&GOperatorExpr::parse_word(s).unwrap()).unwrap()
    }

    fn int(n: i64) -> ExactComplex {
        ExactComplex::from_i64(n)
    }

    #[test]
    fn ts_reorders() {
        let f = canon("TS");
        assert_eq!(f.st_terms(), vec![(int(-1), 0, 2), (int(1), 1, 1)]);
        assert!(f.s_poly().is_empty());
    }

    #[test]
    fn m_splits() {
        let f = canon("M");
        assert_eq!(f.st_terms(), vec![(int(1), 0, 1)]);
        assert_eq!(f.s_poly().get(&1), Some(&int(1)));
        // M1 = g = g₀ + g(0) while (S + T)1 = g₀
        assert_eq!(f.rank_one(), &BivariatePoly::monomial(0, 1, int(1)));
    }

    #[test]
    fn t_is_canonical() {
        let f = canon("T");
        assert_eq!(f.st_terms(), vec![(int(1), 0, 1)]);
        assert!(f.rank_one().is_zero());
    }

    #[test]
    fn identity_is_kept() {
        let f = canonicalize(&GOperatorExpr::identity()).unwrap();
        assert_eq!(f.identity(), &int(1));
        assert!(f.is_trivial());
        assert!(f.rank_one().is_zero());
    }

    #[test]
    fn term_guard_trips() {
        let e = GOperatorExpr::parse_word("MMMMMMMMMMMM").unwrap();
        assert_eq!(
            canonicalize_with_limit(&e, 100),
            Err(Error::TermExplosion { limit: 100 })
        );
    }

    #[test]
    fn canonical_is_idempotent() {
        let e = GOperatorExpr::parse_word("MTSMT").unwrap();
        let f = canonicalize(&e).unwrap();
        assert_eq!(canonicalize(&f.as_expression()).unwrap(), f);
    }
}
