//! Letters, words, and formal g-operators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coeff::{Coeff, ExactComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    M,
    S,
    T,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::M => 'M',
            Letter::S => 'S',
            Letter::T => 'T',
        }
    }
}

/// A g-word `L₁⋯L_N`. Application is right to left: `L_N` acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// `S^a T^b`.
    pub fn st(a: usize, b: usize) -> Self {
        let mut v = vec![Letter::S; a];
        v.extend(std::iter::repeat_n(Letter::T, b));
        Word(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Letter counts `(#M, #S, #T)`.
    pub fn class(&self) -> (usize, usize, usize) {
        self.0.iter().fold((0, 0, 0), |(l, m, n), x| match x {
            Letter::M => (l + 1, m, n),
            Letter::S => (l, m + 1, n),
            Letter::T => (l, m, n + 1),
        })
    }

    /// `Some(ℓ)` if the word is `M^ℓ` (including the empty word).
    pub fn pure_m_power(&self) -> Option<u32> {
        self.0
            .iter()
            .all(|&x| x == Letter::M)
            .then_some(self.0.len() as u32)
    }
}

/// Letter counts `(ℓ, m, n)` of a word.
pub fn word_class(word: &Word) -> (usize, usize, usize) {
    word.class()
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'M' => Ok(Letter::M),
                'S' => Ok(Letter::S),
                'T' => Ok(Letter::T),
                other => Err(Error::Parse(format!(
                    "word letter `{other}` (expected M, S or T)"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Polynomial `Σ p_ij x^i y^j`; in a rank-one term `x = g − g(0)`, `y = g(0)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), ExactComplex>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn one() -> Self {
        BivariatePoly::monomial(0, 0, ExactComplex::one())
    }

    pub fn monomial(i: u32, j: u32, c: ExactComplex) -> Self {
        let mut p = BivariatePoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), ExactComplex> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(ExactComplex::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let mut out = BivariatePoly::zero();
        for ((i, j), a) in &self.terms {
            out.add_term(*i, *j, a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BivariatePoly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }

    /// `P(0, y)`: the value at the origin of the function `P(g₀, g(0))`.
    pub fn at_x_zero(&self) -> Self {
        let mut out = BivariatePoly::zero();
        for ((i, j), c) in &self.terms {
            if *i == 0 {
                out.add_term(0, *j, c.clone());
            }
        }
        out
    }

    /// The effect of one paraproduct letter on the function `P(g₀, g(0))`.
    ///
    /// `M: P ↦ (x + y)P`, `T: x^k ↦ x^{k+1}/(k+1)`, and
    /// `S: x^k ↦ k/(k+1)·x^{k+1} + y·x^k` for `k ≥ 1`, `S: 1 ↦ 0`.
    pub fn apply_letter(&self, letter: Letter) -> Self {
        let mut out = BivariatePoly::zero();
        for ((i, j), c) in &self.terms {
            match letter {
                Letter::M => {
                    out.add_term(i + 1, *j, c.clone());
                    out.add_term(*i, j + 1, c.clone());
                }
                Letter::T => out.add_term(i + 1, *j, c.div_int(*i as u64 + 1)),
                Letter::S => {
                    if *i >= 1 {
                        out.add_term(i + 1, *j, c.mul_int(*i as u64).div_int(*i as u64 + 1));
                        out.add_term(*i, j + 1, c.clone());
                    }
                }
            }
        }
        out
    }

    /// Applies a word right to left.
    pub fn apply_word(&self, word: &Word) -> Self {
        word.letters()
            .iter()
            .rev()
            .fold(self.clone(), |p, &l| p.apply_letter(l))
    }
}

/// A formal g-operator: `Σ c_w · w + P(g − g(0), g(0))·δ₀`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GOperatorExpr {
    terms: BTreeMap<Word, ExactComplex>,
    rank_one: BivariatePoly,
}

impl GOperatorExpr {
    pub fn zero() -> Self {
        GOperatorExpr::default()
    }

    pub fn identity() -> Self {
        GOperatorExpr::word(Word::identity())
    }

    pub fn word(w: Word) -> Self {
        GOperatorExpr::from_terms(vec![(ExactComplex::one(), w)])
    }

    /// Parses a word literal such as `"SST"`.
    pub fn parse_word(s: &str) -> Result<Self> {
        Ok(GOperatorExpr::word(s.parse()?))
    }

    /// The evaluation functional `δ₀` (as the operator `f ↦ f(0)`).
    pub fn delta0() -> Self {
        GOperatorExpr::rank_one_only(BivariatePoly::one())
    }

    pub fn rank_one_only(p: BivariatePoly) -> Self {
        GOperatorExpr {
            terms: BTreeMap::new(),
            rank_one: p,
        }
    }

    /// Builds from `(coefficient, word)` pairs; duplicate words are merged.
    pub fn from_terms(terms: impl IntoIterator<Item = (ExactComplex, Word)>) -> Self {
        let mut e = GOperatorExpr::zero();
        for (c, w) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn with_rank_one(mut self, p: BivariatePoly) -> Self {
        self.rank_one = p;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Word, ExactComplex> {
        &self.terms
    }

    pub fn rank_one(&self) -> &BivariatePoly {
        &self.rank_one
    }

    pub fn add_term(&mut self, w: Word, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(ExactComplex::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out.rank_one = out.rank_one.add(&rhs.rank_one);
        out
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let mut out = GOperatorExpr::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.clone() * c.clone());
        }
        out.rank_one = self.rank_one.scale(c);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-ExactComplex::one()))
    }

    /// Applies the word part to the bivariate function `Q(g₀, g(0))`.
    fn apply_words_to(&self, q: &BivariatePoly) -> BivariatePoly {
        self.terms.iter().fold(BivariatePoly::zero(), |acc, (w, c)| {
            acc.add(&q.apply_word(w).scale(c))
        })
    }

    /// `L1` as a polynomial in `(g₀, g(0))`.
    pub fn value_on_one(&self) -> BivariatePoly {
        self.apply_words_to(&BivariatePoly::one()).add(&self.rank_one)
    }

    /// Operator product `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = GOperatorExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1.clone() * c2.clone());
            }
        }
        // A∘(Qδ₀) = (A Q)δ₀
        let mut r = self.apply_words_to(&rhs.rank_one);
        if !self.rank_one.is_zero() {
            // (Rδ₀)∘B: (w f)(0) = g(0)^ℓ f(0) for w = M^ℓ, and 0 otherwise.
            let mut b_at_zero = BivariatePoly::zero();
            for (w, c) in &rhs.terms {
                if let Some(l) = w.pure_m_power() {
                    b_at_zero.add_term(0, l, c.clone());
                }
            }
            // (Rδ₀)(Qδ₀) = R·Q(0, g(0))δ₀
            b_at_zero = b_at_zero.add(&rhs.rank_one.at_x_zero());
            r = r.add(&self.rank_one.mul(&b_at_zero));
        }
        out.rank_one = r;
        out
    }

    /// `self^k` under composition.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(GOperatorExpr::identity(), |acc, _| acc.compose(self))
    }

    /// Longest word length.
    pub fn max_letters(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }
}

impl fmt::Display for GOperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let w = if w.is_empty() { "I".to_string() } else { w.to_string() };
            write!(f, "({c}){w}")?;
        }
        if !self.rank_one.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[")?;
            let mut inner = true;
            for ((i, j), c) in self.rank_one.terms() {
                if !inner {
                    write!(f, " + ")?;
                }
                inner = false;
                write!(f, "({c})x^{i}y^{j}")?;
            }
            write!(f, "]δ₀")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
