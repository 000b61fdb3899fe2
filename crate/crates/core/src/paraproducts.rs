//! The paraproducts `M_g f = fg`, `S_g f = ∫₀ᶻ f'g`, `T_g f = ∫₀ᶻ fg'`,
//! and their words and linear combinations acting on series.

use crate::coeff::Coeff;
use crate::error::Result;
use crate::taylor::Series;
use crate::words::{BivariatePoly, GOperatorExpr, Letter, Word};

/// A symbol `g` with its cached derivative and `g₀ = Π₀g`.
#[derive(Debug, Clone)]
pub struct Symbol<C> {
    g: Series<C>,
    g0: Series<C>,
    dg: Series<C>,
}

impl<C: Coeff> Symbol<C> {
    pub fn new(g: Series<C>) -> Self {
        let g0 = g.pi0();
        let dg = g.differentiate();
        Symbol { g, g0, dg }
    }

    pub fn g(&self) -> &Series<C> {
        &self.g
    }

    pub fn g0(&self) -> &Series<C> {
        &self.g0
    }

    pub fn g_at_zero(&self) -> C {
        self.g.value_at_zero()
    }

    /// The symbol `g_λ`.
    pub fn dilate(&self, lambda: &C) -> Result<Self> {
        Ok(Symbol::new(self.g.dilate(lambda)?))
    }
}

pub fn apply_m<C: Coeff>(sym: &Symbol<C>, f: &Series<C>) -> Result<Series<C>> {
    f.mul(&sym.g)
}

pub fn apply_s<C: Coeff>(sym: &Symbol<C>, f: &Series<C>) -> Result<Series<C>> {
    f.differentiate().mul(&sym.g)?.integrate0()
}

pub fn apply_t<C: Coeff>(sym: &Symbol<C>, f: &Series<C>) -> Result<Series<C>> {
    f.mul(&sym.dg)?.integrate0()
}

pub fn apply_letter<C: Coeff>(letter: Letter, sym: &Symbol<C>, f: &Series<C>) -> Result<Series<C>> {
    match letter {
        Letter::M => apply_m(sym, f),
        Letter::S => apply_s(sym, f),
        Letter::T => apply_t(sym, f),
    }
}

/// `L₁⋯L_N f`, applying `L_N` first. The empty word is the identity.
pub fn apply_word<C: Coeff>(word: &Word, sym: &Symbol<C>, f: &Series<C>) -> Result<Series<C>> {
    word.letters()
        .iter()
        .rev()
        .try_fold(f.clone(), |acc, &l| apply_letter(l, sym, &acc))
}

/// The function `P(g₀, g(0))`.
pub fn eval_bivariate<C: Coeff>(p: &BivariatePoly, sym: &Symbol<C>) -> Result<Series<C>> {
    let y = sym.g_at_zero();
    let mut acc = Series::zero();
    for ((i, j), c) in p.terms() {
        let mut coeff = C::from_exact(c);
        for _ in 0..*j {
            coeff = coeff * y.clone();
        }
        let term = sym.g0.pow(*i)?.scale(&coeff);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Applies `Σ c_w w + P(g₀, g(0))δ₀` to `f`.
pub fn apply_operator<C: Coeff>(
    op: &GOperatorExpr,
    sym: &Symbol<C>,
    f: &Series<C>,
) -> Result<Series<C>> {
    let mut acc = Series::zero();
    for (w, c) in op.terms() {
        let v = apply_word(w, sym, f)?;
        acc = acc.add(&v.scale(&C::from_exact(c)));
    }
    if !op.rank_one().is_zero() {
        let p = eval_bivariate(op.rank_one(), sym)?;
        acc = acc.add(&p.scale(&f.value_at_zero()));
    }
    Ok(acc)
}

/// `L_{g_λ} f`, the dilated operator applied to `f`.
pub fn dilated_operator<C: Coeff>(
    op: &GOperatorExpr,
    sym: &Symbol<C>,
    lambda: &C,
    f: &Series<C>,
) -> Result<Series<C>> {
    apply_operator(op, &sym.dilate(lambda)?, f)
}
