//! Certified lower bounds for operator norms `‖L‖ = sup ‖Lf‖/‖f‖` on
//! `A^p_ω` (or `A^p_ω(0)`), and the experiments built on them.
//!
//! Nothing here bounds a norm from above.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Complex64, ExactComplex};
use crate::error::{Error, Result};
use crate::norms::{bergman_norm, QuadratureConfig, TRUNCATION_TOLERANCE};
use crate::paraproducts::{apply_operator, Symbol};
use crate::taylor::{named, ExactSeries, Series, TaylorSeries};
use crate::weights::{beta_exponent, default_grid, RadialWeightDescriptor};
use crate::words::{random_gaussian_poly, GOperatorExpr, Word};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `z^k`, `k = 0..=max_degree`.
    Monomials { max_degree: usize },
    /// Polynomials with standard complex normal coefficients and uniform
    /// degree in `0..=max_degree`, drawn sequentially from `seed`, so a family
    /// of `2n` members extends the family of `n`.
    RandomPolys { count: usize, max_degree: usize, seed: u64 },
    /// `h_ξ = ((1−|ξ|)^η / (ω̂(|ξ|)(1−ξ̄z)^{η+1}))^{1/p}` truncated at `cap`;
    /// `η` defaults to `β(ω) + 1`.
    DoublingKernels {
        eta: Option<f64>,
        moduli: Vec<f64>,
        angles: usize,
        cap: usize,
    },
    Custom { series: Vec<TaylorSeries> },
}

impl FamilyKind {
    pub fn default_kernels() -> Self {
        FamilyKind::DoublingKernels {
            eta: None,
            moduli: vec![0.5, 0.7, 0.9, 0.95],
            angles: 8,
            cap: 512,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFamily {
    pub kind: FamilyKind,
    /// Project every member onto `H₀` (`f ↦ f − f(0)`).
    pub restrict_h0: bool,
}

/// A family member with a human-readable id.
#[derive(Debug, Clone)]
pub struct Member {
    pub id: String,
    pub f: TaylorSeries,
}

impl TestFamily {
    pub fn new(kind: FamilyKind) -> Self {
        TestFamily {
            kind,
            restrict_h0: false,
        }
    }

    pub fn on_h0(mut self) -> Self {
        self.restrict_h0 = true;
        self
    }

    /// Members for exponent `p` and weight `ω`; zero members are dropped
    /// after projection (only `z⁰` and constant draws can vanish).
    pub fn members(&self, p: f64, w: &RadialWeightDescriptor) -> Result<Vec<Member>> {
        self.members_at_cap(p, w, None)
    }

    fn members_at_cap(&self, p: f64, w: &RadialWeightDescriptor, cap_override: Option<usize>) -> Result<Vec<Member>> {
        let raw: Vec<Member> = match &self.kind {
            FamilyKind::Monomials { max_degree } => (0..=*max_degree)
                .map(|k| Member {
                    id: format!("z^{k}"),
                    f: TaylorSeries::monomial(k),
                })
                .collect(),
            FamilyKind::RandomPolys { count, max_degree, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|i| {
                        let deg = rng.random_range(0..=*max_degree);
                        let c = (0..=deg)
                            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                            .collect();
                        Member {
                            id: format!("random#{i}"),
                            f: Series::polynomial(c),
                        }
                    })
                    .collect()
            }
            FamilyKind::DoublingKernels { eta, moduli, angles, cap } => {
                let eta = match eta {
                    Some(e) => *e,
                    None => beta_exponent(w, &default_grid())?.beta + 1.0,
                };
                let cap = cap_override.unwrap_or(*cap);
                let mut out = Vec::new();
                for &m in moduli {
                    if !(0.0..1.0).contains(&m) {
                        return Err(Error::Domain(format!("kernel point |ξ| = {m} outside the disc")));
                    }
                    for j in 0..*angles {
                        let xi = Complex64::from_polar(m, 2.0 * std::f64::consts::PI * j as f64 / *angles as f64);
                        let scale = ((1.0 - m).powf(eta) / w.omega_hat(m)?).powf(1.0 / p);
                        let h = named::binomial(-(eta + 1.0) / p, xi.conj(), cap).scale(&Complex64::new(scale, 0.0));
                        out.push(Member {
                            id: format!("h_xi(|xi|={m}, arg={j}/{angles}·2pi, eta={eta})"),
                            f: h,
                        });
                    }
                }
                out
            }
            FamilyKind::Custom { series } => series
                .iter()
                .enumerate()
                .map(|(i, f)| Member {
                    id: format!("custom#{i}"),
                    f: f.clone(),
                })
                .collect(),
        };
        let out: Vec<Member> = raw
            .into_iter()
            .map(|m| if self.restrict_h0 { Member { f: m.f.pi0(), ..m } } else { m })
            .filter(|m| !(self.restrict_h0 && m.f.is_zero()))
            .collect();
        if out.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(out)
    }
}

/// Shared numerical setting of the experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpNormSetup {
    pub p: f64,
    pub weight: RadialWeightDescriptor,
    pub quadrature: QuadratureConfig,
    /// Iterations of the perturbation ascent on the best witness.
    pub refine: usize,
    /// Seed of the perturbation ascent.
    pub seed: u64,
}

impl OpNormSetup {
    pub fn new(p: f64, weight: RadialWeightDescriptor, refine: usize, seed: u64) -> Self {
        OpNormSetup {
            p,
            weight,
            quadrature: QuadratureConfig::default(),
            refine,
            seed,
        }
    }

    fn norm(&self, f: &TaylorSeries) -> Result<f64> {
        Ok(bergman_norm(f, self.p, &self.weight, &self.quadrature)?.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpNormEstimate {
    /// `max ‖Lf‖/‖f‖` over everything evaluated; a certified lower bound.
    pub lower_bound: f64,
    /// Best ratio over the family alone (monotone under family inclusion).
    pub family_bound: f64,
    pub best_witness: String,
    pub family: TestFamily,
    pub refine_steps: usize,
    /// Accepted ascent moves.
    pub improvements: usize,
    /// Kernel families only: the family bound moved by more than the
    /// truncation tolerance when the cap was doubled.
    pub truncation_limited: bool,
    pub label: String,
}

fn ratio(op: &GOperatorExpr, sym: &Symbol<Complex64>, f: &TaylorSeries, s: &OpNormSetup) -> Result<Option<f64>> {
    let d = s.norm(f)?;
    if d == 0.0 {
        return Ok(None);
    }
    Ok(Some(s.norm(&apply_operator(op, sym, f)?)? / d))
}

/// Ratios `‖Lf‖/‖f‖` for every member, in family order.
pub fn family_ratios(
    op: &GOperatorExpr,
    g: &TaylorSeries,
    family: &TestFamily,
    setup: &OpNormSetup,
) -> Result<Vec<(Member, f64)>> {
    let members = family.members(setup.p, &setup.weight)?;
    member_ratios(op, &Symbol::new(g.clone()), members, setup)
}

fn member_ratios(
    op: &GOperatorExpr,
    sym: &Symbol<Complex64>,
    members: Vec<Member>,
    setup: &OpNormSetup,
) -> Result<Vec<(Member, f64)>> {
    let ratios = members
        .par_iter()
        .enumerate()
        .map(|(i, m)| ratio(op, sym, &m.f, setup)?.ok_or(Error::ZeroNormWitness { index: i }))
        .collect::<Result<Vec<f64>>>()?;
    Ok(members.into_iter().zip(ratios).collect())
}

fn best(rs: &[(Member, f64)]) -> (usize, f64) {
    rs.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (i, r)| if r.1 > b.1 { (i, r.1) } else { b })
}

/// Best ratio over the family followed by a random coordinate ascent on the
/// best witness.
pub fn opnorm_lower(
    op: &GOperatorExpr,
    g: &TaylorSeries,
    family: &TestFamily,
    setup: &OpNormSetup,
) -> Result<OpNormEstimate> {
    let sym = Symbol::new(g.clone());
    let rs = member_ratios(op, &sym, family.members(setup.p, &setup.weight)?, setup)?;
    let (i, family_bound) = best(&rs);
    let mut witness = rs[i].0.f.clone();
    let mut value = family_bound;

    // ascent: one coordinate at a time, step halved after a run of rejections
    let mut rng = ChaCha8Rng::seed_from_u64(setup.seed);
    let mut c = witness.coeffs().to_vec();
    c.extend([Complex64::new(0.0, 0.0); 2]);
    let lo = usize::from(family.restrict_h0);
    let mut step = 0.25 * c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut improvements = 0;
    let mut misses = 0;
    for _ in 0..setup.refine {
        let k = rng.random_range(lo..c.len());
        let delta = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * step;
        let mut trial = c.clone();
        trial[k] += delta;
        let f = rebuild(&witness, trial.clone());
        if let Some(r) = ratio(op, &sym, &f, setup)? {
            if r > value {
                value = r;
                c = trial;
                witness = f;
                improvements += 1;
                misses = 0;
                continue;
            }
        }
        misses += 1;
        if misses >= 8 {
            step *= 0.5;
            misses = 0;
        }
    }

    let truncation_limited = match &family.kind {
        FamilyKind::DoublingKernels { cap, .. } => {
            let twice = member_ratios(op, &sym, family.members_at_cap(setup.p, &setup.weight, Some(2 * cap))?, setup)?;
            let b2 = best(&twice).1;
            (b2 - family_bound).abs() > TRUNCATION_TOLERANCE * b2.abs().max(family_bound.abs())
        }
        _ => false,
    };
    Ok(OpNormEstimate {
        lower_bound: value.max(0.0),
        family_bound: family_bound.max(0.0),
        best_witness: if improvements > 0 {
            format!("{} (perturbed)", rs[i].0.id)
        } else {
            rs[i].0.id.clone()
        },
        family: family.clone(),
        refine_steps: setup.refine,
        improvements,
        truncation_limited,
        label: "certified lower bound".into(),
    })
}

/// A coefficient vector in the same truncation regime as `like`.
fn rebuild(like: &TaylorSeries, c: Vec<Complex64>) -> TaylorSeries {
    if like.is_exact() {
        Series::polynomial(c)
    } else {
        Series::truncated(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadicalityRow {
    pub m: usize,
    /// Lower bound for `‖(1/m)T_{g^m}‖`.
    pub lower_bound: f64,
    pub root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadicalityTable {
    pub rows: Vec<RadicalityRow>,
    /// `max_{m<n} L_m^{1/m} / L_n^{1/n}` over pairs with `L_n > 0`.
    pub fitted_c: Option<f64>,
    pub label: String,
}

pub const RADICALITY_MAX_N: usize = 6;

/// `L_m = ‖(1/m)T_{g^m}‖` (lower bounds) for `m = 1..=n_max`.
pub fn radicality_experiment(
    g: &TaylorSeries,
    n_max: usize,
    family: &TestFamily,
    setup: &OpNormSetup,
) -> Result<RadicalityTable> {
    if n_max == 0 || n_max > RADICALITY_MAX_N {
        return Err(Error::InvalidParameter(format!("n_max must lie in 1..={RADICALITY_MAX_N}")));
    }
    let t = GOperatorExpr::word(Word::st(0, 1));
    let mut rows = Vec::with_capacity(n_max);
    let mut gm = TaylorSeries::one();
    for m in 1..=n_max {
        gm = gm.mul(g)?;
        let sym_m = gm.scale(&Complex64::new(1.0 / m as f64, 0.0));
        let lb = opnorm_lower(&t, &sym_m, family, setup)?.lower_bound;
        rows.push(RadicalityRow {
            m,
            lower_bound: lb,
            root: lb.powf(1.0 / m as f64),
        });
    }
    let mut fitted: Option<f64> = None;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if b.root > 0.0 {
                let q = a.root / b.root;
                fitted = Some(fitted.map_or(q, |c| c.max(q)));
            }
        }
    }
    Ok(RadicalityTable {
        rows,
        fitted_c: fitted,
        label: "illustration: lower bounds only, the two-sided estimate is not verified".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLemmaReport {
    pub n: usize,
    /// `(member id, C_f = ‖Tⁿf‖² / (‖Tⁿ⁺¹f‖·‖Tⁿ⁻¹f‖))`.
    pub constants: Vec<(String, f64)>,
    /// Members with `Tⁿ⁺¹f = 0` or `Tⁿ⁻¹f = 0`.
    pub degenerate: Vec<String>,
    pub max: f64,
    pub median: f64,
}

/// Empirical constants of `‖Tⁿf‖² ≲ ‖Tⁿ⁺¹f‖‖Tⁿ⁻¹f‖` over a family.
pub fn power_lemma_check(
    g: &TaylorSeries,
    n: usize,
    family: &TestFamily,
    setup: &OpNormSetup,
) -> Result<PowerLemmaReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("the power lemma needs n ≥ 1".into()));
    }
    let sym = Symbol::new(g.clone());
    let t = GOperatorExpr::word(Word::st(0, 1));
    let members = family.members(setup.p, &setup.weight)?;
    let rows = members
        .par_iter()
        .map(|m| {
            let mut powers = vec![m.f.clone()];
            for _ in 0..=n {
                let next = apply_operator(&t, &sym, powers.last().unwrap())?;
                powers.push(next);
            }
            let lo = setup.norm(&powers[n - 1])?;
            let mid = setup.norm(&powers[n])?;
            let hi = setup.norm(&powers[n + 1])?;
            Ok(if lo > 0.0 && hi > 0.0 {
                Ok((m.id.clone(), mid * mid / (hi * lo)))
            } else {
                Err(m.id.clone())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut constants = Vec::new();
    let mut degenerate = Vec::new();
    for r in rows {
        match r {
            Ok(c) => constants.push(c),
            Err(id) => degenerate.push(id),
        }
    }
    if constants.is_empty() {
        return Err(Error::DegenerateFamily);
    }
    let mut sorted: Vec<f64> = constants.iter().map(|c| c.1).collect();
    sorted.sort_by(f64::total_cmp);
    let k = sorted.len();
    let median = if k % 2 == 1 {
        sorted[k / 2]
    } else {
        0.5 * (sorted[k / 2 - 1] + sorted[k / 2])
    };
    Ok(PowerLemmaReport {
        n,
        max: sorted[k - 1],
        median,
        constants,
        degenerate,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub identity: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoLetterSurvey {
    /// Lower bounds for the nine words `MM, MS, …, TT`.
    pub rows: Vec<(String, OpNormEstimate)>,
    pub identities: Vec<IdentityVerdict>,
}

const IDENTITY_TRIALS: usize = 8;

/// Exact check of `MM = M_{g²}`, `SS = S_{g²}`, `ST = TM = ½T_{g²}` on random
/// Gaussian-integer polynomials, using the exact binary value of `g`.
pub fn two_letter_identities(g: &TaylorSeries, seed: u64) -> Result<Vec<IdentityVerdict>> {
    let ge = ExactSeries::from_c64(g);
    let sym = Symbol::new(ge.clone());
    let sym2 = Symbol::new(ge.mul(&ge)?);
    let half = ExactComplex::from_ratio(1, 2);
    let w = |s: &str| GOperatorExpr::parse_word(s);
    let cases = [
        ("MM = M_{g^2}", w("MM")?, w("M")?, ExactComplex::from_i64(1)),
        ("SS = S_{g^2}", w("SS")?, w("S")?, ExactComplex::from_i64(1)),
        ("ST = (1/2)T_{g^2}", w("ST")?, w("T")?, half.clone()),
        ("TM = (1/2)T_{g^2}", w("TM")?, w("T")?, half),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<ExactSeries> = (0..IDENTITY_TRIALS)
        .map(|_| random_gaussian_poly(&mut rng, 5, false))
        .collect();
    cases
        .into_iter()
        .map(|(name, lhs, rhs, c)| {
            let holds = fs.iter().try_fold(true, |ok, f| -> Result<bool> {
                let a = apply_operator(&lhs, &sym, f)?;
                let b = apply_operator(&rhs, &sym2, f)?.scale(&c);
                Ok(ok && a.same_coefficients(&b))
            })?;
            Ok(IdentityVerdict {
                identity: name.into(),
                holds,
            })
        })
        .collect()
}

/// Lower bounds for all nine two-letter words, plus the exact identities.
pub fn two_letter_survey(g: &TaylorSeries, family: &TestFamily, setup: &OpNormSetup) -> Result<TwoLetterSurvey> {
    let letters = ["M", "S", "T"];
    let mut rows = Vec::with_capacity(9);
    for a in letters {
        for b in letters {
            let word = format!("{a}{b}");
            let est = opnorm_lower(&GOperatorExpr::parse_word(&word)?, g, family, setup)?;
            rows.push((word, est));
        }
    }
    Ok(TwoLetterSurvey {
        rows,
        identities: two_letter_identities(g, setup.seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> OpNormSetup {
        OpNormSetup::new(2.0, RadialWeightDescriptor::standard(0.0).unwrap(), 0, 7)
    }

    fn z() -> TaylorSeries {
        TaylorSeries::real_polynomial(&[0.0, 1.0])
    }

    fn mono(n: usize) -> TestFamily {
        TestFamily::new(FamilyKind::Monomials { max_degree: n })
    }

    fn t() -> GOperatorExpr {
        GOperatorExpr::parse_word("T").unwrap()
    }

    #[test]
    fn identity_has_norm_one() {
        let fam = TestFamily::new(FamilyKind::RandomPolys {
            count: 10,
            max_degree: 6,
            seed: 3,
        });
        let e = opnorm_lower(&GOperatorExpr::identity(), &z(), &fam, &setup()).unwrap();
        assert!((e.lower_bound - 1.0).abs() < 1e-12);
    }

    #[test]
    fn t_of_constant_is_zero() {
        let c = TaylorSeries::real_polynomial(&[2.5]);
        let e = opnorm_lower(&t(), &c, &mono(5), &setup()).unwrap();
        assert_eq!(e.lower_bound, 0.0);
    }

    #[test]
    fn t_of_z_on_monomials() {
        let e = opnorm_lower(&t(), &z(), &mono(30), &setup()).unwrap();
        assert!((e.lower_bound - 0.5f64.sqrt()).abs() < 1e-14);
        assert_eq!(e.best_witness, "z^0");
        let rs = family_ratios(&t(), &z(), &mono(30), &setup()).unwrap();
        for (k, (_, r)) in rs.iter().enumerate() {
            let k = k as f64;
            let oracle = ((k + 1.0) / (k + 2.0)).sqrt() / (k + 1.0);
            assert!((r - oracle).abs() < 1e-14);
        }
    }

    #[test]
    fn ascent_never_decreases_and_is_deterministic() {
        let fam = TestFamily::new(FamilyKind::RandomPolys {
            count: 6,
            max_degree: 4,
            seed: 1,
        });
        let g = TaylorSeries::real_polynomial(&[0.0, 1.0, 0.25]);
        let s = OpNormSetup { refine: 60, ..setup() };
        let a = opnorm_lower(&t(), &g, &fam, &s).unwrap();
        let b = opnorm_lower(&t(), &g, &fam, &s).unwrap();
        assert_eq!(a, b);
        assert!(a.lower_bound >= a.family_bound);
    }

    #[test]
    fn larger_family_never_lowers_the_family_bound() {
        let g = TaylorSeries::real_polynomial(&[0.0, 1.0, 0.25]);
        let fam = |count| {
            TestFamily::new(FamilyKind::RandomPolys {
                count,
                max_degree: 5,
                seed: 9,
            })
        };
        let a = opnorm_lower(&t(), &g, &fam(10), &setup()).unwrap().family_bound;
        let b = opnorm_lower(&t(), &g, &fam(20), &setup()).unwrap().family_bound;
        assert!(b >= a);
    }

    #[test]
    fn h0_restriction_drops_constants() {
        let fam = mono(4).on_h0();
        let ms = fam.members(2.0, &RadialWeightDescriptor::standard(0.0).unwrap()).unwrap();
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().all(|m| m.f.value_at_zero().norm() == 0.0));
    }

    #[test]
    fn kernels_have_unit_scale() {
        let w = RadialWeightDescriptor::standard(0.0).unwrap();
        let fam = TestFamily::new(FamilyKind::default_kernels());
        let ms = fam.members(2.0, &w).unwrap();
        assert_eq!(ms.len(), 32);
        // ‖h_ξ‖² = (1−|ξ|)^η/ω̂ · ‖(1−ξ̄z)^{−(η+1)/2}‖² stays of order one
        for m in &ms {
            let n = bergman_norm(&m.f, 2.0, &w, &QuadratureConfig::default()).unwrap().value;
            assert!(n > 0.3 && n < 3.0, "{}: {n}", m.id);
        }
        let exp = RadialWeightDescriptor::exponential(1.0, 1.0).unwrap();
        assert!(matches!(fam.members(2.0, &exp), Err(Error::NotUpperDoubling { .. })));
    }

    #[test]
    fn radicality_examples() {
        let c = TaylorSeries::real_polynomial(&[3.0]);
        let tab = radicality_experiment(&c, 3, &mono(10), &setup()).unwrap();
        assert!(tab.rows.iter().all(|r| r.lower_bound == 0.0));
        assert_eq!(tab.fitted_c, None);
        let tab = radicality_experiment(&z(), 3, &mono(30), &setup()).unwrap();
        assert!((tab.rows[0].lower_bound - 0.5f64.sqrt()).abs() < 1e-14);
        // (1/m)T_{z^m} z^k = z^{k+m}/(k+m); the best monomial is k = 0
        for r in &tab.rows {
            let m = r.m as f64;
            let oracle = (1.0 / (m + 1.0)).sqrt() / m;
            assert!((r.lower_bound - oracle).abs() < 1e-14, "m = {m}");
        }
        assert!(radicality_experiment(&z(), 7, &mono(3), &setup()).is_err());
    }

    #[test]
    fn power_lemma_examples() {
        let one = TestFamily::new(FamilyKind::Custom {
            series: vec![TaylorSeries::one()],
        });
        let r = power_lemma_check(&z(), 1, &one, &setup()).unwrap();
        assert!((r.constants[0].1 - 3f64.sqrt()).abs() < 1e-14);
        let scaled = TestFamily::new(FamilyKind::Custom {
            series: vec![TaylorSeries::one().scale(&Complex64::new(0.0, -4.0))],
        });
        let r2 = power_lemma_check(&z(), 1, &scaled, &setup()).unwrap();
        assert!((r2.constants[0].1 - r.constants[0].1).abs() < 1e-14);
        let c = TaylorSeries::real_polynomial(&[2.0]);
        assert!(matches!(
            power_lemma_check(&c, 1, &mono(3), &setup()),
            Err(Error::DegenerateFamily)
        ));
    }

    #[test]
    fn two_letter_examples() {
        for g in [
            TaylorSeries::real_polynomial(&[1.0, 1.0]),
            z(),
            TaylorSeries::real_polynomial(&[0.5, -0.25, 0.0, 3.0]),
        ] {
            let ids = two_letter_identities(&g, 1).unwrap();
            assert!(ids.iter().all(|v| v.holds), "{ids:?}");
        }
        let c = TaylorSeries::real_polynomial(&[1.5]);
        let s = two_letter_survey(&c, &mono(6), &setup()).unwrap();
        // T_c = 0 while S_c = cΠ₀ and M_c = cI
        for (w, e) in &s.rows {
            if w.contains('T') {
                assert_eq!(e.lower_bound, 0.0, "{w}");
            } else {
                assert!(e.lower_bound > 0.0, "{w}");
            }
        }
        assert!((s.rows[0].1.lower_bound - 2.25).abs() < 1e-12);
        let m = opnorm_lower(&GOperatorExpr::parse_word("M").unwrap(), &c, &mono(6), &setup()).unwrap();
        assert!((m.lower_bound - 1.5).abs() < 1e-12);
    }
}
