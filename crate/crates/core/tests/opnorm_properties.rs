use paraprod_core::norms::{bergman_norm, QuadratureConfig};
use paraprod_core::opnorm::{family_ratios, opnorm_lower, FamilyKind, OpNormSetup, TestFamily};
use paraprod_core::paraproducts::{apply_operator, Symbol};
use paraprod_core::weights::RadialWeightDescriptor;
use paraprod_core::words::{GOperatorExpr, Word};
use paraprod_core::{Complex64, TaylorSeries};

fn setup(refine: usize) -> OpNormSetup {
    OpNormSetup::new(2.0, RadialWeightDescriptor::standard(0.0).unwrap(), refine, 5)
}

fn polys(count: usize) -> TestFamily {
    TestFamily::new(FamilyKind::RandomPolys { count, max_degree: 8, seed: 4 })
}

fn g() -> TaylorSeries {
    TaylorSeries::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.25)])
}

fn word(m: usize, n: usize) -> GOperatorExpr {
    GOperatorExpr::word(Word::st(m, n))
}

#[test]
fn larger_families_never_lower_the_bound() {
    let op = GOperatorExpr::parse_word("SST").unwrap();
    let mut last = 0.0;
    for count in [5, 10, 20, 40] {
        let lb = opnorm_lower(&op, &g(), &polys(count), &setup(0)).unwrap().lower_bound;
        assert!(lb >= last, "{count}: {lb} < {last}");
        last = lb;
    }
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let op = GOperatorExpr::parse_word("TS").unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| opnorm_lower(&op, &g(), &polys(12), &setup(30)).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(1));
}

/// `‖L_{g_r} f_r‖ = ‖(L_g f)_r‖ ≤ ‖L_g f‖` for the same witnesses.
#[test]
fn dilated_symbols_are_dominated() {
    let s = setup(0);
    let cfg = QuadratureConfig::default();
    let op = GOperatorExpr::parse_word("STT").unwrap();
    let members = polys(20).members(s.p, &s.weight).unwrap();
    let norm = |f: &TaylorSeries| bergman_norm(f, s.p, &s.weight, &cfg).unwrap().value;
    for r in [0.5, 0.9] {
        let lam = Complex64::new(r, 0.0);
        let sym_r = Symbol::new(g().dilate(&lam).unwrap());
        for m in &members {
            let lhs = norm(&apply_operator(&op, &sym_r, &m.f.dilate(&lam).unwrap()).unwrap());
            let rhs = norm(&apply_operator(&op, &Symbol::new(g()), &m.f).unwrap());
            assert!(lhs <= rhs * (1.0 + 1e-6), "r = {r}, {}: {lhs} > {rhs}", m.id);
        }
    }
}

/// For `g = z`: `lb(T) ≤ C·lb(SᵐTⁿ)^{1/(m+n)}`, with `C` printed.
#[test]
fn t_is_controlled_by_st_words() {
    let z = TaylorSeries::z();
    let s = setup(0);
    let family = polys(20);
    let t = opnorm_lower(&word(0, 1), &z, &family, &s).unwrap().lower_bound;
    for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)] {
        let l = opnorm_lower(&word(m, n), &z, &family, &s).unwrap().lower_bound;
        let c = t / l.powf(1.0 / (m + n) as f64);
        eprintln!("S^{m}T^{n}: lb = {l:.4e}, C = {c:.3}");
        assert!(l > 0.0 && c.is_finite());
    }
}

/// `lb(Tⁿ)` dominates every single-witness ratio and stays within a recorded
/// constant of `lb(T)ⁿ`.
#[test]
fn powers_of_t_against_t() {
    let s = setup(0);
    let family = polys(20);
    let t = opnorm_lower(&word(0, 1), &g(), &family, &s).unwrap().lower_bound;
    for n in 2..=4 {
        let op = word(0, n);
        let lb = opnorm_lower(&op, &g(), &family, &s).unwrap().lower_bound;
        for (m, r) in family_ratios(&op, &g(), &family, &s).unwrap() {
            assert!(lb >= r, "{}", m.id);
        }
        let c = lb / t.powi(n as i32);
        eprintln!("T^{n}: lb = {lb:.4e}, lb/lb(T)^n = {c:.3}");
        assert!(c > 0.0 && c.is_finite());
    }
}
