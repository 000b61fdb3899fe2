use paraprod_core::weights::RadialWeightDescriptor;
use paraprod_core::{Coeff, ExactComplex, ExactSeries, TaylorSeries};
use proptest::prelude::*;

fn exact_poly(max_deg: usize) -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec((-5i64..=5, -5i64..=5, 1i64..=4), 1..=max_deg + 1).prop_map(|v| {
        ExactSeries::polynomial(
            v.into_iter()
                .map(|(a, b, d)| ExactComplex::from_ratio(a, d) + ExactComplex::gaussian(0, b))
                .collect(),
        )
    })
}

/// Gaussian rationals of modulus at most one.
fn unit_scalar() -> impl Strategy<Value = ExactComplex> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| {
        let s = ExactComplex::gaussian(a, b);
        s * ExactComplex::from_ratio(1, 5)
    })
}

fn truncated(max_cap: usize) -> impl Strategy<Value = TaylorSeries> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..=max_cap + 1).prop_map(|v| {
        TaylorSeries::truncated(v.into_iter().map(|(a, b)| paraprod_core::Complex64::new(a, b)).collect())
    })
}

fn weight() -> impl Strategy<Value = RadialWeightDescriptor> {
    prop_oneof![
        (-0.9f64..6.0).prop_map(|a| RadialWeightDescriptor::standard(a).unwrap()),
        (0.2f64..3.0, 0.2f64..3.0).prop_map(|(c, a)| RadialWeightDescriptor::exponential(c, a).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_inverts_integration(f in exact_poly(8)) {
        prop_assert!(f.integrate0().unwrap().differentiate().same_coefficients(&f));
    }

    #[test]
    fn dilation_composes(f in exact_poly(8), l in unit_scalar(), m in unit_scalar()) {
        let once = f.dilate(&(l.clone() * m.clone())).unwrap();
        let twice = f.dilate(&l).unwrap().dilate(&m).unwrap();
        prop_assert!(once.same_coefficients(&twice));
    }

    #[test]
    fn exact_product_is_commutative_and_associative(a in exact_poly(5), b in exact_poly(5), c in exact_poly(5)) {
        prop_assert!(a.mul(&b).unwrap().same_coefficients(&b.mul(&a).unwrap()));
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(l.same_coefficients(&r));
    }

    #[test]
    fn truncated_product_respects_the_shared_cap(a in truncated(12), b in truncated(12), c in truncated(12)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.cap(), a.cap().min(b.cap()));
        prop_assert!(ab.max_abs_diff(&b.mul(&a).unwrap()) < 1e-12);
        let l = ab.mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l.cap(), r.cap());
        prop_assert!(l.max_abs_diff(&r) < 1e-10);
    }

    #[test]
    fn pi0_is_a_projection(f in exact_poly(8)) {
        let p = f.pi0();
        prop_assert!(p.pi0().same_coefficients(&p));
        prop_assert!(p.value_at_zero().is_zero());
    }

    #[test]
    fn tails_decrease_to_zero(w in weight()) {
        let radii: Vec<f64> = (0..40).map(|i| 1.0 - 10f64.powf(-(i as f64) / 8.0)).collect();
        let tails: Vec<f64> = radii.iter().map(|&r| w.omega_hat(r).unwrap()).collect();
        // fast-decaying weights underflow near the boundary; past that point
        // the tail is exactly zero
        for pair in tails.windows(2) {
            prop_assert!(pair[1] < pair[0] || pair == [0.0, 0.0], "{:?}", pair);
        }
        // slowest decay on this range is (1−r)^0.1 for α near −0.9
        prop_assert!(*tails.last().unwrap() < 0.5 * tails[0]);
    }

    #[test]
    fn moments_decrease(w in weight()) {
        let m = w.moments(40).unwrap();
        for pair in m.windows(2) {
            prop_assert!(pair[1] < pair[0]);
        }
    }

    #[test]
    fn standard_moments_match_gamma_ratio(alpha in -0.9f64..8.0, n in 0usize..60) {
        // (α+1) n! Γ(α+1)/Γ(n+α+2) = Π_{k=1..n} k/(k+α+1)
        let exact: f64 = (1..=n).map(|k| k as f64 / (k as f64 + alpha + 1.0)).product();
        let got = RadialWeightDescriptor::standard(alpha).unwrap().moment(n).unwrap();
        prop_assert!((got - exact).abs() <= 1e-10 * exact, "{} vs {}", got, exact);
    }
}
