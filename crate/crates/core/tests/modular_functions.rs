use cmconj::modfunc::{
    check_icosahedral, check_klein_relation, eval_j, eval_rr, eval_rr_product, KleinQuotient,
};
use cmconj::modgroup::UnimodularMatrix;
use cmconj::{ModularFunction, PrecisionConfig};
use proptest::prelude::*;
use rug::{Complex, Float};

fn rel_err(a: &Complex, b: &Complex, prec: u32) -> f64 {
    let d = Float::with_val(prec, Complex::with_val(prec, a - b).abs_ref());
    let s = Float::with_val(prec, b.abs_ref()).max(&Float::with_val(prec, 1e-300));
    (d / s).to_f64()
}

fn gamma_n_word(n: i64) -> impl Strategy<Value = UnimodularMatrix> {
    prop::collection::vec((any::<bool>(), -2i64..=2), 1..4).prop_map(move |word| {
        let up = UnimodularMatrix::from_i64([1, n, 0, 1]).unwrap();
        let down = UnimodularMatrix::from_i64([1, 0, n, 1]).unwrap();
        let mut acc = UnimodularMatrix::identity();
        for (upper, k) in word {
            let g = if upper { &up } else { &down };
            for _ in 0..k.unsigned_abs() {
                acc = if k > 0 {
                    acc.mul(g)
                } else {
                    acc.mul(&g.inverse())
                };
            }
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reduced_and_direct_paths_agree(x in -2.0f64..2.0, y in 1e-3f64..2.0) {
        let cfg = PrecisionConfig::with_target(128);
        let tau = Complex::with_val(cfg.working_bits(), (x, y));
        let reduced = eval_rr(&tau, &cfg).unwrap();
        let direct = eval_rr_product(&tau, &cfg).unwrap();
        prop_assert!(rel_err(&reduced, &direct, cfg.working_bits()) < 1e-30);
    }

    #[test]
    fn rogers_ramanujan_is_gamma5_invariant(x in -1.0f64..1.0, y in 0.05f64..2.0, g in gamma_n_word(5)) {
        let cfg = PrecisionConfig::with_target(128);
        let tau = Complex::with_val(cfg.working_bits(), (x, y));
        let a = eval_rr(&tau, &cfg).unwrap();
        let b = eval_rr(&g.apply(&tau), &cfg).unwrap();
        prop_assert!(rel_err(&b, &a, cfg.working_bits()) < 1e-25);
    }

    #[test]
    fn j_is_sl2_invariant(x in -1.0f64..1.0, y in 0.3f64..2.0, a in -6i64..=6, c in 1i64..=6) {
        prop_assume!(rug::Integer::from(a).gcd(&rug::Integer::from(c)) == 1);
        let cfg = PrecisionConfig::with_target(128);
        let (_, s, t) = rug::Integer::from(a).extended_gcd(rug::Integer::from(c), rug::Integer::new());
        let g = UnimodularMatrix::from_i64([a, -t.to_i64().unwrap(), c, s.to_i64().unwrap()]).unwrap();
        let tau = Complex::with_val(cfg.working_bits(), (x, y));
        let v = eval_j(&tau, &cfg).unwrap();
        let w = eval_j(&g.apply(&tau), &cfg).unwrap();
        prop_assert!(rel_err(&w, &v, cfg.working_bits()) < 1e-25);
    }

    #[test]
    fn identities_hold_at_random_points(x in -0.5f64..0.5, y in 0.05f64..3.0) {
        let cfg = PrecisionConfig::with_target(128);
        let tau = Complex::with_val(cfg.working_bits(), (x, y));
        prop_assert!(check_icosahedral(&tau, &cfg).unwrap() < 1e-30);
        prop_assert!(check_klein_relation(&tau, &cfg).unwrap() < 1e-30);
    }
}

#[test]
fn doubling_the_term_budget_changes_nothing() {
    let lo = PrecisionConfig::with_target(128);
    let mut hi = lo;
    hi.max_terms *= 2;
    for (x, y) in [(0.0, 1.0), (0.3, 0.9), (-0.45, 0.87), (0.1, 3.0)] {
        let tau = Complex::with_val(lo.working_bits(), (x, y));
        let a = eval_rr_product(&tau, &lo).unwrap();
        let b = eval_rr_product(&tau, &hi).unwrap();
        assert!(rel_err(&a, &b, lo.working_bits()) < 1e-35);
    }
}

#[test]
fn rational_klein_quotient_is_accepted() {
    let f = ModularFunction::parse("klein-quotient:1/12,0/12|5/12,0/12").unwrap();
    assert!(f.has_rational_coefficients());
    assert!(f.is_level_invariant());
    assert_eq!(f.level(), 12);
}

#[test]
fn non_invariant_klein_quotient_is_rejected() {
    let f = ModularFunction::KleinQuotient(KleinQuotient::new(5, [1, 0], [2, 0]).unwrap());
    assert!(!f.is_level_invariant());
}

#[test]
fn transformation_rules_verify() {
    for f in [ModularFunction::RogersRamanujan, ModularFunction::J] {
        assert!(f.verify_rules(6), "{}", f.name());
    }
}
