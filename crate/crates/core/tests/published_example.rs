use cmconj::modgroup::UnimodularMatrix;
use cmconj::quadforms::enumerate_reduced;
use cmconj::{
    run, ClassFieldJob, ExactCMPoint, IntPolynomial, ModularFunction, PrecisionConfig,
    QuadraticForm,
};
use rug::{Complex, Float, Integer, Rational};

const PREC: u32 = 256;

const GAMMAS: [[i64; 4]; 12] = [
    [0, -1, 1, 0],
    [5, -3, 2, -1],
    [1, 0, 0, 1],
    [1, 0, 1, 1],
    [1, 0, 2, 1],
    [1, 0, 3, 1],
    [1, 0, 4, 1],
    [2, -1, 5, -2],
    [2, -1, 1, 0],
    [2, -1, 7, -3],
    [2, 1, 3, 2],
    [2, -1, 9, -4],
];

const FORMS_Q1: [[i64; 3]; 12] = [
    [13, 0, 1],
    [77, -82, 22],
    [1, 0, 13],
    [14, 26, 13],
    [53, 52, 13],
    [118, 78, 13],
    [209, 104, 13],
    [329, -264, 53],
    [17, -4, 1],
    [641, -550, 118],
    [121, 160, 53],
    [1057, -940, 209],
];

const FORMS_Q2: [[i64; 3]; 12] = [
    [7, -2, 2],
    [98, -110, 31],
    [2, 2, 7],
    [11, 16, 7],
    [34, 30, 7],
    [71, 44, 7],
    [122, 58, 7],
    [203, -166, 34],
    [19, -10, 2],
    [379, -328, 71],
    [83, 106, 34],
    [611, -546, 122],
];

const MATRICES_Q1: [[i64; 4]; 12] = [
    [0, -1, 1, 0],
    [-5, -8, -3, -5],
    [1, 0, 0, 1],
    [-1, -2, 1, 1],
    [-3, -2, 2, 1],
    [-3, 2, -2, 1],
    [-1, 2, -1, 1],
    [3, -5, 5, -8],
    [1, 1, 1, 2],
    [2, -1, -3, 2],
    [2, 1, 3, 2],
    [1, -1, -1, 2],
];

const MATRICES_Q2: [[i64; 4]; 12] = [
    [-2, -1, 1, 0],
    [-1, 2, 2, -5],
    [1, 2, 0, 1],
    [-2, -3, 1, 1],
    [1, 0, 2, 1],
    [5, -2, -2, 1],
    [-2, 3, -1, 1],
    [-2, 1, -5, 2],
    [0, -1, 1, 2],
    [-1, 1, -3, 2],
    [-1, -1, -2, -3],
    [-2, 5, -1, 2],
];

const P_DESCENDING: [i64; 25] = [
    1, 82, -996, 968, 1051, 1422, -96, -24912, 7896, 16722, 28844, 13658, -114024, -13658, 28844,
    -16722, 7896, 24912, -96, -1422, 1051, -968, -996, -82, 1,
];

fn form(c: [i64; 3]) -> QuadraticForm {
    QuadraticForm::new(c[0], c[1], c[2]).unwrap()
}

fn matrix(m: [i64; 4]) -> UnimodularMatrix {
    UnimodularMatrix::from_i64(m).unwrap()
}

fn sqrt_m13() -> ExactCMPoint {
    ExactCMPoint::new(Rational::new(), Rational::from(1), Integer::from(-13)).unwrap()
}

fn half_one_plus_sqrt_m13() -> ExactCMPoint {
    ExactCMPoint::new(
        Rational::from((1, 2)),
        Rational::from((1, 2)),
        Integer::from(-13),
    )
    .unwrap()
}

fn published_values() -> Vec<Complex> {
    let cfg = PrecisionConfig::with_target(PREC);
    let r = ModularFunction::RogersRamanujan;
    let q1 = MATRICES_Q1.iter().map(|m| (m, sqrt_m13()));
    let q2 = MATRICES_Q2.iter().map(|m| (m, half_one_plus_sqrt_m13()));
    q1.chain(q2)
        .map(|(m, p)| {
            r.eval(
                &matrix(*m).apply_exact(&p).to_complex(cfg.working_bits()),
                &cfg,
            )
            .unwrap()
        })
        .collect()
}

fn distance(a: &Complex, b: &Complex) -> f64 {
    Float::with_val(PREC, Complex::with_val(PREC, a - b).abs_ref()).to_f64()
}

#[test]
fn reduced_forms_match() {
    let forms = enumerate_reduced(&Integer::from(-52)).unwrap();
    assert_eq!(forms, vec![form([1, 0, 13]), form([2, 2, 7])]);
}

#[test]
fn coset_representatives_produce_listed_forms() {
    for (k, g) in GAMMAS.iter().enumerate() {
        assert_eq!(
            form([1, 0, 13]).act(&matrix(*g)),
            form(FORMS_Q1[k]),
            "Q1 under gamma {}",
            k + 1
        );
        assert_eq!(
            form([2, 2, 7]).act(&matrix(*g)),
            form(FORMS_Q2[k]),
            "Q2 under gamma {}",
            k + 1
        );
    }
}

#[test]
fn every_listed_form_is_primitive_to_five() {
    for c in FORMS_Q1.iter().chain(FORMS_Q2.iter()) {
        assert_ne!(c[0] % 5, 0);
    }
}

#[test]
fn evaluation_points_are_negated_conjugate_roots() {
    assert_eq!(form([1, 0, 13]).omega().neg_conjugate(), sqrt_m13());
    assert_eq!(
        form([2, 2, 7]).omega().neg_conjugate(),
        half_one_plus_sqrt_m13()
    );
}

#[test]
fn listed_matrices_give_the_same_conjugates() {
    let job = ClassFieldJob::new(
        -52,
        5,
        ModularFunction::RogersRamanujan,
        PrecisionConfig::with_target(PREC),
    )
    .unwrap();
    let res = run(&job).unwrap();
    let ours: Vec<Complex> = res.conjugates.iter().map(|c| c.value.clone()).collect();
    let theirs = published_values();
    assert_eq!(ours.len(), theirs.len());
    let mut used = vec![false; ours.len()];
    for v in &theirs {
        let hit = (0..ours.len()).find(|&j| !used[j] && distance(v, &ours[j]) < 1e-60);
        let j = hit.unwrap_or_else(|| panic!("no conjugate matches {v}"));
        used[j] = true;
    }
}

#[test]
fn listed_values_round_to_the_published_polynomial() {
    let values = published_values();
    let coeffs = cmconj::polyalgebra::product_of_linear(&values, PREC);
    let (p, residual) = cmconj::polyalgebra::round_coefficients(&coeffs, PREC).unwrap();
    assert_eq!(p, IntPolynomial::from_descending(&P_DESCENDING));
    assert!(residual < 1e-40);
}

#[test]
fn value_at_tau_is_a_conjugate() {
    let job = ClassFieldJob::new(
        -52,
        5,
        ModularFunction::RogersRamanujan,
        PrecisionConfig::with_target(PREC),
    )
    .unwrap();
    let res = run(&job).unwrap();
    assert_eq!(res.tau, sqrt_m13());
    assert!(res
        .conjugates
        .iter()
        .any(|c| distance(&c.value, &res.tau_value) < 1e-60));
    assert_eq!(res.p, IntPolynomial::from_descending(&P_DESCENDING));
    assert_eq!(res.ell, 1);
    assert!(res.max_irr_at_conjugates_residual < 1e-60);
}
