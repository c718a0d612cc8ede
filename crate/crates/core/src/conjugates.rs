//! The conjugate pipeline: extended form classes, conjugate matrices,
//! conjugate values and the class polynomial.

use std::path::PathBuf;

use rayon::prelude::*;
use rug::{Complex, Float, Integer};

use crate::error::{invalid, Error, Result};
use crate::modfunc::{ModularFunction, PrecisionConfig};
use crate::modgroup::{
    cached_cosets, enumerate_cosets_with, lift_sl2_mod_n, CosetTable, ModMatrix, TieBreak,
    UnimodularMatrix,
};
use crate::polyalgebra::{
    eval_poly, power_check, product_of_linear, round_coefficients, squarefree_part, IntPolynomial,
};
use crate::quadforms::{enumerate_reduced, CMOrder, ExactCMPoint, QuadraticForm};

/// A pair `(i, k)` with `Q_i^(γ_k)` primitive to the level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedClassRep {
    /// Index into the reduced forms.
    pub i: usize,
    /// Index into the coset table.
    pub k: usize,
    /// `Q_i^(γ_k)`.
    pub form: QuadraticForm,
}

impl ExtendedClassRep {
    pub fn a_ik(&self) -> &Integer {
        self.form.a()
    }

    pub fn b_ik(&self) -> &Integer {
        self.form.b()
    }

    pub fn c_ik(&self) -> &Integer {
        self.form.c()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugateDatum {
    pub rep: ExtendedClassRep,
    /// `[[1, −a′(b_ik + b_O)/2], [0, a′]]·γ̂_k` mod N.
    pub alpha_mod_n: ModMatrix,
    /// Lift to `SL₂(ℤ)` of the same product with the lower-right `a′` replaced by 1.
    pub lifted: UnimodularMatrix,
    /// `−ω̄` of the reduced form `Q_i`.
    pub eval_point: ExactCMPoint,
    /// `lifted(eval_point)`.
    pub point: ExactCMPoint,
    pub value: Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanOrder {
    pub w: u64,
    pub t: u64,
    pub quotient: u64,
}

/// A validated request to compute the class polynomial of `f(τ_O)`.
#[derive(Clone, Debug)]
pub struct ClassFieldJob {
    order: CMOrder,
    level: u64,
    function: ModularFunction,
    precision: PrecisionConfig,
    tie_break: TieBreak,
    cache_dir: Option<PathBuf>,
}

impl ClassFieldJob {
    pub fn new(
        disc: impl Into<Integer>,
        level: u64,
        function: ModularFunction,
        precision: PrecisionConfig,
    ) -> Result<Self> {
        let order = CMOrder::new(disc)?;
        reject_extra_units(&order)?;
        if level == 0 {
            return Err(invalid("level must be positive"));
        }
        if !level.is_multiple_of(function.level()) {
            return Err(invalid(format!(
                "function level {} does not divide N = {level}",
                function.level()
            )));
        }
        if !function.has_rational_coefficients() {
            return Err(invalid(format!(
                "{function} does not have rational Fourier coefficients"
            )));
        }
        if !function.is_level_invariant() {
            return Err(invalid(format!(
                "{function} is not invariant under the principal congruence subgroup of level {}",
                function.level()
            )));
        }
        precision.validate()?;
        Ok(ClassFieldJob {
            order,
            level,
            function,
            precision,
            tie_break: TieBreak::LexMin,
            cache_dir: None,
        })
    }

    /// Uses the given tie-break when normalizing coset representatives.
    pub fn with_tie_break(mut self, tie: TieBreak) -> Self {
        self.tie_break = tie;
        self
    }

    /// Reads and writes coset tables under `dir` (default tie-break only).
    pub fn with_cache_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.cache_dir = dir;
        self
    }

    pub fn order(&self) -> &CMOrder {
        &self.order
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn function(&self) -> ModularFunction {
        self.function
    }

    pub fn precision(&self) -> &PrecisionConfig {
        &self.precision
    }

    pub fn coset_table(&self) -> CosetTable {
        match (self.tie_break, &self.cache_dir) {
            (TieBreak::LexMin, Some(dir)) => cached_cosets(self.level, Some(dir)),
            (tie, _) => enumerate_cosets_with(self.level, tie),
        }
    }
}

fn reject_extra_units(order: &CMOrder) -> Result<()> {
    let d = order.discriminant();
    if *d == -3 || *d == -4 {
        return Err(invalid(format!(
            "discriminant {d} is excluded: the algorithm requires D != -3, -4"
        )));
    }
    Ok(())
}

/// All `(i, k)` with `gcd(a_ik, N) = 1`, in lexicographic order.
pub fn build_extended_classes(
    order: &CMOrder,
    table: &CosetTable,
) -> Result<Vec<ExtendedClassRep>> {
    reject_extra_units(order)?;
    let n = Integer::from(table.level());
    let forms = enumerate_reduced(order.discriminant())?;
    let mut out = Vec::new();
    for (i, q) in forms.iter().enumerate() {
        for (k, g) in table.reps().iter().enumerate() {
            let form = q.act(g);
            if Integer::from(form.a().gcd_ref(&n)) == 1 {
                out.push(ExtendedClassRep { i, k, form });
            }
        }
    }
    Ok(out)
}

/// Orders of the Cartan subgroup `W` mod N, of the unit image `T`, and of `W/T`.
pub fn cartan_order(order: &CMOrder, n: u64) -> Result<CartanOrder> {
    reject_extra_units(order)?;
    if n == 0 {
        return Err(invalid("level must be positive"));
    }
    let nn = Integer::from(n);
    let b = Integer::from(order.b_o().modulo_ref(&nn));
    let c = Integer::from(order.c_o().modulo_ref(&nn));
    let mut w = 0u64;
    for s in 0..n {
        for t in 0..n {
            // t² − b_O·s·t + c_O·s²
            let det = Integer::from(t * t) - Integer::from(&b * s) * t + Integer::from(&c * s) * s;
            if det.gcd(&nn) == 1 {
                w += 1;
            }
        }
    }
    let t = if n > 2 { 2 } else { 1 };
    Ok(CartanOrder {
        w,
        t,
        quotient: w / t,
    })
}

fn inverse_mod(a: &Integer, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let inv = Integer::from(a.modulo_ref(&Integer::from(n)))
        .invert(&Integer::from(n))
        .ok()?;
    inv.to_u64()
}

/// `[[1, −a′(b_ik + b_O)/2], [0, a′]]·γ̂_k` mod N together with its
/// determinant-one companion `[[1, −a′(b_ik + b_O)/2], [0, 1]]·γ̂_k`.
pub fn conjugate_matrix(
    rep: &ExtendedClassRep,
    gamma_k: &UnimodularMatrix,
    order: &CMOrder,
    n: u64,
) -> Result<(ModMatrix, ModMatrix)> {
    let a_inv = inverse_mod(rep.a_ik(), n)
        .ok_or_else(|| invalid(format!("a = {} is not invertible mod {n}", rep.a_ik())))?;
    let sum = Integer::from(rep.b_ik() + order.b_o());
    if sum.is_odd() {
        return Err(invalid(format!(
            "form {} has the wrong discriminant parity",
            rep.form
        )));
    }
    let half = sum / 2u32;
    let shift = -(half * a_inv);
    let nn = Integer::from(n);
    let shift = Integer::from(shift.modulo_ref(&nn)).to_u64().unwrap_or(0);
    let hat = gamma_k.hat().mod_n(n);
    let alpha = ModMatrix::new([1, shift, 0, a_inv], n).mul(&hat);
    let unimodular = ModMatrix::new([1, shift, 0, 1], n).mul(&hat);
    Ok((alpha, unimodular))
}

/// Evaluates every conjugate, in parallel, in the order of `classes`.
pub fn compute_conjugates(
    job: &ClassFieldJob,
    table: &CosetTable,
    classes: &[ExtendedClassRep],
    cfg: &PrecisionConfig,
) -> Result<Vec<ConjugateDatum>> {
    let forms = enumerate_reduced(job.order.discriminant())?;
    let n = job.level;
    let prec = cfg.working_bits();
    classes
        .par_iter()
        .map(|rep| {
            let gamma_k = &table.reps()[rep.k];
            let (alpha_mod_n, unimodular) = conjugate_matrix(rep, gamma_k, &job.order, n)?;
            let lifted = lift_sl2_mod_n(&unimodular)?;
            let eval_point = forms[rep.i].omega().neg_conjugate();
            let point = lifted.apply_exact(&eval_point);
            let value = job.function.eval(&point.to_complex(prec), cfg)?;
            Ok(ConjugateDatum {
                rep: rep.clone(),
                alpha_mod_n,
                lifted,
                eval_point,
                point,
                value,
            })
        })
        .collect()
}

/// Numeric coefficients of `p(x)` in ascending degree, and whether the
/// single-product form for real `f(τ_O)` was used.
pub fn assemble_poly(
    data: &[ConjugateDatum],
    tau_value: &Complex,
    cfg: &PrecisionConfig,
) -> (Vec<Complex>, bool) {
    let prec = cfg.working_bits();
    let real = is_real(tau_value, cfg.target_bits);
    let mut values: Vec<Complex> = data.iter().map(|d| d.value.clone()).collect();
    if !real {
        let conj: Vec<Complex> = values.iter().map(|v| v.clone().conj()).collect();
        values.extend(conj);
    }
    (product_of_linear(&values, prec), real)
}

fn is_real(v: &Complex, target_bits: u32) -> bool {
    let tol = Float::with_val(v.prec().0, Float::i_exp(1, -((target_bits / 2) as i32)));
    Float::with_val(v.prec().0, v.imag().abs_ref()) < tol
}

fn log2_abs(v: &Complex) -> f64 {
    let a = Float::with_val(v.prec().0, v.abs_ref());
    if a.is_zero() {
        f64::NEG_INFINITY
    } else {
        a.log2().to_f64()
    }
}

/// Everything a completed run produces.
#[derive(Clone, Debug)]
pub struct JobResult {
    pub discriminant: Integer,
    pub level: u64,
    pub function: ModularFunction,
    pub requested_bits: u32,
    /// Configuration of the successful attempt.
    pub precision: PrecisionConfig,
    pub forms: Vec<QuadraticForm>,
    pub coset_count: usize,
    pub class_count: usize,
    pub cartan: CartanOrder,
    pub conjugates: Vec<ConjugateDatum>,
    pub tau: ExactCMPoint,
    pub tau_value: Complex,
    pub p: IntPolynomial,
    pub irr: IntPolynomial,
    pub ell: u32,
    pub max_rounding_residual: Float,
    pub irr_at_tau_residual: Float,
    pub max_irr_at_conjugates_residual: Float,
    pub reality_shortcut: bool,
}

/// Runs the whole pipeline, escalating precision on numerical failures.
pub fn run(job: &ClassFieldJob) -> Result<JobResult> {
    let table = job.coset_table();
    let classes = build_extended_classes(&job.order, &table)?;
    let forms = enumerate_reduced(job.order.discriminant())?;
    let cartan = cartan_order(&job.order, job.level)?;
    let expected = forms.len() as u64 * cartan.quotient;
    if classes.len() as u64 != expected {
        return Err(Error::CrossCheck(format!(
            "{} extended classes, but h * |W/T| = {} * {} = {expected}",
            classes.len(),
            forms.len(),
            cartan.quotient
        )));
    }
    let (result, _) = job
        .precision
        .escalate(|cfg| attempt(job, &table, &classes, cfg))?;
    let (conjugates, tau_value, poly, cfg) = result;
    let (
        p,
        irr,
        ell,
        max_rounding_residual,
        irr_at_tau_residual,
        max_irr_at_conjugates_residual,
        reality_shortcut,
    ) = poly;
    Ok(JobResult {
        discriminant: job.order.discriminant().clone(),
        level: job.level,
        function: job.function,
        requested_bits: job.precision.target_bits,
        precision: cfg,
        forms,
        coset_count: table.len(),
        class_count: classes.len(),
        cartan,
        conjugates,
        tau: job.order.tau(),
        tau_value,
        p,
        irr,
        ell,
        max_rounding_residual,
        irr_at_tau_residual,
        max_irr_at_conjugates_residual,
        reality_shortcut,
    })
}

type PolyData = (IntPolynomial, IntPolynomial, u32, Float, Float, Float, bool);

fn attempt(
    job: &ClassFieldJob,
    table: &CosetTable,
    classes: &[ExtendedClassRep],
    cfg: &PrecisionConfig,
) -> Result<(Vec<ConjugateDatum>, Complex, PolyData, PrecisionConfig)> {
    let mut cfg = *cfg;
    let mut data = compute_conjugates(job, table, classes, &cfg)?;
    let pole_bits = (cfg.target_bits / 2) as f64;
    for d in &data {
        let m = log2_abs(&d.value);
        if m > pole_bits {
            return Err(Error::PossiblePole { log2_magnitude: m });
        }
    }
    // Expanded coefficients reach 2^(Σ log2 max(1, |v|)), and evaluating the
    // result at a conjugate multiplies that by up to max(1, |v|)^deg.
    let logs: Vec<f64> = data.iter().map(|d| log2_abs(&d.value).max(0.0)).collect();
    let degree = 2.0 * logs.len() as f64;
    let largest = logs.iter().cloned().fold(0.0, f64::max);
    let needed = 2.0 * logs.iter().sum::<f64>() + degree * largest + (degree + 1.0).log2() + 32.0;
    if needed > cfg.guard_bits as f64 {
        cfg.guard_bits = needed.ceil() as u32 + 64;
        data = compute_conjugates(job, table, classes, &cfg)?;
    }
    let prec = cfg.working_bits();
    let tau_value = job.function.eval(&job.order.tau().to_complex(prec), &cfg)?;
    let (coeffs, reality_shortcut) = assemble_poly(&data, &tau_value, &cfg);
    let (p, max_rounding_residual) = round_coefficients(&coeffs, cfg.target_bits)?;
    let irr = squarefree_part(&p);
    let ell = power_check(&p, &irr)?;
    let threshold = Float::with_val(prec, Float::i_exp(1, -((cfg.target_bits / 4) as i32)));
    let irr_at_tau_residual = Float::with_val(prec, eval_poly(&irr, &tau_value).abs_ref());
    let mut max_irr_at_conjugates_residual = Float::new(prec);
    for d in &data {
        let r = Float::with_val(prec, eval_poly(&irr, &d.value).abs_ref());
        max_irr_at_conjugates_residual = max_irr_at_conjugates_residual.max(&r);
    }
    let worst = Float::with_val(
        prec,
        irr_at_tau_residual.max_ref(&max_irr_at_conjugates_residual),
    );
    if worst >= threshold {
        return Err(Error::Rounding {
            residual: worst.to_f64(),
            threshold: threshold.to_f64(),
        });
    }
    let poly = (
        p,
        irr,
        ell,
        max_rounding_residual,
        irr_at_tau_residual,
        max_irr_at_conjugates_residual,
        reality_shortcut,
    );
    Ok((data, tau_value, poly, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgroup::enumerate_cosets;

    fn order(d: i64) -> CMOrder {
        CMOrder::new(d).unwrap()
    }

    #[test]
    fn extended_class_counts() {
        let o = order(-52);
        assert_eq!(
            build_extended_classes(&o, &enumerate_cosets(5))
                .unwrap()
                .len(),
            24
        );
        assert_eq!(
            build_extended_classes(&o, &enumerate_cosets(1))
                .unwrap()
                .len(),
            2
        );
        assert!(build_extended_classes(&order(-3), &enumerate_cosets(5)).is_err());
        assert!(build_extended_classes(&order(-4), &enumerate_cosets(5)).is_err());
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(
            cartan_order(&order(-52), 5).unwrap(),
            CartanOrder {
                w: 24,
                t: 2,
                quotient: 12
            }
        );
        assert_eq!(
            cartan_order(&order(-52), 2).unwrap(),
            CartanOrder {
                w: 2,
                t: 1,
                quotient: 2
            }
        );
        for d in [-7, -8, -52, -71] {
            assert_eq!(
                cartan_order(&order(d), 1).unwrap(),
                CartanOrder {
                    w: 1,
                    t: 1,
                    quotient: 1
                }
            );
        }
        assert!(cartan_order(&order(-4), 3).is_err());
    }

    #[test]
    fn principal_identity_matrix() {
        // a ≡ 1, b = −b_O, identity coset
        let o = order(-23);
        let rep = ExtendedClassRep {
            i: 0,
            k: 0,
            form: QuadraticForm::new(1, -1, 6).unwrap(),
        };
        let (alpha, uni) = conjugate_matrix(&rep, &UnimodularMatrix::identity(), &o, 7).unwrap();
        assert_eq!(alpha.entries(), [1, 0, 0, 1]);
        assert_eq!(uni.entries(), [1, 0, 0, 1]);
    }

    #[test]
    fn alpha_determinant_is_inverse_of_a() {
        let o = order(-52);
        let table = enumerate_cosets(5);
        for rep in build_extended_classes(&o, &table).unwrap() {
            let (alpha, uni) = conjugate_matrix(&rep, &table.reps()[rep.k], &o, 5).unwrap();
            let a = rep.a_ik().mod_u(5) as u64;
            assert_eq!(alpha.det() * a % 5, 1);
            assert_eq!(uni.det(), 1);
        }
    }

    #[test]
    fn job_validation() {
        let cfg = PrecisionConfig::default();
        let r = ModularFunction::RogersRamanujan;
        assert!(matches!(
            ClassFieldJob::new(-3, 5, r, cfg),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            ClassFieldJob::new(-4, 5, r, cfg),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            ClassFieldJob::new(-52, 3, r, cfg),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            ClassFieldJob::new(-50, 5, r, cfg),
            Err(Error::InvalidInput(_))
        ));
        assert!(ClassFieldJob::new(-52, 10, r, cfg).is_ok());
        let twisted = ModularFunction::parse("klein-quotient:1/5,1/5|2/5,0/5").unwrap();
        assert!(ClassFieldJob::new(-52, 5, twisted, cfg).is_err());
        let non_invariant = ModularFunction::parse("klein-quotient:1/5,0/5|2/5,0/5").unwrap();
        assert!(ClassFieldJob::new(-52, 5, non_invariant, cfg).is_err());
    }

    #[test]
    fn hilbert_class_polynomial_small() {
        let job = ClassFieldJob::new(-8, 1, ModularFunction::J, PrecisionConfig::with_target(256))
            .unwrap();
        let res = run(&job).unwrap();
        assert_eq!(res.p, IntPolynomial::linear(8000));
        assert_eq!(res.ell, 1);
        assert!(res.reality_shortcut);
    }
}
