//! Arbitrary-precision evaluation of the modular function catalog.
//!
//! Every infinite product is truncated where the tail is provably below
//! `2^(−target_bits−guard_bits)` (relative to the product), given `|q|`.
//! Fractional powers of `q` are `exp(2πiτ·x)`, single-valued in `τ`.
//!
//! Points with small imaginary part are first moved into the fundamental
//! domain. `j` is invariant, Klein forms follow their exact transformation
//! law, and `r` replays its value rules for `τ ↦ τ + 1` and `τ ↦ −1/τ` along
//! the reduction word. The rules are checked numerically against the direct
//! product before first use; if that check fails, evaluation uses the
//! direct product at the original point instead.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{invalid, Error, Result};
use crate::modgroup::{fundamental_domain_reduce, Generator, UnimodularMatrix};

/// Arbitrary-precision complex value; its precision is the working precision
/// of the computation that produced it.
pub type ApComplex = Complex;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionConfig {
    pub target_bits: u32,
    pub guard_bits: u32,
    pub max_terms: u64,
    pub escalation_factor: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            target_bits: 256,
            guard_bits: 64,
            max_terms: 200_000,
            escalation_factor: 2.0,
        }
    }
}

/// Number of retries at higher precision before giving up.
pub const MAX_ESCALATIONS: u32 = 3;

impl PrecisionConfig {
    pub fn with_target(target_bits: u32) -> Self {
        PrecisionConfig {
            target_bits,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_bits == 0 {
            return Err(invalid("target precision must be positive"));
        }
        if self.guard_bits < 32 {
            return Err(invalid("at least 32 guard bits are required"));
        }
        if self.max_terms == 0 {
            return Err(invalid("max_terms must be positive"));
        }
        if self.escalation_factor.is_nan() || self.escalation_factor <= 1.0 {
            return Err(invalid("escalation factor must exceed 1"));
        }
        Ok(())
    }

    pub fn working_bits(&self) -> u32 {
        self.target_bits + self.guard_bits
    }

    pub fn escalated(&self) -> Self {
        let f = self.escalation_factor;
        PrecisionConfig {
            target_bits: (self.target_bits as f64 * f).ceil() as u32,
            max_terms: (self.max_terms as f64 * f).ceil() as u64,
            ..*self
        }
    }

    /// Runs `f`, retrying at escalated precision on precision-related
    /// failures. Returns the result with the configuration that produced it.
    pub fn escalate<T>(
        &self,
        mut f: impl FnMut(&PrecisionConfig) -> Result<T>,
    ) -> Result<(T, PrecisionConfig)> {
        let mut cfg = *self;
        let mut attempt = 0;
        loop {
            match f(&cfg) {
                Ok(v) => return Ok((v, cfg)),
                Err(e) if e.is_precision_related() => {
                    if attempt == MAX_ESCALATIONS {
                        return Err(Error::PrecisionExhausted {
                            bits: cfg.target_bits,
                            last: Box::new(e),
                        });
                    }
                    attempt += 1;
                    cfg = cfg.escalated();
                }
                Err(e) => return Err(e),
            }
        }
    }
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `exp(2πi·z)`.
fn exp_2pi_i(z: &Complex, prec: u32) -> Complex {
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let w = Complex::with_val(prec, z * &two_pi);
    // 2πi·z = (−2π·Im z) + i(2π·Re z)
    let arg = Complex::with_val(
        prec,
        (
            -Float::with_val(prec, w.imag()),
            Float::with_val(prec, w.real()),
        ),
    );
    arg.exp()
}

/// `exp(2πi·τ·x)` for rational `x`.
fn q_power(tau: &Complex, x: &Rational, prec: u32) -> Complex {
    let z = Complex::with_val(prec, tau * x);
    exp_2pi_i(&z, prec)
}

/// `e^(2πi·x)` for rational `x`.
fn root_of_unity(x: &Rational, prec: u32) -> Complex {
    let z = Complex::with_val(prec, (Float::with_val(prec, x), 0));
    exp_2pi_i(&z, prec)
}

fn check_upper(tau: &Complex) -> Result<()> {
    if !tau.real().is_finite() || !tau.imag().is_finite() || *tau.imag() <= 0 {
        return Err(invalid("point must lie in the upper half-plane"));
    }
    Ok(())
}

/// `−log₂|q|` for `q = e^(2πiτ)`.
fn decay_bits(tau: &Complex) -> f64 {
    2.0 * std::f64::consts::PI * tau.imag().to_f64() / std::f64::consts::LN_2
}

/// Smallest `M` such that `Σ_{n>M} c·|q|^(a·n − b)` is below `2^(−bits−1)`.
fn tail_terms(decay: f64, a: f64, b: f64, c: f64, bits: u32, limit: u64) -> Result<u64> {
    if decay.is_nan() || decay <= 0.0 || !decay.is_finite() {
        return Err(Error::NonConvergence {
            needed: u64::MAX,
            limit,
        });
    }
    // log2(1/(1 − |q|^a))
    let geometric = -(-(-a * decay * std::f64::consts::LN_2).exp_m1()).log2();
    let rhs = (bits as f64 + 1.0 + c.log2() + geometric) / (a * decay) + b / a;
    let m = (rhs.ceil() - 1.0).max(1.0);
    if m > limit as f64 {
        return Err(Error::NonConvergence {
            needed: m.min(u64::MAX as f64) as u64,
            limit,
        });
    }
    Ok(m as u64)
}

fn one_minus(z: &Complex, prec: u32) -> Complex {
    Complex::with_val(prec, 1 - z)
}

/// Rogers–Ramanujan continued fraction by its product expansion,
/// `q^(1/5) ∏ (1−q^(5n−1))(1−q^(5n−4)) / ((1−q^(5n−2))(1−q^(5n−3)))`.
pub fn eval_rr_product(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    check_upper(tau)?;
    let prec = cfg.working_bits();
    let bits = cfg.target_bits + cfg.guard_bits;
    let terms = tail_terms(decay_bits(tau), 5.0, 4.0, 4.0, bits, cfg.max_terms)?;
    let q = exp_2pi_i(tau, prec);
    let q5 = Complex::with_val(prec, (&q).pow(5u32));
    let mut powers = [
        q.clone(),
        Complex::with_val(prec, q.square_ref()),
        Complex::with_val(prec, (&q).pow(3u32)),
        Complex::with_val(prec, (&q).pow(4u32)),
    ];
    let mut num = Complex::with_val(prec, 1);
    let mut den = Complex::with_val(prec, 1);
    for _ in 0..terms {
        // exponents 5n−4, 5n−3, 5n−2, 5n−1
        num *= one_minus(&powers[0], prec);
        num *= one_minus(&powers[3], prec);
        den *= one_minus(&powers[1], prec);
        den *= one_minus(&powers[2], prec);
        for p in powers.iter_mut() {
            *p *= &q5;
        }
    }
    let pref = q_power(tau, &Rational::from((1, 5)), prec);
    Ok(pref * num / den)
}

/// Möbius transformation `v ↦ (a·v + b)/(c·v + d)` acting on function values.
#[derive(Clone, Debug)]
pub struct ValueMobius {
    m: [Complex; 4],
}

impl ValueMobius {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        ValueMobius { m: [a, b, c, d] }
    }

    pub fn identity(prec: u32) -> Self {
        let one = Complex::with_val(prec, 1);
        let zero = Complex::new(prec);
        ValueMobius::new(one.clone(), zero.clone(), zero, one)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &ValueMobius) -> ValueMobius {
        let prec = self.m[0].prec().0;
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        let mul = |x: &Complex, y: &Complex, z: &Complex, w: &Complex| {
            Complex::with_val(prec, x * y) + Complex::with_val(prec, z * w)
        };
        ValueMobius {
            m: [
                mul(a, e, b, g),
                mul(a, f, b, h),
                mul(c, e, d, g),
                mul(c, f, d, h),
            ],
        }
    }

    pub fn inverse(&self) -> ValueMobius {
        let [a, b, c, d] = &self.m;
        ValueMobius {
            m: [d.clone(), -b.clone(), -c.clone(), a.clone()],
        }
    }

    pub fn apply(&self, v: &Complex) -> Complex {
        let prec = v.prec().0;
        let [a, b, c, d] = &self.m;
        let num = Complex::with_val(prec, a * v) + b;
        let den = Complex::with_val(prec, c * v) + d;
        num / den
    }
}

fn golden_ratio(prec: u32) -> Float {
    (Float::with_val(prec, 5).sqrt() + 1u32) / 2u32
}

/// `r(τ+1) = ζ₅·r(τ)`.
fn rr_t_rule(prec: u32) -> ValueMobius {
    let zeta = root_of_unity(&Rational::from((1, 5)), prec);
    ValueMobius::new(
        zeta,
        Complex::new(prec),
        Complex::new(prec),
        Complex::with_val(prec, 1),
    )
}

/// `r(−1/τ) = (1 − φ·r(τ))/(φ + r(τ))`.
fn rr_s_rule(prec: u32) -> ValueMobius {
    let phi = golden_ratio(prec);
    ValueMobius::new(
        Complex::with_val(prec, -phi.clone()),
        Complex::with_val(prec, 1),
        Complex::with_val(prec, 1),
        Complex::with_val(prec, phi),
    )
}

/// Rewrites `f(τ)` in terms of `f(τ*)` where the word carries `τ` to `τ*`.
fn replay_rules(
    word: &[Generator],
    t_rule: &ValueMobius,
    s_rule: &ValueMobius,
    prec: u32,
) -> ValueMobius {
    let t_inv = t_rule.inverse();
    let mut acc = ValueMobius::identity(prec);
    for g in word {
        let step = match g {
            Generator::T => &t_inv,
            Generator::TInv => t_rule,
            Generator::S => s_rule,
        };
        acc = acc.compose(step);
    }
    acc
}

/// Rogers–Ramanujan continued fraction, with argument reduction when the
/// direct product would converge slowly.
pub fn eval_rr(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    check_upper(tau)?;
    if *tau.imag() >= 1 || !ModularFunction::RogersRamanujan.rules_verified() {
        return eval_rr_product(tau, cfg);
    }
    let prec = cfg.working_bits();
    let (reduced, word) = fundamental_domain_reduce(tau, prec)?;
    let base = eval_rr_product(&reduced, cfg)?;
    let m = replay_rules(word.tokens(), &rr_t_rule(prec), &rr_s_rule(prec), prec);
    Ok(m.apply(&base))
}

/// Dedekind eta, `q^(1/24) ∏ (1 − qⁿ)`.
pub fn eval_eta(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    check_upper(tau)?;
    let prec = cfg.working_bits();
    let product = euler_product(tau, cfg)?;
    Ok(q_power(tau, &Rational::from((1, 24)), prec) * product)
}

/// `∏_{n≥1} (1 − qⁿ)`.
fn euler_product(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    let prec = cfg.working_bits();
    let terms = tail_terms(
        decay_bits(tau),
        1.0,
        0.0,
        1.0,
        cfg.working_bits(),
        cfg.max_terms,
    )?;
    let q = exp_2pi_i(tau, prec);
    let mut qn = q.clone();
    let mut acc = Complex::with_val(prec, 1);
    for _ in 0..terms {
        acc *= one_minus(&qn, prec);
        qn *= &q;
    }
    Ok(acc)
}

/// `E₄ = 1 + 240 Σ n³qⁿ/(1 − qⁿ)`.
fn eisenstein_e4(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    let prec = cfg.working_bits();
    let decay = decay_bits(tau);
    if decay.is_nan() || decay <= 0.0 {
        return Err(Error::NonConvergence {
            needed: u64::MAX,
            limit: cfg.max_terms,
        });
    }
    let bits = cfg.working_bits() as f64 + 1.0;
    let abs_q_log2 = -decay;
    // tail Σ_{n>M} 240 n³|q|ⁿ/(1−|q|) bounded by its first term over (1 − ratio)
    let mut m: u64 = 1;
    loop {
        let n = (m + 1) as f64;
        let ratio_log2 = 3.0 * (1.0 + 1.0 / n).log2() + abs_q_log2;
        if ratio_log2 < -1.0 {
            let denom = -(1.0 - 2f64.powf(abs_q_log2)).log2() + 1.0;
            let first = 240f64.log2() + 3.0 * n.log2() + n * abs_q_log2 + denom;
            if first < -bits {
                break;
            }
        }
        m += 1;
        if m > cfg.max_terms {
            return Err(Error::NonConvergence {
                needed: m,
                limit: cfg.max_terms,
            });
        }
    }
    let q = exp_2pi_i(tau, prec);
    let mut qn = q.clone();
    let mut sum = Complex::new(prec);
    for n in 1..=m {
        let term = Complex::with_val(prec, &qn / one_minus(&qn, prec)) * Integer::from(n).pow(3);
        sum += term;
        qn *= &q;
    }
    Ok(sum * 240u32 + 1u32)
}

/// `j = E₄³/η²⁴` evaluated without argument reduction.
fn j_series(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    let prec = cfg.working_bits();
    let e4 = eisenstein_e4(tau, cfg)?;
    let p = euler_product(tau, cfg)?;
    let delta = exp_2pi_i(tau, prec) * Complex::with_val(prec, (&p).pow(24u32));
    Ok(Complex::with_val(prec, (&e4).pow(3u32)) / delta)
}

/// Klein's modular invariant.
pub fn eval_j(tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
    check_upper(tau)?;
    let (reduced, _) = fundamental_domain_reduce(tau, cfg.working_bits())?;
    j_series(&reduced, cfg)
}

/// Klein form `𝔨_(r1, r2)(τ)` by its product expansion.
///
/// `r1` is first shifted into `[0, 1)` using `𝔨_(r+s) = ε(r, s)·𝔨_r`, which
/// keeps every factor of the product convergent.
pub fn eval_klein(
    r1: &Rational,
    r2: &Rational,
    tau: &Complex,
    cfg: &PrecisionConfig,
) -> Result<Complex> {
    check_upper(tau)?;
    if *r1.denom() == 1 && *r2.denom() == 1 {
        return Err(invalid("Klein form index must not be integral"));
    }
    let prec = cfg.working_bits();
    let shift = Integer::from(r1.floor_ref());
    let r1_red = Rational::from(r1 - &shift);
    let value = klein_product(&r1_red, r2, tau, cfg)?;
    if shift == 0 {
        return Ok(value);
    }
    // ε(r', (s, 0)) = (−1)^s · e^(−πi·s·r2)
    let phase = -(Rational::from(&shift * r2)) / 2u32;
    let mut factor = root_of_unity(&phase, prec);
    if shift.is_odd() {
        factor = -factor;
    }
    Ok(factor * value)
}

fn klein_product(
    r1: &Rational,
    r2: &Rational,
    tau: &Complex,
    cfg: &PrecisionConfig,
) -> Result<Complex> {
    let prec = cfg.working_bits();
    let offset = r1.to_f64();
    let terms = tail_terms(
        decay_bits(tau),
        1.0,
        offset,
        4.0,
        cfg.working_bits(),
        cfg.max_terms,
    )?;
    // e^(πi·r2(r1−1)) · q^(r1(r1−1)/2)
    let r1m1 = Rational::from(r1 - 1u32);
    let half_exponent = Rational::from(r1 * &r1m1) / 2u32;
    let phase = Rational::from(r2 * &r1m1) / 2u32;
    let pref = root_of_unity(&phase, prec) * q_power(tau, &half_exponent, prec);
    // q_z = e^(2πi(r1·τ + r2))
    let z = Complex::with_val(prec, tau * r1) + r2;
    let qz = exp_2pi_i(&z, prec);
    let qz_inv = Complex::with_val(prec, qz.recip_ref());
    let q = exp_2pi_i(tau, prec);
    let mut qn = q.clone();
    let mut num = one_minus(&qz, prec);
    let mut den = Complex::with_val(prec, 1);
    for _ in 0..terms {
        num *= one_minus(&Complex::with_val(prec, &qn * &qz), prec);
        num *= one_minus(&Complex::with_val(prec, &qn * &qz_inv), prec);
        den *= Complex::with_val(prec, one_minus(&qn, prec).square_ref());
        qn *= &q;
    }
    Ok(pref * num / den)
}

fn row_times(r: &[Rational; 2], m: &UnimodularMatrix) -> [Rational; 2] {
    let [a, b, c, d] = m.entries();
    [
        Rational::from(&r[0] * a) + Rational::from(&r[1] * c),
        Rational::from(&r[0] * b) + Rational::from(&r[1] * d),
    ]
}

/// `𝔨_num(τ)/𝔨_den(τ)`, evaluated at the fundamental-domain image of `τ`
/// through `𝔨_r(γτ) = (cτ + d)⁻¹·𝔨_(rγ)(τ)`.
pub fn eval_klein_quotient(
    num: &[Rational; 2],
    den: &[Rational; 2],
    tau: &Complex,
    cfg: &PrecisionConfig,
) -> Result<Complex> {
    check_upper(tau)?;
    let (reduced, word) = fundamental_domain_reduce(tau, cfg.working_bits())?;
    let back = word.matrix().inverse();
    let a = row_times(num, &back);
    let b = row_times(den, &back);
    let top = eval_klein(&a[0], &a[1], &reduced, cfg)?;
    let bottom = eval_klein(&b[0], &b[1], &reduced, cfg)?;
    Ok(top / bottom)
}

fn abs_f64(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64()
}

/// Residual of `(x²⁰−228x¹⁵+494x¹⁰+228x⁵+1)³ + j·x⁵(x¹⁰+11x⁵−1)⁵ = 0` at
/// `x = r(τ)`, relative to the larger of the two summands.
pub fn check_icosahedral(tau: &Complex, cfg: &PrecisionConfig) -> Result<f64> {
    let prec = cfg.working_bits();
    let x = eval_rr(tau, cfg)?;
    let j = eval_j(tau, cfg)?;
    let x5 = Complex::with_val(prec, (&x).pow(5u32));
    let x10 = Complex::with_val(prec, x5.square_ref());
    let x15 = Complex::with_val(prec, &x10 * &x5);
    let x20 = Complex::with_val(prec, x10.square_ref());
    let a = x20 - Complex::with_val(prec, &x15 * 228u32)
        + Complex::with_val(prec, &x10 * 494u32)
        + Complex::with_val(prec, &x5 * 228u32)
        + 1u32;
    let b = x10 + Complex::with_val(prec, &x5 * 11u32) - 1u32;
    let first = Complex::with_val(prec, (&a).pow(3u32));
    let second = j * x5 * Complex::with_val(prec, (&b).pow(5u32));
    let scale = abs_f64(&first).max(abs_f64(&second));
    let lhs = Complex::with_val(prec, &first + &second);
    Ok(relative(&lhs, scale, prec))
}

fn relative(diff: &Complex, scale: f64, prec: u32) -> f64 {
    if scale == 0.0 {
        return abs_f64(diff);
    }
    let d = Float::with_val(prec, diff.abs_ref()) / scale;
    d.to_f64()
}

/// Relative residual of `r(τ) = 𝔨_[1/5,0](5τ)/𝔨_[2/5,0](5τ)`.
pub fn check_klein_relation(tau: &Complex, cfg: &PrecisionConfig) -> Result<f64> {
    let prec = cfg.working_bits();
    let r = eval_rr(tau, cfg)?;
    let tau5 = Complex::with_val(prec, tau * 5u32);
    let num = [Rational::from((1, 5)), Rational::new()];
    let den = [Rational::from((2, 5)), Rational::new()];
    let k = eval_klein_quotient(&num, &den, &tau5, cfg)?;
    let diff = Complex::with_val(prec, &r - &k);
    Ok(relative(&diff, abs_f64(&r), prec))
}

/// The quotient `𝔨_(p/N, q/N) / 𝔨_(r/N, s/N)` of two Klein forms of level `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KleinQuotient {
    level: u64,
    num: [i64; 2],
    den: [i64; 2],
}

impl KleinQuotient {
    pub fn new(level: u64, num: [i64; 2], den: [i64; 2]) -> Result<Self> {
        if level == 0 {
            return Err(invalid("level must be positive"));
        }
        let n = level as i64;
        if num.iter().all(|x| x % n == 0) || den.iter().all(|x| x % n == 0) {
            return Err(invalid("Klein form index must not be integral"));
        }
        Ok(KleinQuotient { level, num, den })
    }

    fn vector(&self, v: [i64; 2]) -> [Rational; 2] {
        let n = self.level as i64;
        [Rational::from((v[0], n)), Rational::from((v[1], n))]
    }

    pub fn eval(&self, tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
        eval_klein_quotient(&self.vector(self.num), &self.vector(self.den), tau, cfg)
    }

    pub fn eval_direct(&self, tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
        let a = self.vector(self.num);
        let b = self.vector(self.den);
        Ok(eval_klein(&a[0], &a[1], tau, cfg)? / eval_klein(&b[0], &b[1], tau, cfg)?)
    }

    fn parse(text: &str) -> Result<Self> {
        let bad = || {
            invalid(format!(
                "malformed Klein quotient '{text}', expected p/N,q/N|r/N,s/N"
            ))
        };
        let (top, bottom) = text.split_once('|').ok_or_else(bad)?;
        let mut level = None;
        let mut pair = |s: &str| -> Result<[i64; 2]> {
            let (x, y) = s.split_once(',').ok_or_else(bad)?;
            let mut out = [0i64; 2];
            for (o, frac) in out.iter_mut().zip([x, y]) {
                let (p, n) = frac.trim().split_once('/').ok_or_else(bad)?;
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let n: u64 = n.trim().parse().map_err(|_| bad())?;
                if *level.get_or_insert(n) != n {
                    return Err(invalid(
                        "all Klein quotient entries must share one denominator",
                    ));
                }
                *o = p;
            }
            Ok(out)
        };
        let num = pair(top)?;
        let den = pair(bottom)?;
        KleinQuotient::new(level.ok_or_else(bad)?, num, den)
    }
}

impl fmt::Display for KleinQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.level;
        write!(
            f,
            "klein-quotient:{}/{n},{}/{n}|{}/{n},{}/{n}",
            self.num[0], self.num[1], self.den[0], self.den[1]
        )
    }
}

/// The catalog of modular functions the pipeline can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularFunction {
    /// Rogers–Ramanujan continued fraction `r`, level 5.
    RogersRamanujan,
    /// Klein's `j`, level 1.
    J,
    KleinQuotient(KleinQuotient),
}

impl ModularFunction {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "rogers-ramanujan" => Ok(ModularFunction::RogersRamanujan),
            "j" => Ok(ModularFunction::J),
            _ => match name.strip_prefix("klein-quotient:") {
                Some(rest) => Ok(ModularFunction::KleinQuotient(KleinQuotient::parse(rest)?)),
                None => Err(invalid(format!("unknown function '{name}'"))),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            ModularFunction::RogersRamanujan => "rogers-ramanujan".into(),
            ModularFunction::J => "j".into(),
            ModularFunction::KleinQuotient(k) => k.to_string(),
        }
    }

    pub fn level(&self) -> u64 {
        match self {
            ModularFunction::RogersRamanujan => 5,
            ModularFunction::J => 1,
            ModularFunction::KleinQuotient(k) => k.level,
        }
    }

    /// Whether the `q^(1/N)`-expansion has rational coefficients.
    pub fn has_rational_coefficients(&self) -> bool {
        match self {
            ModularFunction::RogersRamanujan | ModularFunction::J => true,
            ModularFunction::KleinQuotient(k) => {
                let n = k.level as i64;
                k.num[1] % n == 0 && k.den[1] % n == 0
            }
        }
    }

    /// Value rule for `τ ↦ τ + 1`, when it acts on values alone.
    pub fn t_rule(&self, prec: u32) -> Option<ValueMobius> {
        match self {
            ModularFunction::RogersRamanujan => Some(rr_t_rule(prec)),
            ModularFunction::J => Some(ValueMobius::identity(prec)),
            ModularFunction::KleinQuotient(_) => None,
        }
    }

    /// Value rule for `τ ↦ −1/τ`, when it acts on values alone.
    pub fn s_rule(&self, prec: u32) -> Option<ValueMobius> {
        match self {
            ModularFunction::RogersRamanujan => Some(rr_s_rule(prec)),
            ModularFunction::J => Some(ValueMobius::identity(prec)),
            ModularFunction::KleinQuotient(_) => None,
        }
    }

    /// Evaluation without any argument reduction.
    pub fn eval_direct(&self, tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
        check_upper(tau)?;
        match self {
            ModularFunction::RogersRamanujan => eval_rr_product(tau, cfg),
            ModularFunction::J => j_series(tau, cfg),
            ModularFunction::KleinQuotient(k) => k.eval_direct(tau, cfg),
        }
    }

    pub fn eval(&self, tau: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
        match self {
            ModularFunction::RogersRamanujan => eval_rr(tau, cfg),
            ModularFunction::J => eval_j(tau, cfg),
            ModularFunction::KleinQuotient(k) => k.eval(tau, cfg),
        }
    }

    /// Whether `f∘γ = f` numerically for sample `γ` in the principal
    /// congruence subgroup of the function's level.
    pub fn is_level_invariant(&self) -> bool {
        let n = self.level() as i64;
        let cfg = PrecisionConfig::with_target(128);
        let prec = cfg.working_bits();
        let tol = Float::with_val(prec, Float::i_exp(1, -80));
        let up = UnimodularMatrix::from_i64([1, n, 0, 1]).expect("unimodular");
        let down = UnimodularMatrix::from_i64([1, 0, n, 1]).expect("unimodular");
        let gens = [up.clone(), up.inverse(), down.clone(), down.inverse()];
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..4 {
            let mut gamma = UnimodularMatrix::identity();
            for _ in 0..3 {
                gamma = gamma.mul(&gens[rng.random_range(0..gens.len())]);
            }
            let x: f64 = rng.random_range(-0.5..0.5);
            let y: f64 = rng.random_range(0.9..1.5);
            let tau = Complex::with_val(prec, (x, y));
            let (Ok(a), Ok(b)) = (self.eval(&tau, &cfg), self.eval(&gamma.apply(&tau), &cfg))
            else {
                return false;
            };
            let scale = Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, 1));
            if Float::with_val(prec, Complex::with_val(prec, &a - &b).abs_ref())
                > Float::with_val(prec, &tol * &scale)
            {
                return false;
            }
        }
        true
    }

    /// Whether the value rules agree with direct evaluation at sample points.
    /// Computed once per process for the built-in functions.
    pub fn rules_verified(&self) -> bool {
        static RR: OnceLock<bool> = OnceLock::new();
        static J: OnceLock<bool> = OnceLock::new();
        match self {
            ModularFunction::RogersRamanujan => *RR.get_or_init(|| self.verify_rules(10)),
            ModularFunction::J => *J.get_or_init(|| self.verify_rules(10)),
            ModularFunction::KleinQuotient(_) => false,
        }
    }

    /// Checks `f(τ+1) = t_rule(f(τ))` and `f(−1/τ) = s_rule(f(τ))` at
    /// `samples` pseudo-random points near the unit circle.
    pub fn verify_rules(&self, samples: usize) -> bool {
        let cfg = PrecisionConfig::with_target(128);
        let prec = cfg.working_bits();
        let (Some(t), Some(s)) = (self.t_rule(prec), self.s_rule(prec)) else {
            return false;
        };
        let tol = Float::with_val(prec, Float::i_exp(1, -100));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let close = |a: &Complex, b: &Complex| {
            let scale = Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, 1));
            Float::with_val(prec, Complex::with_val(prec, a - b).abs_ref())
                <= Float::with_val(prec, &tol * &scale)
        };
        for _ in 0..samples {
            let x: f64 = rng.random_range(-0.5..0.5);
            let y: f64 = rng.random_range(0.8..1.6);
            let tau = Complex::with_val(prec, (x, y));
            let check = || -> Result<bool> {
                let v = self.eval_direct(&tau, &cfg)?;
                let shifted = self.eval_direct(&Complex::with_val(prec, &tau + 1u32), &cfg)?;
                let inverted =
                    self.eval_direct(&-Complex::with_val(prec, tau.recip_ref()), &cfg)?;
                Ok(close(&shifted, &t.apply(&v)) && close(&inverted, &s.apply(&v)))
            };
            if !matches!(check(), Ok(true)) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for ModularFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One line of the function catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub level: &'static str,
    pub rational_coefficients: &'static str,
    pub description: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "rogers-ramanujan",
            level: "5",
            rational_coefficients: "yes",
            description: "Rogers-Ramanujan continued fraction r(tau), a Hauptmodul for Gamma(5)",
        },
        CatalogEntry {
            name: "j",
            level: "1",
            rational_coefficients: "yes",
            description: "Klein's modular invariant j(tau) = E4^3/eta^24",
        },
        CatalogEntry {
            name: "klein-quotient:p/N,q/N|r/N,s/N",
            level: "N",
            rational_coefficients: "iff q = s = 0 mod N",
            description: "quotient of Klein forms k_[p/N,q/N] / k_[r/N,s/N]",
        },
    ]
}
