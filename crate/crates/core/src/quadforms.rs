//! Primitive positive definite binary quadratic forms.
//!
//! A form `ax² + bxy + cy²` is acted on from the right by `SL₂(ℤ)` through
//! `Q^γ(x, y) = Q(γ·(x, y)ᵀ)`. Every class has exactly one reduced
//! representative, and the reduced forms of a discriminant are listed in
//! lexicographic order of `(a, b)`.

use std::fmt;

use rug::ops::DivRounding;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{invalid, Result};
use crate::modgroup::UnimodularMatrix;

/// `ax² + bxy + cy²` with `b² − 4ac < 0`, `a > 0` and `gcd(a, b, c) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    a: Integer,
    b: Integer,
    c: Integer,
}

impl QuadraticForm {
    pub fn new(
        a: impl Into<Integer>,
        b: impl Into<Integer>,
        c: impl Into<Integer>,
    ) -> Result<Self> {
        let form = QuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        if form.a <= 0 {
            return Err(invalid(format!("form {form} is not positive definite")));
        }
        if form.discriminant() >= 0 {
            return Err(invalid(format!("form {form} has nonnegative discriminant")));
        }
        let g = Integer::from(form.a.gcd_ref(&form.b)).gcd(&form.c);
        if g != 1 {
            return Err(invalid(format!("form {form} is not primitive")));
        }
        Ok(form)
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn c(&self) -> &Integer {
        &self.c
    }

    /// `b² − 4ac`.
    pub fn discriminant(&self) -> Integer {
        let b2 = Integer::from(self.b.square_ref());
        let ac = Integer::from(&self.a * &self.c);
        b2 - ac * 4u32
    }

    /// Value `Q(x, y)`.
    pub fn value(&self, x: &Integer, y: &Integer) -> Integer {
        let mut v = Integer::from(x.square_ref()) * &self.a;
        v += Integer::from(x * y) * &self.b;
        v += Integer::from(y.square_ref()) * &self.c;
        v
    }

    /// The transformed form `Q^γ(x, y) = Q(γ·(x, y)ᵀ)`.
    pub fn act(&self, gamma: &UnimodularMatrix) -> QuadraticForm {
        let [p, q, r, s] = gamma.entries();
        let a = self.value(p, r);
        let c = self.value(q, s);
        // 2apq + b(ps + qr) + 2crs
        let mut b = Integer::from(p * q) * &self.a * 2u32;
        b += (Integer::from(p * s) + Integer::from(q * r)) * &self.b;
        b += Integer::from(r * s) * &self.c * 2u32;
        QuadraticForm { a, b, c }
    }

    pub fn is_reduced(&self) -> bool {
        let abs_b = Integer::from(self.b.abs_ref());
        if abs_b > self.a || self.a > self.c {
            return false;
        }
        if (abs_b == self.a || self.a == self.c) && self.b < 0 {
            return false;
        }
        true
    }

    /// Gauss reduction. Returns `(R, γ)` with `R` reduced and `R = Q^γ`.
    pub fn reduce(&self) -> (QuadraticForm, UnimodularMatrix) {
        let mut form = self.clone();
        let mut gamma = UnimodularMatrix::identity();
        loop {
            // translate b into (-a, a]
            let two_a = Integer::from(&form.a * 2u32);
            let k = (Integer::from(&form.a - &form.b)).div_floor(two_a);
            if k != 0 {
                let step = UnimodularMatrix::translation(k);
                form = form.act(&step);
                gamma = gamma.mul(&step);
            }
            if form.a > form.c || (form.a == form.c && form.b < 0) {
                let step = UnimodularMatrix::s();
                form = form.act(&step);
                gamma = gamma.mul(&step);
                continue;
            }
            break;
        }
        debug_assert!(form.is_reduced());
        (form, gamma)
    }

    /// The root `ω_Q = (−b + √D)/(2a)` of `Q(x, 1)` in the upper half-plane.
    pub fn omega(&self) -> ExactCMPoint {
        let two_a = Integer::from(&self.a * 2u32);
        ExactCMPoint {
            rational_part: Rational::from((Integer::from(-&self.b), two_a.clone())),
            radical_coefficient: Rational::from((Integer::from(1), two_a)),
            radicand: self.discriminant(),
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub(crate) fn check_discriminant(d: &Integer) -> Result<()> {
    if *d >= 0 {
        return Err(invalid(format!("discriminant {d} must be negative")));
    }
    let r = Integer::from(d.mod_u(4));
    if r != 0 && r != 1 {
        return Err(invalid(format!("discriminant {d} must be 0 or 1 mod 4")));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `d`, sorted by `(a, b)`.
pub fn enumerate_reduced(d: &Integer) -> Result<Vec<QuadraticForm>> {
    check_discriminant(d)?;
    let abs_d = Integer::from(d.abs_ref());
    let parity = d.is_odd();
    let mut out = Vec::new();
    let mut a = Integer::from(1);
    // a ≤ sqrt(|D|/3)  <=>  3a² ≤ |D|
    while Integer::from(a.square_ref()) * 3u32 <= abs_d {
        let mut b = Integer::from(-&a) + 1u32;
        while b <= a {
            if b.is_odd() == parity {
                let num = Integer::from(b.square_ref()) - d;
                let four_a = Integer::from(&a * 4u32);
                if num.is_divisible(&four_a) {
                    let c = num.div_exact(&four_a);
                    let boundary = Integer::from(b.abs_ref()) == a || a == c;
                    if c >= a && !(boundary && b < 0) {
                        let g = Integer::from(a.gcd_ref(&b)).gcd(&c);
                        if g == 1 {
                            out.push(QuadraticForm {
                                a: a.clone(),
                                b: b.clone(),
                                c,
                            });
                        }
                    }
                }
            }
            b += 1u32;
        }
        a += 1u32;
    }
    Ok(out)
}

/// Class number `h(D)` counted by reduced forms.
pub fn class_number(d: &Integer) -> Result<usize> {
    Ok(enumerate_reduced(d)?.len())
}

/// The order `O = ℤτ_O + ℤ` of discriminant `D` in an imaginary quadratic field.
///
/// The conductor is `[O_K : O]`, computed as the largest `f` with `D/f²` a
/// fundamental discriminant. For `D = −52` this gives 1, since `−52` is
/// itself fundamental.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMOrder {
    discriminant: Integer,
    b_o: Integer,
    c_o: Integer,
    fundamental_discriminant: Integer,
    conductor: Integer,
}

impl CMOrder {
    pub fn new(d: impl Into<Integer>) -> Result<Self> {
        let d = d.into();
        check_discriminant(&d)?;
        let (b_o, c_o) = if d.is_even() {
            (Integer::from(0), Integer::from(-&d) / 4u32)
        } else {
            (Integer::from(1), (Integer::from(1) - &d) / 4u32)
        };
        let (fundamental_discriminant, conductor) = fundamental_part(&d);
        Ok(CMOrder {
            discriminant: d,
            b_o,
            c_o,
            fundamental_discriminant,
            conductor,
        })
    }

    pub fn discriminant(&self) -> &Integer {
        &self.discriminant
    }

    pub fn b_o(&self) -> &Integer {
        &self.b_o
    }

    pub fn c_o(&self) -> &Integer {
        &self.c_o
    }

    pub fn fundamental_discriminant(&self) -> &Integer {
        &self.fundamental_discriminant
    }

    pub fn conductor(&self) -> &Integer {
        &self.conductor
    }

    /// `x² + b_O·xy + c_O·y²`.
    pub fn principal_form(&self) -> QuadraticForm {
        QuadraticForm {
            a: Integer::from(1),
            b: self.b_o.clone(),
            c: self.c_o.clone(),
        }
    }

    /// `τ_O`, the upper half-plane root of `x² + b_O x + c_O`.
    pub fn tau(&self) -> ExactCMPoint {
        self.principal_form().omega()
    }
}

fn is_discriminant(d: &Integer) -> bool {
    let r = d.mod_u(4);
    r == 0 || r == 1
}

fn fundamental_part(d: &Integer) -> (Integer, Integer) {
    let mut best = (d.clone(), Integer::from(1));
    let mut f = Integer::from(2);
    while Integer::from(f.square_ref()) <= Integer::from(d.abs_ref()) {
        let f2 = Integer::from(f.square_ref());
        if d.is_divisible(&f2) {
            let q = Integer::from(d.div_exact_ref(&f2));
            if is_discriminant(&q) {
                best = (q, f.clone());
            }
        }
        f += 1u32;
    }
    best
}

/// `rational_part + radical_coefficient·√radicand` with a negative radicand.
///
/// Equality is semantic: `√−52/2` and `√−13` compare equal.
#[derive(Clone, Debug)]
pub struct ExactCMPoint {
    pub(crate) rational_part: Rational,
    pub(crate) radical_coefficient: Rational,
    pub(crate) radicand: Integer,
}

impl ExactCMPoint {
    pub fn new(
        rational_part: Rational,
        radical_coefficient: Rational,
        radicand: Integer,
    ) -> Result<Self> {
        if radicand >= 0 {
            return Err(invalid("radicand must be negative"));
        }
        if radical_coefficient <= 0 {
            return Err(invalid("radical coefficient must be positive"));
        }
        Ok(ExactCMPoint {
            rational_part,
            radical_coefficient,
            radicand,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn radical_coefficient(&self) -> &Rational {
        &self.radical_coefficient
    }

    pub fn radicand(&self) -> &Integer {
        &self.radicand
    }

    /// `−p̄`: reflection across the imaginary axis.
    pub fn neg_conjugate(&self) -> ExactCMPoint {
        ExactCMPoint {
            rational_part: Rational::from(-&self.rational_part),
            radical_coefficient: self.radical_coefficient.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// `|p|² = x² − y²·R` as an exact rational.
    pub fn norm(&self) -> Rational {
        let x2 = Rational::from(self.rational_part.square_ref());
        let y2 = Rational::from(self.radical_coefficient.square_ref());
        x2 - y2 * &self.radicand
    }

    /// Squared imaginary part `−y²·R`.
    pub fn imag_squared(&self) -> Rational {
        let y2 = Rational::from(self.radical_coefficient.square_ref());
        -(y2 * &self.radicand)
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        let re = Float::with_val(prec, &self.rational_part);
        let mut im = Float::with_val(prec, Integer::from(-&self.radicand));
        im.sqrt_mut();
        im *= &self.radical_coefficient;
        Complex::with_val(prec, (re, im))
    }
}

impl PartialEq for ExactCMPoint {
    fn eq(&self, other: &Self) -> bool {
        self.rational_part == other.rational_part && self.imag_squared() == other.imag_squared()
    }
}

impl Eq for ExactCMPoint {}

impl fmt::Display for ExactCMPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut coeff = self.radical_coefficient.clone();
        let mut radicand = self.radicand.clone();
        let mut k = Integer::from(2);
        while Integer::from(k.square_ref()) <= Integer::from(radicand.abs_ref()) {
            let k2 = Integer::from(k.square_ref());
            if radicand.is_divisible(&k2) {
                radicand /= &k2;
                coeff *= &k;
            } else {
                k += 1u32;
            }
        }
        let radical = if coeff == 1 {
            format!("sqrt({radicand})")
        } else {
            format!("{coeff}*sqrt({radicand})")
        };
        if self.rational_part == 0 {
            f.write_str(&radical)
        } else {
            write!(f, "{} + {radical}", self.rational_part)
        }
    }
}
