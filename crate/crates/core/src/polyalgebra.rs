//! Exact polynomial arithmetic in ℤ[x] and the numeric-to-exact bridge.

use std::fmt;

use rug::ops::Pow;
use rug::{Complex, Float, Integer};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients, stored in ascending degree order
/// without trailing zeros. The empty vector is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Coefficients listed from the leading term down to the constant.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        let mut v: Vec<Integer> = coeffs.iter().map(|&c| Integer::from(c)).collect();
        v.reverse();
        IntPolynomial::new(v)
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64(&[1])
    }

    /// `x − a`.
    pub fn linear(a: i64) -> Self {
        IntPolynomial::from_i64(&[-a, 1])
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Integer::new();
        let v = (0..n)
            .map(|i| {
                Integer::from(
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        IntPolynomial::new(v)
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += Integer::from(a * b);
            }
        }
        IntPolynomial::new(v)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| Integer::from(c * k)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = IntPolynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Integer::from(c * i as u64))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::new(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if *self.leading().unwrap() < 0 {
            g = -g;
        }
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Integer::from(c.div_exact_ref(&g)))
                .collect(),
        }
    }

    /// Pseudo-remainder of `self` by a nonzero `d`: the remainder of
    /// `lc(d)^(deg self − deg d + 1)·self` on division by `d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else { return r };
        if dr < dd {
            return r;
        }
        let mut steps = dr - dd + 1;
        while let Some(deg) = r.degree() {
            if deg < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = deg - dd;
            let mut v: Vec<Integer> = r.coeffs.iter().map(|c| Integer::from(c * lc)).collect();
            for (i, c) in d.coeffs.iter().enumerate() {
                v[i + shift] -= Integer::from(c * &lr);
            }
            r = IntPolynomial::new(v);
            steps -= 1;
        }
        r.scale(&Integer::from(lc.pow(steps as u32)))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in ℤ[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(IntPolynomial::zero());
        };
        if dr < dd {
            return None;
        }
        let mut q = vec![Integer::new(); dr - dd + 1];
        while let Some(deg) = r.degree() {
            if deg < dd {
                return None;
            }
            let (t, rem) = r.leading().unwrap().clone().div_rem(lc.clone());
            if rem != 0 {
                return None;
            }
            let shift = deg - dd;
            let mut v = r.coeffs.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                v[i + shift] -= Integer::from(c * &t);
            }
            q[shift] = t;
            r = IntPolynomial::new(v);
        }
        Some(IntPolynomial::new(q))
    }

    /// Exact value at an integer.
    pub fn eval_integer(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::new(), |acc, c| acc * x + c)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let abs = Integer::from(c.abs_ref());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs == 1;
            if !unit || i == 0 {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str(if unit { "x" } else { "*x" })?,
                _ => write!(f, "{}x^{i}", if unit { "" } else { "*" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| {
                Integer::from_str_radix(s, 10)
                    .map_err(|e| D::Error::custom(format!("bad coefficient '{s}': {e}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Nearest integers to the real parts, with the largest deviation from an
/// integer (imaginary parts included).
pub fn nearest_integers(coeffs: &[Complex]) -> (IntPolynomial, Float) {
    let prec = coeffs.iter().map(|c| c.prec().0).max().unwrap_or(64);
    let mut worst = Float::new(prec);
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let re = c.real();
        let rounded = Float::with_val(prec, re.round_ref());
        let dev = Float::with_val(prec, re - &rounded).abs();
        let im = Float::with_val(prec, c.imag().abs_ref());
        worst = worst.max(&dev).max(&im);
        ints.push(rounded.to_integer().unwrap_or_default());
    }
    (IntPolynomial::new(ints), worst)
}

/// Rounds numeric coefficients (ascending degree) to integers, failing when
/// any coefficient is not within `2^(−target_bits/4)` of an integer.
pub fn round_coefficients(coeffs: &[Complex], target_bits: u32) -> Result<(IntPolynomial, Float)> {
    let (p, residual) = nearest_integers(coeffs);
    let threshold = Float::with_val(
        residual.prec(),
        Float::i_exp(1, -((target_bits / 4) as i32)),
    );
    if !residual.is_finite() || residual >= threshold {
        return Err(Error::Rounding {
            residual: residual.to_f64(),
            threshold: threshold.to_f64(),
        });
    }
    Ok((p, residual))
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.primitive_part(), q.primitive_part())
    } else {
        (q.primitive_part(), p.primitive_part())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

/// `p / gcd(p, p′)`, normalized to positive leading coefficient. For a
/// perfect power `g^ℓ` of a squarefree primitive `g`, this is `g`.
pub fn squarefree_part(p: &IntPolynomial) -> IntPolynomial {
    if p.degree().unwrap_or(0) == 0 {
        return p.primitive_part();
    }
    let g = poly_gcd(p, &p.derivative());
    let q = p
        .primitive_part()
        .div_exact(&g)
        .expect("gcd divides its argument");
    q.primitive_part()
}

/// The exponent `ℓ` with `p = g^ℓ`, verified by exact multiplication.
pub fn power_check(p: &IntPolynomial, g: &IntPolynomial) -> Result<u32> {
    let (Some(dp), Some(dg)) = (p.degree(), g.degree()) else {
        return Err(Error::PowerCheck);
    };
    if dg == 0 || dp % dg != 0 {
        return Err(Error::PowerCheck);
    }
    let ell = u32::try_from(dp / dg).map_err(|_| Error::PowerCheck)?;
    if g.pow(ell) == *p {
        Ok(ell)
    } else {
        Err(Error::PowerCheck)
    }
}

/// Horner evaluation at the precision of `z`.
pub fn eval_poly(p: &IntPolynomial, z: &Complex) -> Complex {
    let prec = z.prec().0;
    let mut acc = Complex::new(prec);
    for c in p.coefficients().iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

/// `∏ (x − v)` with complex coefficients, ascending degree.
pub fn product_of_linear(values: &[Complex], prec: u32) -> Vec<Complex> {
    let mut coeffs = vec![Complex::with_val(prec, 1)];
    for v in values {
        let mut next = vec![Complex::new(prec); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= Complex::with_val(prec, c * v);
        }
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending(desc)
    }

    #[test]
    fn rounding_semantics() {
        let prec = 200;
        let c = |re: f64| Complex::with_val(prec, (re, 0));
        let coeffs = [c(-996.000_000_01), c(81.999_999_99), c(1.0)];
        let (p, residual) = nearest_integers(&coeffs);
        assert_eq!(p, poly(&[1, 82, -996]));
        assert!((residual.to_f64() - 1e-8).abs() < 1e-12);
        assert!(round_coefficients(&coeffs, 128).is_err());
        assert!(round_coefficients(&coeffs, 96).is_ok());

        let exact = [c(3.0), c(-7.0), c(1.0)];
        let (p, residual) = round_coefficients(&exact, 256).unwrap();
        assert_eq!(p, poly(&[1, -7, 3]));
        assert_eq!(residual, 0);

        let complex = [Complex::with_val(prec, (2, 1e-3)), c(1.0)];
        assert!(round_coefficients(&complex, 64).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            poly_gcd(&poly(&[1, 0, -1]), &poly(&[1, -2, 1])),
            poly(&[1, -1])
        );
        assert_eq!(
            poly_gcd(&poly(&[-6, 4, 2]), &IntPolynomial::zero()),
            poly(&[3, -2, -1])
        );
        let p = poly(&[1, 0, 1]).pow(2);
        assert_eq!(poly_gcd(&p, &p.derivative()), poly(&[1, 0, 1]));
        assert_eq!(
            poly_gcd(&poly(&[1, 0, 1]), &poly(&[1, 1])),
            IntPolynomial::one()
        );
        assert!(poly_gcd(&IntPolynomial::zero(), &IntPolynomial::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&poly(&[1, 0, 1]).pow(2)), poly(&[1, 0, 1]));
        assert_eq!(
            squarefree_part(&IntPolynomial::linear(3).pow(4)),
            IntPolynomial::linear(3)
        );
        let p = poly(&[1, 0, -2]);
        assert_eq!(squarefree_part(&p), p);
    }

    #[test]
    fn power_check_examples() {
        let g = poly(&[1, 0, 1]);
        assert_eq!(power_check(&g.pow(3), &g).unwrap(), 3);
        assert_eq!(power_check(&g, &g).unwrap(), 1);
        assert!(matches!(
            power_check(&g, &poly(&[1, 1])),
            Err(Error::PowerCheck)
        ));
        let mixed = IntPolynomial::linear(0)
            .pow(2)
            .mul(&IntPolynomial::linear(1));
        assert!(power_check(&mixed, &squarefree_part(&mixed)).is_err());
    }

    #[test]
    fn eval_examples() {
        let i = Complex::with_val(128, (0, 1));
        assert_eq!(eval_poly(&poly(&[1, 0, 1]), &i), 0);
        let x = Complex::with_val(128, 82);
        assert_eq!(eval_poly(&IntPolynomial::linear(82), &x), 0);
        assert_eq!(poly(&[1, -3, 2]).eval_integer(&Integer::from(2)), 0);
    }

    #[test]
    fn display_and_json() {
        assert_eq!(poly(&[1, 82, -996]).to_string(), "x^2 + 82*x - 996");
        assert_eq!(poly(&[-1, 0, 1, -1]).to_string(), "-x^3 + x - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let p = poly(&[1, -2, 3]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["3","-2","1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), p);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["x"]"#).is_err());
    }

    #[test]
    fn linear_product_expands() {
        let prec = 128;
        let vals = [Complex::with_val(prec, 2), Complex::with_val(prec, -3)];
        let (p, r) = nearest_integers(&product_of_linear(&vals, prec));
        assert_eq!(p, poly(&[1, 1, -6]));
        assert_eq!(r, 0);
    }
}
