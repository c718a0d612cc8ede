//! `SL₂(ℤ)` utilities: matrices, left cosets of `±Γ₁(N)`, lifts of level-`N`
//! data to integral matrices, and reduction of points of the upper half-plane
//! into the standard fundamental domain.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use rug::{Complex, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadforms::ExactCMPoint;

/// `[[d1, d2], [d3, d4]]` with `d1·d4 − d2·d3 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    d: [Integer; 4],
}

impl UnimodularMatrix {
    pub fn new(d1: Integer, d2: Integer, d3: Integer, d4: Integer) -> Result<Self> {
        let det = Integer::from(&d1 * &d4) - Integer::from(&d2 * &d3);
        if det != 1 {
            return Err(invalid(format!(
                "matrix [[{d1}, {d2}], [{d3}, {d4}]] has determinant {det}"
            )));
        }
        Ok(UnimodularMatrix {
            d: [d1, d2, d3, d4],
        })
    }

    pub fn from_i64(d: [i64; 4]) -> Result<Self> {
        Self::new(d[0].into(), d[1].into(), d[2].into(), d[3].into())
    }

    pub fn identity() -> Self {
        Self::unchecked([1, 0, 0, 1])
    }

    /// `S = [[0, −1], [1, 0]]`.
    pub fn s() -> Self {
        Self::unchecked([0, -1, 1, 0])
    }

    /// `T = [[1, 1], [0, 1]]`.
    pub fn t() -> Self {
        Self::unchecked([1, 1, 0, 1])
    }

    /// `Tᵏ`.
    pub fn translation(k: impl Into<Integer>) -> Self {
        UnimodularMatrix {
            d: [1.into(), k.into(), 0.into(), 1.into()],
        }
    }

    fn unchecked(d: [i64; 4]) -> Self {
        UnimodularMatrix {
            d: d.map(Integer::from),
        }
    }

    pub fn entries(&self) -> [&Integer; 4] {
        let [a, b, c, d] = &self.d;
        [a, b, c, d]
    }

    pub fn to_i64(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, e) in out.iter_mut().zip(&self.d) {
            *o = e.to_i64()?;
        }
        Some(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.d;
        let [e, f, g, h] = &other.d;
        UnimodularMatrix {
            d: [
                Integer::from(a * e) + Integer::from(b * g),
                Integer::from(a * f) + Integer::from(b * h),
                Integer::from(c * e) + Integer::from(d * g),
                Integer::from(c * f) + Integer::from(d * h),
            ],
        }
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = &self.d;
        UnimodularMatrix {
            d: [d.clone(), Integer::from(-b), Integer::from(-c), a.clone()],
        }
    }

    pub fn neg(&self) -> Self {
        UnimodularMatrix {
            d: self.d.clone().map(|x| -x),
        }
    }

    /// `γ̂ = [[d4, d2], [d3, d1]]`.
    pub fn hat(&self) -> Self {
        let [a, b, c, d] = &self.d;
        UnimodularMatrix {
            d: [d.clone(), b.clone(), c.clone(), a.clone()],
        }
    }

    pub fn mod_n(&self, n: u64) -> ModMatrix {
        ModMatrix::new(self.d.each_ref().map(|x| residue(x, n)), n)
    }

    /// Exact fractional linear action on a CM point.
    pub fn apply_exact(&self, p: &ExactCMPoint) -> ExactCMPoint {
        let [a, b, c, d] = &self.d;
        let (a, b, c, d) = (
            Rational::from(a),
            Rational::from(b),
            Rational::from(c),
            Rational::from(d),
        );
        let x = p.rational_part();
        let norm = p.norm();
        // (aτ + b)(cτ̄ + d) / |cτ + d|²
        let den = Rational::from(c.square_ref()) * &norm
            + Rational::from(&c * &d) * x * 2u32
            + Rational::from(d.square_ref());
        let re_num = Rational::from(&a * &c) * &norm
            + (Rational::from(&a * &d) + Rational::from(&b * &c)) * x
            + Rational::from(&b * &d);
        let re = re_num / &den;
        let y = Rational::from(p.radical_coefficient() / &den);
        ExactCMPoint::new(re, y, p.radicand().clone())
            .expect("SL2 action preserves the upper half-plane")
    }

    /// Floating fractional linear action `(d1·τ + d2)/(d3·τ + d4)`.
    pub fn apply(&self, tau: &Complex) -> Complex {
        let prec = tau.prec().0;
        let [a, b, c, d] = &self.d;
        let num = Complex::with_val(prec, tau * a) + b;
        let den = Complex::with_val(prec, tau * c) + d;
        num / den
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.d;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

fn residue(x: &Integer, n: u64) -> u64 {
    let r = Integer::from(x.modulo_ref(&Integer::from(n)));
    r.to_u64().expect("residue fits")
}

fn residue_i64(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

/// A 2×2 matrix of residues modulo `level`, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    entries: [u64; 4],
    level: u64,
}

impl ModMatrix {
    pub fn new(entries: [u64; 4], level: u64) -> Self {
        assert!(level >= 1, "level must be positive");
        ModMatrix {
            entries: entries.map(|e| e % level),
            level,
        }
    }

    pub fn from_i64(entries: [i64; 4], level: u64) -> Self {
        Self::new(entries.map(|e| residue_i64(e, level)), level)
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.level, other.level);
        let n = self.level as u128;
        let [a, b, c, d] = self.entries.map(u128::from);
        let [e, f, g, h] = other.entries.map(u128::from);
        let r = |x: u128| (x % n) as u64;
        ModMatrix {
            entries: [
                r(a * e + b * g),
                r(a * f + b * h),
                r(c * e + d * g),
                r(c * f + d * h),
            ],
            level: self.level,
        }
    }

    pub fn det(&self) -> u64 {
        let n = self.level as u128;
        let [a, b, c, d] = self.entries.map(u128::from);
        ((a * d % n + n - b * c % n) % n) as u64
    }

    /// Whether the matrix is `≡ ±[[1, *], [0, 1]]`.
    pub fn is_pm_unipotent_upper(&self) -> bool {
        let n = self.level;
        let [a, _, c, d] = self.entries;
        let one = 1 % n;
        let minus_one = (n - 1) % n;
        c == 0 && ((a == one && d == one) || (a == minus_one && d == minus_one))
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.level)
    }
}

/// Choice of representative for the class `{v, −v}` of a column vector mod `N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    LexMin,
    LexMax,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn normalize_vector(a: i64, c: i64, n: u64) -> Result<(u64, u64)> {
    normalize_vector_with(a, c, n, TieBreak::LexMin)
}

pub fn normalize_vector_with(a: i64, c: i64, n: u64, tie: TieBreak) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(invalid("level must be positive"));
    }
    let (a, c) = (residue_i64(a, n), residue_i64(c, n));
    if gcd_u64(gcd_u64(n, a), c) != 1 {
        return Err(invalid(format!("gcd({n}, {a}, {c}) != 1")));
    }
    let v = (a, c);
    let w = ((n - a) % n, (n - c) % n);
    Ok(match tie {
        TieBreak::LexMin => v.min(w),
        TieBreak::LexMax => v.max(w),
    })
}

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// A matrix in `SL₂(ℤ)` whose first column is `≡ (a, c) mod N`.
pub fn lift_vector_to_sl2(a: i64, c: i64, n: u64) -> Result<UnimodularMatrix> {
    normalize_vector(a, c, n)?;
    if n == 1 {
        return Ok(UnimodularMatrix::identity());
    }
    let (a, c) = (residue_i64(a, n), residue_i64(c, n));
    let (a1, c1) = if gcd_u64(a, c) == 1 {
        (a, c)
    } else {
        // (a + kN, c') coprime, with k the product of the primes of c' not dividing a
        let c1 = if c == 0 { n } else { c };
        let k: u64 = prime_divisors(c1)
            .into_iter()
            .filter(|p| a % p != 0)
            .product();
        (a + k * n, c1)
    };
    let (a1, c1) = (Integer::from(a1), Integer::from(c1));
    let (g, x, y) = a1.extended_gcd_ref(&c1).into();
    debug_assert_eq!(g, 1);
    // a1·x + c1·y = 1  =>  [[a1, −y], [c1, x]]
    let gamma = UnimodularMatrix::new(a1, -y, c1, x)?;
    Ok(gamma)
}

/// A matrix in `SL₂(ℤ)` congruent to `m` entrywise.
pub fn lift_sl2_mod_n(m: &ModMatrix) -> Result<UnimodularMatrix> {
    let n = m.level();
    if m.det() != 1 % n {
        return Err(invalid(format!("{m} does not have determinant 1")));
    }
    let [m1, m2, m3, m4] = m.entries();
    let g0 = lift_vector_to_sl2(m1 as i64, m3 as i64, n)?;
    let [_, b0, _, d0] = g0.entries();
    let nn = Integer::from(n);
    let w1 = Integer::from(m2) - b0;
    let w2 = Integer::from(m4) - d0;
    // γ₀·Tˣ fixes the second column; x = d0·w1 − b0·w2 mod N
    let mut x = (Integer::from(d0 * &w1) - Integer::from(b0 * &w2)).modulo(&nn);
    if Integer::from(&x * 2u32) > nn {
        x -= &nn;
    }
    let gamma = g0.mul(&UnimodularMatrix::translation(x));
    debug_assert_eq!(gamma.mod_n(n), *m);
    Ok(gamma)
}

/// Number of classes `{±(a, c)} mod N` with `gcd(N, a, c) = 1`, i.e. the
/// index of `±Γ₁(N)` in `SL₂(ℤ)`.
pub fn coset_count(n: u64) -> u64 {
    match n {
        1 => 1,
        2 => 3,
        _ => {
            let primes = prime_divisors(n);
            let mut num = n * n;
            for p in &primes {
                num = num / (p * p) * (p * p - 1);
            }
            num / 2
        }
    }
}

/// Left-coset representatives of `±Γ₁(N)` in `SL₂(ℤ)`, one per class of
/// first columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    level: u64,
    tie_break: TieBreak,
    reps: Vec<UnimodularMatrix>,
    key_of: HashMap<(u64, u64), usize>,
}

#[derive(Serialize, Deserialize)]
struct CosetTableJson {
    level: u64,
    reps: Vec<[i64; 4]>,
}

impl CosetTable {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    pub fn reps(&self) -> &[UnimodularMatrix] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the representative of the coset whose first column is `≡ ±(a, c)`.
    pub fn index_of(&self, a: i64, c: i64) -> Option<usize> {
        let key = normalize_vector_with(a, c, self.level, self.tie_break).ok()?;
        self.key_of.get(&key).copied()
    }

    /// Index of the coset containing `γ`.
    pub fn coset_of(&self, gamma: &UnimodularMatrix) -> Option<usize> {
        let [a, _, c, _] = gamma.mod_n(self.level).entries();
        self.index_of(a as i64, c as i64)
    }

    fn from_reps(level: u64, tie_break: TieBreak, reps: Vec<UnimodularMatrix>) -> Result<Self> {
        let mut key_of = HashMap::with_capacity(reps.len());
        for (i, g) in reps.iter().enumerate() {
            let [a, _, c, _] = g.mod_n(level).entries();
            let key = normalize_vector_with(a as i64, c as i64, level, tie_break)?;
            if key_of.insert(key, i).is_some() {
                return Err(invalid(format!("duplicate coset representative {g}")));
            }
        }
        if reps.len() as u64 != coset_count(level) {
            return Err(invalid(format!(
                "coset table for level {level} has {} reps, expected {}",
                reps.len(),
                coset_count(level)
            )));
        }
        Ok(CosetTable {
            level,
            tie_break,
            reps,
            key_of,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let reps = self
            .reps
            .iter()
            .map(|g| {
                g.to_i64()
                    .ok_or_else(|| invalid("coset representative too large for JSON"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::to_string(&CosetTableJson {
            level: self.level,
            reps,
        })?)
    }

    /// Parses and validates a serialized table (default tie-break).
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: CosetTableJson = serde_json::from_str(s)?;
        if raw.level == 0 {
            return Err(invalid("level must be positive"));
        }
        let reps = raw
            .reps
            .into_iter()
            .map(UnimodularMatrix::from_i64)
            .collect::<Result<Vec<_>>>()?;
        Self::from_reps(raw.level, TieBreak::LexMin, reps)
    }
}

pub fn enumerate_cosets(n: u64) -> CosetTable {
    enumerate_cosets_with(n, TieBreak::LexMin)
}

pub fn enumerate_cosets_with(n: u64, tie: TieBreak) -> CosetTable {
    assert!(n >= 1, "level must be positive");
    let mut keys = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if let Ok(key) = normalize_vector_with(a as i64, c as i64, n, tie) {
                if key == (a, c) {
                    keys.push(key);
                }
            }
        }
    }
    let reps = keys
        .into_iter()
        .map(|(a, c)| {
            lift_vector_to_sl2(a as i64, c as i64, n).expect("normalized vectors are admissible")
        })
        .collect();
    CosetTable::from_reps(n, tie, reps).expect("enumeration yields a complete table")
}

/// Environment variable naming the coset-table cache directory.
pub const CACHE_DIR_ENV: &str = "CMCONJ_CACHE_DIR";

/// Cache directory from the environment, falling back to `~/.cache/cmconj`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return Some(PathBuf::from(dir));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("cmconj"))
}

/// Loads the table for level `n` from `dir`, computing and storing it on a
/// miss. A corrupt cache entry is replaced.
pub fn cached_cosets(n: u64, dir: Option<&Path>) -> CosetTable {
    let Some(dir) = dir else {
        return enumerate_cosets(n);
    };
    let path = dir.join(format!("cosets-{n}.json"));
    if let Ok(s) = std::fs::read_to_string(&path) {
        if let Ok(table) = CosetTable::from_json(&s) {
            if table.level == n {
                return table;
            }
        }
    }
    let table = enumerate_cosets(n);
    if let Ok(json) = table.to_json() {
        // the cache is best effort
        let _ = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, json));
    }
    table
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S,
    T,
    TInv,
}

impl Generator {
    pub fn matrix(self) -> UnimodularMatrix {
        match self {
            Generator::S => UnimodularMatrix::s(),
            Generator::T => UnimodularMatrix::t(),
            Generator::TInv => UnimodularMatrix::translation(-1),
        }
    }
}

/// Generators applied to a point in order: `τ_k = g_k(τ_{k−1})`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorWord {
    tokens: Vec<Generator>,
}

impl GeneratorWord {
    pub fn tokens(&self) -> &[Generator] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// `M` with `τ* = M(τ)`.
    pub fn matrix(&self) -> UnimodularMatrix {
        self.tokens
            .iter()
            .fold(UnimodularMatrix::identity(), |acc, g| g.matrix().mul(&acc))
    }
}

const MAX_REDUCTION_STEPS: usize = 100_000;
const MAX_TRANSLATION: i64 = 1 << 40;

/// Moves `τ` into `{|Re τ| ≤ 1/2, |τ| ≥ 1}`, recording the word applied.
pub fn fundamental_domain_reduce(tau: &Complex, prec: u32) -> Result<(Complex, GeneratorWord)> {
    if !tau.imag().is_finite() || !tau.real().is_finite() || *tau.imag() <= 0 {
        return Err(invalid("point is not in the upper half-plane"));
    }
    let mut z = Complex::with_val(prec, tau);
    let mut tokens = Vec::new();
    let half = Float::with_val(prec, 0.5);
    for _ in 0..MAX_REDUCTION_STEPS {
        if Float::with_val(prec, z.real().abs_ref()) > half {
            let n = Float::with_val(prec, z.real().round_ref());
            let k = n
                .to_integer()
                .and_then(|k| k.to_i64())
                .filter(|k| k.abs() < MAX_TRANSLATION);
            let Some(k) = k else {
                return Err(Error::Reduction("real part too large to translate".into()));
            };
            *z.mut_real() -= k;
            let g = if k > 0 { Generator::TInv } else { Generator::T };
            tokens.extend(std::iter::repeat_n(g, k.unsigned_abs() as usize));
        }
        let norm = Float::with_val(prec, z.norm_ref());
        if norm < 1 {
            // -1/τ
            let inv = Complex::with_val(prec, z.recip_ref());
            z = -inv;
            tokens.push(Generator::S);
            if *z.imag() <= 0 || !z.imag().is_finite() {
                return Err(Error::Reduction("imaginary part lost to rounding".into()));
            }
            continue;
        }
        return Ok((z, GeneratorWord { tokens }));
    }
    Err(Error::Reduction("reduction did not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: [i64; 4]) -> UnimodularMatrix {
        UnimodularMatrix::from_i64(d).unwrap()
    }

    #[test]
    fn vector_normalization() {
        assert_eq!(normalize_vector(2, 5, 5).unwrap(), (2, 0));
        assert_eq!(normalize_vector(4, 3, 5).unwrap(), (1, 2));
        assert_eq!(normalize_vector(1, 0, 1).unwrap(), (0, 0));
        assert!(normalize_vector(2, 4, 6).is_err());
        assert_eq!(
            normalize_vector_with(4, 3, 5, TieBreak::LexMax).unwrap(),
            (4, 3)
        );
    }

    #[test]
    fn coset_counts() {
        assert_eq!(enumerate_cosets(5).len(), 12);
        let one = enumerate_cosets(1);
        assert_eq!(one.len(), 1);
        assert!(one.reps()[0].is_identity());
        assert_eq!(enumerate_cosets(2).len(), 3);
    }

    #[test]
    fn vector_lifts() {
        let g = lift_vector_to_sl2(2, 0, 5).unwrap();
        let [a, _, c, _] = g.mod_n(5).entries();
        assert_eq!((a, c), (2, 0));
        assert!(lift_vector_to_sl2(1, 0, 7).unwrap().is_identity());
        assert_eq!(lift_vector_to_sl2(0, 1, 5).unwrap(), m([0, -1, 1, 0]));
        assert!(lift_vector_to_sl2(3, 6, 9).is_err());
    }

    #[test]
    fn matrix_lifts() {
        let s = ModMatrix::from_i64([0, -1, 1, 0], 5);
        assert_eq!(lift_sl2_mod_n(&s).unwrap(), m([0, -1, 1, 0]));
        assert!(lift_sl2_mod_n(&ModMatrix::from_i64([1, 0, 0, 1], 7))
            .unwrap()
            .is_identity());
        assert_eq!(
            lift_sl2_mod_n(&ModMatrix::from_i64([0, 4, 1, 2], 5)).unwrap(),
            m([0, -1, 1, 2])
        );
        assert!(lift_sl2_mod_n(&ModMatrix::from_i64([2, 0, 0, 2], 5)).is_err());
    }

    #[test]
    fn hat_examples() {
        assert_eq!(m([5, -3, 2, -1]).hat(), m([-1, -3, 2, 5]));
        assert!(UnimodularMatrix::identity().hat().is_identity());
        assert_eq!(m([2, -1, 5, -2]).hat(), m([-2, -1, 5, 2]));
    }

    #[test]
    fn mobius_examples() {
        let i = Complex::with_val(128, (0, 1));
        assert_eq!(UnimodularMatrix::identity().apply(&i), i);
        let tau = Complex::with_val(128, (0.25, 1.5));
        let shifted = UnimodularMatrix::t().apply(&tau);
        assert_eq!(shifted, Complex::with_val(128, (1.25, 1.5)));
        let si = UnimodularMatrix::s().apply(&i);
        assert!(Float::with_val(128, Complex::with_val(128, &si - &i).abs_ref()) < 1e-35);
    }

    #[test]
    fn fundamental_domain_examples() {
        let prec = 256;
        let sqrt13 = Float::with_val(prec, 13).sqrt();
        let tau = Complex::with_val(prec, (0, &sqrt13));
        let (z, w) = fundamental_domain_reduce(&tau, prec).unwrap();
        assert!(w.is_empty());
        assert_eq!(z, tau);

        let shifted = Complex::with_val(prec, (3, &sqrt13));
        let (z, w) = fundamental_domain_reduce(&shifted, prec).unwrap();
        assert_eq!(w.tokens(), &[Generator::TInv; 3]);
        assert_eq!(z, tau);

        let g = m([3, -5, 5, -8]);
        let low = g.apply(&tau);
        assert!(*low.imag() < 0.01);
        let (z, w) = fundamental_domain_reduce(&low, prec).unwrap();
        assert!(Float::with_val(prec, z.imag()) >= Float::with_val(prec, 3).sqrt() / 2u32 - 1e-60);
        let replay = w.matrix().apply(&low);
        assert!(Float::with_val(prec, Complex::with_val(prec, &replay - &z).abs_ref()) < 1e-60);
    }

    #[test]
    fn rejects_lower_half_plane() {
        let z = Complex::with_val(64, (0.1, -1));
        assert!(fundamental_domain_reduce(&z, 64).is_err());
    }

    #[test]
    fn index_formula() {
        for n in 1..=12u64 {
            let count = (0..n)
                .flat_map(|a| (0..n).map(move |c| (a, c)))
                .filter(|&(a, c)| gcd_u64(gcd_u64(n, a), c) == 1)
                .count() as u64;
            // for N ≤ 2 every class is its own negative
            let classes = if n <= 2 { count } else { count / 2 };
            assert_eq!(enumerate_cosets(n).len() as u64, classes, "N = {n}");
            assert_eq!(coset_count(n), classes);
        }
    }
}
