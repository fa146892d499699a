//! Exact Gaussian-integer arithmetic and the small amount of elementary
//! number theory (trial division, Legendre symbols, sums of two squares)
//! that the feasibility filters are built on.
//!
//! All inputs at the scale this crate works with are tiny (PSD values are
//! bounded by `2ℓ + 2`), so factorization is plain trial division.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of ℤ[i].
///
/// Arithmetic operators panic on overflow; use [`GaussInt::checked_mul`] or
/// [`gauss_mul`] where a reported error is preferable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn conj(self) -> Self {
        GaussInt { re: self.re, im: -self.im }
    }

    /// `re² + im²`.
    pub fn norm(self) -> u64 {
        self.checked_norm().expect("Gaussian norm overflow")
    }

    pub fn checked_norm(self) -> Option<u64> {
        let re = self.re.unsigned_abs().checked_mul(self.re.unsigned_abs())?;
        let im = self.im.unsigned_abs().checked_mul(self.im.unsigned_abs())?;
        re.checked_add(im)
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(GaussInt { re: self.re.checked_add(rhs.re)?, im: self.im.checked_add(rhs.im)? })
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(GaussInt { re: self.re.checked_sub(rhs.re)?, im: self.im.checked_sub(rhs.im)? })
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let rr = self.re.checked_mul(rhs.re)?;
        let ii = self.im.checked_mul(rhs.im)?;
        let ri = self.re.checked_mul(rhs.im)?;
        let ir = self.im.checked_mul(rhs.re)?;
        Some(GaussInt { re: rr.checked_sub(ii)?, im: ri.checked_add(ir)? })
    }

    /// Multiplication by `i`.
    pub const fn mul_i(self) -> Self {
        GaussInt { re: -self.im, im: self.re }
    }

    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// `true` for the four units `±1, ±i`.
    pub const fn is_unit(self) -> bool {
        (self.re.abs() + self.im.abs()) == 1
    }

    pub fn scale(self, k: i64) -> Self {
        GaussInt::new(self.re * k, self.im * k)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re as f64, self.im as f64)
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::new(re, 0)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("Gaussian integer overflow")
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("Gaussian integer overflow")
    }
}

impl SubAssign for GaussInt {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("Gaussian integer overflow")
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> Self {
        GaussInt::new(-self.re, -self.im)
    }
}

impl std::iter::Sum for GaussInt {
    fn sum<I: Iterator<Item = GaussInt>>(iter: I) -> Self {
        iter.fold(GaussInt::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(f: &mut fmt::Formatter<'_>, im: i64, with_plus: bool) -> fmt::Result {
            let sign = if im < 0 {
                "-"
            } else if with_plus {
                "+"
            } else {
                ""
            };
            match im.unsigned_abs() {
                1 => write!(f, "{sign}i"),
                m => write!(f, "{sign}{m}i"),
            }
        }
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => imag(f, im, false),
            (re, im) => {
                write!(f, "{re}")?;
                imag(f, im, true)
            }
        }
    }
}

impl FromStr for GaussInt {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i`/`-i` as shorthand for a
    /// unit imaginary part. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Gaussian integer `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let parse_imag = |body: &str| -> Result<i64> {
            match body {
                "" | "+" => Ok(1),
                "-" => Ok(-1),
                _ => body.parse::<i64>().map_err(|_| bad()),
            }
        };
        if let Some(body) = t.strip_suffix('i') {
            // find the split between the real and imaginary parts: the last
            // sign that is not at position 0
            let split =
                body.char_indices().filter(|&(k, c)| k > 0 && (c == '+' || c == '-')).map(|(k, _)| k).next_back();
            match split {
                Some(k) => {
                    let re = body[..k].parse::<i64>().map_err(|_| bad())?;
                    let im = parse_imag(&body[k..])?;
                    Ok(GaussInt::new(re, im))
                }
                None => Ok(GaussInt::new(0, parse_imag(body)?)),
            }
        } else {
            Ok(GaussInt::new(t.parse::<i64>().map_err(|_| bad())?, 0))
        }
    }
}

impl Serialize for GaussInt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A fourth root of unity, stored as the exponent `k` in `i^k`.
///
/// The derived ordering is `1 < i < -1 < -i`, which is the order used by every
/// deterministic enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSymbol(u8);

impl QSymbol {
    pub const ONE: QSymbol = QSymbol(0);
    pub const I: QSymbol = QSymbol(1);
    pub const NEG_ONE: QSymbol = QSymbol(2);
    pub const NEG_I: QSymbol = QSymbol(3);

    /// All four symbols in enumeration order.
    pub const ALL: [QSymbol; 4] = [QSymbol::ONE, QSymbol::I, QSymbol::NEG_ONE, QSymbol::NEG_I];

    pub const fn from_power(k: u8) -> Self {
        QSymbol(k & 3)
    }

    pub const fn power(self) -> u8 {
        self.0
    }

    pub const fn value(self) -> GaussInt {
        match self.0 {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn try_from_gauss(z: GaussInt) -> Option<Self> {
        match (z.re, z.im) {
            (1, 0) => Some(QSymbol::ONE),
            (0, 1) => Some(QSymbol::I),
            (-1, 0) => Some(QSymbol::NEG_ONE),
            (0, -1) => Some(QSymbol::NEG_I),
            _ => None,
        }
    }

    pub const fn neg(self) -> Self {
        QSymbol((self.0 + 2) & 3)
    }

    pub const fn conj(self) -> Self {
        QSymbol((4 - self.0) & 3)
    }

    pub const fn mul(self, rhs: QSymbol) -> Self {
        QSymbol((self.0 + rhs.0) & 3)
    }

    pub const fn mul_i(self) -> Self {
        QSymbol((self.0 + 1) & 3)
    }

    pub const fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        self.value().to_complex()
    }
}

impl fmt::Display for QSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

impl FromStr for QSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" => Ok(QSymbol::ONE),
            "i" | "+i" | "1i" => Ok(QSymbol::I),
            "-1" => Ok(QSymbol::NEG_ONE),
            "-i" | "-1i" => Ok(QSymbol::NEG_I),
            other => Err(Error::Parse(format!("`{other}` is not one of 1, -1, i, -i"))),
        }
    }
}

/// Exact product in ℤ[i], reporting overflow instead of wrapping.
pub fn gauss_mul(z: GaussInt, w: GaussInt) -> Result<GaussInt> {
    z.checked_mul(w).ok_or(Error::Overflow("Gaussian product"))
}

pub fn gauss_norm(z: GaussInt) -> Result<u64> {
    z.checked_norm().ok_or(Error::Overflow("Gaussian norm"))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(j / p)` via Euler's criterion.
pub fn legendre_symbol(j: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let r = j.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Product of the primes dividing `n` to an odd power.
pub fn squarefree_part(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("square-free part of 0 is undefined".into()));
    }
    Ok(factorize(n).into_iter().filter(|&(_, e)| e % 2 == 1).map(|(q, _)| q).product())
}

/// Sum-of-two-squares theorem: no prime `≡ 3 (mod 4)` in the square-free part.
pub fn is_sum_of_two_squares(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    factorize(n).into_iter().all(|(q, e)| q % 4 != 3 || e % 2 == 0)
}

/// Every ordered `(a, b)` with `a² + b² = n`, sorted by `a` then `b`.
pub fn two_square_reps(n: u64) -> Vec<(i64, i64)> {
    let r = isqrt(n) as i64;
    let mut out = Vec::new();
    for a in -r..=r {
        let rest = n - (a * a) as u64;
        let b = isqrt(rest) as i64;
        if (b * b) as u64 == rest {
            match b.cmp(&0) {
                Ordering::Equal => out.push((a, 0)),
                _ => {
                    out.push((a, -b));
                    out.push((a, b));
                }
            }
        }
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
