//! Quaternary sequences and their periodic autocorrelation, DFT, PSD and
//! circulant matrices.
//!
//! Two evaluation tiers are used throughout. The PAF, and the DFT at lags `s`
//! with `4s ≡ 0 (mod ℓ)`, only involve powers of `i` and are computed exactly
//! in ℤ[i]. All other DFT values are double precision and are only ever used
//! to prune.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{GaussInt, QSymbol};
use crate::matrix::GaussMatrix;

/// Tolerance used when a floating point PSD is asserted to be an integer.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// `ξ_ℓ^k = exp(2πik/ℓ)` for `k = 0..ℓ`, exact at quarter turns.
#[derive(Debug, Clone)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(len: usize) -> Self {
        let roots = (0..len)
            .map(|k| {
                if (4 * k) % len == 0 {
                    match 4 * k / len {
                        0 => Complex64::new(1.0, 0.0),
                        1 => Complex64::new(0.0, 1.0),
                        2 => Complex64::new(-1.0, 0.0),
                        _ => Complex64::new(0.0, -1.0),
                    }
                } else {
                    let (s, c) = (2.0 * PI * k as f64 / len as f64).sin_cos();
                    Complex64::new(c, s)
                }
            })
            .collect();
        RootTable { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `ξ^k` with `k` reduced modulo the length.
    #[inline]
    pub fn root(&self, k: usize) -> Complex64 {
        self.roots[k % self.roots.len()]
    }
}

/// `true` when `ξ_ℓ^s` is a power of `i`, so the DFT at lag `s` is exact.
pub fn is_exact_lag(len: usize, s: usize) -> bool {
    len > 0 && (4 * s).is_multiple_of(len)
}

/// Exact periodic autocorrelation of a Gaussian-integer sequence.
pub fn paf_of(seq: &[GaussInt], s: usize) -> Result<GaussInt> {
    let n = seq.len();
    if s >= n {
        return Err(Error::LagOutOfRange { lag: s, len: n });
    }
    Ok((0..n).map(|j| seq[j] * seq[(j + s) % n].conj()).sum())
}

pub fn dft_of(seq: &[GaussInt], s: usize, roots: &RootTable) -> Complex64 {
    debug_assert_eq!(roots.len(), seq.len());
    seq.iter().enumerate().map(|(j, z)| z.to_complex() * roots.root(j * s)).sum()
}

/// Exact DFT at a lag with `4s ≡ 0 (mod ℓ)`.
pub fn dft_exact_of(seq: &[GaussInt], s: usize) -> Result<GaussInt> {
    let n = seq.len();
    if s >= n {
        return Err(Error::LagOutOfRange { lag: s, len: n });
    }
    if !is_exact_lag(n, s) {
        return Err(Error::UnsupportedExactLag { lag: s, len: n });
    }
    let step = 4 * s / n;
    Ok(seq
        .iter()
        .enumerate()
        .map(|(j, &z)| {
            let mut w = z;
            for _ in 0..(j * step) % 4 {
                w = w.mul_i();
            }
            w
        })
        .sum())
}

/// A PSD value: exact when the lag admits exact evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Psd {
    Exact(u64),
    Approx(f64),
}

impl Psd {
    pub fn as_f64(self) -> f64 {
        match self {
            Psd::Exact(v) => v as f64,
            Psd::Approx(v) => v,
        }
    }

    /// The integer value, if exact or within [`INTEGRALITY_TOL`] of one.
    pub fn as_integer(self) -> Option<u64> {
        match self {
            Psd::Exact(v) => Some(v),
            Psd::Approx(v) => {
                let r = v.round();
                ((v - r).abs() < INTEGRALITY_TOL && r >= 0.0).then_some(r as u64)
            }
        }
    }
}

impl fmt::Display for Psd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psd::Exact(v) => write!(f, "{v}"),
            Psd::Approx(v) => write!(f, "{v:.6}"),
        }
    }
}

pub fn psd_of(seq: &[GaussInt], s: usize, roots: &RootTable) -> Result<Psd> {
    let n = seq.len();
    if s >= n {
        return Err(Error::LagOutOfRange { lag: s, len: n });
    }
    if is_exact_lag(n, s) {
        Ok(Psd::Exact(dft_exact_of(seq, s)?.norm()))
    } else {
        Ok(Psd::Approx(dft_of(seq, s, roots).norm_sqr()))
    }
}

/// PSD values at lags `1..ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsdProfile {
    pub length: usize,
    pub values: Vec<Psd>,
}

impl PsdProfile {
    /// Value at lag `s`, `1 ≤ s < ℓ`.
    pub fn at(&self, s: usize) -> Psd {
        self.values[s - 1]
    }

    /// Parseval: `|row_sum|² + Σ_{s≥1} PSD(s) = ℓ · PAF(0)`; for a quaternary
    /// sequence this is `ℓ²`.
    pub fn parseval_residual(&self, row_sum: GaussInt, paf0: u64) -> f64 {
        let total: f64 = row_sum.norm() as f64 + self.values.iter().map(|v| v.as_f64()).sum::<f64>();
        total - (self.length as u64 * paf0) as f64
    }
}

/// A sequence over `{1, -1, i, -i}` with periodic indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSeq {
    entries: Vec<QSymbol>,
}

impl QSeq {
    pub fn new(entries: Vec<QSymbol>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("sequence must be non-empty".into()));
        }
        Ok(QSeq { entries })
    }

    pub fn from_gauss(values: &[GaussInt]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|&z| {
                QSymbol::try_from_gauss(z)
                    .ok_or_else(|| Error::InvalidArgument(format!("{z} is not a quaternary symbol")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[QSymbol] {
        &self.entries
    }

    /// Periodic access.
    #[inline]
    pub fn at(&self, j: usize) -> QSymbol {
        self.entries[j % self.entries.len()]
    }

    pub fn to_gauss(&self) -> Vec<GaussInt> {
        self.entries.iter().map(|s| s.value()).collect()
    }

    pub fn map(&self, f: impl Fn(QSymbol) -> QSymbol) -> QSeq {
        QSeq { entries: self.entries.iter().map(|&s| f(s)).collect() }
    }

    pub fn conj(&self) -> QSeq {
        self.map(QSymbol::conj)
    }

    pub fn neg(&self) -> QSeq {
        self.map(QSymbol::neg)
    }

    /// Elementwise product with a fixed unit.
    pub fn scale(&self, unit: QSymbol) -> QSeq {
        self.map(|s| s.mul(unit))
    }

    /// Cyclic shift so that the result starts at index `t`.
    pub fn rotate(&self, t: usize) -> QSeq {
        let mut entries = self.entries.clone();
        entries.rotate_left(t % self.len());
        QSeq { entries }
    }

    /// The lexicographically smallest cyclic shift.
    pub fn min_rotation(&self) -> QSeq {
        (0..self.len()).map(|t| self.rotate(t)).min().expect("non-empty")
    }

    /// Exact `Σ_j a_j · conj(a_{j+s})`.
    pub fn paf(&self, s: usize) -> Result<GaussInt> {
        let n = self.len();
        if s >= n {
            return Err(Error::LagOutOfRange { lag: s, len: n });
        }
        Ok(self.paf_unchecked(s))
    }

    #[inline]
    pub(crate) fn paf_unchecked(&self, s: usize) -> GaussInt {
        // products of fourth roots of unity: count exponents mod 4
        let n = self.len();
        let mut counts = [0i64; 4];
        for j in 0..n {
            let e = self.entries[j].mul(self.entries[(j + s) % n].conj()).power();
            counts[e as usize] += 1;
        }
        GaussInt::new(counts[0] - counts[2], counts[1] - counts[3])
    }

    /// PAF at every lag `0..ℓ`.
    pub fn paf_vector(&self) -> Vec<GaussInt> {
        (0..self.len()).map(|s| self.paf_unchecked(s)).collect()
    }

    pub fn row_sum(&self) -> GaussInt {
        self.entries.iter().map(|s| s.value()).sum()
    }

    /// Floating-point DFT; the lag is taken modulo `ℓ`.
    pub fn dft(&self, s: usize) -> Complex64 {
        self.dft_with(s, &RootTable::new(self.len()))
    }

    pub fn dft_with(&self, s: usize, roots: &RootTable) -> Complex64 {
        self.entries.iter().enumerate().map(|(j, q)| q.to_complex() * roots.root(j * s)).sum()
    }

    /// Exact DFT at lags `ℓ/2`, `ℓ/4`, `3ℓ/4` (and `0`).
    pub fn dft_exact(&self, s: usize) -> Result<GaussInt> {
        let n = self.len();
        if s >= n {
            return Err(Error::LagOutOfRange { lag: s, len: n });
        }
        if !is_exact_lag(n, s) {
            return Err(Error::UnsupportedExactLag { lag: s, len: n });
        }
        let step = (4 * s / n) as u8;
        let mut counts = [0i64; 4];
        for (j, q) in self.entries.iter().enumerate() {
            let e = q.power().wrapping_add(((j % 4) as u8).wrapping_mul(step)) & 3;
            counts[e as usize] += 1;
        }
        Ok(GaussInt::new(counts[0] - counts[2], counts[1] - counts[3]))
    }

    pub fn psd(&self, s: usize) -> Result<Psd> {
        self.psd_with(s, &RootTable::new(self.len()))
    }

    pub fn psd_with(&self, s: usize, roots: &RootTable) -> Result<Psd> {
        let n = self.len();
        if s == 0 || s >= n {
            return Err(Error::LagOutOfRange { lag: s, len: n });
        }
        if is_exact_lag(n, s) {
            Ok(Psd::Exact(self.dft_exact(s)?.norm()))
        } else {
            Ok(Psd::Approx(self.dft_with(s, roots).norm_sqr()))
        }
    }

    pub fn psd_profile(&self) -> PsdProfile {
        let roots = RootTable::new(self.len());
        PsdProfile {
            length: self.len(),
            values: (1..self.len()).map(|s| self.psd_with(s, &roots).expect("lag in range")).collect(),
        }
    }

    /// `C(A)`: row `r`, column `c` holds `a_{(c − r) mod ℓ}`.
    pub fn circulant(&self) -> GaussMatrix {
        circulant_of(&self.to_gauss())
    }
}

pub fn circulant_of(seq: &[GaussInt]) -> GaussMatrix {
    let n = seq.len();
    let mut m = GaussMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, seq[(c + n - r) % n]);
        }
    }
    m
}

impl fmt::Display for QSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, s) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Splits `[t0, t1, ...]` into trimmed tokens.
pub(crate) fn bracket_tokens(s: &str) -> Result<Vec<&str>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[...]`, got `{t}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

impl FromStr for QSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = bracket_tokens(s)?.into_iter().map(str::parse::<QSymbol>).collect::<Result<Vec<_>>>()?;
        QSeq::new(entries)
    }
}

impl Serialize for QSeq {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QSeq {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QSeq {
        s.parse().unwrap()
    }

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    /// Direct definition of the DFT, independent of the root table.
    fn dft_oracle(a: &QSeq, s: usize) -> Complex64 {
        let l = a.len() as f64;
        (0..a.len()).map(|j| a.at(j).to_complex() * Complex64::from_polar(1.0, 2.0 * PI * (j * s) as f64 / l)).sum()
    }

    #[test]
    fn paf_examples() {
        assert_eq!(q("[1,-1]").paf(1).unwrap(), g(-2, 0));
        assert_eq!(q("[1,i]").paf(1).unwrap(), g(0, 0));
        assert_eq!(q("[1,i,-i,1,-1]").paf(0).unwrap(), g(5, 0));
        assert!(q("[1,i]").paf(2).is_err());
    }

    #[test]
    fn paf_matches_gaussian_definition() {
        let a = q("[1,i,-1,-i,i,1,1]");
        let ga = a.to_gauss();
        for s in 0..a.len() {
            assert_eq!(a.paf(s).unwrap(), paf_of(&ga, s).unwrap());
        }
    }

    #[test]
    fn row_sums() {
        assert_eq!(q("[1,-1]").row_sum(), g(0, 0));
        assert_eq!(q("[1,i]").row_sum(), g(1, 1));
        assert_eq!(q("[1,1,-1,i,-1,1]").row_sum(), g(1, 1));
    }

    #[test]
    fn dft_examples() {
        let a = q("[1,-1]");
        assert!((a.dft(0) - Complex64::new(0.0, 0.0)).norm() < 1e-12);
        assert!((a.dft(1) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        // decompressed A for p = 5, a0 = 1
        let a5 = q("[1,1,-1,-1,1,-1,1,-1,-1,1]");
        for s in (2..10).step_by(2) {
            assert!((a5.dft(s).norm_sqr() - 20.0).abs() < 1e-6);
        }
    }

    #[test]
    fn dft_exact_examples() {
        assert_eq!(q("[1,1,-1,i,-1,1]").dft_exact(3).unwrap(), g(-3, -1));
        assert_eq!(q("[1,-1]").dft_exact(1).unwrap(), g(2, 0));
        assert_eq!(q("[1,1,-1,-1]").dft_exact(1).unwrap(), g(2, 2));
        assert!(matches!(q("[1,1,-1,i,-1,1]").dft_exact(1), Err(Error::UnsupportedExactLag { .. })));
        assert!(q("[1,1,-1,-1]").dft_exact(4).is_err());
    }

    #[test]
    fn psd_examples() {
        // brute-force DFT at ℓ = 2: 1 + i·(−1) = 1 − i
        assert_eq!(q("[1,i]").psd(1).unwrap(), Psd::Exact(2));
        assert_eq!(q("[1,-1]").psd(1).unwrap(), Psd::Exact(4));
        assert!(q("[1,-1]").psd(0).is_err());
        assert_eq!(Psd::Approx(3.9999999999).as_integer(), Some(4));
        assert_eq!(Psd::Approx(3.9).as_integer(), None);
    }

    #[test]
    fn profile_of_p3_decompression() {
        let a = q("[1,1,-1,-1,1,-1]");
        let prof = a.psd_profile();
        assert_eq!(prof.values.len(), 5);
        for s in 1..6 {
            let expect = if s % 2 == 0 { 12 } else { 4 };
            assert_eq!(prof.at(s).as_integer(), Some(expect), "lag {s}");
        }
        let b = q("[1,1,-1,i,-1,1]");
        let pb = b.psd_profile();
        for s in 1..6 {
            assert!((prof.at(s).as_f64() + pb.at(s).as_f64() - 14.0).abs() < 1e-6);
        }
        assert_eq!(q("[1,-1]").psd_profile().values, vec![Psd::Exact(4)]);
    }

    #[test]
    fn circulant_layout() {
        let c = q("[1,-1]").circulant();
        assert_eq!(c, GaussMatrix::from_rows(vec![vec![g(1, 0), g(-1, 0)], vec![g(-1, 0), g(1, 0)]]).unwrap());
        let a = q("[1,i,-1,-i,1]");
        let ca = a.circulant();
        assert_eq!(ca.row(0), a.to_gauss().as_slice());
        assert_eq!(ca.get(1, 0), a.at(4).value());
        assert_eq!(ca.get(1, 1), a.at(0).value());
    }

    #[test]
    fn text_grammar() {
        assert_eq!(q(" [ 1 , -i,i ,-1 ] ").to_string(), "[1,-i,i,-1]");
        assert!("[1,2i]".parse::<QSeq>().is_err());
        assert!("1,i".parse::<QSeq>().is_err());
        assert!("[]".parse::<QSeq>().is_err());
    }

    fn arb_qseq(max_len: usize) -> impl Strategy<Value = QSeq> {
        prop::collection::vec(0u8..4, 1..=max_len)
            .prop_map(|v| QSeq::new(v.into_iter().map(QSymbol::from_power).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(a in arb_qseq(40)) {
            let l = a.len();
            prop_assert_eq!(a.paf(0).unwrap(), GaussInt::from(l as i64));
            for s in 1..l {
                prop_assert_eq!(a.paf(l - s).unwrap(), a.paf(s).unwrap().conj());
            }
        }

        #[test]
        fn paf_total_is_row_sum_norm(a in arb_qseq(40)) {
            let total: GaussInt = a.paf_vector().into_iter().sum();
            prop_assert_eq!(total, GaussInt::from(a.row_sum().norm() as i64));
        }

        #[test]
        fn parseval(a in arb_qseq(64)) {
            let prof = a.psd_profile();
            prop_assert!(prof.parseval_residual(a.row_sum(), a.len() as u64).abs() < 1e-6);
        }

        #[test]
        fn exact_and_float_dft_agree(a in arb_qseq(48)) {
            let l = a.len();
            for s in 0..l {
                if is_exact_lag(l, s) {
                    let e = a.dft_exact(s).unwrap().to_complex();
                    prop_assert!((e - a.dft(s)).norm() < 1e-6);
                }
            }
        }

        #[test]
        fn dft_matches_definition(a in arb_qseq(32), s in 0usize..32) {
            let s = s % a.len();
            prop_assert!((a.dft(s) - dft_oracle(&a, s)).norm() < 1e-9 * a.len() as f64);
        }

        #[test]
        fn shift_invariance(a in arb_qseq(24), t in 0usize..24) {
            let b = a.rotate(t);
            prop_assert_eq!(a.paf_vector(), b.paf_vector());
            let (pa, pb) = (a.psd_profile(), b.psd_profile());
            for (x, y) in pa.values.iter().zip(&pb.values) {
                prop_assert!((x.as_f64() - y.as_f64()).abs() < 1e-6);
            }
        }

        #[test]
        fn text_round_trip(a in arb_qseq(30)) {
            prop_assert_eq!(a.to_string().parse::<QSeq>().unwrap(), a);
        }

        #[test]
        fn circulants_commute(a in arb_qseq(8), bits in prop::collection::vec(0u8..4, 8)) {
            let b = QSeq::new(bits[..a.len()].iter().map(|&k| QSymbol::from_power(k)).collect()).unwrap();
            let (ca, cb) = (a.circulant(), b.circulant());
            prop_assert_eq!(&ca * &cb, &cb * &ca);
        }
    }
}
