//! Number-theoretic eligibility filters on PSD values at the special lags
//! `ℓ/2`, `ℓ/4`, `ℓ/3` and `ℓ/6`.

use serde::{Deserialize, Serialize};

use crate::compress::CompressedSeq;
use crate::error::{Error, Result};
use crate::exactmath::{factorize, is_sum_of_two_squares, GaussInt};

/// Eligible `(PSD(A, s), PSD(B, s))` pairs for one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsdPairTable {
    pub length: usize,
    pub pairs: Vec<(u64, u64)>,
}

impl PsdPairTable {
    pub fn contains(&self, pair: (u64, u64)) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// For canonical pairs (`α = 0`, `β = 1 + i`) of even length: `y ≡ 2 (mod 8)`,
/// `x = 2ℓ + 2 − y ≥ 0`, and both `x`, `y` sums of two squares. Ascending in `x`.
pub fn eligible_half_psd_pairs(length: usize) -> Result<PsdPairTable> {
    if length < 2 || !length.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("length must be even and at least 2, got {length}")));
    }
    let total = 2 * length as u64 + 2;
    let mut pairs: Vec<(u64, u64)> = (0..=total)
        .filter(|y| y % 8 == 2)
        .map(|y| (total - y, y))
        .filter(|&(x, y)| is_sum_of_two_squares(x) && is_sum_of_two_squares(y))
        .collect();
    pairs.sort_unstable();
    for &(x, _) in &pairs {
        // 2ℓ+2 ≡ 2 and y ≡ 2 (mod 4)
        assert_eq!(x % 4, 0);
    }
    Ok(PsdPairTable { length, pairs })
}

/// The quarter-lag conditions select the same set as the half-lag ones.
pub fn eligible_quarter_psd_pairs(length: usize) -> Result<PsdPairTable> {
    if length == 0 || !length.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!("length must be a positive multiple of 4, got {length}")));
    }
    eligible_half_psd_pairs(length)
}

/// `n = a² − ab + b²` for some integers: no prime `≡ 2 (mod 3)` divides the
/// square-free part of `n`.
pub fn mod3_admissible(n: u64) -> bool {
    n == 0 || factorize(n).into_iter().all(|(q, e)| q % 3 != 2 || e % 2 == 0)
}

/// `A_3 = [0, a + ib, −(a + ib)]` with ratio `ℓ/3`.
///
/// Requires `|a| + |b| ≤ ℓ/3`, `|a| + |b| ≡ ℓ/3 (mod 2)` and
/// `3(a² + b²) ≤ 2ℓ + 2`. Its PSD at lag 1 is `3(a² + b²)`.
pub fn seed_a3(length: usize, a: i64, b: i64) -> Result<CompressedSeq> {
    if length == 0 || !length.is_multiple_of(6) {
        return Err(Error::InvalidArgument(format!("length must be a positive multiple of 6, got {length}")));
    }
    let m = (length / 3) as i64;
    let l1 = a.abs() + b.abs();
    if l1 > m {
        return Err(Error::InvalidArgument(format!("|a| + |b| = {l1} exceeds ℓ/3 = {m}")));
    }
    if (l1 - m).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!("|a| + |b| = {l1} has the wrong parity for ℓ/3 = {m}")));
    }
    if 3 * (a * a + b * b) > 2 * length as i64 + 2 {
        return Err(Error::InvalidArgument(format!("a² + b² = {} exceeds (2ℓ + 2)/3 for ℓ = {length}", a * a + b * b)));
    }
    let z = GaussInt::new(a, b);
    CompressedSeq::new(vec![GaussInt::ZERO, z, -z], m as usize)
}

/// Advisory flags derived from a length-6 compression `A_6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntegralityFlags {
    /// `a₀⁽³⁾ − a₂⁽³⁾` and `a₁⁽³⁾ − a₂⁽³⁾` are real integers, so `PSD(A, ℓ/3)`
    /// is an integer of the form `x² − xy + y²`.
    pub third_lag_mod3: bool,
    /// `a₀ − a₃ + a₅ − a₂` and `a₄ − a₁ + a₅ − a₂` are real integers, so
    /// `PSD(A, ℓ/6)` is of the form `x² − xy + y²`.
    pub sixth_lag_mod3: bool,
    /// `a₂⁽³⁾ = a₁⁽³⁾`, so `PSD(A, ℓ/3)` is a sum of two squares.
    pub third_lag_two_squares: bool,
    /// `a₄ + a₅ = a₁ + a₂`, so `PSD(A, ℓ/6)` is a sum of two squares.
    pub sixth_lag_two_squares: bool,
}

impl IntegralityFlags {
    /// `(third_lag_mod3, sixth_lag_mod3)`.
    pub fn mod3_pair(&self) -> (bool, bool) {
        (self.third_lag_mod3, self.sixth_lag_mod3)
    }
}

pub fn integral_compression_filter(a6: &CompressedSeq) -> Result<IntegralityFlags> {
    if a6.len() != 6 {
        return Err(Error::InvalidArgument(format!("expected a length-6 compression, got length {}", a6.len())));
    }
    let c = a6.entries();
    let a3 = a6.recompress(3)?;
    let t = a3.entries();
    let real = |z: GaussInt| z.im == 0;
    Ok(IntegralityFlags {
        third_lag_mod3: real(t[0] - t[2]) && real(t[1] - t[2]),
        sixth_lag_mod3: real(c[0] - c[3] + c[5] - c[2]) && real(c[4] - c[1] + c[5] - c[2]),
        third_lag_two_squares: t[2] == t[1],
        sixth_lag_two_squares: c[4] + c[5] == c[1] + c[2],
    })
}

/// The prime test behind [`IntegralityFlags::third_lag_two_squares`] and
/// [`IntegralityFlags::sixth_lag_two_squares`].
pub fn mod4_admissible(n: u64) -> bool {
    is_sum_of_two_squares(n)
}
