//! Legendre pairs: `PAF(A, s) + PAF(B, s) = −2` for every nonzero lag.
//!
//! Verification is always exact (PAF over ℤ[i]). PSD values are only used
//! elsewhere to prune searches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{GaussInt, QSymbol};
use crate::seqcore::QSeq;

const TARGET: GaussInt = GaussInt::new(-2, 0);

/// First lag `1 ≤ s ≤ ⌊ℓ/2⌋` where the pair condition fails, if any.
///
/// Conjugate symmetry of the PAF covers the remaining lags.
pub fn first_failing_lag(a: &QSeq, b: &QSeq) -> Result<Option<usize>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(Error::InvalidArgument("Legendre pairs need length at least 2".into()));
    }
    Ok((1..=a.len() / 2).find(|&s| a.paf_unchecked(s) + b.paf_unchecked(s) != TARGET))
}

pub fn is_legendre_pair(a: &QSeq, b: &QSeq) -> Result<bool> {
    Ok(first_failing_lag(a, b)?.is_none())
}

/// Row sums `(α, β)`.
///
/// For a genuine pair, `|α|² + |β|² = 2`; for odd ℓ both are units, for even ℓ
/// one is `0` and the other one of `±1 ± i`. Those facts are asserted when
/// the input is a verified pair.
pub fn balance_check(a: &QSeq, b: &QSeq) -> (GaussInt, GaussInt) {
    let (alpha, beta) = (a.row_sum(), b.row_sum());
    if a.len() == b.len() && a.len() >= 2 && is_legendre_pair(a, b).unwrap_or(false) {
        assert_eq!(alpha.norm() + beta.norm(), 2, "balance violated by a verified pair");
        if a.len() % 2 == 1 {
            assert!(alpha.is_unit() && beta.is_unit(), "odd-length sums must be units");
        } else {
            assert!(
                (alpha.is_zero() && beta.norm() == 2) || (beta.is_zero() && alpha.norm() == 2),
                "even-length sums must be {{0, ±1±i}}"
            );
        }
    }
    (alpha, beta)
}

/// Bring a pair to the canonical sums: `(0, 1 + i)` for even ℓ, `(1, 1)` for
/// odd ℓ.
///
/// Even ℓ: swap if `β = 0`, negate `B` if `β = −1 ± i`, conjugate both if
/// `β = 1 − i`. Odd ℓ: scale `A` by `conj(α)` and `B` by `conj(β)`.
pub fn normalize(a: &QSeq, b: &QSeq) -> Result<(QSeq, QSeq)> {
    if let Some(s) = first_failing_lag(a, b)? {
        return Err(Error::NotLegendrePair(s));
    }
    let (alpha, beta) = (a.row_sum(), b.row_sum());
    if a.len() % 2 == 1 {
        let ua = QSymbol::try_from_gauss(alpha.conj())
            .ok_or_else(|| Error::NotCanonical(format!("row sum {alpha} is not a unit")))?;
        let ub = QSymbol::try_from_gauss(beta.conj())
            .ok_or_else(|| Error::NotCanonical(format!("row sum {beta} is not a unit")))?;
        return Ok((a.scale(ua), b.scale(ub)));
    }
    let (mut a, mut b) = match (alpha.is_zero(), beta.is_zero()) {
        (true, false) => (a.clone(), b.clone()),
        (false, true) => (b.clone(), a.clone()),
        _ => return Err(Error::NotCanonical(format!("row sums ({alpha}, {beta}) violate the balance lemma"))),
    };
    let beta = b.row_sum();
    if beta.norm() != 2 {
        return Err(Error::NotCanonical(format!("row sum {beta} does not have norm 2")));
    }
    if beta.re == -1 {
        b = b.neg();
    }
    if b.row_sum() == GaussInt::new(1, -1) {
        a = a.conj();
        b = b.conj();
    }
    debug_assert_eq!((a.row_sum(), b.row_sum()), (GaussInt::ZERO, GaussInt::new(1, 1)));
    Ok((a, b))
}

/// A pair with its row sums and verification status.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegendrePair {
    a: QSeq,
    b: QSeq,
    alpha: GaussInt,
    beta: GaussInt,
    verified: bool,
}

impl LegendrePair {
    /// Verify `(a, b)` exactly; errors if they do not form a Legendre pair.
    pub fn new(a: QSeq, b: QSeq) -> Result<Self> {
        let pair = Self::unverified(a, b)?;
        if !pair.verified {
            let lag = first_failing_lag(&pair.a, &pair.b)?.expect("failing lag");
            return Err(Error::NotLegendrePair(lag));
        }
        Ok(pair)
    }

    /// Record `(a, b)` with its verification status, without requiring it to pass.
    pub fn unverified(a: QSeq, b: QSeq) -> Result<Self> {
        let verified = is_legendre_pair(&a, &b)?;
        let (alpha, beta) = balance_check(&a, &b);
        Ok(LegendrePair { a, b, alpha, beta, verified })
    }

    pub fn a(&self) -> &QSeq {
        &self.a
    }

    pub fn b(&self) -> &QSeq {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn alpha(&self) -> GaussInt {
        self.alpha
    }

    pub fn beta(&self) -> GaussInt {
        self.beta
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn is_canonical(&self) -> bool {
        if self.len().is_multiple_of(2) {
            self.alpha == GaussInt::ZERO && self.beta == GaussInt::new(1, 1)
        } else {
            self.alpha == GaussInt::ONE && self.beta == GaussInt::ONE
        }
    }

    pub fn normalized(&self) -> Result<LegendrePair> {
        let (a, b) = normalize(&self.a, &self.b)?;
        LegendrePair::new(a, b)
    }

    /// Lexicographically least representative under independent cyclic
    /// shifts of `A` and `B`, simultaneous conjugation (followed by the
    /// unit scaling of `B` that restores its row sum), and swapping `A` and
    /// `B` when that keeps the row sums.
    ///
    /// This is a reporting convention for deduplication only.
    pub fn reporting_form(&self) -> LegendrePair {
        let mut candidates = vec![(self.a.clone(), self.b.clone())];
        let (ca, mut cb) = (self.a.conj(), self.b.conj());
        if !self.beta.is_zero() && self.beta.norm() == 2 {
            // conj(1+i) = 1-i; multiplying B by i restores 1+i
            while cb.row_sum() != self.beta {
                cb = cb.scale(QSymbol::I);
            }
        }
        if ca.row_sum() == self.alpha && cb.row_sum() == self.beta {
            candidates.push((ca, cb));
        }
        if self.alpha == self.beta {
            let swapped: Vec<_> = candidates.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
            candidates.extend(swapped);
        }
        let (a, b) = candidates
            .into_iter()
            .map(|(a, b)| (a.min_rotation(), b.min_rotation()))
            .min()
            .expect("at least one candidate");
        LegendrePair {
            alpha: a.row_sum(),
            beta: b.row_sum(),
            verified: is_legendre_pair(&a, &b).unwrap_or(false),
            a,
            b,
        }
    }

    pub fn record(&self) -> PairRecord {
        PairRecord {
            length: self.len(),
            a: self.a.clone(),
            b: self.b.clone(),
            alpha: self.alpha,
            beta: self.beta,
            verified: self.verified,
        }
    }
}

/// JSON form of a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub length: usize,
    #[serde(rename = "A")]
    pub a: QSeq,
    #[serde(rename = "B")]
    pub b: QSeq,
    pub alpha: GaussInt,
    pub beta: GaussInt,
    pub verified: bool,
}

impl PairRecord {
    /// Re-derive the pair from `A` and `B`; stored sums and status are checked
    /// against the recomputed ones.
    pub fn to_pair(&self) -> Result<LegendrePair> {
        if self.a.len() != self.length || self.b.len() != self.length {
            return Err(Error::InvalidArgument(format!(
                "declared length {} but sequences have lengths {} and {}",
                self.length,
                self.a.len(),
                self.b.len()
            )));
        }
        let pair = LegendrePair::unverified(self.a.clone(), self.b.clone())?;
        if pair.alpha != self.alpha || pair.beta != self.beta {
            return Err(Error::InvalidArgument("stored row sums do not match the sequences".into()));
        }
        Ok(pair)
    }
}
