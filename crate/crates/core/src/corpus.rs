//! Published solutions, embedded as data.
//!
//! * `SEED_TABLE`: half-vectors `[b_1, …, b_{(p−1)/2}]` for the seed
//!   decompression at `ℓ = 2p`.
//! * `EVEN_TABLE`: pairs for the remaining even `ℓ ≤ 24`, together with the
//!   half-lag PSD pair each realizes and (for `4 | ℓ`) the quarter-lag pair.
//! * `ELIGIBLE_HALF_TABLE`: the published list of eligible half-lag PSD pairs.

use crate::error::Result;
use crate::exactmath::QSymbol;
use crate::legendre::LegendrePair;
use crate::seeds::{build_b, decompress_a, HalfVector};

pub struct SeedEntry {
    pub p: u64,
    pub half: &'static str,
}

pub const SEED_TABLE: &[SeedEntry] = &[
    SeedEntry { p: 3, half: "[1]" },
    SeedEntry { p: 5, half: "[1,i]" },
    SeedEntry { p: 7, half: "[1, -i, -1]" },
    SeedEntry { p: 13, half: "[1, 1, -1, i, 1, i]" },
    SeedEntry { p: 19, half: "[1, -1, 1, -i, -1, -i, -i, 1, 1]" },
    SeedEntry { p: 31, half: "[1, -1, 1, -1, -1, -i, -1, -i, -i, -1, i, i, -i, -1, -1]" },
    SeedEntry { p: 41, half: "[1, 1, -i, 1, -1, -i, -1, i, 1, i, 1, -i, i, i, i, -i, 1, 1, -1, -i]" },
];

pub struct EvenEntry {
    pub length: usize,
    pub a: &'static str,
    pub b: &'static str,
    /// `(PSD(A, ℓ/2), PSD(B, ℓ/2))`, the boldfaced entry of the eligibility table.
    pub half_psd: (u64, u64),
    /// `(PSD(A, ℓ/4), PSD(B, ℓ/4))` when `4 | ℓ`.
    pub quarter_psd: Option<(u64, u64)>,
}

pub const EVEN_TABLE: &[EvenEntry] = &[
    EvenEntry { length: 2, a: "[1,-1]", b: "[1,i]", half_psd: (4, 2), quarter_psd: None },
    EvenEntry { length: 4, a: "[1,1,-1,-1]", b: "[1,i,1,-1]", half_psd: (0, 10), quarter_psd: Some((8, 2)) },
    EvenEntry {
        length: 8,
        a: "[1, 1, -1, -i, -1, 1, -1, i]",
        b: "[1, 1, 1, i, -1, 1, -1, -1]",
        half_psd: (16, 2),
        quarter_psd: Some((8, 10)),
    },
    EvenEntry {
        length: 12,
        a: "[1, 1, 1, -1, i, -i, 1, -1, -1, -1, -i, i]",
        b: "[1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, i]",
        half_psd: (16, 10),
        quarter_psd: Some((16, 10)),
    },
    EvenEntry {
        length: 16,
        a: "[1, 1, 1, -1, -i, -1, i, 1, i, -1, i, -1, -i, -i, i, -i]",
        b: "[1, 1, 1, -1, 1, 1, -1, 1, -1, i, -i, -i, -1, i, i, -1]",
        half_psd: (32, 2),
        quarter_psd: Some((16, 18)),
    },
    EvenEntry {
        length: 18,
        a: "[1, 1, -1, i, -1, -1, -i, 1, -1, i, -i, 1, -1, -i, 1, -i, i, i]",
        b: "[1, 1, -1, i, -i, -1, 1, -1, 1, i, -1, -1, i, i, 1, 1, -i, -i]",
        half_psd: (20, 18),
        quarter_psd: None,
    },
    EvenEntry {
        length: 20,
        a: "[1, 1, 1, -1, i, -i, -i, i, i, 1, i, -1, -1, -i, -1, 1, -i, -i, i, -1]",
        b: "[1, 1, 1, -i, -i, -i, i, -1, -i, i, -i, i, 1, -1, i, 1, i, -1, i, -1]",
        half_psd: (16, 26),
        quarter_psd: Some((32, 10)),
    },
    EvenEntry {
        length: 22,
        a: "[1, 1, 1, 1, -1, -1, -1, 1, -1, 1, -1, -i, i, 1, -1, -1, -i, i, -i, -i, i, i]",
        b: "[1, 1, 1, 1, -1, 1, 1, -1, -i, 1, -i, i, i, i, -1, -i, -1, i, -i, -1, i, -1]",
        half_psd: (36, 10),
        quarter_psd: None,
    },
    EvenEntry {
        length: 24,
        a: "[1, 1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1, -1, -1, -1, 1, -1, -1]",
        b: "[1, 1, 1, 1, 1, i, -1, -1, -i, 1, -1, i, 1, -1, -i, -1, 1, i, -1, 1, -i, -1, -1, i]",
        half_psd: (0, 50),
        quarter_psd: Some((0, 50)),
    },
];

/// Published eligible `(PSD(A, ℓ/2), PSD(B, ℓ/2))` pairs.
pub const ELIGIBLE_HALF_TABLE: &[(usize, &[(u64, u64)])] = &[
    (2, &[(4, 2)]),
    (4, &[(0, 10), (8, 2)]),
    (8, &[(0, 18), (8, 10), (16, 2)]),
    (12, &[(0, 26), (8, 18), (16, 10)]),
    (16, &[(0, 34), (8, 26), (16, 18), (32, 2)]),
    (18, &[(4, 34), (20, 18), (36, 2)]),
    (20, &[(8, 34), (16, 26), (32, 10), (40, 2)]),
    (22, &[(20, 26), (36, 10)]),
    (24, &[(0, 50), (16, 34), (32, 18), (40, 10)]),
];

impl SeedEntry {
    pub fn half_vector(&self) -> Result<HalfVector> {
        HalfVector::parse(self.p, self.half)
    }

    /// `(decompress_a(p, 1), build_b(p, h))`, verified.
    pub fn pair(&self) -> Result<LegendrePair> {
        let h = self.half_vector()?;
        LegendrePair::new(decompress_a(self.p, QSymbol::ONE)?, build_b(self.p, &h)?)
    }
}

impl EvenEntry {
    pub fn pair(&self) -> Result<LegendrePair> {
        LegendrePair::new(self.a.parse()?, self.b.parse()?)
    }
}

pub fn seed_entry(p: u64) -> Option<&'static SeedEntry> {
    SEED_TABLE.iter().find(|e| e.p == p)
}

pub fn even_entry(length: usize) -> Option<&'static EvenEntry> {
    EVEN_TABLE.iter().find(|e| e.length == length)
}

/// The corpus pair of length `ℓ`: the even table first, then `ℓ = 2p` seeds.
pub fn pair_for_length(length: usize) -> Option<Result<LegendrePair>> {
    if let Some(e) = even_entry(length) {
        return Some(e.pair());
    }
    if length.is_multiple_of(2) {
        if let Some(e) = seed_entry(length as u64 / 2) {
            return Some(e.pair());
        }
    }
    None
}

/// Every corpus pair, labelled by its table of origin.
pub fn all_pairs() -> Result<Vec<(String, LegendrePair)>> {
    let mut out = Vec::new();
    for e in SEED_TABLE {
        out.push((format!("seed p={} (ℓ={})", e.p, 2 * e.p), e.pair()?));
    }
    for e in EVEN_TABLE {
        out.push((format!("even ℓ={}", e.length), e.pair()?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_verifies() {
        let pairs = all_pairs().unwrap();
        assert_eq!(pairs.len(), 16);
        for (label, p) in &pairs {
            assert!(p.is_verified(), "{label}");
            assert!(p.is_canonical(), "{label}");
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(pair_for_length(26).unwrap().unwrap().len(), 26);
        assert_eq!(pair_for_length(4).unwrap().unwrap().len(), 4);
        assert!(pair_for_length(28).is_none());
        // ℓ = 6 comes from the p = 3 seed
        assert_eq!(pair_for_length(6).unwrap().unwrap().a().to_string(), "[1,1,-1,-1,1,-1]");
    }
}
