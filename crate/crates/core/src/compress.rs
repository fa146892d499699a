//! `ℓ/k`-compression of quaternary sequences and the enumeration of all
//! preimages of a compressed sequence.
//!
//! Entry `j` of the compression sums the original entries in residue class
//! `j (mod k)`, so decompression assigns one `m`-tuple (`m = ℓ/k`) per
//! compressed entry. [`Decompressions`] walks those assignments depth first,
//! entry index by entry index, and offers a prefix hook for pruning.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{GaussInt, QSymbol};
use crate::seqcore::{bracket_tokens, dft_exact_of, dft_of, paf_of, psd_of, Psd, QSeq, RootTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompressedSeq {
    entries: Vec<GaussInt>,
    ratio: usize,
}

/// Whether `c` is a sum of exactly `m` fourth roots of unity.
#[inline]
pub fn in_alphabet(c: GaussInt, m: usize) -> bool {
    let l1 = c.re.unsigned_abs() + c.im.unsigned_abs();
    l1 <= m as u64 && (c.re + c.im - m as i64).rem_euclid(2) == 0
}

impl CompressedSeq {
    pub fn new(entries: Vec<GaussInt>, ratio: usize) -> Result<Self> {
        if ratio == 0 {
            return Err(Error::InvalidArgument("compression ratio must be positive".into()));
        }
        if entries.is_empty() {
            return Err(Error::InvalidArgument("compressed sequence must be non-empty".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&c| !in_alphabet(c, ratio)) {
            return Err(Error::NotInAlphabet(bad, ratio));
        }
        Ok(CompressedSeq { entries, ratio })
    }

    /// Parse `[c0, c1, ...]` with Gaussian-integer entries.
    pub fn parse(text: &str, ratio: usize) -> Result<Self> {
        let entries = bracket_tokens(text)?.into_iter().map(str::parse::<GaussInt>).collect::<Result<Vec<_>>>()?;
        Self::new(entries, ratio)
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ratio(&self) -> usize {
        self.ratio
    }

    pub fn original_length(&self) -> usize {
        self.entries.len() * self.ratio
    }

    pub fn paf(&self, s: usize) -> Result<GaussInt> {
        paf_of(&self.entries, s)
    }

    pub fn dft(&self, s: usize) -> num_complex::Complex64 {
        dft_of(&self.entries, s, &RootTable::new(self.len()))
    }

    pub fn dft_exact(&self, s: usize) -> Result<GaussInt> {
        dft_exact_of(&self.entries, s)
    }

    pub fn psd(&self, s: usize) -> Result<Psd> {
        psd_of(&self.entries, s, &RootTable::new(self.len()))
    }

    /// Re-compress to length `k`, which must divide this length.
    pub fn recompress(&self, k: usize) -> Result<CompressedSeq> {
        let n = self.len();
        if k == 0 || !n.is_multiple_of(k) {
            return Err(Error::NotADivisor { k, len: n });
        }
        let mut entries = vec![GaussInt::ZERO; k];
        for (j, &c) in self.entries.iter().enumerate() {
            entries[j % k] += c;
        }
        CompressedSeq::new(entries, self.ratio * (n / k))
    }
}

impl fmt::Display for CompressedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `ℓ/k`-compression: entry `j` is `Σ_n a_{kn+j}`.
pub fn compress(a: &QSeq, k: usize) -> Result<CompressedSeq> {
    let len = a.len();
    if k == 0 || !len.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, len });
    }
    let mut entries = vec![GaussInt::ZERO; k];
    for (j, s) in a.entries().iter().enumerate() {
        entries[j % k] += s.value();
    }
    CompressedSeq::new(entries, len / k)
}

/// All `a + bi` with `|a| + |b| ≤ m` and `a + b ≡ m (mod 2)`, sorted by
/// `(a, b)`. There are `(m + 1)²` of them.
pub fn compressed_alphabet(m: usize) -> Result<Vec<GaussInt>> {
    if m == 0 {
        return Err(Error::InvalidArgument("compression ratio must be positive".into()));
    }
    let r = m as i64;
    let mut out = Vec::with_capacity((m + 1) * (m + 1));
    for a in -r..=r {
        for b in -r..=r {
            let z = GaussInt::new(a, b);
            if in_alphabet(z, m) {
                out.push(z);
            }
        }
    }
    Ok(out)
}

/// Every ordered `m`-tuple of symbols summing to `c`, in lexicographic order.
pub fn entry_splittings(c: GaussInt, m: usize) -> Result<Vec<Vec<QSymbol>>> {
    if m == 0 {
        return Err(Error::InvalidArgument("compression ratio must be positive".into()));
    }
    if !in_alphabet(c, m) {
        return Err(Error::NotInAlphabet(c, m));
    }
    fn walk(rest: GaussInt, left: usize, cur: &mut Vec<QSymbol>, out: &mut Vec<Vec<QSymbol>>) {
        if left == 0 {
            if rest.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        for s in QSymbol::ALL {
            let next = rest - s.value();
            if in_alphabet(next, left - 1) {
                cur.push(s);
                walk(next, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(c, m, &mut Vec::with_capacity(m), &mut out);
    Ok(out)
}

/// Number of preimages, `Π_j |entry_splittings(c_j, m)|`.
pub fn decompression_count(c: &CompressedSeq) -> u128 {
    c.entries.iter().map(|&e| entry_splittings(e, c.ratio).expect("validated entry").len() as u128).product()
}

/// Prefix hook: called with the number of compressed entries assigned so far
/// and the partially filled buffer. Positions `p` with `p mod k` below that
/// count are valid. Returning `false` prunes the subtree.
pub trait PrefixPrune {
    fn keep(&mut self, assigned: usize, partial: &[QSymbol]) -> bool;
}

impl<F: FnMut(usize, &[QSymbol]) -> bool> PrefixPrune for F {
    fn keep(&mut self, assigned: usize, partial: &[QSymbol]) -> bool {
        self(assigned, partial)
    }
}

pub struct NoPrune;

impl PrefixPrune for NoPrune {
    fn keep(&mut self, _: usize, _: &[QSymbol]) -> bool {
        true
    }
}

/// Depth-first enumeration of the decompressions of a [`CompressedSeq`].
pub struct Decompressions<P = NoPrune> {
    splits: Vec<Vec<Vec<QSymbol>>>,
    k: usize,
    buffer: Vec<QSymbol>,
    cursor: Vec<usize>,
    depth: usize,
    prune: P,
    done: bool,
}

impl Decompressions<NoPrune> {
    pub fn new(c: &CompressedSeq) -> Self {
        Self::with_pruning(c, NoPrune)
    }
}

impl<P: PrefixPrune> Decompressions<P> {
    pub fn with_pruning(c: &CompressedSeq, prune: P) -> Self {
        let splits: Vec<_> =
            c.entries.iter().map(|&e| entry_splittings(e, c.ratio).expect("validated entry")).collect();
        let done = splits.iter().any(|s| s.is_empty());
        Decompressions {
            k: c.len(),
            buffer: vec![QSymbol::ONE; c.original_length()],
            cursor: vec![0; c.len()],
            splits,
            depth: 0,
            prune,
            done,
        }
    }
}

impl<P: PrefixPrune> Iterator for Decompressions<P> {
    type Item = QSeq;

    fn next(&mut self) -> Option<QSeq> {
        if self.done {
            return None;
        }
        loop {
            let d = self.depth;
            if self.cursor[d] == self.splits[d].len() {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.cursor[d] = 0;
                self.depth -= 1;
                continue;
            }
            let choice = &self.splits[d][self.cursor[d]];
            self.cursor[d] += 1;
            for (n, &s) in choice.iter().enumerate() {
                self.buffer[d + n * self.k] = s;
            }
            if !self.prune.keep(d + 1, &self.buffer) {
                continue;
            }
            if d + 1 == self.k {
                return Some(QSeq::new(self.buffer.clone()).expect("non-empty"));
            }
            self.depth += 1;
        }
    }
}

/// Decompressions of `c` accepted by `predicate`.
pub fn decompress<'a>(
    c: &CompressedSeq,
    mut predicate: impl FnMut(&QSeq) -> bool + 'a,
) -> impl Iterator<Item = QSeq> + 'a {
    Decompressions::new(c).filter(move |s| predicate(s))
}
