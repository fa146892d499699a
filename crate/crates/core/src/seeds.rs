//! Seed pairs `(A_p, B_p)` of length `p` and their decompression to
//! Legendre pairs of length `2p`.
//!
//! `A_p = [0, 2(1/p), …, 2((p−1)/p)]` has exactly four decompressions, all
//! with the same PAF, so the work is in finding a decompression `B` of
//! `B_p = [1+i, 0, …, 0]`. Restricting to `b_0 = 1`, `b_p = i`,
//! `b_{p−j} = b_{j+p} = −b_j` leaves the half-vector `b_1 … b_{(p−1)/2}` free,
//! and the pair condition becomes
//!
//! ```text
//! |1 − i + 4 Σ_j b_j cos((2s−1)jπ/p)|² = 4p − 2,   s = 1, …, (p+1)/2.
//! ```
//!
//! [`seed_search`] enumerates half-vectors depth first with a
//! branch-and-bound on those sums, screens leaves in floating point and
//! confirms every survivor with the exact PAF check.

use std::f64::consts::PI;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::compress::{compress, decompression_count, CompressedSeq, Decompressions};
use crate::error::{Error, Result};
use crate::exactmath::{is_sum_of_two_squares, legendre_symbol, require_odd_prime, GaussInt, QSymbol};
use crate::legendre::is_legendre_pair;
use crate::seqcore::{bracket_tokens, Psd, QSeq, RootTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedPair {
    pub p: u64,
    pub a: CompressedSeq,
    pub b: CompressedSeq,
}

pub fn seed_pair(p: u64) -> Result<SeedPair> {
    require_odd_prime(p)?;
    let a = (0..p as i64)
        .map(|j| legendre_symbol(j, p).map(|s| GaussInt::from(2 * s as i64)))
        .collect::<Result<Vec<_>>>()?;
    let mut b = vec![GaussInt::ZERO; p as usize];
    b[0] = GaussInt::new(1, 1);
    Ok(SeedPair { p, a: CompressedSeq::new(a, 2)?, b: CompressedSeq::new(b, 2)? })
}

/// One of the four decompressions of `A_p`: `a_p = −a_0` and
/// `a_j = a_{j+p} = (j/p)`.
pub fn decompress_a(p: u64, a0: QSymbol) -> Result<QSeq> {
    require_odd_prime(p)?;
    let p = p as usize;
    let mut a = vec![QSymbol::ONE; 2 * p];
    a[0] = a0;
    a[p] = a0.neg();
    for j in 1..p {
        let s = if legendre_symbol(j as i64, p as u64)? == 1 { QSymbol::ONE } else { QSymbol::NEG_ONE };
        a[j] = s;
        a[j + p] = s;
    }
    QSeq::new(a)
}

/// `4p − 2` must be a sum of two squares for any seed decompression to exist.
pub fn seed_feasible(p: u64) -> bool {
    is_sum_of_two_squares(4 * p - 2)
}

/// The free choices `b_1 … b_{(p−1)/2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfVector {
    p: u64,
    #[serde(serialize_with = "serialize_symbols")]
    b: Vec<QSymbol>,
}

fn serialize_symbols<S: serde::Serializer>(b: &[QSymbol], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&SymbolList(b))
}

struct SymbolList<'a>(&'a [QSymbol]);

impl fmt::Display for SymbolList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl HalfVector {
    pub fn new(p: u64, b: Vec<QSymbol>) -> Result<Self> {
        require_odd_prime(p)?;
        let want = (p as usize - 1) / 2;
        if b.len() != want {
            return Err(Error::InvalidArgument(format!(
                "half-vector for p = {p} needs {want} symbols, got {}",
                b.len()
            )));
        }
        Ok(HalfVector { p, b })
    }

    pub fn parse(p: u64, text: &str) -> Result<Self> {
        let b = bracket_tokens(text)?.into_iter().map(str::parse::<QSymbol>).collect::<Result<Vec<_>>>()?;
        Self::new(p, b)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn symbols(&self) -> &[QSymbol] {
        &self.b
    }
}

impl fmt::Display for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SymbolList(&self.b).fmt(f)
    }
}

/// Expand a half-vector: `b_0 = 1`, `b_p = i`, `b_{p−j} = b_{j+p} = −b_j`.
pub fn build_b(p: u64, h: &HalfVector) -> Result<QSeq> {
    if h.p != p {
        return Err(Error::InvalidArgument(format!("half-vector is for p = {}, not {p}", h.p)));
    }
    let p = p as usize;
    let mut b = vec![QSymbol::ONE; 2 * p];
    b[p] = QSymbol::I;
    for (k, &s) in h.b.iter().enumerate() {
        let j = k + 1;
        b[j] = s;
        b[p - j] = s.neg();
    }
    for j in 1..p {
        b[j + p] = b[j].neg();
    }
    QSeq::new(b)
}

/// `DFT(B, p) = 1 − i + 4 Σ_j (−1)^j b_j`, exact.
pub fn dft_at_p(h: &HalfVector) -> GaussInt {
    let mut acc = GaussInt::ZERO;
    for (k, s) in h.b.iter().enumerate() {
        let v = s.value();
        if (k + 1) % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    GaussInt::new(1, -1) + acc.scale(4)
}

fn mod4_accepts(p: u64, z: GaussInt) -> bool {
    z.re.rem_euclid(4) == 1 && z.im.rem_euclid(4) == 3 && z.norm() == 4 * p - 2
}

/// `DFT(B, p) = a + ib` with `a ≡ 1`, `b ≡ −1 (mod 4)` and `a² + b² = 4p − 2`.
pub fn mod4_filter(p: u64, h: &HalfVector) -> bool {
    mod4_accepts(p, dft_at_p(h))
}

#[derive(Debug, Clone)]
pub struct SeedSearchOptions {
    /// Worker threads; `0` uses the rayon default.
    pub workers: usize,
    /// Number of leading symbols fixed per work unit (`4^depth` units).
    pub prefix_depth: usize,
    /// Stop after the first hit in enumeration order.
    pub first_only: bool,
    /// Accepted `|PSD − (4p − 2)|` in the floating-point screen.
    pub tolerance: f64,
}

impl Default for SeedSearchOptions {
    fn default() -> Self {
        SeedSearchOptions { workers: 0, prefix_depth: 3, first_only: false, tolerance: 1e-6 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SeedSearchStats {
    /// `4^((p−1)/2)`.
    pub raw_space: u128,
    pub nodes: u64,
    pub leaves: u64,
    pub mod4_rejected: u64,
    pub float_rejected: u64,
    pub confirmed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedSearchOutcome {
    pub p: u64,
    pub feasible: bool,
    pub hits: Vec<HalfVector>,
    pub stats: SeedSearchStats,
}

/// Precomputed per-prime data shared read-only by the workers.
struct SeedTables {
    p: u64,
    free: usize,
    /// odd lags `1, 3, …, p`; the last one is `p`
    lags: usize,
    /// `contrib[(j * 4 + sym) * lags + t]`: the term `4 b_j cos(lag_t · (j+1) π / p)`
    contrib: Vec<Complex64>,
    /// `remaining[j * lags + t]`: `4 Σ_{k ≥ j} |cos(lag_t (k+1) π / p)|`
    remaining: Vec<f64>,
    radius: f64,
    target: f64,
}

impl SeedTables {
    fn new(p: u64) -> Self {
        let free = (p as usize - 1) / 2;
        let lags = (p as usize).div_ceil(2);
        let lag_value = |t: usize| (2 * t + 1) as f64;
        let cos = |t: usize, j: usize| {
            if t + 1 == lags {
                // lag p: cos(jπ) exactly
                if (j + 1).is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            } else {
                (lag_value(t) * (j + 1) as f64 * PI / p as f64).cos()
            }
        };
        let mut contrib = vec![Complex64::new(0.0, 0.0); free * 4 * lags];
        for j in 0..free {
            for s in QSymbol::ALL {
                let v = s.to_complex() * 4.0;
                for t in 0..lags {
                    contrib[(j * 4 + s.power() as usize) * lags + t] = v * cos(t, j);
                }
            }
        }
        let mut remaining = vec![0.0; (free + 1) * lags];
        for j in (0..free).rev() {
            for t in 0..lags {
                remaining[j * lags + t] = remaining[(j + 1) * lags + t] + 4.0 * cos(t, j).abs();
            }
        }
        let target = (4 * p - 2) as f64;
        SeedTables { p, free, lags, contrib, remaining, radius: target.sqrt(), target }
    }
}

#[derive(Default)]
struct LocalStats {
    nodes: u64,
    leaves: u64,
    mod4_rejected: u64,
    float_rejected: u64,
}

struct Worker<'a> {
    tables: &'a SeedTables,
    margin: f64,
    tolerance: f64,
    /// `partial[d * lags + t]`: the sum after `d` symbols
    partial: Vec<Complex64>,
    choice: Vec<QSymbol>,
    stats: LocalStats,
}

impl<'a> Worker<'a> {
    fn new(tables: &'a SeedTables, tolerance: f64) -> Self {
        let mut partial = vec![Complex64::new(0.0, 0.0); (tables.free + 1) * tables.lags];
        partial[..tables.lags].fill(Complex64::new(1.0, -1.0));
        Worker {
            tables,
            margin: tolerance.max(1e-9),
            tolerance,
            partial,
            choice: vec![QSymbol::ONE; tables.free],
            stats: LocalStats::default(),
        }
    }

    /// Assign symbol `s` at depth `d` and report whether the subtree survives.
    #[inline]
    fn push(&mut self, d: usize, s: QSymbol) -> bool {
        let tb = self.tables;
        let lags = tb.lags;
        self.choice[d] = s;
        self.stats.nodes += 1;
        let base = (d * 4 + s.power() as usize) * lags;
        let (prev, next) = self.partial.split_at_mut((d + 1) * lags);
        let prev = &prev[d * lags..];
        let next = &mut next[..lags];
        let rem = &tb.remaining[(d + 1) * lags..(d + 2) * lags];
        let mut ok = true;
        for t in 0..lags {
            let v = prev[t] + tb.contrib[base + t];
            next[t] = v;
            let r = v.norm();
            if r - rem[t] > tb.radius + self.margin || r + rem[t] < tb.radius - self.margin {
                ok = false;
            }
        }
        ok
    }

    fn leaf_accepts(&mut self) -> bool {
        let tb = self.tables;
        self.stats.leaves += 1;
        let h = HalfVector { p: tb.p, b: self.choice.clone() };
        if !mod4_filter(tb.p, &h) {
            self.stats.mod4_rejected += 1;
            return false;
        }
        let last = &self.partial[tb.free * tb.lags..];
        if last.iter().any(|v| (v.norm_sqr() - tb.target).abs() > self.tolerance) {
            self.stats.float_rejected += 1;
            return false;
        }
        true
    }

    /// Depth-first search below the fixed prefix; `stop` is polled between
    /// siblings.
    fn run(&mut self, prefix: &[QSymbol], stop: &dyn Fn() -> bool, first_only: bool) -> Vec<Vec<QSymbol>> {
        let free = self.tables.free;
        let mut hits = Vec::new();
        for (d, &s) in prefix.iter().enumerate() {
            if !self.push(d, s) {
                return hits;
            }
        }
        if prefix.len() == free {
            if self.leaf_accepts() {
                hits.push(self.choice.clone());
            }
            return hits;
        }
        let start = prefix.len();
        // cursor[d]: next symbol index to try at depth d
        let mut cursor = vec![0u8; free];
        let mut d = start;
        loop {
            if cursor[d] == 4 {
                cursor[d] = 0;
                if d == start {
                    break;
                }
                d -= 1;
                continue;
            }
            let s = QSymbol::from_power(cursor[d]);
            cursor[d] += 1;
            if !self.push(d, s) {
                continue;
            }
            if d + 1 == free {
                if self.leaf_accepts() {
                    hits.push(self.choice.clone());
                    if first_only {
                        break;
                    }
                }
                if stop() {
                    break;
                }
            } else {
                d += 1;
            }
        }
        hits
    }
}

fn prefixes(depth: usize) -> Vec<Vec<QSymbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p| {
                QSymbol::ALL.into_iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    out
}

/// All half-vectors whose expansion, paired with `decompress_a(p, 1)`, is a
/// Legendre pair; sorted in enumeration order (`1 < i < −1 < −i`).
pub fn seed_search(p: u64, options: &SeedSearchOptions) -> Result<SeedSearchOutcome> {
    require_odd_prime(p)?;
    let free = (p as usize - 1) / 2;
    let raw_space = 4u128.pow(free as u32);
    if !seed_feasible(p) {
        return Ok(SeedSearchOutcome {
            p,
            feasible: false,
            hits: Vec::new(),
            stats: SeedSearchStats { raw_space, ..Default::default() },
        });
    }
    let tables = SeedTables::new(p);
    let units = prefixes(options.prefix_depth.min(free));
    let best = AtomicUsize::new(usize::MAX);
    let cancelled = AtomicBool::new(false);
    let (nodes, leaves, mod4_rej, float_rej) =
        (AtomicU64::new(0), AtomicU64::new(0), AtomicU64::new(0), AtomicU64::new(0));

    let work = |idx: usize, prefix: &Vec<QSymbol>| -> Vec<Vec<QSymbol>> {
        if options.first_only && idx > best.load(Ordering::Relaxed) {
            return Vec::new();
        }
        let mut w = Worker::new(&tables, options.tolerance);
        let stop = || cancelled.load(Ordering::Relaxed) || (options.first_only && idx > best.load(Ordering::Relaxed));
        let hits = w.run(prefix, &stop, options.first_only);
        if options.first_only && !hits.is_empty() {
            best.fetch_min(idx, Ordering::Relaxed);
        }
        nodes.fetch_add(w.stats.nodes, Ordering::Relaxed);
        leaves.fetch_add(w.stats.leaves, Ordering::Relaxed);
        mod4_rej.fetch_add(w.stats.mod4_rejected, Ordering::Relaxed);
        float_rej.fetch_add(w.stats.float_rejected, Ordering::Relaxed);
        hits
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let per_unit: Vec<Vec<Vec<QSymbol>>> =
        pool.install(|| units.par_iter().enumerate().map(|(idx, pre)| work(idx, pre)).collect());
    cancelled.store(true, Ordering::Relaxed);

    let mut hits = Vec::new();
    for symbols in per_unit.into_iter().flatten() {
        let h = HalfVector { p, b: symbols };
        let a = decompress_a(p, QSymbol::ONE)?;
        let b = build_b(p, &h)?;
        if !is_legendre_pair(&a, &b)? {
            return Err(Error::VerificationFailed(format!(
                "float screen accepted {h} for p = {p} but the exact check failed"
            )));
        }
        hits.push(h);
        if options.first_only {
            break;
        }
    }
    let stats = SeedSearchStats {
        raw_space,
        nodes: nodes.into_inner(),
        leaves: leaves.into_inner(),
        mod4_rejected: mod4_rej.into_inner(),
        float_rejected: float_rej.into_inner(),
        confirmed: hits.len() as u64,
    };
    Ok(SeedSearchOutcome { p, feasible: true, hits, stats })
}

/// Every decompression `B` of `B_p` (all `2·4^(p−1)` of them, no symmetry
/// restriction) that pairs with `decompress_a(p, 1)`. Only for `p ≤ 11`.
pub fn seed_search_unrestricted(p: u64) -> Result<Vec<QSeq>> {
    require_odd_prime(p)?;
    if p > 11 {
        return Err(Error::InvalidArgument(format!("unrestricted seed search is limited to p ≤ 11, got {p}")));
    }
    let seed = seed_pair(p)?;
    let a = decompress_a(p, QSymbol::ONE)?;
    Ok(Decompressions::new(&seed.b).filter(|b| is_legendre_pair(&a, b).unwrap_or(false)).collect())
}

/// One identity from the seed-pair theorem, evaluated.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub part: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedTheoremReport {
    pub p: u64,
    pub checks: Vec<IdentityCheck>,
}

impl SeedTheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

const FLOAT_TOL: f64 = 1e-6;

struct Checker {
    checks: Vec<IdentityCheck>,
}

impl Checker {
    fn add(&mut self, part: u8, name: &str, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = if passed { "ok".to_string() } else { failures.join("; ") };
        self.checks.push(IdentityCheck { part, name: name.to_string(), passed, detail });
    }
}

fn psd_equals(v: Psd, expect: u64) -> bool {
    match v {
        Psd::Exact(x) => x == expect,
        Psd::Approx(x) => (x - expect as f64).abs() < FLOAT_TOL,
    }
}

/// Evaluate the identities satisfied by the seed construction for prime `p`
/// (`p ≤ 64`). Parts 1–3 concern `A_p`, `B_p` and the decompressions of
/// `A_p`; when a decompression `b` of `B_p` is supplied, part 4 is checked,
/// and part 5 as well if `(decompress_a(p, 1), b)` is a Legendre pair.
pub fn seed_theorem_report(p: u64, b: Option<&QSeq>) -> Result<SeedTheoremReport> {
    require_odd_prime(p)?;
    if p > 64 {
        return Err(Error::InvalidArgument(format!("seed theorem report is limited to p ≤ 64, got {p}")));
    }
    let pu = p as usize;
    let pi = p as i64;
    let seed = seed_pair(p)?;
    let mut ck = Checker { checks: Vec::new() };

    // part 1
    let mut f = Vec::new();
    if seed.a.paf(0)? != GaussInt::from(4 * (pi - 1)) {
        f.push(format!("PAF(A_p,0) = {}", seed.a.paf(0)?));
    }
    for s in 1..pu {
        let v = seed.a.paf(s)?;
        if v != GaussInt::from(-4) {
            f.push(format!("PAF(A_p,{s}) = {v}"));
        }
    }
    ck.add(1, "PAF(A_p,0) = 4(p-1), PAF(A_p,s) = -4", f);
    let mut f = Vec::new();
    if seed.b.paf(0)? != GaussInt::from(2) {
        f.push(format!("PAF(B_p,0) = {}", seed.b.paf(0)?));
    }
    for s in 1..pu {
        let v = seed.b.paf(s)?;
        if !v.is_zero() {
            f.push(format!("PAF(B_p,{s}) = {v}"));
        }
    }
    ck.add(1, "PAF(B_p,0) = 2, PAF(B_p,s) = 0", f);

    // part 2
    let roots = RootTable::new(pu);
    let sqrt_p = (p as f64).sqrt();
    let mut f = Vec::new();
    for s in 1..pu {
        let chi = legendre_symbol(s as i64, p)? as f64;
        let expect =
            if p % 4 == 1 { Complex64::new(2.0 * chi * sqrt_p, 0.0) } else { Complex64::new(0.0, 2.0 * chi * sqrt_p) };
        let got = crate::seqcore::dft_of(seed.a.entries(), s, &roots);
        if (got - expect).norm() > FLOAT_TOL {
            f.push(format!("DFT(A_p,{s}) = {got}, expected {expect}"));
        }
    }
    let branch = if p % 4 == 1 { "2(s/p)sqrt(p)" } else { "2i(s/p)sqrt(p)" };
    ck.add(2, &format!("DFT(A_p,s) = {branch}"), f);
    let mut f = Vec::new();
    for s in 1..pu {
        let got = crate::seqcore::dft_of(seed.b.entries(), s, &roots);
        if (got - Complex64::new(1.0, 1.0)).norm() > FLOAT_TOL {
            f.push(format!("DFT(B_p,{s}) = {got}"));
        }
    }
    ck.add(2, "DFT(B_p,s) = 1+i", f);
    let (mut fa, mut fb, mut fs) = (Vec::new(), Vec::new(), Vec::new());
    for s in 1..pu {
        let pa = seed.a.psd(s)?;
        let pb = seed.b.psd(s)?;
        if !psd_equals(pa, 4 * p) {
            fa.push(format!("PSD(A_p,{s}) = {pa}"));
        }
        if !psd_equals(pb, 2) {
            fb.push(format!("PSD(B_p,{s}) = {pb}"));
        }
        if (pa.as_f64() + pb.as_f64() - (2 * (2 * p + 1)) as f64).abs() > FLOAT_TOL {
            fs.push(format!("lag {s}: {}", pa.as_f64() + pb.as_f64()));
        }
    }
    ck.add(2, "PSD(A_p,s) = 4p", fa);
    ck.add(2, "PSD(B_p,s) = 2", fb);
    ck.add(2, "PSD(A_p,s) + PSD(B_p,s) = 2(2p+1)", fs);

    // part 3
    let count = decompression_count(&seed.a);
    ck.add(3, "A_p has exactly four 2-decompressions", if count == 4 { vec![] } else { vec![format!("{count}")] });
    let a_roots = RootTable::new(2 * pu);
    let mut f_comp = Vec::new();
    let mut f_paf = Vec::new();
    let mut f_even = Vec::new();
    let mut f_odd = Vec::new();
    for a0 in QSymbol::ALL {
        let a = decompress_a(p, a0)?;
        if compress(&a, pu)? != seed.a {
            f_comp.push(format!("a0 = {a0}"));
        }
        if a.paf(0)? != GaussInt::from(2 * pi) {
            f_paf.push(format!("a0 = {a0}: PAF(A,0) = {}", a.paf(0)?));
        }
        if a.paf(pu)? != GaussInt::from(2 * pi - 4) {
            f_paf.push(format!("a0 = {a0}: PAF(A,p) = {}", a.paf(pu)?));
        }
        for s in 1..pu {
            for lag in [s, 2 * pu - s] {
                if a.paf(lag)? != GaussInt::from(-2) {
                    f_paf.push(format!("a0 = {a0}: PAF(A,{lag}) = {}", a.paf(lag)?));
                }
            }
            let got = a.dft_with(2 * s, &a_roots);
            let expect = crate::seqcore::dft_of(seed.a.entries(), s, &roots);
            if (got - expect).norm() > FLOAT_TOL || !psd_equals(a.psd_with(2 * s, &a_roots)?, 4 * p) {
                f_even.push(format!("a0 = {a0}: DFT(A,{}) = {got}", 2 * s));
            }
        }
        let twice_a0 = a0.value().scale(2).to_complex();
        for s in 1..=pu {
            let lag = 2 * s - 1;
            let got = a.dft_with(lag, &a_roots);
            if (got - twice_a0).norm() > FLOAT_TOL || !psd_equals(a.psd_with(lag, &a_roots)?, 4) {
                f_odd.push(format!("a0 = {a0}: DFT(A,{lag}) = {got}"));
            }
        }
    }
    ck.add(3, "decompressions of A compress to A_p", f_comp);
    ck.add(3, "PAF(A,0) = 2p, PAF(A,p) = 2p-4, PAF(A,s) = PAF(A,2p-s) = -2", f_paf);
    ck.add(3, "DFT(A,2s) = DFT(A_p,s), PSD(A,2s) = 4p", f_even);
    ck.add(3, "DFT(A,2s-1) = 2a0, PSD(A,2s-1) = 4", f_odd);

    if let Some(b) = b {
        if b.len() != 2 * pu {
            return Err(Error::LengthMismatch(b.len(), 2 * pu));
        }
        let mut f = Vec::new();
        if compress(b, pu)? != seed.b {
            f.push(format!("compression is {}", compress(b, pu)?));
        }
        ck.add(4, "B compresses to B_p", f);
        let mut f = Vec::new();
        if b.at(0).value() + b.at(pu).value() != GaussInt::new(1, 1) {
            f.push("b0 + bp != 1+i".to_string());
        }
        for j in 1..pu {
            if b.at(j + pu) != b.at(j).neg() {
                f.push(format!("b_{} != -b_{j}", j + pu));
            }
        }
        ck.add(4, "b0 + bp = 1+i, b_(j+p) = -b_j", f);
        let mut f = Vec::new();
        if b.paf(0)? != GaussInt::from(2 * pi) {
            f.push(format!("PAF(B,0) = {}", b.paf(0)?));
        }
        if b.paf(pu)? != GaussInt::from(-2 * pi + 2) {
            f.push(format!("PAF(B,p) = {}", b.paf(pu)?));
        }
        ck.add(4, "PAF(B,0) = 2p, PAF(B,p) = -2p+2", f);
        let mut f = Vec::new();
        for s in 1..pu {
            let got = b.dft_with(2 * s, &a_roots);
            if (got - Complex64::new(1.0, 1.0)).norm() > FLOAT_TOL || !psd_equals(b.psd_with(2 * s, &a_roots)?, 2) {
                f.push(format!("DFT(B,{}) = {got}", 2 * s));
            }
        }
        ck.add(4, "DFT(B,2s) = 1+i, PSD(B,2s) = 2", f);

        let a = decompress_a(p, QSymbol::ONE)?;
        if is_legendre_pair(&a, b)? {
            let mut f = Vec::new();
            for s in 1..pu {
                for lag in [s, 2 * pu - s] {
                    if !b.paf(lag)?.is_zero() {
                        f.push(format!("PAF(B,{lag}) = {}", b.paf(lag)?));
                    }
                }
            }
            ck.add(5, "PAF(B,s) = PAF(B,2p-s) = 0", f);
            let mut f = Vec::new();
            for s in 1..=pu {
                let v = b.psd_with(2 * s - 1, &a_roots)?;
                if !psd_equals(v, 4 * p - 2) {
                    f.push(format!("PSD(B,{}) = {v}", 2 * s - 1));
                }
            }
            ck.add(5, "PSD(B,2s-1) = 4p-2", f);
            let z = b.dft_exact(pu)?;
            let ok = z.norm() == 4 * p - 2 && z.re.rem_euclid(2) == 1 && z.im.rem_euclid(2) == 1;
            ck.add(5, "DFT(B,p) = a+ib, a^2+b^2 = 4p-2, a, b odd", if ok { vec![] } else { vec![format!("{z}")] });
        }
    }
    Ok(SeedTheoremReport { p, checks: ck.checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::SEED_TABLE;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> QSeq {
        s.parse().unwrap()
    }

    #[test]
    fn seed_pairs() {
        let s3 = seed_pair(3).unwrap();
        assert_eq!(s3.a.to_string(), "[0,2,-2]");
        assert_eq!(s3.b.to_string(), "[1+i,0,0]");
        assert_eq!(seed_pair(5).unwrap().a.to_string(), "[0,2,-2,-2,2]");
        for p in [3, 5, 7] {
            let a = seed_pair(p).unwrap().a;
            assert_eq!(a.paf(0).unwrap(), GaussInt::from(4 * (p as i64 - 1)));
            for s in 1..p as usize {
                assert_eq!(a.paf(s).unwrap(), GaussInt::from(-4));
            }
        }
        assert!(matches!(seed_pair(9), Err(Error::NotOddPrime(9))));
    }

    #[test]
    fn a_decompressions() {
        let a = decompress_a(3, QSymbol::ONE).unwrap();
        assert_eq!(a, q("[1,1,-1,-1,1,-1]"));
        assert_eq!(a.paf(3).unwrap(), GaussInt::from(2));
        for a0 in QSymbol::ALL {
            let a = decompress_a(7, a0).unwrap();
            assert_eq!(a.paf(7).unwrap(), GaussInt::from(10));
            for s in 1..=7 {
                assert!((a.psd(2 * s - 1).unwrap().as_f64() - 4.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn feasibility() {
        assert!(!seed_feasible(11));
        assert!(seed_feasible(13));
        assert!(!seed_feasible(29));
    }

    #[test]
    fn b_expansion() {
        let h = HalfVector::parse(3, "[1]").unwrap();
        let b = build_b(3, &h).unwrap();
        assert_eq!(b, q("[1,1,-1,i,-1,1]"));
        assert_eq!(b.dft_exact(3).unwrap(), GaussInt::new(-3, -1));
        assert_eq!(dft_at_p(&h), GaussInt::new(-3, -1));
        assert!(HalfVector::parse(5, "[1]").is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [3u64, 5, 7] {
            for _ in 0..50 {
                let syms = (0..(p - 1) / 2).map(|_| QSymbol::from_power(rng.gen_range(0..4))).collect();
                let h = HalfVector::new(p, syms).unwrap();
                let b = build_b(p, &h).unwrap();
                assert_eq!(b.row_sum(), GaussInt::new(1, 1));
                assert_eq!(compress(&b, p as usize).unwrap(), seed_pair(p).unwrap().b);
                for j in 1..p as usize {
                    assert_eq!(b.at(2 * p as usize - j), b.at(j));
                }
                assert_eq!(dft_at_p(&h), b.dft_exact(p as usize).unwrap());
                for s in 1..p as usize {
                    assert!((b.psd(2 * s).unwrap().as_f64() - 2.0).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn mod4() {
        assert!(mod4_filter(3, &HalfVector::parse(3, "[1]").unwrap()));
        let neg = HalfVector::parse(3, "[-1]").unwrap();
        assert_eq!(dft_at_p(&neg), GaussInt::new(5, -1));
        assert!(!mod4_filter(3, &neg));
    }

    #[test]
    fn search_rediscovers_small_table_rows() {
        for e in SEED_TABLE.iter().filter(|e| e.p <= 13) {
            let out = seed_search(e.p, &SeedSearchOptions::default()).unwrap();
            assert!(out.hits.contains(&e.half_vector().unwrap()), "p = {}", e.p);
            assert_eq!(out.stats.raw_space, 4u128.pow((e.p as u32 - 1) / 2));
        }
        let none = seed_search(11, &SeedSearchOptions::default()).unwrap();
        assert!(!none.feasible && none.hits.is_empty());
    }

    /// Exhaustive oracle without any pruning or floating point.
    fn brute_force(p: u64) -> Vec<HalfVector> {
        let free = (p as usize - 1) / 2;
        let a = decompress_a(p, QSymbol::ONE).unwrap();
        let mut out = Vec::new();
        for code in 0..4usize.pow(free as u32) {
            let mut syms = vec![QSymbol::ONE; free];
            let mut c = code;
            for k in (0..free).rev() {
                syms[k] = QSymbol::from_power((c % 4) as u8);
                c /= 4;
            }
            let h = HalfVector::new(p, syms).unwrap();
            if is_legendre_pair(&a, &build_b(p, &h).unwrap()).unwrap() {
                out.push(h);
            }
        }
        out
    }

    #[test]
    fn search_matches_brute_force() {
        for p in [3u64, 5, 7, 13] {
            let expect = brute_force(p);
            for depth in [0, 2] {
                let opts = SeedSearchOptions { prefix_depth: depth, workers: 2, ..Default::default() };
                assert_eq!(seed_search(p, &opts).unwrap().hits, expect, "p = {p}, depth = {depth}");
            }
            if let Some(first) = expect.first() {
                let opts = SeedSearchOptions { first_only: true, ..Default::default() };
                assert_eq!(&seed_search(p, &opts).unwrap().hits, &vec![first.clone()]);
            }
        }
    }

    #[test]
    fn tolerance_invariance() {
        let base = seed_search(13, &SeedSearchOptions::default()).unwrap().hits;
        for tol in [1e-9, 1e-7, 1e-5, 1e-4] {
            let opts = SeedSearchOptions { tolerance: tol, ..Default::default() };
            assert_eq!(seed_search(13, &opts).unwrap().hits, base, "tol = {tol}");
        }
    }

    #[test]
    fn hits_pair_with_every_a0() {
        for p in [5u64, 7, 13] {
            for h in seed_search(p, &SeedSearchOptions::default()).unwrap().hits {
                let b = build_b(p, &h).unwrap();
                for a0 in QSymbol::ALL {
                    assert!(is_legendre_pair(&decompress_a(p, a0).unwrap(), &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn unrestricted_space() {
        let seed = seed_pair(3).unwrap();
        assert_eq!(decompression_count(&seed.b), 2 * 4u128.pow(2));
        let all = seed_search_unrestricted(3).unwrap();
        assert!(all.contains(&q("[1,1,-1,i,-1,1]")));
        // the restricted family is a subset of the full one
        for h in seed_search(5, &SeedSearchOptions::default()).unwrap().hits {
            assert!(seed_search_unrestricted(5).unwrap().contains(&build_b(5, &h).unwrap()));
        }
        assert!(seed_search_unrestricted(13).is_err());
    }

    #[test]
    fn theorem_report() {
        let r5 = seed_theorem_report(5, None).unwrap();
        assert!(r5.all_passed(), "{:?}", r5.failures().collect::<Vec<_>>());
        assert!(r5.checks.iter().any(|c| c.name.contains("2(s/p)sqrt(p)")));
        let r7 = seed_theorem_report(7, None).unwrap();
        assert!(r7.checks.iter().any(|c| c.name.contains("2i(s/p)sqrt(p)")));
        assert!(r7.all_passed());
        let b = build_b(13, &HalfVector::parse(13, "[1, 1, -1, i, 1, i]").unwrap()).unwrap();
        let r13 = seed_theorem_report(13, Some(&b)).unwrap();
        assert!(r13.all_passed(), "{:?}", r13.failures().collect::<Vec<_>>());
        assert!(r13.checks.iter().any(|c| c.part == 5));
        // a B that is a decompression but not a pair: parts 1-4 only
        let b = build_b(3, &HalfVector::parse(3, "[-1]").unwrap()).unwrap();
        let r3 = seed_theorem_report(3, Some(&b)).unwrap();
        assert!(r3.all_passed());
        assert!(r3.checks.iter().all(|c| c.part <= 4));
    }
}
