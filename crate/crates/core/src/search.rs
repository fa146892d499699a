//! Even-length Legendre pair search.
//!
//! Pipeline: eligible half-lag PSD pair → independent enumeration of `A`
//! candidates (row sum `0`) and `B` candidates (row sum `1 + i`) → hash join
//! on the exact PAF half-vector.
//!
//! Candidates are generated by a depth-first search over entries that tracks
//! the partial row sum, the partial alternating sum (the DFT at `ℓ/2`) and,
//! when `4 | ℓ`, the partial DFT at `ℓ/4`. All three are Gaussian integers,
//! and a sum of `r` further units can reach exactly the points `z` with
//! `|re z| + |im z| ≤ r` and `re z + im z ≡ r (mod 2)`, so pruning is exact.
//! Surviving leaves are screened at every other lag with the bound
//! `PSD ≤ 2ℓ + 2`, which any member of a Legendre pair satisfies.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fs::File;
use std::hash::{Hash, Hasher};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::compress::compress;
use crate::error::{Error, Result};
use crate::exactmath::{is_sum_of_two_squares, two_square_reps, GaussInt, QSymbol};
use crate::filters::{
    eligible_half_psd_pairs, eligible_quarter_psd_pairs, integral_compression_filter, mod3_admissible, seed_a3,
};
use crate::legendre::LegendrePair;
use crate::seqcore::{QSeq, RootTable, INTEGRALITY_TOL};

/// Largest length searched without [`SearchPlan::allow_large`].
pub const DESK_SCALE_MAX_LENGTH: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    A,
    B,
}

impl Role {
    /// Row sum of the canonical form.
    pub fn row_sum(self) -> GaussInt {
        match self {
            Role::A => GaussInt::ZERO,
            Role::B => GaussInt::new(1, 1),
        }
    }
}

/// Optional symmetry reductions. Both preserve the existence of a pair in
/// each orbit, so a search with reductions still finds every pair up to the
/// listed symmetries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Reductions {
    /// Keep only `A` equal to its lexicographically least cyclic shift.
    /// Rotating `A` alone changes neither its PAF nor its PSD.
    pub rotate_a: bool,
    /// Quotient by `(A, B) ↦ (conj A, i · conj B)`. This maps the quarter
    /// lag to `3ℓ/4`, so it is only allowed without a quarter target.
    pub conjugation: bool,
}

impl Reductions {
    pub const NONE: Reductions = Reductions { rotate_a: false, conjugation: false };
    pub const ALL: Reductions = Reductions { rotate_a: true, conjugation: true };
}

#[derive(Debug, Clone)]
pub struct SearchPlan {
    pub length: usize,
    /// `(PSD(A, ℓ/2), PSD(B, ℓ/2))`.
    pub half_target: (u64, u64),
    /// `(PSD(A, ℓ/4), PSD(B, ℓ/4))`, only when `4 | ℓ`.
    pub quarter_target: Option<(u64, u64)>,
    pub reductions: Reductions,
    /// Worker threads; `0` uses the global rayon pool.
    pub workers: usize,
    /// Entries fixed per work unit; `4^depth` units.
    pub prefix_depth: usize,
    /// Keep only the least pair.
    pub first: bool,
    /// Number of `A` candidates held in one in-memory join table before the
    /// join is partitioned to disk.
    pub join_memory_cap: usize,
    pub spill_dir: Option<PathBuf>,
    /// For `6 | ℓ`: reject candidates whose PSD at `ℓ/3` or `ℓ/6` contradicts
    /// the integrality flags of their 6-compression.
    pub mod6_screen: bool,
    /// For `6 | ℓ`: only `A` whose 3-compression is a cyclic shift of
    /// `[0, a + ib, −(a + ib)]`. This restricts the search space.
    pub a3_seed: Option<(i64, i64)>,
    /// Permit `ℓ > 24`.
    pub allow_large: bool,
}

impl SearchPlan {
    pub fn new(length: usize, half_target: (u64, u64)) -> Result<Self> {
        let plan = SearchPlan {
            length,
            half_target,
            quarter_target: None,
            reductions: Reductions::NONE,
            workers: 0,
            prefix_depth: 4,
            first: false,
            join_memory_cap: 1 << 22,
            spill_dir: None,
            mod6_screen: length.is_multiple_of(6),
            a3_seed: None,
            allow_large: false,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn with_quarter(mut self, quarter: (u64, u64)) -> Result<Self> {
        self.quarter_target = Some(quarter);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.length;
        if l < 2 || !l.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("search_even needs an even length ≥ 2, got {l}")));
        }
        if l > DESK_SCALE_MAX_LENGTH && !self.allow_large {
            return Err(Error::InvalidArgument(format!(
                "length {l} exceeds {DESK_SCALE_MAX_LENGTH}; enable allow_large to run it anyway"
            )));
        }
        if !eligible_half_psd_pairs(l)?.contains(self.half_target) {
            return Err(Error::InvalidArgument(format!(
                "half-lag target {:?} is not eligible for length {l}",
                self.half_target
            )));
        }
        if let Some(q) = self.quarter_target {
            if !eligible_quarter_psd_pairs(l)?.contains(q) {
                return Err(Error::InvalidArgument(format!("quarter-lag target {q:?} is not eligible for length {l}")));
            }
            if self.reductions.conjugation {
                return Err(Error::InvalidArgument(
                    "the conjugation reduction does not preserve the quarter-lag PSD".into(),
                ));
            }
        }
        if let Some((a, b)) = self.a3_seed {
            seed_a3(l, a, b)?;
        }
        if self.join_memory_cap == 0 {
            return Err(Error::InvalidArgument("join memory cap must be positive".into()));
        }
        Ok(())
    }

    fn targets(&self, role: Role) -> (u64, Option<u64>) {
        let pick = |(x, y): (u64, u64)| if role == Role::A { x } else { y };
        (pick(self.half_target), self.quarter_target.map(pick))
    }
}

/// One plan per eligible half-lag pair and, when `4 | ℓ`, per eligible
/// quarter-lag pair. Every canonical pair realizes exactly one of them.
pub fn plans_for_length(length: usize) -> Result<Vec<SearchPlan>> {
    let half = eligible_half_psd_pairs(length)?;
    let mut plans = Vec::new();
    for &h in &half.pairs {
        if length.is_multiple_of(4) {
            for &q in &eligible_quarter_psd_pairs(length)?.pairs {
                plans.push(SearchPlan::new(length, h)?.with_quarter(q)?);
            }
        } else {
            plans.push(SearchPlan::new(length, h)?);
        }
    }
    Ok(plans)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Found,
    /// The search completed and found nothing.
    Exhausted,
    /// No eligible PSD pair exists, so no search was needed.
    Infeasible,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub plans: usize,
    pub a_candidates: usize,
    pub b_candidates: usize,
    pub nodes: u64,
    pub spilled_buckets: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub length: usize,
    pub status: SearchStatus,
    #[serde(skip)]
    pub pairs: Vec<LegendrePair>,
    pub stats: SearchStats,
}

struct Targets {
    row: GaussInt,
    half: Vec<GaussInt>,
    quarter: Option<Vec<GaussInt>>,
}

fn norm_targets(n: u64) -> Vec<GaussInt> {
    two_square_reps(n).into_iter().map(|(a, b)| GaussInt::new(a, b)).collect()
}

#[inline]
fn reachable(d: GaussInt, r: i64) -> bool {
    let l1 = d.re.abs() + d.im.abs();
    l1 <= r && (l1 - r) % 2 == 0
}

struct CandidateSearch<'a> {
    length: usize,
    role: Role,
    targets: &'a Targets,
    reductions: Reductions,
    mod6_screen: bool,
    a3_seed: Option<Vec<Vec<GaussInt>>>,
    roots: RootTable,
    psd_bound: f64,
}

impl CandidateSearch<'_> {
    fn feasible(&self, depth: usize, row: GaussInt, half: GaussInt, quarter: GaussInt) -> bool {
        let r = (self.length - depth) as i64;
        reachable(self.targets.row - row, r)
            && self.targets.half.iter().any(|&t| reachable(t - half, r))
            && self.targets.quarter.as_ref().is_none_or(|qs| qs.iter().any(|&t| reachable(t - quarter, r)))
    }

    #[inline]
    fn step(j: usize, e: QSymbol, row: GaussInt, half: GaussInt, quarter: GaussInt) -> (GaussInt, GaussInt, GaussInt) {
        let j = (j % 4) as u8;
        (
            row + e.value(),
            half + QSymbol::from_power(e.power() + 2 * j).value(),
            quarter + QSymbol::from_power(e.power() + j).value(),
        )
    }

    /// Candidates extending `prefix`, in lexicographic order.
    fn run(&self, prefix: &[QSymbol], nodes: &mut u64) -> Vec<QSeq> {
        let mut buf = prefix.to_vec();
        let (mut row, mut half, mut quarter) = (GaussInt::ZERO, GaussInt::ZERO, GaussInt::ZERO);
        for (j, &e) in prefix.iter().enumerate() {
            (row, half, quarter) = Self::step(j, e, row, half, quarter);
            if !self.feasible(j + 1, row, half, quarter) {
                return Vec::new();
            }
        }
        let mut out = Vec::new();
        self.dfs(&mut buf, row, half, quarter, nodes, &mut out);
        out
    }

    fn dfs(
        &self,
        buf: &mut Vec<QSymbol>,
        row: GaussInt,
        half: GaussInt,
        quarter: GaussInt,
        nodes: &mut u64,
        out: &mut Vec<QSeq>,
    ) {
        *nodes += 1;
        let j = buf.len();
        if j == self.length {
            let seq = QSeq::new(buf.clone()).expect("non-empty");
            if self.accept_leaf(&seq) {
                out.push(seq);
            }
            return;
        }
        for e in QSymbol::ALL {
            let (r, h, q) = Self::step(j, e, row, half, quarter);
            if self.feasible(j + 1, r, h, q) {
                buf.push(e);
                self.dfs(buf, r, h, q, nodes, out);
                buf.pop();
            }
        }
    }

    fn accept_leaf(&self, seq: &QSeq) -> bool {
        let l = self.length;
        if self.role == Role::A {
            if self.reductions.rotate_a && *seq != seq.min_rotation() {
                return false;
            }
            if self.reductions.conjugation {
                let rep = |s: &QSeq| if self.reductions.rotate_a { s.min_rotation() } else { s.clone() };
                if rep(&seq.conj()) < rep(seq) {
                    return false;
                }
            }
            if let Some(shifts) = &self.a3_seed {
                let c3 = compress(seq, 3).expect("3 divides the length");
                if !shifts.iter().any(|s| s.as_slice() == c3.entries()) {
                    return false;
                }
            }
        }
        let values: Vec<Complex64> = seq.entries().iter().map(|s| s.to_complex()).collect();
        let psd_at = |s: usize| -> f64 {
            values.iter().enumerate().map(|(j, &v)| v * self.roots.root(j * s)).sum::<Complex64>().norm_sqr()
        };
        for s in 1..=l / 2 {
            if psd_at(s) > self.psd_bound || psd_at(l - s) > self.psd_bound {
                return false;
            }
        }
        if self.mod6_screen && l.is_multiple_of(6) && !self.mod6_consistent(seq, &psd_at) {
            return false;
        }
        true
    }

    fn mod6_consistent(&self, seq: &QSeq, psd_at: &dyn Fn(usize) -> f64) -> bool {
        let l = self.length;
        let flags = integral_compression_filter(&compress(seq, 6).expect("6 divides the length")).expect("length 6");
        let integral = |s: usize| -> Option<u64> {
            let v = psd_at(s);
            let r = v.round();
            ((v - r).abs() <= INTEGRALITY_TOL).then_some(r as u64)
        };
        let third = integral(l / 3);
        let sixth = integral(l / 6);
        let check = |flag: bool, value: Option<u64>, test: fn(u64) -> bool| !flag || value.is_some_and(test);
        check(flags.third_lag_mod3, third, mod3_admissible)
            && check(flags.sixth_lag_mod3, sixth, mod3_admissible)
            && check(flags.third_lag_two_squares, third, is_sum_of_two_squares)
            && check(flags.sixth_lag_two_squares, sixth, is_sum_of_two_squares)
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

fn all_prefixes(depth: usize) -> Vec<Vec<QSymbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p| {
                QSymbol::ALL.into_iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

fn candidates_for_plan(plan: &SearchPlan, role: Role) -> Result<(Vec<QSeq>, u64)> {
    let l = plan.length;
    let (half, quarter) = plan.targets(role);
    let targets = Targets {
        row: role.row_sum(),
        half: norm_targets(half),
        quarter: match quarter {
            Some(q) if l.is_multiple_of(4) => Some(norm_targets(q)),
            Some(_) => return Err(Error::InvalidArgument("quarter-lag target needs 4 | ℓ".into())),
            None => None,
        },
    };
    let a3_seed = match plan.a3_seed {
        Some((a, b)) if role == Role::A => {
            let seed = seed_a3(l, a, b)?;
            Some(
                (0..3)
                    .map(|t| {
                        let mut v = seed.entries().to_vec();
                        v.rotate_left(t);
                        v
                    })
                    .collect(),
            )
        }
        _ => None,
    };
    let search = CandidateSearch {
        length: l,
        role,
        targets: &targets,
        reductions: plan.reductions,
        mod6_screen: plan.mod6_screen,
        a3_seed,
        roots: RootTable::new(l),
        psd_bound: (2 * l + 2) as f64 + INTEGRALITY_TOL,
    };
    let prefixes = all_prefixes(plan.prefix_depth.min(l));
    let parts: Vec<(Vec<QSeq>, u64)> = with_pool(plan.workers, || {
        prefixes
            .par_iter()
            .map(|p| {
                let mut nodes = 0;
                let found = search.run(p, &mut nodes);
                (found, nodes)
            })
            .collect()
    })?;
    let nodes = parts.iter().map(|p| p.1).sum();
    Ok((parts.into_iter().flat_map(|p| p.0).collect(), nodes))
}

/// All sequences of length `ℓ` with the row sum of `role`, exact PSD
/// `half_target` at `ℓ/2` and, if given, `quarter_target` at `ℓ/4`, that
/// also respect `PSD ≤ 2ℓ + 2` at every lag. No symmetry reductions.
pub fn enumerate_role_candidates(
    length: usize,
    role: Role,
    half_target: u64,
    quarter_target: Option<u64>,
) -> Result<Vec<QSeq>> {
    if length < 2 || !length.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("length must be even and at least 2, got {length}")));
    }
    let pair = |t: u64| if role == Role::A { (t, 0) } else { (0, t) };
    let plan = SearchPlan {
        length,
        half_target: pair(half_target),
        quarter_target: quarter_target.map(pair),
        reductions: Reductions::NONE,
        workers: 0,
        prefix_depth: 3,
        first: false,
        join_memory_cap: 1,
        spill_dir: None,
        mod6_screen: false,
        a3_seed: None,
        allow_large: true,
    };
    Ok(candidates_for_plan(&plan, role)?.0)
}

type PafKey = Vec<i64>;

fn paf_key(a: &QSeq) -> PafKey {
    (1..=a.len() / 2)
        .flat_map(|s| {
            let z = a.paf_unchecked(s);
            [z.re, z.im]
        })
        .collect()
}

fn probe_key(b: &QSeq) -> PafKey {
    (1..=b.len() / 2)
        .flat_map(|s| {
            let z = GaussInt::new(-2, 0) - b.paf_unchecked(s);
            [z.re, z.im]
        })
        .collect()
}

fn join_indices(a_keys: &[(usize, PafKey)], b_keys: &[(usize, PafKey)]) -> Vec<(usize, usize)> {
    let mut table: HashMap<&PafKey, Vec<usize>> = HashMap::with_capacity(a_keys.len());
    for (i, k) in a_keys {
        table.entry(k).or_default().push(*i);
    }
    let mut out = Vec::new();
    for (j, k) in b_keys {
        if let Some(is) = table.get(k) {
            out.extend(is.iter().map(|&i| (i, *j)));
        }
    }
    out
}

/// Every `(A, B)` with `PAF(A, s) + PAF(B, s) = −2` at every nonzero lag, in
/// the order of the nested loop over `As` then `Bs`.
pub fn paf_join(a_list: &[QSeq], b_list: &[QSeq]) -> Result<Vec<LegendrePair>> {
    paf_join_capped(a_list, b_list, usize::MAX, None).map(|(pairs, _)| pairs)
}

/// [`paf_join`] holding at most `cap` `A` keys in memory at a time. Above the
/// cap both lists are hash-partitioned into files under `spill_dir` (or the
/// system temporary directory) and joined one bucket at a time. Returns the
/// pairs and the number of buckets written.
pub fn paf_join_capped(
    a_list: &[QSeq],
    b_list: &[QSeq],
    cap: usize,
    spill_dir: Option<&std::path::Path>,
) -> Result<(Vec<LegendrePair>, usize)> {
    let n = match a_list.first().or(b_list.first()) {
        Some(s) => s.len(),
        None => return Ok((Vec::new(), 0)),
    };
    if let Some(s) = a_list.iter().chain(b_list).find(|s| s.len() != n) {
        return Err(Error::LengthMismatch(n, s.len()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("Legendre pairs need length at least 2".into()));
    }
    let cap = cap.max(1);
    let (mut idx, buckets) = if a_list.len() <= cap {
        let a_keys: Vec<_> = a_list.par_iter().map(paf_key).enumerate().collect();
        let b_keys: Vec<_> = b_list.par_iter().map(probe_key).enumerate().collect();
        (join_indices(&a_keys, &b_keys), 0)
    } else {
        let buckets = a_list.len().div_ceil(cap) * 2;
        (spilled_join(a_list, b_list, buckets, spill_dir)?, buckets)
    };
    idx.sort_unstable();
    let pairs = idx
        .into_iter()
        .map(|(i, j)| LegendrePair::new(a_list[i].clone(), b_list[j].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok((pairs, buckets))
}

fn bucket_of(key: &PafKey, buckets: usize) -> usize {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    (h.finish() % buckets as u64) as usize
}

fn spilled_join(
    a_list: &[QSeq],
    b_list: &[QSeq],
    buckets: usize,
    spill_dir: Option<&std::path::Path>,
) -> Result<Vec<(usize, usize)>> {
    let dir = match spill_dir {
        Some(d) => tempfile::Builder::new().prefix("qlp-join").tempdir_in(d)?,
        None => tempfile::Builder::new().prefix("qlp-join").tempdir()?,
    };
    // each line: index, then the key, space separated
    let write_side = |name: &str, list: &[QSeq], key: fn(&QSeq) -> PafKey| -> Result<()> {
        let mut files = (0..buckets)
            .map(|b| File::create(dir.path().join(format!("{name}{b}"))).map(BufWriter::new))
            .collect::<std::io::Result<Vec<_>>>()?;
        for (i, s) in list.iter().enumerate() {
            let k = key(s);
            let f = &mut files[bucket_of(&k, buckets)];
            write!(f, "{i}")?;
            for v in &k {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        for mut f in files {
            f.flush()?;
        }
        Ok(())
    };
    write_side("a", a_list, paf_key)?;
    write_side("b", b_list, probe_key)?;
    let read_side = |name: String| -> Result<Vec<(usize, PafKey)>> {
        let mut out = Vec::new();
        for line in BufReader::new(File::open(dir.path().join(name))?).lines() {
            let line = line?;
            let mut it = line.split_ascii_whitespace().map(|t| t.parse::<i64>());
            let bad = || Error::Parse("corrupt join spill file".into());
            let i = it.next().ok_or_else(bad)?.map_err(|_| bad())? as usize;
            let k = it.collect::<std::result::Result<Vec<_>, _>>().map_err(|_| bad())?;
            out.push((i, k));
        }
        Ok(out)
    };
    let mut out = Vec::new();
    for b in 0..buckets {
        let a_keys = read_side(format!("a{b}"))?;
        let b_keys = read_side(format!("b{b}"))?;
        out.extend(join_indices(&a_keys, &b_keys));
    }
    Ok(out)
}

/// Run one plan. Pairs are canonical (`α = 0`, `β = 1 + i`), verified and
/// sorted.
pub fn search_even(plan: &SearchPlan) -> Result<SearchOutcome> {
    let mut cache = HashMap::new();
    search_with_cache(plan, &mut cache)
}

type CandidateCache = HashMap<(Role, u64, Option<u64>), Vec<QSeq>>;

fn search_with_cache(plan: &SearchPlan, cache: &mut CandidateCache) -> Result<SearchOutcome> {
    plan.validate()?;
    let mut stats = SearchStats { plans: 1, ..Default::default() };
    let mut lists = Vec::new();
    for role in [Role::A, Role::B] {
        let (h, q) = plan.targets(role);
        let key = (role, h, q);
        // reductions and the a3 restriction only touch role A
        let cacheable = role == Role::B;
        let list = match cache.get(&key) {
            Some(list) if cacheable => list.clone(),
            _ => {
                let (list, nodes) = candidates_for_plan(plan, role)?;
                stats.nodes += nodes;
                if cacheable {
                    cache.insert(key, list.clone());
                }
                list
            }
        };
        lists.push(list);
    }
    stats.a_candidates = lists[0].len();
    stats.b_candidates = lists[1].len();
    let (mut pairs, buckets) = paf_join_capped(&lists[0], &lists[1], plan.join_memory_cap, plan.spill_dir.as_deref())?;
    stats.spilled_buckets = buckets;
    for p in &pairs {
        debug_assert!(p.is_canonical());
        let a_half = p.a().psd(plan.length / 2)?.as_integer();
        let b_half = p.b().psd(plan.length / 2)?.as_integer();
        if (a_half, b_half) != (Some(plan.half_target.0), Some(plan.half_target.1)) {
            return Err(Error::VerificationFailed(format!(
                "pair realizes ({a_half:?}, {b_half:?}) instead of {:?}",
                plan.half_target
            )));
        }
    }
    pairs.sort();
    if plan.first {
        pairs.truncate(1);
    }
    Ok(SearchOutcome {
        length: plan.length,
        status: if pairs.is_empty() { SearchStatus::Exhausted } else { SearchStatus::Found },
        pairs,
        stats,
    })
}

/// Run every plan of [`plans_for_length`] with the settings of `template`
/// (its targets are ignored). With `template.first`, stops at the first plan
/// that finds a pair.
pub fn search_even_all(template: &SearchPlan) -> Result<SearchOutcome> {
    let l = template.length;
    let half = eligible_half_psd_pairs(l)?;
    if half.is_empty() {
        return Ok(SearchOutcome {
            length: l,
            status: SearchStatus::Infeasible,
            pairs: Vec::new(),
            stats: SearchStats::default(),
        });
    }
    let mut plans = plans_for_length(l)?;
    if template.reductions.conjugation {
        // the quarter targets are incompatible with the conjugation quotient
        plans.retain(|p| p.quarter_target.is_none() || !l.is_multiple_of(4));
        if plans.is_empty() {
            plans = half.pairs.iter().map(|&h| SearchPlan::new(l, h)).collect::<Result<_>>()?;
        }
    }
    let mut cache = HashMap::new();
    let mut stats = SearchStats::default();
    let mut pairs = Vec::new();
    for p in plans {
        let plan = SearchPlan { half_target: p.half_target, quarter_target: p.quarter_target, ..template.clone() };
        let out = search_with_cache(&plan, &mut cache)?;
        stats.plans += 1;
        stats.a_candidates += out.stats.a_candidates;
        stats.b_candidates += out.stats.b_candidates;
        stats.nodes += out.stats.nodes;
        stats.spilled_buckets += out.stats.spilled_buckets;
        pairs.extend(out.pairs);
        if template.first && !pairs.is_empty() {
            break;
        }
    }
    pairs.sort();
    if template.first {
        pairs.truncate(1);
    }
    Ok(SearchOutcome {
        length: l,
        status: if pairs.is_empty() { SearchStatus::Exhausted } else { SearchStatus::Found },
        pairs,
        stats,
    })
}
