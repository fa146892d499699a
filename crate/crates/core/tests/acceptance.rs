//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p qlp-core --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qlp_core::compress::{compress, Decompressions};
use qlp_core::corpus::{all_pairs, seed_entry, ELIGIBLE_HALF_TABLE, EVEN_TABLE, SEED_TABLE};
use qlp_core::filters::eligible_half_psd_pairs;
use qlp_core::hadamard::{
    binary_from_quaternary, is_binary_hadamard, is_quaternary_hadamard, quaternary_hadamard_from_pair,
};
use qlp_core::legendre::{is_legendre_pair, normalize, LegendrePair};
use qlp_core::search::{search_even_all, SearchPlan, SearchStatus};
use qlp_core::seeds::{seed_feasible, seed_search, seed_theorem_report, SeedSearchOptions};
use qlp_core::{GaussInt, QSeq, QSymbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FLOAT_TOL: f64 = 1e-6;
const RANDOM_INSTANCES: usize = 1000;
const RNG_SEED: u64 = 20_240_601;

const BUDGET_CORPUS: Duration = Duration::from_secs(1);
const BUDGET_TABLES: Duration = Duration::from_secs(1);
const BUDGET_PSD: Duration = Duration::from_secs(1);
const BUDGET_SMALL_SEEDS: Duration = Duration::from_secs(10);
const BUDGET_SEED_31: Duration = Duration::from_secs(30 * 60);
const BUDGET_SEARCH_8: Duration = Duration::from_secs(5 * 60);
const BUDGET_HADAMARD: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, || format!("{what} took {t:.2?}, budget {budget:?}"))
}

fn corpus_verification() -> Outcome {
    let start = Instant::now();
    let pairs = all_pairs().map_err(|e| e.to_string())?;
    ensure(pairs.len() == SEED_TABLE.len() + EVEN_TABLE.len(), || format!("{} pairs loaded", pairs.len()))?;
    for (label, p) in &pairs {
        ensure(is_legendre_pair(p.a(), p.b()).unwrap_or(false), || format!("{label} fails"))?;
    }
    within(start, BUDGET_CORPUS, "corpus verification")?;
    Ok(format!("{} pairs verified exactly", pairs.len()))
}

fn eligibility_tables() -> Outcome {
    let start = Instant::now();
    for &(l, want) in ELIGIBLE_HALF_TABLE {
        let got = eligible_half_psd_pairs(l).map_err(|e| e.to_string())?.pairs;
        let mut want = want.to_vec();
        want.sort_unstable();
        ensure(got == want, || format!("ℓ={l}: got {got:?}, expected {want:?}"))?;
    }
    within(start, BUDGET_TABLES, "table reproduction")?;
    Ok(format!("{} lengths match", ELIGIBLE_HALF_TABLE.len()))
}

fn psd_realization() -> Outcome {
    let start = Instant::now();
    let mut quarters = 0;
    for e in EVEN_TABLE {
        let p = e.pair().map_err(|err| err.to_string())?;
        let psd = |s: &QSeq, lag: usize| s.dft_exact(lag).map(|z| z.norm()).map_err(|err| err.to_string());
        let l = e.length;
        let half = (psd(p.a(), l / 2)?, psd(p.b(), l / 2)?);
        ensure(half == e.half_psd, || format!("ℓ={l}: half-lag {half:?} vs {:?}", e.half_psd))?;
        if l % 4 == 0 {
            let quarter = (psd(p.a(), l / 4)?, psd(p.b(), l / 4)?);
            ensure(Some(quarter) == e.quarter_psd, || {
                format!("ℓ={l}: quarter-lag {quarter:?} vs {:?}", e.quarter_psd)
            })?;
            quarters += 1;
        }
    }
    within(start, BUDGET_PSD, "PSD realization")?;
    Ok(format!("{} half-lag and {quarters} quarter-lag pairs realized", EVEN_TABLE.len()))
}

fn seed_identities() -> Outcome {
    let mut checks = 0;
    for p in [3u64, 5, 7, 11, 13, 19] {
        let b = match seed_entry(p) {
            Some(e) => Some(e.pair().map_err(|err| err.to_string())?.b().clone()),
            None => None,
        };
        let report = seed_theorem_report(p, b.as_ref()).map_err(|e| e.to_string())?;
        if let Some(f) = report.failures().next() {
            return Err(format!("p={p}: part {} \"{}\": {}", f.part, f.name, f.detail));
        }
        ensure(report.checks.iter().any(|c| c.part == 4) == b.is_some(), || format!("p={p}: part 4 coverage"))?;
        checks += report.checks.len();
    }
    Ok(format!("{checks} identities hold (float lags within {FLOAT_TOL:e})"))
}

fn feasibility() -> Outcome {
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let infeasible: Vec<u64> = primes.iter().copied().filter(|&p| !seed_feasible(p)).collect();
    ensure(infeasible == [11, 17, 29, 47], || format!("infeasible set {infeasible:?}"))?;
    Ok("infeasible exactly for p ∈ {11, 17, 29, 47}".into())
}

fn seed_rediscovery() -> Outcome {
    let find = |p: u64| -> Result<(), String> {
        let want = seed_entry(p).unwrap().half_vector().map_err(|e| e.to_string())?;
        let out = seed_search(p, &SeedSearchOptions::default()).map_err(|e| e.to_string())?;
        ensure(out.hits.contains(&want), || format!("p={p}: {want} not among {} hits", out.hits.len()))
    };
    let start = Instant::now();
    for p in [3, 5, 7, 13, 19] {
        find(p)?;
    }
    let small = start.elapsed();
    within(start, BUDGET_SMALL_SEEDS, "p ≤ 19")?;
    let start = Instant::now();
    find(31)?;
    let big = start.elapsed();
    within(start, BUDGET_SEED_31, "p = 31")?;
    Ok(format!("p ∈ {{3,5,7,13,19}} in {small:.2?}; p = 31 in {big:.2?}"))
}

fn sequences(l: usize) -> Vec<QSeq> {
    (0..4usize.pow(l as u32))
        .map(|mut n| {
            let v = (0..l)
                .map(|_| {
                    let e = QSymbol::from_power((n % 4) as u8);
                    n /= 4;
                    e
                })
                .collect();
            QSeq::new(v).unwrap()
        })
        .collect()
}

/// Every pair with row sums `(0, 1 + i)`, by the nested loop.
fn brute_force_canonical(l: usize) -> Vec<LegendrePair> {
    let all = sequences(l);
    let a: Vec<_> = all.iter().filter(|s| s.row_sum() == GaussInt::ZERO).collect();
    let b: Vec<_> = all.iter().filter(|s| s.row_sum() == GaussInt::new(1, 1)).collect();
    let mut out = Vec::new();
    for x in &a {
        for y in &b {
            if is_legendre_pair(x, y).unwrap() {
                out.push(LegendrePair::new((*x).clone(), (*y).clone()).unwrap());
            }
        }
    }
    out.sort();
    out
}

fn search_small() -> Outcome {
    let template = |l: usize| {
        let h = eligible_half_psd_pairs(l).unwrap().pairs[0];
        SearchPlan::new(l, h).map_err(|e| e.to_string())
    };
    let mut counts = Vec::new();
    for l in [2usize, 4] {
        let got = search_even_all(&template(l)?).map_err(|e| e.to_string())?.pairs;
        let want = brute_force_canonical(l);
        ensure(got == want, || format!("ℓ={l}: search {} pairs, brute force {}", got.len(), want.len()))?;
        counts.push(format!("ℓ={l}: {}", got.len()));
    }
    let start = Instant::now();
    let out = search_even_all(&template(8)?).map_err(|e| e.to_string())?;
    ensure(out.status == SearchStatus::Found, || "ℓ=8: no pair".into())?;
    for p in &out.pairs {
        ensure(p.is_verified() && p.is_canonical(), || "ℓ=8: unverified output".into())?;
    }
    within(start, BUDGET_SEARCH_8, "ℓ = 8")?;
    Ok(format!("{} match brute force; ℓ=8: {} pairs in {:.2?}", counts.join(", "), out.pairs.len(), start.elapsed()))
}

fn hadamard_certificates() -> Outcome {
    let start = Instant::now();
    let mut largest = (0, 0);
    for (label, p) in all_pairs().map_err(|e| e.to_string())? {
        let l = p.len();
        let h = quaternary_hadamard_from_pair(&p).map_err(|e| format!("{label}: {e}"))?;
        ensure(h.order() == 2 * l + 2 && is_quaternary_hadamard(&h), || format!("{label}: quaternary check"))?;
        let b = binary_from_quaternary(&h).map_err(|e| format!("{label}: {e}"))?;
        ensure(b.order() == 4 * l + 4 && is_binary_hadamard(&b), || format!("{label}: binary check"))?;
        largest = largest.max((h.order(), b.order()));
    }
    within(start, BUDGET_HADAMARD, "Hadamard certificates")?;
    Ok(format!("all corpus pairs certified, largest orders {} and {}", largest.0, largest.1))
}

fn random_seq(rng: &mut ChaCha8Rng, l: usize) -> QSeq {
    QSeq::new((0..l).map(|_| QSymbol::from_power(rng.gen_range(0..4))).collect()).unwrap()
}

/// A random pair from the Legendre-preserving symmetries of a corpus pair.
fn scramble(rng: &mut ChaCha8Rng, p: &LegendrePair) -> (QSeq, QSeq) {
    let unit = |rng: &mut ChaCha8Rng| QSymbol::from_power(rng.gen_range(0..4));
    let mut a = p.a().rotate(rng.gen_range(0..p.len())).scale(unit(rng));
    let mut b = p.b().rotate(rng.gen_range(0..p.len())).scale(unit(rng));
    if rng.gen_bool(0.5) {
        a = a.conj();
        b = b.conj();
    }
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut a, &mut b);
    }
    (a, b)
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    for n in 0..RANDOM_INSTANCES {
        let l = rng.gen_range(1..=40);
        let a = random_seq(&mut rng, l);
        for s in 1..l {
            ensure(a.paf(l - s).unwrap() == a.paf(s).unwrap().conj(), || format!("conjugate symmetry, instance {n}"))?;
        }
        let total: f64 = (0..l).map(|s| a.dft(s).norm_sqr()).sum();
        let expect = (l * l) as f64;
        ensure((total - expect).abs() <= FLOAT_TOL * expect.max(1.0), || format!("Parseval, instance {n}: {total}"))?;
    }

    for n in 0..RANDOM_INSTANCES {
        let l = rng.gen_range(2..=36);
        let divisors: Vec<usize> = (1..=l).filter(|k| l % k == 0).collect();
        let k = divisors[rng.gen_range(0..divisors.len())];
        let a = random_seq(&mut rng, l);
        let c = compress(&a, k).unwrap();
        for s in 1..k {
            let lhs = c.psd(s).unwrap().as_f64();
            let rhs = a.psd(s * (l / k)).unwrap().as_f64();
            ensure((lhs - rhs).abs() <= FLOAT_TOL * rhs.max(1.0), || {
                format!("PSD transfer, instance {n}, ℓ={l}, k={k}, s={s}")
            })?;
        }
    }

    for n in 0..RANDOM_INSTANCES {
        let l = rng.gen_range(2..=12);
        let divisors: Vec<usize> = (1..=l).filter(|k| l % k == 0 && l / k <= 4).collect();
        let k = divisors[rng.gen_range(0..divisors.len())];
        let a = random_seq(&mut rng, l);
        let c = compress(&a, k).unwrap();
        let mut found = false;
        for d in Decompressions::new(&c) {
            ensure(compress(&d, k).unwrap() == c, || {
                format!("round trip, instance {n}: decompression does not compress back")
            })?;
            found |= d == a;
        }
        ensure(found, || format!("round trip, instance {n}: original missing"))?;
    }

    let corpus: Vec<_> = all_pairs().unwrap().into_iter().map(|(_, p)| p).collect();
    for n in 0..RANDOM_INSTANCES {
        let p = &corpus[rng.gen_range(0..corpus.len())];
        let (a, b) = scramble(&mut rng, p);
        let (na, nb) = normalize(&a, &b).map_err(|e| format!("normalize, instance {n}: {e}"))?;
        ensure(is_legendre_pair(&na, &nb).unwrap(), || format!("normalization lost the pair, instance {n}"))?;
        let canonical = LegendrePair::new(na.clone(), nb.clone()).unwrap().is_canonical();
        ensure(canonical, || format!("normalization not canonical, instance {n}"))?;
        ensure(normalize(&na, &nb).unwrap() == (na, nb), || format!("normalization not idempotent, instance {n}"))?;
    }
    Ok(format!("6 suites × {RANDOM_INSTANCES} seeded instances, zero failures"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("corpus verification", corpus_verification),
        ("eligibility tables", eligibility_tables),
        ("PSD realization", psd_realization),
        ("seed identities", seed_identities),
        ("seed feasibility", feasibility),
        ("seed search re-discovery", seed_rediscovery),
        ("even search at tiny scale", search_small),
        ("Hadamard certificates", hadamard_certificates),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} [{t:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{t:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
