use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use qlp_core::compress::{compress, decompression_count, Decompressions};
use qlp_core::corpus::{all_pairs, EVEN_TABLE, SEED_TABLE};
use qlp_core::exactmath::is_sum_of_two_squares;
use qlp_core::filters::{
    eligible_half_psd_pairs, eligible_quarter_psd_pairs, integral_compression_filter, mod3_admissible, seed_a3,
};
use qlp_core::hadamard::certificates_for_pair;
use qlp_core::legendre::{first_failing_lag, normalize};
use qlp_core::search::{search_even, search_even_all, Reductions, SearchPlan, SearchStatus};
use qlp_core::seeds::{build_b, seed_search, SeedSearchOptions};
use qlp_core::{CompressedSeq, Error, GaussInt, LegendrePair, MatrixKind, MatrixRecord, QSeq, QSymbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{parse_int_pair, read_pair};
use crate::{Cli, Command, SearchEvenArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NotLegendrePair(_)) => EXIT_NEGATIVE,
        Some(Error::VerificationFailed(_) | Error::Overflow(_)) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

fn verdict(ok: bool) -> u8 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

/// Human text to stdout, unless `--json` alone asked for JSON on stdout.
/// `--json PATH` writes the JSON to the file as well as printing the text.
fn emit(cli: &Cli, human: &str, value: Value) -> Result<()> {
    match &cli.json {
        None => print!("{human}"),
        Some(None) => println!("{}", serde_json::to_string_pretty(&value)?),
        Some(Some(path)) => {
            print!("{human}");
            fs::write(path, serde_json::to_string_pretty(&value)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Verify(input) => verify(cli, read_pair(input)?),
        Command::CorpusCheck { scramble } => corpus_check(cli, *scramble),
        Command::SearchSeed { p, first, depth } => search_seed(cli, *p, *first, *depth),
        Command::SearchEven(args) => search_even_cmd(cli, args),
        Command::Compress { seq, k } => compress_cmd(cli, seq, *k),
        Command::Decompress { compressed, ratio, limit, count } => {
            decompress_cmd(cli, compressed, *ratio, *limit, *count)
        }
        Command::PsdFilters { length, a6, value } => psd_filters(cli, *length, a6.as_deref(), *value),
        Command::Hadamard { pair, out_dir } => hadamard(cli, read_pair(pair)?, out_dir.as_deref()),
    }
}

fn exact_psd(s: &QSeq, lag: usize) -> Result<u64> {
    Ok(s.dft_exact(lag)?.norm())
}

fn verify(cli: &Cli, (a, b): (QSeq, QSeq)) -> Result<u8> {
    let failing = first_failing_lag(&a, &b)?;
    let l = a.len();
    let (alpha, beta) = (a.row_sum(), b.row_sum());
    let sums: Vec<GaussInt> = (1..l).map(|s| a.paf(s).and_then(|x| Ok(x + b.paf(s)?))).collect::<Result<_, _>>()?;
    let half = if l % 2 == 0 { Some((exact_psd(&a, l / 2)?, exact_psd(&b, l / 2)?)) } else { None };
    let quarter = if l % 4 == 0 { Some((exact_psd(&a, l / 4)?, exact_psd(&b, l / 4)?)) } else { None };

    let mut h = String::new();
    writeln!(h, "length  {l}")?;
    writeln!(h, "alpha   {alpha}")?;
    writeln!(h, "beta    {beta}")?;
    let list: Vec<String> = sums.iter().map(|z| z.to_string()).collect();
    writeln!(h, "PAF(A,s)+PAF(B,s), s=1..{}: [{}]", l - 1, list.join(", "))?;
    if let Some((x, y)) = half {
        writeln!(h, "half-lag PSD      ({x}, {y})")?;
    }
    if let Some((x, y)) = quarter {
        writeln!(h, "quarter-lag PSD   ({x}, {y})")?;
    }
    match failing {
        None => writeln!(h, "verdict  Legendre pair")?,
        Some(s) => writeln!(h, "verdict  not a Legendre pair (first failing lag {s})")?,
    }
    let value = json!({
        "length": l,
        "A": a,
        "B": b,
        "alpha": alpha,
        "beta": beta,
        "paf_sums": sums,
        "half_psd": half,
        "quarter_psd": quarter,
        "verified": failing.is_none(),
        "first_failing_lag": failing,
    });
    emit(cli, &h, value)?;
    Ok(verdict(failing.is_none()))
}

fn scramble(rng: &mut ChaCha8Rng, p: &LegendrePair) -> (QSeq, QSeq) {
    let unit = |rng: &mut ChaCha8Rng| QSymbol::from_power(rng.gen_range(0..4));
    let mut a = p.a().rotate(rng.gen_range(0..p.len())).scale(unit(rng));
    let mut b = p.b().rotate(rng.gen_range(0..p.len())).scale(unit(rng));
    if rng.gen_bool(0.5) {
        (a, b) = (a.conj(), b.conj());
    }
    if rng.gen_bool(0.5) {
        (a, b) = (b, a);
    }
    (a, b)
}

fn corpus_check(cli: &Cli, scrambles: usize) -> Result<u8> {
    let mut h = String::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut record = |label: String, check: &str, ok: bool, h: &mut String| -> Result<()> {
        writeln!(h, "{}  {label}: {check}", if ok { "ok  " } else { "FAIL" })?;
        rows.push(json!({ "entry": label, "check": check, "passed": ok }));
        all_ok &= ok;
        Ok(())
    };
    for e in SEED_TABLE {
        let label = format!("seed p={} (ℓ={})", e.p, 2 * e.p);
        match e.pair() {
            Ok(p) => record(label, &format!("verified, A={} B={}", p.a(), p.b()), true, &mut h)?,
            Err(err) => record(label, &err.to_string(), false, &mut h)?,
        }
    }
    for e in EVEN_TABLE {
        let label = format!("even ℓ={}", e.length);
        let p = match e.pair() {
            Ok(p) => p,
            Err(err) => {
                record(label, &err.to_string(), false, &mut h)?;
                continue;
            }
        };
        record(label.clone(), "verified", true, &mut h)?;
        let l = e.length;
        let half = (exact_psd(p.a(), l / 2)?, exact_psd(p.b(), l / 2)?);
        record(label.clone(), &format!("half-lag PSD {half:?}, table {:?}", e.half_psd), half == e.half_psd, &mut h)?;
        if let Some(want) = e.quarter_psd {
            let quarter = (exact_psd(p.a(), l / 4)?, exact_psd(p.b(), l / 4)?);
            record(label, &format!("quarter-lag PSD {quarter:?}, table {want:?}"), quarter == want, &mut h)?;
        }
    }
    if scrambles > 0 {
        let pairs: Vec<_> = all_pairs()?.into_iter().map(|(_, p)| p).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let mut bad = 0;
        for _ in 0..scrambles {
            let pick = rng.gen_range(0..pairs.len());
            let (a, b) = scramble(&mut rng, &pairs[pick]);
            let ok = normalize(&a, &b)
                .and_then(|(na, nb)| LegendrePair::new(na, nb))
                .map(|p| p.is_canonical())
                .unwrap_or(false);
            bad += usize::from(!ok);
        }
        record(
            format!("{scrambles} transformed pairs (seed {})", cli.seed),
            &format!("normalized to canonical form, {bad} failures"),
            bad == 0,
            &mut h,
        )?;
    }
    writeln!(h, "{}", if all_ok { "all checks passed" } else { "some checks FAILED" })?;
    emit(cli, &h, json!({ "passed": all_ok, "checks": rows }))?;
    Ok(verdict(all_ok))
}

fn search_seed(cli: &Cli, p: u64, first: bool, depth: usize) -> Result<u8> {
    let options =
        SeedSearchOptions { workers: cli.workers, prefix_depth: depth, first_only: first, ..Default::default() };
    let out = seed_search(p, &options)?;
    let mut h = String::new();
    if !out.feasible {
        writeln!(h, "p={p}: infeasible, 4p-2 = {} is not a sum of two squares", 4 * p - 2)?;
    } else {
        writeln!(h, "p={p}: {} half-vector(s)", out.hits.len())?;
        writeln!(
            h,
            "raw space {}, nodes {}, leaves {}, mod-4 rejected {}, float rejected {}",
            out.stats.raw_space, out.stats.nodes, out.stats.leaves, out.stats.mod4_rejected, out.stats.float_rejected
        )?;
    }
    let mut bs = Vec::new();
    for hv in &out.hits {
        let b = build_b(p, hv)?;
        writeln!(h, "{hv}  B={b}")?;
        bs.push(b);
    }
    let mut value = serde_json::to_value(&out)?;
    value["B"] = serde_json::to_value(&bs)?;
    emit(cli, &h, value)?;
    Ok(verdict(!out.hits.is_empty()))
}

fn search_even_cmd(cli: &Cli, args: &SearchEvenArgs) -> Result<u8> {
    let l = args.length;
    let table = eligible_half_psd_pairs(l)?;
    if table.is_empty() {
        let h = format!("ℓ={l}: infeasible, no eligible half-lag PSD pair\n");
        emit(cli, &h, json!({ "length": l, "status": SearchStatus::Infeasible, "pairs": [] }))?;
        return Ok(EXIT_NEGATIVE);
    }
    let half = match &args.psd_pair {
        Some(text) => parse_int_pair(text)?,
        None => table.pairs[0],
    };
    let mut plan = SearchPlan::new(l, half)?;
    if let Some(text) = &args.quarter_pair {
        plan = plan.with_quarter(parse_int_pair(text)?)?;
    }
    plan.reductions = if args.no_reductions {
        Reductions::NONE
    } else {
        Reductions { rotate_a: true, conjugation: plan.quarter_target.is_none() }
    };
    plan.workers = cli.workers;
    plan.prefix_depth = args.depth;
    plan.first = !args.all;
    plan.join_memory_cap = args.join_cap;
    plan.spill_dir = args.spill_dir.clone();
    plan.mod6_screen = l.is_multiple_of(6) && !args.no_mod6;
    plan.a3_seed = args.a3.as_deref().map(parse_int_pair).transpose()?;
    plan.allow_large = args.allow_large;
    plan.validate()?;

    let out = if args.psd_pair.is_some() { search_even(&plan)? } else { search_even_all(&plan)? };
    let mut h = String::new();
    writeln!(h, "ℓ={l}: {:?}, {} pair(s)", out.status, out.pairs.len())?;
    writeln!(
        h,
        "plans {}, A candidates {}, B candidates {}, nodes {}",
        out.stats.plans, out.stats.a_candidates, out.stats.b_candidates, out.stats.nodes
    )?;
    for p in &out.pairs {
        writeln!(h, "A={} B={}", p.a(), p.b())?;
    }
    let mut value = serde_json::to_value(&out)?;
    value["reductions"] = serde_json::to_value(plan.reductions)?;
    value["pairs"] = serde_json::to_value(out.pairs.iter().map(|p| p.record()).collect::<Vec<_>>())?;
    emit(cli, &h, value)?;
    Ok(verdict(out.status == SearchStatus::Found))
}

fn compress_cmd(cli: &Cli, seq: &str, k: usize) -> Result<u8> {
    let a: QSeq = seq.parse()?;
    let c = compress(&a, k)?;
    let psd: Vec<String> = (1..k).map(|s| c.psd(s).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    let h = format!("{c}  (ratio {})\nPSD s=1..{}: [{}]\n", c.ratio(), k.saturating_sub(1), psd.join(", "));
    emit(cli, &h, json!({ "compressed": c.to_string(), "ratio": c.ratio(), "psd": psd }))?;
    Ok(EXIT_OK)
}

fn decompress_cmd(cli: &Cli, text: &str, ratio: usize, limit: usize, count_only: bool) -> Result<u8> {
    let c = CompressedSeq::parse(text, ratio)?;
    let count = decompression_count(&c);
    let mut h = format!("{count} decompression(s) of {c} to length {}\n", c.original_length());
    let shown: Vec<QSeq> = if count_only { Vec::new() } else { Decompressions::new(&c).take(limit).collect() };
    for s in &shown {
        writeln!(h, "{s}")?;
    }
    emit(cli, &h, json!({ "count": count.to_string(), "sequences": shown }))?;
    Ok(verdict(count > 0))
}

fn psd_filters(cli: &Cli, length: Option<usize>, a6: Option<&str>, value: Option<u64>) -> Result<u8> {
    if length.is_none() && value.is_none() {
        return Err(Error::InvalidArgument("give --length and/or --value".into()).into());
    }
    let mut h = String::new();
    let mut out = serde_json::Map::new();
    if let Some(l) = length {
        let half = eligible_half_psd_pairs(l)?;
        writeln!(h, "ℓ={l} eligible half-lag pairs: {:?}", half.pairs)?;
        out.insert("half".into(), json!(half.pairs));
        if l % 4 == 0 {
            let q = eligible_quarter_psd_pairs(l)?;
            writeln!(h, "ℓ={l} eligible quarter-lag pairs: {:?}", q.pairs)?;
            out.insert("quarter".into(), json!(q.pairs));
        }
        if l % 6 == 0 {
            let m = (l / 3) as i64;
            let seeds: Vec<(i64, i64)> = (-m..=m)
                .flat_map(|a| (-m..=m).map(move |b| (a, b)))
                .filter(|&(a, b)| seed_a3(l, a, b).is_ok())
                .collect();
            writeln!(h, "ℓ={l} A_3 seeds (a, b): {seeds:?}")?;
            out.insert("a3_seeds".into(), json!(seeds));
        }
        if let Some(text) = a6 {
            if l % 6 != 0 {
                return Err(Error::InvalidArgument(format!("--a6 needs 6 | ℓ, got ℓ = {l}")).into());
            }
            let c = CompressedSeq::parse(text, l / 6)?;
            let flags = integral_compression_filter(&c)?;
            writeln!(h, "A_6={c}: {flags:?}")?;
            out.insert("flags".into(), serde_json::to_value(flags)?);
        }
    }
    if let Some(n) = value {
        let (m3, sq) = (mod3_admissible(n), is_sum_of_two_squares(n));
        writeln!(h, "{n}: x²-xy+y² form {m3}, sum of two squares {sq}")?;
        out.insert("value".into(), json!({ "n": n, "mod3_admissible": m3, "sum_of_two_squares": sq }));
    }
    emit(cli, &h, Value::Object(out))?;
    Ok(EXIT_OK)
}

fn hadamard(cli: &Cli, (a, b): (QSeq, QSeq), out_dir: Option<&Path>) -> Result<u8> {
    let pair = LegendrePair::new(a, b)?;
    let certs = certificates_for_pair(&pair)?;
    let (q, bin) = (&certs.quaternary, &certs.binary);
    let mut h = format!(
        "ℓ={}: quaternary Hadamard of order {} verified; binary Hadamard of order {} verified\n",
        pair.len(),
        q.order(),
        bin.order()
    );
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, m) in [("quaternary.txt", q), ("binary.txt", bin)] {
            let path = dir.join(name);
            fs::write(&path, m.to_text()?).with_context(|| format!("writing {}", path.display()))?;
            writeln!(h, "wrote {}", path.display())?;
        }
    }
    let value = json!({
        "length": pair.len(),
        "quaternary": MatrixRecord::new(q, MatrixKind::Quaternary),
        "binary": MatrixRecord::new(bin, MatrixKind::Binary),
    });
    emit(cli, &h, value)?;
    Ok(EXIT_OK)
}
