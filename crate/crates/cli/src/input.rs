use std::fs;

use anyhow::{anyhow, Context, Result};
use qlp_core::corpus::pair_for_length;
use qlp_core::{LegendrePair, PairRecord, QSeq};

use crate::PairInput;

/// `A` and `B`, not yet verified.
pub fn read_pair(input: &PairInput) -> Result<(QSeq, QSeq)> {
    if let (Some(a), Some(b)) = (&input.a, &input.b) {
        return Ok((a.parse()?, b.parse()?));
    }
    if let Some(path) = &input.file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_pair_text(&text);
    }
    if let Some(l) = input.length {
        let pair = pair_for_length(l)
            .ok_or_else(|| qlp_core::Error::InvalidArgument(format!("no built-in pair of length {l}")))??;
        return Ok((pair.a().clone(), pair.b().clone()));
    }
    Err(qlp_core::Error::InvalidArgument("give --a and --b, --file, or --length".into()).into())
}

/// A JSON pair record, or two non-empty lines holding `A` and `B`.
pub fn parse_pair_text(text: &str) -> Result<(QSeq, QSeq)> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let record: PairRecord = serde_json::from_str(trimmed).map_err(qlp_core::Error::from)?;
        let pair: LegendrePair = record.to_pair()?;
        return Ok((pair.a().clone(), pair.b().clone()));
    }
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    match lines.as_slice() {
        [a, b] => Ok((a.parse()?, b.parse()?)),
        _ => Err(anyhow!(qlp_core::Error::Parse(format!("expected two sequence lines, found {}", lines.len())))),
    }
}

/// `"x,y"` as a pair of integers.
pub fn parse_int_pair<T: std::str::FromStr>(text: &str) -> Result<(T, T)> {
    let bad = || qlp_core::Error::Parse(format!("expected two comma-separated integers, got {text:?}"));
    let (x, y) = text.split_once(',').ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}
