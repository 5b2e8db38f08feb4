//! Workbench plumbing behind the `hitlab` binary: the embedded table
//! corpus, the verification harness, output formats, and cache management.
//! The mathematical work all lives in `hitlab-core`; this crate turns it
//! into a CI-friendly tool.

pub mod cache;
pub mod corpus;
pub mod output;
pub mod verify;

use anyhow::{anyhow, bail, Result};

use hitlab_core::hit::monomial_count;
use hitlab_core::mono::{sort_ascending, Monomial, Polynomial, WeightVector};

/// Instances whose full column space exceeds this are the extended tier:
/// they carry a documented memory budget and must be requested explicitly.
pub const EXTENDED_COLUMN_BUDGET: u64 = 60_000;

/// In up to three variables nothing ever grows: column counts stay small
/// after the weight floor no matter the degree.  From four variables up,
/// wide degrees are gated.
pub fn needs_extended(k: usize, degree: u64) -> bool {
    k >= 4 && monomial_count(k, degree) > EXTENDED_COLUMN_BUDGET
}

pub fn ensure_budget(k: usize, degree: u64, extended: bool) -> Result<()> {
    if needs_extended(k, degree) && !extended {
        bail!(
            "k = {k}, degree {degree} spans {} columns; rerun with --extended \
             (documented budget: < 4 GiB)",
            monomial_count(k, degree)
        );
    }
    Ok(())
}

/// "3,2,2" -> the weight vector (3,2,2).
pub fn parse_weight(text: &str) -> Result<WeightVector> {
    let entries: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| anyhow!("bad weight entry `{s}`")))
        .collect::<Result<_>>()?;
    if entries.is_empty() {
        bail!("empty weight vector");
    }
    Ok(WeightVector::new(entries))
}

/// "15", "5,15,16", or "1..20" (inclusive).
pub fn parse_degrees(text: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| anyhow!("bad range start `{lo}`"))?;
        let hi: u64 = hi.trim().parse().map_err(|_| anyhow!("bad range end `{hi}`"))?;
        if lo > hi {
            bail!("empty degree range {lo}..{hi}");
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| anyhow!("bad degree `{s}`")))
        .collect()
}

/// Terms in ascending canonical order as exponent rows: the one shape every
/// format and the JSON schema use for polynomials and bases.
pub fn monomial_rows(mons: &[Monomial]) -> Vec<Vec<u32>> {
    mons.iter().map(|m| m.exponents().to_vec()).collect()
}

pub fn polynomial_rows(p: &Polynomial) -> Vec<Vec<u32>> {
    let mut terms: Vec<Monomial> = p.terms().cloned().collect();
    sort_ascending(&mut terms);
    monomial_rows(&terms)
}
