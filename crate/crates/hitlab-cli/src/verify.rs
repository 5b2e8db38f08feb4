//! The verification harness: recompute every published table and diff it
//! against the transcription, exactly — same monomials, same order.
//!
//! Three kinds of target:
//!   * slice: one stored table against the matching filter of a computed
//!     basis (a full degree, a support part, or a weight stratum);
//!   * assembled: a full-degree basis reconstructed from stored tables via
//!     the structure maps (zero slices from one fewer variable, all-odd
//!     slices by doubling), diffed against the computed basis — this is how
//!     the published lists cover degrees they never spell out in full;
//!   * invariants: stored representatives checked for invariance,
//!     independence, and completeness against the solver.

use anyhow::{anyhow, Result};
use serde::Serialize;

use hitlab_core::action::{generators, invariants, Group};
use hitlab_core::gf2::EchelonForm;
use hitlab_core::hit::{EngineOptions, Quotient};
use hitlab_core::kameko::psi;
use hitlab_core::mono::{f_embed, sort_ascending, Monomial, Polynomial};

use crate::corpus::{self, BasisEntry, InvariantEntry};

#[derive(Clone, Debug, Serialize)]
pub struct TargetReport {
    pub id: String,
    pub kind: &'static str,
    pub status: Status,
    pub expected: usize,
    pub computed: usize,
    /// Empty unless the diff is non-empty.
    pub detail: String,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Mismatch,
    Skipped,
}

pub struct VerifyOutcome {
    pub reports: Vec<TargetReport>,
}

impl VerifyOutcome {
    pub fn all_ok(&self) -> bool {
        self.reports.iter().all(|r| r.status != Status::Mismatch)
    }
}

/// Degree-35 work is the extended tier; everything else runs by default.
fn is_extended(degree: u64) -> bool {
    degree >= 35
}

pub fn run(filter: Option<&str>, extended: bool, opts: &EngineOptions) -> Result<VerifyOutcome> {
    let selected = |id: &str| filter.map_or(true, |f| id.contains(f));
    let mut reports = Vec::new();

    for entry in corpus::basis_entries() {
        if !selected(&entry.id) {
            continue;
        }
        reports.push(slice_target(entry, extended, opts)?);
    }
    for (id, degree) in
        [("b5_deg7", 7u64), ("b5_deg15", 15), ("b5_deg16", 16), ("b5_deg35", 35)]
    {
        let id = format!("{id}_assembled");
        if !selected(&id) {
            continue;
        }
        reports.push(assembled_target(id, degree, extended, opts)?);
    }
    for entry in corpus::invariant_entries() {
        if !selected(&entry.id) {
            continue;
        }
        reports.push(invariant_target(entry, extended, opts)?);
    }
    if reports.is_empty() {
        return Err(anyhow!("no verification target matches `{}`", filter.unwrap_or("")));
    }
    Ok(VerifyOutcome { reports })
}

fn skipped(id: String, kind: &'static str, expected: usize) -> TargetReport {
    TargetReport {
        id,
        kind,
        status: Status::Skipped,
        expected,
        computed: 0,
        detail: "extended tier; rerun with --extended".to_string(),
        warnings: Vec::new(),
    }
}

fn slice_target(
    entry: &BasisEntry,
    extended: bool,
    opts: &EngineOptions,
) -> Result<TargetReport> {
    if is_extended(entry.degree) && !extended {
        return Ok(skipped(entry.id.clone(), "slice", entry.count));
    }
    let mut warnings = entry.warnings();
    let mut stored = entry.monomial_list();
    // One published table keeps its printed order, which restarts at
    // sub-family boundaries instead of running ascending throughout.  The
    // self-check above already flags every inversion; the stored rows stay
    // untouched, and the diff falls back to set agreement under the
    // canonical order.  Tables that pass the self-check are held to strict
    // sequence equality.
    if warnings.iter().any(|w| w.contains("ascending order")) {
        sort_ascending(&mut stored);
        warnings.push(format!(
            "corpus `{}`: kept in printed order; diffed as a set under the canonical order",
            entry.id
        ));
    }
    let q = Quotient::build(entry.k, entry.degree, opts)?;
    let part = entry.part()?;
    let computed: Vec<Monomial> = match entry.weight_vector() {
        Some(w) => q.basis_of_weight(&w).into_iter().filter(|m| part.admits(m)).collect(),
        None => q.basis_in_part(part),
    };
    Ok(report(entry.id.clone(), "slice", &stored, &computed, warnings))
}

/// Full-degree five-variable bases reconstructed from the stored tables
/// alone; any transcription slip or any wrong structure map breaks the diff.
fn assemble(degree: u64) -> Result<Vec<Monomial>> {
    let embed_b4 = |id: &str| -> Result<Vec<Monomial>> {
        let smaller = corpus::basis_entry(id)?.monomial_list();
        Ok((1..=5).flat_map(|i| smaller.iter().map(move |m| f_embed(i, m))).collect())
    };
    let stratum = |id: &str| -> Result<Vec<Monomial>> {
        Ok(corpus::basis_entry(id)?.monomial_list())
    };
    let mut parts: Vec<Monomial> = match degree {
        7 => {
            let mut v = embed_b4("b4_deg7")?;
            v.extend(stratum("b5_deg7_w32_pos")?);
            v.extend(stratum("b5_deg7_w51_pos")?);
            v
        }
        15 => {
            let mut v = embed_b4("b4_deg15")?;
            v.extend(stratum("b5_deg15_w113")?);
            v.extend(stratum("b5_deg15_w322_pos")?);
            v.extend(stratum("b5_deg15_w341")?);
            // the all-odd slice is the doubled degree-5 table
            v.extend(corpus::basis_entry("b5_deg5")?.monomial_list().iter().map(psi));
            v
        }
        16 => {
            let mut v = embed_b4("b4_deg16")?;
            for w in ["2111", "213", "232", "422", "441"] {
                v.extend(stratum(&format!("b5_deg16_w{w}_pos"))?);
            }
            v
        }
        35 => {
            let mut v = stratum("b5_deg35_zero")?;
            for w in ["32111", "3422", "3441"] {
                v.extend(stratum(&format!("b5_deg35_w{w}_pos"))?);
            }
            // the all-odd slice doubles the full degree-15 basis, which is
            // itself assembled
            v.extend(assemble(15)?.iter().map(psi));
            v
        }
        other => return Err(anyhow!("no assembly recipe for degree {other}")),
    };
    sort_ascending(&mut parts);
    parts.dedup();
    Ok(parts)
}

fn assembled_target(
    id: String,
    degree: u64,
    extended: bool,
    opts: &EngineOptions,
) -> Result<TargetReport> {
    let expected = assemble(degree)?;
    if is_extended(degree) && !extended {
        return Ok(skipped(id, "assembled", expected.len()));
    }
    let computed = Quotient::build(5, degree, opts)?.basis().to_vec();
    Ok(report(id, "assembled", &expected, &computed, Vec::new()))
}

fn invariant_target(
    entry: &InvariantEntry,
    extended: bool,
    opts: &EngineOptions,
) -> Result<TargetReport> {
    let polys = entry.polynomial_list();
    if is_extended(entry.degree) && !extended {
        return Ok(skipped(entry.id.clone(), "invariants", polys.len()));
    }
    let group = match entry.group.as_str() {
        "symmetric" => Group::Sigma,
        "general_linear" => Group::Gl,
        other => return Err(anyhow!("corpus `{}`: unknown group `{other}`", entry.id)),
    };
    let mut warnings = Vec::new();
    let mut failures = Vec::new();

    // Stored representatives confined to a single weight are stratum
    // classes: invariance and independence are read off the coordinates at
    // that weight, anything lower being zero in the stratified quotient.
    let weights: std::collections::BTreeSet<Vec<u32>> = polys
        .iter()
        .flat_map(|(_, terms)| terms.iter().map(|m| m.weight_vector().entries().to_vec()))
        .collect();
    let stratum = (weights.len() == 1)
        .then(|| hitlab_core::mono::WeightVector::new(weights.first().unwrap().clone()));

    let q = Quotient::build(entry.k, entry.degree, opts)?;
    let view: Vec<u32> = match &stratum {
        None => (0..q.dim() as u32).collect(),
        Some(w) => (0..q.dim() as u32)
            .filter(|&i| &q.basis()[i as usize].weight_vector() == w)
            .collect(),
    };
    let project = |p: &Polynomial| -> Result<Vec<u32>> {
        let coords = q.coords(p)?;
        Ok(coords
            .into_iter()
            .filter_map(|c| view.binary_search(&c).ok().map(|i| i as u32))
            .collect())
    };

    let gens = generators(entry.k, group);
    let mut span = EchelonForm::new(view.len());
    for (name, terms) in &polys {
        let p = Polynomial::from_monomials(entry.k, terms.iter().cloned());
        for g in &gens {
            if !project(&g.apply(&p).add(&p))?.is_empty() {
                failures.push(format!("{name} moves under {g:?}"));
            }
        }
        let coords = project(&p)?;
        if coords.is_empty() {
            failures.push(format!("{name} is zero in the quotient"));
        } else if !span.absorb_support(&coords) {
            failures.push(format!("{name} depends on the representatives before it"));
        }
    }

    let solved = invariants(entry.k, entry.degree, group, stratum.as_ref(), opts)?;
    if solved.dim != polys.len() {
        failures.push(format!(
            "solver finds dimension {}, corpus stores {} representatives",
            solved.dim,
            polys.len()
        ));
    }
    if let Some(w) = &stratum {
        warnings.push(format!(
            "corpus `{}`: representatives confined to weight {w}; verified as stratum classes",
            entry.id
        ));
    }
    Ok(TargetReport {
        id: entry.id.clone(),
        kind: "invariants",
        status: if failures.is_empty() { Status::Ok } else { Status::Mismatch },
        expected: polys.len(),
        computed: solved.dim,
        detail: failures.join("; "),
        warnings,
    })
}

fn report(
    id: String,
    kind: &'static str,
    expected: &[Monomial],
    computed: &[Monomial],
    warnings: Vec<String>,
) -> TargetReport {
    let detail = diff_detail(expected, computed);
    TargetReport {
        id,
        kind,
        status: if detail.is_empty() { Status::Ok } else { Status::Mismatch },
        expected: expected.len(),
        computed: computed.len(),
        detail,
        warnings,
    }
}

/// Human-readable first divergence, or empty when the sequences agree.
fn diff_detail(expected: &[Monomial], computed: &[Monomial]) -> String {
    if expected == computed {
        return String::new();
    }
    let missing: Vec<&Monomial> = expected.iter().filter(|m| !computed.contains(m)).collect();
    let extra: Vec<&Monomial> = computed.iter().filter(|m| !expected.contains(m)).collect();
    if missing.is_empty() && extra.is_empty() {
        let at = expected
            .iter()
            .zip(computed)
            .position(|(a, b)| a != b)
            .unwrap_or(expected.len().min(computed.len()));
        return format!("same monomials, different order (first at index {at})");
    }
    let sample = |v: &[&Monomial]| -> String {
        let mut s: Vec<String> = v.iter().take(3).map(|m| m.to_string()).collect();
        if v.len() > 3 {
            s.push(format!("... {} more", v.len() - 3));
        }
        s.join(", ")
    };
    let mut out = Vec::new();
    if !missing.is_empty() {
        out.push(format!("{} expected but not computed: {}", missing.len(), sample(&missing)));
    }
    if !extra.is_empty() {
        out.push(format!("{} computed but not expected: {}", extra.len(), sample(&extra)));
    }
    out.join("; ")
}
