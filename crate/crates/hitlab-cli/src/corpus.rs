//! The transcribed appendix tables: admissible-basis slices (full degrees,
//! support parts, weight strata) and invariant representatives.  Embedded at
//! compile time so verification never depends on a working directory.
//!
//! Transcription errors are the one thing this tool cannot recompute its
//! way out of, so every entry carries self-checks; violations surface as
//! warnings and are never silently corrected.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use anyhow::{anyhow, Result};
use serde::Deserialize;

use hitlab_core::mono::{compare, Monomial, Part, WeightVector};

/// One transcribed basis slice.
#[derive(Clone, Debug, Deserialize)]
pub struct BasisEntry {
    pub format_version: u32,
    pub id: String,
    pub k: usize,
    pub degree: u64,
    #[serde(default)]
    pub weight: Option<Vec<u32>>,
    #[serde(default = "part_all")]
    pub part: String,
    pub count: usize,
    pub monomials: Vec<Vec<u32>>,
}

fn part_all() -> String {
    "all".to_string()
}

/// Named invariant representatives in one degree, as term lists.
#[derive(Clone, Debug, Deserialize)]
pub struct InvariantEntry {
    pub format_version: u32,
    pub id: String,
    pub k: usize,
    pub degree: u64,
    /// "symmetric" or "general_linear".
    pub group: String,
    pub polynomials: BTreeMap<String, Vec<Vec<u32>>>,
}

const BASIS_FILES: &[&str] = &[
    include_str!("../data/corpus/b4_deg7.json"),
    include_str!("../data/corpus/b4_deg15.json"),
    include_str!("../data/corpus/b4_deg16.json"),
    include_str!("../data/corpus/b5_deg5.json"),
    include_str!("../data/corpus/b5_deg7_w32_pos.json"),
    include_str!("../data/corpus/b5_deg7_w51_pos.json"),
    include_str!("../data/corpus/b5_deg15_w113.json"),
    include_str!("../data/corpus/b5_deg15_w322_pos.json"),
    include_str!("../data/corpus/b5_deg15_w341.json"),
    include_str!("../data/corpus/b5_deg16_w2111_pos.json"),
    include_str!("../data/corpus/b5_deg16_w213_pos.json"),
    include_str!("../data/corpus/b5_deg16_w232_pos.json"),
    include_str!("../data/corpus/b5_deg16_w422_pos.json"),
    include_str!("../data/corpus/b5_deg16_w441_pos.json"),
    include_str!("../data/corpus/b5_deg35_zero.json"),
    include_str!("../data/corpus/b5_deg35_w32111_pos.json"),
    include_str!("../data/corpus/b5_deg35_w3422_pos.json"),
    include_str!("../data/corpus/b5_deg35_w3441_pos.json"),
];

const INVARIANT_FILES: &[&str] = &[
    include_str!("../data/corpus/inv_gl5_deg15.json"),
    include_str!("../data/corpus/inv_sigma5_deg35.json"),
];

pub fn basis_entries() -> &'static [BasisEntry] {
    static ALL: OnceLock<Vec<BasisEntry>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut v: Vec<BasisEntry> = BASIS_FILES
            .iter()
            .map(|text| serde_json::from_str(text).expect("embedded corpus parses"))
            .collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    })
}

pub fn invariant_entries() -> &'static [InvariantEntry] {
    static ALL: OnceLock<Vec<InvariantEntry>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut v: Vec<InvariantEntry> = INVARIANT_FILES
            .iter()
            .map(|text| serde_json::from_str(text).expect("embedded corpus parses"))
            .collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    })
}

pub fn basis_entry(id: &str) -> Result<&'static BasisEntry> {
    basis_entries()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| anyhow!("missing corpus table `{id}`"))
}

impl BasisEntry {
    pub fn part(&self) -> Result<Part> {
        match self.part.as_str() {
            "all" => Ok(Part::All),
            "zero" => Ok(Part::Zero),
            "positive" => Ok(Part::Positive),
            other => Err(anyhow!("corpus `{}`: unknown part `{other}`", self.id)),
        }
    }

    pub fn weight_vector(&self) -> Option<WeightVector> {
        self.weight.clone().map(WeightVector::new)
    }

    pub fn monomial_list(&self) -> Vec<Monomial> {
        self.monomials.iter().cloned().map(Monomial::new).collect()
    }

    /// Transcription self-checks.  Anything reported here means the stored
    /// table disagrees with its own metadata or the canonical order.
    pub fn warnings(&self) -> Vec<String> {
        let mut raw = Vec::new();
        if self.count != self.monomials.len() {
            raw.push(format!("count says {} but {} rows stored", self.count, self.monomials.len()));
        }
        let part = match self.part() {
            Ok(p) => Some(p),
            Err(_) => {
                raw.push(format!("unknown part `{}`", self.part));
                None
            }
        };
        let mut warn = |msg: String| raw.push(msg);
        let mons = self.monomial_list();
        for m in &mons {
            if m.k() != self.k {
                warn(format!("{m} has {} variables, header says {}", m.k(), self.k));
            }
            if m.degree() != self.degree {
                warn(format!("{m} has degree {}, header says {}", m.degree(), self.degree));
            }
            if let Some(w) = self.weight_vector() {
                if m.weight_vector() != w {
                    warn(format!("{m} has weight {}, header says {w}", m.weight_vector()));
                }
            }
            if let Some(p) = part {
                if !p.admits(m) {
                    warn(format!("{m} falls outside the `{}` part", self.part));
                }
            }
        }
        for pair in mons.windows(2) {
            match compare(&pair[0], &pair[1]) {
                Ok(std::cmp::Ordering::Less) => {}
                Ok(_) => warn(format!("rows out of ascending order at {} >= {}", pair[0], pair[1])),
                Err(e) => warn(format!("rows not comparable: {e}")),
            }
        }
        raw.into_iter().map(|msg| format!("corpus `{}`: {msg}", self.id)).collect()
    }
}

impl InvariantEntry {
    pub fn polynomial_list(&self) -> Vec<(String, Vec<Monomial>)> {
        self.polynomials
            .iter()
            .map(|(name, terms)| {
                (name.clone(), terms.iter().cloned().map(Monomial::new).collect())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every table passes its self-checks, with six known exceptions: those
    /// published lists are printed in sub-family blocks (grouped by exponent
    /// multiset), each ascending internally, so the running order restarts
    /// at every block boundary.  Exactly those inversions must be reported —
    /// and nothing else, anywhere.
    #[test]
    fn every_embedded_table_is_clean_except_the_printed_order_quirks() {
        let known = [
            ("b5_deg5", 1),
            ("b5_deg16_w422_pos", 5),
            ("b5_deg16_w441_pos", 2),
            ("b5_deg35_zero", 6),
            ("b5_deg35_w3422_pos", 8),
            ("b5_deg35_w3441_pos", 1),
        ];
        assert_eq!(basis_entries().len(), 18);
        for e in basis_entries() {
            assert_eq!(e.format_version, 1);
            let w = e.warnings();
            match known.iter().find(|(id, _)| *id == e.id) {
                Some((_, inversions)) => {
                    assert_eq!(w.len(), *inversions, "{:?}", w);
                    assert!(w.iter().all(|m| m.contains("out of ascending order")), "{:?}", w);
                }
                None => assert!(w.is_empty(), "{:?}", w),
            }
        }
        assert_eq!(invariant_entries().len(), 2);
    }

    #[test]
    fn headline_counts() {
        assert_eq!(basis_entry("b5_deg5").unwrap().count, 46);
        assert_eq!(basis_entry("b4_deg15").unwrap().count, 75);
        assert_eq!(basis_entry("b5_deg16_w422_pos").unwrap().count, 110);
        assert!(basis_entry("nope").is_err());
    }
}
