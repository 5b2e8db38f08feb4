//! On-disk artifact management.  The engine reads and writes echelon
//! payloads by itself when given a cache directory; this module adds the
//! operator's view: pre-compute, list, and clear.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use hitlab_core::gf2::EchelonForm;
use hitlab_core::hit::{EngineOptions, Quotient};

/// Flag beats environment; `HITLAB_CACHE` supplies the default directory.
pub fn resolve_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("HITLAB_CACHE").map(PathBuf::from))
}

#[derive(Debug, Serialize)]
pub struct CacheFileInfo {
    pub name: String,
    pub bytes: u64,
    /// None when the payload fails its checksum or cannot be parsed.
    pub k: Option<u32>,
    pub degree: Option<u64>,
    pub part: Option<String>,
    pub policy: Option<String>,
    pub rank: Option<usize>,
}

pub fn inspect(dir: &Path) -> Result<Vec<CacheFileInfo>> {
    let mut out = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(_) => return Ok(out), // nothing cached yet
    };
    for entry in entries {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if !name.ends_with(".bin") {
            continue;
        }
        let bytes = entry.metadata()?.len();
        let parsed = fs::read(entry.path())
            .ok()
            .and_then(|b| EchelonForm::from_bytes(&b).ok());
        let (k, degree, part, policy, rank) = match parsed {
            Some((h, mut e)) => {
                e.finalize();
                (Some(h.k), Some(h.degree), Some(h.part_id), Some(h.policy_id), Some(e.rank()))
            }
            None => (None, None, None, None, None),
        };
        out.push(CacheFileInfo { name, bytes, k, degree, part, policy, rank });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// Remove cached payloads, optionally restricted to one k and/or degree.
/// Returns how many files went away.
pub fn evict(dir: &Path, k: Option<usize>, degree: Option<u64>) -> Result<usize> {
    let mut removed = 0;
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(_) => return Ok(0),
    };
    for entry in entries {
        let entry = entry?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if !name.starts_with("ech_") || !name.ends_with(".bin") {
            continue;
        }
        let keep_k = k.map_or(false, |k| !name.starts_with(&format!("ech_k{k}_")));
        let keep_d = degree.map_or(false, |d| !name.contains(&format!("_d{d}_")));
        if keep_k || keep_d {
            continue;
        }
        fs::remove_file(entry.path())
            .with_context(|| format!("removing cache file {name}"))?;
        removed += 1;
    }
    Ok(removed)
}

/// Build the quotient at each degree with caching on, so later runs load
/// the echelons instead of recomputing.  Returns (degree, dimension).
pub fn warm(k: usize, degrees: &[u64], opts: &EngineOptions) -> Result<Vec<(u64, usize)>> {
    anyhow::ensure!(opts.cache_dir.is_some(), "no cache directory configured");
    let mut out = Vec::new();
    for &n in degrees {
        let q = Quotient::build(k, n, opts)?;
        out.push((n, q.dim()));
    }
    Ok(out)
}
