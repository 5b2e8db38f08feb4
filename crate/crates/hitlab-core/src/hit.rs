//! The hit problem proper: for `P_k = F2[x_1..x_k]` with the Steenrod
//! algebra acting, compute the subspace of hit elements in a degree and a
//! monomial basis of the quotient `QP_k = P_k / (A+ . P_k)`.
//!
//! A monomial is *admissible* when it is not the leading term of any hit
//! element; with columns sorted descending in the canonical order, the
//! admissible monomials are exactly the non-pivot columns of the hit
//! subspace's echelon form, and they descend to a basis of the quotient.
//!
//! [`HitSpace`] runs that elimination over every monomial of the degree.
//! That is fine into the mid teens of degrees but the column count grows
//! like `C(n+k-1, k-1)`, so [`Quotient`] — the engine behind basis and
//! normal-form queries — shrinks the problem first:
//!
//! * columns split by support: the Steenrod action preserves each
//!   variable's presence, so monomials with a zero exponent and monomials
//!   with all-positive exponents eliminate independently;
//! * columns whose weight vector is smaller than the minimal spike's are
//!   hit outright and are dropped.  `Sq^u` (`u >= 1`) strictly lowers the
//!   weight of every surviving term, so these columns sit at the tail of
//!   the order and removing them never disturbs the other pivots.
//!
//! Both reductions are exact — the basis comes out identical to the
//! full-width elimination's, only cheaper.  Degree 35 over five variables
//! drops from one 82251-column elimination to a pair of smaller ones.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use crate::arith::{mu, mu_decomposition};
use crate::gf2::{EchelonForm, EchelonHeader};
use crate::mono::{
    self, monomials_in_part, sort_ascending, Monomial, Part, Polynomial, WeightVector,
};
use crate::steenrod::{sq_monomial, GeneratorPolicy};
use crate::{Error, Result};

/// Identifier of the column order (weight-major descending); part of every
/// cache key so a change in order semantics invalidates old payloads.
pub const ORDER_ID: &str = "wlex-desc-v1";

/// Knobs shared by the basis computations.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub policy: GeneratorPolicy,
    /// When set, echelon forms are reloaded from and saved to this
    /// directory.  Unreadable or mismatched payloads mean recompute.
    pub cache_dir: Option<PathBuf>,
    /// Fail instead of silently skipping an unwritable cache.
    pub strict_cache: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            policy: GeneratorPolicy::TwoPowers,
            cache_dir: None,
            strict_cache: false,
        }
    }
}

/// `C(n, r)` as an exact u64 (panics on overflow, which the degrees in
/// range here never reach).
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Number of degree-`n` monomials in `k` variables.
pub fn monomial_count(k: usize, n: u64) -> u64 {
    binomial(n + k as u64 - 1, k as u64 - 1)
}

/// The spike of degree `n` whose exponents `2^{v_i} - 1` come from the
/// minimal decomposition of `n`; it exists iff `mu(n) <= k` and is the
/// smallest spike of its degree in the canonical order.
pub fn minimal_spike(k: usize, n: u64) -> Result<Monomial> {
    let m = mu(n);
    if m as usize > k {
        return Err(Error::NoMinimalSpike { k, degree: n, mu: m });
    }
    let mut exps = vec![0u32; k];
    if n > 0 {
        for (i, v) in mu_decomposition(n)?.into_iter().enumerate() {
            exps[i] = (1u32 << v) - 1;
        }
    }
    Ok(Monomial::new(exps))
}

/// Everything of degree `n` in `k` variables is hit exactly when
/// `mu(n) > k`.
pub fn wood_vanishing(k: usize, n: u64) -> bool {
    mu(n) as usize > k
}

/// True means `m` is certainly hit: its weight vector is smaller than the
/// minimal spike's.  False is inconclusive.  Errors when the degree has no
/// minimal spike (use [`wood_vanishing`] first — everything is hit there).
pub fn singer_prefilter(m: &Monomial) -> Result<bool> {
    let spike = minimal_spike(m.k(), m.degree())?;
    Ok(m.weight_vector() < spike.weight_vector())
}

// ---------------------------------------------------------------------------
// Column bookkeeping

/// An ordered set of monomial columns (descending canonical order) with a
/// reverse index.
struct ColumnSpace {
    mons: Vec<Monomial>,
    index: HashMap<Vec<u32>, u32>,
}

impl ColumnSpace {
    fn new(mut mons: Vec<Monomial>) -> Self {
        mono::sort_descending(&mut mons);
        let index = mons
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i as u32))
            .collect();
        ColumnSpace { mons, index }
    }

    fn width(&self) -> usize {
        self.mons.len()
    }

    fn col(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m.exponents()).copied()
    }

    fn mon(&self, col: u32) -> &Monomial {
        &self.mons[col as usize]
    }
}

// ---------------------------------------------------------------------------
// Elimination driver

fn progress_enabled() -> bool {
    static ON: std::sync::OnceLock<bool> = std::sync::OnceLock::new();
    *ON.get_or_init(|| std::env::var_os("HITLAB_PROGRESS").is_some_and(|v| v != "0"))
}

/// Absorb the images `Sq^i(source)` for every generator pair of the degree
/// into an echelon over `cols`.  Image terms outside `cols` can only be
/// monomials below the weight floor; each of those is hit on its own, so
/// its entire coordinate line lies in the hit space and projecting it away
/// changes no other pivot and no residual.
fn eliminate(
    label: &str,
    k: usize,
    n: u64,
    part: Part,
    cols: &ColumnSpace,
    policy: GeneratorPolicy,
) -> EchelonForm {
    let mut ech = EchelonForm::new(cols.width());
    if cols.width() == 0 {
        return ech;
    }
    // Cap the transient residual storage per batch at a few dozen MB.
    let batch = ((48 << 20) / (4 * cols.width() + 64)).clamp(256, 4096);
    let started = Instant::now();
    let mut last_report = Instant::now();
    for i in policy.operation_degrees(n) {
        let sources = monomials_in_part(k, n - i, part);
        for chunk in sources.chunks(batch) {
            let supports: Vec<Vec<u32>> = chunk
                .par_iter()
                .map(|m| {
                    let image = sq_monomial(i, m);
                    image.terms().filter_map(|t| cols.col(t)).collect()
                })
                .collect();
            ech.absorb_batch(&supports);
            if progress_enabled() && last_report.elapsed().as_secs() >= 2 {
                eprintln!(
                    "[hitlab] {label}: i={i} rank={} / width={} ({:.0?})",
                    ech.rank(),
                    cols.width(),
                    started.elapsed()
                );
                last_report = Instant::now();
            }
        }
    }
    ech
}

fn cached_echelon(
    opts: &EngineOptions,
    header: &EchelonHeader,
    compute: impl FnOnce() -> EchelonForm,
) -> Result<EchelonForm> {
    let Some(dir) = &opts.cache_dir else {
        return Ok(compute());
    };
    let path = dir.join(cache_file_name(header));
    if let Ok(bytes) = fs::read(&path) {
        if let Ok((found, ech)) = EchelonForm::from_bytes(&bytes) {
            if &found == header {
                return Ok(ech);
            }
        }
        // Corrupt, truncated, or keyed differently: recompute below.
    }
    let mut ech = compute();
    let bytes = ech.to_bytes(header);
    // One writer at a time (advisory lock), and publish by rename so a
    // concurrent reader sees either nothing or a complete payload.
    let write = (|| {
        fs::create_dir_all(dir)?;
        let lock = fs::OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(dir.join(".writer.lock"))?;
        lock.lock()?;
        let tmp = path.with_extension(format!("bin.tmp{}", std::process::id()));
        fs::write(&tmp, &bytes)?;
        fs::rename(&tmp, &path)
    })();
    if let (Err(e), true) = (write, opts.strict_cache) {
        return Err(e.into());
    }
    Ok(ech)
}

/// File name for a cached echelon; every key field lands in the name so
/// distinct keys never collide, and the header inside is still checked.
pub fn cache_file_name(h: &EchelonHeader) -> String {
    let mut name = format!("ech_k{}_d{}_{}", h.k, h.degree, h.part_id);
    match &h.weight_floor {
        None => name.push_str("_fnone"),
        Some(w) => {
            name.push_str("_f");
            for e in w {
                let _ = write!(name, "{e}-");
            }
            name.pop();
        }
    }
    let _ = write!(name, "_{}_{}.bin", h.policy_id, h.order_id);
    name
}

fn header_for(
    k: usize,
    n: u64,
    part: Part,
    floor: Option<&WeightVector>,
    policy: GeneratorPolicy,
) -> EchelonHeader {
    EchelonHeader {
        k: k as u32,
        degree: n,
        order_id: ORDER_ID.to_string(),
        policy_id: policy.id().to_string(),
        part_id: match part {
            Part::All => "all",
            Part::Zero => "zero",
            Part::Positive => "pos",
        }
        .to_string(),
        weight_floor: floor.map(|w| w.entries().to_vec()),
    }
}

// ---------------------------------------------------------------------------
// Full-width hit space

/// The hit subspace `(A+ . P_k)_n` over every monomial column of the
/// degree.  Simple and exact, with cost growing with `C(n+k-1, k-1)`;
/// prefer [`Quotient`] for basis work in large degrees.
pub struct HitSpace {
    k: usize,
    degree: u64,
    cols: ColumnSpace,
    ech: EchelonForm,
}

/// Build the full hit space of `(k, n)`.
pub fn hit_space(k: usize, n: u64, opts: &EngineOptions) -> Result<HitSpace> {
    assert!(k >= 1, "need at least one variable");
    let cols = ColumnSpace::new(monomials_in_part(k, n, Part::All));
    let header = header_for(k, n, Part::All, None, opts.policy);
    let ech = cached_echelon(opts, &header, || {
        eliminate("hit-space", k, n, Part::All, &cols, opts.policy)
    })?;
    if ech.width() != cols.width() {
        return Err(Error::Cache("cached width disagrees with column count".into()));
    }
    Ok(HitSpace { k, degree: n, cols, ech })
}

impl HitSpace {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Dimension of the hit subspace in this degree.
    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Number of monomial columns.
    pub fn width(&self) -> usize {
        self.cols.width()
    }

    /// Admissible monomials (non-pivot columns), ascending.
    pub fn admissible(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .ech
            .non_pivot_columns()
            .into_iter()
            .map(|c| self.cols.mon(c).clone())
            .collect();
        sort_ascending(&mut out);
        out
    }

    fn support_of(&self, p: &Polynomial) -> Result<Vec<u32>> {
        if !p.is_zero() && p.k() != self.k {
            return Err(Error::MixedVariableCount(p.k(), self.k));
        }
        match p.homogeneous_degree()? {
            None => Ok(Vec::new()),
            Some(d) if d != self.degree => Err(Error::MixedDegree(d, self.degree)),
            Some(_) => Ok(p
                .terms()
                .map(|t| self.cols.col(t).expect("degree-n monomial is a column"))
                .collect()),
        }
    }

    /// Is the (homogeneous, degree-`n`) polynomial a sum of Steenrod images?
    pub fn is_hit(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.ech.reduce_support(&self.support_of(p)?).is_empty())
    }

    /// Canonical representative of `p` modulo hit elements: the unique
    /// equivalent sum of admissible monomials.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let residual = self.ech.reduce_support(&self.support_of(p)?);
        Ok(Polynomial::from_monomials(
            self.k,
            residual.into_iter().map(|c| self.cols.mon(c).clone()),
        ))
    }
}

// ---------------------------------------------------------------------------
// The reduced engine

/// `QP_k` in one degree: admissible basis plus normal-form machinery,
/// built from the part-split, weight-floored eliminations described in
/// the module docs.
pub struct Quotient {
    k: usize,
    degree: u64,
    floor: Option<WeightVector>,
    z_cols: ColumnSpace,
    p_cols: ColumnSpace,
    z_ech: EchelonForm,
    p_ech: EchelonForm,
    basis: Vec<Monomial>,
    basis_index: HashMap<Vec<u32>, u32>,
}

impl Quotient {
    pub fn build(k: usize, n: u64, opts: &EngineOptions) -> Result<Quotient> {
        assert!(k >= 1, "need at least one variable");
        let floor = if mu(n) as usize <= k && n > 0 {
            Some(minimal_spike(k, n)?.weight_vector())
        } else {
            None
        };
        let keep = |m: &Monomial| floor.as_ref().map_or(true, |f| &m.weight_vector() >= f);

        let z_cols = ColumnSpace::new(
            monomials_in_part(k, n, Part::Zero).into_iter().filter(keep).collect(),
        );
        let p_cols = ColumnSpace::new(
            monomials_in_part(k, n, Part::Positive).into_iter().filter(keep).collect(),
        );

        let z_header = header_for(k, n, Part::Zero, floor.as_ref(), opts.policy);
        let z_ech = cached_echelon(opts, &z_header, || {
            eliminate("zero-part", k, n, Part::Zero, &z_cols, opts.policy)
        })?;
        let p_header = header_for(k, n, Part::Positive, floor.as_ref(), opts.policy);
        let p_ech = cached_echelon(opts, &p_header, || {
            eliminate("positive-part", k, n, Part::Positive, &p_cols, opts.policy)
        })?;
        if z_ech.width() != z_cols.width() || p_ech.width() != p_cols.width() {
            return Err(Error::Cache("cached width disagrees with column count".into()));
        }

        let mut basis: Vec<Monomial> = z_ech
            .non_pivot_columns()
            .into_iter()
            .map(|c| z_cols.mon(c).clone())
            .chain(p_ech.non_pivot_columns().into_iter().map(|c| p_cols.mon(c).clone()))
            .collect();
        sort_ascending(&mut basis);
        let basis_index = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i as u32))
            .collect();

        Ok(Quotient {
            k,
            degree: n,
            floor,
            z_cols,
            p_cols,
            z_ech,
            p_ech,
            basis,
            basis_index,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// The weight floor below which columns were discarded as hit, if one
    /// applied.
    pub fn weight_floor(&self) -> Option<&WeightVector> {
        self.floor.as_ref()
    }

    /// Admissible monomials of the degree, ascending in the canonical
    /// order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Position of an admissible monomial in [`basis`](Self::basis).
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.basis_index.get(m.exponents()).map(|&i| i as usize)
    }

    pub fn basis_in_part(&self, part: Part) -> Vec<Monomial> {
        self.basis.iter().filter(|m| part.admits(m)).cloned().collect()
    }

    /// Basis members of one weight stratum, ascending.  The count is the
    /// dimension of the weight-graded quotient for that vector.
    pub fn basis_of_weight(&self, w: &WeightVector) -> Vec<Monomial> {
        self.basis.iter().filter(|m| &m.weight_vector() == w).cloned().collect()
    }

    /// Stratum dimensions keyed by weight vector, ascending.
    pub fn dims_by_weight(&self) -> Vec<(WeightVector, usize)> {
        let mut map: std::collections::BTreeMap<WeightVector, usize> = Default::default();
        for m in &self.basis {
            *map.entry(m.weight_vector()).or_default() += 1;
        }
        map.into_iter().collect()
    }

    /// Total number of monomials in the degree (not just retained columns).
    pub fn monomial_count(&self) -> u64 {
        monomial_count(self.k, self.degree)
    }

    /// Dimension of the hit subspace: column count minus quotient
    /// dimension.
    pub fn hit_rank(&self) -> u64 {
        self.monomial_count() - self.dim() as u64
    }

    /// The unique admissible-monomial representative of `p` modulo hit
    /// elements.  Input must be homogeneous of this degree (zero is fine).
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !p.is_zero() && p.k() != self.k {
            return Err(Error::MixedVariableCount(p.k(), self.k));
        }
        match p.homogeneous_degree()? {
            None => return Ok(Polynomial::zero(self.k)),
            Some(d) if d != self.degree => return Err(Error::MixedDegree(d, self.degree)),
            Some(_) => {}
        }
        let mut z_sup = Vec::new();
        let mut p_sup = Vec::new();
        for t in p.terms() {
            if let Some(c) = self.z_cols.col(t) {
                z_sup.push(c);
            } else if let Some(c) = self.p_cols.col(t) {
                p_sup.push(c);
            }
            // else: below the weight floor, hence hit; contributes nothing.
        }
        let mut out = Polynomial::zero(self.k);
        for c in self.z_ech.reduce_support(&z_sup) {
            out.toggle(self.z_cols.mon(c).clone());
        }
        for c in self.p_ech.reduce_support(&p_sup) {
            out.toggle(self.p_cols.mon(c).clone());
        }
        Ok(out)
    }

    pub fn is_hit(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Indices (ascending) of the basis monomials appearing in the normal
    /// form of `p`: coordinates of `[p]` in the admissible basis.
    pub fn coords(&self, p: &Polynomial) -> Result<Vec<u32>> {
        let nf = self.normal_form(p)?;
        let mut out: Vec<u32> = nf
            .terms()
            .map(|t| self.basis_index.get(t.exponents()).copied().expect("normal form is admissible"))
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Admissible monomials of the degree, ascending.
pub fn admissible_basis(k: usize, n: u64, opts: &EngineOptions) -> Result<Vec<Monomial>> {
    Ok(Quotient::build(k, n, opts)?.basis().to_vec())
}

/// Admissible monomials with the given weight vector, ascending.
pub fn admissible_basis_weighted(
    k: usize,
    w: &WeightVector,
    opts: &EngineOptions,
) -> Result<Vec<Monomial>> {
    let q = Quotient::build(k, w.degree(), opts)?;
    Ok(q.basis_of_weight(w))
}

// ---------------------------------------------------------------------------
// Strict inadmissibility

/// Outcome of the strict-inadmissibility test for one monomial: whether it
/// is a sum of strictly smaller monomials plus images of `Sq^u` for
/// `1 <= u < 2^s`, with `s` the top nonzero level of its weight vector.
/// A true verdict implies the monomial is inadmissible, and so is any
/// `m * y^(2^s)` built on top of it; see [`closure_product`].
#[derive(Clone, Debug)]
pub struct StrictInadmissibility {
    pub monomial: Monomial,
    /// `max{i : w_i(m) > 0}`, the level bounding the operations used.
    pub s: u32,
    pub verdict: bool,
}

/// Run the strict-inadmissibility membership test.
pub fn strict_inadmissibility(m: &Monomial) -> StrictInadmissibility {
    let w = m.weight_vector();
    if w.is_empty() {
        // The constant monomial: nothing is smaller, nothing hits it.
        return StrictInadmissibility { monomial: m.clone(), s: 0, verdict: false };
    }
    let s = w.entries().len() as u32;
    let k = m.k();
    let n = m.degree();
    let cols = ColumnSpace::new(monomials_in_part(k, n, Part::All));
    let target = cols.col(m).expect("column of m");
    let mut ech = EchelonForm::new(cols.width());
    for u in 1..(1u64 << s) {
        if u > n {
            break;
        }
        for src in monomials_in_part(k, n - u, Part::All) {
            let support: Vec<u32> = sq_monomial(u, &src)
                .terms()
                .map(|t| cols.col(t).expect("image stays in degree"))
                .collect();
            ech.absorb_support(&support);
        }
    }
    // Strictly smaller monomials sit at strictly larger column indices.
    for c in target + 1..cols.width() as u32 {
        ech.absorb_support(&[c]);
    }
    let verdict = ech.reduce_support(&[target]).is_empty();
    StrictInadmissibility { monomial: m.clone(), s, verdict }
}

/// Convenience wrapper around [`strict_inadmissibility`].
pub fn is_strictly_inadmissible(m: &Monomial) -> bool {
    strict_inadmissibility(m).verdict
}

/// `w * y^(2^s)` with `s` the top nonzero weight level of `w`: the
/// composite along which strict inadmissibility propagates to higher
/// degrees.
pub fn closure_product(w: &Monomial, y: &Monomial) -> Monomial {
    let s = w.weight_vector().entries().len() as u32;
    w.mul(&y.pow2(s))
}
