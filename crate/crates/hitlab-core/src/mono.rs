//! Monomials of the polynomial algebra `P_k = F2[x_1, ..., x_k]`, their
//! weight vectors, and the linear order used to pick canonical bases.
//!
//! A monomial `x = x_1^{a_1} ... x_k^{a_k}` is stored as its exponent tuple.
//! Its weight vector `omega(x)` records, for each dyadic bit level `i`, how
//! many exponents have bit `i-1` set.  The strict order used throughout the
//! crate compares weight vectors left-lexicographically first (padding the
//! shorter one with zeros) and falls back to the plain left-lex order on the
//! exponent tuples.  It is only defined between monomials of the same degree
//! in the same number of variables.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A monomial in `k` variables, `k = exps.len()`.
///
/// `Ord`/`PartialOrd` are derived, i.e. plain lexicographic order on the
/// exponent tuple.  That order is used for *storage* (deterministic sets,
/// hash-free maps); the mathematically meaningful order is [`compare`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({})", self)
    }
}

/// Which block of the variable-support decomposition a monomial lies in.
///
/// `Zero` means at least one exponent vanishes, `Positive` means all
/// exponents are at least 1.  `QP_k` splits as the direct sum of the two
/// corresponding subquotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    All,
    Zero,
    Positive,
}

impl Part {
    pub fn admits(self, m: &Monomial) -> bool {
        match self {
            Part::All => true,
            Part::Zero => !m.is_positive(),
            Part::Positive => m.is_positive(),
        }
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        Monomial { exps: vec![0; k] }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn k(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// True when every exponent is nonzero.
    pub fn is_positive(&self) -> bool {
        self.exps.iter().all(|&e| e > 0)
    }

    /// True when every exponent is odd (bit 0 set).  These are exactly the
    /// monomials in the image of the doubling map `a_j -> 2 a_j + 1`.
    pub fn is_all_odd(&self) -> bool {
        self.exps.iter().all(|&e| e & 1 == 1)
    }

    /// True when every exponent has the form `2^t - 1` (zero allowed).
    pub fn is_spike(&self) -> bool {
        self.exps.iter().all(|&e| e & (e + 1) == 0)
    }

    pub fn weight_vector(&self) -> WeightVector {
        let mut entries = Vec::new();
        for (i, entry) in WeightLevels::of(&self.exps).enumerate() {
            if entry > 0 {
                entries.resize(i + 1, 0);
                entries[i] = entry;
            }
        }
        WeightVector { entries }
    }

    /// The `i`-th weight entry (1-based level, i.e. bit `i-1`), without
    /// materializing the whole vector.
    pub fn weight_entry(&self, i: usize) -> u32 {
        assert!(i >= 1);
        self.exps.iter().filter(|&&e| e >> (i - 1) & 1 == 1).count() as u32
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.k(), other.k(), "monomial product across different algebras");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self^(2^s)`.
    pub fn pow2(&self, s: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e << s).collect(),
        }
    }

    /// The sets `J_t = { j : bit t of a_j is zero }`, for `t` up to the top
    /// bit used by any exponent.  Together with [`x_complement`] they give
    /// the dyadic factorization of the monomial; see the tests.
    pub fn dyadic_slices(&self) -> Vec<Vec<usize>> {
        let top = self.exps.iter().map(|e| 32 - e.leading_zeros()).max().unwrap_or(0);
        (0..top)
            .map(|t| {
                (1..=self.k())
                    .filter(|&j| self.exps[j - 1] >> t & 1 == 0)
                    .collect()
            })
            .collect()
    }

    /// Parse either the product form `x1^3 x2 x4^7` or the tuple form
    /// `(3, 1, 0, 7)`.  The product form needs `k` to know how many trailing
    /// variables are absent.
    pub fn parse(text: &str, k: usize) -> Result<Monomial> {
        let trimmed = text.trim();
        if trimmed.starts_with('(') {
            return Self::parse_tuple(trimmed).and_then(|m| {
                if m.k() == k {
                    Ok(m)
                } else {
                    Err(Error::MixedVariableCount(m.k(), k))
                }
            });
        }
        let err = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let mut exps = vec![0u32; k];
        if trimmed == "1" {
            return Ok(Monomial { exps });
        }
        for factor in trimmed.split_whitespace() {
            let rest = factor.strip_prefix('x').ok_or_else(|| err("factor must start with 'x'"))?;
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                None => (rest, 1),
            };
            let var: usize = var.parse().map_err(|_| err("bad variable index"))?;
            if var < 1 || var > k {
                return Err(Error::VariableOutOfRange { index: var, k });
            }
            if exps[var - 1] != 0 {
                return Err(err("variable repeated"));
            }
            if exp == 0 {
                return Err(err("explicit zero exponent"));
            }
            exps[var - 1] = exp;
        }
        Ok(Monomial { exps })
    }

    /// Parse the tuple form `(a1, ..., ak)`; `k` is inferred from the arity.
    pub fn parse_tuple(text: &str) -> Result<Monomial> {
        let err = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("tuple form must be wrapped in parentheses"))?;
        let exps = inner
            .split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| err("bad tuple entry")))
            .collect::<Result<Vec<_>>>()?;
        if exps.is_empty() {
            return Err(err("empty tuple"));
        }
        Ok(Monomial { exps })
    }

    pub fn tuple_text(&self) -> String {
        let body: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("({})", body.join(","))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", j + 1)?;
            } else {
                write!(f, "x{}^{}", j + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Iterator over weight entries (level 1, 2, ...) including trailing zeros,
/// stopping once every exponent is exhausted.
struct WeightLevels<'a> {
    exps: &'a [u32],
    shift: u32,
}

impl<'a> WeightLevels<'a> {
    fn of(exps: &'a [u32]) -> Self {
        WeightLevels { exps, shift: 0 }
    }
}

impl Iterator for WeightLevels<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.exps.iter().all(|&e| e >> self.shift == 0) {
            return None;
        }
        let count = self.exps.iter().filter(|&&e| e >> self.shift & 1 == 1).count() as u32;
        self.shift += 1;
        Some(count)
    }
}

/// Weight vector of a monomial: entry `i` counts the exponents with dyadic
/// bit `i-1` set.  Trailing zeros are trimmed, so the constant monomial has
/// the empty weight vector.  Comparison is left-lex with zero padding on the
/// right, which for trimmed vectors coincides with the derived `Ord`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    /// Build from explicit entries, trimming trailing zeros.
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeightVector { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The degree of any monomial with this weight vector:
    /// `sum_i 2^(i-1) * omega_i`.
    pub fn degree(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &w)| (w as u64) << i)
            .sum()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Entries all in `0..=k` (so the vector can occur in `P_k`).
    pub fn is_realizable(&self, k: usize) -> bool {
        self.entries.iter().all(|&w| w as usize <= k)
    }

    /// The spike realizing a weakly decreasing weight vector: variable `j`
    /// receives bit `i-1` exactly when `omega_i >= j`, which yields exponents
    /// of the form `2^t - 1`.
    pub fn spike(&self, k: usize) -> Result<Monomial> {
        if !(self.is_weakly_decreasing() && self.is_realizable(k)) {
            return Err(Error::UnrealizableWeight(self.entries.clone()));
        }
        let mut exps = vec![0u32; k];
        for (i, &w) in self.entries.iter().enumerate() {
            for e in exps.iter_mut().take(w as usize) {
                *e |= 1 << i;
            }
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.entries.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightVector{}", self)
    }
}

/// The strict order on same-degree monomials: weight vectors first
/// (left-lex), exponent tuples second (left-lex).  Returns an error when the
/// two monomials do not live in the same homogeneous component of the same
/// algebra, since the order is meaningless there.
pub fn compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.k() != b.k() {
        return Err(Error::MixedVariableCount(a.k(), b.k()));
    }
    if a.degree() != b.degree() {
        return Err(Error::MixedDegree(a.degree(), b.degree()));
    }
    // Trimmed weight vectors compare identically under zero-padded left-lex
    // and under plain Vec lex: the first extra entry past a common prefix is
    // compared against 0 either way, and a trimmed vector never ends in 0.
    Ok(a.weight_vector()
        .entries
        .cmp(&b.weight_vector().entries)
        .then_with(|| a.exps.cmp(&b.exps)))
}

/// Sort key realizing [`compare`] for bulk sorting: compute once per
/// monomial instead of once per comparison.
pub(crate) fn order_key(m: &Monomial) -> (Vec<u32>, Vec<u32>) {
    (m.weight_vector().entries, m.exps.clone())
}

/// Sort ascending in the canonical order (largest last).
pub fn sort_ascending(mons: &mut Vec<Monomial>) {
    let mut keyed: Vec<((Vec<u32>, Vec<u32>), Monomial)> =
        mons.drain(..).map(|m| (order_key(&m), m)).collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    mons.extend(keyed.into_iter().map(|(_, m)| m));
}

/// Sort descending in the canonical order (largest first).  This is the
/// column order used by the elimination code.
pub fn sort_descending(mons: &mut Vec<Monomial>) {
    let mut keyed: Vec<((Vec<u32>, Vec<u32>), Monomial)> =
        mons.drain(..).map(|m| (order_key(&m), m)).collect();
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    mons.extend(keyed.into_iter().map(|(_, m)| m));
}

/// All monomials of degree `n` in `k` variables, descending in the canonical
/// order.  There are `C(n + k - 1, k - 1)` of them.
pub fn monomials(k: usize, n: u64) -> Vec<Monomial> {
    monomials_in_part(k, n, Part::All)
}

/// Same as [`monomials`] but keeping only one support block.
pub fn monomials_in_part(k: usize, n: u64, part: Part) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; k];
    compositions(&mut exps, 0, n, &mut |e| {
        let m = Monomial { exps: e.to_vec() };
        if part.admits(&m) {
            out.push(m);
        }
    });
    sort_descending(&mut out);
    out
}

fn compositions(exps: &mut [u32], pos: usize, rest: u64, emit: &mut impl FnMut(&[u32])) {
    if pos + 1 == exps.len() {
        exps[pos] = rest as u32;
        emit(exps);
        return;
    }
    for e in 0..=rest {
        exps[pos] = e as u32;
        compositions(exps, pos + 1, rest - e, emit);
    }
}

/// All monomials in `k` variables with weight vector exactly `w`,
/// descending.  Each bit level independently chooses which `omega_i`
/// variables carry that bit, so the count is a product of binomials.
pub fn monomials_of_weight(k: usize, w: &WeightVector) -> Vec<Monomial> {
    if !w.is_realizable(k) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; k];
    fill_levels(k, &w.entries, 0, &mut exps, &mut out);
    sort_descending(&mut out);
    out
}

fn fill_levels(k: usize, entries: &[u32], level: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if level == entries.len() {
        out.push(Monomial { exps: exps.clone() });
        return;
    }
    let need = entries[level] as usize;
    // Iterate over all k-bit masks with `need` bits set.
    let mut mask: u64 = if need == 0 { 0 } else { (1 << need) - 1 };
    loop {
        for (j, e) in exps.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *e |= 1 << level;
            }
        }
        fill_levels(k, entries, level + 1, exps, out);
        for (j, e) in exps.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *e &= !(1u32 << level);
            }
        }
        if need == 0 {
            break;
        }
        // Gosper's hack: next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
        if mask >= 1 << k {
            break;
        }
    }
}

/// `X_J = prod_{j not in J} x_j` for `J` a set of 1-based variable indices.
pub fn x_complement(j_set: &[usize], k: usize) -> Monomial {
    let mut exps = vec![1u32; k];
    for &j in j_set {
        assert!((1..=k).contains(&j), "variable index out of range");
        exps[j - 1] = 0;
    }
    Monomial { exps }
}

/// The algebra embedding `P_{k-1} -> P_k` that renames variables to skip
/// slot `i` (1-based): the new variable `x_i` does not occur in the image.
pub fn f_embed(i: usize, m: &Monomial) -> Monomial {
    let k = m.k() + 1;
    assert!((1..=k).contains(&i), "insertion slot out of range");
    let mut exps = Vec::with_capacity(k);
    exps.extend_from_slice(&m.exps[..i - 1]);
    exps.push(0);
    exps.extend_from_slice(&m.exps[i - 1..]);
    Monomial { exps }
}

/// The substitution `P_k -> P_{k-1}` sending `x_i` to `x_{j-1}` and closing
/// the gap: variables below `i` keep their name, variables above shift down
/// by one.  Requires `1 <= i < j <= k`.
pub fn p_contract(i: usize, j: usize, m: &Monomial) -> Monomial {
    let k = m.k();
    assert!(1 <= i && i < j && j <= k, "need 1 <= i < j <= k");
    let mut exps = Vec::with_capacity(k - 1);
    for (u, &e) in m.exps.iter().enumerate() {
        let u = u + 1;
        if u == i {
            continue;
        }
        exps.push(e);
    }
    // After deleting slot i the old variable x_j sits at position j-1
    // (1-based), which is exactly where x_i's exponent must land.
    exps[j - 2] += m.exps[i - 1];
    Monomial { exps }
}

/// An F2 linear combination of monomials in a fixed number of variables.
/// Addition is symmetric difference of term sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    k: usize,
    terms: std::collections::BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial {
            k,
            terms: Default::default(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let k = m.k();
        let mut terms = std::collections::BTreeSet::new();
        terms.insert(m);
        Polynomial { k, terms }
    }

    pub fn from_monomials(k: usize, mons: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Polynomial::zero(k);
        for m in mons {
            p.toggle(m);
        }
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order (lex on exponent tuples).
    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Add a single monomial mod 2.
    pub fn toggle(&mut self, m: Monomial) {
        assert_eq!(m.k(), self.k, "term from a different algebra");
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        assert_eq!(self.k, other.k, "sum across different algebras");
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.k, other.k, "product across different algebras");
        let mut out = Polynomial::zero(self.k);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    /// The common degree of all terms; `None` for the zero polynomial,
    /// an error if terms of different degrees are present.
    pub fn homogeneous_degree(&self) -> Result<Option<u64>> {
        let mut deg = None;
        for m in &self.terms {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::Inhomogeneous(d, m.degree())),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn map_terms(&self, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        let mut out: Option<Polynomial> = None;
        for m in &self.terms {
            let image = f(m);
            let out = out.get_or_insert_with(|| Polynomial::zero(image.k()));
            out.toggle(image);
        }
        out.unwrap_or_else(|| Polynomial::zero(self.k))
    }

    /// Parse a `+`-separated sum of monomials in product or tuple form.
    pub fn parse(text: &str, k: usize) -> Result<Polynomial> {
        let trimmed = text.trim();
        let mut p = Polynomial::zero(k);
        if trimmed == "0" {
            return Ok(p);
        }
        for part in trimmed.split('+') {
            p.toggle(Monomial::parse(part, k)?);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    /// Terms print in ascending canonical order (degree first, then the
    /// monomial order within a degree), so equal polynomials always print
    /// identically.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<&Monomial> = self.terms.iter().collect();
        sorted.sort_by_cached_key(|m| (m.degree(), order_key(m)));
        let body: Vec<String> = sorted.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", body.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn weight_vector_basics() {
        assert_eq!(m(&[1, 2, 4]).weight_vector().entries(), &[1, 1, 1]);
        assert_eq!(m(&[1, 3, 3]).weight_vector().entries(), &[3, 2]);
        assert_eq!(m(&[0, 0]).weight_vector().entries(), &[] as &[u32]);
        // Mid-vector zeros survive trimming.
        assert_eq!(m(&[1, 4]).weight_vector().entries(), &[1, 0, 1]);
    }

    #[test]
    fn weight_degree_matches_monomial_degree() {
        for k in 1..=4 {
            for n in 0..=9 {
                for mm in monomials(k, n) {
                    assert_eq!(mm.weight_vector().degree(), n);
                }
            }
        }
    }

    #[test]
    fn order_prefers_weight_over_exponents() {
        // Same degree 7 in three variables; the first has the smaller weight.
        let a = m(&[1, 2, 4]);
        let b = m(&[1, 3, 3]);
        assert_eq!(compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(compare(&b, &a).unwrap(), Ordering::Greater);
        assert_eq!(compare(&a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn order_rejects_mixed_inputs() {
        assert!(compare(&m(&[1]), &m(&[1, 0])).is_err());
        assert!(compare(&m(&[1, 0]), &m(&[1, 1])).is_err());
    }

    #[test]
    fn enumeration_counts_are_binomial() {
        assert_eq!(monomials(4, 15).len(), 816); // C(18,3)
        assert_eq!(monomials(3, 10).len(), 66); // C(12,2)
        assert_eq!(monomials(1, 5).len(), 1);
        assert_eq!(monomials(2, 0).len(), 1);
    }

    #[test]
    fn enumeration_is_strictly_descending() {
        let all = monomials(4, 9);
        for w in all.windows(2) {
            assert_eq!(compare(&w[0], &w[1]).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn part_filter_partitions() {
        for n in 1..=8 {
            let all = monomials(3, n);
            let zero = monomials_in_part(3, n, Part::Zero);
            let pos = monomials_in_part(3, n, Part::Positive);
            assert_eq!(all.len(), zero.len() + pos.len());
            assert!(zero.iter().all(|m| !m.is_positive()));
            assert!(pos.iter().all(|m| m.is_positive()));
        }
    }

    #[test]
    fn weight_slice_agrees_with_filter() {
        for n in 1..=9 {
            let all = monomials(4, n);
            let mut weights: Vec<WeightVector> = all.iter().map(|m| m.weight_vector()).collect();
            weights.sort();
            weights.dedup();
            let mut total = 0;
            for w in &weights {
                let slice = monomials_of_weight(4, w);
                assert!(!slice.is_empty());
                assert!(slice.iter().all(|m| &m.weight_vector() == w && m.degree() == n));
                total += slice.len();
            }
            assert_eq!(total, all.len());
        }
    }

    #[test]
    fn spike_realization_round_trips() {
        let w = WeightVector::new(vec![3, 2, 1]);
        let s = w.spike(5).unwrap();
        assert!(s.is_spike());
        assert_eq!(s.weight_vector(), w);
        assert_eq!(s.exponents(), &[7, 3, 1, 0, 0]);
        // Increasing vectors are not spike weights.
        assert!(WeightVector::new(vec![1, 2]).spike(5).is_err());
    }

    #[test]
    fn dyadic_factorization() {
        let x = m(&[5, 2, 7]);
        let slices = x.dyadic_slices();
        let mut acc = Monomial::one(3);
        for (t, j_set) in slices.iter().enumerate() {
            acc = acc.mul(&x_complement(j_set, 3).pow2(t as u32));
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn embed_and_contract() {
        let x = m(&[1, 2, 1]);
        assert_eq!(f_embed(1, &x).exponents(), &[0, 1, 2, 1]);
        assert_eq!(f_embed(3, &x).exponents(), &[1, 2, 0, 1]);
        assert_eq!(f_embed(4, &x).exponents(), &[1, 2, 1, 0]);
        // Substituting x1 -> x1 in (1,2,1): slot 1 merges into old x2.
        assert_eq!(p_contract(1, 2, &x).exponents(), &[3, 1]);
        assert_eq!(p_contract(2, 3, &x).exponents(), &[1, 3]);
    }

    #[test]
    fn text_round_trip() {
        let x = m(&[3, 0, 1, 7, 0]);
        assert_eq!(x.to_string(), "x1^3 x3 x4^7");
        assert_eq!(Monomial::parse("x1^3 x3 x4^7", 5).unwrap(), x);
        assert_eq!(Monomial::parse(&x.tuple_text(), 5).unwrap(), x);
        assert_eq!(Monomial::one(4).to_string(), "1");
        assert_eq!(Monomial::parse("1", 4).unwrap(), Monomial::one(4));
        assert!(Monomial::parse("x1 x1", 3).is_err());
        assert!(Monomial::parse("x9", 3).is_err());
        assert!(Monomial::parse("y2", 3).is_err());
    }

    #[test]
    fn polynomial_mod2_arithmetic() {
        let mut p = Polynomial::zero(2);
        p.toggle(m(&[1, 1]));
        p.toggle(m(&[2, 0]));
        p.toggle(m(&[1, 1]));
        assert_eq!(p.len(), 1);
        assert!(p.contains(&m(&[2, 0])));
        let q = Polynomial::parse("x1^2 + x2^2", 2).unwrap();
        // x1^2 cancels against p's surviving term.
        let sum = p.add(&q);
        assert_eq!(sum.len(), 1);
        assert!(sum.contains(&m(&[0, 2])));
        assert!(!sum.contains(&m(&[2, 0])));
    }

    #[test]
    fn polynomial_display_is_canonical() {
        // All three terms share the weight vector (1,1); exponent tuples
        // break the tie left-lexicographically: (0,3) < (1,2) < (3,0).
        let p = Polynomial::parse("x2^3 + x1^3 + x1 x2^2", 2).unwrap();
        assert_eq!(p.to_string(), "x2^3 + x1 x2^2 + x1^3");
    }
}
