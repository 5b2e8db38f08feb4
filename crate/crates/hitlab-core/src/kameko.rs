//! The squaring operation between quotient degrees: on monomials the
//! halving map `phi` (defined on all-odd exponents) and the doubling map
//! `psi(a) = 2a + 1`, and on quotients the induced surjection
//! `QP_k(2d + k) -> QP_k(d)`.
//!
//! `phi` kills monomials with any even exponent, and `phi(hit)` is hit, so
//! the induced map on quotients is well defined; `phi . psi = id` makes it
//! onto.  In admissible bases the matrix is as simple as it can be: a
//! doubled basis element maps to the element it doubles, everything else
//! maps to zero.  All the actual work happens in building the bases.

use crate::arith::{t_threshold, tower_degree};
use crate::hit::{EngineOptions, Quotient};
use crate::mono::{Monomial, Polynomial};
use crate::Result;

/// Halve an all-odd monomial: `(2a + 1) -> a` in each exponent.  `None`
/// when some exponent is even.
pub fn phi(m: &Monomial) -> Option<Monomial> {
    if !m.is_all_odd() {
        return None;
    }
    Some(Monomial::new(m.exponents().iter().map(|&e| (e - 1) / 2).collect()))
}

/// Double a monomial into all-odd exponents: `a -> 2a + 1`.
pub fn psi(m: &Monomial) -> Monomial {
    Monomial::new(m.exponents().iter().map(|&e| 2 * e + 1).collect())
}

/// `phi` extended to polynomials; terms with an even exponent vanish.
pub fn phi_poly(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.k());
    for t in p.terms() {
        if let Some(h) = phi(t) {
            out.toggle(h);
        }
    }
    out
}

/// `psi` extended to polynomials (injective on monomials).
pub fn psi_poly(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.k());
    for t in p.terms() {
        out.toggle(psi(t));
    }
    out
}

/// The squaring map `QP_k(2d + k) -> QP_k(d)` in admissible coordinates.
pub struct KamekoMap {
    k: usize,
    d: u64,
    domain: Quotient,
    codomain: Quotient,
    /// Row `i`: codomain coordinates of the image of domain basis
    /// element `i`.
    rows: Vec<Vec<u32>>,
    rank: usize,
}

impl KamekoMap {
    pub fn build(k: usize, d: u64, opts: &EngineOptions) -> Result<KamekoMap> {
        let domain = Quotient::build(k, 2 * d + k as u64, opts)?;
        let codomain = Quotient::build(k, d, opts)?;
        let mut rows = Vec::with_capacity(domain.dim());
        let mut rank_form = crate::gf2::EchelonForm::new(codomain.dim());
        let mut rank = 0;
        for a in domain.basis() {
            let image = match phi(a) {
                Some(h) => codomain.coords(&Polynomial::from_monomial(h))?,
                None => Vec::new(),
            };
            if rank_form.absorb_support(&image) {
                rank += 1;
            }
            rows.push(image);
        }
        Ok(KamekoMap { k, d, domain, codomain, rows, rank })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn source_degree(&self) -> u64 {
        2 * self.d + self.k as u64
    }

    pub fn domain(&self) -> &Quotient {
        &self.domain
    }

    pub fn codomain(&self) -> &Quotient {
        &self.codomain
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.codomain.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.domain.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain.dim() - self.rank
    }

    /// Apply the map to a class given in the source degree.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let nf = self.domain.normal_form(p)?;
        self.codomain.normal_form(&phi_poly(&nf))
    }
}

/// One step of the doubling tower: the squaring map from tower degree
/// `s + 1` down to tower degree `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    pub s: u32,
    pub degree_from: u64,
    pub degree_to: u64,
    pub dim_from: usize,
    pub dim_to: usize,
    /// The squaring map is always onto, so this is just `dim_from == dim_to`.
    pub bijective: bool,
}

/// Where the doubling tower over `(k, d)` settles, computed from actual
/// quotient dimensions.
#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub k: usize,
    pub d: u64,
    pub steps: Vec<TowerStep>,
    /// Least `t` such that every checked step at `s >= t` is bijective.
    pub settles_at: u32,
    /// The closed-form prediction `t(k, d)` for comparison.
    pub predicted: u32,
}

impl StabilizationReport {
    pub fn settles_as_predicted(&self) -> bool {
        self.settles_at == self.predicted
    }
}

/// Walk the doubling tower `n_s = k(2^s - 1) + 2^s d` up to `s_max` and
/// record which squaring steps are bijective.  High tower degrees stay
/// affordable because the minimal spike's weight there floors away almost
/// every column.
pub fn check_stabilization(
    k: usize,
    d: u64,
    s_max: u32,
    opts: &EngineOptions,
) -> Result<StabilizationReport> {
    assert!(s_max >= 1, "need at least one step");
    let dims: Vec<usize> = (0..=s_max)
        .map(|s| Ok(Quotient::build(k, tower_degree(k as u32, d, s), opts)?.dim()))
        .collect::<Result<_>>()?;
    let steps: Vec<TowerStep> = (0..s_max)
        .map(|s| TowerStep {
            s,
            degree_from: tower_degree(k as u32, d, s + 1),
            degree_to: tower_degree(k as u32, d, s),
            dim_from: dims[s as usize + 1],
            dim_to: dims[s as usize],
            bijective: dims[s as usize + 1] == dims[s as usize],
        })
        .collect();
    let trailing_bijective = steps.iter().rev().take_while(|st| st.bijective).count();
    let settles_at = s_max - trailing_bijective as u32;
    Ok(StabilizationReport {
        k,
        d,
        steps,
        settles_at,
        predicted: t_threshold(k as u32, d),
    })
}
