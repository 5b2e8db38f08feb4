//! The symmetric and general-linear group actions on `P_k` and the
//! invariant subspaces they cut out of the quotients.
//!
//! `Sigma_k` is generated by the adjacent swaps `x_i <-> x_{i+1}`; adding
//! the transvection `x_1 -> x_1 + x_2` generates all of `GL_k(F_2)`.  Each
//! generator is a ring endomorphism commuting with the Steenrod action, so
//! it descends to `QP_k`; and since substitution never raises a monomial's
//! weight vector, it acts on every weight stratum as well.  A class is
//! invariant when `g(f) + f` reduces to zero (into the stratum's lower
//! weights, for the stratified variant) for every generator `g`.

use rayon::prelude::*;

use crate::gf2::EchelonForm;
use crate::hit::{EngineOptions, Quotient};
use crate::kameko::{psi_poly, KamekoMap};
use crate::mono::{Monomial, Polynomial, WeightVector};
use crate::{Error, Result};

/// One generator of the acting group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Swap `x_i` and `x_{i+1}` (1-based, `1 <= i < k`).
    Swap(usize),
    /// `x_1 -> x_1 + x_2`, all other variables fixed.
    Transvection,
}

impl Generator {
    /// Image of a monomial, expanded over F2.  Swaps permute exponents;
    /// the transvection expands `(x_1+x_2)^a` by Lucas: the surviving
    /// terms are `x_1^b x_2^{a-b}` for submasks `b` of `a`.
    pub fn apply_monomial(&self, m: &Monomial) -> Polynomial {
        match *self {
            Generator::Swap(i) => {
                let mut exps = m.exponents().to_vec();
                exps.swap(i - 1, i);
                Polynomial::from_monomial(Monomial::new(exps))
            }
            Generator::Transvection => {
                let mut out = Polynomial::zero(m.k());
                let e1 = m.exponents()[0];
                let mut b = e1;
                loop {
                    let mut exps = m.exponents().to_vec();
                    exps[0] = b;
                    exps[1] += e1 - b;
                    out.toggle(Monomial::new(exps));
                    if b == 0 {
                        break;
                    }
                    b = (b - 1) & e1;
                }
                out
            }
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.k());
        for t in p.terms() {
            out.add_assign(&self.apply_monomial(t));
        }
        out
    }
}

/// The two symmetry groups whose invariants the engine computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Sigma,
    Gl,
}

impl Group {
    pub fn id(&self) -> &'static str {
        match self {
            Group::Sigma => "sigma",
            Group::Gl => "gl",
        }
    }
}

/// Generating set of the group acting on `k` variables.  Adjacent swaps
/// generate the full symmetric group; the transvection extends them to
/// `GL_k(F_2)`.  For `k = 1` both groups are trivial.
pub fn generators(k: usize, group: Group) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..k).map(Generator::Swap).collect();
    if group == Group::Gl && k >= 2 {
        gens.push(Generator::Transvection);
    }
    gens
}

/// An invariant subspace of `QP_k` in one degree (optionally one weight
/// stratum): its dimension and a basis of representatives written in
/// admissible monomials.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub k: usize,
    pub degree: u64,
    pub weight: Option<WeightVector>,
    pub group: Group,
    pub dim: usize,
    pub basis: Vec<Polynomial>,
}

/// Invariants of `QP_k` in degree `n` under `group`; with `weight` given,
/// invariants of that stratum (classes taken modulo hit elements plus all
/// lower-weight monomials).
pub fn invariants(
    k: usize,
    n: u64,
    group: Group,
    weight: Option<&WeightVector>,
    opts: &EngineOptions,
) -> Result<InvariantReport> {
    let q = Quotient::build(k, n, opts)?;
    invariants_in(&q, group, weight)
}

/// As [`invariants`], over an already-built engine.
pub fn invariants_in(
    q: &Quotient,
    group: Group,
    weight: Option<&WeightVector>,
) -> Result<InvariantReport> {
    if let Some(w) = weight {
        if w.degree() != q.degree() {
            return Err(Error::MixedDegree(w.degree(), q.degree()));
        }
    }
    // Unknowns: coordinates over the (stratum) basis.
    let view: Vec<u32> = match weight {
        None => (0..q.dim() as u32).collect(),
        Some(w) => (0..q.dim() as u32)
            .filter(|&i| &q.basis()[i as usize].weight_vector() == w)
            .collect(),
    };
    let candidates: Vec<Polynomial> = view
        .iter()
        .map(|&i| Polynomial::from_monomial(q.basis()[i as usize].clone()))
        .collect();
    let gens = generators(q.k(), group);
    let kernel = constraint_kernel(q, &gens, &candidates, weight.is_some().then_some(&view))?;
    let basis: Vec<Polynomial> = kernel
        .iter()
        .map(|sel| {
            let mut f = Polynomial::zero(q.k());
            for &j in sel {
                f.add_assign(&candidates[j as usize]);
            }
            f
        })
        .collect();
    Ok(InvariantReport {
        k: q.k(),
        degree: q.degree(),
        weight: weight.cloned(),
        group,
        dim: basis.len(),
        basis,
    })
}

/// Invariants of `QP_k(2d + k)` assembled from the doubling structure:
/// unknowns are the squaring map's kernel coordinates (the non-all-odd
/// basis elements) plus one coefficient per lifted degree-`d` invariant.
/// Any invariant's image under the squaring map is again invariant, so
/// this ansatz is complete; the result must agree with [`invariants`] run
/// directly at the top degree.
pub fn invariants_lifted(
    k: usize,
    d: u64,
    group: Group,
    opts: &EngineOptions,
) -> Result<InvariantReport> {
    let map = KamekoMap::build(k, d, opts)?;
    let q = map.domain();
    let lower = invariants_in(map.codomain(), group, None)?;
    let mut candidates: Vec<Polynomial> = q
        .basis()
        .iter()
        .filter(|m| !m.is_all_odd())
        .map(|m| Polynomial::from_monomial(m.clone()))
        .collect();
    for f in &lower.basis {
        candidates.push(psi_poly(f));
    }
    let gens = generators(k, group);
    let kernel = constraint_kernel(q, &gens, &candidates, None)?;
    let basis: Vec<Polynomial> = kernel
        .iter()
        .map(|sel| {
            let mut f = Polynomial::zero(k);
            for &j in sel {
                f.add_assign(&candidates[j as usize]);
            }
            q.normal_form(&f)
        })
        .collect::<Result<_>>()?;
    Ok(InvariantReport {
        k,
        degree: q.degree(),
        weight: None,
        group,
        dim: basis.len(),
        basis,
    })
}

/// Solve `{gamma : nf(g(f) + f) = 0 in the kept coordinates, all g}` for
/// `f = sum gamma_j candidates[j]`.  `restrict` keeps only the listed
/// global coordinates (sorted), realizing the stratified relation; `None`
/// keeps them all.  Returns kernel vectors as sorted candidate indices.
fn constraint_kernel(
    q: &Quotient,
    gens: &[Generator],
    candidates: &[Polynomial],
    restrict: Option<&Vec<u32>>,
) -> Result<Vec<Vec<u32>>> {
    let unknowns = candidates.len();
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // Column j of the constraint matrix, as stacked (generator, coord)
    // positions; computed in parallel, then transposed into rows.
    let columns: Vec<Vec<u64>> = candidates
        .par_iter()
        .map(|f| {
            let mut positions = Vec::new();
            let base_coords = q.coords(f)?;
            for (gi, g) in gens.iter().enumerate() {
                let mut coords = q.coords(&g.apply(f))?;
                symmetric_difference(&mut coords, &base_coords);
                for c in coords {
                    if let Some(pos) = position(restrict, c) {
                        positions.push(gi as u64 * q.dim() as u64 + pos as u64);
                    }
                }
            }
            Ok(positions)
        })
        .collect::<Result<_>>()?;
    let mut rows: std::collections::HashMap<u64, Vec<u32>> = Default::default();
    for (j, col) in columns.iter().enumerate() {
        for &r in col {
            rows.entry(r).or_default().push(j as u32);
        }
    }
    let mut ech = EchelonForm::new(unknowns);
    for support in rows.values() {
        ech.absorb_support(support);
    }
    Ok(ech.kernel_basis().iter().map(|v| v.support()).collect())
}

/// Position of coordinate `c` within the kept set, or `None` if dropped.
fn position(restrict: Option<&Vec<u32>>, c: u32) -> Option<u32> {
    match restrict {
        None => Some(c),
        Some(view) => view.binary_search(&c).ok().map(|p| p as u32),
    }
}

fn symmetric_difference(a: &mut Vec<u32>, b: &[u32]) {
    for &x in b {
        match a.binary_search(&x) {
            Ok(i) => {
                a.remove(i);
            }
            Err(i) => a.insert(i, x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str, k: usize) -> Polynomial {
        Polynomial::parse(text, k).unwrap()
    }

    #[test]
    fn generator_images() {
        let g = Generator::Swap(1);
        assert_eq!(g.apply(&poly("x1 x2^3", 2)), poly("x1^3 x2", 2));
        let t = Generator::Transvection;
        assert_eq!(t.apply(&poly("x1^2", 2)), poly("x1^2 + x2^2", 2));
        assert_eq!(t.apply(&poly("x1 x2", 2)), poly("x1 x2 + x2^2", 2));
        // (x1+x2)^3 expands fully: 3 has both bits set.
        assert_eq!(
            t.apply(&poly("x1^3", 2)),
            poly("x1^3 + x1^2 x2 + x1 x2^2 + x2^3", 2)
        );
    }

    #[test]
    fn swaps_compose_to_any_permutation() {
        // x1 -> x3 via two adjacent swaps.
        let p = poly("x1^5 x2 x3^2", 3);
        let once = Generator::Swap(1).apply(&p);
        let twice = Generator::Swap(2).apply(&once);
        assert_eq!(twice, poly("x2^2 x3^5 x1", 3));
    }

    #[test]
    fn weight_never_rises_under_the_action() {
        for m in crate::mono::monomials(3, 6) {
            let w = m.weight_vector();
            for g in generators(3, Group::Gl) {
                for t in g.apply_monomial(&m).terms() {
                    assert!(t.weight_vector() <= w, "{g:?} on {m}");
                }
            }
        }
    }

    #[test]
    fn two_variable_invariants() {
        let opts = EngineOptions::default();
        let gl2 = invariants(2, 2, Group::Gl, None, &opts).unwrap();
        assert_eq!(gl2.dim, 1);
        assert_eq!(gl2.basis[0], poly("x1 x2", 2));
        // Degree 3: swaps fix [x1 x2^2] and pair the spikes; the
        // transvection cuts the fixed space down to the Dickson class.
        let sigma = invariants(2, 3, Group::Sigma, None, &opts).unwrap();
        assert_eq!(sigma.dim, 2);
        let gl = invariants(2, 3, Group::Gl, None, &opts).unwrap();
        assert_eq!(gl.dim, 1);
        assert!(gl.dim <= sigma.dim);
    }

    #[test]
    fn stratified_relation_drops_lower_weights() {
        let opts = EngineOptions::default();
        let q = Quotient::build(3, 3, &opts).unwrap();
        // Swaps fix x1x2x3, and the transvection moves it only by x2^2 x3,
        // whose weight (1,1) is strictly below (3): so the class is
        // invariant in the top stratum but not globally.
        let top = WeightVector::new(vec![3]);
        let strat = invariants_in(&q, Group::Gl, Some(&top)).unwrap();
        assert_eq!(strat.dim, 1);
        assert_eq!(strat.basis[0], poly("x1 x2 x3", 3));
        let global = invariants_in(&q, Group::Gl, None).unwrap();
        assert!(global.basis.iter().all(|f| f != &poly("x1 x2 x3", 3)));
    }

    #[test]
    fn lifted_assembly_matches_direct_solve() {
        let opts = EngineOptions::default();
        for (k, d) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let lifted = invariants_lifted(k, d, Group::Gl, &opts).unwrap();
            let direct = invariants(k, 2 * d + k as u64, Group::Gl, None, &opts).unwrap();
            assert_eq!(lifted.dim, direct.dim, "k={k} d={d}");
        }
    }

    #[test]
    fn action_preserves_hit_elements() {
        let opts = EngineOptions::default();
        let q = Quotient::build(3, 6, &opts).unwrap();
        for src in crate::mono::monomials(3, 4) {
            let image = crate::steenrod::sq_monomial(2, &src);
            for g in generators(3, Group::Gl) {
                assert!(q.is_hit(&g.apply(&image)).unwrap());
            }
        }
    }
}
