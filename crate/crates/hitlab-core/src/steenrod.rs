//! Steenrod squares on `P_k`, computed with the Cartan formula one variable
//! at a time.
//!
//! On a single variable `Sq^j(x^e) = C(e, j) x^{e+j}`, and `C(e, j)` is odd
//! exactly when the bits of `j` are contained in the bits of `e` (Lucas).
//! A square of a monomial therefore distributes the total operation degree
//! `i` over the variables, each share being a dyadic submask of the
//! corresponding exponent.

use crate::mono::{monomials, Monomial, Part, Polynomial};

/// `C(e, j) mod 2`: odd exactly when `j`'s bits sit inside `e`'s bits.
#[inline]
pub fn binomial_is_odd(e: u64, j: u64) -> bool {
    j & !e == 0
}

/// `Sq^i` applied to a single monomial.
pub fn sq_monomial(i: u64, m: &Monomial) -> Polynomial {
    let k = m.k();
    let mut out = Polynomial::zero(k);
    if i == 0 {
        out.toggle(m.clone());
        return out;
    }
    // suffix[t] = total exponent mass from variable t on; shares of i that
    // cannot be absorbed later are pruned early.
    let exps = m.exponents();
    let mut suffix = vec![0u64; k + 1];
    for t in (0..k).rev() {
        suffix[t] = suffix[t + 1] + exps[t] as u64;
    }
    let mut shares = vec![0u32; k];
    distribute(i, 0, exps, &suffix, &mut shares, &mut out);
    out
}

fn distribute(
    rest: u64,
    t: usize,
    exps: &[u32],
    suffix: &[u64],
    shares: &mut [u32],
    out: &mut Polynomial,
) {
    if rest > suffix[t] {
        return;
    }
    if t == exps.len() {
        // rest == 0 here thanks to the suffix guard.
        let term: Vec<u32> = exps.iter().zip(shares.iter()).map(|(&e, &j)| e + j).collect();
        out.toggle(Monomial::new(term));
        return;
    }
    // Submasks of the exponent are precisely the shares with odd binomial
    // coefficient; enumerate them in the usual descending manner.
    let e = exps[t] as u64;
    let mut j = e;
    loop {
        if j <= rest {
            shares[t] = j as u32;
            distribute(rest - j, t + 1, exps, suffix, shares, out);
        }
        if j == 0 {
            break;
        }
        j = (j - 1) & e;
    }
    shares[t] = 0;
}

/// `Sq^i` extended linearly.
pub fn sq(i: u64, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(p.k());
    for m in p.terms() {
        out.add_assign(&sq_monomial(i, m));
    }
    out
}

/// Which operation degrees feed the span of hit elements in a given target
/// degree.
///
/// `TwoPowers` uses only `Sq^(2^j)`, which generate the whole Steenrod
/// algebra, so their images span the same subspace as all `Sq^i` combined;
/// the row count drops dramatically.  `AllDegrees` is the defensive policy
/// kept around as an oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorPolicy {
    TwoPowers,
    AllDegrees,
}

impl GeneratorPolicy {
    /// Stable identifier baked into cache keys, so cached eliminations from
    /// one policy are never served to the other.
    pub fn id(self) -> &'static str {
        match self {
            GeneratorPolicy::TwoPowers => "sq2p",
            GeneratorPolicy::AllDegrees => "alli",
        }
    }

    /// The operation degrees to apply when targeting total degree `n`.
    pub fn operation_degrees(self, n: u64) -> Vec<u64> {
        match self {
            GeneratorPolicy::TwoPowers => {
                // Sq^(2^j) contributes to degree n only when 2^(j+1) <= n:
                // on a class of degree n - 2^j, anything above its degree
                // acts as zero.
                let mut out = Vec::new();
                let mut i = 1u64;
                while 2 * i <= n {
                    out.push(i);
                    i *= 2;
                }
                out
            }
            GeneratorPolicy::AllDegrees => (1..=n).collect(),
        }
    }
}

/// Every `(i, source)` pair whose image `Sq^i(source)` lands in degree `n`
/// within the chosen support part.  Images of positive sources stay
/// positive and images of sources with a zero exponent keep that zero, so
/// part filtering on sources is exact.
pub fn generator_sources(k: usize, n: u64, part: Part, policy: GeneratorPolicy) -> Vec<(u64, Monomial)> {
    let mut out = Vec::new();
    for i in policy.operation_degrees(n) {
        for m in monomials(k, n - i) {
            if part.admits(&m) {
                out.push((i, m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::compare;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    /// Pascal's triangle mod 2, no bit tricks: an oracle for the Lucas
    /// shortcut.
    #[test]
    fn lucas_matches_pascal() {
        let n = 96;
        let mut row = vec![false; n + 1];
        row[0] = true;
        for e in 0..=n {
            for (j, &odd) in row.iter().enumerate() {
                assert_eq!(binomial_is_odd(e as u64, j as u64), odd, "C({e},{j})");
            }
            // next row: C(e+1, j) = C(e, j) + C(e, j-1)
            for j in (1..=n).rev() {
                row[j] ^= row[j - 1];
            }
        }
    }

    #[test]
    fn sq_zero_is_identity() {
        let p = Polynomial::parse("x1^3 x2 + x2^4", 2).unwrap();
        assert_eq!(sq(0, &p), p);
    }

    #[test]
    fn single_variable_action() {
        // Sq^1(x^2) = 0, Sq^1(x^3) = x^4, Sq^2(x^3) = x^5.
        assert!(sq_monomial(1, &m(&[2])).is_zero());
        assert_eq!(sq_monomial(1, &m(&[3])), Polynomial::from_monomial(m(&[4])));
        assert_eq!(sq_monomial(2, &m(&[3])), Polynomial::from_monomial(m(&[5])));
        assert!(sq_monomial(4, &m(&[3])).is_zero());
    }

    #[test]
    fn instability_and_squaring() {
        for mm in monomials(3, 5) {
            let top = sq_monomial(5, &mm);
            assert_eq!(top, Polynomial::from_monomial(mm.pow2(1)), "Sq^deg = square");
            assert!(sq_monomial(6, &mm).is_zero(), "above degree acts as zero");
        }
    }

    #[test]
    fn total_square_on_x1_x2() {
        // Sq^1(x1 x2) = x1^2 x2 + x1 x2^2.
        let image = sq_monomial(1, &m(&[1, 1]));
        assert_eq!(image, Polynomial::parse("x1^2 x2 + x1 x2^2", 2).unwrap());
    }

    #[test]
    fn cartan_on_products_small() {
        let f = Polynomial::parse("x1 x2^2 + x3^3", 3).unwrap();
        let g = Polynomial::parse("x1^2 + x2 x3", 3).unwrap();
        for i in 0..=6u64 {
            let lhs = sq(i, &f.mul(&g));
            let mut rhs = Polynomial::zero(3);
            for a in 0..=i {
                rhs.add_assign(&sq(a, &f).mul(&sq(i - a, &g)));
            }
            assert_eq!(lhs, rhs, "Cartan at i = {i}");
        }
    }

    #[test]
    fn generator_degrees_two_powers() {
        assert_eq!(GeneratorPolicy::TwoPowers.operation_degrees(15), vec![1, 2, 4]);
        assert_eq!(GeneratorPolicy::TwoPowers.operation_degrees(16), vec![1, 2, 4, 8]);
        assert_eq!(GeneratorPolicy::TwoPowers.operation_degrees(1), Vec::<u64>::new());
    }

    #[test]
    fn sources_respect_parts() {
        let pos = generator_sources(3, 8, Part::Positive, GeneratorPolicy::TwoPowers);
        assert!(pos.iter().all(|(_, m)| m.is_positive()));
        let zero = generator_sources(3, 8, Part::Zero, GeneratorPolicy::TwoPowers);
        assert!(zero.iter().all(|(_, m)| !m.is_positive()));
        let all = generator_sources(3, 8, Part::All, GeneratorPolicy::TwoPowers);
        assert_eq!(all.len(), pos.len() + zero.len());
        // Images stay inside the source's part.
        for (i, src) in &all {
            for t in sq_monomial(*i, src).terms() {
                assert_eq!(t.is_positive(), src.is_positive(), "Sq^{i}({src})");
                assert_eq!(t.degree(), 8);
            }
        }
    }

    #[test]
    fn images_are_sorted_consistently() {
        // Display order of an image is deterministic; spot check one value.
        let image = sq_monomial(2, &m(&[2, 3]));
        let mut terms: Vec<&Monomial> = image.terms().collect();
        terms.sort_by(|a, b| compare(a, b).unwrap());
        assert_eq!(image.len(), terms.len());
    }
}
