//! The small number-theoretic functions that control where the hit problem
//! degenerates: binary digit sum, 2-adic valuation, the minimal-spike count
//! `mu`, and the stabilization threshold for iterated squaring.

use crate::{Error, Result};

/// Number of ones in the binary expansion of `n`.
pub fn alpha(n: u64) -> u32 {
    n.count_ones()
}

/// The 2-adic valuation: the largest `u` with `2^u | n`.  Undefined at 0.
pub fn zeta(n: u64) -> Result<u32> {
    if n == 0 {
        Err(Error::ZetaOfZero)
    } else {
        Ok(n.trailing_zeros())
    }
}

/// The least number of summands of the form `2^t - 1` (with `t >= 1`)
/// needed to write `n`; equivalently the least `u` with `alpha(n + u) <= u`.
/// `mu(0) = 0`.
pub fn mu(n: u64) -> u32 {
    let mut u = 0;
    while alpha(n + u as u64) > u {
        u += 1;
    }
    u
}

/// The unique tuple `(v_1, ..., v_s)` with `s = mu(n)`,
/// `v_1 > v_2 > ... > v_{s-1} >= v_s > 0`, and
/// `n = sum_i (2^{v_i} - 1)`.  Requires `n >= 1`.
pub fn mu_decomposition(n: u64) -> Result<Vec<u32>> {
    if n == 0 {
        return Err(Error::MuDecompositionOfZero);
    }
    let s = mu(n);
    // n + s is a sum of s powers of two, each at least 2.  Start from the
    // binary expansion and split the smallest power until we have s of them;
    // splits only ever tie the trailing pair, which is the allowed shape.
    let m = n + s as u64;
    let mut vs: Vec<u32> = (0..64).rev().filter(|&t| m >> t & 1 == 1).collect();
    while vs.len() < s as usize {
        let v = vs.pop().expect("mu guarantees a nonempty expansion");
        assert!(v >= 2, "ran out of room splitting powers; mu is inconsistent");
        vs.push(v - 1);
        vs.push(v - 1);
    }
    debug_assert_eq!(vs.iter().map(|&v| (1u64 << v) - 1).sum::<u64>(), n);
    debug_assert!(vs.windows(2).all(|w| w[0] >= w[1]));
    debug_assert!(vs.len() < 2 || vs[..vs.len() - 1].windows(2).all(|w| w[0] > w[1]));
    debug_assert!(vs.iter().all(|&v| v > 0));
    Ok(vs)
}

/// The threshold `t(k, d) = max(0, k - alpha(d + k) - zeta(d + k))` past
/// which the doubling tower on degrees `k (2^s - 1) + 2^s d` has settled:
/// `mu` of that degree equals `k` for every `s > t(k, d)` and, when the
/// threshold is positive, fails to at `s = t(k, d)`.
pub fn t_threshold(k: u32, d: u64) -> u32 {
    let m = d + k as u64;
    let used = alpha(m) + zeta(m).expect("d + k >= 1");
    k.saturating_sub(used)
}

/// Degree of the `s`-th step of the doubling tower over `d`:
/// `k (2^s - 1) + 2^s d`.
pub fn tower_degree(k: u32, d: u64, s: u32) -> u64 {
    (k as u64) * ((1 << s) - 1) + (d << s)
}
