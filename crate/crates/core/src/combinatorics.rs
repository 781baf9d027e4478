//! Extremal products of distinct naturals and the bounded enumeration of
//! candidate resonance sets.
//!
//! `pmax` answers: over all sets of `t` pairwise-distinct natural numbers
//! with sum `S`, what is the largest possible product? The closed form
//! comes from the densest admissible distribution `{tau, ..., tau+t}` with
//! one element `zeta` removed; `pmax_bruteforce` is the exhaustive ground
//! truth on a tractable box. `enumerate_resonance_sets` lists every sorted
//! set of distinct integers containing −1 with the remaining entries at or
//! above a floor and a prescribed total.

use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CombinatoricsError {
    /// No set of `t` distinct naturals can reach the requested sum.
    InfeasibleSum { t: u64, sum: u64 },
    /// Outside the exhaustive-search tractability box.
    OutOfBounds { t: u64, sum: u64 },
}

impl fmt::Display for CombinatoricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinatoricsError::InfeasibleSum { t, sum } => {
                write!(f, "{t} distinct naturals cannot sum to {sum}")
            }
            CombinatoricsError::OutOfBounds { t, sum } => {
                write!(f, "query (t={t}, sum={sum}) outside the exhaustive-search box")
            }
        }
    }
}

impl std::error::Error for CombinatoricsError {}

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Maximum product of `t` pairwise-distinct naturals summing to `sum`:
/// `(t+tau)! / ((tau-1)! * zeta)` with `tau = floor(sum/t - (t-1)/2)`,
/// `eps` its fractional remainder, and `zeta = tau + (1-eps)*t` — the
/// product of the dense set `{tau, ..., tau+t}` minus the element `zeta`.
pub fn pmax(t: u64, sum: u64) -> Result<BigUint, CombinatoricsError> {
    assert!(t >= 1, "at least one element required");
    if sum < t * (t + 1) / 2 {
        return Err(CombinatoricsError::InfeasibleSum { t, sum });
    }
    // tau = floor(num / 2t) and eps*t = rem/2 with num = 2*sum - t(t-1),
    // which keeps everything in integers (num is always even alongside 2t*tau)
    let num = 2 * sum - t * (t - 1);
    let tau = num / (2 * t);
    let eps_t = (num - 2 * t * tau) / 2;
    let zeta = tau + t - eps_t;
    debug_assert!(tau <= zeta && zeta <= tau + t);
    let result = factorial(t + tau) / (factorial(tau - 1) * BigUint::from(zeta));
    Ok(result)
}

const BRUTE_T_MAX: u64 = 8;
const BRUTE_SUM_MAX: u64 = 80;

/// Exhaustive maximum over all sets of `t` distinct naturals with the given
/// sum; the ground truth for [`pmax`] on a tractable box.
pub fn pmax_bruteforce(t: u64, sum: u64) -> Result<BigUint, CombinatoricsError> {
    assert!(t >= 1, "at least one element required");
    if t > BRUTE_T_MAX || sum > BRUTE_SUM_MAX {
        return Err(CombinatoricsError::OutOfBounds { t, sum });
    }
    if sum < t * (t + 1) / 2 {
        return Err(CombinatoricsError::InfeasibleSum { t, sum });
    }
    fn search(start: u64, count: u64, remaining: u64, product: BigUint, best: &mut BigUint) {
        if count == 0 {
            if remaining == 0 && product > *best {
                *best = product;
            }
            return;
        }
        let mut v = start;
        while v * count + count * (count - 1) / 2 <= remaining {
            search(v + 1, count - 1, remaining - v, &product * BigUint::from(v), best);
            v += 1;
        }
    }
    let mut best = BigUint::ZERO;
    search(1, t, sum, BigUint::one(), &mut best);
    Ok(best)
}

/// All sorted sets of `n` distinct integers that contain −1, whose other
/// `n−1` entries are distinct integers at or above `min_positive`, and
/// whose total is `required_sum`. The search is bounded structurally: each
/// next entry is capped by the remaining sum minus the least the rest can
/// contribute.
pub fn enumerate_resonance_sets(n: usize, required_sum: i64, min_positive: i64) -> Vec<Vec<i64>> {
    assert!(n >= 2, "a resonance set has at least two entries");
    assert!(min_positive >= 1, "the floor must be a natural number");
    fn extend(
        start: i64,
        count: i64,
        remaining: i64,
        prefix: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if count == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut v = start;
        while v * count + count * (count - 1) / 2 <= remaining {
            prefix.push(v);
            extend(v + 1, count - 1, remaining - v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    let mut prefix = vec![-1];
    extend(min_positive, n as i64 - 1, required_sum + 1, &mut prefix, &mut out);
    out
}
