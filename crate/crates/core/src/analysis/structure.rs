//! Structural diagnostics on length tables: smoothness, antiunary sources,
//! exact Kraft sums, and the jump-into-plateau exchange.

use num_bigint::BigUint;

use crate::codes::CodeId;
use crate::distributions::Distribution;

use super::AnalysisError;

/// `lengths[0]` is `n(1)`. True iff for every `j < i ≤ N−2`,
/// `n(i+1) = n(i+2)` implies `n(i+1) − n(i) ≤ 1`.
pub fn is_j_smooth_lengths(lengths: &[u64], j: u64) -> bool {
    last_jump_into_plateau(lengths).is_none_or(|i| i <= j)
}

/// Largest `i` (1-based) at which a jump of more than one bit is followed
/// by a two-symbol plateau.
fn last_jump_into_plateau(lengths: &[u64]) -> Option<u64> {
    lengths
        .windows(3)
        .rposition(|w| w[1] == w[2] && w[1] > w[0] + 1)
        .map(|k| k as u64 + 1)
}

/// `is_j_smooth_lengths` on `n(1..=N)` of `code`.
///
/// # Panics
/// If `N ≤ j + 2`.
pub fn is_j_smooth(code: CodeId, j: u64, n: u64) -> bool {
    assert!(n > j + 2, "need N > j + 2");
    // Only the window starting at j+1 matters.
    let lengths: Vec<u64> = (j + 1..=n).map(|i| code.raw_length(i)).collect();
    last_jump_into_plateau(&lengths).is_none()
}

/// Smallest `j` for which `lengths` is `j`-smooth.
pub fn smoothness_level(lengths: &[u64]) -> u64 {
    last_jump_into_plateau(lengths).unwrap_or(0)
}

/// True iff `p(i) < p(i+1) + p(i+2)` for all `j < i ≤ N`.
pub fn is_antiunary(dist: &dyn Distribution, j: u64, n: u64) -> bool {
    last_unary_site(dist, j + 1, n).is_none()
}

/// Smallest `j` for which `dist` is `j`-antiunary on `i ≤ N`.
pub fn antiunary_level(dist: &dyn Distribution, n: u64) -> u64 {
    last_unary_site(dist, 1, n).unwrap_or(0)
}

fn last_unary_site(dist: &dyn Distribution, first: u64, last: u64) -> Option<u64> {
    if first > last {
        return None;
    }
    let mut window = [dist.pmf(first), dist.pmf(first + 1), dist.pmf(first + 2)];
    let mut worst = None;
    for i in first..=last {
        if window[0] >= window[1] + window[2] {
            worst = Some(i);
        }
        window = [window[1], window[2], dist.pmf(i + 3)];
    }
    worst
}

/// `Σ_i 2^(−n(i))` exactly, as `numerator / 2^exponent` with `exponent`
/// the largest length.
pub fn kraft_sum_exact(lengths: &[u64]) -> (BigUint, u64) {
    let top = lengths.iter().copied().max().unwrap_or(0);
    let mut num = BigUint::ZERO;
    for &n in lengths {
        num += BigUint::from(1u8) << (top - n);
    }
    (num, top)
}

fn kraft_ok(lengths: &[u64]) -> bool {
    let (num, top) = kraft_sum_exact(lengths);
    num <= BigUint::from(1u8) << top
}

/// Repeatedly applies `n(i) += 1, n(i+1) −= 1, n(i+2) −= 1` at every jump
/// of more than one bit into a plateau where `p(i) < p(i+1) + p(i+2)`,
/// until no such site is left.
///
/// The Kraft sum never grows: a leaf at depth `n` and two at depth
/// `m ≥ n+2` become one at `n+1` and two at `m−1`. Every exchange lowers
/// the expected length by `p(i+1) + p(i+2) − p(i) > 0`, which bounds the
/// number of rounds. Sites where the source is not antiunary are left alone,
/// since the exchange would lengthen the code there.
pub fn smooth_improve(lengths: &[u64], dist: &dyn Distribution) -> Result<Vec<u64>, AnalysisError> {
    if lengths.contains(&0) || !kraft_ok(lengths) {
        return Err(AnalysisError::KraftViolation);
    }
    let p: Vec<f64> = (1..=lengths.len() as u64 + 2)
        .map(|i| dist.pmf(i))
        .collect();
    let mut out = lengths.to_vec();
    loop {
        let mut changed = false;
        for k in 0..out.len().saturating_sub(2) {
            if out[k + 1] == out[k + 2] && out[k + 1] > out[k] + 1 && p[k] < p[k + 1] + p[k + 2] {
                out[k] += 1;
                out[k + 1] -= 1;
                out[k + 2] -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(kraft_ok(&out));
    Ok(out)
}
