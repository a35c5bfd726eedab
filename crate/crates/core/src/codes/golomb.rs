//! Golomb codes `Gk`: unary quotient then a complete binary remainder.

use crate::bitio::{BitCursor, BitString};

use super::universal::unary;
use super::{binary, CodeError};

pub(crate) fn len(k: u64, i: u64) -> u64 {
    let q = (i - 1) / k;
    let r = (i - 1) % k;
    q + 1 + binary::len(r as u128, k as u128)
}

/// `Σ_{i≤n} 2^(−n(i))` in closed form: each full quotient group `q`
/// contributes `2^(−q−1)` since the remainder code is complete.
pub(crate) fn kraft_prefix(k: u64, n: u64) -> f64 {
    let (groups, rem) = (n / k, n % k);
    let full = 1.0 - (-(groups as f64)).exp2();
    let (u, s) = binary::split(k as u128);
    let short = (rem as u128).min(s) as f64;
    let long = (rem as u128).saturating_sub(s) as f64;
    let partial = short * (1.0 - u as f64).exp2() + long * (-(u as f64)).exp2();
    full + partial * (-(groups as f64) - 1.0).exp2()
}

pub(crate) fn write(out: &mut BitString, k: u64, i: u64) {
    let q = (i - 1) / k;
    out.push_run(true, q as usize);
    out.push(false);
    binary::write(out, ((i - 1) % k) as u128, k as u128);
}

pub(crate) fn read(cur: &mut BitCursor<'_>, k: u64) -> Result<u64, CodeError> {
    let q = unary::read_run(cur)? as u128;
    let r = binary::read(cur, k as u128)?;
    u64::try_from(q * k as u128 + r + 1)
        .map_err(|_| CodeError::InvalidCodeword("value exceeds 64 bits"))
}
