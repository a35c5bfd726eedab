//! Code k.
//!
//! Code 0 groups symbols into levels: level `m` holds the `3·2^(m−1)`
//! symbols with `3·2^(m−1) ≤ i + 2 < 3·2^m`, each coded as the unary prefix
//! `1^(m−1)0` followed by a complete binary codeword over the level. Positive
//! `k` appends `k` low bits Rice-style; negative `k = −κ` spends `κ` unary
//! codewords on the first symbols and then escapes into Code 0.

use crate::bitio::{BitCursor, BitString};

use super::universal::floor_lg;
use super::{binary, CodeError};

/// `(m, r, size)` for symbol `i` of Code 0: level, offset and level size.
#[inline]
fn level(i: u64) -> (u32, u128, u128) {
    let v = i as u128 + 2;
    let m = floor_lg(v / 3) + 1;
    let size = 3u128 << (m - 1);
    (m, v - size, size)
}

pub(crate) fn c0_len(i: u64) -> u64 {
    let (m, r, _) = level(i);
    2 * m as u64 + (r >= 1u128 << (m - 1)) as u64
}

pub(crate) fn c0_write(out: &mut BitString, i: u64) {
    let (m, r, size) = level(i);
    out.push_run(true, m as usize - 1);
    out.push(false);
    binary::write(out, r, size);
}

pub(crate) fn c0_read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
    let m = match cur.read_ones(63)? {
        (ones, true) => ones as u32 + 1,
        _ => return Err(CodeError::InvalidCodeword("Code 0 prefix longer than 62")),
    };
    let size = 3u128 << (m - 1);
    let r = binary::read(cur, size)?;
    u64::try_from(r + size - 2).map_err(|_| CodeError::InvalidCodeword("value exceeds 64 bits"))
}

pub(crate) fn len(k: i32, i: u64) -> u64 {
    if k >= 0 {
        c0_len(1 + ((i - 1) >> k)) + k as u64
    } else {
        let kappa = k.unsigned_abs() as u64;
        if i <= kappa {
            i
        } else {
            kappa + c0_len(i - kappa)
        }
    }
}

pub(crate) fn write(out: &mut BitString, k: i32, i: u64) {
    if k >= 0 {
        c0_write(out, 1 + ((i - 1) >> k));
        out.push_bits(i - 1, k as u32);
    } else {
        let kappa = k.unsigned_abs() as u64;
        if i <= kappa {
            out.push_run(true, i as usize - 1);
            out.push(false);
        } else {
            out.push_run(true, kappa as usize);
            c0_write(out, i - kappa);
        }
    }
}

pub(crate) fn read(cur: &mut BitCursor<'_>, k: i32) -> Result<u64, CodeError> {
    let overflow = CodeError::InvalidCodeword("value exceeds 64 bits");
    if k >= 0 {
        let q = c0_read(cur)? as u128 - 1;
        let low = cur.read_bits(k as u32)? as u128;
        u64::try_from((q << k) + low + 1).map_err(|_| overflow)
    } else {
        let kappa = k.unsigned_abs() as u64;
        match cur.read_ones(kappa)? {
            (ones, true) => Ok(ones + 1),
            _ => c0_read(cur)?.checked_add(kappa).ok_or(overflow),
        }
    }
}
