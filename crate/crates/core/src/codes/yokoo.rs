//! Yokoo's code.
//!
//! Symbols `2^g ≤ i < 2^(g+1)` share the prefix `1^g 0` and are split into
//! two complete binary blocks of sizes `m = (2^g − (−1)^g)/3` and `2^g − m`,
//! selected by one more bit.

use crate::bitio::{BitCursor, BitString};

use super::universal::floor_lg;
use super::{binary, CodeError};

/// `(g, base, m)` for the power-of-two band containing `i ≥ 2`.
fn band(i: u64) -> (u32, u128, u128) {
    let g = floor_lg(i as u128);
    (g, 1u128 << g, split(g))
}

fn split(g: u32) -> u128 {
    let p = 1u128 << g;
    if g.is_multiple_of(2) {
        (p - 1) / 3
    } else {
        (p + 1) / 3
    }
}

pub(crate) fn len(i: u64) -> u64 {
    if i == 1 {
        return 1;
    }
    let (g, base, m) = band(i);
    let q = base + m;
    let i = i as u128;
    let tail = if i < q {
        binary::len(i - base, m)
    } else {
        binary::len(i - q, base - m)
    };
    g as u64 + 2 + tail
}

pub(crate) fn write(out: &mut BitString, i: u64) {
    if i == 1 {
        out.push(false);
        return;
    }
    let (g, base, m) = band(i);
    let q = base + m;
    let i = i as u128;
    out.push_run(true, g as usize);
    out.push(false);
    if i < q {
        out.push(false);
        binary::write(out, i - base, m);
    } else {
        out.push(true);
        binary::write(out, i - q, base - m);
    }
}

pub(crate) fn read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
    let g = match cur.read_ones(64)? {
        (0, true) => return Ok(1),
        (g, true) => g as u32,
        _ => return Err(CodeError::InvalidCodeword("Yokoo prefix longer than 63")),
    };
    let base = 1u128 << g;
    let m = split(g);
    let v = if cur.read_bit()? {
        base + m + binary::read(cur, base - m)?
    } else {
        base + binary::read(cur, m)?
    };
    Ok(v as u64)
}
