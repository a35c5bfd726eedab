//! Complete binary codes `b(j, k)`.
//!
//! The first `2^⌈lg k⌉ − k` codewords have `⌊lg k⌋` bits and the rest have
//! `⌈lg k⌉` bits. The assignment is alphabetic.

use crate::bitio::{BitCursor, BitString};

use super::CodeError;

/// `⌈lg k⌉` for `k ≥ 1`.
pub(crate) fn ceil_lg(k: u128) -> u32 {
    debug_assert!(k >= 1);
    if k == 1 {
        0
    } else {
        128 - (k - 1).leading_zeros()
    }
}

/// `(u, s)` with `u = ⌈lg k⌉` and `s = 2^u − k` short codewords.
pub(crate) fn split(k: u128) -> (u32, u128) {
    let u = ceil_lg(k);
    (u, (1u128 << u) - k)
}

/// Length of `b(j, k)`.
pub(crate) fn len(j: u128, k: u128) -> u64 {
    let (u, s) = split(k);
    if j < s {
        u as u64 - 1
    } else {
        u as u64
    }
}

pub(crate) fn write(out: &mut BitString, j: u128, k: u128) {
    debug_assert!(j < k);
    let (u, s) = split(k);
    if u == 0 {
        return;
    }
    if j < s {
        out.push_bits_u128(j, u - 1);
    } else {
        out.push_bits_u128(j + s, u);
    }
}

pub(crate) fn read(cur: &mut BitCursor<'_>, k: u128) -> Result<u128, CodeError> {
    let (u, s) = split(k);
    if u == 0 {
        return Ok(0);
    }
    let v = read_u128(cur, u - 1)?;
    if v < s {
        return Ok(v);
    }
    let b = cur.read_bit()? as u128;
    Ok(2 * v + b - s)
}

pub(crate) fn read_u128(cur: &mut BitCursor<'_>, count: u32) -> Result<u128, CodeError> {
    if count > 64 {
        let hi = cur.read_bits(count - 64)? as u128;
        let lo = cur.read_bits(64)? as u128;
        Ok(hi << 64 | lo)
    } else {
        Ok(cur.read_bits(count)? as u128)
    }
}

/// The `(j+1)`-th codeword of the complete binary code on `k` items.
pub fn complete_binary(j: u64, k: u64) -> Result<BitString, CodeError> {
    if k == 0 || j >= k {
        return Err(CodeError::BinaryIndexOutOfRange { j, k });
    }
    let mut out = BitString::new();
    write(&mut out, j as u128, k as u128);
    Ok(out)
}

/// Inverse of [`complete_binary`].
pub fn decode_complete_binary(cur: &mut BitCursor<'_>, k: u64) -> Result<u64, CodeError> {
    if k == 0 {
        return Err(CodeError::BinaryIndexOutOfRange { j: 0, k });
    }
    Ok(read(cur, k as u128)? as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(j: u64, k: u64) -> String {
        complete_binary(j, k).unwrap().to_string()
    }

    #[test]
    fn small_codes() {
        assert_eq!([b(0, 3), b(1, 3), b(2, 3)], ["0", "10", "11"]);
        assert_eq!(b(0, 1), "");
        assert_eq!(b(5, 8), "101");
        assert_eq!(
            [b(0, 6), b(1, 6), b(2, 6), b(5, 6)],
            ["00", "01", "100", "111"]
        );
    }

    #[test]
    fn out_of_range() {
        assert!(complete_binary(3, 3).is_err());
        assert!(complete_binary(0, 0).is_err());
    }

    #[test]
    fn length_split_and_roundtrip() {
        for k in 1..200u64 {
            let u = ceil_lg(k as u128);
            let short = (1u64 << u) - k;
            let mut prev: Option<BitString> = None;
            for j in 0..k {
                let c = complete_binary(j, k).unwrap();
                let expect = if j < short { u.saturating_sub(1) } else { u };
                assert_eq!(c.len(), expect as usize, "j={j} k={k}");
                let mut cur = c.cursor();
                assert_eq!(decode_complete_binary(&mut cur, k).unwrap(), j);
                assert!(cur.is_at_end());
                if let Some(p) = prev {
                    assert_eq!(p.lex_compare(&c), crate::bitio::LexOrdering::Less);
                }
                prev = Some(c);
            }
        }
    }
}
