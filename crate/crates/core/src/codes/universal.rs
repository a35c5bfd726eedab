//! Unary, Elias γ/δ/ω, Levenshtein and exponential-Golomb codes, all in
//! their alphabetic forms.

use crate::bitio::{BitCursor, BitString};

use super::{binary, CodeError, MAX_CODEWORD_BITS};

#[inline]
pub(crate) fn floor_lg(i: u128) -> u32 {
    127 - i.leading_zeros()
}

fn to_symbol(v: u128) -> Result<u64, CodeError> {
    u64::try_from(v).map_err(|_| CodeError::InvalidCodeword("value exceeds 64 bits"))
}

pub(crate) mod unary {
    use super::*;

    pub fn len(i: u64) -> u64 {
        i
    }

    pub fn write(out: &mut BitString, i: u64) {
        out.push_run(true, (i - 1) as usize);
        out.push(false);
    }

    pub fn read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        Ok(read_run(cur)? + 1)
    }

    /// Reads `1^q 0` and returns `q`, refusing runs longer than the guard.
    pub(crate) fn read_run(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        match cur.read_ones(MAX_CODEWORD_BITS)? {
            (q, true) => Ok(q),
            _ => Err(CodeError::InvalidCodeword("unary run exceeds length guard")),
        }
    }
}

pub(crate) mod gamma {
    use super::*;

    pub fn len128(i: u128) -> u64 {
        2 * floor_lg(i) as u64 + 1
    }

    pub fn len(i: u64) -> u64 {
        len128(i as u128)
    }

    pub fn write128(out: &mut BitString, i: u128) {
        let l = floor_lg(i);
        out.push_run(true, l as usize);
        out.push(false);
        out.push_bits_u128(i, l);
    }

    pub fn write(out: &mut BitString, i: u64) {
        write128(out, i as u128)
    }

    /// Reads a γ codeword whose value is below `2^64`.
    pub fn read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        match cur.read_ones(64)? {
            (l, true) => {
                let w = cur.read_bits(l as u32)? as u128;
                to_symbol((1u128 << l) | w)
            }
            _ => Err(CodeError::InvalidCodeword("gamma prefix longer than 63")),
        }
    }
}

pub(crate) mod delta {
    use super::*;

    pub fn len(i: u64) -> u64 {
        let l = floor_lg(i as u128) as u64;
        gamma::len(l + 1) + l
    }

    pub fn write(out: &mut BitString, i: u64) {
        let l = floor_lg(i as u128);
        gamma::write(out, l as u64 + 1);
        out.push_bits(i, l);
    }

    pub fn read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        let l = gamma::read(cur)? - 1;
        if l > 63 {
            return Err(CodeError::InvalidCodeword("delta width exceeds 63"));
        }
        let w = cur.read_bits(l as u32)? as u128;
        to_symbol((1u128 << l) | w)
    }
}

pub(crate) mod omega {
    use super::*;

    pub fn len(i: u64) -> u64 {
        if i == 1 {
            1
        } else {
            let l = floor_lg(i as u128) as u64;
            1 + len(l) + l
        }
    }

    /// `c(1) = 0`, `c(i) = 1 c(⌊lg i⌋) low⌊lg i⌋(i)`.
    pub fn write(out: &mut BitString, i: u64) {
        if i == 1 {
            out.push(false);
        } else {
            let l = floor_lg(i as u128);
            out.push(true);
            write(out, l as u64);
            out.push_bits(i, l);
        }
    }

    pub fn read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        let depth = match cur.read_ones(64)? {
            (c, true) => c,
            _ => return Err(CodeError::InvalidCodeword("omega nesting too deep")),
        };
        let mut v: u64 = 1;
        for _ in 0..depth {
            if v > 63 {
                return Err(CodeError::InvalidCodeword("omega group wider than 63"));
            }
            let w = cur.read_bits(v as u32)?;
            v = (1u64 << v) | w;
        }
        Ok(v)
    }
}

pub(crate) mod levenshtein {
    use super::*;

    pub fn len(i: u64) -> u64 {
        if i == 1 {
            1
        } else {
            1 + omega::len(i - 1)
        }
    }

    pub fn write(out: &mut BitString, i: u64) {
        if i == 1 {
            out.push(false);
        } else {
            out.push(true);
            omega::write(out, i - 1);
        }
    }

    pub fn read(cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        if !cur.read_bit()? {
            return Ok(1);
        }
        omega::read(cur)?
            .checked_add(1)
            .ok_or(CodeError::InvalidCodeword("value exceeds 64 bits"))
    }
}

pub(crate) mod exp_golomb {
    use super::*;

    pub fn len(k: u32, i: u64) -> u64 {
        gamma::len(1 + ((i - 1) >> k)) + k as u64
    }

    pub fn write(out: &mut BitString, k: u32, i: u64) {
        gamma::write(out, 1 + ((i - 1) >> k));
        out.push_bits(i - 1, k);
    }

    pub fn read(cur: &mut BitCursor<'_>, k: u32) -> Result<u64, CodeError> {
        let q = gamma::read(cur)? as u128 - 1;
        let low = binary::read_u128(cur, k)?;
        to_symbol((q << k) + low + 1)
    }
}
