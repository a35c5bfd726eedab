//! Bit-granular strings, cursors and the framed container format.
//!
//! Bits are stored most-significant-bit first, both inside the packed
//! `u64` words of a [`BitString`] and inside the bytes of a frame, so the
//! lexicographic order of bit strings agrees with the numeric order of the
//! framed bytes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD_BITS: usize = 64;

/// Frame magic.
pub const MAGIC: [u8; 4] = *b"PCPL";
/// Current frame format version.
pub const FORMAT_VERSION: u8 = 0x01;
/// Size of the frame header in bytes.
pub const HEADER_LEN: usize = 4 + 1 + 1 + 2 + 8 + 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitError {
    #[error("read past end of bit stream at bit {position}")]
    UnexpectedEnd { position: usize },
    #[error("invalid character {0:?} in bit string")]
    InvalidBitChar(char),
    #[error("bad frame magic {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported frame version {0}")]
    BadVersion(u8),
    #[error("frame header truncated: {0} bytes")]
    TruncatedHeader(usize),
    #[error("frame payload truncated: need {expected} bytes, found {found}")]
    TruncatedPayload { expected: u64, found: usize },
    #[error("{0} unexpected bytes after frame payload")]
    TrailingBytes(usize),
    #[error("frame padding bits are not zero")]
    NonZeroPadding,
}

/// Result of comparing two bit strings lexicographically.
///
/// `Prefix` and `Extends` are reported separately from `Less`/`Greater`
/// because prefix relations matter for prefix-freeness checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexOrdering {
    Less,
    Equal,
    Greater,
    /// The left operand is a proper prefix of the right.
    Prefix,
    /// The right operand is a proper prefix of the left.
    Extends,
}

impl LexOrdering {
    /// Collapses prefix relations into the usual total order (shorter first).
    pub fn to_ordering(self) -> Ordering {
        match self {
            LexOrdering::Less | LexOrdering::Prefix => Ordering::Less,
            LexOrdering::Equal => Ordering::Equal,
            LexOrdering::Greater | LexOrdering::Extends => Ordering::Greater,
        }
    }
}

/// A finite sequence of bits with exact length.
///
/// Unused low bits of the last word are kept at zero, so the derived
/// equality and hashing are bitwise and length-sensitive.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(WORD_BITS)),
            len: 0,
        }
    }

    /// `count` copies of `bit`.
    pub fn repeat(bit: bool, count: usize) -> Self {
        let mut s = Self::with_capacity(count);
        s.push_run(bit, count);
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Empties the string, keeping its allocation.
    pub fn clear(&mut self) {
        self.words.clear();
        self.len = 0;
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at `index`, or `None` past the end.
    pub fn get(&self, index: usize) -> Option<bool> {
        if index >= self.len {
            return None;
        }
        let word = self.words[index / WORD_BITS];
        Some((word >> (WORD_BITS - 1 - index % WORD_BITS)) & 1 == 1)
    }

    pub fn push(&mut self, bit: bool) {
        let offset = self.len % WORD_BITS;
        if offset == 0 {
            self.words.push(0);
        }
        if bit {
            let last = self.words.last_mut().expect("word allocated above");
            *last |= 1 << (WORD_BITS - 1 - offset);
        }
        self.len += 1;
    }

    /// Appends the low `count` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, count: u32) {
        assert!(count <= 64, "cannot push more than 64 bits at once");
        if count == 0 {
            return;
        }
        let value = if count == 64 {
            value
        } else {
            value & ((1u64 << count) - 1)
        };
        let count = count as usize;
        let offset = self.len % WORD_BITS;
        if offset == 0 {
            self.words.push(value << (WORD_BITS - count));
        } else {
            let free = WORD_BITS - offset;
            let last = self.words.last_mut().unwrap();
            if count <= free {
                *last |= value << (free - count);
            } else {
                let spill = count - free;
                *last |= value >> spill;
                self.words.push(value << (WORD_BITS - spill));
            }
        }
        self.len += count;
    }

    /// Appends the low `count` bits of a 128-bit value.
    pub fn push_bits_u128(&mut self, value: u128, count: u32) {
        assert!(count <= 128);
        if count > 64 {
            self.push_bits((value >> 64) as u64, count - 64);
            self.push_bits(value as u64, 64);
        } else {
            self.push_bits(value as u64, count);
        }
    }

    /// Appends `count` copies of `bit`.
    pub fn push_run(&mut self, bit: bool, count: usize) {
        let fill = if bit { u64::MAX } else { 0 };
        let mut left = count;
        while left > 0 {
            let n = left.min(64);
            self.push_bits(fill, n as u32);
            left -= n;
        }
    }

    pub fn append(&mut self, other: &BitString) {
        let full = other.len / WORD_BITS;
        for &w in &other.words[..full] {
            self.push_bits(w, 64);
        }
        let rest = other.len % WORD_BITS;
        if rest > 0 {
            self.push_bits(other.words[full] >> (WORD_BITS - rest), rest as u32);
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = BitString::with_capacity(self.len + other.len);
        out.append(self);
        out.append(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i).unwrap())
    }

    /// Lexicographic comparison that distinguishes prefix relations.
    pub fn lex_compare(&self, other: &BitString) -> LexOrdering {
        let common = self.len.min(other.len);
        let full = common / WORD_BITS;
        for k in 0..=full {
            let remaining = common - k * WORD_BITS;
            if remaining == 0 {
                break;
            }
            let take = remaining.min(WORD_BITS);
            let mask = if take == WORD_BITS {
                u64::MAX
            } else {
                !(u64::MAX >> take)
            };
            let a = self.words[k] & mask;
            let b = other.words[k] & mask;
            if a != b {
                return if a < b {
                    LexOrdering::Less
                } else {
                    LexOrdering::Greater
                };
            }
        }
        match self.len.cmp(&other.len) {
            Ordering::Equal => LexOrdering::Equal,
            Ordering::Less => LexOrdering::Prefix,
            Ordering::Greater => LexOrdering::Extends,
        }
    }

    /// Packs the bits MSB-first into bytes, zero padding the last byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(nbytes);
        for w in &self.words {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out.truncate(nbytes);
        out
    }

    /// The first `bit_len` bits of `bytes`, read MSB-first.
    pub fn from_bytes(bytes: &[u8], bit_len: usize) -> Result<BitString, BitError> {
        let need = bit_len.div_ceil(8);
        if bytes.len() < need {
            return Err(BitError::TruncatedPayload {
                expected: need as u64,
                found: bytes.len(),
            });
        }
        let mut words = Vec::with_capacity(bit_len.div_ceil(WORD_BITS));
        for chunk in bytes[..need].chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            words.push(u64::from_be_bytes(buf));
        }
        let rest = bit_len % WORD_BITS;
        if rest > 0 {
            let last = words.last_mut().unwrap();
            *last &= !(u64::MAX >> rest);
        }
        Ok(BitString {
            words,
            len: bit_len,
        })
    }

    pub fn cursor(&self) -> BitCursor<'_> {
        BitCursor::new(self)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = BitError;

    /// Parses `0`/`1` characters; spaces and underscores are ignored so
    /// codewords can be written in grouped form (`"11 0 0"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = BitString::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                ' ' | '_' | '~' => {}
                other => return Err(BitError::InvalidBitChar(other)),
            }
        }
        Ok(out)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for b in iter {
            out.push(b);
        }
        out
    }
}

/// Free-function form of [`BitString::lex_compare`].
pub fn lex_compare(a: &BitString, b: &BitString) -> LexOrdering {
    a.lex_compare(b)
}

/// Read position over a [`BitString`]. Reads past the end are errors.
#[derive(Debug, Clone)]
pub struct BitCursor<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl<'a> BitCursor<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        Self { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    /// Moves to `pos`, which must not exceed the source length.
    pub fn set_position(&mut self, pos: usize) {
        assert!(pos <= self.bits.len(), "cursor position beyond source");
        self.pos = pos;
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.pos == self.bits.len()
    }

    pub fn read_bit(&mut self) -> Result<bool, BitError> {
        match self.bits.get(self.pos) {
            Some(b) => {
                self.pos += 1;
                Ok(b)
            }
            None => Err(BitError::UnexpectedEnd { position: self.pos }),
        }
    }

    /// Reads `count <= 64` bits as an unsigned big-endian number.
    pub fn read_bits(&mut self, count: u32) -> Result<u64, BitError> {
        assert!(count <= 64);
        let count = count as usize;
        if count > self.remaining() {
            return Err(BitError::UnexpectedEnd {
                position: self.bits.len(),
            });
        }
        if count == 0 {
            return Ok(0);
        }
        let words = &self.bits.words;
        let k = self.pos / WORD_BITS;
        let offset = self.pos % WORD_BITS;
        let hi = words[k] << offset;
        let value = if offset + count <= WORD_BITS {
            hi >> (WORD_BITS - count)
        } else {
            let lo = words[k + 1] >> (WORD_BITS - offset);
            (hi | lo) >> (WORD_BITS - count)
        };
        self.pos += count;
        Ok(value)
    }

    /// Counts consecutive one bits, stopping after the terminating zero or
    /// once `limit` ones have been read (in which case no zero is consumed).
    ///
    /// Returns the number of ones and whether a terminating zero was read.
    pub fn read_ones(&mut self, limit: u64) -> Result<(u64, bool), BitError> {
        let mut ones = 0u64;
        while ones < limit {
            if self.read_bit()? {
                ones += 1;
            } else {
                return Ok((ones, true));
            }
        }
        Ok((ones, false))
    }
}

/// Code identifier as stored in a frame header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrameCode {
    pub tag: u8,
    pub param: i16,
}

/// A decoded container: header fields plus the exact payload bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub code: FrameCode,
    pub symbol_count: u64,
    pub payload: BitString,
}

impl Frame {
    pub fn new(code: FrameCode, symbol_count: u64, payload: BitString) -> Self {
        Self {
            code,
            symbol_count,
            payload,
        }
    }

    pub fn cursor(&self) -> BitCursor<'_> {
        self.payload.cursor()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len().div_ceil(8));
        out.extend_from_slice(&MAGIC);
        out.push(FORMAT_VERSION);
        out.push(self.code.tag);
        out.extend_from_slice(&self.code.param.to_be_bytes());
        out.extend_from_slice(&self.symbol_count.to_be_bytes());
        out.extend_from_slice(&(self.payload.len() as u64).to_be_bytes());
        out.extend_from_slice(&self.payload.to_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Frame, BitError> {
        if bytes.len() >= 4 && bytes[..4] != MAGIC {
            return Err(BitError::BadMagic(bytes[..4].try_into().unwrap()));
        }
        if bytes.len() < HEADER_LEN {
            return Err(BitError::TruncatedHeader(bytes.len()));
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(BitError::BadVersion(bytes[4]));
        }
        let code = FrameCode {
            tag: bytes[5],
            param: i16::from_be_bytes([bytes[6], bytes[7]]),
        };
        let symbol_count = u64::from_be_bytes(bytes[8..16].try_into().unwrap());
        let bit_count = u64::from_be_bytes(bytes[16..24].try_into().unwrap());
        let body = &bytes[HEADER_LEN..];
        let need = bit_count.div_ceil(8);
        if (body.len() as u64) < need {
            return Err(BitError::TruncatedPayload {
                expected: need,
                found: body.len(),
            });
        }
        if body.len() as u64 > need {
            return Err(BitError::TrailingBytes(body.len() - need as usize));
        }
        let pad = (need * 8 - bit_count) as u32;
        if pad > 0 && body[need as usize - 1] & ((1u8 << pad) - 1) != 0 {
            return Err(BitError::NonZeroPadding);
        }
        let payload = BitString::from_bytes(body, bit_count as usize)?;
        Ok(Frame {
            code,
            symbol_count,
            payload,
        })
    }
}

/// Serializes a sequence of codewords into a frame.
pub fn frame_write(code: FrameCode, codewords: &[BitString]) -> Vec<u8> {
    let total = codewords.iter().map(BitString::len).sum();
    let mut payload = BitString::with_capacity(total);
    for c in codewords {
        payload.append(c);
    }
    Frame::new(code, codewords.len() as u64, payload).to_bytes()
}

/// Parses a frame; use [`Frame::cursor`] to read the payload.
pub fn frame_read(bytes: &[u8]) -> Result<Frame, BitError> {
    Frame::from_bytes(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn append_examples() {
        assert_eq!(bs("0").concat(&bs("11")), bs("011"));
        assert_eq!(bs("").concat(&bs("")), bs(""));
        assert_eq!(bs("10").concat(&bs("0")), bs("100"));
    }

    #[test]
    fn equality_is_length_sensitive() {
        assert_ne!(bs("0"), bs("00"));
        assert_eq!(bs("0").len(), 1);
    }

    #[test]
    fn lex_compare_examples() {
        assert_eq!(lex_compare(&bs("00"), &bs("010")), LexOrdering::Less);
        assert_eq!(lex_compare(&bs("10"), &bs("100")), LexOrdering::Prefix);
        assert_eq!(lex_compare(&bs("100"), &bs("10")), LexOrdering::Extends);
        assert_eq!(lex_compare(&bs("11"), &bs("11")), LexOrdering::Equal);
        assert_eq!(lex_compare(&bs("1"), &bs("0111")), LexOrdering::Greater);
        assert_eq!(lex_compare(&bs(""), &bs("0")), LexOrdering::Prefix);
    }

    #[test]
    fn lex_compare_across_word_boundary() {
        let mut a = BitString::repeat(true, 70);
        let b = a.clone();
        a.push(false);
        assert_eq!(lex_compare(&b, &a), LexOrdering::Prefix);
        let mut c = BitString::repeat(true, 66);
        c.push(false);
        let mut d = BitString::repeat(true, 67);
        d.push(false);
        assert_eq!(lex_compare(&c, &d), LexOrdering::Less);
    }

    #[test]
    fn frame_examples() {
        let code = FrameCode { tag: 8, param: 0 };
        let empty = frame_write(code, &[]);
        assert_eq!(empty.len(), HEADER_LEN);
        assert_eq!(&empty[16..24], &0u64.to_be_bytes());

        let one = frame_write(code, &[bs("0")]);
        assert_eq!(&one[16..24], &1u64.to_be_bytes());
        assert_eq!(&one[HEADER_LEN..], &[0x00]);

        let two = frame_write(code, &[bs("00"), bs("010")]);
        assert_eq!(&two[8..16], &2u64.to_be_bytes());
        assert_eq!(&two[16..24], &5u64.to_be_bytes());
        assert_eq!(&two[HEADER_LEN..], &[0b0001_0000]);
    }

    #[test]
    fn frame_header_layout() {
        let bytes = frame_write(FrameCode { tag: 6, param: -2 }, &[bs("1")]);
        assert_eq!(&bytes[..4], b"PCPL");
        assert_eq!(bytes[4], 1);
        assert_eq!(bytes[5], 6);
        assert_eq!(&bytes[6..8], &(-2i16).to_be_bytes());
        assert_eq!(bytes[HEADER_LEN], 0x80);
    }

    #[test]
    fn frame_read_errors() {
        let good = frame_write(FrameCode { tag: 2, param: 0 }, &[bs("101101101")]);
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(frame_read(&bad), Err(BitError::BadMagic(_))));
        let mut bad = good.clone();
        bad[4] = 2;
        assert_eq!(frame_read(&bad), Err(BitError::BadVersion(2)));
        assert!(matches!(
            frame_read(&good[..good.len() - 1]),
            Err(BitError::TruncatedPayload { .. })
        ));
        assert!(matches!(
            frame_read(&good[..10]),
            Err(BitError::TruncatedHeader(10))
        ));
        let mut bad = good.clone();
        bad.push(0);
        assert_eq!(frame_read(&bad), Err(BitError::TrailingBytes(1)));
        let mut bad = good.clone();
        *bad.last_mut().unwrap() |= 1;
        assert_eq!(frame_read(&bad), Err(BitError::NonZeroPadding));
    }

    #[test]
    fn cursor_reads_and_errors() {
        let s = bs("1101 0000 1111 0");
        let mut c = s.cursor();
        assert_eq!(c.read_ones(10).unwrap(), (2, true));
        assert_eq!(c.read_bits(5).unwrap(), 0b10000);
        assert_eq!(c.read_bits(4).unwrap(), 0b1111);
        assert_eq!(
            c.read_bits(2),
            Err(BitError::UnexpectedEnd { position: 13 })
        );
        assert!(!c.read_bit().unwrap());
        assert!(c.is_at_end());
        assert_eq!(c.read_bit(), Err(BitError::UnexpectedEnd { position: 13 }));
    }

    #[test]
    fn read_ones_respects_limit() {
        let s = bs("1111");
        let mut c = s.cursor();
        assert_eq!(c.read_ones(3).unwrap(), (3, false));
        assert_eq!(c.position(), 3);
    }

    #[test]
    fn push_bits_spanning_words() {
        let mut s = BitString::new();
        s.push_bits(0b101, 3);
        s.push_bits(u64::MAX, 64);
        s.push_bits(0, 61);
        assert_eq!(s.len(), 128);
        let mut c = s.cursor();
        assert_eq!(c.read_bits(3).unwrap(), 0b101);
        assert_eq!(c.read_bits(64).unwrap(), u64::MAX);
        assert_eq!(c.read_bits(61).unwrap(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn frame_roundtrip(words in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 0..80), 0..12)) {
            let codewords: Vec<BitString> = words.iter().map(|w| w.iter().copied().collect()).collect();
            let bytes = frame_write(FrameCode { tag: 3, param: 7 }, &codewords);
            let frame = frame_read(&bytes).unwrap();
            let expected: BitString = words.iter().flatten().copied().collect();
            prop_assert_eq!(frame.symbol_count, codewords.len() as u64);
            prop_assert_eq!(frame.code, FrameCode { tag: 3, param: 7 });
            prop_assert_eq!(frame.payload, expected);
        }

        #[test]
        fn lex_compare_antisymmetric(a in proptest::collection::vec(any::<bool>(), 0..130),
                                     b in proptest::collection::vec(any::<bool>(), 0..130)) {
            let a: BitString = a.into_iter().collect();
            let b: BitString = b.into_iter().collect();
            let ab = a.lex_compare(&b);
            let ba = b.lex_compare(&a);
            let mirrored = match ab {
                LexOrdering::Less => LexOrdering::Greater,
                LexOrdering::Greater => LexOrdering::Less,
                LexOrdering::Prefix => LexOrdering::Extends,
                LexOrdering::Extends => LexOrdering::Prefix,
                LexOrdering::Equal => LexOrdering::Equal,
            };
            prop_assert_eq!(ba, mirrored);
            prop_assert_eq!(ab == LexOrdering::Equal, a == b);
            // Agrees with the naive ordering on bool vectors.
            let naive = a.iter().collect::<Vec<_>>().cmp(&b.iter().collect::<Vec<_>>());
            prop_assert_eq!(ab.to_ordering(), naive);
        }
    }
}
