//! Encoders, decoders and length functions for every supported code family.
//!
//! All codes are over the alphabet `{1, 2, 3, ...}` and are implemented in
//! alphabetic form: codeword order agrees with symbol order. Lengths are
//! monotone nondecreasing in the symbol for every family.

mod binary;
mod codek;
mod golomb;
mod universal;
mod yokoo;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitio::{BitCursor, BitError, BitString, FrameCode};

pub use binary::{complete_binary, decode_complete_binary};

/// Longest codeword `encode` will produce.
pub const MAX_CODEWORD_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("symbols start at 1")]
    ZeroSymbol,
    #[error("codeword for symbol {symbol} would be {length} bits, above the {MAX_CODEWORD_BITS}-bit guard")]
    SymbolTooLarge { symbol: u64, length: u64 },
    #[error("bit stream ended inside a codeword")]
    TruncatedCodeword,
    #[error("invalid codeword: {0}")]
    InvalidCodeword(&'static str),
    #[error("parameter {param} out of range for {family}")]
    InvalidParameter { family: Family, param: i64 },
    #[error("unknown code family {0:?}")]
    UnknownFamily(String),
    #[error("malformed code name {0:?}")]
    Malformed(String),
    #[error("unknown code tag {0}")]
    UnknownTag(u8),
    #[error("complete binary index {j} out of range for {k} items")]
    BinaryIndexOutOfRange { j: u64, k: u64 },
}

impl From<BitError> for CodeError {
    fn from(e: BitError) -> Self {
        match e {
            BitError::UnexpectedEnd { .. } => CodeError::TruncatedCodeword,
            _ => CodeError::InvalidCodeword("bit stream error"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Unary,
    EliasGamma,
    EliasDelta,
    EliasOmega,
    Levenshtein,
    Golomb,
    ExpGolomb,
    CodeK,
    Yokoo,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Unary,
        Family::EliasGamma,
        Family::EliasDelta,
        Family::EliasOmega,
        Family::Levenshtein,
        Family::Golomb,
        Family::ExpGolomb,
        Family::CodeK,
        Family::Yokoo,
    ];

    /// Frame header byte.
    pub fn tag(self) -> u8 {
        match self {
            Family::Unary => 1,
            Family::EliasGamma => 2,
            Family::EliasDelta => 3,
            Family::EliasOmega => 4,
            Family::Levenshtein => 5,
            Family::Golomb => 6,
            Family::ExpGolomb => 7,
            Family::CodeK => 8,
            Family::Yokoo => 9,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Family, CodeError> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == tag)
            .ok_or(CodeError::UnknownTag(tag))
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Unary => "unary",
            Family::EliasGamma => "gamma",
            Family::EliasDelta => "delta",
            Family::EliasOmega => "omega",
            Family::Levenshtein => "levenshtein",
            Family::Golomb => "golomb",
            Family::ExpGolomb => "expgolomb",
            Family::CodeK => "codek",
            Family::Yokoo => "yokoo",
        }
    }

    /// Whether the family takes a parameter.
    pub fn is_parameterized(self) -> bool {
        matches!(self, Family::Golomb | Family::ExpGolomb | Family::CodeK)
    }

    fn param_range(self) -> (i32, i32) {
        match self {
            Family::Golomb => (1, i16::MAX as i32),
            Family::ExpGolomb => (0, 63),
            Family::CodeK => (-64, 32),
            _ => (0, 0),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match norm.as_str() {
            "unary" => Family::Unary,
            "gamma" | "eliasgamma" | "γ" => Family::EliasGamma,
            "delta" | "eliasdelta" | "δ" => Family::EliasDelta,
            "omega" | "eliasomega" | "ω" => Family::EliasOmega,
            "levenshtein" | "lev" => Family::Levenshtein,
            "golomb" | "g" => Family::Golomb,
            "expgolomb" | "eg" | "exponentialgolomb" => Family::ExpGolomb,
            "codek" | "code" | "k" => Family::CodeK,
            "yokoo" | "y" => Family::Yokoo,
            _ => return Err(CodeError::UnknownFamily(s.to_string())),
        })
    }
}

/// A code family together with its parameter; selects one length
/// distribution `n(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeId {
    family: Family,
    param: i32,
}

impl CodeId {
    /// Validates the parameter range for `family`. Parameterless families
    /// require `param == 0`.
    pub fn new(family: Family, param: i32) -> Result<CodeId, CodeError> {
        let (lo, hi) = family.param_range();
        if param < lo || param > hi {
            return Err(CodeError::InvalidParameter {
                family,
                param: param as i64,
            });
        }
        Ok(CodeId { family, param })
    }

    pub fn code_k(k: i32) -> Result<CodeId, CodeError> {
        CodeId::new(Family::CodeK, k)
    }

    pub fn golomb(k: i32) -> Result<CodeId, CodeError> {
        CodeId::new(Family::Golomb, k)
    }

    pub fn exp_golomb(k: i32) -> Result<CodeId, CodeError> {
        CodeId::new(Family::ExpGolomb, k)
    }

    pub const UNARY: CodeId = CodeId::fixed(Family::Unary);
    pub const GAMMA: CodeId = CodeId::fixed(Family::EliasGamma);
    pub const DELTA: CodeId = CodeId::fixed(Family::EliasDelta);
    pub const OMEGA: CodeId = CodeId::fixed(Family::EliasOmega);
    pub const LEVENSHTEIN: CodeId = CodeId::fixed(Family::Levenshtein);
    pub const YOKOO: CodeId = CodeId::fixed(Family::Yokoo);

    const fn fixed(family: Family) -> CodeId {
        CodeId { family, param: 0 }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn param(&self) -> i32 {
        self.param
    }

    pub fn frame_code(&self) -> FrameCode {
        FrameCode {
            tag: self.family.tag(),
            param: self.param as i16,
        }
    }

    pub fn from_frame_code(fc: FrameCode) -> Result<CodeId, CodeError> {
        CodeId::new(Family::from_tag(fc.tag)?, fc.param as i32)
    }

    /// Codeword length without the length guard. Lengths of every family
    /// fit in `u64` for all `u64` symbols.
    pub fn raw_length(&self, i: u64) -> u64 {
        debug_assert!(i >= 1);
        match self.family {
            Family::Unary => universal::unary::len(i),
            Family::EliasGamma => universal::gamma::len(i),
            Family::EliasDelta => universal::delta::len(i),
            Family::EliasOmega => universal::omega::len(i),
            Family::Levenshtein => universal::levenshtein::len(i),
            Family::Golomb => golomb::len(self.param as u64, i),
            Family::ExpGolomb => universal::exp_golomb::len(self.param as u32, i),
            Family::CodeK => codek::len(self.param, i),
            Family::Yokoo => yokoo::len(i),
        }
    }

    /// `n(i)`, computed arithmetically.
    pub fn codeword_length(&self, i: u64) -> Result<u32, CodeError> {
        if i == 0 {
            return Err(CodeError::ZeroSymbol);
        }
        let length = self.raw_length(i);
        if length > MAX_CODEWORD_BITS {
            return Err(CodeError::SymbolTooLarge { symbol: i, length });
        }
        Ok(length as u32)
    }

    /// `c(i)`.
    pub fn encode(&self, i: u64) -> Result<BitString, CodeError> {
        let mut out = BitString::new();
        self.encode_into(&mut out, i)?;
        Ok(out)
    }

    /// Appends `c(i)` to `out`.
    pub fn encode_into(&self, out: &mut BitString, i: u64) -> Result<(), CodeError> {
        self.codeword_length(i)?;
        match self.family {
            Family::Unary => universal::unary::write(out, i),
            Family::EliasGamma => universal::gamma::write(out, i),
            Family::EliasDelta => universal::delta::write(out, i),
            Family::EliasOmega => universal::omega::write(out, i),
            Family::Levenshtein => universal::levenshtein::write(out, i),
            Family::Golomb => golomb::write(out, self.param as u64, i),
            Family::ExpGolomb => universal::exp_golomb::write(out, self.param as u32, i),
            Family::CodeK => codek::write(out, self.param, i),
            Family::Yokoo => yokoo::write(out, i),
        }
        Ok(())
    }

    /// Reads one codeword at the cursor.
    ///
    /// On error the cursor position is unspecified.
    pub fn decode(&self, cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
        match self.family {
            Family::Unary => universal::unary::read(cur),
            Family::EliasGamma => universal::gamma::read(cur),
            Family::EliasDelta => universal::delta::read(cur),
            Family::EliasOmega => universal::omega::read(cur),
            Family::Levenshtein => universal::levenshtein::read(cur),
            Family::Golomb => golomb::read(cur, self.param as u64),
            Family::ExpGolomb => universal::exp_golomb::read(cur, self.param as u32),
            Family::CodeK => codek::read(cur, self.param),
            Family::Yokoo => yokoo::read(cur),
        }
    }

    /// Maximal runs of equal codeword length covering `first..=last`.
    pub fn runs(&self, first: u64, last: u64) -> Runs {
        Runs {
            code: *self,
            next: first,
            last,
        }
    }

    /// `Σ_{i≤n} 2^(−n(i))`, accumulated over runs of equal length, or in
    /// closed form for the linear-length families.
    pub fn kraft_sum(&self, n: u64) -> f64 {
        match self.family {
            _ if n == 0 => return 0.0,
            Family::Unary => return golomb::kraft_prefix(1, n),
            Family::Golomb => return golomb::kraft_prefix(self.param as u64, n),
            _ => {}
        }
        self.runs(1, n)
            .map(|r| r.count() as f64 * (-(r.length as f64)).exp2())
            .sum()
    }
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_parameterized() {
            write!(f, "{}:{}", self.family, self.param)
        } else {
            write!(f, "{}", self.family)
        }
    }
}

impl FromStr for CodeId {
    type Err = CodeError;

    /// `family[:param]`, e.g. `codek:-1`, `golomb:3`, `gamma`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.trim())),
            None => (s, None),
        };
        let family: Family = name.parse()?;
        let param = match param {
            Some(p) => p
                .parse::<i32>()
                .map_err(|_| CodeError::Malformed(s.to_string()))?,
            None if family == Family::Golomb => 1,
            None => 0,
        };
        CodeId::new(family, param)
    }
}

/// `n` consecutive symbols `first..=last` sharing codeword length `length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthRun {
    pub first: u64,
    pub last: u64,
    pub length: u64,
}

impl LengthRun {
    pub fn count(&self) -> u64 {
        self.last - self.first + 1
    }
}

/// Iterator over [`LengthRun`]s found by galloping search on `n(i)`.
#[derive(Debug, Clone)]
pub struct Runs {
    code: CodeId,
    next: u64,
    last: u64,
}

impl Iterator for Runs {
    type Item = LengthRun;

    fn next(&mut self) -> Option<LengthRun> {
        if self.next == 0 || self.next > self.last {
            return None;
        }
        let first = self.next;
        let length = self.code.raw_length(first);
        let last = self.last as u128;
        let same = |i: u128| i <= last && self.code.raw_length(i as u64) == length;
        // lo always has the run's length; hi is past the run or past `last`.
        let mut lo = first as u128;
        let mut step = 1u128;
        let mut hi = loop {
            let probe = lo + step;
            if same(probe) {
                lo = probe;
                step *= 2;
            } else {
                break probe;
            }
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if same(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // 0 marks exhaustion after u64::MAX.
        self.next = (lo + 1) as u64;
        Some(LengthRun {
            first,
            last: lo as u64,
            length,
        })
    }
}

/// Free-function form of [`CodeId::encode`].
pub fn encode(code: CodeId, i: u64) -> Result<BitString, CodeError> {
    code.encode(i)
}

/// Free-function form of [`CodeId::decode`].
pub fn decode(code: CodeId, cur: &mut BitCursor<'_>) -> Result<u64, CodeError> {
    code.decode(cur)
}

/// Free-function form of [`CodeId::codeword_length`].
pub fn codeword_length(code: CodeId, i: u64) -> Result<u32, CodeError> {
    code.codeword_length(i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodebookEntry {
    pub symbol: u64,
    pub length: u32,
    pub codeword: BitString,
}

/// `(i, n(i), c(i))` for `i = 1..=n`.
pub fn codebook(code: CodeId, n: u64) -> Result<Vec<CodebookEntry>, CodeError> {
    (1..=n)
        .map(|symbol| {
            let codeword = code.encode(symbol)?;
            Ok(CodebookEntry {
                symbol,
                length: codeword.len() as u32,
                codeword,
            })
        })
        .collect()
}
