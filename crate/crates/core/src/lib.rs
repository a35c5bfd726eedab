//! Prefix codes for power-law sources.
//!
//! The crate provides bit-exact encoders and decoders for Code k and the
//! classic integer codes it competes with (unary, Elias γ/δ/ω, Levenshtein,
//! Golomb, exponential-Golomb and Yokoo's code), rigorous interval
//! enclosures of expected codeword length under Gauss-Kuzmin, Yule-Simon
//! and zeta distributions, and a continued-fraction codec for rationals.
//!
//! ```
//! use pcpl::codes::CodeId;
//!
//! let code: CodeId = "codek:0".parse().unwrap();
//! assert_eq!(code.encode(12).unwrap().to_string(), "110010");
//! ```

pub mod analysis;
pub mod bitio;
pub mod codes;
pub mod distributions;
pub mod interval;
pub mod rational;

pub use bitio::{BitCursor, BitString, LexOrdering};
pub use codes::{CodeError, CodeId, Family};
pub use distributions::{DistId, Distribution};
pub use interval::Interval;
