//! Expected codeword length of prefix codes under power-law sources.
//!
//! Fixed codes get rigorous enclosures: an exact head computed by summation
//! by parts over the survival function, plus integral tail bounds from a
//! logarithmic [`LengthSandwich`] on the code and a power-law
//! [`ProbSandwich`](crate::distributions::ProbSandwich) on the source.
//! Golin's designer codes and truncated Huffman codes are estimated with an
//! entropy bound on the unexplored tail.

mod expected;
mod golin;
pub mod grid;
mod montecarlo;
mod optimal;
mod sandwich;
mod structure;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, CodeId};
use crate::distributions::{DistError, DistId};
use crate::interval::Interval;

pub use expected::{
    best_parameter, brute_force_partial, expected_length, BestParameter, MAX_ANALYSIS_SYMBOL,
};
pub use golin::{designer_expected_length, golin, golin_alg1, golin_alg2, DesignerCode, GolinAlg};
pub use grid::{table2_grid, Column, GridCell, GridRow};
pub use montecarlo::{monte_carlo_check, MonteCarlo};
pub use optimal::{huffman_lengths, optimal_estimate};
pub use sandwich::{length_sandwich, tail_expected_length, LengthSandwich};
pub use structure::{
    antiunary_level, is_antiunary, is_j_smooth, is_j_smooth_lengths, kraft_sum_exact,
    smooth_improve, smoothness_level,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("no validated logarithmic length sandwich for {0}")]
    SandwichValidationFailed(CodeId),
    #[error("{code} on {dist}: enclosure cannot reach width {precision:e}")]
    PrecisionUnreachable {
        code: CodeId,
        dist: DistId,
        precision: f64,
    },
    #[error("length table violates the Kraft inequality")]
    KraftViolation,
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// An expected length, which may diverge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpectedLength {
    Finite(Interval),
    Infinite,
}

impl ExpectedLength {
    pub fn interval(&self) -> Option<Interval> {
        match self {
            ExpectedLength::Finite(i) => Some(*i),
            ExpectedLength::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExpectedLength::Infinite)
    }

    /// Upper end, `+∞` when infinite.
    pub fn upper(&self) -> f64 {
        self.interval().map_or(f64::INFINITY, |i| i.hi)
    }

    /// Lower end, `+∞` when infinite.
    pub fn lower(&self) -> f64 {
        self.interval().map_or(f64::INFINITY, |i| i.lo)
    }
}

impl fmt::Display for ExpectedLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedLength::Finite(i) => i.fmt(f),
            ExpectedLength::Infinite => f.write_str("inf"),
        }
    }
}

/// How a reported number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    /// Exact head plus validated integral tail bounds.
    RigorousSandwich,
    /// Exact head plus an entropy argument for the tail; the upper end is
    /// not a proven bound.
    EntropyTailEstimate,
    /// A closed-form value.
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::RigorousSandwich => "rigorous",
            Method::EntropyTailEstimate => "estimate",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// The code a report refers to.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportedCode {
    Fixed(CodeId),
    Designer(DesignerCode),
}

/// One analysed (code, distribution) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeReport {
    pub code: ReportedCode,
    pub dist: DistId,
    pub expected_bits: ExpectedLength,
    pub method: Method,
}

/// Report for a fixed code.
pub fn analyze_code(
    code: CodeId,
    dist: DistId,
    precision: f64,
) -> Result<CodeReport, AnalysisError> {
    let (expected_bits, method) = expected::expected_length_with_method(code, dist, precision)?;
    Ok(CodeReport {
        code: ReportedCode::Fixed(code),
        dist,
        expected_bits,
        method,
    })
}
