//! The compression grid: every standard source against every code column.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{CodeId, Family};
use crate::distributions::{DistFamily, DistId};
use crate::interval::Interval;

use super::expected::{best_parameter, expected_length};
use super::golin::{designer_expected_length, golin, GolinAlg};
use super::optimal::optimal_estimate;
use super::{AnalysisError, ExpectedLength, Method};

/// Truncation point of the optimal-code estimate.
pub const OPTIMAL_X: u64 = 1 << 16;

/// Groups built for designer codes.
pub const GOLIN_GROUPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Column {
    Entropy,
    Optimal,
    Golin,
    CodeK,
    Levenshtein,
    /// Best of γ, δ, ω and exponential-Golomb.
    Elias,
    Yokoo,
    Golomb,
}

impl Column {
    pub const ALL: [Column; 8] = [
        Column::Entropy,
        Column::Optimal,
        Column::Golin,
        Column::CodeK,
        Column::Levenshtein,
        Column::Elias,
        Column::Yokoo,
        Column::Golomb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Entropy => "entropy",
            Column::Optimal => "optimal",
            Column::Golin => "golin",
            Column::CodeK => "codek",
            Column::Levenshtein => "levenshtein",
            Column::Elias => "elias",
            Column::Yokoo => "yokoo",
            Column::Golomb => "golomb",
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub column: Column,
    pub value: ExpectedLength,
    pub method: Method,
    /// Winning parameter or code name, when the column is a family.
    pub code_param: Option<String>,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub dist: DistId,
    pub cells: Vec<GridCell>,
}

impl GridRow {
    pub fn cell(&self, column: Column) -> &GridCell {
        self.cells
            .iter()
            .find(|c| c.column == column)
            .expect("every row has every column")
    }
}

/// Evaluates every column for each of `dists`, cells in parallel, rows and
/// columns in input order.
pub fn table2_grid(dists: &[DistId], precision: f64) -> Result<Vec<GridRow>, AnalysisError> {
    let jobs: Vec<(DistId, Column)> = dists
        .iter()
        .flat_map(|&d| Column::ALL.iter().map(move |&c| (d, c)))
        .collect();
    let cells: Vec<GridCell> = jobs
        .par_iter()
        .map(|&(d, c)| cell(d, c, precision))
        .collect::<Result<_, _>>()?;
    Ok(dists
        .iter()
        .zip(cells.chunks(Column::ALL.len()))
        .map(|(&dist, cells)| GridRow {
            dist,
            cells: cells.to_vec(),
        })
        .collect())
}

fn finite(i: Interval) -> ExpectedLength {
    ExpectedLength::Finite(i)
}

fn cell(dist: DistId, column: Column, precision: f64) -> Result<GridCell, AnalysisError> {
    let mut out = GridCell {
        column,
        value: ExpectedLength::Infinite,
        method: Method::RigorousSandwich,
        code_param: None,
        note: None,
    };
    match column {
        Column::Entropy => out.value = finite(dist.entropy_interval(precision)?),
        Column::Optimal => {
            out.value = finite(Interval::point(optimal_estimate(&dist, OPTIMAL_X)));
            out.method = Method::EntropyTailEstimate;
        }
        Column::Golin => {
            let a = golin(&dist, GOLIN_GROUPS, GolinAlg::Alg1);
            let b = golin(&dist, GOLIN_GROUPS, GolinAlg::Alg2);
            let ea = designer_expected_length(&a, &dist, a.groups());
            let eb = designer_expected_length(&b, &dist, b.groups());
            let (value, param) = if a == b {
                (ea, "1,2")
            } else if ea.mid() <= eb.mid() {
                (ea, "1")
            } else {
                (eb, "2")
            };
            out.value = finite(value);
            out.method = Method::EntropyTailEstimate;
            out.code_param = Some(param.into());
        }
        Column::CodeK | Column::Golomb => {
            let family = if column == Column::CodeK {
                Family::CodeK
            } else {
                Family::Golomb
            };
            let best = best_parameter(family, dist, precision)?;
            out.value = best.expected;
            out.code_param = Some(if best.expected.is_infinite() {
                "all".into()
            } else {
                best.param.to_string()
            });
            if family == Family::Golomb {
                let code = CodeId::golomb(best.param)?;
                out.method = super::expected::expected_length_with_method(code, dist, precision)?.1;
                if dist.family() == DistFamily::YuleSimon && dist.param() == 2.5 {
                    out.note =
                        Some("2.66666… is sometimes quoted here; the mean ρ/(ρ−1) = 5/3 is exact");
                }
            }
        }
        Column::Levenshtein => out.value = expected_length(CodeId::LEVENSHTEIN, dist, precision)?,
        Column::Yokoo => out.value = expected_length(CodeId::YOKOO, dist, precision)?,
        Column::Elias => {
            let mut best = (
                "gamma".to_string(),
                expected_length(CodeId::GAMMA, dist, precision)?,
            );
            for (name, code) in [("delta", CodeId::DELTA), ("omega", CodeId::OMEGA)] {
                let e = expected_length(code, dist, precision)?;
                if proven_better(e, best.1) {
                    best = (name.into(), e);
                }
            }
            let eg = best_parameter(Family::ExpGolomb, dist, precision)?;
            if proven_better(eg.expected, best.1) {
                best = (format!("expgolomb:{}", eg.param), eg.expected);
            }
            out.value = best.1;
            out.code_param = Some(best.0);
        }
    }
    Ok(out)
}

/// `a` lies entirely below `b`. Codes with equal lengths (γ and
/// exponential-Golomb 0) never displace each other on rounding noise.
fn proven_better(a: ExpectedLength, b: ExpectedLength) -> bool {
    a.upper() < b.lower()
}

/// One CSV/JSON record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRecord {
    pub dist: String,
    pub param: String,
    pub method: String,
    pub code_param: String,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub infinite: bool,
}

pub fn records(rows: &[GridRow]) -> Vec<GridRecord> {
    rows.iter()
        .flat_map(|row| {
            row.cells.iter().map(move |c| GridRecord {
                dist: row.dist.family().to_string(),
                param: row.dist.param_label(),
                method: c.column.name().into(),
                code_param: c.code_param.clone().unwrap_or_default(),
                lo: c.value.interval().map(|i| i.lo),
                hi: c.value.interval().map(|i| i.hi),
                infinite: c.value.is_infinite(),
            })
        })
        .collect()
}

pub fn to_csv(rows: &[GridRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records(rows) {
        w.serialize(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV is UTF-8")
}

pub fn to_json(rows: &[GridRow]) -> String {
    serde_json::to_string_pretty(&records(rows)).expect("records serialize")
}

/// Human-readable table, one line per cell, with provenance and notes.
pub fn to_text(rows: &[GridRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:<12} {:>10} {:<14} {:<12} interval",
        "dist", "column", "value", "param", "method"
    );
    let mut notes = Vec::new();
    for row in rows {
        let dist = row.dist.to_string();
        for c in &row.cells {
            let (value, interval) = match c.value {
                ExpectedLength::Finite(i) => (
                    format!("{:.6}", i.mid()),
                    format!("[{:.9}, {:.9}]", i.lo, i.hi),
                ),
                ExpectedLength::Infinite => ("inf".into(), String::new()),
            };
            let mut line = format!(
                "{:<16} {:<12} {:>10} {:<14} {:<12} {}",
                dist,
                c.column.name(),
                value,
                c.code_param.as_deref().unwrap_or("-"),
                c.method,
                interval
            );
            if let Some(note) = c.note {
                notes.push(format!("{dist} {}: {note}", c.column));
                line.push_str(" *");
            }
            let _ = writeln!(s, "{}", line.trim_end());
        }
    }
    for n in notes {
        let _ = writeln!(s, "* {n}");
    }
    s
}
