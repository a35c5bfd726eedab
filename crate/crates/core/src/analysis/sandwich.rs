//! Logarithmic envelopes of codeword lengths and the tail integrals they
//! yield.

use std::collections::HashMap;
use std::f64::consts::LOG2_E;
use std::sync::{Mutex, OnceLock};

use crate::codes::{CodeId, Family};
use crate::distributions::ProbSandwich;
use crate::interval::Interval;

use super::expected::MAX_ANALYSIS_SYMBOL;
use super::AnalysisError;

/// `τ·ln(i+μ+1) + α ≤ n(i) ≤ υ·ln(i+μ) + β` for `i ≥ i_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthSandwich {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub tau: f64,
    pub upsilon: f64,
    pub i_min: u64,
}

/// Float slack absorbed into `α` and `β` once a sandwich has been checked.
const VALIDATION_SLACK: f64 = 1e-9;

impl LengthSandwich {
    pub fn lower(&self, i: u64) -> f64 {
        self.tau * (i as f64 + self.mu + 1.0).ln() + self.alpha
    }

    pub fn upper(&self, i: u64) -> f64 {
        self.upsilon * (i as f64 + self.mu).ln() + self.beta
    }

    /// Largest symbol `≥ i_min` violating either bound, searching every
    /// run of equal length up to `MAX_ANALYSIS_SYMBOL`. The lower bound is
    /// increasing so it is checked at run ends; the upper bound at run
    /// starts.
    fn last_violation(&self, code: CodeId) -> Option<u64> {
        let mut worst = None;
        for run in code.runs(self.i_min, MAX_ANALYSIS_SYMBOL) {
            let n = run.length as f64;
            if self.lower(run.last) > n + VALIDATION_SLACK {
                // the failing part of the run is a suffix; the whole run goes
                worst = Some(run.last);
            }
            if self.upper(run.first) < n - VALIDATION_SLACK {
                let mut i = run.first;
                while i < run.last && self.upper(i + 1) < n - VALIDATION_SLACK {
                    i += 1;
                }
                worst = Some(worst.map_or(i, |w: u64| w.max(i)));
            }
        }
        worst
    }

    fn widened(mut self) -> Self {
        self.alpha -= 2.0 * VALIDATION_SLACK;
        self.beta += 2.0 * VALIDATION_SLACK;
        self
    }
}

/// Published-form or fitted sandwich for a logarithmic-length code,
/// validated over all symbols up to `2^62` and cached.
///
/// When the nominal `i_min` fails, it is raised past the last violation if
/// that lies within 64 symbols of the nominal start.
pub fn length_sandwich(code: CodeId) -> Result<LengthSandwich, AnalysisError> {
    static CACHE: OnceLock<Mutex<HashMap<CodeId, LengthSandwich>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(sw) = cache.lock().unwrap().get(&code) {
        return Ok(*sw);
    }
    let sw = build(code)?;
    cache.lock().unwrap().insert(code, sw);
    Ok(sw)
}

fn build(code: CodeId) -> Result<LengthSandwich, AnalysisError> {
    let two_lg_e = 2.0 * LOG2_E;
    let k = code.param();
    let nominal = match code.family() {
        Family::EliasGamma | Family::Yokoo => LengthSandwich {
            alpha: -1.0,
            beta: 1.0,
            mu: 0.0,
            tau: two_lg_e,
            upsilon: two_lg_e,
            i_min: 1,
        },
        Family::Levenshtein => LengthSandwich {
            alpha: 2.0,
            beta: 2.0,
            mu: -1.0,
            tau: LOG2_E,
            upsilon: 2.5 * LOG2_E,
            i_min: 2,
        },
        Family::CodeK if k <= 0 => LengthSandwich {
            alpha: 1.0 - 2.0 * 3f64.log2() - k as f64,
            beta: -1.0 - k as f64,
            mu: 2.0 + k as f64,
            tau: two_lg_e,
            upsilon: two_lg_e,
            i_min: (1 - k) as u64,
        },
        Family::CodeK => fit(code, 3.0 * (1u64 << k) as f64 - 2.0, two_lg_e, two_lg_e),
        Family::ExpGolomb => fit(code, (1u64 << k) as f64 - 1.0, two_lg_e, two_lg_e),
        Family::EliasDelta | Family::EliasOmega => fit(code, 0.0, LOG2_E, 1.5 * LOG2_E),
        Family::Unary | Family::Golomb => {
            return Err(AnalysisError::SandwichValidationFailed(code))
        }
    };
    let mut sw = nominal;
    if let Some(bad) = sw.last_violation(code) {
        if bad >= nominal.i_min + 64 {
            return Err(AnalysisError::SandwichValidationFailed(code));
        }
        sw.i_min = bad + 1;
        if sw.last_violation(code).is_some() {
            return Err(AnalysisError::SandwichValidationFailed(code));
        }
    }
    Ok(sw.widened())
}

/// Fits `α` (`β`) as the smallest (largest) offset of `n(i)` from the
/// logarithmic curve over all runs, then moves each one unit outward.
fn fit(code: CodeId, mu: f64, tau: f64, upsilon: f64) -> LengthSandwich {
    let mut sw = LengthSandwich {
        alpha: f64::INFINITY,
        beta: f64::NEG_INFINITY,
        mu,
        tau,
        upsilon,
        i_min: 1,
    };
    for run in code.runs(1, MAX_ANALYSIS_SYMBOL) {
        let n = run.length as f64;
        sw.alpha = sw.alpha.min(n - tau * (run.last as f64 + mu + 1.0).ln());
        sw.beta = sw.beta.max(n - upsilon * (run.first as f64 + mu).ln());
    }
    sw.alpha -= 1.0;
    sw.beta += 1.0;
    sw
}

/// Enclosure of `Σ_{i≥x} p(i)·n(i)` from the two sandwiches.
///
/// Requires `x > max(i_min, 2)` for both sandwiches. The lower end is
/// clamped at zero.
pub fn tail_expected_length(sw: &LengthSandwich, ps: &ProbSandwich, x: u64) -> Interval {
    assert!(
        x > sw.i_min.max(ps.i_min).max(2),
        "tail bound needs x beyond both sandwiches"
    );
    let phi = ps.phi_enclosure;
    let xi = Interval::point(ps.xi);
    let xv = Interval::from_u64(x);
    let tau = Interval::point(sw.tau);
    let ups = Interval::point(sw.upsilon);

    let lo_num = tau * phi * (xv + ps.kappa.min(sw.mu)).ln() + tau * phi / xi + phi * sw.alpha;
    let lo = lo_num / (xi * (xv + ps.kappa).powf(ps.xi));
    let hi_num = ups * phi * (xv + sw.mu.max(-1.0)).ln() + ups * phi / xi + phi * sw.beta;
    let hi = hi_num / (xi * (xv - 1.0).powf(ps.xi));
    let lo = lo.lo.max(0.0);
    Interval::new(lo.min(hi.hi), hi.hi)
}
