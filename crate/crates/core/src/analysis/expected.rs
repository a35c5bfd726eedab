//! Expected-length enclosures and best-parameter search.

use crate::codes::{CodeId, Family};
use crate::distributions::{DistId, Distribution};
use crate::interval::Interval;

use super::sandwich::{length_sandwich, tail_expected_length};
use super::{AnalysisError, ExpectedLength, Method};

/// Largest symbol the analysis enumerates explicitly.
pub const MAX_ANALYSIS_SYMBOL: u64 = 1 << 62;

/// First truncation point tried.
const START_X: u64 = 1 << 10;

/// Truncation limit for linear-length codes, whose runs are short.
const MAX_LINEAR_X: u64 = 1 << 24;

/// Enclosure of `Σ_i p(i)·n(i)`, of width at most `precision`, or
/// `Infinite` when the sum diverges.
pub fn expected_length(
    code: CodeId,
    dist: DistId,
    precision: f64,
) -> Result<ExpectedLength, AnalysisError> {
    expected_length_with_method(code, dist, precision).map(|(e, _)| e)
}

pub(crate) fn expected_length_with_method(
    code: CodeId,
    dist: DistId,
    precision: f64,
) -> Result<(ExpectedLength, Method), AnalysisError> {
    assert!(precision > 0.0);
    match code.family() {
        Family::Unary | Family::Golomb => golomb_expected(code, dist, precision),
        _ => log_expected(code, dist, precision)
            .map(|i| (ExpectedLength::Finite(i), Method::RigorousSandwich)),
    }
}

/// Summation by parts:
/// `Σ_{i<x} p(i)n(i) = n(1) + Σ_{2≤i<x} (n(i) − n(i−1))·S(i) − n(x−1)·S(x)`.
///
/// Only the jumps of `n` cost a survival evaluation, which keeps the head
/// exact and cheap out to `x = 2^62`.
struct PartsHead<'a> {
    code: CodeId,
    dist: &'a DistId,
    runs: crate::codes::Runs,
    /// `n(1) + Σ_{2≤i≤last} Δn(i) S(i)`.
    acc: Interval,
    /// Length of the run containing `last`.
    current: u64,
    /// Symbols `≤ last` are included.
    last: u64,
    pending: Option<crate::codes::LengthRun>,
}

impl<'a> PartsHead<'a> {
    fn new(code: CodeId, dist: &'a DistId) -> Self {
        let mut runs = code.runs(1, MAX_ANALYSIS_SYMBOL);
        let first = runs.next().expect("code has at least one run");
        PartsHead {
            code,
            dist,
            runs,
            acc: Interval::from_u64(first.length),
            current: first.length,
            last: first.last,
            pending: None,
        }
    }

    /// Includes jumps up to symbol `x − 1`.
    fn advance_to(&mut self, x: u64) {
        while self.last < x - 1 {
            let run = match self.pending.take().or_else(|| self.runs.next()) {
                Some(r) => r,
                None => break,
            };
            if run.first > x - 1 {
                self.pending = Some(run);
                break;
            }
            let jump = run.length - self.current;
            self.acc = self.acc + Interval::from_u64(jump) * self.dist.survival(run.first);
            self.current = run.length;
            self.last = run.last;
        }
        debug_assert_eq!(self.current, self.code.raw_length(x - 1));
    }

    /// Enclosure of `Σ_i p(i)n(i)` given an enclosure of the tail
    /// `T(x) = Σ_{i≥x} p(i)n(i)`.
    fn total(&self, x: u64, tail: Interval) -> Interval {
        let s = self.dist.survival(x);
        let n = Interval::from_u64(self.current);
        // Σ_{i≥x} p(i)(n(i) − n(x−1)) is nonnegative.
        let lo = (Interval::point(tail.lo) - n * s.hi).lo.max(0.0);
        let hi = (Interval::point(tail.hi) - n * s.lo).hi.max(lo);
        self.acc + Interval::new(lo, hi)
    }
}

fn log_expected(code: CodeId, dist: DistId, precision: f64) -> Result<Interval, AnalysisError> {
    let sw = length_sandwich(code)?;
    let ps = dist.prob_sandwich()?;
    let mut head = PartsHead::new(code, &dist);
    let mut best: Option<Interval> = None;
    let mut x = START_X.max(sw.i_min.max(ps.i_min) + 1);
    loop {
        head.advance_to(x);
        let est = head.total(x, tail_expected_length(&sw, &ps, x));
        let est = match best {
            Some(b) => b.intersect(&est).unwrap_or(est),
            None => est,
        };
        best = Some(est);
        if est.width() <= precision {
            return Ok(est);
        }
        // rounding in the head only widens from here on
        if x > MAX_ANALYSIS_SYMBOL / 2 || head.acc.width() > precision {
            return Err(AnalysisError::PrecisionUnreachable {
                code,
                dist,
                precision,
            });
        }
        x *= 2;
    }
}

/// Golomb lengths grow linearly, so the expectation is finite exactly when
/// the mean is. `G1` (unary) has `n(i) = i` and expectation equal to the
/// mean; larger `k` use `i/k + ⌊lg k⌋ ≤ n(i) ≤ i/k + 1 − 1/k + ⌈lg k⌉`
/// with first-moment tail bounds.
fn golomb_expected(
    code: CodeId,
    dist: DistId,
    precision: f64,
) -> Result<(ExpectedLength, Method), AnalysisError> {
    let mean = match dist.mean() {
        None => return Ok((ExpectedLength::Infinite, Method::ClosedForm)),
        Some(m) => m,
    };
    let k = code.param().max(1) as u64;
    if k == 1 {
        return Ok((ExpectedLength::Finite(mean), Method::ClosedForm));
    }
    let ps = dist.prob_sandwich()?;
    let kf = Interval::point(k as f64);
    let floor_lg = (63 - k.leading_zeros()) as f64;
    let ceil_lg = if k.is_power_of_two() {
        floor_lg
    } else {
        floor_lg + 1.0
    };
    let c_lo = Interval::point(floor_lg);
    let c_hi = Interval::point(1.0) - Interval::point(1.0) / kf + ceil_lg;
    let mut head = PartsHead::new(code, &dist);
    let mut best: Option<Interval> = None;
    let mut x = START_X;
    while x <= MAX_LINEAR_X {
        head.advance_to(x);
        if let Some(m) = ps.first_moment_tail(x) {
            let s = dist.survival(x);
            let lo = Interval::point(m.lo) / kf + c_lo * s.lo;
            let hi = Interval::point(m.hi) / kf + c_hi * s.hi;
            let est = head.total(x, Interval::new(lo.lo.max(0.0), hi.hi));
            let est = match best {
                Some(b) => b.intersect(&est).unwrap_or(est),
                None => est,
            };
            best = Some(est);
            if est.width() <= precision {
                return Ok((ExpectedLength::Finite(est), Method::RigorousSandwich));
            }
        }
        x *= 2;
    }
    Err(AnalysisError::PrecisionUnreachable {
        code,
        dist,
        precision,
    })
}

/// Direct enclosure of `Σ_{first ≤ i < end} p(i)·n(i)`, one term per
/// symbol. Used as an independent check of the summation-by-parts engine.
pub fn brute_force_partial(code: CodeId, dist: &DistId, first: u64, end: u64) -> Interval {
    let mut sum = Interval::zero();
    let mut block = Interval::zero();
    let mut count = 0u32;
    dist.for_each_pmf(first, end, |i, p| {
        block = block + p * code.raw_length(i) as f64;
        count += 1;
        // blocked accumulation keeps the running sum's rounding small
        if count == 4096 {
            sum = sum + block;
            block = Interval::zero();
            count = 0;
        }
    });
    sum + block
}

/// Result of a best-parameter search.
#[derive(Debug, Clone, PartialEq)]
pub struct BestParameter {
    pub param: i32,
    pub expected: ExpectedLength,
    /// Every parameter evaluated, in search order.
    pub evaluated: Vec<(i32, ExpectedLength)>,
}

/// Parameter of `family` (CodeK, ExpGolomb or Golomb) minimizing the upper
/// end of the expected-length enclosure.
///
/// The search stops in each direction once no further parameter can win:
/// increasing `k` is cut off when `n_k(1)`, a lower bound on every
/// codeword length, exceeds the best upper end; decreasing `k` for Code k
/// is cut off by the lower bound
/// `Σ_{i≤κ} i·p(i) + (κ+1)·S(κ+1)` for Code −κ, which grows with κ.
pub fn best_parameter(
    family: Family,
    dist: DistId,
    precision: f64,
) -> Result<BestParameter, AnalysisError> {
    let mut evaluated: Vec<(i32, ExpectedLength)> = Vec::new();
    let mut eval = |k: i32| -> Result<ExpectedLength, AnalysisError> {
        let code = CodeId::new(family, k)?;
        let e = expected_length(code, dist, precision)?;
        evaluated.push((k, e));
        Ok(e)
    };
    match family {
        Family::CodeK => {
            let mut best = (0, eval(0)?);
            for k in 1..=32 {
                if (k + 2) as f64 > best.1.upper() {
                    break;
                }
                let e = eval(k)?;
                if e.upper() < best.1.upper() {
                    best = (k, e);
                }
            }
            let mut unary_head = Interval::zero();
            for kappa in 1..=64i32 {
                unary_head = unary_head + dist.pmf_interval(kappa as u64) * kappa as f64;
                let lb = unary_head + dist.survival(kappa as u64 + 1) * (kappa + 1) as f64;
                if lb.lo > best.1.upper() {
                    break;
                }
                let e = eval(-kappa)?;
                if e.upper() < best.1.upper() {
                    best = (-kappa, e);
                }
            }
            Ok(BestParameter {
                param: best.0,
                expected: best.1,
                evaluated,
            })
        }
        Family::ExpGolomb => {
            let mut best = (0, eval(0)?);
            for k in 1..=63 {
                if (k + 1) as f64 > best.1.upper() {
                    break;
                }
                let e = eval(k)?;
                if e.upper() < best.1.upper() {
                    best = (k, e);
                }
            }
            Ok(BestParameter {
                param: best.0,
                expected: best.1,
                evaluated,
            })
        }
        Family::Golomb => {
            let mut best = (1, eval(1)?);
            if best.1.is_infinite() {
                // Every Golomb code diverges together with the mean.
                return Ok(BestParameter {
                    param: 1,
                    expected: ExpectedLength::Infinite,
                    evaluated,
                });
            }
            for k in 2..=i16::MAX as i32 {
                let floor_lg = 31 - (k as u32).leading_zeros();
                if (1 + floor_lg) as f64 > best.1.upper() {
                    break;
                }
                let e = eval(k)?;
                if e.upper() < best.1.upper() {
                    best = (k, e);
                }
            }
            Ok(BestParameter {
                param: best.0,
                expected: best.1,
                evaluated,
            })
        }
        other => {
            let code = CodeId::new(other, 0)?;
            let e = expected_length(code, dist, precision)?;
            Ok(BestParameter {
                param: 0,
                expected: e,
                evaluated: vec![(0, e)],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_on_ys1_is_three() {
        let d = DistId::yule_simon(1.0).unwrap();
        let e = expected_length(CodeId::GAMMA, d, 1e-9).unwrap();
        let i = e.interval().unwrap();
        assert!(i.contains(3.0) && i.width() <= 1e-9, "{i:?}");
    }

    #[test]
    fn parts_head_matches_brute_force() {
        let d = DistId::zeta(2.5).unwrap();
        for code in [
            CodeId::code_k(-2).unwrap(),
            CodeId::YOKOO,
            CodeId::golomb(3).unwrap(),
        ] {
            let mut head = PartsHead::new(code, &d);
            let x = 5000;
            head.advance_to(x);
            let s = d.survival(x);
            let by_parts = head.acc - s * head.current as f64;
            let direct = brute_force_partial(code, &d, 1, x);
            assert!((by_parts.mid() - direct.mid()).abs() < 1e-12, "{code}");
        }
    }

    #[test]
    fn golomb_divergence_follows_mean() {
        for k in [1, 2, 5] {
            let g = CodeId::golomb(k).unwrap();
            assert!(expected_length(g, DistId::gauss_kuzmin(), 1e-4)
                .unwrap()
                .is_infinite());
            assert!(!expected_length(g, DistId::yule_simon(2.0).unwrap(), 1e-4)
                .unwrap()
                .is_infinite());
        }
    }
}
