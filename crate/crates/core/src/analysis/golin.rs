//! Golin's distribution-designed codes.
//!
//! Group `h` holds `2^(k_h)` consecutive symbols, each coded as
//! `1^(h−1) 0` followed by a `k_h`-bit index, so every group spends exactly
//! `2^(−h)` of the Kraft budget and `n(i) = h + k_h`.

use std::fmt;

use num_bigint::BigUint;

use crate::bitio::BitString;
use crate::distributions::{neg_p_lg_p, Distribution};
use crate::interval::Interval;

use super::expected::MAX_ANALYSIS_SYMBOL;

/// Group-size exponents `k_1, k_2, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DesignerCode {
    pub exponents: Vec<u32>,
}

impl DesignerCode {
    pub fn groups(&self) -> usize {
        self.exponents.len()
    }

    /// Number of symbols covered by the first `h` groups.
    pub fn boundary(&self, h: usize) -> u128 {
        self.exponents[..h].iter().map(|&k| 1u128 << k).sum()
    }

    /// `(h, index within group)` for symbol `i`, if covered.
    fn locate(&self, i: u64) -> Option<(usize, u64)> {
        let mut start = 1u128;
        for (g, &k) in self.exponents.iter().enumerate() {
            let end = start + (1u128 << k);
            if (i as u128) < end {
                return Some((g + 1, (i as u128 - start) as u64));
            }
            start = end;
        }
        None
    }

    pub fn length(&self, i: u64) -> Option<u64> {
        self.locate(i)
            .map(|(h, _)| h as u64 + self.exponents[h - 1] as u64)
    }

    pub fn encode(&self, i: u64) -> Option<BitString> {
        let (h, j) = self.locate(i)?;
        let k = self.exponents[h - 1];
        let mut out = BitString::with_capacity(h + k as usize);
        out.push_run(true, h - 1);
        out.push(false);
        out.push_bits_u128(j as u128, k);
        Some(out)
    }

    /// Kraft mass of the first `h` groups as `numerator / 2^h`.
    pub fn kraft_mass_exact(&self, h: usize) -> (BigUint, u64) {
        assert!(h <= self.groups());
        // group g holds 2^k_g leaves at depth g + k_g, together 2^(−g)
        let num = (1..=h as u64).fold(BigUint::ZERO, |acc, g| {
            acc + (BigUint::from(1u8) << (h as u64 - g))
        });
        (num, h as u64)
    }
}

impl fmt::Display for DesignerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("golin[")?;
        for (g, k) in self.exponents.iter().enumerate() {
            if g > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GolinAlg {
    /// Smallest group whose share of the remaining mass exceeds
    /// `(3 − √5)/2`.
    Alg1,
    /// Group whose share of the remaining mass is closest to one half.
    Alg2,
}

impl fmt::Display for GolinAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GolinAlg::Alg1 => "1",
            GolinAlg::Alg2 => "2",
        })
    }
}

/// Shares closer than this count as ties, which go to the smaller group.
const TIE: f64 = 1e-12;

/// Builds up to `h_max` groups, stopping early when the remaining mass
/// vanishes or the next group would pass `2^62`.
pub fn golin(dist: &dyn Distribution, h_max: usize, alg: GolinAlg) -> DesignerCode {
    assert!(h_max >= 1);
    let threshold = (3.0 - 5f64.sqrt()) / 2.0;
    let mut exponents = Vec::new();
    let mut covered = 0u64;
    while exponents.len() < h_max {
        let rest = dist.survival(covered + 1).mid();
        if rest <= 0.0 {
            break;
        }
        let share = |k: u32| 1.0 - dist.survival(covered + (1u64 << k) + 1).mid() / rest;
        let fits = |k: u32| k < 63 && covered + (1u64 << k) <= MAX_ANALYSIS_SYMBOL;
        let chosen = match alg {
            GolinAlg::Alg1 => (0..)
                .take_while(|&k| fits(k))
                .find(|&k| share(k) > threshold),
            GolinAlg::Alg2 => (0..)
                .take_while(|&k| fits(k))
                .find(|&k| share(k) >= 0.5)
                .map(|k| {
                    if k == 0 {
                        return 0;
                    }
                    let above = share(k) - 0.5;
                    let below = 0.5 - share(k - 1);
                    if below <= above + TIE {
                        k - 1
                    } else {
                        k
                    }
                }),
        };
        match chosen {
            Some(k) => {
                exponents.push(k);
                covered += 1u64 << k;
            }
            None => break,
        }
    }
    DesignerCode { exponents }
}

pub fn golin_alg1(dist: &dyn Distribution, h_max: usize) -> DesignerCode {
    golin(dist, h_max, GolinAlg::Alg1)
}

pub fn golin_alg2(dist: &dyn Distribution, h_max: usize) -> DesignerCode {
    golin(dist, h_max, GolinAlg::Alg2)
}

/// Estimate of the expected length of `dc` using its first `h` groups.
///
/// The head over those groups is exact. For the remaining mass `t` and tail
/// entropy `H_x`, any continuation within the Kraft budget `2^(−h)` costs
/// at least `h·t + t·lg t + H_x`; the upper end charges the tail the
/// lengths `h + 1 + 2⌊lg(i − K)⌋` of an Elias-γ continuation after the
/// prefix `1^h`.
pub fn designer_expected_length(dc: &DesignerCode, dist: &dyn Distribution, h: usize) -> Interval {
    assert!(h <= dc.groups(), "code has fewer than h groups");
    let mut head = Interval::zero();
    let mut start = 1u64;
    for (g, &k) in dc.exponents[..h].iter().enumerate() {
        let end = start + (1u64 << k);
        let mass = (dist.survival(start) - dist.survival(end)).max_lo(0.0);
        head = head + mass * (g as u64 + 1 + k as u64) as f64;
        start = end;
    }
    let x = start;
    let t = dist.survival(x);
    if t.hi <= 0.0 {
        return head;
    }
    let hf = h as f64;
    let tail_h = dist.tail_entropy(x);
    // t·lg t = −(−t lg t), taken over the enclosure of t
    let t_lg_t = -neg_p_lg_p(t);
    let lower = t * hf + t_lg_t + tail_h;

    let mut gamma_tail = Interval::zero();
    let mut l = 1u32;
    while l < 63
        && x.checked_add(1u64 << l)
            .is_some_and(|y| y <= MAX_ANALYSIS_SYMBOL)
    {
        gamma_tail = gamma_tail + dist.survival(x - 1 + (1u64 << l));
        l += 1;
    }
    let rest = remaining_survival_sum(dist, x, l);
    let upper = t * (hf + 1.0) + gamma_tail * 2.0 + rest * 2.0;
    head + Interval::new(lower.lo.max(0.0), upper.hi.max(lower.lo.max(0.0)))
}

/// Bound on `Σ_{L ≥ l} S(x − 1 + 2^L)`, the γ-continuation terms past the
/// enumerated range, from `S(y) ≤ φ/(ξ (y−1)^ξ)`.
fn remaining_survival_sum(dist: &dyn Distribution, x: u64, l: u32) -> Interval {
    if dist.survival(x).hi == 0.0 {
        return Interval::zero();
    }
    let Some(ps) = dist.power_law() else {
        return Interval::new(0.0, f64::INFINITY);
    };
    let xi = Interval::point(ps.xi);
    let bound = |y: Interval| ps.phi_enclosure / (xi * (y - 1.0).powf(ps.xi));
    const LAST: i32 = 200;
    let mut sum = Interval::zero();
    for big_l in l as i32..=LAST {
        sum = sum + bound(Interval::from_u64(x - 1) + Interval::point(2f64.powi(big_l)));
    }
    // past 2^LAST each doubling shrinks the bound by 2^(−ξ)
    let ratio = Interval::point(2.0).powf(-ps.xi);
    let rest = bound(Interval::point(2f64.powi(LAST + 1))) / (Interval::point(1.0) - ratio);
    Interval::new(0.0, (sum + rest).hi)
}
