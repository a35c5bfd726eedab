//! Gauss-Kuzmin, Yule-Simon and zeta distributions over `{1, 2, 3, ...}`.
//!
//! Every family exposes its probability mass function both as a point value
//! and as a rigorous [`Interval`], and its survival function
//! `S(x) = Σ_{i≥x} p(i)` in closed or asymptotic form, so partial sums never
//! need to be accumulated term by term.

mod sampler;
pub mod simple;
pub mod special;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{consts, Interval};

pub use sampler::Sampler;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("parameter {param} out of range for {family}")]
    InvalidParameter { family: DistFamily, param: f64 },
    #[error("unknown distribution {0:?}")]
    UnknownFamily(String),
    #[error("malformed distribution name {0:?}")]
    Malformed(String),
    #[error("no i_min <= 64 satisfies the probability sandwich for {0}")]
    SandwichValidationFailed(DistId),
    #[error("entropy enclosure of {dist} cannot reach width {precision:e}")]
    PrecisionUnreachable { dist: DistId, precision: f64 },
}

/// Interface shared by the named families and the small test distributions
/// in [`simple`].
pub trait Distribution: Send + Sync {
    fn label(&self) -> String;

    /// `p(i)` as a float.
    fn pmf(&self, i: u64) -> f64;

    /// Enclosure of `p(i)`.
    fn pmf_interval(&self, i: u64) -> Interval {
        Interval::point(self.pmf(i))
    }

    /// Enclosure of `S(x) = Σ_{i≥x} p(i)` for `x ≥ 1`.
    fn survival(&self, x: u64) -> Interval;

    /// Enclosure of `H_x = Σ_{i≥x} −p(i) lg p(i)`.
    fn tail_entropy(&self, x: u64) -> Interval;

    /// Largest symbol with nonzero probability, for finite supports.
    fn support_max(&self) -> Option<u64> {
        None
    }

    /// Power-law envelope of the pmf, when one is known.
    fn power_law(&self) -> Option<ProbSandwich> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DistFamily {
    GaussKuzmin,
    YuleSimon,
    Zeta,
}

impl fmt::Display for DistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistFamily::GaussKuzmin => "gauss-kuzmin",
            DistFamily::YuleSimon => "yule-simon",
            DistFamily::Zeta => "zeta",
        })
    }
}

/// A distribution family with its real parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistId {
    family: DistFamily,
    param: f64,
}

impl DistId {
    pub fn gauss_kuzmin() -> DistId {
        DistId {
            family: DistFamily::GaussKuzmin,
            param: 0.0,
        }
    }

    /// Yule-Simon with shape `ρ > 0`.
    pub fn yule_simon(rho: f64) -> Result<DistId, DistError> {
        if !(rho > 0.0 && rho.is_finite() && rho <= 1e3) {
            return Err(DistError::InvalidParameter {
                family: DistFamily::YuleSimon,
                param: rho,
            });
        }
        Ok(DistId {
            family: DistFamily::YuleSimon,
            param: rho,
        })
    }

    /// Zeta with exponent `s > 1`.
    pub fn zeta(s: f64) -> Result<DistId, DistError> {
        if !(s > 1.0 && s.is_finite() && s <= 1e3) {
            return Err(DistError::InvalidParameter {
                family: DistFamily::Zeta,
                param: s,
            });
        }
        Ok(DistId {
            family: DistFamily::Zeta,
            param: s,
        })
    }

    /// The nine rows of the standard comparison grid.
    pub fn standard_set() -> Vec<DistId> {
        let mut v = vec![DistId::gauss_kuzmin()];
        v.extend([1.0, 1.5, 2.0, 2.5, 3.0].map(|r| DistId::yule_simon(r).unwrap()));
        v.extend([2.0, 2.5, 3.0].map(|s| DistId::zeta(s).unwrap()));
        v
    }

    pub fn family(&self) -> DistFamily {
        self.family
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    /// Parameter as displayed (empty for Gauss-Kuzmin).
    pub fn param_label(&self) -> String {
        match self.family {
            DistFamily::GaussKuzmin => String::new(),
            _ => format!("{}", self.param),
        }
    }

    fn integer_rho(&self) -> Option<u32> {
        (self.family == DistFamily::YuleSimon && self.param.fract() == 0.0 && self.param <= 20.0)
            .then_some(self.param as u32)
    }

    /// Closed-form mean, `None` when it is infinite.
    pub fn mean(&self) -> Option<Interval> {
        match self.family {
            DistFamily::GaussKuzmin => None,
            DistFamily::YuleSimon => {
                let r = Interval::point(self.param);
                (self.param > 1.0).then(|| r / (r - 1.0))
            }
            DistFamily::Zeta => (self.param > 2.0)
                .then(|| special::zeta(self.param - 1.0) / special::zeta(self.param)),
        }
    }

    /// `σ_x = Σ_{i<x} p(i)`.
    ///
    /// Summed with Neumaier compensation for `x ≤ 2^20`, and taken as
    /// `1 − S(x)` beyond.
    pub fn partial_sum(&self, x: u64) -> f64 {
        assert!(x >= 1);
        if x > 1 << 20 {
            return (Interval::point(1.0) - self.survival(x)).mid();
        }
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        self.for_each_pmf(1, x, |_, p| {
            let p = p.mid();
            let t = sum + p;
            if sum.abs() >= p.abs() {
                comp += (sum - t) + p;
            } else {
                comp += (p - t) + sum;
            }
            sum = t;
        });
        sum + comp
    }

    /// Calls `f(i, p(i))` for `first ≤ i < end` with rigorous enclosures.
    ///
    /// Yule-Simon uses the ratio recurrence `p(i+1) = p(i)·i/(i+ρ+1)`,
    /// restarted from the closed form every 4096 steps to keep the
    /// accumulated widening small.
    pub fn for_each_pmf(&self, first: u64, end: u64, mut f: impl FnMut(u64, Interval)) {
        match self.family {
            DistFamily::YuleSimon => {
                let rho1 = Interval::point(self.param + 1.0);
                let mut p = Interval::zero();
                for i in first..end {
                    if i == first || (i - first).is_multiple_of(4096) {
                        p = self.pmf_interval(i);
                    } else {
                        let prev = Interval::from_u64(i - 1);
                        p = p * prev / (prev + rho1);
                    }
                    f(i, p);
                }
            }
            _ => {
                for i in first..end {
                    f(i, self.pmf_interval(i));
                }
            }
        }
    }

    /// `ln(Γ(x+ρ)/Γ(x))` enclosure.
    fn ys_ln_ratio(&self, x: u64) -> Interval {
        special::ln_gamma_diff(Interval::from_u64(x), self.param)
    }

    /// Probability sandwich `φ/(i+κ)^(ξ+1) ≤ p(i) ≤ φ/i^(ξ+1)`, validated
    /// for `i_min ≤ i ≤ 10^6` and cached per distribution.
    pub fn prob_sandwich(&self) -> Result<ProbSandwich, DistError> {
        static CACHE: OnceLock<Mutex<HashMap<(DistFamily, u64), ProbSandwich>>> = OnceLock::new();
        let key = (self.family, self.param.to_bits());
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ps) = cache.lock().unwrap().get(&key) {
            return Ok(ps.clone());
        }
        let ps = self.build_sandwich()?;
        cache.lock().unwrap().insert(key, ps.clone());
        Ok(ps)
    }

    fn build_sandwich(&self) -> Result<ProbSandwich, DistError> {
        let (xi, phi, kappa) = match self.family {
            DistFamily::GaussKuzmin => (1.0, consts::log2_e(), 1.0),
            DistFamily::Zeta => (self.param - 1.0, special::zeta(self.param).recip(), 0.0),
            DistFamily::YuleSimon => (
                self.param,
                special::gamma_1p(self.param) * self.param,
                self.param + 1.0,
            ),
        };
        let mut i_min = 1u64;
        let slack = 1e-12;
        let phi_m = phi.mid();
        self.for_each_pmf(1, SANDWICH_CHECK_LIMIT + 1, |i, p| {
            let p = p.mid();
            let a = xi + 1.0;
            let lo = phi_m / (i as f64 + kappa).powf(a);
            let hi = phi_m / (i as f64).powf(a);
            if lo > p * (1.0 + slack) || p > hi * (1.0 + slack) {
                i_min = i + 1;
            }
        });
        if i_min > 64 {
            return Err(DistError::SandwichValidationFailed(*self));
        }
        Ok(ProbSandwich {
            xi,
            phi: phi_m,
            phi_enclosure: phi,
            kappa,
            i_min,
        })
    }

    /// Rigorous enclosure of the entropy `H(P)` in bits, of width at most
    /// `precision`.
    pub fn entropy_interval(&self, precision: f64) -> Result<Interval, DistError> {
        assert!(precision > 0.0);
        let ps = self.prob_sandwich()?;
        let mut head = Interval::zero();
        let mut done = 1u64;
        let mut x = 1u64 << 10;
        let mut best: Option<Interval> = None;
        while x <= 1_000_000_000 {
            self.for_each_pmf(done, x, |_, p| head = head + neg_p_lg_p(p));
            done = x;
            // rounding in the head only widens from here on
            if head.width() > precision {
                break;
            }
            if let Some(tail) = ps.entropy_tail(x) {
                let est = head + tail;
                let est = match best {
                    Some(b) => b.intersect(&est).unwrap_or(est),
                    None => est,
                };
                best = Some(est);
                if est.width() <= precision {
                    return Ok(est);
                }
            }
            x *= 2;
        }
        Err(DistError::PrecisionUnreachable {
            dist: *self,
            precision,
        })
    }
}

/// Symbols checked when validating a probability sandwich.
pub const SANDWICH_CHECK_LIMIT: u64 = 1_000_000;

/// `−p lg p` over an enclosure of `p ∈ [0, 1]`.
pub fn neg_p_lg_p(p: Interval) -> Interval {
    let eval = |v: f64| -> Interval {
        if v <= 0.0 {
            return Interval::zero();
        }
        let v = Interval::point(v);
        -(v * v.log2())
    };
    let a = eval(p.lo.max(0.0));
    let b = eval(p.hi.min(1.0));
    let lo = a.lo.min(b.lo).max(0.0);
    let mut hi = a.hi.max(b.hi);
    let peak = (-1.0f64).exp();
    if p.lo < peak && peak < p.hi {
        // maximum lg(e)/e at p = 1/e
        hi = hi.max(
            (std::f64::consts::LOG2_E / std::f64::consts::E)
                .next_up()
                .next_up(),
        );
    }
    Interval::new(lo, hi)
}

impl Distribution for DistId {
    fn label(&self) -> String {
        self.to_string()
    }

    fn pmf(&self, i: u64) -> f64 {
        assert!(i >= 1, "symbols start at 1");
        let x = i as f64;
        match self.family {
            DistFamily::GaussKuzmin => {
                -(-1.0 / ((x + 1.0) * (x + 1.0))).ln_1p() * std::f64::consts::LOG2_E
            }
            DistFamily::Zeta => x.powf(-self.param) / special::zeta(self.param).mid(),
            DistFamily::YuleSimon => self.pmf_interval(i).mid(),
        }
    }

    fn pmf_interval(&self, i: u64) -> Interval {
        assert!(i >= 1, "symbols start at 1");
        let x = Interval::from_u64(i);
        match self.family {
            DistFamily::GaussKuzmin => {
                let u = Interval::point(1.0) / ((x + 1.0) * (x + 1.0));
                -(-u).ln_1p() * consts::log2_e()
            }
            DistFamily::Zeta => x.powf(-self.param) / special::zeta(self.param),
            DistFamily::YuleSimon => {
                let rho = Interval::point(self.param);
                self.survival(i) * rho / (x + rho)
            }
        }
    }

    fn survival(&self, x: u64) -> Interval {
        assert!(x >= 1);
        if x == 1 {
            return Interval::point(1.0);
        }
        let xi = Interval::from_u64(x);
        match self.family {
            DistFamily::GaussKuzmin => xi.recip().ln_1p() * consts::log2_e(),
            DistFamily::Zeta => (special::power_tail(self.param, x) / special::zeta(self.param))
                .min(Interval::point(1.0)),
            DistFamily::YuleSimon => {
                let s = if let Some(r) = self.integer_rho() {
                    // ρ! / (x(x+1)···(x+ρ−1))
                    (0..r).fold(Interval::point(1.0), |acc, j| {
                        acc * (j + 1) as f64 / (xi + j as f64)
                    })
                } else {
                    (special::ln_gamma_1p(self.param) - self.ys_ln_ratio(x)).exp()
                };
                s.min(Interval::point(1.0))
            }
        }
    }

    fn power_law(&self) -> Option<ProbSandwich> {
        self.prob_sandwich().ok()
    }

    fn tail_entropy(&self, x: u64) -> Interval {
        const DIRECT: u64 = 1 << 10;
        let ps = self
            .prob_sandwich()
            .expect("sandwich validated for named families");
        let start = x.max(1);
        if start >= DIRECT {
            if let Some(t) = ps.entropy_tail(start) {
                return t;
            }
        }
        let mut head = Interval::zero();
        let mid = start.max(DIRECT);
        self.for_each_pmf(start, mid, |_, p| head = head + neg_p_lg_p(p));
        head + ps
            .entropy_tail(mid)
            .expect("sandwich entropy tail holds from 2^10")
    }
}

impl fmt::Display for DistId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            DistFamily::GaussKuzmin => write!(f, "gauss-kuzmin"),
            fam => write!(f, "{}:{}", fam, self.param),
        }
    }
}

impl FromStr for DistId {
    type Err = DistError;

    /// `gauss-kuzmin` (or `gk`), `yule-simon:ρ` (or `ys:ρ`), `zeta:s`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let value = || -> Result<f64, DistError> {
            param
                .ok_or_else(|| DistError::Malformed(s.to_string()))?
                .trim()
                .parse::<f64>()
                .map_err(|_| DistError::Malformed(s.to_string()))
        };
        let norm: String = name
            .to_ascii_lowercase()
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect();
        match norm.as_str() {
            "gausskuzmin" | "gk" => {
                if param.is_some() {
                    return Err(DistError::Malformed(s.to_string()));
                }
                Ok(DistId::gauss_kuzmin())
            }
            "yulesimon" | "ys" | "yule" => DistId::yule_simon(value()?),
            "zeta" | "zipf" => DistId::zeta(value()?),
            _ => Err(DistError::UnknownFamily(name.to_string())),
        }
    }
}

/// Power-law envelope `φ/(i+κ)^(ξ+1) ≤ p(i) ≤ φ/i^(ξ+1)` for `i ≥ i_min`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbSandwich {
    pub xi: f64,
    pub phi: f64,
    /// Rigorous enclosure of `phi`.
    pub phi_enclosure: Interval,
    pub kappa: f64,
    pub i_min: u64,
}

impl ProbSandwich {
    /// `∫_X^∞ φ(a lg t − lg φ) t^(−a) dt` with `a = ξ+1`.
    fn entropy_integral(&self, big_x: Interval) -> Interval {
        let phi = self.phi_enclosure;
        let a = Interval::point(self.xi + 1.0);
        let am1 = Interval::point(self.xi);
        let xp = big_x.powf(-self.xi);
        let ln_x = big_x.ln();
        let inner = a * (xp * ln_x / am1 + xp / (am1 * am1)) - phi.ln() * xp / am1;
        phi * inner * consts::log2_e()
    }

    /// Enclosure of `H_x = Σ_{i≥x} −p(i) lg p(i)`, or `None` when `x` is
    /// too small for the integral comparison to be valid.
    pub fn entropy_tail(&self, x: u64) -> Option<Interval> {
        let xf = x as f64;
        // t ↦ φ(a lg t − lg φ)/t^a must be decreasing from x−1 on, and the
        // upper envelope must stay below 1/e so −p lg p is increasing in p.
        let knee = (std::f64::consts::E * self.phi).powf(1.0 / (self.xi + 1.0));
        if x < self.i_min.max(2) || xf - 1.0 <= knee * (1.0 + 1e-9) + 1.0 {
            return None;
        }
        let xi = Interval::from_u64(x);
        let lo = self.entropy_integral(xi + self.kappa);
        let hi = self.entropy_integral(xi - 1.0);
        Some(Interval::new(lo.lo.max(0.0), hi.hi))
    }

    /// Enclosure of `Σ_{i≥x} i·p(i)` for `ξ > 1`.
    pub fn first_moment_tail(&self, x: u64) -> Option<Interval> {
        if self.xi <= 1.0 || x < self.i_min.max(2) || (x as f64) <= self.kappa / self.xi + 1.0 {
            return None;
        }
        let phi = self.phi_enclosure;
        let xm1 = Interval::point(self.xi - 1.0);
        let xi = Interval::from_u64(x);
        let hi = phi * (xi - 1.0).powf(1.0 - self.xi) / xm1;
        let xk = xi + self.kappa;
        let lo = phi
            * (xk.powf(1.0 - self.xi) / xm1
                - Interval::point(self.kappa) * xk.powf(-self.xi) / self.xi);
        Some(Interval::new(lo.lo.max(0.0), hi.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ys(r: f64) -> DistId {
        DistId::yule_simon(r).unwrap()
    }

    #[test]
    fn pmf_examples() {
        assert!((ys(1.0).pmf(2) - 1.0 / 6.0).abs() < 1e-16);
        assert!((DistId::gauss_kuzmin().pmf(1) - (4.0f64 / 3.0).log2()).abs() < 1e-16);
        assert!(
            (DistId::zeta(2.0).unwrap().pmf(1) - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15
        );
    }

    #[test]
    fn ys_non_integer_matches_recurrence() {
        let d = ys(2.5);
        let mut p = 2.5 / 3.5;
        for i in 1..2000u64 {
            let q = d.pmf_interval(i);
            assert!((q.mid() - p).abs() <= 1e-12 * p, "i={i} {q:?} vs {p}");
            p *= i as f64 / (i as f64 + 3.5);
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert!((ys(1.0).partial_sum(5) - 0.8).abs() < 1e-15);
        assert_eq!(DistId::gauss_kuzmin().partial_sum(1), 0.0);
        assert!((DistId::gauss_kuzmin().partial_sum(3) - 1.5f64.log2()).abs() < 1e-15);
        for d in DistId::standard_set() {
            for x in [2u64, 10, 1000, 100_000] {
                let direct = d.partial_sum(x);
                let closed = 1.0 - d.survival(x).mid();
                assert!((direct - closed).abs() < 1e-13, "{d} x={x}");
            }
        }
    }

    #[test]
    fn means() {
        let z3 = DistId::zeta(3.0).unwrap().mean().unwrap();
        assert!((z3.mid() - 1.368_432_777_620_205).abs() < 1e-12);
        let z25 = DistId::zeta(2.5).unwrap().mean().unwrap();
        assert!((z25.mid() - 1.947_4).abs() < 1e-4);
        assert!((ys(2.0).mean().unwrap().mid() - 2.0).abs() < 1e-15);
        assert!(ys(1.0).mean().is_none());
        assert!(DistId::gauss_kuzmin().mean().is_none());
        assert!(DistId::zeta(2.0).unwrap().mean().is_none());
    }

    #[test]
    fn sandwiches() {
        let gk = DistId::gauss_kuzmin().prob_sandwich().unwrap();
        assert_eq!((gk.xi, gk.kappa, gk.i_min), (1.0, 1.0, 1));
        assert!((gk.phi - std::f64::consts::LOG2_E).abs() < 1e-15);
        let z = DistId::zeta(2.0).unwrap().prob_sandwich().unwrap();
        assert_eq!((z.xi, z.kappa), (1.0, 0.0));
        let y = ys(1.0).prob_sandwich().unwrap();
        assert_eq!((y.xi, y.phi, y.kappa), (1.0, 1.0, 2.0));
    }

    #[test]
    fn parse_and_display() {
        for s in ["gauss-kuzmin", "yule-simon:1.5", "zeta:2"] {
            assert_eq!(s.parse::<DistId>().unwrap().to_string(), s);
        }
        assert_eq!("ys:2".parse::<DistId>().unwrap(), ys(2.0));
        assert!("zeta:1".parse::<DistId>().is_err());
        assert!("ys:-1".parse::<DistId>().is_err());
        assert!("zeta".parse::<DistId>().is_err());
    }

    #[test]
    fn entropy_examples() {
        for (d, h) in [
            (DistId::gauss_kuzmin(), 3.43253),
            (DistId::zeta(2.0).unwrap(), 2.36259),
            (ys(1.0), 2.95215),
        ] {
            let e = d.entropy_interval(1e-6).unwrap();
            assert!(e.width() <= 1e-6);
            assert!((e.mid() - h).abs() < 6e-6, "{d}: {e:?}");
        }
    }

    #[test]
    fn neg_p_lg_p_cases() {
        let h = neg_p_lg_p(Interval::new(0.3, 0.4));
        assert!(h.hi >= std::f64::consts::LOG2_E / std::f64::consts::E);
        let h = neg_p_lg_p(Interval::point(0.5));
        assert!(h.contains(0.5));
    }
}
