//! Outward-rounded interval arithmetic on `f64`.
//!
//! Every arithmetic result is widened by one ULP in each direction, which
//! covers the half-ULP error of correctly rounded IEEE operations. Results
//! of library transcendental functions are widened by [`LIBM_ULPS`] since
//! those are not guaranteed to be correctly rounded.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// ULPs of slack granted to `ln`, `exp`, `powf` and friends.
pub const LIBM_ULPS: u32 = 2;

#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

/// A closed real interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// # Panics
    /// If `lo > hi` or either end is NaN.
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(lo <= hi, "interval bounds out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// An exactly representable value.
    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    /// A value known to within `ulps` units in the last place.
    pub fn approx(x: f64, ulps: u32) -> Interval {
        Interval::new(down_n(x, ulps), up_n(x, ulps))
    }

    /// A value known to within relative error `rel` (plus `ulps` rounding).
    pub fn with_rel_error(x: f64, rel: f64) -> Interval {
        let e = up(x.abs() * rel);
        Interval::new(down(x - e), up(x + e))
    }

    /// An integer, rounded outward if it exceeds 2^53.
    pub fn from_u64(n: u64) -> Interval {
        let x = n as f64;
        if x as u64 == n && n < (1 << 53) {
            Interval::point(x)
        } else {
            Interval::approx(x, 1)
        }
    }

    pub fn zero() -> Interval {
        Interval::point(0.0)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// The common part of two enclosures of the same quantity; `None` when
    /// they are disjoint (which indicates a bug upstream).
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// Clamps the lower end at `floor` (for quantities known to be ≥ floor).
    pub fn max_lo(&self, floor: f64) -> Interval {
        Interval::new(self.lo.max(floor), self.hi.max(floor))
    }

    fn monotone_up(self, f: impl Fn(f64) -> f64) -> Interval {
        Interval::new(down_n(f(self.lo), LIBM_ULPS), up_n(f(self.hi), LIBM_ULPS))
    }

    fn monotone_down(self, f: impl Fn(f64) -> f64) -> Interval {
        Interval::new(down_n(f(self.hi), LIBM_ULPS), up_n(f(self.lo), LIBM_ULPS))
    }

    pub fn ln(self) -> Interval {
        self.monotone_up(f64::ln)
    }

    pub fn ln_1p(self) -> Interval {
        self.monotone_up(f64::ln_1p)
    }

    pub fn log2(self) -> Interval {
        self.monotone_up(f64::log2)
    }

    pub fn exp(self) -> Interval {
        self.monotone_up(f64::exp)
    }

    pub fn sqrt(self) -> Interval {
        Interval::new(down(self.lo.sqrt()), up(self.hi.sqrt()))
    }

    /// `self^e` for a positive base and exact real exponent.
    pub fn powf(self, e: f64) -> Interval {
        debug_assert!(self.lo >= 0.0);
        if e >= 0.0 {
            self.monotone_up(|x| x.powf(e))
        } else {
            self.monotone_down(|x| x.powf(e))
        }
    }

    /// `self^e` for a positive base and an enclosed exponent.
    pub fn pow(self, e: Interval) -> Interval {
        debug_assert!(self.lo > 0.0);
        (e * self.ln()).exp()
    }

    pub fn recip(self) -> Interval {
        Interval::point(1.0) / self
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(down(self.lo + o.lo), up(self.hi + o.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::new(down(self.lo - o.hi), up(self.hi - o.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let p = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(
            o.lo > 0.0 || o.hi < 0.0,
            "interval division by a range containing zero: {o:?}"
        );
        let q = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        let lo = q.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, o: f64) -> Interval {
                $tr::$m(self, Interval::point(o))
            }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                $tr::$m(Interval::point(self), o)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::zero(), |a, b| a + b)
    }
}

/// Exact enclosures of a few constants.
pub mod consts {
    use super::Interval;

    /// `lg e = 1/ln 2`.
    pub fn log2_e() -> Interval {
        Interval::approx(std::f64::consts::LOG2_E, 1)
    }

    pub fn ln_2() -> Interval {
        Interval::approx(std::f64::consts::LN_2, 1)
    }

    pub fn pi() -> Interval {
        Interval::approx(std::f64::consts::PI, 1)
    }
}
