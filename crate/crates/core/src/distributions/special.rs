//! Rigorous enclosures of the zeta function, Hurwitz-type tails and
//! log-gamma differences.
//!
//! Both use asymptotic series with remainder bounds: for completely
//! monotone summands the Euler-Maclaurin remainder, and for real positive
//! arguments the Stirling remainder, are bounded by the first omitted term.
//! Each remainder is widened to twice that term.

use crate::interval::Interval;

/// Terms summed directly before switching to the asymptotic series.
const SHIFT: u64 = 16;

/// `B_{2k}` as `(numerator, denominator)`, `k = 1..=7`.
const BERNOULLI: [(f64, f64); 7] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
];

fn ratio(n: f64, d: f64) -> Interval {
    Interval::point(n) / Interval::point(d)
}

fn factorial(n: u32) -> Interval {
    (1..=n).fold(Interval::point(1.0), |acc, k| acc * k as f64)
}

/// `Σ_{i≥x} i^(−s)` for integer `x ≥ 1` and `s > 1`.
pub fn power_tail(s: f64, x: u64) -> Interval {
    assert!(s > 1.0, "power tail diverges for s = {s}");
    assert!(x >= 1);
    let mut head = Interval::zero();
    let mut n = x;
    while n < SHIFT {
        head = head + Interval::from_u64(n).powf(-s);
        n += 1;
    }
    head + euler_maclaurin_tail(s, Interval::from_u64(n))
}

/// Euler-Maclaurin expansion of `Σ_{i≥n} i^(−s)` for `n ≥ 16`.
fn euler_maclaurin_tail(s: f64, n: Interval) -> Interval {
    let s_i = Interval::point(s);
    let integral = n.powf(1.0 - s) / (s_i - 1.0);
    let half = n.powf(-s) * 0.5;
    let mut sum = integral + half;
    // rising = (s)_{2k−1}
    let mut rising = s_i;
    let mut last = Interval::zero();
    for (k, &(bn, bd)) in BERNOULLI.iter().enumerate() {
        let k = k as u32 + 1;
        if k > 1 {
            rising = rising * (s_i + (2 * k - 3) as f64) * (s_i + (2 * k - 2) as f64);
        }
        let term = ratio(bn, bd) / factorial(2 * k) * rising * n.powf(1.0 - s - 2.0 * k as f64);
        if k as usize == BERNOULLI.len() {
            last = term;
        } else {
            sum = sum + term;
        }
    }
    let r = 2.0 * last.lo.abs().max(last.hi.abs());
    sum + Interval::new(-r, r)
}

/// `ζ(s)` for `s > 1`.
pub fn zeta(s: f64) -> Interval {
    power_tail(s, 1)
}

/// Stirling coefficients `B_{2k} / (2k(2k−1))`.
fn stirling_coeff(k: usize) -> Interval {
    let (bn, bd) = BERNOULLI[k - 1];
    let kk = (2 * k) as f64;
    ratio(bn, bd * kk * (kk - 1.0))
}

/// `ln Γ(x + a) − ln Γ(x)` for `x ≥ 1` and `a ≥ 0`.
pub fn ln_gamma_diff(x: Interval, a: f64) -> Interval {
    assert!(x.lo >= 1.0 && a >= 0.0);
    let a_i = Interval::point(a);
    let mut x = x;
    let mut correction = Interval::zero();
    while x.lo < SHIFT as f64 {
        // Γ(z+1) = zΓ(z) applied to both arguments.
        correction = correction + x.ln() - (x + a_i).ln();
        x = x + 1.0;
    }
    let xa = x + a_i;
    let mut d = (x - 0.5) * (a_i / x).ln_1p() + a_i * xa.ln() - a_i;
    let m = BERNOULLI.len();
    for k in 1..m {
        let e = 1.0 - 2.0 * k as f64;
        d = d + stirling_coeff(k) * (xa.powf(e) - x.powf(e));
    }
    let e = 1.0 - 2.0 * m as f64;
    let c = stirling_coeff(m);
    let bound = c.hi.abs().max(c.lo.abs()) * (x.powf(e).hi + xa.powf(e).hi);
    let r = 2.0 * bound;
    d + correction + Interval::new(-r, r)
}

/// `ln Γ(1 + a)` for `a ≥ 0`.
pub fn ln_gamma_1p(a: f64) -> Interval {
    ln_gamma_diff(Interval::point(1.0), a)
}

/// `Γ(1 + a)` for `a ≥ 0`.
pub fn gamma_1p(a: f64) -> Interval {
    if a.fract() == 0.0 && a <= 20.0 {
        return factorial(a as u32);
    }
    ln_gamma_1p(a).exp()
}

/// `ln(2π)/2`, used only by tests of the Stirling machinery.
#[cfg(test)]
fn half_ln_two_pi() -> Interval {
    (crate::interval::consts::pi() * 2.0).ln() * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_known_values() {
        let pi = std::f64::consts::PI;
        let z2 = zeta(2.0);
        assert!(z2.contains(pi * pi / 6.0) || (z2.mid() - pi * pi / 6.0).abs() < 1e-15);
        assert!(z2.width() < 1e-14, "{z2:?}");
        let z4 = zeta(4.0);
        assert!((z4.mid() - pi.powi(4) / 90.0).abs() < 1e-15);
        let z15 = zeta(1.5);
        assert!((z15.mid() - 2.612_375_348_685_488).abs() < 1e-13, "{z15:?}");
        assert!((zeta(3.0).mid() - 1.202_056_903_159_594).abs() < 1e-14);
    }

    #[test]
    fn power_tail_matches_direct_sum() {
        // Oracle: direct summation of the first terms plus the tail from far away.
        let s = 2.5;
        let x = 5;
        let direct: f64 = (x..2000).map(|i| (i as f64).powf(-s)).sum();
        let t = power_tail(s, x) - power_tail(s, 2000);
        assert!((t.mid() - direct).abs() < 1e-13);
        let big = power_tail(2.0, 1 << 40);
        assert!((big.mid() * (1u64 << 40) as f64 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn ln_gamma_values() {
        // Γ(3.5) = 15√π/8
        let g = gamma_1p(2.5);
        let exact = 15.0 * std::f64::consts::PI.sqrt() / 8.0;
        assert!((g.mid() - exact).abs() < 1e-13, "{g:?}");
        assert!(g.contains(exact) || (g.mid() - exact).abs() < 1e-15);
        // Γ(x+1)/Γ(x) = x
        let d = ln_gamma_diff(Interval::point(1e6), 1.0);
        assert!((d.mid() - 1e6f64.ln()).abs() < 1e-12);
        // integer a reduces to a product
        let d = ln_gamma_diff(Interval::point(3.0), 3.0);
        assert!((d.mid() - 60f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn stirling_constant_consistency() {
        // lnΓ(16) from the full Stirling series agrees with ln(15!).
        let x = Interval::point(16.0);
        let mut s = (x - 0.5) * x.ln() - x + half_ln_two_pi();
        for k in 1..BERNOULLI.len() {
            s = s + stirling_coeff(k) * x.powf(1.0 - 2.0 * k as f64);
        }
        let f15: f64 = (1..=15).map(|k| (k as f64).ln()).sum();
        assert!((s.mid() - f15).abs() < 1e-12);
    }
}
