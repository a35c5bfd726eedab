//! Inverse-CDF sampling.

use rand::Rng;

use super::Distribution;

/// Symbols whose survival values are tabulated.
const TABLE: u64 = 1 << 16;

/// Draws `i` with `S(i+1) < v ≤ S(i)` for `v` uniform on `(0, 1]`, which
/// happens with probability `S(i) − S(i+1) = p(i)`.
///
/// Survival values for the first `2^16` symbols are cached; rarer draws
/// binary-search the survival function directly.
pub struct Sampler<'a, D: Distribution + ?Sized> {
    dist: &'a D,
    /// `surv[k] = S(k+1)`, nonincreasing, `surv[0] = 1`.
    surv: Vec<f64>,
}

impl<'a, D: Distribution + ?Sized> Sampler<'a, D> {
    pub fn new(dist: &'a D) -> Self {
        let n = match dist.support_max() {
            Some(m) => m.min(TABLE),
            None => TABLE,
        };
        let surv = (1..=n + 1).map(|x| dist.survival(x).mid()).collect();
        Sampler { dist, surv }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let v = 1.0 - rng.random::<f64>();
        self.invert(v)
    }

    /// Smallest `i` with `S(i+1) < v`.
    pub fn invert(&self, v: f64) -> u64 {
        // surv[k] ≥ v for k < idx, surv[idx] < v
        let idx = self.surv.partition_point(|&s| s >= v);
        if idx < self.surv.len() {
            return idx as u64;
        }
        if let Some(m) = self.dist.support_max() {
            return m;
        }
        let surv = |x: u64| self.dist.survival(x).mid();
        let mut lo = self.surv.len() as u64; // S(lo) ≥ v
        let mut hi = lo;
        loop {
            match hi.checked_mul(2) {
                Some(h) if h < 1 << 62 => {
                    hi = h;
                    if surv(hi) < v {
                        break;
                    }
                    lo = hi;
                }
                _ => return 1 << 62,
            }
        }
        // S(lo) ≥ v > S(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if surv(mid) >= v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::DistId;

    #[test]
    fn small_draws_hit_one() {
        let d = DistId::gauss_kuzmin();
        let s = Sampler::new(&d);
        // v in (S(2), 1] maps to symbol 1
        assert_eq!(s.invert(1.0), 1);
        assert_eq!(s.invert(1.0 - 0.4), 1);
        assert_eq!(s.invert(1.0 - 0.42), 2);
    }

    #[test]
    fn tail_draws_invert_survival() {
        let d = DistId::gauss_kuzmin();
        let s = Sampler::new(&d);
        let x = 10_000_000u64;
        let v = d.survival(x).mid() * (1.0 - 1e-9);
        let i = s.invert(v);
        assert!(d.survival(i).mid() >= v && d.survival(i + 1).mid() < v);
        assert!(i >= x - 1 && i <= x);
    }
}
