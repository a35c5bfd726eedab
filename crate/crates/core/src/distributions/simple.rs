//! Small distributions with exactly known sums, used to exercise the
//! analysis routines on degenerate and dyadic inputs.

use crate::interval::Interval;

use super::{neg_p_lg_p, Distribution};

/// A distribution on `{1, ..., n}` given by explicit probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Finite {
    probs: Vec<f64>,
}

impl Finite {
    /// # Panics
    /// If the probabilities are negative or do not sum to 1 within 1e-12.
    pub fn new(probs: Vec<f64>) -> Finite {
        assert!(probs.iter().all(|&p| p >= 0.0));
        let total: f64 = probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-12, "probabilities sum to {total}");
        Finite { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

impl Distribution for Finite {
    fn label(&self) -> String {
        format!("finite({})", self.probs.len())
    }

    fn pmf(&self, i: u64) -> f64 {
        self.probs.get(i as usize - 1).copied().unwrap_or(0.0)
    }

    fn survival(&self, x: u64) -> Interval {
        let start = (x as usize - 1).min(self.probs.len());
        let s: Interval = self.probs[start..]
            .iter()
            .map(|&p| Interval::point(p))
            .sum();
        s.min(Interval::point(1.0)).max_lo(0.0)
    }

    fn tail_entropy(&self, x: u64) -> Interval {
        let start = (x as usize - 1).min(self.probs.len());
        self.probs[start..]
            .iter()
            .map(|&p| neg_p_lg_p(Interval::point(p)))
            .sum()
    }

    fn support_max(&self) -> Option<u64> {
        self.probs
            .iter()
            .rposition(|&p| p > 0.0)
            .map(|i| i as u64 + 1)
    }
}

/// `p(i) = 2^(−i)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Geometric;

impl Distribution for Geometric {
    fn label(&self) -> String {
        "geometric(1/2)".into()
    }

    fn pmf(&self, i: u64) -> f64 {
        (-(i as f64)).exp2()
    }

    fn survival(&self, x: u64) -> Interval {
        Interval::point((1.0 - x as f64).exp2())
    }

    /// `Σ_{i≥x} i·2^(−i) = (x+1)·2^(1−x)`.
    fn tail_entropy(&self, x: u64) -> Interval {
        Interval::point(x as f64 + 1.0) * (1.0 - x as f64).exp2()
    }
}
