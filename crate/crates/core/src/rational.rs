//! Rationals as continued fractions, with each term written in a prefix
//! code (Code −1 by default).
//!
//! Layout: `a0 + 1`, then the term count `n + 1`, then `a_1, …, a_n`, all in
//! the same code. The expansion is canonical (last term at least 2), so
//! the encoding is a bijection.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::bitio::{BitCursor, BitString};
use crate::codes::{CodeError, CodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as p/q")]
    Parse(String),
    #[error("continued-fraction term exceeds 64 bits")]
    TermOverflow,
    #[error("encoded expansion is not canonical")]
    NonCanonical,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A nonnegative rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigUint,
    den: BigUint,
}

impl Rational {
    pub fn new(
        num: impl Into<BigUint>,
        den: impl Into<BigUint>,
    ) -> Result<Rational, RationalError> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        Ok(Rational {
            num: &num / &g,
            den: &den / &g,
        })
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Parse(s.to_string());
        let s = s.trim();
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: BigUint = p.trim().parse().map_err(|_| bad())?;
        let q: BigUint = q.trim().parse().map_err(|_| bad())?;
        Rational::new(p, q)
    }
}

/// `a0 + 1/(a_1 + 1/(a_2 + …))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfTerms {
    pub a0: u64,
    pub terms: Vec<u64>,
}

impl fmt::Display for CfTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (j, a) in self.terms.iter().enumerate() {
            write!(f, "{}{a}", if j == 0 { "; " } else { ", " })?;
        }
        f.write_str("]")
    }
}

/// Euclid's algorithm. The last term is always at least 2.
pub fn cf_expand(r: &Rational) -> Result<CfTerms, RationalError> {
    let to_u64 = |q: BigUint| q.to_u64().ok_or(RationalError::TermOverflow);
    let (a0, mut rem) = r.num.div_rem(&r.den);
    let mut div = r.den.clone();
    let mut terms = Vec::new();
    while !rem.is_zero() {
        let (q, next) = div.div_rem(&rem);
        terms.push(to_u64(q)?);
        div = rem;
        rem = next;
    }
    Ok(CfTerms {
        a0: to_u64(a0)?,
        terms,
    })
}

/// Exact value of an expansion via the convergent recurrence.
pub fn cf_reconstruct(t: &CfTerms) -> Rational {
    // (h, k) and the previous convergent
    let (mut h, mut k) = (BigUint::from(t.a0), BigUint::one());
    let (mut h_prev, mut k_prev) = (BigUint::one(), BigUint::zero());
    for &a in &t.terms {
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    // consecutive convergents are coprime
    Rational { num: h, den: k }
}

/// Appends the encoding of `r` to `out`.
pub fn encode_rational_into(
    out: &mut BitString,
    r: &Rational,
    term_code: CodeId,
) -> Result<(), RationalError> {
    let cf = cf_expand(r)?;
    let a0 = cf.a0.checked_add(1).ok_or(RationalError::TermOverflow)?;
    term_code.encode_into(out, a0)?;
    term_code.encode_into(out, cf.terms.len() as u64 + 1)?;
    for &a in &cf.terms {
        term_code.encode_into(out, a)?;
    }
    Ok(())
}

pub fn encode_rational(r: &Rational, term_code: CodeId) -> Result<BitString, RationalError> {
    let mut out = BitString::new();
    encode_rational_into(&mut out, r, term_code)?;
    Ok(out)
}

/// Reads one rational written by [`encode_rational`].
pub fn decode_rational(
    cur: &mut BitCursor<'_>,
    term_code: CodeId,
) -> Result<Rational, RationalError> {
    let a0 = term_code.decode(cur)? - 1;
    let n = term_code.decode(cur)? - 1;
    let mut terms = Vec::new();
    for _ in 0..n {
        terms.push(term_code.decode(cur)?);
    }
    if terms.last() == Some(&1) {
        return Err(RationalError::NonCanonical);
    }
    Ok(cf_reconstruct(&CfTerms { a0, terms }))
}

/// Positions tracked separately by [`cf_term_histogram`].
pub const HISTOGRAM_POSITIONS: usize = 8;

/// Counts of continued-fraction terms of sampled rationals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TermHistogram {
    pub samples: u64,
    /// `by_position[j]` counts the values of `a_(j+1)`.
    pub by_position: Vec<BTreeMap<u64, u64>>,
    /// Every term `a_1, a_2, …` of every sample.
    pub pooled: BTreeMap<u64, u64>,
}

impl TermHistogram {
    fn fraction_in(map: &BTreeMap<u64, u64>, value: u64) -> f64 {
        let total: u64 = map.values().sum();
        if total == 0 {
            return 0.0;
        }
        map.get(&value).copied().unwrap_or(0) as f64 / total as f64
    }

    /// Empirical `P(a_position = value)`, positions counted from 1.
    pub fn fraction(&self, position: usize, value: u64) -> f64 {
        self.by_position
            .get(position - 1)
            .map_or(0.0, |m| Self::fraction_in(m, value))
    }

    pub fn pooled_fraction(&self, value: u64) -> f64 {
        Self::fraction_in(&self.pooled, value)
    }

    /// Mean codeword length of the pooled terms under `code`.
    pub fn mean_code_length(&self, code: CodeId) -> f64 {
        let (mut bits, mut count) = (0.0, 0u64);
        for (&a, &c) in &self.pooled {
            bits += code.raw_length(a) as f64 * c as f64;
            count += c;
        }
        if count == 0 {
            0.0
        } else {
            bits / count as f64
        }
    }
}

/// Expands `sample_count` rationals `p/q` in `(0, 1)`, with `q` uniform on
/// `2..=den_bound` and `p` uniform on `1..q`.
///
/// The first term follows the Yule-Simon law with `ρ = 1`; deeper terms
/// approach the Gauss-Kuzmin law.
pub fn cf_term_histogram<R: Rng + ?Sized>(
    sample_count: u64,
    den_bound: u64,
    rng: &mut R,
) -> TermHistogram {
    assert!(den_bound >= 2);
    let mut h = TermHistogram {
        samples: sample_count,
        by_position: vec![BTreeMap::new(); HISTOGRAM_POSITIONS],
        pooled: BTreeMap::new(),
    };
    for _ in 0..sample_count {
        let q = rng.random_range(2..=den_bound);
        let p = rng.random_range(1..q);
        // plain Euclid on machine words; no need for big integers here
        let (mut div, mut rem) = (q, p);
        let mut j = 0;
        while rem != 0 {
            let a = div / rem;
            (div, rem) = (rem, div % rem);
            if j < HISTOGRAM_POSITIONS {
                *h.by_position[j].entry(a).or_insert(0) += 1;
            }
            *h.pooled.entry(a).or_insert(0) += 1;
            j += 1;
        }
    }
    h
}
