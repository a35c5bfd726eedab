//! Property suites shared by the `properties` tests and the acceptance
//! runner. Each suite runs 10 000 deterministic cases.

#![allow(dead_code)]

use pcpl::analysis::{antiunary_level, is_j_smooth_lengths, kraft_sum_exact, smooth_improve};
use pcpl::bitio::{BitString, LexOrdering};
use pcpl::codes::{CodeId, Family};
use pcpl::distributions::{DistId, Distribution};
use pcpl::interval::Interval;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const CASES: u32 = 10_000;

pub fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn any_code() -> impl Strategy<Value = CodeId> {
    prop_oneof![
        Just(CodeId::UNARY),
        Just(CodeId::GAMMA),
        Just(CodeId::DELTA),
        Just(CodeId::OMEGA),
        Just(CodeId::LEVENSHTEIN),
        Just(CodeId::YOKOO),
        (1..=64i32).prop_map(|k| CodeId::golomb(k).unwrap()),
        (0..=20i32).prop_map(|k| CodeId::exp_golomb(k).unwrap()),
        (-24..=12i32).prop_map(|k| CodeId::code_k(k).unwrap()),
    ]
}

/// Symbols spread over every magnitude.
pub fn any_symbol() -> impl Strategy<Value = u64> {
    prop_oneof![
        1..=64u64,
        1..=100_000u64,
        (0..64u32, any::<u64>()).prop_map(|(b, r)| (r >> b).max(1))
    ]
}

/// Keeps linear-length codes to codewords of a reasonable size.
pub fn fit(code: CodeId, i: u64) -> u64 {
    match code.family() {
        Family::Unary | Family::Golomb => i % 100_000 + 1,
        _ => i,
    }
}

pub fn any_dist() -> impl Strategy<Value = DistId> {
    prop_oneof![
        Just(DistId::gauss_kuzmin()),
        (0.1..8.0f64).prop_map(|r| DistId::yule_simon(r).unwrap()),
        (1.1..6.0f64).prop_map(|s| DistId::zeta(s).unwrap()),
    ]
}

/// `p(1..=n)` of a distribution, tabulated once through the pmf recurrence.
struct Table(Vec<f64>);

impl Table {
    fn new(d: &DistId, n: u64) -> Table {
        let mut p = Vec::with_capacity(n as usize);
        d.for_each_pmf(1, n + 1, |_, v| p.push(v.mid()));
        Table(p)
    }
}

impl Distribution for Table {
    fn label(&self) -> String {
        "table".into()
    }

    fn pmf(&self, i: u64) -> f64 {
        self.0.get(i as usize - 1).copied().unwrap_or(0.0)
    }

    fn survival(&self, _: u64) -> Interval {
        unreachable!("structural checks only read the pmf")
    }

    fn tail_entropy(&self, _: u64) -> Interval {
        unreachable!("structural checks only read the pmf")
    }
}

fn roundtrip() -> Result<(), String> {
    let strat = (any_code(), prop::collection::vec(any_symbol(), 1..16));
    runner()
        .run(&strat, |(code, symbols)| {
            let symbols: Vec<u64> = symbols.into_iter().map(|i| fit(code, i)).collect();
            let mut bits = BitString::new();
            for &i in &symbols {
                code.encode_into(&mut bits, i).unwrap();
            }
            let mut cur = bits.cursor();
            for &i in &symbols {
                prop_assert_eq!(code.decode(&mut cur).unwrap(), i);
            }
            prop_assert!(cur.is_at_end());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn prefix_free() -> Result<(), String> {
    runner()
        .run(&(any_code(), any_symbol(), any_symbol()), |(code, i, j)| {
            let (i, j) = (fit(code, i), fit(code, j));
            prop_assume!(i != j);
            let ord = code
                .encode(i)
                .unwrap()
                .lex_compare(&code.encode(j).unwrap());
            prop_assert!(
                matches!(ord, LexOrdering::Less | LexOrdering::Greater),
                "{code} {i} {j}"
            );
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn alphabetic() -> Result<(), String> {
    runner()
        .run(&(any_code(), any_symbol(), any_symbol()), |(code, i, j)| {
            let (i, j) = (fit(code, i), fit(code, j));
            prop_assume!(i != j);
            let (lo, hi) = (i.min(j), i.max(j));
            let ord = code
                .encode(lo)
                .unwrap()
                .lex_compare(&code.encode(hi).unwrap());
            prop_assert_eq!(ord, LexOrdering::Less, "{} {} {}", code, lo, hi);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn monotone_lengths() -> Result<(), String> {
    runner()
        .run(&(any_code(), any_symbol(), any_symbol()), |(code, i, j)| {
            let (lo, hi) = (i.min(j), i.max(j));
            prop_assert!(code.raw_length(lo) <= code.raw_length(hi));
            let i = fit(code, i);
            prop_assert_eq!(code.encode(i).unwrap().len() as u64, code.raw_length(i));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Families whose Kraft sum over `1..=2^24` is within `2^(−20)` of one.
pub fn kraft_complete_by_2_24(code: CodeId) -> bool {
    match code.family() {
        Family::Unary | Family::EliasGamma | Family::Yokoo => true,
        Family::Golomb => true,
        Family::ExpGolomb => code.param() <= 3,
        Family::CodeK => code.param() <= 2,
        Family::EliasDelta | Family::EliasOmega | Family::Levenshtein => false,
    }
}

fn kraft() -> Result<(), String> {
    let strat = (any_code(), 1..=(1u64 << 24), 1..=(1u64 << 24));
    runner()
        .run(&strat, |(code, a, b)| {
            let (lo, hi) = (a.min(b), a.max(b));
            let (s_lo, s_hi) = (code.kraft_sum(lo), code.kraft_sum(hi));
            prop_assert!(s_lo <= s_hi + 1e-15);
            prop_assert!(s_hi <= 1.0 + 1e-12);
            if kraft_complete_by_2_24(code) {
                prop_assert!(code.kraft_sum(1 << 24) > 1.0 - (-20f64).exp2(), "{}", code);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn codek_zero_smooth() -> Result<(), String> {
    runner()
        .run(&(-8..=8i32, 1..(1u64 << 16)), |(k, i)| {
            let c = CodeId::code_k(k).unwrap();
            let n = |i: u64| c.raw_length(i);
            if n(i + 1) == n(i + 2) {
                prop_assert!(n(i + 1) - n(i) <= 1, "codek:{} at {}", k, i);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Power laws are antiunary beyond a small index: every violation lies in
/// the first thousand symbols.
fn antiunary() -> Result<(), String> {
    runner()
        .run(&(any_dist(), 1..=100_000u64), |(d, i)| {
            let level = antiunary_level(&Table::new(&d, 1003), 1000);
            let holds = d.pmf(i) < d.pmf(i + 1) + d.pmf(i + 2);
            if !holds {
                prop_assert!(i <= level, "{} at {}", d, i);
            }
            prop_assert!(level < 200, "{}", d);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Elias-γ lengths jump by two into every plateau. Under an antiunary
/// source the exchange strictly shortens them and leaves no jump past the
/// antiunary index.
fn smooth_improve_strict() -> Result<(), String> {
    let strat = (any_dist(), 16..=1024usize);
    runner()
        .run(&strat, |(d, n)| {
            let before: Vec<u64> = (1..=n as u64)
                .map(|i| CodeId::GAMMA.raw_length(i))
                .collect();
            let p = Table::new(&d, n as u64 + 2);
            let after = smooth_improve(&before, &p).unwrap();
            let (num, top) = kraft_sum_exact(&after);
            prop_assert!(num <= num_bigint::BigUint::from(1u8) << top);
            let cost =
                |l: &[u64]| -> f64 { l.iter().zip(&p.0).map(|(&len, q)| q * len as f64).sum() };
            let j = antiunary_level(&p, n as u64);
            // γ has a jump into a plateau at every 2^m − 1 ≥ 3
            if (j as usize) + 3 < n && (j + 1..=n as u64 - 2).any(|i| (i + 1).is_power_of_two()) {
                prop_assert!(cost(&after) < cost(&before), "{} n={}", d, n);
            }
            prop_assert!(is_j_smooth_lengths(&after, j));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: [Suite; 8] = [
    ("roundtrip", roundtrip),
    ("prefix-freeness", prefix_free),
    ("alphabetic order", alphabetic),
    ("monotone lengths", monotone_lengths),
    ("Kraft convergence", kraft),
    ("Code k 0-smoothness", codek_zero_smooth),
    ("antiunary power laws", antiunary),
    ("smooth_improve strict improvement", smooth_improve_strict),
];
