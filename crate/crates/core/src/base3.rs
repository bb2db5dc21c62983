//! Base-3 specifics: a digit-pattern predictor for comma-numbers, the
//! transition table between numbers just above consecutive powers of 3, and
//! exhaustive termination checks.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{CommaError, Result};
use crate::numeral::{digits_of, power, BaseNumber, Radix};
use crate::runner::{run_fast, NaiveTerms, RunLimits};
use crate::stepper::{children_of, successor_of};

const T: Radix = Radix::TERNARY;

/// Which pattern decided a prediction, checked in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredictorRule {
    /// `1 2^i 1`, `i >= 1`: 12.
    OneTwosOne,
    /// `1 2^i j 2`: 22.
    OneTwosJTwo,
    /// `2` or `22`: 21.
    TwoOrTwoTwo,
    /// `2^i 1 1`: landmine.
    TwosOneOne,
    /// `2^i 1`: 11.
    TwosOne,
    /// `2^i j 2`: 21.
    TwosJTwo,
    /// Last digit then first digit.
    Default,
}

fn twos(d: &[u64]) -> bool {
    d.iter().all(|&x| x == 2)
}

/// The rule that applies to ternary digits `d` (most significant first).
pub fn predictor_rule(d: &[u64]) -> PredictorRule {
    use PredictorRule::*;
    let m = d.len();
    let ends = |tail: &[u64]| d.ends_with(tail);
    if m >= 3 && d[0] == 1 && d[m - 1] == 1 && twos(&d[1..m - 1]) {
        return OneTwosOne;
    }
    if m >= 3 && d[0] == 1 && d[m - 1] == 2 && twos(&d[1..m - 2]) {
        return OneTwosJTwo;
    }
    if d == [2] || d == [2, 2] {
        return TwoOrTwoTwo;
    }
    if m >= 2 && ends(&[1, 1]) && twos(&d[..m - 2]) {
        return TwosOneOne;
    }
    if ends(&[1]) && twos(&d[..m - 1]) {
        return TwosOne;
    }
    if m >= 2 && d[m - 1] == 2 && twos(&d[..m - 2]) {
        return TwosJTwo;
    }
    Default
}

/// Predicted comma-number after `n` (base 3), or `None` for a landmine.
pub fn predict_comma_number(n: &BaseNumber) -> Result<Option<u64>> {
    if n.base() != 3 {
        return Err(CommaError::UnsupportedBase {
            base: n.base(),
            reason: "the comma-number predictor is specific to base 3",
        });
    }
    Ok(predict_digits(&n.digits()))
}

fn predict_digits(d: &[u64]) -> Option<u64> {
    use PredictorRule::*;
    Some(match predictor_rule(d) {
        OneTwosOne => 5,
        OneTwosJTwo => 8,
        TwoOrTwoTwo | TwosJTwo => 7,
        TwosOne => 4,
        TwosOneOne => return None,
        Default => d[d.len() - 1] * 3 + d[0],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictorMismatch {
    pub n: u64,
    pub predicted: Option<u64>,
    pub actual: Option<u64>,
}

/// Compares the predictor with the true comma-number for every `n <= limit`.
pub fn verify_predictor(limit: u64) -> Vec<PredictorMismatch> {
    let mut out: Vec<PredictorMismatch> = (1..=limit)
        .into_par_iter()
        .filter_map(|n| {
            let predicted = predict_digits(&digits_of(&BigUint::from(n), T));
            let actual = successor_of(&(n as u128), T).map(|s| (s - n as u128) as u64);
            (predicted != actual).then_some(PredictorMismatch { n, predicted, actual })
        })
        .collect();
    out.sort_by_key(|m| m.n);
    out
}

/// A node `(s, t)` stands for the numbers `3^(4k+s) + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionNode {
    At { s: u8, t: u8 },
    /// The landmine `3^h - 5` just below the next power.
    End,
}

impl TransitionNode {
    pub fn new(s: u8, t: u8) -> Result<Self> {
        if s > 3 || ![0, 2, 3, 6].contains(&t) {
            return Err(CommaError::InvalidNode { s, t });
        }
        Ok(TransitionNode::At { s, t })
    }

    pub fn is_terminal(self) -> bool {
        self == TransitionNode::End
    }

    /// All sixteen non-terminal nodes.
    pub fn all() -> impl Iterator<Item = TransitionNode> {
        (0..4u8).flat_map(|s| [0u8, 2, 3, 6].map(move |t| TransitionNode::At { s, t }))
    }
}

/// Where a sequence through `3^(4k+s) + t` crosses the next power of 3.
pub fn transition_from(node: TransitionNode) -> Result<TransitionNode> {
    let TransitionNode::At { s, t } = node else {
        return Err(CommaError::TerminalNode);
    };
    let next = match (s, t) {
        (0, 0) => Some(2),
        (0, 2) => None,
        (0, 3) => Some(0),
        (0, 6) => Some(6),
        (1, 0) => None,
        (1, 2) => Some(3),
        (1, 3) => Some(2),
        (1, 6) => Some(0),
        (2, 0) => None,
        (2, 2) => Some(6),
        (2, 3) => Some(2),
        (2, 6) => Some(3),
        (3, 0) => Some(0),
        (3, 2) => None,
        (3, 3) => Some(3),
        (3, 6) => Some(6),
        _ => return Err(CommaError::InvalidNode { s, t }),
    };
    Ok(match next {
        Some(t) => TransitionNode::At { s: (s + 1) % 4, t },
        None => TransitionNode::End,
    })
}

/// The terms `3^e + t` predicted by the table from `3^exp + t`, ending
/// with the landmine `3^h - 5` (as the last entry).
pub fn predicted_chain(exp: u32, t: u8) -> Result<Vec<BigUint>> {
    let mut node = TransitionNode::new((exp % 4) as u8, t)?;
    let mut e = exp;
    let mut out = vec![power(T, e) + t];
    loop {
        node = transition_from(node)?;
        e += 1;
        match node {
            TransitionNode::At { t, .. } => out.push(power(T, e) + t),
            TransitionNode::End => {
                out.push(power(T, e) - 5u32);
                return Ok(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMismatch {
    pub exponent: u32,
    pub t: u8,
    pub expected: TransitionNode,
    /// Terms observed in `[3^(e+1) - 5, 3^(e+1) + 8]`.
    pub observed: Vec<BigUint>,
}

/// Terms of the run from `start` lying in `[3^e - 5, 3^e + 8]`, where `3^e`
/// is the first power of 3 above `start`.
fn terms_near_next_power(start: &BigUint, e: u32) -> Vec<BigUint> {
    let p = power(T, e);
    let lo = &p - 5u32;
    let hi = &p + 8u32;
    let from = BaseNumber::with_radix(start.clone(), T).unwrap();
    let out = run_fast(&from, &RunLimits::value(&p - 13u32)).expect("bounded");
    NaiveTerms::new(out.final_term.into_value(), T)
        .take_while(|v| *v <= hi)
        .filter(|v| *v >= lo)
        .collect()
}

/// Checks every table entry by running the real sequence from `3^(4h+s) + t`
/// for all `h <= h_max` with `4h + s >= 3`.
pub fn verify_transitions(h_max: u32) -> Vec<TransitionMismatch> {
    let cases: Vec<(u32, u8)> = (0..=h_max)
        .flat_map(|h| TransitionNode::all().map(move |n| (h, n)))
        .filter_map(|(h, n)| match n {
            TransitionNode::At { s, t } => Some((4 * h + s as u32, t)),
            TransitionNode::End => None,
        })
        .filter(|&(e, _)| e >= 3)
        .collect();
    let mut out: Vec<TransitionMismatch> = cases
        .into_par_iter()
        .filter_map(|(e, t)| {
            let expected = transition_from(TransitionNode::new((e % 4) as u8, t).unwrap()).unwrap();
            let start = power(T, e) + t;
            let observed = terms_near_next_power(&start, e + 1);
            let p = power(T, e + 1);
            let ok = match expected {
                TransitionNode::End => {
                    let mine = &p - 5u32;
                    observed.last() == Some(&mine) && children_of(&mine, T).is_empty()
                }
                TransitionNode::At { t: z, .. } => observed.contains(&(&p + z)),
            };
            (!ok).then_some(TransitionMismatch {
                exponent: e,
                t,
                expected,
                observed,
            })
        })
        .collect();
    out.sort_by_key(|m| (m.exponent, m.t));
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TerminationReport {
    pub starts: u64,
    pub terminated: u64,
    /// Starts whose final term is not of the form `3^h - 5`.
    pub unexpected_finals: Vec<u64>,
    /// Count of starts by the exponent `h` of their final term `3^h - 5`.
    pub by_exponent: BTreeMap<u32, u64>,
    pub longest: (u64, BigUint),
}

impl TerminationReport {
    pub fn all_terminate(&self) -> bool {
        self.terminated == self.starts && self.unexpected_finals.is_empty()
    }
}

/// Exponent `h` when `v = 3^h - 5`.
fn landmine_exponent(v: &BigUint) -> Option<u32> {
    let p = v + 5u32;
    let d = digits_of(&p, T);
    (d[0] == 1 && d[1..].iter().all(|&x| x == 0)).then_some(d.len() as u32 - 1)
}

/// Runs every start `1..=x_max` in base 3 to termination.
pub fn base3_all_terminate(x_max: u64) -> TerminationReport {
    let results: Vec<(u64, bool, BigUint, BigUint)> = (1..=x_max)
        .into_par_iter()
        .map(|x| {
            let out = run_fast(&BaseNumber::new(x, 3).unwrap(), &RunLimits::none()).expect("base 3 is bounded");
            (x, out.terminated(), out.length, out.final_term.into_value())
        })
        .collect();
    let mut report = TerminationReport {
        starts: x_max,
        ..Default::default()
    };
    for (x, terminated, length, last) in results {
        if terminated {
            report.terminated += 1;
        }
        match landmine_exponent(&last) {
            Some(h) => *report.by_exponent.entry(h).or_default() += 1,
            None => report.unexpected_finals.push(x),
        }
        if length > report.longest.1 {
            report.longest = (x, length);
        }
    }
    report
}
