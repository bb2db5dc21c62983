//! The survival model: how many of the `b²` starts `(b-1)^m x y` die before
//! reaching `b^(m+2)`, the generating function that counts them, and the
//! asymptotic size of that count.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::numeral::{power, BaseNumber, Radix};
use crate::runner::{run_fast, RunLimits};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The `b²` starting values `(b^m - 1)·b² + x·b + y`.
pub fn starts(radix: Radix, m: u32) -> Vec<BigUint> {
    let b = radix.get();
    let base = (power(radix, m) - 1u32) * radix.squared();
    (0..b * b).map(|xy| &base + xy).collect()
}

/// `D(b)`: starts that end at a landmine below `b^(m+2)`.
pub fn survival_count(radix: Radix, m: u32) -> u64 {
    let safety = power(radix, m + 2);
    starts(radix, m)
        .into_par_iter()
        .filter(|s| {
            let start = BaseNumber::with_radix(s.clone(), radix).unwrap();
            let out = run_fast(&start, &RunLimits::value(safety.clone())).expect("bounded run");
            out.terminated() && *out.final_term.value() < safety
        })
        .count() as u64
}

/// Coefficients of `t^0 .. t^n_max` in
/// `(1/(1-t)) · (Σ_{k>=1} t^(k(k+3)/2) / (1-t^k) - t²)`.
pub fn gf_coefficients(n_max: usize) -> Vec<i64> {
    let mut inner = vec![0i64; n_max + 1];
    for k in 1.. {
        let first = k * (k + 3) / 2;
        if first > n_max {
            break;
        }
        for e in (first..=n_max).step_by(k) {
            inner[e] += 1;
        }
    }
    if n_max >= 2 {
        inner[2] -= 1;
    }
    // Dividing by 1-t takes partial sums.
    let mut acc = 0;
    inner
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect()
}

/// Number of odd divisors of `j`.
pub fn odd_divisors(j: u64) -> u64 {
    let mut odd = j;
    while odd.is_multiple_of(2) && odd > 0 {
        odd /= 2;
    }
    (1..=odd).filter(|d| d * d <= odd && odd.is_multiple_of(*d)).map(|d| if d * d == odd { 1 } else { 2 }).sum()
}

/// Whether `j` is a triangular number `k(k+1)/2`.
pub fn is_triangular(j: u64) -> bool {
    let r = ((8 * j + 1) as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == 8 * j + 1)
}

/// `Σ_{j=1..b} (odd_divisors(j) - [j triangular])`.
pub fn odd_divisor_partial_sum(b: u64) -> i64 {
    (1..=b).map(|j| odd_divisors(j) as i64 - i64::from(is_triangular(j))).sum()
}

/// Large-`b` estimates for `D(b)` and the expected sequence length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptotics {
    /// `b·(log(2b)/2 + γ - 1/2)`.
    pub d_estimate: f64,
    /// Leading term `b·log(2b)/2`.
    pub d_leading: f64,
    /// `log10` of `e^(2b)`, the large-`b` form of the expected length.
    pub length_log10: f64,
    /// `log10` of `b^(2b / log 2b)`, the intermediate form.
    pub length_log10_power_form: f64,
}

pub fn asymptotic_estimate(b: u64) -> Asymptotics {
    let bf = b as f64;
    let log2b = (2.0 * bf).ln();
    Asymptotics {
        d_estimate: bf * (log2b / 2.0 + EULER_GAMMA - 0.5),
        d_leading: bf * log2b / 2.0,
        length_log10: 2.0 * bf * std::f64::consts::LOG10_E,
        length_log10_power_form: 2.0 * bf / log2b * bf.log10(),
    }
}

/// `log10` of the expected length `b^(b²/D)` given a death count `D`.
pub fn expected_length_log10(b: u64, deaths: u64) -> f64 {
    let bf = b as f64;
    bf * bf / deaths as f64 * bf.log10()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalReport {
    pub base: u64,
    pub m: u32,
    pub starts: u64,
    pub deaths: u64,
    pub gf_coefficient: i64,
    pub asymptotic_estimate: f64,
    /// `log10` of the expected length from the exact death count; infinite
    /// when nothing dies.
    pub expected_length_estimate: f64,
}

impl SurvivalReport {
    pub fn matches_gf(&self) -> bool {
        self.deaths as i64 == self.gf_coefficient
    }
}

pub fn survival_report(radix: Radix, m: u32) -> SurvivalReport {
    let b = radix.get();
    let deaths = survival_count(radix, m);
    SurvivalReport {
        base: b,
        m,
        starts: b * b,
        deaths,
        gf_coefficient: gf_coefficients(b as usize)[b as usize],
        asymptotic_estimate: asymptotic_estimate(b).d_estimate,
        expected_length_estimate: expected_length_log10(b, deaths),
    }
}
