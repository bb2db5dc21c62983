//! Sequence engines: a reference runner that applies the successor rule term
//! by term, and a jump-ahead runner that exploits the periodic comma-numbers
//! inside constant-leading-digit regions.
//!
//! Inside a region with leading digit `f`, every step is `k -> k + x·b + f`
//! where `x = k mod b`, so the trailing digit walks `x, x+f, x+2f, ... (mod b)`
//! and `b` consecutive steps always add the same period sum
//! `b·(f + Σ_{j<b} ((x + j·f) mod b))`. The cursor jumps whole periods while
//! the target stays at least `2b²` below the region top, and steps one term at
//! a time near region boundaries, where every landmine and branch-point lives.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{CommaError, Result};
use crate::numeral::{leading_digit, BaseNumber, Natural, Radix};
use crate::stepper::successor_of;

/// All values with a given digit count and leading digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region<N> {
    pub lead: u64,
    pub digits: u32,
    /// Place value of the leading digit.
    pub unit: N,
    /// Largest value in the region.
    pub top: N,
}

impl<N: Natural> Region<N> {
    pub fn containing(n: &N, radix: Radix) -> Self {
        let exp = n.ilog(radix.get());
        let unit = N::pow_u64(radix.get(), exp);
        let lead = n.div_nat(&unit).as_u64().expect("leading digit below the base");
        let mut top = unit.mul_u64(lead + 1);
        top = top.checked_sub_nat(&N::one()).expect("region top is positive");
        Region {
            lead,
            digits: exp + 1,
            unit,
            top,
        }
    }

    /// Leading digit of a value known to lie above this region and less than
    /// `b²` past its top.
    fn lead_above(&self, v: &N, radix: Radix) -> u64 {
        let b = radix.get();
        let (lead, next_top) = if self.lead + 1 < b {
            let mut t = self.top.clone();
            t.add_nat(&self.unit);
            (self.lead + 1, t)
        } else {
            let mut t = self.unit.mul_u64(2 * b);
            t = t.checked_sub_nat(&N::one()).unwrap();
            (1, t)
        };
        if *v <= next_top {
            lead
        } else {
            leading_digit(v, radix)
        }
    }
}

/// Sum of the comma-numbers over one full period of `b` steps inside a region
/// with leading digit `lead`, entered with trailing digit `trailing`.
pub fn period_sum(trailing: u64, lead: u64, radix: Radix) -> u64 {
    let b = radix.get();
    let residues: u64 = (0..b).map(|j| (trailing + j * lead) % b).sum();
    b * (lead + residues)
}

/// Sum of the first `steps` comma-numbers of a period (`steps < b`).
pub fn partial_period_sum(trailing: u64, lead: u64, steps: u64, radix: Radix) -> u64 {
    let b = radix.get();
    (0..steps).map(|j| ((trailing + j * lead) % b) * b + lead).sum()
}

/// Decides which child to follow at a node with two children.
pub trait Navigator {
    /// `Some(false)` takes the smaller child, `Some(true)` the larger, `None` halts.
    fn choose(&mut self, index: &BigUint, value: &BigUint) -> Option<bool>;
}

/// Always takes the smaller child: the comma-successor rule.
#[derive(Debug, Default, Clone, Copy)]
pub struct Successor;

impl Navigator for Successor {
    fn choose(&mut self, _index: &BigUint, _value: &BigUint) -> Option<bool> {
        Some(false)
    }
}

/// Why an engine stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Halt {
    /// The current term has no children.
    Landmine,
    /// The term budget was reached.
    TermLimit,
    /// The current term is at or above the value ceiling.
    ValueLimit,
    /// The navigator declined to choose at a branch-point.
    ChoicesExhausted,
    /// The last step entered a new region.
    RegionExit,
    /// The fixed-width backend is about to overflow.
    Headroom,
}

/// Optional stopping rules for a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLimits {
    /// Stop once this many terms have been produced.
    pub max_terms: Option<BigUint>,
    /// Stop at the first term `>=` this value.
    pub max_value: Option<BigUint>,
    /// Stop after every step that changes region.
    pub stop_at_region_exit: bool,
}

impl RunLimits {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn terms(n: impl Into<BigUint>) -> Self {
        RunLimits {
            max_terms: Some(n.into()),
            ..Self::default()
        }
    }

    pub fn value(v: impl Into<BigUint>) -> Self {
        RunLimits {
            max_value: Some(v.into()),
            ..Self::default()
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.max_terms.is_some() || self.max_value.is_some()
    }
}

#[derive(Debug, Clone)]
struct Bounds<N> {
    max_index: Option<N>,
    max_value: Option<N>,
    stop_at_region_exit: bool,
}

impl<N: Natural> Bounds<N> {
    // A bound too large for `N` cannot be reached before the backend widens.
    fn from_limits(limits: &RunLimits) -> Self {
        Bounds {
            max_index: limits.max_terms.as_ref().and_then(N::from_biguint),
            max_value: limits.max_value.as_ref().and_then(N::from_biguint),
            stop_at_region_exit: limits.stop_at_region_exit,
        }
    }
}

/// Position of a run: the current term, its 1-based index, and the cached
/// region it lies in.
#[derive(Debug, Clone)]
pub struct RegionCursor<N> {
    radix: Radix,
    current: N,
    index: N,
    trailing: u64,
    region: Region<N>,
    last_comma: Option<u64>,
}

impl<N: Natural> RegionCursor<N> {
    pub fn new(start: N, radix: Radix) -> Result<Self> {
        if start.is_zero() {
            return Err(CommaError::Zero);
        }
        Ok(Self::at(start, N::one(), radix))
    }

    fn at(current: N, index: N, radix: Radix) -> Self {
        RegionCursor {
            radix,
            trailing: current.rem_u64(radix.get()),
            region: Region::containing(&current, radix),
            current,
            index,
            last_comma: None,
        }
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn current(&self) -> &N {
        &self.current
    }

    pub fn index(&self) -> &N {
        &self.index
    }

    pub fn region(&self) -> &Region<N> {
        &self.region
    }

    pub fn region_leading_digit(&self) -> u64 {
        self.region.lead
    }

    pub fn region_top(&self) -> &N {
        &self.region.top
    }

    /// Comma-number of the most recent single step, if the cursor has moved.
    pub fn last_comma(&self) -> Option<u64> {
        self.last_comma
    }

    /// Inside the stable part of a region every candidate child stays in the
    /// region, so the only child is `current + trailing·b + lead`.
    fn in_stable_zone(&self) -> bool {
        let b = self.radix.get();
        if self.region.digits < 4 {
            return false;
        }
        match self.region.top.checked_sub_nat(&self.current) {
            Some(room) => room.cmp_u64(2 * b * b) == Ordering::Greater,
            None => false,
        }
    }

    /// Children of the current term as `(leading digit e, value)`, ascending.
    fn children(&self) -> ([(u64, Option<N>); 2], usize) {
        let b = self.radix.get();
        let f = self.region.lead;
        let mut base = self.current.clone();
        base.add_u64(self.trailing * b);
        let mut out: [(u64, Option<N>); 2] = [(0, None), (0, None)];
        let mut count = 0;

        // Smallest e whose candidate leaves the region.
        let first_above = match self.region.top.checked_sub_nat(&base) {
            None => 1,
            Some(gap) => match gap.as_u64() {
                Some(g) if g < b - 1 => g + 1,
                _ => b,
            },
        };
        if f < first_above {
            let mut v = base.clone();
            v.add_u64(f);
            out[count] = (f, Some(v));
            count += 1;
        }
        for e in first_above..b {
            let mut v = base.clone();
            v.add_u64(e);
            if self.region.lead_above(&v, self.radix) == e {
                out[count] = (e, Some(v));
                count += 1;
            }
        }
        debug_assert!(count <= 2);
        (out, count)
    }

    fn take(&mut self, e: u64, value: N) {
        let b = self.radix.get();
        self.last_comma = Some(self.trailing * b + e);
        self.trailing = (self.trailing + e) % b;
        self.current = value;
        self.index.add_u64(1);
        if self.current > self.region.top {
            self.region = Region::containing(&self.current, self.radix);
        }
    }

    fn regular_step(&mut self) {
        let b = self.radix.get();
        let f = self.region.lead;
        let comma = self.trailing * b + f;
        self.current.add_u64(comma);
        self.trailing = (self.trailing + f) % b;
        self.index.add_u64(1);
        self.last_comma = Some(comma);
        debug_assert!(self.current <= self.region.top);
    }

    /// Jumps as many whole periods as the safety margin and bounds allow.
    fn try_jump(&mut self, bounds: &Bounds<N>) -> bool {
        if !self.in_stable_zone() {
            return false;
        }
        let b = self.radix.get();
        let f = self.region.lead;
        let period = period_sum(self.trailing, f, self.radix);
        let mut margin = self.current.clone();
        margin.add_u64(2 * b * b);
        let room = self.region.top.checked_sub_nat(&margin).expect("stable zone");
        let mut periods = room.div_u64(period);
        if let Some(max_index) = &bounds.max_index {
            let left = max_index.checked_sub_nat(&self.index).unwrap_or_else(|| N::from_u64(0));
            periods = periods.min(left.div_u64(b));
        }
        if let Some(max_value) = &bounds.max_value {
            let below = max_value
                .checked_sub_nat(&self.current)
                .and_then(|d| d.checked_sub_nat(&N::one()))
                .unwrap_or_else(|| N::from_u64(0));
            periods = periods.min(below.div_u64(period));
        }
        if periods.is_zero() {
            return false;
        }
        self.current.add_nat(&periods.mul_u64(period));
        self.index.add_nat(&periods.mul_u64(b));
        self.last_comma = Some(((self.trailing + (b - 1) * f) % b) * b + f);
        // The trailing digit returns to its start after whole periods.
        debug_assert!(self.current.rem_u64(b) == self.trailing);
        debug_assert!(self.current <= self.region.top);
        debug_assert_eq!(leading_digit(&self.current, self.radix), f);
        true
    }

    fn check_bounds(&self, bounds: &Bounds<N>) -> Option<Halt> {
        if let Some(max_value) = &bounds.max_value {
            if self.current >= *max_value {
                return Some(Halt::ValueLimit);
            }
        }
        if let Some(max_index) = &bounds.max_index {
            if self.index >= *max_index {
                let (_, count) = self.children();
                return Some(if count == 0 { Halt::Landmine } else { Halt::TermLimit });
            }
        }
        if !self.current.has_headroom(self.radix.get()) {
            return Some(Halt::Headroom);
        }
        None
    }

    /// Moves exactly one term forward. `None` means the cursor moved.
    pub fn step(&mut self, nav: &mut dyn Navigator) -> Option<Halt> {
        if !self.current.has_headroom(self.radix.get()) {
            return Some(Halt::Headroom);
        }
        if self.in_stable_zone() {
            self.regular_step();
            return None;
        }
        self.scan_step(nav)
    }

    fn scan_step(&mut self, nav: &mut dyn Navigator) -> Option<Halt> {
        let (mut kids, count) = self.children();
        let pick = match count {
            0 => return Some(Halt::Landmine),
            1 => 0,
            _ => {
                let index = self.index.to_biguint();
                let value = self.current.to_biguint();
                match nav.choose(&index, &value) {
                    None => return Some(Halt::ChoicesExhausted),
                    Some(upper) => usize::from(upper),
                }
            }
        };
        let (e, value) = std::mem::take(&mut kids[pick]);
        self.take(e, value.expect("child present"));
        None
    }

    /// Runs until a halt condition, jumping whole periods where possible.
    fn advance(&mut self, bounds: &Bounds<N>, nav: &mut dyn Navigator) -> Halt {
        loop {
            if let Some(halt) = self.check_bounds(bounds) {
                return halt;
            }
            if self.try_jump(bounds) {
                continue;
            }
            let lead = self.region.lead;
            let digits = self.region.digits;
            if let Some(halt) = self.scan_step(nav) {
                return halt;
            }
            if bounds.stop_at_region_exit && (self.region.lead != lead || self.region.digits != digits) {
                return Halt::RegionExit;
            }
        }
    }
}

impl RegionCursor<u128> {
    fn widen(&self) -> RegionCursor<BigUint> {
        RegionCursor {
            radix: self.radix,
            current: BigUint::from(self.current),
            index: BigUint::from(self.index),
            trailing: self.trailing,
            region: Region {
                lead: self.region.lead,
                digits: self.region.digits,
                unit: BigUint::from(self.region.unit),
                top: BigUint::from(self.region.top),
            },
            last_comma: self.last_comma,
        }
    }
}

/// Iterator over every term from the cursor's position, using the region
/// recurrence in stable zones and the child scan elsewhere.
pub struct Terms<'a, N> {
    cursor: RegionCursor<N>,
    nav: &'a mut dyn Navigator,
    done: bool,
}

impl<'a, N: Natural> Terms<'a, N> {
    pub fn new(cursor: RegionCursor<N>, nav: &'a mut dyn Navigator) -> Self {
        Terms {
            cursor,
            nav,
            done: false,
        }
    }

    pub fn cursor(&self) -> &RegionCursor<N> {
        &self.cursor
    }
}

impl<N: Natural> Iterator for Terms<'_, N> {
    type Item = N;

    fn next(&mut self) -> Option<N> {
        if self.done {
            return None;
        }
        let term = self.cursor.current.clone();
        if let Some(halt) = self.cursor.step(self.nav) {
            assert_ne!(halt, Halt::Headroom, "term stream exceeded the u128 backend");
            self.done = true;
        }
        Some(term)
    }
}

/// A cursor that starts on `u128` and widens to `BigUint` when values grow.
#[derive(Debug, Clone)]
pub enum Cursor {
    Small(RegionCursor<u128>),
    Big(RegionCursor<BigUint>),
}

impl Cursor {
    pub fn new(start: &BaseNumber) -> Self {
        let radix = start.radix();
        match u128::from_biguint(start.value()) {
            Some(v) if v.has_headroom(radix.get()) => {
                Cursor::Small(RegionCursor::new(v, radix).expect("positive start"))
            }
            _ => Cursor::Big(RegionCursor::new(start.value().clone(), radix).expect("positive start")),
        }
    }

    pub fn advance(&mut self, limits: &RunLimits, nav: &mut dyn Navigator) -> Halt {
        loop {
            match self {
                Cursor::Small(c) => {
                    let halt = c.advance(&Bounds::from_limits(limits), nav);
                    if halt == Halt::Headroom {
                        *self = Cursor::Big(c.widen());
                        continue;
                    }
                    return halt;
                }
                Cursor::Big(c) => return c.advance(&Bounds::from_limits(limits), nav),
            }
        }
    }

    /// One term forward; see [`RegionCursor::step`].
    pub fn step(&mut self, nav: &mut dyn Navigator) -> Option<Halt> {
        if let Cursor::Small(c) = self {
            if !c.current.has_headroom(c.radix.get()) {
                *self = Cursor::Big(c.widen());
            }
        }
        match self {
            Cursor::Small(c) => c.step(nav),
            Cursor::Big(c) => c.step(nav),
        }
    }

    pub fn radix(&self) -> Radix {
        match self {
            Cursor::Small(c) => c.radix,
            Cursor::Big(c) => c.radix,
        }
    }

    pub fn current(&self) -> BigUint {
        match self {
            Cursor::Small(c) => BigUint::from(c.current),
            Cursor::Big(c) => c.current.clone(),
        }
    }

    pub fn index(&self) -> BigUint {
        match self {
            Cursor::Small(c) => BigUint::from(c.index),
            Cursor::Big(c) => c.index.clone(),
        }
    }

    pub fn last_comma(&self) -> Option<u64> {
        match self {
            Cursor::Small(c) => c.last_comma,
            Cursor::Big(c) => c.last_comma,
        }
    }

    /// `(leading digit, digit count)` of the current region.
    pub fn region_key(&self) -> (u64, u32) {
        match self {
            Cursor::Small(c) => (c.region.lead, c.region.digits),
            Cursor::Big(c) => (c.region.lead, c.region.digits),
        }
    }

    pub fn region_top(&self) -> BigUint {
        match self {
            Cursor::Small(c) => BigUint::from(c.region.top),
            Cursor::Big(c) => c.region.top.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunStatus {
    Terminated,
    BudgetExhausted,
}

/// Result of running a comma sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: RunStatus,
    /// Number of terms produced, including the start.
    pub length: BigUint,
    pub start: BaseNumber,
    pub final_term: BaseNumber,
    /// Sum of all comma-numbers used; always `final_term - start`.
    pub comma_sum: BigUint,
}

impl RunOutcome {
    fn new(start: &BaseNumber, terminated: bool, length: BigUint, last: BigUint) -> Self {
        let comma_sum = &last - start.value();
        RunOutcome {
            status: if terminated {
                RunStatus::Terminated
            } else {
                RunStatus::BudgetExhausted
            },
            length,
            start: start.clone(),
            final_term: BaseNumber::with_radix(last, start.radix()).expect("terms are positive"),
            comma_sum,
        }
    }

    pub fn terminated(&self) -> bool {
        self.status == RunStatus::Terminated
    }
}

/// Terms produced by repeatedly applying the comma-successor rule.
pub struct NaiveTerms<N> {
    next: Option<N>,
    radix: Radix,
}

impl<N: Natural> NaiveTerms<N> {
    pub fn new(start: N, radix: Radix) -> Self {
        NaiveTerms {
            next: (!start.is_zero()).then_some(start),
            radix,
        }
    }
}

impl<N: Natural> Iterator for NaiveTerms<N> {
    type Item = N;

    fn next(&mut self) -> Option<N> {
        let term = self.next.take()?;
        self.next = successor_of(&term, self.radix);
        Some(term)
    }
}

/// Reference runner: one successor computation per term.
///
/// `sink`, when given, receives every term in order.
pub fn run_naive(
    start: &BaseNumber,
    max_terms: u64,
    mut sink: Option<&mut dyn FnMut(&BigUint)>,
) -> RunOutcome {
    let radix = start.radix();
    let mut length = 0u64;
    let mut last = start.value().clone();
    let mut exhausted = true;
    let mut visit = |term: BigUint, length: &mut u64, last: &mut BigUint| {
        if let Some(sink) = sink.as_mut() {
            sink(&term);
        }
        *length += 1;
        *last = term;
    };
    // Values stay below start + max_terms·b², so u128 is enough for any
    // realistic budget.
    let fits = u128::from_biguint(start.value())
        .and_then(|s| s.checked_add((max_terms as u128).checked_mul(radix.squared() as u128)?))
        .is_some();
    if fits {
        let first = u128::from_biguint(start.value()).unwrap();
        for term in NaiveTerms::new(first, radix).take(max_terms as usize) {
            visit(BigUint::from(term), &mut length, &mut last);
        }
    } else {
        for term in NaiveTerms::new(start.value().clone(), radix).take(max_terms as usize) {
            visit(term, &mut length, &mut last);
        }
    }
    if length < max_terms || successor_of(&last, radix).is_none() {
        exhausted = false;
    }
    RunOutcome::new(start, !exhausted, BigUint::from(length), last)
}

pub(crate) fn require_bounded(start: &BaseNumber, limits: &RunLimits) -> Result<()> {
    if start.base() == 2 && !limits.is_bounded() {
        return Err(CommaError::Unbounded);
    }
    Ok(())
}

/// Jump-ahead runner. Produces exactly the length and final term of the
/// reference runner, in time proportional to the number of regions crossed.
pub fn run_fast(start: &BaseNumber, limits: &RunLimits) -> Result<RunOutcome> {
    require_bounded(start, limits)?;
    let mut cursor = Cursor::new(start);
    let limits = RunLimits {
        stop_at_region_exit: false,
        ..limits.clone()
    };
    let halt = cursor.advance(&limits, &mut Successor);
    Ok(RunOutcome::new(
        start,
        halt == Halt::Landmine,
        cursor.index(),
        cursor.current(),
    ))
}

/// The `n`-th term (1-based) of the comma sequence from `start`.
pub fn term_at(start: &BaseNumber, n: &BigUint) -> Result<BaseNumber> {
    if n.is_zero() {
        return Err(CommaError::ZeroIndex);
    }
    let outcome = run_fast(start, &RunLimits::terms(n.clone()))?;
    if outcome.length < *n {
        return Err(CommaError::BeyondEnd {
            requested: n.clone(),
            length: outcome.length,
        });
    }
    Ok(outcome.final_term)
}

/// Summary statistics of a run, plus an optional `(n, a(n)/n)` series.
#[derive(Debug, Clone)]
pub struct RunStats {
    pub outcome: RunOutcome,
    /// Number of commas, `length - 1`.
    pub commas: BigUint,
    pub mean_comma: f64,
    pub ratio_series: Vec<(BigUint, f64)>,
}

fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return f64::NAN;
    }
    // Scale so both fit an f64 mantissa comfortably.
    let shift = den.bits().saturating_sub(60);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Logarithmically spaced indices in `[1, length]`, always including both ends.
pub fn log_spaced_indices(length: &BigUint, points: usize) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = Vec::new();
    if length.is_zero() || points == 0 {
        return out;
    }
    let top = length.to_f64().unwrap_or(f64::MAX).max(1.0);
    let steps = points.max(2) - 1;
    for i in 0..=steps {
        let x = (top.ln() * i as f64 / steps as f64).exp().round().max(1.0);
        let idx = BigUint::from(x as u128).min(length.clone());
        if out.last() != Some(&idx) {
            out.push(idx);
        }
    }
    if out.last() != Some(length) {
        out.push(length.clone());
    }
    out
}

/// Length, final term and mean comma-number; with `ratio_points > 0` also
/// samples `a(n)/n` at logarithmically spaced `n`.
pub fn run_stats(start: &BaseNumber, limits: &RunLimits, ratio_points: usize) -> Result<RunStats> {
    let outcome = run_fast(start, limits)?;
    let commas = &outcome.length - 1u32;
    let mean_comma = big_ratio(&outcome.comma_sum, &commas);
    let mut ratio_series = Vec::new();
    if ratio_points > 0 {
        let mut cursor = Cursor::new(start);
        for idx in log_spaced_indices(&outcome.length, ratio_points) {
            cursor.advance(&RunLimits::terms(idx.clone()), &mut Successor);
            debug_assert_eq!(cursor.index(), idx);
            ratio_series.push((idx.clone(), big_ratio(&cursor.current(), &idx)));
        }
    }
    Ok(RunStats {
        outcome,
        commas,
        mean_comma,
        ratio_series,
    })
}

/// A maximal stretch of consecutive terms sharing leading digit and digit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stretch {
    pub lead: u64,
    pub digits: u32,
    pub first_index: BigUint,
    pub last_index: BigUint,
    pub first_term: BigUint,
    pub last_term: BigUint,
    /// Increase over one full period of `b` steps.
    pub period_sum: u64,
    pub full_periods: BigUint,
    /// Increase over the trailing partial period.
    pub remainder_sum: u64,
}

impl Stretch {
    fn new(lead: u64, digits: u32, first: (BigUint, BigUint), last: (BigUint, BigUint), radix: Radix) -> Self {
        let b = radix.get();
        let steps = &last.0 - &first.0;
        let trailing = (&first.1 % b).to_u64().unwrap();
        let rest = (&steps % b).to_u64().unwrap();
        Stretch {
            lead,
            digits,
            period_sum: period_sum(trailing, lead, radix),
            full_periods: &steps / b,
            remainder_sum: partial_period_sum(trailing, lead, rest, radix),
            first_index: first.0,
            last_index: last.0,
            first_term: first.1,
            last_term: last.1,
        }
    }

    /// Number of commas inside the stretch.
    pub fn steps(&self) -> BigUint {
        &self.last_index - &self.first_index
    }

    pub fn increase(&self) -> BigUint {
        &self.last_term - &self.first_term
    }

    /// Whether the periodic decomposition accounts for the whole increase.
    pub fn is_consistent(&self) -> bool {
        &self.full_periods * self.period_sum + self.remainder_sum == self.increase()
    }
}

/// Splits a run into its constant-leading-digit stretches.
pub fn decompose_regions(start: &BaseNumber, limits: &RunLimits) -> Result<Vec<Stretch>> {
    require_bounded(start, limits)?;
    let radix = start.radix();
    let limits = RunLimits {
        stop_at_region_exit: true,
        ..limits.clone()
    };
    let mut cursor = Cursor::new(start);
    let mut stretches = Vec::new();
    let mut first = (cursor.index(), cursor.current());
    let mut key = cursor.region_key();
    loop {
        let halt = cursor.advance(&limits, &mut Successor);
        if halt == Halt::RegionExit {
            let last_index = cursor.index() - 1u32;
            let last_term = cursor.current() - cursor.last_comma().expect("moved");
            stretches.push(Stretch::new(key.0, key.1, first, (last_index, last_term), radix));
            first = (cursor.index(), cursor.current());
            key = cursor.region_key();
        } else {
            stretches.push(Stretch::new(key.0, key.1, first, (cursor.index(), cursor.current()), radix));
            return Ok(stretches);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bn(v: u64, b: u64) -> BaseNumber {
        BaseNumber::new(v, b).unwrap()
    }

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn naive_prefixes() {
        let mut terms = Vec::new();
        let out = run_naive(&bn(1, 10), 9, Some(&mut |t: &BigUint| terms.push(t.clone())));
        assert_eq!(terms, [1u32, 12, 35, 94, 135, 186, 248, 331, 344].map(BigUint::from));
        assert_eq!(out.status, RunStatus::BudgetExhausted);

        let out = run_naive(&bn(3, 10), 100, None);
        assert_eq!(out.status, RunStatus::Terminated);
        assert_eq!(out.length, BigUint::from(2u32));
        assert_eq!(out.final_term, bn(36, 10));

        let base2: Vec<u128> = NaiveTerms::new(1u128, Radix::BINARY).take(9).collect();
        assert_eq!(base2, [1, 4, 5, 8, 9, 12, 13, 16, 17]);
    }

    #[test]
    fn naive_budget_at_landmine_reports_termination() {
        let out = run_naive(&bn(3, 10), 2, None);
        assert_eq!(out.status, RunStatus::Terminated);
        let out = run_fast(&bn(3, 10), &RunLimits::terms(2u32)).unwrap();
        assert_eq!(out.status, RunStatus::Terminated);
    }

    #[test]
    fn fast_flagship() {
        let out = run_fast(&bn(1, 10), &RunLimits::none()).unwrap();
        assert_eq!(out.status, RunStatus::Terminated);
        assert_eq!(out.length, BigUint::from(2_137_453u32));
        assert_eq!(out.final_term, bn(99_999_945, 10));
        assert_eq!(out.comma_sum, BigUint::from(99_999_944u32));
    }

    #[test]
    fn fast_long_runs() {
        let out = run_fast(&bn(4, 10), &RunLimits::none()).unwrap();
        assert_eq!((out.length, out.final_term.into_value()), (big("199900"), big("9999945")));
        let out = run_fast(&bn(6, 10), &RunLimits::none()).unwrap();
        assert_eq!(out.length, big("209534289952018960"));
        assert_eq!(out.final_term.into_value(), big("9999999999999999936"));
    }

    #[test]
    fn base_two_needs_a_bound() {
        assert_eq!(run_fast(&bn(1, 2), &RunLimits::none()), Err(CommaError::Unbounded));
        let out = run_fast(&bn(1, 2), &RunLimits::terms(9u32)).unwrap();
        assert_eq!(out.final_term, bn(17, 2));
        assert_eq!(out.status, RunStatus::BudgetExhausted);
    }

    #[test]
    fn term_lookup() {
        let one = bn(1, 10);
        assert_eq!(term_at(&one, &big("1942")).unwrap(), bn(99987, 10));
        assert_eq!(term_at(&one, &big("1943")).unwrap(), bn(100058, 10));
        assert_eq!(term_at(&one, &big("4114")).unwrap(), bn(199959, 10));
        assert_eq!(term_at(&one, &big("4115")).unwrap(), bn(200051, 10));
        assert_eq!(term_at(&one, &big("1")).unwrap(), one);
        assert_eq!(
            term_at(&one, &big("2137454")),
            Err(CommaError::BeyondEnd {
                requested: big("2137454"),
                length: big("2137453")
            })
        );
        assert_eq!(term_at(&one, &BigUint::from(0u32)), Err(CommaError::ZeroIndex));
    }

    #[test]
    fn stats() {
        let s = run_stats(&bn(1, 10), &RunLimits::none(), 64).unwrap();
        assert_eq!(s.commas, big("2137452"));
        assert!((s.mean_comma - 46.78).abs() < 0.01, "{}", s.mean_comma);
        let (n, r) = s.ratio_series.last().unwrap();
        assert_eq!(*n, big("2137453"));
        assert!((46.78..46.79).contains(r), "{r}");
        assert_eq!(s.ratio_series[0], (BigUint::from(1u32), 1.0));

        let s = run_stats(&bn(3, 10), &RunLimits::none(), 0).unwrap();
        assert_eq!(s.mean_comma, 33.0);
    }

    #[test]
    fn stretch_of_the_worked_example() {
        let stretches = decompose_regions(&bn(1, 10), &RunLimits::none()).unwrap();
        let s = stretches
            .iter()
            .find(|s| s.first_index == big("1943"))
            .expect("stretch starting at a(1943)");
        assert_eq!((s.lead, s.digits), (1, 6));
        assert_eq!(s.last_index, big("4114"));
        assert_eq!(s.steps(), big("2171"));
        assert_eq!(s.period_sum, 460);
        assert_eq!(s.full_periods, big("217"));
        assert_eq!(s.remainder_sum, 81);
        assert_eq!(s.increase(), big("99901"));
        assert!(stretches.iter().all(Stretch::is_consistent));
        // Stretches tile the run.
        for pair in stretches.windows(2) {
            assert_eq!(&pair[0].last_index + 1u32, pair[1].first_index);
        }
        assert_eq!(stretches.last().unwrap().last_term, big("99999945"));
    }

    #[test]
    fn base_two_stretches_match_reference() {
        let limits = RunLimits::terms(1000u32);
        let stretches = decompose_regions(&bn(1, 2), &limits).unwrap();
        let terms: Vec<u128> = NaiveTerms::new(1u128, Radix::BINARY).take(1000).collect();
        for s in &stretches {
            assert_eq!(s.lead, 1);
            assert!(s.is_consistent());
            let first = s.first_index.to_usize().unwrap() - 1;
            let last = s.last_index.to_usize().unwrap() - 1;
            assert_eq!(BigUint::from(terms[first]), s.first_term);
            assert_eq!(BigUint::from(terms[last]), s.last_term);
            // f = 1 in base 2: every pair of steps adds 1 + 3.
            assert_eq!(s.period_sum, 4);
        }
    }

    #[test]
    fn term_stream_matches_reference_in_every_base() {
        for b in 2..=12u64 {
            let radix = Radix::new(b).unwrap();
            for start in 1..=30u128 {
                let cursor = RegionCursor::new(start, radix).unwrap();
                let mut nav = Successor;
                let fast = Terms::new(cursor, &mut nav).take(20_000);
                let naive = NaiveTerms::new(start, radix).take(20_000);
                assert!(fast.eq(naive), "b={b} start={start}");
            }
        }
    }

    #[test]
    fn widening_preserves_results() {
        // Starting on BigUint from the outset must agree with the u128 path.
        let start = bn(7, 10);
        let mut small = Cursor::new(&start);
        let mut wide = Cursor::Big(RegionCursor::new(BigUint::from(7u32), Radix::DECIMAL).unwrap());
        assert_eq!(small.advance(&RunLimits::none(), &mut Successor), Halt::Landmine);
        assert_eq!(wide.advance(&RunLimits::none(), &mut Successor), Halt::Landmine);
        assert_eq!(small.index(), wide.index());
        assert_eq!(small.current(), BigUint::from(936u32));

        // A start beyond the u128 headroom runs on BigUint directly.
        let huge = BaseNumber::new(BigUint::from(10u32).pow(40) + 3u32, 10).unwrap();
        let out = run_fast(&huge, &RunLimits::terms(5000u32)).unwrap();
        let reference = run_naive(&huge, 5000, None);
        assert_eq!(out, reference);
    }

    #[test]
    fn value_ceiling_stops_at_first_term_past_it() {
        let out = run_fast(&bn(1, 10), &RunLimits::value(100_000u32)).unwrap();
        assert_eq!(out.final_term, bn(100058, 10));
        assert_eq!(out.length, big("1943"));
        assert_eq!(out.status, RunStatus::BudgetExhausted);
    }

    #[test]
    fn period_sums() {
        let r = Radix::DECIMAL;
        assert_eq!(period_sum(8, 1, r), 460);
        assert_eq!(partial_period_sum(8, 1, 1, r), 81);
        // Base 3: +12 per period for f = 1 and +15 for f = 2.
        for x in 0..3 {
            assert_eq!(period_sum(x, 1, Radix::TERNARY), 12);
            assert_eq!(period_sum(x, 2, Radix::TERNARY), 15);
        }
    }
}
