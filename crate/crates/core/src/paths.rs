//! Walking the child graph: explicit choices at branch-points, the unique
//! infinite base-3 path, the two base-2 sequences, and tree exploration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{CommaError, Result};
use crate::numeral::BaseNumber;
use crate::runner::{require_bounded, Cursor, Halt, Navigator, RunLimits};

/// Bits consumed at branch-points: `false` (0) takes the smaller child,
/// `true` (1) the larger.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChoiceString {
    bits: Vec<bool>,
    consumed: usize,
}

impl ChoiceString {
    pub fn new(bits: Vec<bool>) -> Self {
        ChoiceString { bits, consumed: 0 }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn consumed_count(&self) -> usize {
        self.consumed
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.consumed
    }
}

impl FromStr for ChoiceString {
    type Err = CommaError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CommaError::InvalidChoice(other)),
            })
            .collect::<Result<_>>()?;
        Ok(ChoiceString::new(bits))
    }
}

impl fmt::Display for ChoiceString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

impl Navigator for ChoiceString {
    fn choose(&mut self, _index: &BigUint, _value: &BigUint) -> Option<bool> {
        let bit = self.bits.get(self.consumed).copied()?;
        self.consumed += 1;
        Some(bit)
    }
}

/// Alternates lower, upper, lower, ... forever.
#[derive(Debug, Clone, Default)]
pub struct Alternating {
    next_upper: bool,
}

impl Navigator for Alternating {
    fn choose(&mut self, _index: &BigUint, _value: &BigUint) -> Option<bool> {
        let bit = self.next_upper;
        self.next_upper = !bit;
        Some(bit)
    }
}

/// A branch-point visited during a walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchHit {
    pub index: BigUint,
    pub value: BigUint,
    pub chosen: bool,
}

struct Recording<'a> {
    inner: &'a mut dyn Navigator,
    hits: Vec<BranchHit>,
}

impl Navigator for Recording<'_> {
    fn choose(&mut self, index: &BigUint, value: &BigUint) -> Option<bool> {
        let bit = self.inner.choose(index, value)?;
        self.hits.push(BranchHit {
            index: index.clone(),
            value: value.clone(),
            chosen: bit,
        });
        Some(bit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathOutcome {
    Landmine,
    BudgetExhausted,
    /// Stopped at a branch-point with no choice left; the final term is that
    /// branch-point.
    ChoicesExhausted,
}

impl PathOutcome {
    fn from_halt(h: Halt) -> Self {
        match h {
            Halt::Landmine => PathOutcome::Landmine,
            Halt::ChoicesExhausted => PathOutcome::ChoicesExhausted,
            _ => PathOutcome::BudgetExhausted,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PathOutcome::Landmine => "landmine",
            PathOutcome::BudgetExhausted => "budget",
            PathOutcome::ChoicesExhausted => "choices-exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathReport {
    pub outcome: PathOutcome,
    pub length: BigUint,
    pub final_term: BaseNumber,
    pub branch_points_hit: Vec<BranchHit>,
}

impl PathReport {
    /// The bits chosen so far, as a `0`/`1` string.
    pub fn choices(&self) -> String {
        self.branch_points_hit.iter().map(|h| if h.chosen { '1' } else { '0' }).collect()
    }
}

fn report(cursor: &Cursor, halt: Halt, hits: Vec<BranchHit>) -> PathReport {
    PathReport {
        outcome: PathOutcome::from_halt(halt),
        length: cursor.index(),
        final_term: BaseNumber::with_radix(cursor.current(), cursor.radix()).expect("terms are positive"),
        branch_points_hit: hits,
    }
}

/// Follows the child graph from `start`, asking `nav` at each branch-point.
pub fn walk_with_choices(start: &BaseNumber, nav: &mut dyn Navigator, limits: &RunLimits) -> Result<PathReport> {
    require_bounded(start, limits)?;
    let mut cursor = Cursor::new(start);
    let mut rec = Recording { inner: nav, hits: Vec::new() };
    let limits = RunLimits {
        stop_at_region_exit: false,
        ..limits.clone()
    };
    let halt = cursor.advance(&limits, &mut rec);
    Ok(report(&cursor, halt, rec.hits))
}

/// Terms streamed from `start` while following `nav`; stops at a landmine or
/// when `nav` declines.
pub struct PathTerms<V> {
    cursor: Cursor,
    nav: V,
    done: bool,
}

impl<V: Navigator> Iterator for PathTerms<V> {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        if self.done {
            return None;
        }
        let term = self.cursor.current();
        self.done = self.cursor.step(&mut self.nav).is_some();
        Some(term)
    }
}

pub fn path_terms<V: Navigator>(start: &BaseNumber, nav: V) -> PathTerms<V> {
    PathTerms {
        cursor: Cursor::new(start),
        nav,
        done: false,
    }
}

/// The unique infinite path in the base-3 child graph, from 1.
pub fn base3_infinite_path() -> PathTerms<Alternating> {
    path_terms(&BaseNumber::new(1u32, 3).unwrap(), Alternating::default())
}

/// The base-2 comma sequence from 1 (`1`, then `4k`, `4k+1`) or from 2
/// (`4k+2`, `4k+3`), by closed form.
pub fn base2_sequence(start: u64) -> Result<impl Iterator<Item = u64>> {
    let offset = match start {
        1 => 0,
        2 => 2,
        other => return Err(CommaError::NotBase2Start(other)),
    };
    let head = (start == 1).then_some(1);
    let first_k = u64::from(start == 1);
    Ok(head
        .into_iter()
        .chain((first_k..).flat_map(move |k| [4 * k + offset, 4 * k + offset + 1])))
}

/// How far [`explore_tree`] follows the branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplorePolicy {
    /// Every branch until it ends or hits the budget.
    Exhaustive,
    /// Stop each live path once it has made `depth` choices and reached the
    /// next branch-point.
    Survivors { depth: usize },
}

#[derive(Debug, Clone, Default)]
pub struct ExploreReport {
    /// Paths that ended (landmine or budget), in discovery order.
    pub leaves: Vec<PathReport>,
    /// Paths still alive at a branch-point when the depth was reached.
    pub survivors: Vec<PathReport>,
}

impl ExploreReport {
    pub fn longest(&self) -> Option<&PathReport> {
        self.leaves.iter().chain(&self.survivors).max_by(|a, b| a.length.cmp(&b.length))
    }
}

struct Once(Option<bool>);

impl Navigator for Once {
    fn choose(&mut self, _index: &BigUint, _value: &BigUint) -> Option<bool> {
        self.0.take()
    }
}

#[derive(Clone)]
struct Live {
    cursor: Cursor,
    hits: Vec<BranchHit>,
}

fn run_until_branch(mut live: Live, first: Option<bool>, limits: &RunLimits) -> (Live, Halt) {
    let mut once = Once(first);
    let mut rec = Recording {
        inner: &mut once,
        hits: std::mem::take(&mut live.hits),
    };
    let halt = live.cursor.advance(limits, &mut rec);
    live.hits = rec.hits;
    (live, halt)
}

/// Explores the child-graph tree below `root`, forking at every branch-point.
///
/// Each level of forks is walked in parallel; between forks the jump-ahead
/// engine carries each path.
pub fn explore_tree(root: &BaseNumber, policy: ExplorePolicy, limits: &RunLimits) -> Result<ExploreReport> {
    require_bounded(root, limits)?;
    let limits = RunLimits {
        stop_at_region_exit: false,
        ..limits.clone()
    };
    let mut out = ExploreReport::default();
    let start = Live {
        cursor: Cursor::new(root),
        hits: Vec::new(),
    };
    let mut frontier = Vec::new();
    let (live, halt) = run_until_branch(start, None, &limits);
    match halt {
        Halt::ChoicesExhausted => frontier.push(live),
        _ => out.leaves.push(report(&live.cursor, halt, live.hits)),
    }
    let mut depth = 0;
    while !frontier.is_empty() {
        if let ExplorePolicy::Survivors { depth: max } = policy {
            if depth >= max {
                break;
            }
        }
        let walked: Vec<(Live, Halt)> = frontier
            .into_par_iter()
            .flat_map_iter(|live| {
                let other = live.clone();
                [(live, false), (other, true)]
            })
            .map(|(live, bit)| run_until_branch(live, Some(bit), &limits))
            .collect();
        frontier = Vec::new();
        for (live, halt) in walked {
            if halt == Halt::ChoicesExhausted {
                frontier.push(live);
            } else {
                out.leaves.push(report(&live.cursor, halt, live.hits));
            }
        }
        depth += 1;
    }
    out.survivors = frontier
        .into_iter()
        .map(|live| report(&live.cursor, Halt::ChoicesExhausted, live.hits))
        .collect();
    Ok(out)
}
