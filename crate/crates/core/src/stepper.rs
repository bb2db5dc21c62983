//! Single comma steps: children, successor and parent.
//!
//! A comma-child of `k` is any `k' = k + d_m·b + e` whose leading digit is
//! `e`, where `d_m` is the trailing digit of `k`. There are at most two, and
//! the smaller one is the comma-successor.

use num_bigint::BigUint;

use crate::error::{CommaError, Result};
use crate::numeral::{leading_digit, place_value, BaseNumber, Natural, Radix};

/// The two-digit separator `d_m·b + e`, in `[1, b²-1]` and never a multiple of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CommaNumber {
    value: u64,
    radix: Radix,
}

impl CommaNumber {
    pub fn new(value: u64, radix: Radix) -> Option<Self> {
        let valid = value >= 1 && value < radix.squared() && !value.is_multiple_of(radix.get());
        valid.then_some(CommaNumber { value, radix })
    }

    pub fn from_digits(trailing: u64, leading: u64, radix: Radix) -> Option<Self> {
        if trailing >= radix.get() || leading >= radix.get() {
            return None;
        }
        Self::new(trailing * radix.get() + leading, radix)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    /// `d_m`, the trailing digit of the earlier term.
    pub fn trailing_part(self) -> u64 {
        self.value / self.radix.get()
    }

    /// `e`, the leading digit of the later term.
    pub fn leading_part(self) -> u64 {
        self.value % self.radix.get()
    }
}

/// Up to two children of a number, ascending; the first is the successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildSet {
    pub children: Vec<BaseNumber>,
    pub comma_numbers: Vec<CommaNumber>,
}

impl ChildSet {
    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn successor(&self) -> Option<&BaseNumber> {
        self.children.first()
    }

    pub fn values(&self) -> Vec<BigUint> {
        self.children.iter().map(|c| c.value().clone()).collect()
    }
}

/// Scans the `b-1` candidates `n + d_m·b + e` in ascending `e`, calling
/// `accept(candidate, e)` for each one whose leading digit is `e`. Stops
/// early when `accept` returns false.
fn scan_children<N: Natural>(n: &N, radix: Radix, mut accept: impl FnMut(N, u64) -> bool) {
    let b = radix.get();
    let mut candidate = n.clone();
    candidate.add_u64(n.rem_u64(b) * b + 1);
    // The window spans fewer than b values, so at most one digit-count change.
    let unit = place_value(&candidate, radix);
    let next_unit = unit.mul_u64(b);
    for e in 1..b {
        let place = if candidate >= next_unit { &next_unit } else { &unit };
        let lead = candidate.div_nat(place).as_u64().expect("leading digit below the base");
        if lead == e && !accept(candidate.clone(), e) {
            return;
        }
        candidate.add_u64(1);
    }
}

/// All comma-children of `n >= 1`, ascending, with their comma-numbers.
pub fn children_of<N: Natural>(n: &N, radix: Radix) -> Vec<(N, u64)> {
    let trailing = n.rem_u64(radix.get());
    let mut out = Vec::with_capacity(2);
    scan_children(n, radix, |child, e| {
        out.push((child, trailing * radix.get() + e));
        true
    });
    debug_assert!(out.len() <= 2);
    out
}

/// The comma-successor of `n >= 1`, or `None` if `n` is a landmine.
pub fn successor_of<N: Natural>(n: &N, radix: Radix) -> Option<N> {
    let mut found = None;
    scan_children(n, radix, |child, _| {
        found = Some(child);
        false
    });
    found
}

/// The unique parent `k` with `n` among its children, if any.
pub fn parent_of<N: Natural>(n: &N, radix: Radix) -> Option<N> {
    let b = radix.get();
    let f = leading_digit(n, radix);
    let x = (n.rem_u64(b) + b - f % b) % b;
    let k = n.checked_sub_nat(&N::from_u64(x * b + f))?;
    if k.is_zero() {
        return None;
    }
    // Re-validate: the algebra guarantees membership for k >= 1.
    let is_child = children_of(&k, radix).iter().any(|(c, _)| c == n);
    is_child.then_some(k)
}

pub fn comma_children(n: &BaseNumber) -> ChildSet {
    let radix = n.radix();
    let mut children = Vec::new();
    let mut comma_numbers = Vec::new();
    for (child, cn) in children_of(n.value(), radix) {
        children.push(BaseNumber::with_radix(child, radix).expect("children are positive"));
        comma_numbers.push(CommaNumber::new(cn, radix).expect("valid comma-number"));
    }
    ChildSet {
        children,
        comma_numbers,
    }
}

pub fn comma_successor(n: &BaseNumber) -> Option<BaseNumber> {
    successor_of(n.value(), n.radix()).map(|v| BaseNumber::with_radix(v, n.radix()).unwrap())
}

pub fn comma_parent(n: &BaseNumber) -> Option<BaseNumber> {
    parent_of(n.value(), n.radix()).map(|v| BaseNumber::with_radix(v, n.radix()).unwrap())
}

/// Whether `n` is the comma-successor of `k` (an edge of the successor graph).
pub fn is_successor_of(k: &BaseNumber, n: &BaseNumber) -> Result<bool> {
    if k.radix() != n.radix() {
        return Err(CommaError::BaseMismatch {
            left: k.base(),
            right: n.base(),
        });
    }
    Ok(successor_of(k.value(), k.radix()).as_ref() == Some(n.value()))
}
