//! Closed-form classification of nodes in the successor graph `G_s` (edges
//! `k -> successor(k)`) and the child graph `G_c` (edges `k -> each child`).
//!
//! - Landmines, with no children: `(b-1)^i x y`, `1 <= x <= b-2`, `y = b-1-x`.
//! - Branch-points, with two children: `w x` with `w = b-1-2x`, or
//!   `d (b-1)^i d (b-1-d)` with `1 <= d <= b-2`.
//! - Non-successors `>= b²-1`: `c·b^i` with `i >= 2`, `2 <= c <= b-1`.
//! - Non-children: only numbers below `b²`.

use num_bigint::BigUint;

use crate::error::{CommaError, Result};
use crate::numeral::{from_digits, power, BaseNumber, Natural, Radix};
use crate::stepper::{children_of, parent_of, successor_of};

/// Degree information for one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeClass {
    pub is_landmine: bool,
    pub child_count: u8,
    pub has_parent_in_gc: bool,
    pub has_parent_in_gs: bool,
}

/// Which graph an ancestor walk follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Graph {
    Successor,
    Child,
}

fn landmine_digits(d: &[u64], b: u64) -> bool {
    let len = d.len();
    if len < 2 || b < 3 {
        return false;
    }
    let (x, y) = (d[len - 2], d[len - 1]);
    (1..=b - 2).contains(&x) && x + y == b - 1 && d[..len - 2].iter().all(|&v| v == b - 1)
}

/// Whether `n` has no comma-children.
pub fn is_landmine(n: &BaseNumber) -> bool {
    landmine_digits(&n.digits(), n.base())
}

/// `b²(b^i - 1) + (b-1)(x+1)`.
pub fn landmine(radix: Radix, i: u32, x: u64) -> BigUint {
    let b = radix.get();
    let b2 = BigUint::from(radix.squared());
    b2 * (power(radix, i) - 1u32) + (b - 1) * (x + 1)
}

/// Every landmine in ascending order (empty in base 2).
pub fn landmine_iter(radix: Radix) -> impl Iterator<Item = BigUint> {
    let b = radix.get();
    let xs = if b < 3 { 0 } else { b - 2 };
    (0u32..).flat_map(move |i| (1..=xs).map(move |x| landmine(radix, i, x))).take(if b < 3 { 0 } else { usize::MAX })
}

/// All landmines `<= limit`, ascending.
pub fn landmines_up_to(limit: &BigUint, radix: Radix) -> Vec<BigUint> {
    landmine_iter(radix).take_while(|v| v <= limit).collect()
}

/// Small form `w·b + x` with `w = b-1-2x`; `w = 0` gives a one-digit number.
fn small_branch(n: &BigUint, b: u64) -> bool {
    let Some(v) = n.to_u64_digits().first().copied().filter(|_| n.bits() <= 64) else {
        return false;
    };
    if v >= b * b {
        return false;
    }
    let (w, x) = (v / b, v % b);
    x >= 1 && 2 * x < b && w == b - 1 - 2 * x
}

/// Multi-digit form `d (b-1)^i d (b-1-d)`; returns `(d, i)`.
fn long_branch(d: &[u64], b: u64) -> Option<(u64, usize)> {
    let len = d.len();
    if len < 3 || b < 3 {
        return None;
    }
    let lead = d[0];
    let ok = (1..=b - 2).contains(&lead)
        && d[len - 2] == lead
        && d[len - 1] == b - 1 - lead
        && d[1..len - 2].iter().all(|&v| v == b - 1);
    ok.then_some((lead, len - 3))
}

/// Whether `n` has exactly two comma-children.
pub fn has_two_children(n: &BaseNumber) -> bool {
    let b = n.base();
    small_branch(n.value(), b) || long_branch(&n.digits(), b).is_some()
}

/// Both children of a branch-point, smaller first.
pub fn branch_children(n: &BaseNumber) -> Result<(BaseNumber, BaseNumber)> {
    let radix = n.radix();
    let b = radix.get();
    if let Some((d, i)) = long_branch(&n.digits(), b) {
        let mut lower = vec![d];
        lower.extend(std::iter::repeat_n(b - 1, i + 2));
        let mut upper = vec![d + 1];
        upper.extend(std::iter::repeat_n(0, i + 2));
        return Ok((
            BaseNumber::with_radix(from_digits(&lower, radix), radix)?,
            BaseNumber::with_radix(from_digits(&upper, radix), radix)?,
        ));
    }
    if small_branch(n.value(), b) {
        let kids = children_of(n.value(), radix);
        if let [(lo, _), (hi, _)] = kids.as_slice() {
            return Ok((
                BaseNumber::with_radix(lo.clone(), radix)?,
                BaseNumber::with_radix(hi.clone(), radix)?,
            ));
        }
    }
    Err(CommaError::NotBranchPoint {
        value: n.value().clone(),
        base: b,
    })
}

/// Every branch-point in ascending order (empty in base 2).
pub fn branch_point_iter(radix: Radix) -> impl Iterator<Item = BigUint> {
    let b = radix.get();
    let mut small: Vec<u64> = (1..=(b - 1) / 2).map(|x| (b - 1 - 2 * x) * b + x).collect();
    small.sort_unstable();
    let ds = if b < 3 { 0 } else { b - 2 };
    let long = (0usize..).flat_map(move |i| {
        (1..=ds).map(move |d| {
            let mut digits = vec![d];
            digits.extend(std::iter::repeat_n(b - 1, i));
            digits.extend([d, b - 1 - d]);
            from_digits(&digits, radix)
        })
    });
    small
        .into_iter()
        .map(BigUint::from)
        .chain(long.take(if b < 3 { 0 } else { usize::MAX }))
}

/// All branch-points `<= limit`, ascending.
pub fn branch_points_up_to(limit: &BigUint, radix: Radix) -> Vec<BigUint> {
    branch_point_iter(radix).take_while(|v| v <= limit).collect()
}

fn is_successor_value<N: Natural>(n: &N, radix: Radix) -> bool {
    match parent_of(n, radix) {
        Some(k) => successor_of(&k, radix).as_ref() == Some(n),
        None => false,
    }
}

/// Whether `n` is not the comma-successor of any number (in-degree 0 in `G_s`).
pub fn is_non_successor(n: &BaseNumber) -> bool {
    let radix = n.radix();
    let b = radix.get();
    if n.value() + 1u32 < BigUint::from(radix.squared()) || b == 2 {
        // No closed form below b²-1; the parent is unique, so one check decides.
        return !is_successor_value(n.value(), radix);
    }
    let d = n.digits();
    d.len() >= 3 && (2..b).contains(&d[0]) && d[1..].iter().all(|&v| v == 0)
}

/// Whether `n` is not a comma-child of any number (in-degree 0 in `G_c`).
pub fn is_non_child(n: &BaseNumber) -> bool {
    if *n.value() >= BigUint::from(n.radix().squared()) {
        return false;
    }
    parent_of(n.value(), n.radix()).is_none()
}

/// Non-successors `< limit`, ascending.
pub fn non_successors_below(limit: &BigUint, radix: Radix) -> Vec<BigUint> {
    let b = radix.get();
    let small_end = BigUint::from(radix.squared() - 1).min(limit.clone());
    let small_end = small_end.to_u64_digits().first().copied().unwrap_or(0);
    let mut out: Vec<BigUint> = (1..small_end)
        .filter(|&v| !is_successor_value(&(v as u128), radix))
        .map(BigUint::from)
        .collect();
    if b == 2 {
        return out;
    }
    for i in 2.. {
        let unit = power(radix, i);
        if &unit * 2u32 >= *limit {
            break;
        }
        out.extend((2..b).map(|c| &unit * c).take_while(|v| v < limit));
    }
    out
}

/// Non-children, all of which lie below `b²`.
pub fn non_children(radix: Radix) -> Vec<u64> {
    (1..radix.squared())
        .filter(|&v| parent_of(&(v as u128), radix).is_none())
        .collect()
}

pub fn classify(n: &BaseNumber) -> NodeClass {
    let radix = n.radix();
    let child_count = children_of(n.value(), radix).len() as u8;
    let parent = parent_of(n.value(), radix);
    let has_parent_in_gs = parent
        .as_ref()
        .is_some_and(|k| successor_of(k, radix).as_ref() == Some(n.value()));
    NodeClass {
        is_landmine: child_count == 0,
        child_count,
        has_parent_in_gc: parent.is_some(),
        has_parent_in_gs,
    }
}

/// Result of walking back through parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ancestry {
    pub root: BaseNumber,
    pub steps: u64,
    /// False when the step budget ran out before reaching a root.
    pub complete: bool,
}

pub const DEFAULT_ANCESTOR_BUDGET: u64 = 10_000_000;

fn walk_back<N: Natural>(mut n: N, radix: Radix, graph: Graph, budget: u64) -> (N, u64, bool) {
    let mut steps = 0;
    while steps < budget {
        let Some(k) = parent_of(&n, radix) else {
            return (n, steps, true);
        };
        if graph == Graph::Successor && successor_of(&k, radix).as_ref() != Some(&n) {
            return (n, steps, true);
        }
        n = k;
        steps += 1;
    }
    (n, steps, false)
}

/// The most remote ancestor of `n` in the chosen graph.
pub fn root_ancestor(n: &BaseNumber, graph: Graph, budget: u64) -> Ancestry {
    let radix = n.radix();
    let (root, steps, complete) = match u128::from_biguint(n.value()) {
        Some(v) => {
            let (r, s, c) = walk_back(v, radix, graph, budget);
            (BigUint::from(r), s, c)
        }
        None => walk_back(n.value().clone(), radix, graph, budget),
    };
    Ancestry {
        root: BaseNumber::with_radix(root, radix).expect("ancestors are positive"),
        steps,
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bn(v: u64, b: u64) -> BaseNumber {
        BaseNumber::new(v, b).unwrap()
    }

    fn nums(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_u64_digits().first().copied().unwrap_or(0)).collect()
    }

    #[test]
    fn landmine_examples() {
        assert!(is_landmine(&bn(18, 10)));
        assert!(is_landmine(&bn(99945, 10)));
        assert!(!is_landmine(&bn(19, 10)));
        assert!((1..5000).all(|v| !is_landmine(&bn(v, 2))));
        assert_eq!(nums(&landmines_up_to(&100u32.into(), Radix::DECIMAL)), [18, 27, 36, 45, 54, 63, 72, 81]);
        // 11, 211 and 2211 in ternary; the last is easy to overlook.
        let brute: Vec<u64> = (1..=100).filter(|&v| children_of(&(v as u128), Radix::TERNARY).is_empty()).collect();
        assert_eq!(brute, [4, 22, 76]);
        assert_eq!(nums(&landmines_up_to(&100u32.into(), Radix::TERNARY)), brute);
        let upto = landmines_up_to(&1000u32.into(), Radix::DECIMAL);
        assert_eq!(nums(&upto[8..]), [918, 927, 936, 945, 954, 963, 972, 981]);
    }

    #[test]
    fn branch_examples() {
        assert!(has_two_children(&bn(14, 10)));
        assert!(has_two_children(&bn(33, 10)));
        assert!(has_two_children(&bn(1, 3)));
        assert!((1..5000).all(|v| !has_two_children(&bn(v, 2))));
        let (lo, hi) = branch_children(&bn(118, 10)).unwrap();
        assert_eq!((lo, hi), (bn(199, 10), bn(200, 10)));
        let (lo, hi) = branch_children(&bn(14, 10)).unwrap();
        assert_eq!((lo, hi), (bn(59, 10), bn(60, 10)));
        let (lo, hi) = branch_children(&bn(13, 3)).unwrap();
        assert_eq!((lo, hi), (bn(17, 3), bn(18, 3)));
        assert!(branch_children(&bn(15, 10)).is_err());
        assert_eq!(
            nums(&branch_points_up_to(&4000u32.into(), Radix::DECIMAL)),
            [14, 33, 52, 71, 118, 227, 336, 445, 554, 663, 772, 881, 1918, 2927, 3936]
        );
    }

    #[test]
    fn predecessor_examples() {
        assert!(is_non_successor(&bn(200, 10)));
        assert!(!is_non_successor(&bn(110, 10)));
        let below = non_successors_below(&99u32.into(), Radix::DECIMAL);
        assert_eq!(below.len(), 54);
        let expected = [
            1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13, 14, 15, 16, 17, 18, 19, 20, 21, 25, 26, 27, 28, 29, 30, 31, 32, 37,
            38, 39, 40, 41, 42, 43, 49, 50, 51, 52, 53, 54, 60, 62, 63, 64, 65, 70, 74, 75, 76, 80, 86, 87, 90, 98,
            200, 300, 400, 500, 600,
        ];
        assert_eq!(nums(&non_successors_below(&601u32.into(), Radix::DECIMAL)), expected);

        assert!(is_non_child(&bn(98, 10)));
        assert!(!is_non_child(&bn(10_000, 10)));
        let roots = non_children(Radix::DECIMAL);
        assert_eq!(roots.len(), 50);
        assert_eq!(&roots[roots.len() - 3..], [86, 87, 98]);
        assert_eq!(non_children(Radix::BINARY), [1, 2]);
    }

    #[test]
    fn ancestors() {
        let r = |n, g| root_ancestor(&bn(n, 10), g, DEFAULT_ANCESTOR_BUDGET).root;
        assert_eq!(r(60, Graph::Successor), bn(60, 10));
        assert_eq!(r(60, Graph::Child), bn(14, 10));
        assert_eq!(r(12, Graph::Successor), bn(1, 10));
        let rs = [
            1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 1, 13, 14, 15, 16, 17, 18, 19, 20, 21, 20, 10, 2, 25, 26, 27, 28, 29,
            30, 31, 32, 30, 21, 1, 3, 37, 38, 39, 40, 41, 42, 43, 40, 31, 20, 13, 4, 49, 50, 51, 52, 53, 54, 50, 41,
            32, 10, 14, 60, 5, 62,
        ];
        for (i, &want) in rs.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(r(n, Graph::Successor), bn(want, 10), "R_s({n})");
            if n < 60 {
                assert_eq!(r(n, Graph::Child), bn(want, 10), "R_c({n})");
            }
        }
        let partial = root_ancestor(&bn(99_999_945, 10), Graph::Successor, 100);
        assert!(!partial.complete);
        assert_eq!(partial.steps, 100);
        let full = root_ancestor(&bn(99_999_945, 10), Graph::Successor, DEFAULT_ANCESTOR_BUDGET);
        assert_eq!((full.root, full.steps, full.complete), (bn(1, 10), 2_137_452, true));
    }

    #[test]
    fn node_classes() {
        let c = classify(&bn(14, 10));
        assert_eq!(c.child_count, 2);
        assert!(!c.is_landmine && !c.has_parent_in_gc);
        let c = classify(&bn(60, 10));
        assert!(c.has_parent_in_gc && !c.has_parent_in_gs);
        let c = classify(&bn(18, 10));
        assert!(c.is_landmine);
    }

    #[test]
    fn landmine_density() {
        for b in 3..=12u64 {
            let radix = Radix::new(b).unwrap();
            let all = landmines_up_to(&power(radix, 7), radix);
            for digits in 2..=7u32 {
                let lo = power(radix, digits - 1);
                let hi = power(radix, digits);
                let count = all.iter().filter(|v| **v >= lo && **v < hi).count();
                assert_eq!(count as u64, b - 2, "b={b} digits={digits}");
            }
        }
    }

    #[test]
    fn small_non_successor_count() {
        for b in 3..=12u64 {
            let radix = Radix::new(b).unwrap();
            let count = non_successors_below(&BigUint::from(b * b - 1), radix).len() as u64;
            assert_eq!(count, (b * b + b - 2) / 2, "b={b}");
        }
    }
}
