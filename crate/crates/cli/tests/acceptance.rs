//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines always print.
//! Criterion 15 is reported but never fails the suite. With `COMMA_ONLINE=1`
//! criterion 14 fetches real b-files (cached under the default cache dir)
//! instead of using the bundled fixtures.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use comma_cli::default_cache_dir;
use comma_cli::generators::GeneratorSpec;
use comma_cli::oeis::{compare, OeisClient};
use comma_core::base3::{base3_all_terminate, verify_predictor, verify_transitions};
use comma_core::classifier::{
    branch_points_up_to, has_two_children, is_landmine, is_non_child, is_non_successor, landmines_up_to,
    non_children, non_successors_below,
};
use comma_core::kangaroo::{asymptotic_estimate, expected_length_log10, gf_coefficients, survival_count};
use comma_core::numeral::power;
use comma_core::paths::{
    base2_sequence, base3_infinite_path, explore_tree, path_terms, walk_with_choices, Alternating, ExplorePolicy,
};
use comma_core::runner::{decompose_regions, NaiveTerms, RegionCursor, Successor, Terms};
use comma_core::stepper::{children_of, parent_of, successor_of};
use comma_core::transform::{comma_transform, is_comma_sequence, TermSequence};
use comma_core::{run_fast, term_at, BaseNumber, ChoiceString, PathOutcome, Radix, RunLimits};
use num_bigint::BigUint;
use rayon::prelude::*;

type Check = Result<String, String>;

/// Number, name, check, and whether a failure fails the suite.
type Criterion = (u32, &'static str, fn() -> Check, bool);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

fn bn(v: impl Into<BigUint>, b: u64) -> BaseNumber {
    BaseNumber::new(v, b).unwrap()
}

fn within(elapsed: Duration, secs: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(secs), || format!("took {elapsed:.2?}, budget {secs}s"))
}

fn flagship() -> Check {
    let t = Instant::now();
    let out = run_fast(&bn(1u32, 10), &RunLimits::none()).map_err(|e| e.to_string())?;
    within(t.elapsed(), 1)?;
    ensure(out.terminated() && out.length == big("2137453") && *out.final_term.value() == big("99999945"), || {
        format!("got length {} final {}", out.length, out.final_term)
    })?;
    Ok(format!("length {} final {}", out.length, out.final_term))
}

const LENGTHS: [&str; 8] = [
    "2137453",
    "194697747222394",
    "2",
    "199900",
    "19706",
    "209534289952018960",
    "15",
    "198104936410",
];
const FINALS: [&str; 8] = [
    "99999945",
    "9999999999999918",
    "36",
    "9999945",
    "999945",
    "9999999999999999936",
    "936",
    "9999999999972",
];

fn length_table() -> Check {
    let t = Instant::now();
    for (i, (len, fin)) in LENGTHS.iter().zip(FINALS).enumerate() {
        let start = i as u32 + 1;
        let out = run_fast(&bn(start, 10), &RunLimits::none()).map_err(|e| e.to_string())?;
        ensure(out.terminated() && out.length == big(len) && *out.final_term.value() == big(fin), || {
            format!("start {start}: length {} final {}", out.length, out.final_term)
        })?;
    }
    within(t.elapsed(), 30)?;
    Ok(format!("starts 1-8 exact in {:.2?}", t.elapsed()))
}

fn oracle() -> Check {
    const CAP: usize = 1_000_000;
    let cases: Vec<(u64, u128)> = (3..=12).flat_map(|b| (1..=100).map(move |s| (b, s))).collect();
    let compared: usize = cases
        .par_iter()
        .map(|&(b, start)| -> Result<usize, String> {
            let radix = Radix::new(b).unwrap();
            let mut nav = Successor;
            let fast: Vec<u128> = Terms::new(RegionCursor::new(start, radix).unwrap(), &mut nav).take(CAP).collect();
            let naive: Vec<u128> = NaiveTerms::new(start, radix).take(CAP).collect();
            ensure(fast == naive, || {
                let at = fast.iter().zip(&naive).position(|(a, b)| a != b).unwrap_or(fast.len().min(naive.len()));
                format!("b={b} start={start}: streams differ at term {}", at + 1)
            })?;
            if fast.len() < CAP {
                let out = run_fast(&bn(start as u64, b), &RunLimits::none()).unwrap();
                ensure(out.length == BigUint::from(fast.len()), || format!("b={b} start={start}: length"))?;
            }
            Ok(fast.len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{} runs, {compared} terms identical", cases.len()))
}

fn worked_example() -> Check {
    let one = bn(1u32, 10);
    for (n, v) in [(1942u32, 99987u32), (1943, 100058), (4114, 199959), (4115, 200051)] {
        let got = term_at(&one, &BigUint::from(n)).map_err(|e| e.to_string())?;
        ensure(*got.value() == BigUint::from(v), || format!("a({n}) = {got}"))?;
    }
    let stretches = decompose_regions(&one, &RunLimits::terms(5000u32)).map_err(|e| e.to_string())?;
    let s = stretches
        .iter()
        .find(|s| s.first_index == BigUint::from(1943u32))
        .ok_or("no stretch starts at 1943")?;
    ensure(
        s.last_index == BigUint::from(4114u32)
            && s.period_sum == 460
            && s.full_periods == BigUint::from(217u32)
            && s.remainder_sum == 81
            && s.is_consistent(),
        || format!("{s:?}"),
    )?;
    Ok("a(1943..4114) rises by 460*217 + 81".into())
}

fn classifier_lists() -> Check {
    let r = Radix::DECIMAL;
    let million = 1_000_000u64;
    let brute: Vec<BigUint> =
        (1..=million).filter(|n| children_of(&(*n as u128), r).is_empty()).map(BigUint::from).collect();
    let closed = landmines_up_to(&BigUint::from(million), r);
    ensure(closed == brute, || "landmines <= 10^6 differ from brute force".into())?;
    let printed = [18u32, 27, 36, 45, 54, 63, 72, 81, 918, 927, 936, 945, 954, 963, 972, 981, 9918];
    ensure(closed.iter().zip(printed).all(|(a, b)| *a == BigUint::from(b)), || "landmine prefix".into())?;

    let bps = branch_points_up_to(&BigUint::from(10_000u32), r);
    let brute: Vec<BigUint> =
        (1..=10_000u64).filter(|n| children_of(&(*n as u128), r).len() == 2).map(BigUint::from).collect();
    let printed = [14u32, 33, 52, 71, 118, 227, 336, 445, 554, 663, 772, 881, 1918, 2927, 3936];
    ensure(bps == brute && bps.iter().zip(printed).all(|(a, b)| *a == BigUint::from(b)), || {
        format!("branch-points {bps:?}")
    })?;

    let succ: Vec<i64> = (1..=19u128).map(|n| successor_of(&n, r).map_or(-1, |v| v as i64)).collect();
    ensure(succ == [12, 24, 36, 48, 61, 73, 85, 97, 100, 11, 23, 35, 47, 59, 72, 84, 96, -1, 110], || {
        format!("successors {succ:?}")
    })?;

    let orphans = non_children(r);
    ensure(orphans.len() == 50 && orphans.iter().all(|&n| n < 100), || format!("{} non-children", orphans.len()))?;
    let non_succ = non_successors_below(&BigUint::from(99u32), r);
    ensure(non_succ.len() == 54, || format!("{} non-successors below 99", non_succ.len()))?;
    Ok(format!("{} landmines, {} branch-points, 50 non-children, 54 non-successors", closed.len(), bps.len()))
}

fn theorem_equivalence() -> Check {
    const LIMIT: u64 = 100_000;
    let mismatches: u64 = (2..=12u64)
        .into_par_iter()
        .map(|b| {
            let radix = Radix::new(b).unwrap();
            let b2 = radix.squared();
            let mut reached = vec![false; LIMIT as usize + 1];
            let mut bad = 0;
            for n in 1..=LIMIT {
                if let Some(s) = successor_of(&(n as u128), radix) {
                    if s <= LIMIT as u128 {
                        reached[s as usize] = true;
                    }
                }
            }
            for n in 1..=LIMIT {
                let kids = children_of(&(n as u128), radix).len();
                let num = bn(n, b);
                let orphan = parent_of(&(n as u128), radix).is_none();
                bad += u64::from(is_landmine(&num) != (kids == 0));
                bad += u64::from(has_two_children(&num) != (kids == 2));
                bad += u64::from(is_non_child(&num) != orphan);
                if n + 1 >= b2 {
                    bad += u64::from(is_non_successor(&num) == reached[n as usize]);
                }
            }
            bad
        })
        .sum();
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok("bases 2-12, n <= 10^5: 0 mismatches".into())
}

fn transform() -> Check {
    let nat = TermSequence::from_u64s(&(0..=13).collect::<Vec<_>>(), Radix::DECIMAL).unwrap();
    let t = comma_transform(&nat).map_err(|e| e.to_string())?;
    ensure(t == [1, 12, 23, 34, 45, 56, 67, 78, 89, 91, 1, 11, 21], || format!("{t:?}"))?;
    let mut checked = 0;
    for b in 3..=12u64 {
        for start in 1..=20u32 {
            let terms: Vec<BigUint> = path_terms(&bn(start, b), Successor).take(10_000).collect();
            if terms.len() < 2 {
                continue;
            }
            let seq = TermSequence::new(terms, Radix::new(b).unwrap()).unwrap();
            ensure(is_comma_sequence(&seq), || format!("b={b} start={start} is not a fixed point"))?;
            checked += 1;
        }
    }
    Ok(format!("transform prefix exact; {checked} generated prefixes are fixed points"))
}

fn base2() -> Check {
    const N: usize = 100_000;
    let r = Radix::BINARY;
    let mut seen = BTreeSet::new();
    for start in [1u64, 2] {
        let closed: Vec<u64> = base2_sequence(start).unwrap().take(N).collect();
        let naive: Vec<u64> = NaiveTerms::new(start as u128, r).take(N).map(|v| v as u64).collect();
        ensure(closed == naive, || format!("start {start}: closed form differs"))?;
        for v in NaiveTerms::new(start as u128, r).map(|v| v as u64).take_while(|&v| v <= 400_000) {
            ensure(seen.insert(v), || format!("{v} appears in both runs"))?;
        }
    }
    ensure(seen.len() == 400_000 && seen.iter().copied().eq(1..=400_000), || "runs do not cover 1..4*10^5".into())?;
    Ok("closed forms exact for 10^5 terms; runs partition 1..4*10^5".into())
}

fn base3() -> Check {
    let t = Instant::now();
    let p = verify_predictor(3u64.pow(10));
    ensure(p.is_empty(), || format!("predictor: {} mismatches, first {:?}", p.len(), p[0]))?;
    let tr = verify_transitions(5);
    ensure(tr.is_empty(), || format!("transitions: {} mismatches, first {:?}", tr.len(), tr[0]))?;
    let term = base3_all_terminate(3u64.pow(7));
    ensure(term.all_terminate(), || format!("unexpected finals {:?}", term.unexpected_finals))?;
    within(t.elapsed(), 60)?;
    Ok(format!("predictor to 3^10, transitions h<=5, {} starts end at 3^h-5 ({:.2?})", term.starts, t.elapsed()))
}

fn base3_path() -> Check {
    let prefix: Vec<BigUint> = base3_infinite_path().take(20).collect();
    let printed = [1u32, 5, 12, 13, 18, 20, 27, 28, 32, 39, 40, 44, 51, 52, 57, 59, 67, 72, 74, 81];
    ensure(prefix.iter().zip(printed).all(|(a, b)| *a == BigUint::from(b)) && prefix.len() == 20, || {
        format!("{prefix:?}")
    })?;
    let r = Radix::TERNARY;
    let mut streamed = 0u64;
    for t in base3_infinite_path().take(1_000_000) {
        let v = u128::try_from(t).map_err(|_| "term beyond u128")?;
        ensure(!children_of(&v, r).is_empty(), || format!("landmine {v} on the path"))?;
        streamed += 1;
    }
    ensure(streamed == 1_000_000, || format!("path ended after {streamed} terms"))?;
    let rep = walk_with_choices(&bn(1u32, 3), &mut Alternating::default(), &RunLimits::terms(1_000_000u32))
        .map_err(|e| e.to_string())?;
    let choices = rep.choices();
    let alternates = choices.chars().enumerate().all(|(i, c)| c == if i % 2 == 0 { '0' } else { '1' });
    ensure(rep.outcome == PathOutcome::BudgetExhausted && alternates && choices.len() >= 2, || {
        format!("{:?} with choices {choices}", rep.outcome)
    })?;
    Ok(format!("prefix exact; 10^6 terms, no landmine; {} alternating choices", choices.len()))
}

fn base10_path() -> Check {
    let t = Instant::now();
    let prefix: Vec<BigUint> = path_terms(&bn(20u32, 10), Successor).take(16).collect();
    let printed = [20u32, 22, 46, 107, 178, 260, 262, 284, 327, 401, 415, 469, 564, 610, 616, 682];
    ensure(prefix.iter().zip(printed).all(|(a, b)| *a == BigUint::from(b)), || format!("{prefix:?}"))?;
    let mut none = ChoiceString::new(Vec::new());
    let rep = walk_with_choices(&bn(20u32, 10), &mut none, &RunLimits::none()).map_err(|e| e.to_string())?;
    ensure(rep.outcome == PathOutcome::ChoicesExhausted && *rep.final_term.value() == big("19999999918"), || {
        format!("{:?} at {}", rep.outcome, rep.final_term)
    })?;
    // Counting 20 as term 1, the branch-point is term 412987859; the
    // published index is one higher (see the decisions notes).
    ensure(rep.length == big("412987859"), || format!("branch-point at term {}", rep.length))?;
    within(t.elapsed(), 120)?;
    Ok(format!(
        "first 16 exact; first branch-point 19999999918 at term {} (published index 412987860; this count starts at 20 = term 1)",
        rep.length
    ))
}

fn kangaroo() -> Check {
    let t = Instant::now();
    let expected = [0u64, 1, 2, 4, 5, 7, 8, 11, 12, 14, 16, 18, 20, 23, 24, 26, 29, 31, 33, 36, 38, 40, 42];
    let gf = gf_coefficients(24);
    for (b, &want) in (2..=24u64).zip(&expected) {
        let r = Radix::new(b).unwrap();
        let d2 = survival_count(r, 2);
        ensure(d2 == want && gf[b as usize] == want as i64, || format!("b={b}: D={d2} gf={}", gf[b as usize]))?;
        for m in [3, 4] {
            ensure(survival_count(r, m) == d2, || format!("b={b}: D depends on m={m}"))?;
        }
    }
    let succeed = 100 - survival_count(Radix::DECIMAL, 2);
    ensure(succeed == 88, || format!("{succeed} of 100 succeed"))?;
    within(t.elapsed(), 60)?;
    Ok(format!("D(2..24) exact, equal to series, m-independent; 88 of 100 succeed ({:.2?})", t.elapsed()))
}

fn asymptotics() -> Check {
    let a = asymptotic_estimate(10);
    let empirical = expected_length_log10(10, 12);
    ensure((a.length_log10 - 8.69).abs() <= 0.01, || format!("exponent {}", a.length_log10))?;
    ensure((empirical - 8.33).abs() <= 0.01, || format!("empirical exponent {empirical}"))?;
    Ok(format!("exponent {:.3}, empirical {:.3}", a.length_log10, empirical))
}

const OEIS: [(&str, &str); 5] = [
    ("A121805", "run:base=10,start=1"),
    ("A367341", "landmines:base=10"),
    ("A367346", "branch-points:base=10"),
    ("A367362", "transform:base=10,from=0"),
    ("A367621", "infinite-path"),
];

fn oeis() -> Check {
    let online = std::env::var("COMMA_ONLINE").is_ok_and(|v| v == "1");
    let client = if online {
        OeisClient::new(default_cache_dir(), false)
    } else {
        OeisClient::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures"), true)
    };
    let mut total = 0;
    for (id, spec) in OEIS {
        let bfile = client.fetch_bfile(id.parse().unwrap()).map_err(|e| e.to_string())?;
        let spec: GeneratorSpec = spec.parse().unwrap();
        let r = compare(&bfile, spec.terms().unwrap(), None);
        ensure(r.ok() && r.compared > 0, || format!("{id}: {:?}", r.first_mismatch))?;
        total += r.compared;
    }
    Ok(format!("5 sequences, {total} entries, 0 mismatches ({})", if online { "live" } else { "fixtures" }))
}

fn stretch() -> Check {
    let t = Instant::now();
    let rep = explore_tree(&bn(30u32, 10), ExplorePolicy::Exhaustive, &RunLimits::none()).map_err(|e| e.to_string())?;
    let longest = rep.longest().ok_or("empty tree")?;
    let target = power(Radix::DECIMAL, 365) - 82u32;
    ensure(rep.survivors.is_empty() && *longest.final_term.value() == target, || {
        format!("longest path ends at a {}-digit term", longest.final_term.digit_count())
    })?;
    let len = longest.length.to_string();
    Ok(format!(
        "{} paths; longest ends at 10^365 - 82 after {}.{}e{} terms ({:.2?})",
        rep.leaves.len(),
        &len[..1],
        &len[1..4],
        len.len() - 1,
        t.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 15] = [
        (1, "flagship run from 1", flagship, true),
        (2, "lengths and finals for starts 1-8", length_table, true),
        (3, "naive and fast runners agree", oracle, true),
        (4, "region decomposition example", worked_example, true),
        (5, "classifier lists", classifier_lists, true),
        (6, "closed forms vs brute force", theorem_equivalence, true),
        (7, "comma transform", transform, true),
        (8, "base 2 closed forms", base2, true),
        (9, "base 3 predictor and transitions", base3, true),
        (10, "base 3 infinite path", base3_path, true),
        (11, "base 10 path from 20", base10_path, true),
        (12, "survival counts", kangaroo, true),
        (13, "asymptotic exponents", asymptotics, true),
        (14, "OEIS b-files", oeis, true),
        (15, "root-30 tree (stretch)", stretch, false),
    ];
    let mut failed = 0;
    for (n, name, check, gating) in criteria {
        let t = Instant::now();
        let result = check();
        let tag = match (&result, gating) {
            (Ok(_), _) => "PASS",
            (Err(_), true) => "FAIL",
            (Err(_), false) => "FAIL, not gating",
        };
        let detail = result.as_ref().unwrap_or_else(|e| e);
        println!("[{tag}] {n:>2} {name}: {detail} [{:.2?}]", t.elapsed());
        if result.is_err() && gating {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all gating criteria passed");
        ExitCode::SUCCESS
    }
}
