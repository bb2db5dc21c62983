use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use comma_core::base3::{base3_all_terminate, verify_predictor, verify_transitions};
use comma_core::classifier::{
    branch_points_up_to, classify, landmines_up_to, root_ancestor, Graph, DEFAULT_ANCESTOR_BUDGET,
};
use comma_core::kangaroo::survival_report;
use comma_core::numeral::{power, radix_string};
use comma_core::paths::{base3_infinite_path, explore_tree, path_terms, walk_with_choices, ExplorePolicy};
use comma_core::runner::{run_stats, NaiveTerms, Successor};
use comma_core::stepper::{children_of, parent_of, successor_of};
use comma_core::transform::{comma_transform, TermSequence};
use comma_core::{BaseNumber, ChoiceString, CommaError, PathReport, Radix, RunLimits};
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::args::{Base3Command, Cli, Command, Emit, ExploreArgs, PathArgs, RunArgs};
use crate::generators::SpecError;
use crate::oeis::{compare, OeisClient, OeisError};
use crate::output::{Emitter, Record, Value};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Comma(#[from] CommaError),
    #[error(transparent)]
    Oeis(#[from] OeisError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{source_name}: line {line}: not an integer: {token:?}")]
    Input { source_name: String, line: usize, token: String },
    /// A check ran and found disagreements; the details are in the output.
    #[error("{0}")]
    Check(String),
}

/// `$XDG_CACHE_HOME/comma-seq`, else `~/.cache/comma-seq`, else the temp dir.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(std::env::temp_dir)
        .join("comma-seq")
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    let mut em = Emitter::new(cli.format, out);
    let result = dispatch(cli, stdin, &mut em);
    em.finish()?;
    result
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, em: &mut Emitter) -> Result<(), CliError> {
    match &cli.command {
        Command::Run(args) => run(args, em),
        Command::Classify { base, n } => classify_one(*base, n, em),
        Command::Landmines { base, max } => {
            let list = landmines_up_to(max, Radix::new(*base)?);
            list_out(em, "landmine", list)
        }
        Command::BranchPoints { base, max } => {
            let list = branch_points_up_to(max, Radix::new(*base)?);
            list_out(em, "branch_point", list)
        }
        Command::Path(args) => path(args, em),
        Command::Explore(args) => explore(args, em),
        Command::Transform { base, input } => transform(*base, input, stdin, em),
        Command::Base3(cmd) => base3(cmd, em),
        Command::Kangaroo { bases, m, check_gf } => kangaroo(*bases, *m, *check_gf, em),
        Command::Verify { oeis, generator, limit } => {
            let dir = cli.cache_dir.clone().unwrap_or_else(default_cache_dir);
            let client = OeisClient::new(dir, cli.offline);
            let bfile = client.fetch_bfile(*oeis)?;
            let r = compare(&bfile, generator.terms()?, *limit);
            let (index, expected, actual) = match &r.first_mismatch {
                Some(m) => (
                    Value::from(m.index),
                    Value::Int(m.expected.clone()),
                    m.actual.clone().map_or(Value::from("none"), Value::Int),
                ),
                None => (Value::from(""), Value::from(""), Value::from("")),
            };
            em.emit(
                &Record::new()
                    .with("a_number", r.a_number.to_string())
                    .with("generator", generator.to_string())
                    .with("compared", r.compared)
                    .with("ok", r.ok())
                    .with("mismatch_index", index)
                    .with("expected", expected)
                    .with("actual", actual),
            )?;
            match r.first_mismatch {
                Some(m) => Err(CliError::Check(format!("{}: mismatch at index {}", r.a_number, m.index))),
                None => Ok(()),
            }
        }
    }
}

fn list_out(em: &mut Emitter, key: &'static str, values: impl IntoIterator<Item = impl Into<Value>>) -> Result<(), CliError> {
    em.set_inline(true);
    for v in values {
        em.emit(&Record::new().with(key, v))?;
    }
    Ok(())
}

fn limits(max_terms: &Option<BigUint>, max_value: &Option<BigUint>) -> RunLimits {
    RunLimits { max_terms: max_terms.clone(), max_value: max_value.clone(), stop_at_region_exit: false }
}

/// Terms of the sequence from `start`, stopping at the budget.
fn term_stream(args: &RunArgs, start: &BaseNumber) -> Result<Box<dyn Iterator<Item = BigUint>>, CliError> {
    if start.base() == 2 && args.max_terms.is_none() && args.max_value.is_none() {
        return Err(CommaError::Unbounded.into());
    }
    let terms: Box<dyn Iterator<Item = BigUint>> = if args.naive {
        Box::new(NaiveTerms::new(start.value().clone(), start.radix()))
    } else {
        Box::new(path_terms(start, Successor))
    };
    let terms: Box<dyn Iterator<Item = BigUint>> = match &args.max_terms {
        Some(n) => {
            let n = usize::try_from(n).unwrap_or(usize::MAX);
            Box::new(terms.take(n))
        }
        None => terms,
    };
    Ok(match args.max_value.clone() {
        // Up to and including the first term at or above the ceiling.
        Some(v) => {
            let mut done = false;
            Box::new(terms.take_while(move |t| {
                let keep = !done;
                done = *t >= v;
                keep
            }))
        }
        None => terms,
    })
}

fn term_value(args: &RunArgs, radix: Radix, t: &BigUint) -> Value {
    if args.digits {
        Value::Text(radix_string(t, radix))
    } else {
        Value::from(t)
    }
}

fn run(args: &RunArgs, em: &mut Emitter) -> Result<(), CliError> {
    let start = BaseNumber::new(args.start.clone(), args.base)?;
    let radix = start.radix();
    match args.emit {
        Emit::Summary if args.naive => {
            let mut length = 0u64;
            let mut last = start.value().clone();
            for t in term_stream(args, &start)? {
                length += 1;
                last = t;
            }
            let status = if successor_of(&last, radix).is_none() { "terminated" } else { "budget" };
            em.emit(
                &Record::new()
                    .with("length", length)
                    .with("final", term_value(args, radix, &last))
                    .with("status", status)
                    .with("comma_sum", &last - start.value()),
            )?;
        }
        Emit::Summary => {
            let stats = run_stats(&start, &limits(&args.max_terms, &args.max_value), 0)?;
            let o = &stats.outcome;
            em.emit(
                &Record::new()
                    .with("length", &o.length)
                    .with("final", term_value(args, radix, o.final_term.value()))
                    .with("status", if o.terminated() { "terminated" } else { "budget" })
                    .with("comma_sum", &o.comma_sum)
                    .with("mean_comma", stats.mean_comma),
            )?;
        }
        Emit::Terms => {
            for t in term_stream(args, &start)? {
                em.emit(&Record::new().with("term", term_value(args, radix, &t)))?;
            }
        }
        Emit::Commas => {
            let mut prev: Option<BigUint> = None;
            for t in term_stream(args, &start)? {
                if let Some(p) = prev {
                    em.emit(&Record::new().with("comma", &t - p))?;
                }
                prev = Some(t);
            }
        }
        Emit::RatioSeries => {
            let stats = run_stats(&start, &limits(&args.max_terms, &args.max_value), args.points)?;
            for (n, ratio) in &stats.ratio_series {
                em.emit(&Record::new().with("n", n).with("ratio", *ratio))?;
            }
        }
    }
    Ok(())
}

fn or_minus_one(v: Option<BigUint>) -> Value {
    v.map_or(Value::Int(BigInt::from(-1)), Value::from)
}

fn classify_one(base: u64, n: &BigUint, em: &mut Emitter) -> Result<(), CliError> {
    let num = BaseNumber::new(n.clone(), base)?;
    let radix = num.radix();
    let class = classify(&num);
    let children: Vec<String> = children_of(n, radix).into_iter().map(|(c, _)| c.to_string()).collect();
    let root = |g| {
        let a = root_ancestor(&num, g, DEFAULT_ANCESTOR_BUDGET);
        if a.complete {
            Value::from(a.root.value())
        } else {
            Value::from("unknown")
        }
    };
    em.emit(
        &Record::new()
            .with("n", n)
            .with("digits", num.to_digit_string())
            .with("landmine", class.is_landmine)
            .with("branch_point", class.child_count == 2)
            .with("children", children.join(" "))
            .with("successor", or_minus_one(successor_of(n, radix)))
            .with("parent", or_minus_one(parent_of(n, radix)))
            .with("is_child", class.has_parent_in_gc)
            .with("is_successor", class.has_parent_in_gs)
            .with("root_gs", root(Graph::Successor))
            .with("root_gc", root(Graph::Child)),
    )?;
    Ok(())
}

fn path_record(root: &BigUint, report: &PathReport) -> Record {
    Record::new()
        .with("root", root)
        .with("choices", report.choices())
        .with("outcome", report.outcome.as_str())
        .with("length", &report.length)
        .with("final", report.final_term.to_digit_string())
}

fn path(args: &PathArgs, em: &mut Emitter) -> Result<(), CliError> {
    if args.infinite {
        if args.base != 3 {
            return Err(CommaError::UnsupportedBase { base: args.base, reason: "the infinite path is known only in base 3" }.into());
        }
        let count = args.count.unwrap_or(0) as usize;
        return list_out(em, "term", base3_infinite_path().take(count));
    }
    let (Some(start), Some(choices)) = (&args.start, &args.choices) else {
        unreachable!("clap requires --start and --choices without --infinite")
    };
    let start_num = BaseNumber::new(start.clone(), args.base)?;
    let mut nav: ChoiceString = choices.parse()?;
    let report = walk_with_choices(&start_num, &mut nav, &limits(&args.max_terms, &args.max_value))?;
    em.emit(&path_record(start, &report))?;
    Ok(())
}

fn explore(args: &ExploreArgs, em: &mut Emitter) -> Result<(), CliError> {
    let root = BaseNumber::new(args.root.clone(), args.base)?;
    let (policy, lim) = match (args.stretch, args.depth) {
        (true, _) => (ExplorePolicy::Exhaustive, RunLimits::none()),
        (false, Some(depth)) => (ExplorePolicy::Survivors { depth }, RunLimits::none()),
        (false, None) => (ExplorePolicy::Exhaustive, RunLimits::value(power(root.radix(), args.max_digits))),
    };
    let report = explore_tree(&root, policy, &lim)?;
    if args.longest {
        if let Some(p) = report.longest() {
            em.emit(&path_record(&args.root, p))?;
        }
        return Ok(());
    }
    for p in report.leaves.iter().chain(&report.survivors) {
        em.emit(&path_record(&args.root, p))?;
    }
    Ok(())
}

fn transform(base: u64, input: &str, stdin: &mut dyn Read, em: &mut Emitter) -> Result<(), CliError> {
    let radix = Radix::new(base)?;
    let text = if input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input)?
    };
    let source_name = if input == "-" { "stdin" } else { input };
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let v: BigUint = token.parse().map_err(|_| CliError::Input {
                source_name: source_name.to_string(),
                line: i + 1,
                token: token.to_string(),
            })?;
            terms.push(v);
        }
    }
    let cns = comma_transform(&TermSequence::new(terms, radix)?)?;
    list_out(em, "comma", cns)
}

fn base3(cmd: &Base3Command, em: &mut Emitter) -> Result<(), CliError> {
    let (check, cases, mismatches, first) = match *cmd {
        Base3Command::VerifyPredictor { limit } => {
            let m = verify_predictor(limit);
            let first = m.first().map(|m| format!("n={} predicted={:?} actual={:?}", m.n, m.predicted, m.actual));
            ("predictor", limit, m.len(), first)
        }
        Base3Command::VerifyTransitions { h_max } => {
            let m = verify_transitions(h_max);
            let first = m.first().map(|m| format!("e={} t={} expected={:?}", m.exponent, m.t, m.expected));
            ("transitions", u64::from(h_max + 1) * 16, m.len(), first)
        }
        Base3Command::Terminate { x_max } => {
            let r = base3_all_terminate(x_max);
            let bad = (r.starts - r.terminated) as usize + r.unexpected_finals.len();
            let first = r.unexpected_finals.first().map(|s| format!("start={s}"));
            ("terminate", r.starts, bad, first)
        }
    };
    em.emit(
        &Record::new()
            .with("check", check)
            .with("cases", cases)
            .with("mismatches", mismatches)
            .with("first_mismatch", first.clone().unwrap_or_default()),
    )?;
    match first {
        Some(f) if mismatches > 0 => Err(CliError::Check(format!("base-3 {check}: {mismatches} mismatches, first {f}"))),
        _ if mismatches > 0 => Err(CliError::Check(format!("base-3 {check}: {mismatches} mismatches"))),
        _ => Ok(()),
    }
}

fn kangaroo((lo, hi): (u64, u64), m: u32, check_gf: bool, em: &mut Emitter) -> Result<(), CliError> {
    let mut failed = Vec::new();
    for b in lo..=hi {
        let r = survival_report(Radix::new(b)?, m);
        if !r.matches_gf() {
            failed.push(b);
        }
        em.emit(
            &Record::new()
                .with("base", b)
                .with("deaths", r.deaths)
                .with("gf", r.gf_coefficient)
                .with("estimate", r.asymptotic_estimate)
                .with("match", r.matches_gf()),
        )?;
    }
    if check_gf && !failed.is_empty() {
        return Err(CliError::Check(format!("death counts differ from the series at bases {failed:?}")));
    }
    Ok(())
}
