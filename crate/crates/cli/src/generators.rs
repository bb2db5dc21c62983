//! Named sequence generators for checking against b-files.
//!
//! A spec is `name` or `name:key=value,key=value`, e.g. `run:base=10,start=1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use comma_core::classifier::{branch_point_iter, landmine_iter};
use comma_core::kangaroo::survival_count;
use comma_core::numeral::{leading_digit, trailing_digit};
use comma_core::paths::{base3_infinite_path, path_terms};
use comma_core::runner::Successor;
use comma_core::stepper::successor_of;
use comma_core::{BaseNumber, Radix};
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("unknown generator {0:?} (try run, landmines, branch-points, transform, infinite-path, successors, deaths)")]
    Unknown(String),
    #[error("generator {name}: bad parameter {param:?}")]
    BadParam { name: String, param: String },
    #[error("generator {name}: {reason}")]
    Invalid { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Comma sequence from `start`.
    Run { base: u64, start: BigUint },
    Landmines { base: u64 },
    BranchPoints { base: u64 },
    /// Comma transform of `from, from+1, ...`.
    Transform { base: u64, from: BigUint },
    /// The base-3 infinite path from 1.
    InfinitePath,
    /// Successor of `n = 1, 2, ...`, or `-1` at a landmine.
    Successors { base: u64 },
    /// Death counts `D(b)` for `b = from, from+1, ...`.
    Deaths { from: u64, m: u32 },
}

impl FromStr for GeneratorSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for kv in rest.split(',').filter(|p| !p.is_empty()) {
            let bad = || SpecError::BadParam { name: name.into(), param: kv.into() };
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            params.insert(k.trim(), v.trim());
        }
        let mut take = |key: &str, default: &str| -> Result<String, SpecError> {
            Ok(params.remove(key).unwrap_or(default).to_string())
        };
        let num = |key: &str, v: String| -> Result<BigUint, SpecError> {
            v.parse().map_err(|_| SpecError::BadParam { name: name.into(), param: format!("{key}={v}") })
        };
        let small = |key: &str, v: String| -> Result<u64, SpecError> {
            v.parse().map_err(|_| SpecError::BadParam { name: name.into(), param: format!("{key}={v}") })
        };
        let spec = match name {
            "run" => GeneratorSpec::Run {
                base: small("base", take("base", "10")?)?,
                start: num("start", take("start", "1")?)?,
            },
            "landmines" => GeneratorSpec::Landmines { base: small("base", take("base", "10")?)? },
            "branch-points" => GeneratorSpec::BranchPoints { base: small("base", take("base", "10")?)? },
            "transform" => GeneratorSpec::Transform {
                base: small("base", take("base", "10")?)?,
                from: num("from", take("from", "0")?)?,
            },
            "infinite-path" => GeneratorSpec::InfinitePath,
            "successors" => GeneratorSpec::Successors { base: small("base", take("base", "10")?)? },
            "deaths" => GeneratorSpec::Deaths {
                from: small("from", take("from", "2")?)?,
                m: small("m", take("m", "2")?)? as u32,
            },
            other => return Err(SpecError::Unknown(other.to_string())),
        };
        if let Some((k, v)) = params.into_iter().next() {
            return Err(SpecError::BadParam { name: name.into(), param: format!("{k}={v}") });
        }
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Run { base, start } => write!(f, "run:base={base},start={start}"),
            GeneratorSpec::Landmines { base } => write!(f, "landmines:base={base}"),
            GeneratorSpec::BranchPoints { base } => write!(f, "branch-points:base={base}"),
            GeneratorSpec::Transform { base, from } => write!(f, "transform:base={base},from={from}"),
            GeneratorSpec::InfinitePath => write!(f, "infinite-path"),
            GeneratorSpec::Successors { base } => write!(f, "successors:base={base}"),
            GeneratorSpec::Deaths { from, m } => write!(f, "deaths:from={from},m={m}"),
        }
    }
}

fn radix(name: &str, base: u64) -> Result<Radix, SpecError> {
    Radix::new(base).map_err(|e| SpecError::Invalid { name: name.into(), reason: e.to_string() })
}

impl GeneratorSpec {
    /// The generated sequence; unbounded generators stream lazily.
    pub fn terms(&self) -> Result<Box<dyn Iterator<Item = BigInt>>, SpecError> {
        let signed = |it: Box<dyn Iterator<Item = BigUint>>| -> Box<dyn Iterator<Item = BigInt>> {
            Box::new(it.map(BigInt::from))
        };
        Ok(match self {
            GeneratorSpec::Run { base, start } => {
                let start = BaseNumber::with_radix(start.clone(), radix("run", *base)?)
                    .map_err(|e| SpecError::Invalid { name: "run".into(), reason: e.to_string() })?;
                signed(Box::new(path_terms(&start, Successor)))
            }
            GeneratorSpec::Landmines { base } => signed(Box::new(landmine_iter(radix("landmines", *base)?))),
            GeneratorSpec::BranchPoints { base } => {
                signed(Box::new(branch_point_iter(radix("branch-points", *base)?)))
            }
            GeneratorSpec::Transform { base, from } => {
                let r = radix("transform", *base)?;
                let b = r.get();
                let from = from.clone();
                // Gap between n and n+1: last digit of n, first digit of n+1.
                Box::new((0u64..).map(move |i| {
                    let n = &from + i;
                    BigInt::from(trailing_digit(&n, r) * b + leading_digit(&(&n + 1u32), r))
                }))
            }
            GeneratorSpec::InfinitePath => signed(Box::new(base3_infinite_path())),
            GeneratorSpec::Successors { base } => {
                let r = radix("successors", *base)?;
                Box::new((1u128..).map(move |n| match successor_of(&n, r) {
                    Some(s) => BigInt::from(s),
                    None => BigInt::from(-1),
                }))
            }
            GeneratorSpec::Deaths { from, m } => {
                if *from < 2 {
                    return Err(SpecError::Invalid { name: "deaths".into(), reason: "from must be >= 2".into() });
                }
                let m = *m;
                Box::new((*from..=Radix::MAX).map(move |b| BigInt::from(survival_count(Radix::new(b).unwrap(), m))))
            }
        })
    }
}
