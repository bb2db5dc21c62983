//! OEIS b-file client: fetch, parse, cache on disk, compare.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, SystemTime};

use num_bigint::BigInt;
use thiserror::Error;

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("invalid A-number {0:?}: expected 'A' followed by six digits")]
    InvalidId(String),
    #[error("{id}: not cached and offline mode is on")]
    NotCached { id: ANumber },
    #[error("{id}: fetch failed: {source}")]
    Network {
        id: ANumber,
        #[source]
        source: Box<ureq::Error>,
    },
    #[error("{id}: line {line}: {reason}: {content:?}")]
    Parse { id: ANumber, line: usize, reason: &'static str, content: String },
    #[error("cache {path}: {source}")]
    Cache {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// A validated OEIS identifier such as `A121805`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ANumber(u32);

impl ANumber {
    pub fn digits(self) -> String {
        format!("{:06}", self.0)
    }

    pub fn bfile_name(self) -> String {
        format!("b{}.txt", self.digits())
    }
}

impl FromStr for ANumber {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, OeisError> {
        let bad = || OeisError::InvalidId(s.to_string());
        let rest = s.strip_prefix('A').ok_or_else(bad)?;
        if rest.len() != 6 || !rest.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(ANumber(rest.parse().map_err(|_| bad())?))
    }
}

impl fmt::Display for ANumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{:06}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisBFile {
    pub a_number: ANumber,
    pub entries: Vec<(i64, BigInt)>,
    pub fetched_at: SystemTime,
}

/// Parse a b-file body. Blank lines and `#` comments are skipped; indices
/// must increase strictly.
pub fn parse_bfile(id: ANumber, body: &str) -> Result<Vec<(i64, BigInt)>, OeisError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (n, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason| OeisError::Parse { id, line: n + 1, reason, content: raw.to_string() };
        let mut fields = line.split_whitespace();
        let (Some(i), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected 'index value'"));
        };
        let index: i64 = i.parse().map_err(|_| err("bad index"))?;
        let value: BigInt = v.parse().map_err(|_| err("bad value"))?;
        if entries.last().is_some_and(|&(prev, _)| index <= prev) {
            return Err(err("index not increasing"));
        }
        entries.push((index, value));
    }
    Ok(entries)
}

/// Fetches b-files, keeping the raw body under `cache_dir/bNNNNNN.txt`.
/// Cached copies are served without touching the network.
pub struct OeisClient {
    cache_dir: PathBuf,
    offline: bool,
    base_url: String,
    agent: ureq::Agent,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>, offline: bool) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(60)))
            .build()
            .into();
        OeisClient { cache_dir: cache_dir.into(), offline, base_url: DEFAULT_BASE_URL.to_string(), agent }
    }

    /// Point at a mirror instead of oeis.org.
    pub fn with_base_url(mut self, url: impl Into<String>) -> Self {
        self.base_url = url.into();
        self
    }

    pub fn cache_path(&self, id: ANumber) -> PathBuf {
        self.cache_dir.join(id.bfile_name())
    }

    pub fn fetch_bfile(&self, id: ANumber) -> Result<OeisBFile, OeisError> {
        let path = self.cache_path(id);
        let (body, fetched_at) = match read_cached(&path)? {
            Some(hit) => hit,
            None if self.offline => return Err(OeisError::NotCached { id }),
            None => {
                let body = self.download(id)?;
                store(&self.cache_dir, &path, &body)?;
                (body, SystemTime::now())
            }
        };
        Ok(OeisBFile { a_number: id, entries: parse_bfile(id, &body)?, fetched_at })
    }

    fn download(&self, id: ANumber) -> Result<String, OeisError> {
        let url = format!("{}/{}/{}", self.base_url.trim_end_matches('/'), id, id.bfile_name());
        let net = |e| OeisError::Network { id, source: Box::new(e) };
        self.agent.get(&url).call().map_err(net)?.body_mut().with_config().limit(1 << 30).read_to_string().map_err(net)
    }
}

fn read_cached(path: &Path) -> Result<Option<(String, SystemTime)>, OeisError> {
    let cache_err = |source| OeisError::Cache { path: path.to_path_buf(), source };
    match fs::read_to_string(path) {
        Ok(body) => {
            let when = fs::metadata(path).and_then(|m| m.modified()).map_err(cache_err)?;
            Ok(Some((body, when)))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(cache_err(e)),
    }
}

// Write beside the target, then rename, so concurrent readers never see a
// partial file.
fn store(dir: &Path, path: &Path, body: &str) -> Result<(), OeisError> {
    let cache_err = |source| OeisError::Cache { path: path.to_path_buf(), source };
    fs::create_dir_all(dir).map_err(cache_err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(cache_err)?;
    tmp.write_all(body.as_bytes()).map_err(cache_err)?;
    tmp.persist(path).map_err(|e| cache_err(e.error))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub expected: BigInt,
    /// `None` when the generator ran out first.
    pub actual: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyResult {
    pub a_number: ANumber,
    pub compared: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl VerifyResult {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compare b-file entries against a generated sequence. The generator's
/// first term lines up with the first b-file index; gaps in the b-file
/// skip generated terms.
pub fn compare(
    bfile: &OeisBFile,
    generated: impl Iterator<Item = BigInt>,
    limit: Option<u64>,
) -> VerifyResult {
    let mut generated = generated.fuse();
    let first = bfile.entries.first().map_or(0, |e| e.0);
    let mut position = 0i64;
    let mut compared = 0;
    let mut first_mismatch = None;
    for (index, expected) in &bfile.entries {
        if limit.is_some_and(|l| compared >= l) {
            break;
        }
        let offset = index - first;
        let actual = generated.nth((offset - position) as usize);
        position = offset + 1;
        compared += 1;
        if actual.as_ref() != Some(expected) {
            first_mismatch = Some(Mismatch { index: *index, expected: expected.clone(), actual });
            break;
        }
    }
    VerifyResult { a_number: bfile.a_number, compared, first_mismatch }
}
