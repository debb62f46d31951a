//! The cited OEIS sequences: generation from the implemented formulas, b-file
//! parsing and serialization, cached HTTP retrieval and term-by-term comparison.

use std::collections::HashMap;
use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Duration;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::{serde_exact, ExactInt};
use crate::triangle::{ab_coefficients, TriangleKind};

/// Environment variable naming the b-file cache directory.
pub const CACHE_DIR_ENV: &str = "POWEREXP_CACHE_DIR";
/// Environment variable overriding the b-file server root.
pub const BASE_URL_ENV: &str = "POWEREXP_OEIS_URL";
pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

/// The sequences the generator knows, in citation order.
pub const SUPPORTED: [&str; 8] = [
    "A287326", "A007318", "A077028", "A008458", "A000124", "A275709", "A028896", "A000012",
];

const BUNDLED: [(&str, &str); 8] = [
    ("A287326", include_str!("../fixtures/b287326.txt")),
    ("A007318", include_str!("../fixtures/b007318.txt")),
    ("A077028", include_str!("../fixtures/b077028.txt")),
    ("A008458", include_str!("../fixtures/b008458.txt")),
    ("A000124", include_str!("../fixtures/b000124.txt")),
    ("A275709", include_str!("../fixtures/b275709.txt")),
    ("A028896", include_str!("../fixtures/b028896.txt")),
    ("A000012", include_str!("../fixtures/b000012.txt")),
];

/// Text of the fixture shipped for `id`, if any.
pub fn bundled_text(id: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(s, _)| *s == id).map(|(_, t)| *t)
}

/// A validated sequence id, `A` followed by six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn digits(&self) -> &str {
        &self.0[1..]
    }

    /// `b<digits>.txt`, the conventional b-file name.
    pub fn bfile_name(&self) -> String {
        format!("b{}.txt", self.digits())
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ok = s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit());
        if ok {
            Ok(SequenceId(s.to_string()))
        } else {
            Err(Error::InvalidSequenceId(s.to_string()))
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn supported(id: &str) -> Result<SequenceId> {
    let sid: SequenceId = id.parse()?;
    if SUPPORTED.contains(&sid.as_str()) {
        Ok(sid)
    } else {
        Err(Error::UnsupportedSequence(id.to_string()))
    }
}

fn by_rows(kind: TriangleKind, count: usize) -> Vec<ExactInt> {
    (0u64..)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .take(count)
        .map(|(n, k)| kind.entry(n, k))
        .collect()
}

/// First `count` terms of `id` at offset 0.
pub fn generate(id: &str, count: usize) -> Result<Vec<ExactInt>> {
    let sid = supported(id)?;
    if count == 0 {
        return Err(domain("generate: count must be >= 1"));
    }
    let seq = |f: fn(ExactInt) -> ExactInt| (0..count as u64).map(|n| f(n.into())).collect();
    Ok(match sid.as_str() {
        "A287326" => by_rows(TriangleKind::U, count),
        "A007318" => by_rows(TriangleKind::Pascal, count),
        "A077028" => by_rows(TriangleKind::Rascal, count),
        // (n+1)^3 - n^3 = 1 + sum_{j=1}^{n} 6j; a(0) = 1 carries the leading 1.
        "A008458" => seq(|n| if n == ExactInt::from(0) { ExactInt::from(1) } else { 6 * n }),
        "A000124" => seq(|n| (&n * &n + &n + 2) / 2),
        "A275709" => seq(|n| if n == ExactInt::from(0) { n } else { ab_coefficients(&n).unwrap().b1 }),
        "A028896" => seq(|n| if n == ExactInt::from(0) { n } else { ab_coefficients(&n).unwrap().a1 }),
        "A000012" => vec![ExactInt::from(1); count],
        _ => unreachable!("checked by supported()"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Source {
    Bundled,
    Cached,
    Network,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Bundled => "BUNDLED",
            Source::Cached => "CACHED",
            Source::Network => "NETWORK",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub sequence_id: String,
    pub offset: i64,
    pub entries: Vec<(i64, ExactInt)>,
    pub source: Source,
}

impl BFile {
    pub fn values(&self) -> impl Iterator<Item = &ExactInt> {
        self.entries.iter().map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parses `index value` lines; `#` comments and blank lines are skipped.
pub fn parse_bfile(sequence_id: &str, text: &str, source: Source) -> Result<BFile> {
    let mut entries: Vec<(i64, ExactInt)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::BFileParse {
                line,
                message: format!("expected `index value`, found `{trimmed}`"),
            });
        };
        let idx: i64 = idx.parse().map_err(|_| Error::BFileParse {
            line,
            message: format!("bad index `{idx}`"),
        })?;
        let val: ExactInt = val.parse().map_err(|_| Error::BFileParse {
            line,
            message: format!("bad value `{val}`"),
        })?;
        if let Some((prev, _)) = entries.last() {
            if idx != prev + 1 {
                return Err(Error::BFileGap {
                    line,
                    expected: prev + 1,
                    found: idx,
                });
            }
        }
        entries.push((idx, val));
    }
    let Some(&(offset, _)) = entries.first() else {
        return Err(Error::BFileParse {
            line: 0,
            message: "no entries".to_string(),
        });
    };
    Ok(BFile {
        sequence_id: sequence_id.to_string(),
        offset,
        entries,
        source,
    })
}

/// `index value\n` per entry, no comments.
pub fn serialize_bfile(b: &BFile) -> String {
    let mut out = String::new();
    for (i, v) in &b.entries {
        out.push_str(&format!("{i} {v}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchMode {
    /// Bundled fixture, else cache; never touches the network.
    Offline,
    /// Cache, else one GET that fills the cache.
    Cached,
    /// Always GET and overwrite the cache.
    Refresh,
}

impl FromStr for FetchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "offline" => Ok(FetchMode::Offline),
            "cached" => Ok(FetchMode::Cached),
            "refresh" => Ok(FetchMode::Refresh),
            _ => Err(domain(format!("unknown fetch mode `{s}` (offline, cached, refresh)"))),
        }
    }
}

fn id_lock(id: &str) -> Arc<Mutex<()>> {
    static LOCKS: OnceLock<Mutex<HashMap<String, Arc<Mutex<()>>>>> = OnceLock::new();
    let mut map = LOCKS.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    map.entry(id.to_string()).or_default().clone()
}

/// Retrieves b-files from the bundled set, the cache directory or the server.
#[derive(Debug, Clone)]
pub struct Fetcher {
    cache_dir: PathBuf,
    base_url: String,
    timeout: Duration,
}

impl Fetcher {
    pub fn new(cache_dir: impl Into<PathBuf>, base_url: impl Into<String>) -> Self {
        Fetcher {
            cache_dir: cache_dir.into(),
            base_url: base_url.into().trim_end_matches('/').to_string(),
            timeout: Duration::from_secs(30),
        }
    }

    /// Cache directory from `POWEREXP_CACHE_DIR`, else `<platform cache>/powerexp/oeis`;
    /// server root from `POWEREXP_OEIS_URL`, else oeis.org.
    pub fn from_env() -> Self {
        let cache_dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .or_else(|| dirs::cache_dir().map(|d| d.join("powerexp").join("oeis")))
            .unwrap_or_else(|| std::env::temp_dir().join("powerexp-oeis"));
        let base = std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        Fetcher::new(cache_dir, base)
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = dir.into();
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    pub fn url(&self, id: &SequenceId) -> String {
        format!("{}/{}/{}", self.base_url, id, id.bfile_name())
    }

    pub fn cache_path(&self, id: &SequenceId) -> PathBuf {
        self.cache_dir.join(id.bfile_name())
    }

    pub fn fetch(&self, id: &str, mode: FetchMode) -> Result<BFile> {
        let sid: SequenceId = id.parse()?;
        let lock = id_lock(sid.as_str());
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let path = self.cache_path(&sid);
        match mode {
            FetchMode::Offline => {
                if let Some(text) = bundled_text(sid.as_str()) {
                    return parse_bfile(sid.as_str(), text, Source::Bundled);
                }
                match std::fs::read_to_string(&path) {
                    Ok(text) => parse_bfile(sid.as_str(), &text, Source::Cached),
                    Err(_) => Err(Error::CacheMiss(sid.to_string())),
                }
            }
            FetchMode::Cached => match std::fs::read_to_string(&path) {
                Ok(text) => parse_bfile(sid.as_str(), &text, Source::Cached),
                Err(_) => self.download(&sid, &path),
            },
            FetchMode::Refresh => self.download(&sid, &path),
        }
    }

    fn download(&self, sid: &SequenceId, path: &Path) -> Result<BFile> {
        let url = self.url(sid);
        let net = |message: String| Error::Network {
            url: url.clone(),
            message,
        };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        let text = agent
            .get(&url)
            .call()
            .map_err(|e| net(e.to_string()))?
            .body_mut()
            .read_to_string()
            .map_err(|e| net(e.to_string()))?;
        // Validate before the cache sees the bytes.
        let bfile = parse_bfile(sid.as_str(), &text, Source::Network)?;
        std::fs::create_dir_all(&self.cache_dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.cache_dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(path).map_err(|e| Error::from(e.error))?;
        Ok(bfile)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: i64,
    /// Value in the b-file.
    #[serde(serialize_with = "serde_exact::int")]
    pub expected: ExactInt,
    /// Value from `generate`.
    #[serde(serialize_with = "serde_exact::int")]
    pub actual: ExactInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub sequence_id: String,
    pub source: Source,
    pub terms_compared: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the first `count` b-file terms with `generate`, index by index from the b-file's offset.
pub fn compare_bfile(b: &BFile, count: usize) -> Result<CompareReport> {
    if count > b.len() {
        return Err(Error::NotEnoughTerms {
            id: b.sequence_id.clone(),
            requested: count,
            available: b.len(),
        });
    }
    if b.offset < 0 {
        return Err(domain(format!("{}: negative offset {}", b.sequence_id, b.offset)));
    }
    let skip = b.offset as usize;
    let generated = generate(&b.sequence_id, skip + count.max(1))?;
    let first_mismatch = b.entries[..count]
        .iter()
        .zip(&generated[skip..])
        .find(|((_, want), got)| want != *got)
        .map(|((index, want), got)| Mismatch {
            index: *index,
            expected: want.clone(),
            actual: (*got).clone(),
        });
    Ok(CompareReport {
        sequence_id: b.sequence_id.clone(),
        source: b.source,
        terms_compared: count,
        first_mismatch,
    })
}

/// Fetches `id` per `mode` and compares `count` terms (all available terms when `None`).
pub fn compare(fetcher: &Fetcher, id: &str, count: Option<usize>, mode: FetchMode) -> Result<CompareReport> {
    supported(id)?;
    let b = fetcher.fetch(id, mode)?;
    compare_bfile(&b, count.unwrap_or(b.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate("A287326", 10).unwrap(), ints(&[1, 1, 1, 1, 7, 1, 1, 13, 13, 1]));
        assert_eq!(generate("A000012", 5).unwrap(), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(generate("A275709", 4).unwrap(), ints(&[0, 5, 28, 81]));
        assert_eq!(generate("A028896", 4).unwrap(), ints(&[0, 6, 18, 36]));
        assert_eq!(generate("A008458", 4).unwrap(), ints(&[1, 6, 12, 18]));
        assert_eq!(generate("A000124", 5).unwrap(), ints(&[1, 2, 4, 7, 11]));
        assert_eq!(generate("A007318", 6).unwrap(), ints(&[1, 1, 1, 1, 2, 1]));
        assert_eq!(generate("A077028", 6).unwrap(), ints(&[1, 1, 1, 1, 2, 1]));
    }

    #[test]
    fn generate_errors() {
        assert_eq!(generate("A999999", 3), Err(Error::UnsupportedSequence("A999999".into())));
        assert!(matches!(generate("B287326", 3), Err(Error::InvalidSequenceId(_))));
        assert!(matches!(generate("A28732", 3), Err(Error::InvalidSequenceId(_))));
        assert!(generate("A000012", 0).is_err());
    }

    #[test]
    fn parse_examples() {
        let b = parse_bfile("A000012", "0 1\n1 1\n2 1\n", Source::Bundled).unwrap();
        assert_eq!(b.offset, 0);
        assert_eq!(b.values().cloned().collect::<Vec<_>>(), ints(&[1, 1, 1]));
        let b = parse_bfile("A000012", "# comment\n\n5 1\n6 2\n", Source::Cached).unwrap();
        assert_eq!(b.offset, 5);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let gap = parse_bfile("A000012", "0 1\n2 5\n", Source::Bundled);
        assert_eq!(
            gap,
            Err(Error::BFileGap {
                line: 2,
                expected: 1,
                found: 2
            })
        );
        let bad = parse_bfile("A000012", "# h\n0 1\n1 x\n", Source::Bundled);
        assert!(matches!(bad, Err(Error::BFileParse { line: 3, .. })));
        let extra = parse_bfile("A000012", "0 1 2\n", Source::Bundled);
        assert!(matches!(extra, Err(Error::BFileParse { line: 1, .. })));
        assert!(matches!(parse_bfile("A000012", "# only\n", Source::Bundled), Err(Error::BFileParse { .. })));
    }

    #[test]
    fn bundled_fixtures_match_generator() {
        for id in SUPPORTED {
            let b = parse_bfile(id, bundled_text(id).unwrap(), Source::Bundled).unwrap();
            assert!(b.len() >= 50, "{id}");
            let r = compare_bfile(&b, b.len()).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.first_mismatch);
        }
    }

    #[test]
    fn corrupted_fixture_reports_first_mismatch() {
        let mut b = parse_bfile("A287326", bundled_text("A287326").unwrap(), Source::Bundled).unwrap();
        b.entries[17].1 += 1;
        b.entries[40].1 += 1;
        let r = compare_bfile(&b, 66).unwrap();
        let m = r.first_mismatch.unwrap();
        assert_eq!(m.index, 17);
        assert_eq!(&m.expected - &m.actual, int(1));
        assert!(matches!(compare_bfile(&b, 101), Err(Error::NotEnoughTerms { .. })));
    }

    #[test]
    fn offline_miss_for_unknown_id() {
        let dir = tempfile::tempdir().unwrap();
        let f = Fetcher::new(dir.path(), "http://127.0.0.1:9");
        assert_eq!(f.fetch("A999999", FetchMode::Offline), Err(Error::CacheMiss("A999999".into())));
        assert_eq!(f.fetch("A287326", FetchMode::Offline).unwrap().source, Source::Bundled);
    }

    #[test]
    fn url_layout() {
        let f = Fetcher::new("/tmp", "https://oeis.org/");
        let id: SequenceId = "A287326".parse().unwrap();
        assert_eq!(f.url(&id), "https://oeis.org/A287326/b287326.txt");
        assert_eq!(f.cache_path(&id), PathBuf::from("/tmp/b287326.txt"));
    }
}
