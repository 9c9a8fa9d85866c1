//! OEIS cross-checks against locally cached b-files.
//!
//! A sequence `A003319` lives in the cache directory as `b003319.txt`,
//! byte-for-byte as served by `https://oeis.org/A003319/b003319.txt`, next
//! to `A003319.json` holding the fetch time. Network access happens only
//! when the caller passes `allow_network`.

use std::fs::{self, File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use adams_core::ring::int_to_json;
use adams_core::spectra::{trace_table, DimensionProfile};
use adams_core::{Integer, Rational};
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{OeisValuesArgs, Quantity};
use crate::commands::integer_values;
use crate::error::CliError;
use crate::output::{join, Rendered};

pub const CACHE_ENV: &str = "ADAMS_SPECTRA_CACHE";
const FETCH_TIMEOUT: Duration = Duration::from_secs(30);

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::domain("Io", format!("{}: {e}", path.display()))
}

/// `A003319`, also accepting lowercase and short forms such as `a3319`.
pub fn normalize_id(id: &str) -> Result<String, CliError> {
    let digits = id.strip_prefix(['A', 'a']).unwrap_or("");
    if digits.is_empty() || digits.len() > 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::domain("MalformedInput", format!("not an OEIS id: {id:?}")));
    }
    Ok(format!("A{digits:0>6}"))
}

/// `(n, a(n))` pairs from a b-file; `#` lines and blank lines are skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, Integer)>, CliError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let bad = || CliError::domain("MalformedInput", format!("b-file line {}: {line:?}", lineno + 1));
        let n: i64 = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let a: Integer = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        out.push((n, a));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Meta {
    id: String,
    fetched_at: u64,
    url: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OeisRecord {
    pub id: String,
    pub terms: Vec<(i64, Integer)>,
    /// Seconds since the Unix epoch, when the cache holds it.
    pub fetched_at: Option<u64>,
    /// True when served from the cache without touching the network.
    pub offline: bool,
    pub raw: String,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `--cache-dir`, else `$ADAMS_SPECTRA_CACHE`, else the platform cache
    /// directory (`$XDG_CACHE_HOME` or `~/.cache`) plus `adams-spectra`.
    pub fn resolve(flag: Option<&Path>) -> Result<Self, CliError> {
        if let Some(dir) = flag {
            return Ok(Cache::at(dir));
        }
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return Ok(Cache::at(dir));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .filter(|d| !d.is_empty())
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .ok_or_else(|| CliError::domain("Io", format!("no cache directory: set {CACHE_ENV} or pass --cache-dir")))?;
        Ok(Cache::at(base.join("adams-spectra")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn bfile_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("b{}.txt", &id[1..]))
    }

    fn meta_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn lock_file(&self) -> Result<File, CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| io_error(&self.dir, e))?;
        let path = self.dir.join(".lock");
        OpenOptions::new().create(true).truncate(false).write(true).open(&path).map_err(|e| io_error(&path, e))
    }

    pub fn load(&self, id: &str) -> Result<Option<OeisRecord>, CliError> {
        let id = normalize_id(id)?;
        let path = self.bfile_path(&id);
        if !path.exists() {
            return Ok(None);
        }
        let lock = self.lock_file()?;
        lock.lock_shared().map_err(|e| io_error(&self.dir, e))?;
        let raw = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
        let meta: Option<Meta> = fs::read_to_string(self.meta_path(&id)).ok().and_then(|s| serde_json::from_str(&s).ok());
        drop(lock);
        Ok(Some(OeisRecord { terms: parse_bfile(&raw)?, fetched_at: meta.map(|m| m.fetched_at), offline: true, raw, id }))
    }

    /// Writes the b-file verbatim under an exclusive lock.
    pub fn store(&self, id: &str, raw: &str, fetched_at: u64) -> Result<OeisRecord, CliError> {
        let id = normalize_id(id)?;
        let terms = parse_bfile(raw)?;
        let lock = self.lock_file()?;
        lock.lock().map_err(|e| io_error(&self.dir, e))?;
        let path = self.bfile_path(&id);
        let tmp = path.with_extension("txt.partial");
        let mut f = File::create(&tmp).map_err(|e| io_error(&tmp, e))?;
        f.write_all(raw.as_bytes()).and_then(|_| f.sync_all()).map_err(|e| io_error(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| io_error(&path, e))?;
        let meta = Meta { id: id.clone(), fetched_at, url: bfile_url(&id) };
        let meta_path = self.meta_path(&id);
        fs::write(&meta_path, serde_json::to_string_pretty(&meta).expect("serializable")).map_err(|e| io_error(&meta_path, e))?;
        drop(lock);
        Ok(OeisRecord { id, terms, fetched_at: Some(fetched_at), offline: false, raw: raw.to_string() })
    }
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", &id[1..])
}

/// Cached record, or a network fetch when allowed; `CacheMiss` otherwise.
pub fn fetch(cache: &Cache, id: &str, allow_network: bool) -> Result<OeisRecord, CliError> {
    let id = normalize_id(id)?;
    if let Some(record) = cache.load(&id)? {
        return Ok(record);
    }
    if !allow_network {
        return Err(CliError::domain(
            "CacheMiss",
            format!("{id} is not cached in {} and --allow-network was not given", cache.dir().display()),
        ));
    }
    let url = bfile_url(&id);
    let body = ureq::get(&url)
        .timeout(FETCH_TIMEOUT)
        .call()
        .map_err(|e| CliError::domain("Network", format!("{url}: {e}")))?
        .into_string()
        .map_err(|e| CliError::domain("Network", format!("{url}: {e}")))?;
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    cache.store(&id, &body, now)
}

/// Computed values with the index of the first one in its natural numbering.
#[derive(Debug, Clone, PartialEq)]
pub struct Computed {
    pub values: Vec<Integer>,
    pub first_index: i64,
    pub label: String,
}

pub fn computed_values(args: &OeisValuesArgs, quantity: Quantity, max_degree: usize) -> Result<Computed, CliError> {
    if let Some(values) = &args.values {
        return Ok(Computed { values: values.clone(), first_index: 0, label: "values".into() });
    }
    let (profile, label) = if let Some(name) = &args.preset {
        (DimensionProfile::preset(name, max_degree)?, name.clone())
    } else if let Some(h) = &args.h {
        let m = max_degree.min(h.len().saturating_sub(1));
        (DimensionProfile::from_h(h[..=m].to_vec(), false)?, "h".into())
    } else {
        unreachable!("clap enforces exactly one value source")
    };
    let (values, first_index, q) = match quantity {
        Quantity::H => (profile.h().to_vec(), 0, "h"),
        Quantity::G => (profile.g().to_vec(), 1, "g"),
        Quantity::V => (profile.v().to_vec(), 1, "v"),
        Quantity::Trace => {
            let t = trace_table(&profile, &-Rational::one(), profile.max_degree())?;
            (integer_values(&t.values).expect("antipode traces are integers"), 0, "trace")
        }
    };
    Ok(Computed { values, first_index, label: format!("{q} of {label}") })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub id: String,
    pub computed: String,
    pub matched: bool,
    /// OEIS index aligned with the first computed value.
    pub start: Option<i64>,
    pub compared: usize,
    pub first_mismatch: Option<Value>,
}

/// Prefix match of the computed values against the OEIS terms starting at
/// `start`, or, when `start` is absent, at the natural index first and then
/// at each of the first four OEIS indices.
pub fn compare(record: &OeisRecord, computed: &Computed, start: Option<i64>) -> MatchReport {
    let offset = record.terms.first().map_or(0, |t| t.0);
    let candidates: Vec<i64> = match start {
        Some(s) => vec![s],
        None => std::iter::once(computed.first_index).chain(offset..offset + 4).collect(),
    };
    let attempt = |s: i64| {
        let mut compared = 0;
        for (i, c) in computed.values.iter().enumerate() {
            let Some((_, a)) = record.terms.iter().find(|(n, _)| *n == s + i as i64) else { break };
            if a != c {
                return (compared, Some(json!({"n": s + i as i64, "oeis": int_to_json(a), "computed": int_to_json(c)})));
            }
            compared += 1;
        }
        (compared, None)
    };
    let mut best: Option<(i64, usize, Option<Value>)> = None;
    for s in candidates {
        let (compared, mismatch) = attempt(s);
        if mismatch.is_none() && compared > 0 {
            return MatchReport {
                id: record.id.clone(),
                computed: computed.label.clone(),
                matched: true,
                start: Some(s),
                compared,
                first_mismatch: None,
            };
        }
        if best.is_none() {
            best = Some((s, compared, mismatch));
        }
    }
    let (s, compared, first_mismatch) = best.unwrap_or((0, 0, None));
    MatchReport { id: record.id.clone(), computed: computed.label.clone(), matched: false, start: Some(s), compared, first_mismatch }
}

pub fn render(report: &MatchReport, record: &OeisRecord) -> Rendered {
    let mut json = serde_json::to_value(report).expect("serializable");
    json["offline"] = json!(record.offline);
    json["fetched_at"] = json!(record.fetched_at);
    json["oeis_terms"] = json!(record.terms.len());
    let verdict = if report.matched { "match" } else { "mismatch" };
    let mut text = format!("{} vs {}: {verdict} ({} terms compared", report.id, report.computed, report.compared);
    if let Some(s) = report.start {
        text.push_str(&format!(", starting at n = {s}"));
    }
    text.push(')');
    if let Some(m) = &report.first_mismatch {
        text.push_str(&format!("\nfirst mismatch: {m}"));
    }
    let csv = format!("id,computed,verdict,compared,start\n{},{},{verdict},{},{}\n", report.id, report.computed, report.compared, join(&report.start.into_iter().collect::<Vec<_>>()));
    let mut out = Rendered::new(json, text, csv);
    out.exit_code = if report.matched { 0 } else { 1 };
    out
}
