//! On-disk store of χ tables, one canonical JSON file per cache directory.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use superjack::jack::{self, ChiTable};
use superjack::Partition;

pub const FORMAT_VERSION: u32 = 1;
pub const CONVENTION: &str = "k-inverse-alpha";
const FILE_NAME: &str = "chi-tables.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format_version: u32,
    pub convention: String,
}

impl Default for CacheHeader {
    fn default() -> Self {
        CacheHeader {
            format_version: FORMAT_VERSION,
            convention: CONVENTION.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub header: CacheHeader,
    pub records: Vec<ChiTable>,
}

/// Outcome of reading a cache file.
#[derive(Debug, Default)]
pub struct Loaded {
    pub file: CacheFile,
    /// Records dropped because they failed validation.
    pub discarded: Vec<String>,
}

/// Weight ascending, then reverse-lexicographic within a weight.
pub fn canonical_order(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.weight().cmp(&b.weight()).then_with(|| b.cmp(a))
}

impl CacheFile {
    pub fn sort(&mut self) {
        self.records
            .sort_by(|a, b| canonical_order(&a.lambda, &b.lambda));
        self.records.dedup_by(|a, b| a.lambda == b.lambda);
    }

    pub fn to_canonical_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.sort();
        canonical_json(&sorted)
    }
}

/// Compact JSON with object keys sorted.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    serde_json::to_string(&v).expect("serializable")
}

#[derive(Clone, Debug)]
pub struct ChiCache {
    dir: PathBuf,
}

impl ChiCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ChiCache { dir: dir.into() }
    }

    /// `--cache-dir` if given, else `$SUPERJACK_CACHE`, else the user cache dir.
    pub fn locate(flag: Option<&Path>) -> Self {
        if let Some(d) = flag {
            return Self::new(d);
        }
        if let Some(d) = std::env::var_os("SUPERJACK_CACHE") {
            return Self::new(d);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(|| PathBuf::from("."));
        Self::new(base.join("superjack"))
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(FILE_NAME)
    }

    /// Reads the file; a missing file is an empty cache, and a file with a
    /// foreign header or unparsable content is ignored as a whole.
    pub fn load(&self) -> io::Result<Loaded> {
        let text = match fs::read_to_string(self.path()) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Loaded::default()),
            Err(e) => return Err(e),
        };
        let Ok(raw) = serde_json::from_str::<Value>(&text) else {
            return Ok(Loaded {
                discarded: vec!["<unparsable file>".into()],
                ..Default::default()
            });
        };
        let header: Option<CacheHeader> = raw
            .get("header")
            .and_then(|h| serde_json::from_value(h.clone()).ok());
        if header.as_ref() != Some(&CacheHeader::default()) {
            return Ok(Loaded {
                discarded: vec!["<incompatible header>".into()],
                ..Default::default()
            });
        }
        let mut loaded = Loaded::default();
        for rec in raw
            .get("records")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            match serde_json::from_value::<ChiTable>(rec.clone()) {
                Ok(t) if t.validate().is_ok() => loaded.file.records.push(t),
                Ok(t) => loaded.discarded.push(t.lambda.to_string()),
                Err(_) => loaded.discarded.push(
                    rec.get("lambda")
                        .and_then(Value::as_str)
                        .unwrap_or("<malformed>")
                        .to_string(),
                ),
            }
        }
        loaded.file.sort();
        Ok(loaded)
    }

    /// Atomic write: temp file in the same directory, then rename.
    pub fn save(&self, file: &CacheFile) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self
            .dir
            .join(format!(".{FILE_NAME}.{}.tmp", std::process::id()));
        fs::write(&tmp, file.to_canonical_json())?;
        fs::rename(&tmp, self.path())
    }

    pub fn clear(&self) -> io::Result<bool> {
        match fs::remove_file(self.path()) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Loads valid records into the in-process χ store; returns how many
    /// were seeded and the loaded file.
    pub fn seed_store(&self) -> io::Result<Loaded> {
        let loaded = self.load()?;
        for t in &loaded.file.records {
            // already validated by load
            let _ = jack::seed_chi_table(t.clone());
        }
        Ok(loaded)
    }

    /// Writes back the union of `previous` and everything in the χ store, if
    /// that adds records or drops invalid ones.
    pub fn write_back(&self, previous: &Loaded) -> io::Result<bool> {
        let mut file = previous.file.clone();
        let before = file.records.len();
        for t in jack::stored_chi_tables() {
            if !file.records.iter().any(|r| r.lambda == t.lambda) {
                file.records.push((*t).clone());
            }
        }
        if file.records.len() == before && previous.discarded.is_empty() {
            return Ok(false);
        }
        self.save(&file)?;
        Ok(true)
    }
}
