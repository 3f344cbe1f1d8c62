//! On-disk store of Hall polynomials.
//!
//! One record per line:
//! `type;orientation;M;N;P;c0,c1,...;checksum`, where labels list their parts
//! joined by `+` (`-` for the empty label) and the checksum is the first 16
//! hex digits of the SHA-256 of everything before the last `;`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::cocycle::Orientation;
use crate::error::{Error, Result};
use crate::graph::build_graph;
use crate::partition::RootPartition;
use crate::roots::RootSystem;

pub const CACHE_FILE: &str = "hall.cache";
pub const CACHE_HEADER: &str = "# qlie hall cache v1";
pub const CACHE_ENV: &str = "QLIE_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub graph: String,
    pub orientation: String,
    pub m: RootPartition,
    pub n: RootPartition,
    pub p: RootPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorruptRecord {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheReport {
    pub path: PathBuf,
    pub records: usize,
    pub corrupt: Vec<CorruptRecord>,
}

impl CacheReport {
    pub fn passed(&self) -> bool {
        self.corrupt.is_empty()
    }
}

#[derive(Debug)]
pub struct HallCache {
    path: PathBuf,
    entries: Mutex<BTreeMap<CacheKey, Vec<i64>>>,
    dirty: Mutex<bool>,
    corrupt: Vec<CorruptRecord>,
}

/// The directory named by `QLIE_CACHE`, else the user cache directory.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|s| !s.is_empty()) {
        return Some(PathBuf::from(xdg).join("qlie"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("qlie"))
}

fn label_field(l: &RootPartition) -> String {
    if l.is_empty() {
        "-".to_string()
    } else {
        l.parts().iter().map(|p| p.encode()).collect::<Vec<_>>().join("+")
    }
}

fn checksum(body: &str) -> String {
    let digest = Sha256::digest(body.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// The record line for a key and its coefficients.
pub fn encode_record(key: &CacheKey, coeffs: &[i64]) -> String {
    let body = format!(
        "{};{};{};{};{};{}",
        key.graph,
        key.orientation,
        label_field(&key.m),
        label_field(&key.n),
        label_field(&key.p),
        coeffs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    );
    let sum = checksum(&body);
    format!("{body};{sum}")
}

/// Parses and checks one record: checksum, type, orientation, labels being
/// root partitions, and `dim N + dim P = dim M`.
pub fn parse_record(line: &str) -> std::result::Result<(CacheKey, Vec<i64>), String> {
    let (body, sum) = line.rsplit_once(';').ok_or("missing checksum field")?;
    if checksum(body) != sum {
        return Err("checksum mismatch".into());
    }
    let fields: Vec<&str> = body.split(';').collect();
    if fields.len() != 6 {
        return Err(format!("expected 6 fields before the checksum, found {}", fields.len()));
    }
    let graph = build_graph(fields[0]).map_err(|e| e.to_string())?;
    let rs = RootSystem::new(graph.clone());
    let orientation = Orientation::parse(&graph, fields[1]).map_err(|e| e.to_string())?;
    let rank = graph.n_vertices();
    let label = |s: &str| -> std::result::Result<RootPartition, String> {
        let l = RootPartition::parse_with(s, '+', rank).map_err(|e| e.to_string())?;
        l.validate(&rs, l.total()).map_err(|e| e.to_string())?;
        Ok(l)
    };
    let (m, n, p) = (label(fields[2])?, label(fields[3])?, label(fields[4])?);
    if &(n.total() + p.total()) != m.total() {
        return Err("dim N + dim P differs from dim M".into());
    }
    let coeffs = fields[5]
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| format!("bad coefficient `{c}`")))
        .collect::<std::result::Result<Vec<i64>, String>>()?;
    if coeffs.is_empty() {
        return Err("no coefficients".into());
    }
    Ok((
        CacheKey {
            graph: graph.name().to_string(),
            orientation: orientation.encode(),
            m,
            n,
            p,
        },
        coeffs,
    ))
}

type Records = (BTreeMap<CacheKey, Vec<i64>>, Vec<CorruptRecord>, usize);

fn read_records(path: &Path) -> Result<Records> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((BTreeMap::new(), Vec::new(), 0)),
        Err(e) => return Err(Error::resource(format!("cannot read {}: {e}", path.display()))),
    };
    let mut entries = BTreeMap::new();
    let mut corrupt = Vec::new();
    let mut records = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if i == 0 {
            if line.trim() != CACHE_HEADER {
                corrupt.push(CorruptRecord {
                    line: line_no,
                    reason: format!("expected header `{CACHE_HEADER}`"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        records += 1;
        match parse_record(line) {
            Ok((k, c)) => {
                entries.insert(k, c);
            }
            Err(reason) => corrupt.push(CorruptRecord { line: line_no, reason }),
        }
    }
    Ok((entries, corrupt, records))
}

/// Checks every record of a cache file without loading it for use.
pub fn validate_cache_file(path: &Path) -> Result<CacheReport> {
    if !path.exists() {
        return Err(Error::input(format!("no cache file at {}", path.display())));
    }
    let (_, corrupt, records) = read_records(path)?;
    Ok(CacheReport {
        path: path.to_path_buf(),
        records,
        corrupt,
    })
}

impl HallCache {
    /// Opens (or prepares) `dir/hall.cache`. Corrupt records are skipped with
    /// a warning, so their polynomials get recounted and rewritten.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::resource(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(CACHE_FILE);
        let (entries, corrupt, _) = read_records(&path)?;
        for c in &corrupt {
            log::warn!("{}:{}: dropping cache record ({})", path.display(), c.line, c.reason);
        }
        Ok(HallCache {
            path,
            dirty: Mutex::new(!corrupt.is_empty()),
            entries: Mutex::new(entries),
            corrupt,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn corrupt_records(&self) -> &[CorruptRecord] {
        &self.corrupt
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &CacheKey) -> Option<Vec<i64>> {
        self.entries.lock().expect("poisoned").get(key).cloned()
    }

    pub fn insert(&self, key: CacheKey, coeffs: Vec<i64>) {
        let mut entries = self.entries.lock().expect("poisoned");
        if entries.get(&key) != Some(&coeffs) {
            entries.insert(key, coeffs);
            *self.dirty.lock().expect("poisoned") = true;
        }
    }

    /// Rewrites the file through a temporary file and a rename.
    pub fn flush(&self) -> Result<()> {
        let mut dirty = self.dirty.lock().expect("poisoned");
        if !*dirty {
            return Ok(());
        }
        let entries = self.entries.lock().expect("poisoned");
        let tmp = self.path.with_extension(format!("tmp.{}", std::process::id()));
        let io = |e: std::io::Error| Error::resource(format!("cannot write {}: {e}", tmp.display()));
        {
            let mut out = std::io::BufWriter::new(fs::File::create(&tmp).map_err(io)?);
            writeln!(out, "{CACHE_HEADER}").map_err(io)?;
            for (k, c) in entries.iter() {
                writeln!(out, "{}", encode_record(k, c)).map_err(io)?;
            }
            out.flush().map_err(io)?;
        }
        fs::rename(&tmp, &self.path).map_err(io)?;
        *dirty = false;
        Ok(())
    }
}

impl Drop for HallCache {
    fn drop(&mut self) {
        if let Err(e) = self.flush() {
            log::warn!("{e}");
        }
    }
}
