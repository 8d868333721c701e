//! On-disk cache of graphs and computed traces, one JSON file per (p, ℓ).
//!
//! The file carries a SHA-256 digest of its payload. On load the graph is
//! rebuilt (it is cheap) and compared with the cached structure; any
//! mismatch, parse error or digest failure discards the file with a warning
//! and starts afresh. Writes go to a temporary file that is then renamed
//! over the target, so readers never see a partial file.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use isoendo_core::arith::Field;
use isoendo_core::graph::{build_graph, cycle_to_chain, Cycle, IsogenyGraph};
use isoendo_core::schoof::{trace, BoundMode, TraceResult};
use isoendo_core::Result;
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ENV_CACHE_DIR: &str = "ISOGENY_ENDO_CACHE";
const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub j: String,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub kernel: Vec<String>,
    pub dual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub trace: String,
    pub norm: String,
    pub residues: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Payload {
    format: u32,
    p: u64,
    ell: u64,
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    /// Keyed by comma separated edge ids.
    traces: BTreeMap<String, TraceRecord>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    digest: String,
    payload: Payload,
}

pub fn graph_records(g: &IsogenyGraph) -> (Vec<VertexRecord>, Vec<EdgeRecord>) {
    let f = &g.field;
    let vs = g
        .vertices
        .iter()
        .map(|v| VertexRecord { j: f.encode(&v.j), a: f.encode(&v.curve.a), b: f.encode(&v.curve.b) })
        .collect();
    let es = g
        .edges
        .iter()
        .map(|e| EdgeRecord {
            id: e.id,
            from: e.from,
            to: e.to,
            kernel: e.kernel.coeffs().iter().map(|c| f.encode(c)).collect(),
            dual: e.dual,
        })
        .collect();
    (vs, es)
}

fn digest(p: &Payload) -> String {
    let bytes = serde_json::to_vec(p).expect("payload serializes");
    let h = Sha256::digest(&bytes);
    h.iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn cycle_key(c: &Cycle) -> String {
    c.edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Cache directory: the environment variable wins over the flag.
pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    match std::env::var_os(ENV_CACHE_DIR) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.map(Path::to_path_buf),
    }
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("cache");
    let nonce = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let tmp = dir.join(format!(".{}.{}.{}.tmp", name, std::process::id(), nonce));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res
}

/// A graph with memoized traces, optionally backed by a cache file.
pub struct Session {
    pub graph: IsogenyGraph,
    path: Option<PathBuf>,
    payload: Payload,
    dirty: bool,
}

impl Session {
    pub fn open(p: u64, ell: u64, dir: Option<&Path>) -> Result<Session> {
        let graph = build_graph(p, ell)?;
        let (vertices, edges) = graph_records(&graph);
        let fresh = Payload { format: FORMAT, p, ell, vertices, edges, traces: BTreeMap::new() };
        let path = dir.map(|d| d.join(format!("graph-p{}-l{}.json", p, ell)));
        let mut dirty = true;
        let mut payload = fresh.clone();
        if let Some(path) = &path {
            if path.exists() {
                match load(path) {
                    Ok(cached) if cached.format == fresh.format
                        && cached.p == p
                        && cached.ell == ell
                        && cached.vertices == fresh.vertices
                        && cached.edges == fresh.edges =>
                    {
                        payload = cached;
                        dirty = false;
                    }
                    Ok(_) => eprintln!("warning: cache {} does not match the graph; rebuilding", path.display()),
                    Err(e) => eprintln!("warning: cache {} is unreadable ({}); rebuilding", path.display(), e),
                }
            }
        }
        Ok(Session { graph, path, payload, dirty })
    }

    /// Trace of a cycle, from the cache when present.
    pub fn trace(&mut self, c: &Cycle, mode: BoundMode) -> Result<TraceResult> {
        let key = cycle_key(c);
        if let Some(r) = self.payload.traces.get(&key) {
            if let (Ok(t), Ok(n)) = (r.trace.parse::<BigInt>(), r.norm.parse::<BigUint>()) {
                return Ok(TraceResult { trace: t, norm: n, residues: r.residues.clone() });
            }
        }
        let r = trace(&cycle_to_chain(&self.graph, c)?, mode)?;
        self.payload.traces.insert(
            key,
            TraceRecord { trace: r.trace.to_string(), norm: r.norm.to_string(), residues: r.residues.clone() },
        );
        self.dirty = true;
        Ok(r)
    }

    pub fn cache_path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Writes the cache if anything changed. Failures are reported, not fatal.
    pub fn save(&mut self) {
        let Some(path) = &self.path else { return };
        if !self.dirty {
            return;
        }
        let file = CacheFile { digest: digest(&self.payload), payload: self.payload.clone() };
        let bytes = serde_json::to_vec(&file).expect("cache serializes");
        match atomic_write(path, &bytes) {
            Ok(()) => self.dirty = false,
            Err(e) => eprintln!("warning: could not write cache {}: {}", path.display(), e),
        }
    }
}

fn load(path: &Path) -> std::result::Result<Payload, String> {
    let bytes = fs::read(path).map_err(|e| e.to_string())?;
    let file: CacheFile = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    if digest(&file.payload) != file.digest {
        return Err("digest mismatch".into());
    }
    Ok(file.payload)
}
