//! On-disk catalog cache.
//!
//! One JSON file per catalog key, named by the SHA-256 of the key. The file
//! carries the key hash again and a checksum of its payload; anything that
//! fails to parse or match is rebuilt silently. Writers serialize through a
//! `.lock` file created exclusively next to the cache file.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, ensure, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use trimat_core::exactla::Matrix;
use trimat_core::quiverrep::{BlockMap, Catalog, FinModule, PathAlgebra, Rep};
use trimat_core::trimat::{tensor_functor, TriangularAlgebra, TripleModule, Workspace};

use crate::config::WorkbenchConfig;

pub const CACHE_SCHEMA_VERSION: u32 = 1;
const LOCK_TIMEOUT: Duration = Duration::from_secs(60);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    /// Built and written.
    Miss,
    /// A file existed but did not validate; rebuilt and overwritten.
    Rebuilt,
}

#[derive(Serialize, Deserialize)]
struct RepDump {
    dims: Vec<usize>,
    /// One row-major matrix per arrow.
    maps: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    name: String,
    module: T,
}

#[derive(Serialize, Deserialize)]
struct TripleDump {
    m1: RepDump,
    m2: RepDump,
    phi: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CatalogDump<T> {
    complete: bool,
    entries: Vec<Entry<T>>,
}

#[derive(Serialize, Deserialize)]
struct Payload {
    a: CatalogDump<RepDump>,
    b: CatalogDump<RepDump>,
    triples: CatalogDump<TripleDump>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    key: String,
    checksum: String,
    payload: Payload,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn catalog_key(config: &WorkbenchConfig) -> String {
    let key = serde_json::to_vec(&config.catalog_key()).expect("key serializes");
    sha256_hex(&key)
}

pub fn default_cache_dir() -> PathBuf {
    std::env::temp_dir().join("trimat-workbench-cache")
}

pub fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("catalog-{key}.json"))
}

fn dump_rep(r: &Rep) -> RepDump {
    RepDump { dims: r.dims().to_vec(), maps: r.maps().iter().map(|m| m.data().to_vec()).collect() }
}

fn load_rep(alg: &Arc<PathAlgebra>, d: &RepDump) -> Result<Rep> {
    let q = &alg.quiver;
    ensure!(d.dims.len() == q.num_vertices() && d.maps.len() == q.arrows().len(), "representation shape");
    let maps = q
        .arrows()
        .iter()
        .zip(&d.maps)
        .map(|(a, m)| Matrix::from_vec(alg.field, d.dims[a.target], d.dims[a.source], m.clone()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Rep::new(alg.clone(), d.dims.clone(), maps)?)
}

fn dump_catalog<M: FinModule, T>(cat: &Catalog<M>, f: impl Fn(&M) -> T) -> CatalogDump<T> {
    CatalogDump {
        complete: cat.complete,
        entries: cat.entries.iter().map(|e| Entry { name: e.name.clone(), module: f(&e.module) }).collect(),
    }
}

/// Rebuilds a catalog from entries stored in catalog order. The canonical
/// sort is stable, so it must reproduce the stored order exactly.
fn restore<M: FinModule, T>(dump: &CatalogDump<T>, f: impl Fn(&T) -> Result<M>) -> Result<Catalog<M>> {
    let modules = dump.entries.iter().map(|e| f(&e.module)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<Vec<usize>> = modules.iter().map(FinModule::block_dims).collect();
    let mut cat = Catalog::from_modules(modules, dump.complete, |_| String::new())?;
    ensure!(cat.len() == dump.entries.len(), "catalog length");
    for (i, e) in dump.entries.iter().enumerate() {
        ensure!(cat.entries[i].dim_vector == dims[i], "catalog order");
        cat.rename(i, e.name.clone());
    }
    Ok(cat)
}

fn dump(ws: &Workspace) -> Payload {
    Payload {
        a: dump_catalog(&ws.a, dump_rep),
        b: dump_catalog(&ws.b, dump_rep),
        triples: dump_catalog(&ws.triples, |t: &TripleModule| TripleDump {
            m1: dump_rep(t.m1()),
            m2: dump_rep(t.m2()),
            phi: t.phi().flatten(),
        }),
    }
}

fn load(lambda: &Arc<TriangularAlgebra>, p: &Payload) -> Result<Workspace> {
    let a = restore(&p.a, |d| load_rep(&lambda.a, d))?;
    let b = restore(&p.b, |d| load_rep(&lambda.b, d))?;
    let triples = restore(&p.triples, |d: &TripleDump| {
        let m1 = load_rep(&lambda.a, &d.m1)?;
        let m2 = load_rep(&lambda.b, &d.m2)?;
        let source = tensor_functor(&lambda.u, &m1)?.rep.dims().to_vec();
        ensure!(d.phi.len() == source.iter().zip(m2.dims()).map(|(s, t)| s * t).sum::<usize>(), "structure map size");
        let phi = BlockMap::unflatten(lambda.a.field, &source, m2.dims(), &d.phi);
        Ok(TripleModule::new(lambda, m1, m2, phi)?)
    })?;
    Ok(Workspace { lambda: lambda.clone(), a, b, triples })
}

fn read(path: &Path, key: &str, lambda: &Arc<TriangularAlgebra>) -> Result<Workspace> {
    let text = fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&text)?;
    ensure!(file.schema_version == CACHE_SCHEMA_VERSION, "cache schema");
    ensure!(file.key == key, "cache key");
    ensure!(file.checksum == sha256_hex(&serde_json::to_vec(&file.payload)?), "cache checksum");
    load(lambda, &file.payload)
}

struct Lock(PathBuf);

impl Lock {
    /// Waits for the exclusive lock file; `None` after the timeout, in which
    /// case the caller computes without touching the cache.
    fn acquire(path: PathBuf) -> Option<Lock> {
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Some(Lock(path)),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists && start.elapsed() < LOCK_TIMEOUT => {
                    std::thread::sleep(Duration::from_millis(50));
                }
                Err(_) => return None,
            }
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn write(path: &Path, key: &str, ws: &Workspace) -> Result<()> {
    let payload = dump(ws);
    let checksum = sha256_hex(&serde_json::to_vec(&payload)?);
    let file = CacheFile { schema_version: CACHE_SCHEMA_VERSION, key: key.to_string(), checksum, payload };
    let tmp = path.with_extension("json.tmp");
    let mut out = fs::File::create(&tmp)?;
    out.write_all(serde_json::to_string(&file)?.as_bytes())?;
    out.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// The catalogs for `config`, from `dir` when a valid cache file exists.
pub fn workspace(config: &WorkbenchConfig, dir: Option<&Path>) -> Result<(Workspace, CacheStatus)> {
    let lambda = config.algebra()?;
    let build = || Workspace::build(lambda.clone(), config.caps(), &config.alias_list()).map_err(|e| anyhow!("{e}"));
    let Some(dir) = dir else {
        return Ok((build()?, CacheStatus::Disabled));
    };
    let key = catalog_key(config);
    let path = cache_path(dir, &key);
    if fs::create_dir_all(dir).is_err() {
        return Ok((build()?, CacheStatus::Disabled));
    }
    let Some(_lock) = Lock::acquire(dir.join(format!("catalog-{key}.lock"))) else {
        return Ok((build()?, CacheStatus::Disabled));
    };
    let existed = path.exists();
    if existed {
        if let Ok(ws) = read(&path, &key, &lambda) {
            return Ok((ws, CacheStatus::Hit));
        }
    }
    let ws = build()?;
    // A cache that cannot be written only costs time on the next run.
    let _ = write(&path, &key, &ws);
    Ok((ws, if existed { CacheStatus::Rebuilt } else { CacheStatus::Miss }))
}
