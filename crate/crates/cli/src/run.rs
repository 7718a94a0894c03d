use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::RunArgs;

pub const METADATA_FILE: &str = "run.json";
pub const CONFIG_FILE: &str = "config.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// An invariant witness was found where none is expected.
    Witness,
}

/// One subcommand: a config type and what to do with it.
pub trait Experiment {
    type Config: Serialize + DeserializeOwned + Default;
    const NAME: &'static str;
    /// Dotted path of the seed inside the config.
    const SEED_KEY: &'static str;

    /// Makes relative input paths absolute against `base`.
    fn resolve_paths(_cfg: &mut Self::Config, _base: &Path) {}

    /// Input files the run reads.
    fn inputs(_cfg: &Self::Config) -> Vec<PathBuf> {
        Vec::new()
    }

    /// Writes the artifacts into `out`, which exists and is writable.
    fn run(cfg: &Self::Config, out: &Path) -> Result<Status>;
}

/// `KEY=V1,V2,...`. Values are read as JSON where possible, otherwise as
/// strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<Value>,
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (key, values) = s.split_once('=').ok_or("expected KEY=V1,V2,...")?;
        if key.is_empty() || key.split('.').any(str::is_empty) {
            return Err(format!("invalid key {key:?}"));
        }
        let values: Vec<Value> = values
            .split(',')
            .filter(|v| !v.is_empty())
            .map(|v| serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string())))
            .collect();
        if values.is_empty() {
            return Err("sweep needs at least one value".into());
        }
        Ok(Self {
            key: key.to_string(),
            values,
        })
    }
}

fn label(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Sets `path` (dotted) inside `root`, creating objects along the way.
pub fn set_path(root: &mut Value, path: &str, value: Value) -> Result<()> {
    let mut cur = root;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        if cur.is_null() {
            *cur = Value::Object(Map::new());
        }
        let obj = cur
            .as_object_mut()
            .ok_or_else(|| anyhow!("{path}: {} is not an object", keys[..i].join(".")))?;
        if i + 1 == keys.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        cur = obj.entry(key.to_string()).or_insert(Value::Null);
    }
    unreachable!("split yields at least one key")
}

fn get_path<'a>(root: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(root, |v, k| v.get(k))
}

/// Reads a typed config, reporting parse errors with line and column.
pub fn load_config<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| anyhow!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
}

pub fn config_hash(config: &Value) -> String {
    // serde_json maps are sorted by key, so this serialization is canonical
    hex::encode(Sha256::digest(config.to_string().as_bytes()))
}

fn is_non_empty_dir(dir: &Path) -> bool {
    fs::read_dir(dir)
        .map(|mut d| d.next().is_some())
        .unwrap_or(false)
}

fn prepare_out(out: &Path, force: bool, inputs: &[PathBuf]) -> Result<()> {
    if out.exists() && !out.is_dir() {
        bail!("output path {} is not a directory", out.display());
    }
    if is_non_empty_dir(out) && !force {
        bail!(
            "output directory {} is not empty; pass --force to write into it",
            out.display()
        );
    }
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let out_abs = fs::canonicalize(out)?;
    for input in inputs {
        if let Ok(abs) = fs::canonicalize(input) {
            if abs.starts_with(&out_abs) {
                bail!(
                    "output directory {} contains input {}",
                    out.display(),
                    input.display()
                );
            }
        }
    }
    Ok(())
}

pub fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write(path, text)
}

fn run_one<E: Experiment>(config: &Value, out: &Path) -> Result<Status> {
    let cfg: E::Config =
        serde_json::from_value(config.clone()).map_err(|e| anyhow!("invalid config: {e}"))?;
    write_json(&out.join(CONFIG_FILE), config)?;
    let start = Instant::now();
    let status = E::run(&cfg, out)?;
    let meta = json!({
        "command": E::NAME,
        "seed": get_path(config, E::SEED_KEY),
        "config_hash": config_hash(config),
        "config": config,
        "wall_time_secs": start.elapsed().as_secs_f64(),
        "version": env!("CARGO_PKG_VERSION"),
    });
    write_json(&out.join(METADATA_FILE), &meta)?;
    Ok(status)
}

/// Loads and resolves the config, applies `--seed` and `--sweep`, and runs
/// every variant.
pub fn execute<E: Experiment>(args: &RunArgs) -> Result<Status> {
    let mut cfg: E::Config = load_config(args.config.as_deref())?;
    let base = match args.config.as_deref().and_then(Path::parent) {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    E::resolve_paths(&mut cfg, &base);
    let inputs: Vec<PathBuf> = args.config.iter().cloned().chain(E::inputs(&cfg)).collect();

    let mut config = serde_json::to_value(&cfg)?;
    if let Some(seed) = args.seed {
        set_path(&mut config, E::SEED_KEY, json!(seed))?;
    }

    let Some(sweep) = &args.sweep else {
        prepare_out(&args.out, args.force, &inputs)?;
        return run_one::<E>(&config, &args.out);
    };

    let mut variants = Vec::with_capacity(sweep.values.len());
    for v in &sweep.values {
        let mut c = config.clone();
        set_path(&mut c, &sweep.key, v.clone())?;
        let name = format!("{}={}", sweep.key, label(v)).replace(['/', '\\'], "_");
        variants.push((v.clone(), name, c));
    }
    prepare_out(&args.out, args.force, &inputs)?;
    for (_, name, _) in &variants {
        prepare_out(&args.out.join(name), args.force, &inputs)?;
    }
    let results: Vec<Result<Status>> = variants
        .par_iter()
        .map(|(_, name, c)| {
            run_one::<E>(c, &args.out.join(name)).with_context(|| format!("sweep run {name}"))
        })
        .collect();

    let mut index = Vec::with_capacity(variants.len());
    let mut overall = Status::Ok;
    for ((value, name, _), res) in variants.iter().zip(results) {
        let status = res?;
        if status == Status::Witness {
            overall = Status::Witness;
        }
        index.push(json!({
            "value": value,
            "dir": name,
            "status": if status == Status::Ok { "ok" } else { "witness" },
        }));
    }
    write_json(
        &args.out.join("sweep.json"),
        &json!({ "key": sweep.key, "runs": index }),
    )?;
    Ok(overall)
}
