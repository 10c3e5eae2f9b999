//! The extension method: grow a pool of low-value graphs one vertex at a
//! time, pruning with a level sequence, to bound `f_r(n)` from below.
//!
//! A level sequence satisfies `ℓ_{n+1} ≥ (n+1)/(n−1)·ℓ_n`. Averaging a
//! packing over the `n+1` induced subgraphs on `n` vertices shows that every
//! graph on `n+1` vertices with value at most `ℓ_{n+1}` has an induced
//! subgraph on `n` vertices with value at most `(n−1)/(n+1)·ℓ_{n+1}`. So if
//! the pool at `n` holds every graph with value at most `ℓ_n`, extending the
//! members with value at most `α_n = (n−1)/(n+1)·ℓ_{n+1}` and filtering by
//! `ℓ_{n+1}` yields every graph on `n+1` vertices with value at most
//! `ℓ_{n+1}`.

use crate::error::{Error, Result};
use crate::graph::{canonical_form, enumerate_graphs, one_vertex_extensions_keyed, CanonicalForm};
use crate::packing::{nu, ObjectiveWeights};
use crate::ratio;
use crate::Rational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

pub const DEFAULT_POOL_CAP: usize = 10_000_000;

const POOL_MAGIC: &[u8; 4] = b"KSP1";
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub r: usize,
    pub n0: usize,
    /// Order statistic `d` used for the level rule.
    pub depth: usize,
    pub n_max: usize,
    pub weights: ObjectiveWeights,
    pub pool_cap: usize,
    /// Directory for per-level checkpoints.
    pub checkpoint: Option<PathBuf>,
}

impl SearchConfig {
    pub fn new(r: usize, n0: usize, depth: usize, n_max: usize) -> Self {
        SearchConfig {
            r,
            n0,
            depth,
            n_max,
            weights: ObjectiveWeights::clique_savings(r),
            pool_cap: DEFAULT_POOL_CAP,
            checkpoint: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.depth == 0 {
            return Err(Error::Precondition(
                "search depth must be at least 1".into(),
            ));
        }
        if self.n0 < 2 {
            return Err(Error::Precondition("seed order must be at least 2".into()));
        }
        if self.n0 > crate::graph::MAX_ENUMERATION_ORDER {
            return Err(Error::Capacity {
                what: "seed order",
                limit: crate::graph::MAX_ENUMERATION_ORDER,
                got: self.n0,
            });
        }
        Ok(())
    }
}

/// One line of the search transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: usize,
    /// `ℓ_n`; `None` while the pool is unpruned.
    #[serde(with = "ratio::serde_text_opt")]
    pub level: Option<Rational>,
    pub pool_size: usize,
    /// `Λ[n]`: the pool minimum, or `ℓ_n` once the pool is empty.
    #[serde(with = "ratio::serde_text")]
    pub lambda: Rational,
    /// True when `Λ[n] = f_r(n)`, false when it is only a lower bound.
    pub exact: bool,
    /// Smallest distinct pool values, at most `depth` of them.
    #[serde(with = "ratio::serde_text_vec")]
    pub smallest: Vec<Rational>,
}

/// Pool of canonical graphs with their values `ν(g) + ν(ḡ)`, all at most `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    pub n: usize,
    pub level: Option<Rational>,
    pub pool: BTreeMap<CanonicalForm, Rational>,
    pub transcript: Vec<LevelRecord>,
}

impl SearchState {
    /// `n → (Λ[n], exact)`.
    pub fn lambda_table(&self) -> BTreeMap<usize, (Rational, bool)> {
        self.transcript
            .iter()
            .map(|r| (r.n, (r.lambda.clone(), r.exact)))
            .collect()
    }

    fn distinct_values(&self) -> BTreeSet<&Rational> {
        self.pool.values().collect()
    }

    fn record(&self, depth: usize) -> LevelRecord {
        let distinct = self.distinct_values();
        let smallest: Vec<Rational> = distinct.iter().take(depth).map(|&v| v.clone()).collect();
        let (lambda, exact) = match (smallest.first(), &self.level) {
            (Some(min), _) => (min.clone(), true),
            (None, Some(level)) => (level.clone(), false),
            (None, None) => (Rational::from_integer(0.into()), false),
        };
        LevelRecord {
            n: self.n,
            level: self.level.clone(),
            pool_size: self.pool.len(),
            lambda,
            exact,
            smallest,
        }
    }
}

/// All graphs on `n0` vertices with their values.
pub fn seed(config: &SearchConfig) -> Result<SearchState> {
    config.validate()?;
    let graphs = enumerate_graphs(config.n0)?;
    let keys: BTreeSet<CanonicalForm> = graphs.iter().map(canonical_form).collect();
    let pool = pair_values(&keys, config)?;
    Ok(SearchState {
        n: config.n0,
        level: None,
        pool,
        transcript: Vec::new(),
    })
}

/// Values `ν(h) + ν(h̄)` for every key, solving each LP once.
fn pair_values(
    keys: &BTreeSet<CanonicalForm>,
    config: &SearchConfig,
) -> Result<BTreeMap<CanonicalForm, Rational>> {
    let keys: Vec<&CanonicalForm> = keys.iter().collect();
    let pairs: Vec<(CanonicalForm, CanonicalForm)> = keys
        .par_iter()
        .map(|&k| (k.clone(), canonical_form(&k.graph().complement())))
        .collect();
    let needed: BTreeSet<CanonicalForm> = pairs
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    let needed: Vec<CanonicalForm> = needed.into_iter().collect();
    let singles: BTreeMap<&CanonicalForm, Rational> = needed
        .par_iter()
        .map(|k| (k, nu(&k.graph(), config.r, &config.weights)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(pairs
        .into_iter()
        .map(|(k, co)| {
            let v = &singles[&k] + &singles[&co];
            (k, v)
        })
        .collect())
}

/// Advances the pool from `n` to `n + 1`.
pub fn extend(config: &SearchConfig, state: &SearchState) -> Result<SearchState> {
    let n = state.n;
    let distinct = state.distinct_values();
    let alpha = match distinct.iter().nth(config.depth - 1) {
        Some(&v) => Some(v.clone()),
        None => state.level.clone(),
    };
    let ratio = Rational::new((n + 1).into(), (n - 1).into());
    let next_level = alpha.as_ref().map(|a| a * &ratio);
    let survivors: Vec<&CanonicalForm> = state
        .pool
        .iter()
        .filter(|(_, v)| alpha.as_ref().is_none_or(|a| *v <= a))
        .map(|(k, _)| k)
        .collect();
    let ext_lists: Vec<Vec<CanonicalForm>> = survivors
        .par_iter()
        .map(|k| one_vertex_extensions_keyed(&k.graph()).map(|m| m.into_keys().collect()))
        .collect::<Result<_>>()?;
    let mut keys = BTreeSet::new();
    for list in ext_lists {
        keys.extend(list);
        if keys.len() > config.pool_cap {
            return Err(Error::Capacity {
                what: "search pool size",
                limit: config.pool_cap,
                got: keys.len(),
            });
        }
    }
    let mut pool = pair_values(&keys, config)?;
    if let Some(level) = &next_level {
        pool.retain(|_, v| *v <= *level);
    }
    Ok(SearchState {
        n: n + 1,
        level: next_level,
        pool,
        transcript: state.transcript.clone(),
    })
}

/// Runs from the exhaustive seed up to `n_max` or until the pool empties.
pub fn run_search(config: &SearchConfig) -> Result<SearchState> {
    let state = seed(config)?;
    continue_search(config, state)
}

/// Continues from the latest checkpoint in `dir`.
pub fn resume_search(config: &SearchConfig, dir: &Path) -> Result<SearchState> {
    config.validate()?;
    let state = load_checkpoint(config, dir)?;
    continue_search(config, state)
}

fn continue_search(config: &SearchConfig, mut state: SearchState) -> Result<SearchState> {
    loop {
        if state.transcript.last().is_none_or(|r| r.n < state.n) {
            let rec = state.record(config.depth);
            state.transcript.push(rec);
            if let Some(dir) = &config.checkpoint {
                save_checkpoint(config, &state, dir)?;
            }
        }
        if state.n >= config.n_max || state.pool.is_empty() {
            return Ok(state);
        }
        state = extend(config, &state)?;
    }
}

/// True if `ℓ_{n+1} ≤ (n+1)/(n−1)·ℓ_n` for each consecutive pair, where
/// `levels[i]` is `ℓ_{n_start + i}`.
///
/// This is the direction the pool invariant needs: a graph on `n + 1`
/// vertices with value at most `(n+1)/(n−1)·ℓ` has a vertex-deleted subgraph
/// with value at most `ℓ`, so every graph under `ℓ_{n+1}` extends one under
/// `ℓ_n` exactly when `ℓ_{n+1}` does not exceed the scaled level. The depth
/// rule `ℓ_{n+1} = (n+1)/(n−1)·α_n` with `α_n ≤ ℓ_n` always satisfies it.
pub fn certify_level_sequence(n_start: usize, levels: &[Rational]) -> bool {
    levels.windows(2).enumerate().all(|(i, w)| {
        let n = n_start + i;
        n >= 2 && w[1] <= &w[0] * Rational::new((n + 1).into(), (n - 1).into())
    })
}

/// The finite part of a transcript's level sequence, with its starting order.
pub fn transcript_levels(transcript: &[LevelRecord]) -> (usize, Vec<Rational>) {
    let finite: Vec<&LevelRecord> = transcript.iter().filter(|r| r.level.is_some()).collect();
    let start = finite.first().map_or(0, |r| r.n);
    (
        start,
        finite.iter().filter_map(|r| r.level.clone()).collect(),
    )
}

/// `Λ[n] / (n(n−1))` never decreases along the transcript.
pub fn lambda_monotone(transcript: &[LevelRecord]) -> bool {
    let norm = |r: &LevelRecord| &r.lambda / Rational::from_integer((r.n * (r.n - 1)).into());
    transcript.windows(2).all(|w| norm(&w[1]) >= norm(&w[0]))
}

/// Table layout: one row per order statistic `i = 1..=depth`, one column
/// per `n`; missing cells are `*`.
pub fn table_csv(transcript: &[LevelRecord], depth: usize) -> String {
    let mut s = String::from("i");
    for r in transcript {
        s.push_str(&format!(",{}", r.n));
    }
    s.push('\n');
    for i in 0..depth {
        s.push_str(&(i + 1).to_string());
        for r in transcript {
            match r.smallest.get(i) {
                Some(v) => s.push_str(&format!(",{}", ratio::to_decimal(v, 6))),
                None => s.push_str(",*"),
            }
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    format: String,
    version: u32,
    r: usize,
    n0: usize,
    depth: usize,
    weights: BTreeMap<usize, String>,
    n: usize,
    #[serde(with = "ratio::serde_text_opt")]
    level: Option<Rational>,
    pool_file: String,
    pool_size: usize,
    transcript: Vec<LevelRecord>,
}

const MANIFEST: &str = "manifest.json";

/// Writes the pool of the current level and a manifest pointing at it.
pub fn save_checkpoint(config: &SearchConfig, state: &SearchState, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let pool_file = format!("pool-n{}.bin", state.n);
    let mut w = BufWriter::new(fs::File::create(dir.join(&pool_file))?);
    w.write_all(POOL_MAGIC)?;
    w.write_all(&CHECKPOINT_VERSION.to_le_bytes())?;
    w.write_all(&(state.n as u32).to_le_bytes())?;
    w.write_all(&(state.pool.len() as u64).to_le_bytes())?;
    for (k, v) in &state.pool {
        write_field(&mut w, &k.bytes)?;
        write_field(&mut w, ratio::to_text(v).as_bytes())?;
    }
    w.flush()?;
    let manifest = Manifest {
        format: "cliquepack-search-checkpoint".into(),
        version: CHECKPOINT_VERSION,
        r: config.r,
        n0: config.n0,
        depth: config.depth,
        weights: config.weights.to_text_map(),
        n: state.n,
        level: state.level.clone(),
        pool_file,
        pool_size: state.pool.len(),
        transcript: state.transcript.clone(),
    };
    // Write then rename so a crash never leaves a half-written manifest.
    let tmp = dir.join("manifest.json.tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(&manifest)?)?;
    fs::rename(tmp, dir.join(MANIFEST))?;
    Ok(())
}

fn write_field<W: Write>(w: &mut W, bytes: &[u8]) -> Result<()> {
    let len = u16::try_from(bytes.len())
        .map_err(|_| Error::Checkpoint("field longer than 65535 bytes".into()))?;
    w.write_all(&len.to_le_bytes())?;
    w.write_all(bytes)?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)
        .map_err(|e| Error::Checkpoint(format!("truncated pool file: {e}")))?;
    Ok(buf)
}

fn read_field<R: Read>(r: &mut R) -> Result<Vec<u8>> {
    let len = u16::from_le_bytes(read_array(r)?) as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)
        .map_err(|e| Error::Checkpoint(format!("truncated pool file: {e}")))?;
    Ok(buf)
}

/// Loads a checkpoint, refusing one written with different search parameters.
pub fn load_checkpoint(config: &SearchConfig, dir: &Path) -> Result<SearchState> {
    let manifest: Manifest = serde_json::from_slice(&fs::read(dir.join(MANIFEST))?)?;
    if manifest.format != "cliquepack-search-checkpoint" || manifest.version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!(
            "unsupported checkpoint {} v{}",
            manifest.format, manifest.version
        )));
    }
    if manifest.r != config.r
        || manifest.n0 != config.n0
        || manifest.depth != config.depth
        || manifest.weights != config.weights.to_text_map()
    {
        return Err(Error::Checkpoint(
            "checkpoint was written with different parameters".into(),
        ));
    }
    let mut r = BufReader::new(fs::File::open(dir.join(&manifest.pool_file))?);
    if &read_array::<4, _>(&mut r)? != POOL_MAGIC {
        return Err(Error::Checkpoint("bad pool file magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    let n = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let count = u64::from_le_bytes(read_array(&mut r)?) as usize;
    if version != CHECKPOINT_VERSION || n != manifest.n || count != manifest.pool_size {
        return Err(Error::Checkpoint(
            "pool file does not match manifest".into(),
        ));
    }
    let mut pool = BTreeMap::new();
    for _ in 0..count {
        let bytes = read_field(&mut r)?;
        let text = String::from_utf8(read_field(&mut r)?)
            .map_err(|_| Error::Checkpoint("non-utf8 value".into()))?;
        let key = CanonicalForm { n, bytes };
        if crate::graph::graph6_decode(key.as_str())
            .map(|g| g.n())
            .ok()
            != Some(n)
        {
            return Err(Error::Checkpoint(
                "pool entry is not a graph on n vertices".into(),
            ));
        }
        pool.insert(key, ratio::parse(&text)?);
    }
    Ok(SearchState {
        n,
        level: manifest.level,
        pool,
        transcript: manifest.transcript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn level_sequences() {
        // ℓ_{n+1} = (n+1)/(n−1)·ℓ_n from ℓ_3 = 1: 1, 2, 10/3, 5, ...
        let mut seq = vec![int(1)];
        for n in 3..10usize {
            let next = seq.last().unwrap() * Rational::new((n + 1).into(), (n - 1).into());
            seq.push(next);
        }
        assert!(certify_level_sequence(3, &seq));
        // Growing faster than the averaging factor loses graphs.
        assert!(!certify_level_sequence(3, &[int(1), int(3)]));
        assert!(certify_level_sequence(3, &[int(5), int(4)]));
    }

    #[test]
    fn small_run_is_sound() {
        let cfg = SearchConfig::new(4, 5, 3, 7);
        let state = run_search(&cfg).unwrap();
        assert!(lambda_monotone(&state.transcript));
        let f7 = crate::packing::f_exhaustive(7, 4, &cfg.weights).unwrap();
        let (lambda, _) = &state.lambda_table()[&7];
        assert!(*lambda <= f7.value);
    }
}
