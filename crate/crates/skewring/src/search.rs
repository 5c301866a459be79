//! Seeded random search for good left ideals.
//!
//! Candidate `i` draws its generator from ChaCha8 seeded with `seed` on
//! stream `i`, so the record stream does not depend on the number of worker
//! threads. Candidates are evaluated in parallel and merged in index order.

use std::collections::{BTreeMap, HashSet};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use skewring_core::distance::{DistanceOutcome, WorkLimit};
use skewring_core::{Code, DistanceMethod, Fe, Form, RingCtx, RingElem};
use thiserror::Error;

use crate::context::{fingerprint, hex64};
use crate::files::FormatError;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("density must lie in (0, 1], got {0}")]
    Density(f64),
    #[error(transparent)]
    Core(#[from] skewring_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("bound |G| <= d*k violated by {0}")]
    BoundViolated(String),
}

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub budget: u64,
    pub seed: u64,
    /// Probability that a coefficient of the generator is nonzero.
    pub density: f64,
    /// Codewords a single distance computation may enumerate before it
    /// settles for bounds.
    pub work_cap: u64,
}

impl SearchConfig {
    pub const DEFAULT_WORK_CAP: u64 = 200_000_000;

    pub fn new(budget: u64, seed: u64) -> SearchConfig {
        SearchConfig { budget, seed, density: 0.5, work_cap: Self::DEFAULT_WORK_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub lcd_euclidean: bool,
    pub sd_euclidean: bool,
    /// Absent over fields of non-square order.
    pub lcd_hermitian: Option<bool>,
    pub sd_hermitian: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    /// Logical clock: the index of the candidate that produced the record.
    pub timestamp: u64,
    pub fingerprint: String,
    pub seed: u64,
    pub generator: String,
    pub n: usize,
    pub k: usize,
    /// Exact distance, or a lower bound when `d_lower_bound` is set.
    pub d: usize,
    pub d_lower_bound: bool,
    /// Smallest weight seen; equals `d` unless the work cap was hit.
    pub d_upper: usize,
    pub params: String,
    pub flags: Flags,
    /// `d·k - n`, using `d_upper` for capped candidates.
    pub bound_slack: i64,
    pub genmat_hash: String,
}

pub fn candidate(ctx: &Arc<RingCtx>, seed: u64, index: u64, density: f64) -> RingElem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let q = ctx.field().order();
    let coeffs = (0..ctx.n()).map(|_| if rng.random_bool(density) { Fe(rng.random_range(1..q)) } else { Fe::ZERO }).collect();
    ctx.elem(coeffs).expect("length matches")
}

fn genmat_hash(code: &Code) -> String {
    let f = code.field();
    let text: Vec<String> = code.genmat().iter().map(|r| r.iter().map(|&x| f.render(x)).collect::<Vec<_>>().join(" ")).collect();
    hex64(text.join("\n").as_bytes())
}

fn evaluate(ctx: &Arc<RingCtx>, fp: &str, cfg: &SearchConfig, index: u64) -> Result<Option<SearchRecord>, SearchError> {
    let g = candidate(ctx, cfg.seed, index, cfg.density);
    if g.is_zero() {
        return Ok(None);
    }
    let code = Code::ideal_span(std::slice::from_ref(&g))?;
    let (outcome, _) = code.min_distance_budgeted(DistanceMethod::Auto, &mut WorkLimit(cfg.work_cap))?;
    let (d, d_upper, capped) = match outcome {
        DistanceOutcome::Exact { d, .. } => (d, d, false),
        DistanceOutcome::Bounded { lower, upper, .. } => (lower, upper, true),
    };
    let (holds, slack) = code.bound_check(d_upper);
    if !holds {
        return Err(SearchError::BoundViolated(code.params(Some(d_upper))));
    }
    let square = ctx.field().is_square_order();
    let flags = Flags {
        lcd_euclidean: code.is_lcd(Form::Euclidean)?,
        sd_euclidean: code.is_self_dual(Form::Euclidean)?,
        lcd_hermitian: if square { Some(code.is_lcd(Form::Hermitian)?) } else { None },
        sd_hermitian: if square { Some(code.is_self_dual(Form::Hermitian)?) } else { None },
    };
    Ok(Some(SearchRecord {
        timestamp: index,
        fingerprint: fp.to_string(),
        seed: cfg.seed,
        generator: g.to_string(),
        n: code.n(),
        k: code.k(),
        d,
        d_lower_bound: capped,
        d_upper,
        params: code.params(Some(d)),
        flags,
        bound_slack: slack,
        genmat_hash: genmat_hash(&code),
    }))
}

/// Evaluates `budget` candidates and keeps the first record of every distinct
/// code, keyed by `(k, genmat hash)`.
pub fn run(ctx: &Arc<RingCtx>, cfg: &SearchConfig) -> Result<Vec<SearchRecord>, SearchError> {
    if cfg.budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    if !(cfg.density > 0.0 && cfg.density <= 1.0) {
        return Err(SearchError::Density(cfg.density));
    }
    let fp = fingerprint(ctx);
    let results: Vec<Result<Option<SearchRecord>, SearchError>> =
        (0..cfg.budget).into_par_iter().map(|i| evaluate(ctx, &fp, cfg, i)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in results {
        if let Some(rec) = r? {
            if seen.insert((rec.k, rec.genmat_hash.clone())) {
                out.push(rec);
            }
        }
    }
    Ok(out)
}

pub fn to_jsonl(records: &[SearchRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("record serializes") + "\n").collect()
}

/// Appends records to `path`, creating it if needed.
pub fn append_jsonl(path: &Path, records: &[SearchRecord]) -> Result<(), FormatError> {
    let io = |source| FormatError::Io { path: path.to_path_buf(), source };
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    file.write_all(to_jsonl(records).as_bytes()).map_err(io)?;
    file.flush().map_err(io)
}

pub fn parse_jsonl(text: &str) -> Result<Vec<SearchRecord>, serde_json::Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

/// Best exact distance per dimension.
pub fn best_by_k(records: &[SearchRecord]) -> BTreeMap<usize, &SearchRecord> {
    let mut best: BTreeMap<usize, &SearchRecord> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.d_lower_bound) {
        match best.get(&r.k) {
            Some(b) if b.d >= r.d => {}
            _ => {
                best.insert(r.k, r);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewring_core::catalog::hexacode_ctx;

    #[test]
    fn candidates_are_reproducible() {
        let ctx = hexacode_ctx().unwrap();
        assert_eq!(candidate(&ctx, 7, 3, 0.5), candidate(&ctx, 7, 3, 0.5));
        assert_ne!(candidate(&ctx, 7, 3, 0.5), candidate(&ctx, 7, 4, 0.5));
    }

    #[test]
    fn rejects_bad_configs() {
        let ctx = hexacode_ctx().unwrap();
        assert!(matches!(run(&ctx, &SearchConfig::new(0, 1)), Err(SearchError::ZeroBudget)));
        let cfg = SearchConfig { density: 0.0, ..SearchConfig::new(5, 1) };
        assert!(matches!(run(&ctx, &cfg), Err(SearchError::Density(_))));
    }

    #[test]
    fn records_round_trip_through_jsonl() {
        let ctx = hexacode_ctx().unwrap();
        let recs = run(&ctx, &SearchConfig::new(40, 9)).unwrap();
        assert!(!recs.is_empty());
        assert_eq!(parse_jsonl(&to_jsonl(&recs)).unwrap(), recs);
        let keys: HashSet<_> = recs.iter().map(|r| (r.k, r.genmat_hash.clone())).collect();
        assert_eq!(keys.len(), recs.len());
    }
}
