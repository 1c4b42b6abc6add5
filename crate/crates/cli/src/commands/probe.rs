use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use inkspace_core::probe::{popularity_from_votes, probe, rank_deltas, DeltaRanking, MaskBackend, NgramBackend, ProbeResult};
use serde::Serialize;

use crate::backend::CommandBackend;
use crate::config::{BackendConfig, ProbeConfig};
use crate::error::{AppError, AppResult};
use crate::io::{cell, write_csv, write_json};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YearPopularity {
    pub year: i32,
    pub vote_b: f64,
    pub vote_c: f64,
    /// Normalized share of B; `None` when neither token was predicted.
    pub b: Option<f64>,
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeOutput {
    pub backend: BackendConfig,
    pub prompt: String,
    pub token_b: String,
    pub token_c: String,
    pub popularity: Vec<YearPopularity>,
    /// Change from the first to the last year.
    pub deltas: Option<DeltaRanking>,
}

/// One backend per year: an n-gram model of that year's sentences, or the
/// configured command with `{year}` substituted.
pub fn backend_for(cfg: &ProbeConfig, year: i32, sentences: &[Vec<String>]) -> AppResult<Box<dyn MaskBackend + Send + Sync>> {
    let id = format!("{year}");
    Ok(match &cfg.backend {
        BackendConfig::Ngram { order, smoothing } => Box::new(NgramBackend::train(&id, sentences, *order, *smoothing)?),
        BackendConfig::Command { program, args } => {
            let args: Vec<String> = args.iter().map(|a| a.replace("{year}", &id)).collect();
            Box::new(CommandBackend::new(&id, program, &args))
        }
    })
}

pub fn compute(cfg: &ProbeConfig, sentences: &BTreeMap<i32, Vec<Vec<String>>>) -> AppResult<ProbeOutput> {
    let mut results: Vec<ProbeResult> = Vec::new();
    let mut popularity = Vec::new();
    for (&year, s) in sentences {
        let backend = backend_for(cfg, year, s)?;
        let r = probe(backend.as_ref(), &cfg.prompt, Some(year)).map_err(|e| AppError::data(format!("year {year}: {e}")))?;
        let (vote_b, vote_c) = (r.probability(&cfg.token_b), r.probability(&cfg.token_c));
        let p = match popularity_from_votes(vote_b, vote_c) {
            Ok(p) => Some(p),
            Err(e) => {
                log::warn!("year {year}: {e}");
                None
            }
        };
        popularity.push(YearPopularity { year, vote_b, vote_c, b: p.map(|p| p.b), c: p.map(|p| p.c) });
        results.push(r);
    }
    let deltas = match results.as_slice() {
        [first, .., last] => Some(rank_deltas(first, last, cfg.top_k, cfg.max_listed)),
        _ => None,
    };
    Ok(ProbeOutput {
        backend: cfg.backend.clone(),
        prompt: cfg.prompt.clone(),
        token_b: cfg.token_b.clone(),
        token_c: cfg.token_c.clone(),
        popularity,
        deltas,
    })
}

pub fn write(out: &ProbeOutput, dir: &Path) -> AppResult<Vec<PathBuf>> {
    let dir = dir.join("probe");
    let pop = dir.join("popularity.csv");
    let rows = out.popularity.iter().map(|p| {
        vec![p.year.to_string(), p.vote_b.to_string(), p.vote_c.to_string(), cell(p.b), cell(p.c)]
    });
    write_csv(&pop, &["year", "vote_b", "vote_c", "popularity_b", "popularity_c"], rows)?;
    let mut paths = vec![pop];
    if let Some(d) = &out.deltas {
        let p = dir.join("deltas.csv");
        let rows = d
            .rising
            .iter()
            .map(|t| ("rising", t))
            .chain(d.falling.iter().map(|t| ("falling", t)))
            .map(|(dir, t)| vec![dir.to_string(), t.token.clone(), t.early.to_string(), t.late.to_string(), t.delta.to_string()]);
        write_csv(&p, &["direction", "token", "early", "late", "delta"], rows)?;
        paths.push(p);
    }
    let summary = dir.join("summary.json");
    write_json(&summary, out)?;
    paths.push(summary);
    Ok(paths)
}
