use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use inkspace_core::embeddings::{
    popularity_timeline, train_sgns, weat_score, AlignMode, AlignOptions, AssociationSets, EmbeddingSpace,
    PopularityTimeline,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::LoadedConfig;
use crate::embio;
use crate::error::{AppError, AppResult};
use crate::io::{cell, write_csv, write_json};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YearScore {
    pub year: i32,
    pub vocabulary: usize,
    /// Effect size of the target sets; `None` when the year lacks the words.
    pub weat: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeatOutput {
    pub align: AlignMode,
    pub sets: AssociationSets,
    pub timeline: PopularityTimeline,
    pub crossings: Vec<i32>,
    pub yearly: Vec<YearScore>,
    #[serde(skip)]
    pub spaces: Vec<EmbeddingSpace>,
}

/// Trains one model per year. Year `y` uses seed `seed + y`.
pub fn train_years(
    sentences: &BTreeMap<i32, Vec<Vec<String>>>,
    cfg: &LoadedConfig,
    seed: u64,
) -> AppResult<Vec<EmbeddingSpace>> {
    let e = &cfg.config.embeddings;
    let job = |(&year, s): (&i32, &Vec<Vec<String>>)| -> AppResult<EmbeddingSpace> {
        log::info!("training year {year} on {} sentences", s.len());
        let params = e.params(seed.wrapping_add(year as u64));
        train_sgns(year, s, &params).map_err(|err| AppError::data(format!("year {year}: {err}")))
    };
    if e.parallel_years {
        sentences.par_iter().map(job).collect()
    } else {
        sentences.iter().map(job).collect()
    }
}

pub fn compute(
    sentences: &BTreeMap<i32, Vec<Vec<String>>>,
    sets: &AssociationSets,
    cfg: &LoadedConfig,
    seed: u64,
) -> AppResult<WeatOutput> {
    let e = &cfg.config.embeddings;
    let spaces = train_years(sentences, cfg, seed)?;
    let options = AlignOptions { mode: e.align, anchors: e.anchors, exclude: Vec::new() };
    let m = &cfg.config.metrics;
    let timeline = popularity_timeline(&spaces, sets, [&m.party_b, &m.party_c], &options)?;
    let yearly = spaces
        .iter()
        .map(|s| {
            let weat = match weat_score(sets, s) {
                Ok(v) => Some(v),
                Err(err) => {
                    log::warn!("year {}: no effect size: {err}", s.year());
                    None
                }
            };
            YearScore { year: s.year(), vocabulary: s.len(), weat }
        })
        .collect();
    Ok(WeatOutput { align: e.align, sets: sets.clone(), crossings: timeline.crossings(), timeline, yearly, spaces })
}

pub fn write(out: &WeatOutput, dir: &Path, save_vectors: bool) -> AppResult<Vec<PathBuf>> {
    let dir = dir.join("weat");
    let pop = dir.join("popularity.csv");
    let header: Vec<&str> = ["year"].into_iter().chain(out.timeline.parties.iter().map(|p| p.party.as_str())).collect();
    let rows = out.timeline.years.iter().enumerate().map(|(i, y)| {
        std::iter::once(y.to_string()).chain(out.timeline.parties.iter().map(|p| cell(p.values[i]))).collect::<Vec<_>>()
    });
    write_csv(&pop, &header, rows)?;

    let scores = dir.join("weat.csv");
    let rows = out.yearly.iter().map(|y| vec![y.year.to_string(), y.vocabulary.to_string(), cell(y.weat)]);
    write_csv(&scores, &["year", "vocabulary", "weat"], rows)?;

    let summary = dir.join("summary.json");
    write_json(&summary, out)?;
    let mut paths = vec![pop, scores, summary];
    if save_vectors {
        for s in &out.spaces {
            for (ext, text) in [("bin", false), ("txt", true)] {
                let p = dir.join("vectors").join(format!("{}.{ext}", s.year()));
                std::fs::create_dir_all(p.parent().expect("has parent")).map_err(|e| AppError::write(&p, e))?;
                let w = BufWriter::new(File::create(&p).map_err(|e| AppError::write(&p, e))?);
                let r = if text { embio::write_text(s, w) } else { embio::write_binary(s, w) };
                r.map_err(|e| AppError::write(&p, e))?;
                paths.push(p);
            }
        }
    }
    Ok(paths)
}
