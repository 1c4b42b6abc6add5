use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{cluster, geo, metrics, probe, weat, Run};
use crate::error::{AppError, AppResult};
use crate::io::write_json;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub version: String,
    pub seed: u64,
    pub config_sha256: String,
    /// Input file (as written in the config) to its SHA-256.
    pub inputs_sha256: BTreeMap<String, String>,
    pub articles: usize,
    pub skipped_records: usize,
    pub generated_at: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub provenance: Provenance,
    pub metrics: metrics::MetricsOutput,
    pub cluster: cluster::ClusterOutput,
    pub weat: weat::WeatOutput,
    pub geo: Vec<geo::LevelOutput>,
    pub probe: probe::ProbeOutput,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn provenance(run: &Run) -> AppResult<Provenance> {
    let c = &run.config.config;
    let listed = c
        .corpus
        .outlets
        .values()
        .chain([&c.lexicons.parties, &c.lexicons.valence, &c.lexicons.subjectivity, &c.gazetteer.cities, &c.gazetteer.states].into_iter().flatten());
    let mut inputs_sha256 = BTreeMap::new();
    for p in listed {
        let path = run.config.resolve(p.get_ref());
        let bytes = std::fs::read(&path).map_err(|e| AppError::data(format!("cannot read {}: {e}", path.display())))?;
        inputs_sha256.insert(p.get_ref().display().to_string(), sha256_hex(&bytes));
    }
    Ok(Provenance {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: run.seed,
        config_sha256: sha256_hex(run.config.text.as_bytes()),
        inputs_sha256,
        articles: run.inputs.articles.len(),
        skipped_records: run.inputs.skip_count(),
        generated_at: chrono::Utc::now().to_rfc3339(),
    })
}

pub fn compute(run: &Run) -> AppResult<Report> {
    let c = &run.config.config;
    let metrics = metrics::compute(&run.inputs, &run.config)?;
    let cluster = cluster::compute(&metrics.series, c.cluster.options())?;
    let sentences = run.inputs.sentences_by_year();
    let weat = weat::compute(&sentences, &run.association_sets()?, &run.config, run.seed)?;
    let geo = geo::compute(&run.inputs.articles, &run.inputs.gazetteer)?;
    let probe = probe::compute(&c.probe, &sentences)?;
    Ok(Report { provenance: provenance(run)?, metrics, cluster, weat, geo, probe })
}

/// Writes every command's artifacts plus the combined `report.json`.
pub fn write(report: &Report, dir: &Path) -> AppResult<Vec<PathBuf>> {
    let mut paths = metrics::write(&report.metrics, dir)?;
    paths.extend(cluster::write(&report.cluster, dir)?);
    paths.extend(weat::write(&report.weat, dir, false)?);
    paths.extend(geo::write(&report.geo, dir)?);
    paths.extend(probe::write(&report.probe, dir)?);
    let p = dir.join("report.json");
    write_json(&p, report)?;
    paths.push(p);
    Ok(paths)
}
