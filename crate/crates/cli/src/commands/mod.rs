//! The subcommands: each computes its result from loaded inputs and writes
//! it under the output directory.

pub mod cluster;
pub mod geo;
pub mod metrics;
pub mod probe;
pub mod report;
pub mod weat;

use std::path::{Path, PathBuf};

use inkspace_core::embeddings::AssociationSets;

use crate::config::LoadedConfig;
use crate::error::AppResult;
use crate::pipeline::{write_skips, Inputs};

/// Everything a command needs: config, inputs and where to write.
#[derive(Debug)]
pub struct Run {
    pub config: LoadedConfig,
    pub inputs: Inputs,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl Run {
    pub fn load(config_path: &Path, out: Option<&Path>, seed: Option<u64>) -> AppResult<Self> {
        let config = LoadedConfig::from_file(config_path)?;
        Self::from_config(config, out, seed)
    }

    pub fn from_config(config: LoadedConfig, out: Option<&Path>, seed: Option<u64>) -> AppResult<Self> {
        let inputs = Inputs::load(&config)?;
        let out_dir = config.output_dir(out);
        let seed = seed.unwrap_or(config.config.seed);
        log::info!("{} articles loaded, {} records skipped", inputs.articles.len(), inputs.skip_count());
        write_skips(&inputs, &out_dir)?;
        Ok(Run { config, inputs, out_dir, seed })
    }

    pub fn association_sets(&self) -> AppResult<AssociationSets> {
        Ok(AssociationSets::from_lexicons(&self.inputs.lexicons, &self.config.config.metrics.pair())?)
    }

    pub fn metrics(&self) -> AppResult<Vec<PathBuf>> {
        metrics::write(&metrics::compute(&self.inputs, &self.config)?, &self.out_dir)
    }

    pub fn cluster(&self) -> AppResult<Vec<PathBuf>> {
        let m = metrics::compute(&self.inputs, &self.config)?;
        cluster::write(&cluster::compute(&m.series, self.config.config.cluster.options())?, &self.out_dir)
    }

    pub fn weat(&self) -> AppResult<Vec<PathBuf>> {
        let out = weat::compute(&self.inputs.sentences_by_year(), &self.association_sets()?, &self.config, self.seed)?;
        weat::write(&out, &self.out_dir, self.config.config.embeddings.save_vectors)
    }

    pub fn geo(&self) -> AppResult<Vec<PathBuf>> {
        geo::write(&geo::compute(&self.inputs.articles, &self.inputs.gazetteer)?, &self.out_dir)
    }

    pub fn probe(&self) -> AppResult<Vec<PathBuf>> {
        probe::write(&probe::compute(&self.config.config.probe, &self.inputs.sentences_by_year())?, &self.out_dir)
    }

    pub fn report(&self) -> AppResult<Vec<PathBuf>> {
        let r = report::compute(self)?;
        report::write(&r, &self.out_dir)
    }
}
