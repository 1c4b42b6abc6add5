//! Run configuration (TOML).
//!
//! Relative paths resolve against the directory holding the config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use inkspace_core::corpus::parse_date;
use inkspace_core::embeddings::{AlignMode, SgnsParams};
use inkspace_core::metrics::{MetricId, PartyPair};
use inkspace_core::probe::{check_prompt, VOTE_PROMPT};
use inkspace_core::timeseries::{ClusterOptions, Linkage};
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{AppError, AppResult};

/// Environment variable overriding `output_dir`.
pub const OUT_DIR_ENV: &str = "INKSPACE_OUT_DIR";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: Spanned<PathBuf>,
    pub corpus: CorpusConfig,
    #[serde(default)]
    pub lexicons: LexiconPaths,
    #[serde(default)]
    pub gazetteer: GazetteerPaths,
    #[serde(default)]
    pub metrics: MetricsConfig,
    #[serde(default)]
    pub cluster: ClusterConfig,
    #[serde(default)]
    pub embeddings: EmbeddingConfig,
    #[serde(default)]
    pub probe: ProbeConfig,
}

fn default_seed() -> u64 {
    1
}

fn default_output() -> Spanned<PathBuf> {
    Spanned::new(0..0, PathBuf::from("out"))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusConfig {
    /// Outlet name to JSONL path. Records whose `outlet` differs from the key are skipped.
    pub outlets: BTreeMap<String, Spanned<PathBuf>>,
    pub start: Option<Spanned<String>>,
    pub end: Option<Spanned<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconPaths {
    pub parties: Option<Spanned<PathBuf>>,
    pub valence: Option<Spanned<PathBuf>>,
    pub subjectivity: Option<Spanned<PathBuf>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GazetteerPaths {
    pub cities: Option<Spanned<PathBuf>>,
    pub states: Option<Spanned<PathBuf>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetricsConfig {
    pub select: Vec<MetricId>,
    pub party_b: String,
    pub party_c: String,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        let pair = PartyPair::default();
        MetricsConfig { select: MetricId::ALL.to_vec(), party_b: pair.b, party_c: pair.c }
    }
}

impl MetricsConfig {
    pub fn pair(&self) -> PartyPair {
        PartyPair { b: self.party_b.clone(), c: self.party_c.clone() }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClusterConfig {
    pub linkage: Linkage,
    pub z_normalize: bool,
}

impl ClusterConfig {
    pub fn options(&self) -> ClusterOptions {
        ClusterOptions { linkage: self.linkage, z_normalize: self.z_normalize }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EmbeddingConfig {
    pub dim: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub min_count: u64,
    pub sample: f64,
    pub alpha: f32,
    pub anchors: usize,
    pub align: AlignMode,
    /// Train the yearly models on parallel threads; each model stays single-threaded.
    pub parallel_years: bool,
    /// Also write every yearly space in binary and text form.
    pub save_vectors: bool,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        let p = SgnsParams::default();
        EmbeddingConfig {
            dim: p.dim,
            window: p.window,
            negatives: p.negatives,
            epochs: p.epochs,
            min_count: p.min_count,
            sample: p.sample,
            alpha: p.alpha,
            anchors: 1000,
            align: AlignMode::Procrustes,
            parallel_years: true,
            save_vectors: false,
        }
    }
}

impl EmbeddingConfig {
    pub fn params(&self, seed: u64) -> SgnsParams {
        SgnsParams {
            dim: self.dim,
            window: self.window,
            negatives: self.negatives,
            epochs: self.epochs,
            min_count: self.min_count,
            sample: self.sample,
            alpha: self.alpha,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BackendConfig {
    Ngram { order: usize, smoothing: f64 },
    /// `{year}` in any argument is replaced by the probed year.
    Command { program: String, args: Vec<String> },
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig::Ngram { order: 3, smoothing: 0.01 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeConfig {
    pub backend: BackendConfig,
    pub prompt: String,
    /// Single-token labels the model may emit for each party.
    pub token_b: String,
    pub token_c: String,
    pub top_k: usize,
    pub max_listed: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            backend: BackendConfig::default(),
            prompt: VOTE_PROMPT.to_string(),
            token_b: "BJP".to_string(),
            token_c: "Congress".to_string(),
            top_k: 50,
            max_listed: 15,
        }
    }
}

/// A parsed config plus where it came from.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub path: PathBuf,
    pub base_dir: PathBuf,
    pub text: String,
    pub config: RunConfig,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

impl LoadedConfig {
    pub fn from_file(path: &Path) -> AppResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::config(path, 0, format!("cannot read: {e}")))?;
        Self::from_str(path, text)
    }

    pub fn from_str(path: &Path, text: String) -> AppResult<Self> {
        let config: RunConfig = toml::from_str(&text).map_err(|e| {
            let line = e.span().map_or(0, |s| line_of(&text, s.start));
            AppError::config(path, line, e.message().to_string())
        })?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(LoadedConfig { path: path.to_path_buf(), base_dir, text, config })
    }

    fn error_at<T>(&self, spanned: &Spanned<T>, message: impl Into<String>) -> AppError {
        AppError::config(&self.path, line_of(&self.text, spanned.span().start), message)
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    fn optional_paths(&self) -> Vec<&Spanned<PathBuf>> {
        let c = &self.config;
        [&c.lexicons.parties, &c.lexicons.valence, &c.lexicons.subjectivity, &c.gazetteer.cities, &c.gazetteer.states]
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn date_range(&self) -> AppResult<(Option<NaiveDate>, Option<NaiveDate>)> {
        let parse = |s: &Option<Spanned<String>>| -> AppResult<Option<NaiveDate>> {
            s.as_ref()
                .map(|s| parse_date(s.get_ref()).map_err(|e| self.error_at(s, e.to_string())))
                .transpose()
        };
        Ok((parse(&self.config.corpus.start)?, parse(&self.config.corpus.end)?))
    }

    /// Schema-level checks that the deserializer cannot express, plus path existence.
    pub fn validate(&self) -> AppResult<()> {
        let c = &self.config;
        if c.corpus.outlets.is_empty() {
            return Err(AppError::config(&self.path, 0, "corpus.outlets lists no outlet"));
        }
        for p in c.corpus.outlets.values().chain(self.optional_paths()) {
            let resolved = self.resolve(p.get_ref());
            if !resolved.is_file() {
                return Err(self.error_at(p, format!("file not found: {}", resolved.display())));
            }
        }
        if let (Some(s), Some(e)) = self.date_range()? {
            if s > e {
                let at = c.corpus.end.as_ref().expect("end parsed");
                return Err(self.error_at(at, format!("end {e} precedes start {s}")));
            }
        }
        let at_line = |key: &str| {
            self.text.lines().position(|l| l.trim_start().starts_with(key)).map_or(0, |i| i + 1)
        };
        let bad = |key: &str, msg: &str| Err(AppError::config(&self.path, at_line(key), msg.to_string()));
        if c.metrics.select.is_empty() {
            return bad("select", "metrics.select is empty");
        }
        if c.metrics.party_b == c.metrics.party_c {
            return bad("party_b", "party_b and party_c must differ");
        }
        let e = &c.embeddings;
        if e.dim == 0 || e.window == 0 || e.epochs == 0 {
            return bad("dim", "embeddings.dim, window and epochs must be positive");
        }
        if !(e.alpha > 0.0) || e.sample < 0.0 {
            return bad("alpha", "embeddings.alpha must be positive and sample non-negative");
        }
        if e.align == AlignMode::Procrustes && e.anchors < e.dim {
            return bad("anchors", "embeddings.anchors must be at least embeddings.dim");
        }
        if check_prompt(&c.probe.prompt).is_err() {
            return bad("prompt", "probe.prompt must contain exactly one <mask>");
        }
        for (key, token) in [("token_b", &c.probe.token_b), ("token_c", &c.probe.token_c)] {
            if token.is_empty() || token.contains(char::is_whitespace) {
                return bad(key, "probe party tokens must be single tokens");
            }
        }
        if c.probe.top_k == 0 {
            return bad("top_k", "probe.top_k must be positive");
        }
        if let BackendConfig::Ngram { order, smoothing } = c.probe.backend {
            if order == 0 || !(smoothing > 0.0) {
                return bad("backend", "n-gram order and smoothing must be positive");
            }
        }
        Ok(())
    }

    /// Output directory: explicit override, then the environment, then the config.
    pub fn output_dir(&self, override_dir: Option<&Path>) -> PathBuf {
        if let Some(p) = override_dir {
            return p.to_path_buf();
        }
        if let Some(p) = std::env::var_os(OUT_DIR_ENV).filter(|p| !p.is_empty()) {
            return PathBuf::from(p);
        }
        self.resolve(self.config.output_dir.get_ref())
    }
}
