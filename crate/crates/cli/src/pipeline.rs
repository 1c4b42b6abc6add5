//! Input loading shared by every command.

use std::collections::BTreeMap;
use std::path::Path;

use inkspace_core::corpus::{sentences, Article, SentenceSplitter};
use inkspace_core::geo::Gazetteer;
use inkspace_core::nlp::Analyzers;
use inkspace_core::tagging::LexiconSet;

use crate::config::LoadedConfig;
use crate::error::{AppError, AppResult};
use crate::io::{self, Skip};

#[derive(Debug)]
pub struct Inputs {
    pub articles: Vec<Article>,
    /// Skipped records per input file, keyed by outlet.
    pub skips: BTreeMap<String, Vec<Skip>>,
    pub lexicons: LexiconSet,
    pub analyzers: Analyzers,
    pub gazetteer: Gazetteer,
}

impl Inputs {
    pub fn load(cfg: &LoadedConfig) -> AppResult<Self> {
        cfg.validate()?;
        let c = &cfg.config;
        let (start, end) = cfg.date_range()?;
        let mut articles = Vec::new();
        let mut skips = BTreeMap::new();
        for (outlet, path) in &c.corpus.outlets {
            let report = io::load_jsonl(&cfg.resolve(path.get_ref()))?;
            let mut outlet_skips = report.skips;
            for (a, line) in report.articles.into_iter().zip(report.lines) {
                if a.outlet != *outlet {
                    outlet_skips.push(Skip { line, reason: format!("outlet {:?} does not match {outlet:?}", a.outlet) });
                } else if start.is_some_and(|s| a.published < s) || end.is_some_and(|e| a.published > e) {
                    continue;
                } else {
                    articles.push(a);
                }
            }
            outlet_skips.sort_by_key(|s| s.line);
            skips.insert(outlet.clone(), outlet_skips);
        }
        if articles.is_empty() {
            return Err(AppError::data("no articles left after loading and date filtering"));
        }

        let lexicons = match &c.lexicons.parties {
            Some(p) => io::load_lexicons(&cfg.resolve(p.get_ref()))?,
            None => LexiconSet::default(),
        };
        for party in [&c.metrics.party_b, &c.metrics.party_c] {
            if lexicons.index_of(party).is_none() {
                return Err(AppError::config(&cfg.path, 0, format!("party {party:?} is not in the party lexicon")));
            }
        }
        let mut analyzers = Analyzers::default();
        if let Some(p) = &c.lexicons.valence {
            analyzers.valence = io::load_valence(&cfg.resolve(p.get_ref()))?;
        }
        if let Some(p) = &c.lexicons.subjectivity {
            analyzers.subjectivity = io::load_subjectivity(&cfg.resolve(p.get_ref()))?;
        }
        let mut gazetteer = Gazetteer::default();
        if let Some(p) = &c.gazetteer.cities {
            gazetteer.cities = io::load_places(&cfg.resolve(p.get_ref()))?;
        }
        if let Some(p) = &c.gazetteer.states {
            gazetteer.states = io::load_places(&cfg.resolve(p.get_ref()))?;
        }
        Ok(Inputs { articles, skips, lexicons, analyzers, gazetteer })
    }

    pub fn skip_count(&self) -> usize {
        self.skips.values().map(Vec::len).sum()
    }

    /// Headline and content sentences of every article, tokenized, by year.
    pub fn sentences_by_year(&self) -> BTreeMap<i32, Vec<Vec<String>>> {
        let splitter = SentenceSplitter::default();
        let mut out: BTreeMap<i32, Vec<Vec<String>>> = BTreeMap::new();
        for a in &self.articles {
            let year = out.entry(a.year()).or_default();
            for s in sentences(&a.id, &a.headline, &splitter).into_iter().chain(sentences(&a.id, &a.content, &splitter)) {
                if !s.tokens.is_empty() {
                    year.push(s.tokens);
                }
            }
        }
        out
    }
}

/// Writes the skip reports, one JSONL file per outlet.
pub fn write_skips(inputs: &Inputs, dir: &Path) -> AppResult<()> {
    for (outlet, skips) in &inputs.skips {
        io::write_jsonl(&dir.join("skips").join(format!("{}.jsonl", file_stem(outlet))), skips)?;
    }
    Ok(())
}

/// A filesystem-safe rendering of a label.
pub fn file_stem(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}
