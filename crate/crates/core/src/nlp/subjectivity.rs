use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::{Error, Result};

const DEFAULT_LEXICON: &str = include_str!("../../data/subjectivity.tsv");

/// One subjectivity score in `[0, 1]` per (lower-cased) token.
#[derive(Debug, Clone, Default)]
pub struct SubjectivityLexicon {
    scores: BTreeMap<String, f64>,
}

impl SubjectivityLexicon {
    /// Parses `token<TAB>score` lines; `#` starts a comment line.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut scores = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| Error::Parse { line: n + 1, message: message.into() };
            let (token, score) = line.split_once('\t').ok_or_else(|| err("expected token<TAB>score"))?;
            let score: f64 = score
                .split('\t')
                .next()
                .unwrap_or_default()
                .trim()
                .parse()
                .map_err(|_| err("bad score"))?;
            if !(0.0..=1.0).contains(&score) {
                return Err(err("subjectivity must lie in [0, 1]"));
            }
            scores.insert(token.trim().to_lowercase(), score);
        }
        Ok(SubjectivityLexicon { scores })
    }

    pub fn get(&self, token: &str) -> Option<f64> {
        self.scores.get(&token.to_lowercase()).copied()
    }

    pub fn insert(&mut self, token: &str, score: f64) {
        self.scores.insert(token.to_lowercase(), score);
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

pub fn default_subjectivity_lexicon() -> SubjectivityLexicon {
    SubjectivityLexicon::parse_tsv(DEFAULT_LEXICON).expect("shipped subjectivity lexicon is valid")
}

/// Mean subjectivity over tokens with a lexicon entry; 0 without hits.
pub fn sentence_subjectivity<S: AsRef<str>>(tokens: &[S], lexicon: &SubjectivityLexicon) -> f64 {
    let (sum, hits) = tokens
        .iter()
        .filter_map(|t| lexicon.get(t.as_ref()))
        .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if hits == 0 {
        0.0
    } else {
        sum / hits as f64
    }
}
