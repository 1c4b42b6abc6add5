//! Party keyword lexicons and the per-month party documents built from them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::{sentences, tokenize, Article, MonthKey, Sentence, SentenceSplitter};
use crate::{Error, Result};

const DEFAULT_LEXICONS: &str = include_str!("../data/parties.txt");

const MAX_PHRASE_TOKENS: usize = 5;

/// A party and the keyword phrases that identify it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyLexicon {
    pub party_id: String,
    pub phrases: Vec<String>,
}

#[derive(Debug, Clone)]
struct CompiledPhrase {
    /// Lower-cased unless `case_sensitive`.
    tokens: Vec<String>,
    case_sensitive: bool,
}

/// A validated, match-ready collection of party lexicons.
#[derive(Debug, Clone)]
pub struct LexiconSet {
    lexicons: Vec<PartyLexicon>,
    compiled: Vec<Vec<CompiledPhrase>>,
}

/// A phrase occurrence in a [`MatchView`], as a half-open token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhraseMatch {
    pub party: usize,
    pub start: usize,
    pub end: usize,
}

/// Token stream prepared for phrase matching: hyphenated and apostrophe-joined
/// tokens are split into their parts, so "Congress-led" and "BJP's" expose
/// "Congress" and "BJP".
#[derive(Debug, Clone)]
pub struct MatchView<'a> {
    pub parts: Vec<&'a str>,
    lower: Vec<String>,
}

impl<'a> MatchView<'a> {
    pub fn new<S: AsRef<str>>(tokens: &'a [S]) -> Self {
        let parts: Vec<&'a str> = tokens
            .iter()
            .flat_map(|t| t.as_ref().split(['-', '\'', '\u{2019}']))
            .filter(|p| !p.is_empty())
            .collect();
        let lower = parts.iter().map(|p| p.to_lowercase()).collect();
        MatchView { parts, lower }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn lower(&self, i: usize) -> &str {
        &self.lower[i]
    }

    fn matches_at(&self, phrase: &CompiledPhrase, at: usize) -> bool {
        if at + phrase.tokens.len() > self.parts.len() {
            return false;
        }
        phrase.tokens.iter().enumerate().all(|(k, tok)| {
            if phrase.case_sensitive {
                self.parts[at + k] == tok
            } else {
                self.lower[at + k] == *tok
            }
        })
    }
}

fn is_acronym(phrase: &str) -> bool {
    phrase.chars().any(char::is_alphabetic)
        && phrase.chars().filter(|c| c.is_alphabetic()).all(char::is_uppercase)
}

fn compile(phrase: &str) -> CompiledPhrase {
    let toks = tokenize(phrase);
    let view = MatchView::new(&toks);
    let case_sensitive = is_acronym(phrase);
    let tokens = if case_sensitive {
        view.parts.iter().map(|s| s.to_string()).collect()
    } else {
        view.lower.clone()
    };
    CompiledPhrase { tokens, case_sensitive }
}

impl LexiconSet {
    pub fn new(lexicons: Vec<PartyLexicon>) -> Result<Self> {
        let mut seen_parties = BTreeSet::new();
        let mut seen_phrases: BTreeMap<(bool, Vec<String>), String> = BTreeMap::new();
        let mut compiled = Vec::with_capacity(lexicons.len());
        for lex in &lexicons {
            if lex.party_id.trim().is_empty() {
                return Err(Error::InvalidLexicon("empty party id".into()));
            }
            if !seen_parties.insert(lex.party_id.clone()) {
                return Err(Error::InvalidLexicon(format!("party {:?} defined twice", lex.party_id)));
            }
            if lex.phrases.is_empty() {
                return Err(Error::InvalidLexicon(format!("party {:?} has no phrases", lex.party_id)));
            }
            let mut phrases = Vec::with_capacity(lex.phrases.len());
            for phrase in &lex.phrases {
                let c = compile(phrase);
                if c.tokens.is_empty() || c.tokens.len() > MAX_PHRASE_TOKENS {
                    return Err(Error::InvalidLexicon(format!(
                        "phrase {phrase:?} must have 1..={MAX_PHRASE_TOKENS} tokens"
                    )));
                }
                let key = (c.case_sensitive, c.tokens.clone());
                if let Some(owner) = seen_phrases.get(&key) {
                    if owner != &lex.party_id {
                        return Err(Error::InvalidLexicon(format!(
                            "phrase {phrase:?} appears in both {owner:?} and {:?}",
                            lex.party_id
                        )));
                    }
                }
                seen_phrases.insert(key, lex.party_id.clone());
                phrases.push(c);
            }
            compiled.push(phrases);
        }
        Ok(LexiconSet { lexicons, compiled })
    }

    /// Parses the line format `party_id: phrase`, one phrase per line.
    /// Blank lines and `#` comments are ignored; party order is first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lexicons: Vec<PartyLexicon> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (party, phrase) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: n + 1,
                message: "expected `party_id: phrase`".into(),
            })?;
            let (party, phrase) = (party.trim(), phrase.trim());
            if party.is_empty() || phrase.is_empty() {
                return Err(Error::Parse { line: n + 1, message: "empty party id or phrase".into() });
            }
            match lexicons.iter_mut().find(|l| l.party_id == party) {
                Some(l) => l.phrases.push(phrase.to_string()),
                None => lexicons.push(PartyLexicon {
                    party_id: party.to_string(),
                    phrases: alloc::vec![phrase.to_string()],
                }),
            }
        }
        Self::new(lexicons)
    }

    pub fn lexicons(&self) -> &[PartyLexicon] {
        &self.lexicons
    }

    pub fn party_ids(&self) -> impl Iterator<Item = &str> {
        self.lexicons.iter().map(|l| l.party_id.as_str())
    }

    pub fn index_of(&self, party_id: &str) -> Option<usize> {
        self.lexicons.iter().position(|l| l.party_id == party_id)
    }

    pub fn party_id(&self, index: usize) -> &str {
        &self.lexicons[index].party_id
    }

    /// All phrase occurrences, ordered by start position then party.
    pub fn find_matches(&self, view: &MatchView<'_>) -> Vec<PhraseMatch> {
        let mut out = Vec::new();
        for at in 0..view.len() {
            for (party, phrases) in self.compiled.iter().enumerate() {
                for p in phrases {
                    if view.matches_at(p, at) {
                        out.push(PhraseMatch { party, start: at, end: at + p.tokens.len() });
                    }
                }
            }
        }
        out
    }

    /// Indices of the parties whose lexicon occurs in `tokens`.
    pub fn matching_parties<S: AsRef<str>>(&self, tokens: &[S]) -> BTreeSet<usize> {
        let view = MatchView::new(tokens);
        (0..view.len())
            .flat_map(|at| {
                let view = &view;
                self.compiled.iter().enumerate().filter_map(move |(party, phrases)| {
                    phrases.iter().any(|p| view.matches_at(p, at)).then_some(party)
                })
            })
            .collect()
    }
}

impl Default for LexiconSet {
    /// The two shipped lexicons, `bjp` and `congress`.
    fn default() -> Self {
        Self::parse(DEFAULT_LEXICONS).expect("shipped lexicon file is valid")
    }
}

/// Party ids whose keyword phrases occur in `text` as whole tokens.
pub fn match_parties<'l>(text: &str, lexicons: &'l LexiconSet) -> BTreeSet<&'l str> {
    let tokens = tokenize(text);
    lexicons
        .matching_parties(&tokens)
        .into_iter()
        .map(|i| lexicons.party_id(i))
        .collect()
}

/// Which part of an article forms the document units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocumentMode {
    /// The whole headline is one unit.
    Headline,
    /// Each content sentence is one unit.
    ContentSentence,
}

impl DocumentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DocumentMode::Headline => "headline",
            DocumentMode::ContentSentence => "content-sentence",
        }
    }
}

/// All units of one month that mention one party.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonthlyDocument {
    pub month: MonthKey,
    pub party_id: String,
    pub mode: DocumentMode,
    pub units: Vec<Sentence>,
    pub total_words: usize,
}

impl MonthlyDocument {
    pub fn new(month: MonthKey, party_id: &str, mode: DocumentMode) -> Self {
        MonthlyDocument { month, party_id: party_id.to_string(), mode, units: Vec::new(), total_words: 0 }
    }

    pub fn push(&mut self, unit: Sentence) {
        self.total_words += unit.word_count;
        self.units.push(unit);
    }

    fn sort_units(&mut self) {
        self.units.sort_by(|a, b| (&a.article_id, a.index).cmp(&(&b.article_id, b.index)));
    }
}

/// Units of `article` under `mode`.
pub fn article_units(article: &Article, mode: DocumentMode, splitter: &SentenceSplitter) -> Vec<Sentence> {
    match mode {
        DocumentMode::Headline => alloc::vec![Sentence::new(&article.id, 0, &article.headline)],
        DocumentMode::ContentSentence => sentences(&article.id, &article.content, splitter),
    }
}

/// Assigns every unit of every article to the documents of the parties it
/// mentions. A unit mentioning several parties lands in each of their
/// documents. Units are ordered by `(article_id, index)` so the result does not
/// depend on input order.
pub fn build_monthly_documents<'a, I>(
    articles: I,
    lexicons: &LexiconSet,
    mode: DocumentMode,
) -> BTreeMap<(MonthKey, String), MonthlyDocument>
where
    I: IntoIterator<Item = &'a Article>,
{
    let splitter = SentenceSplitter::default();
    let mut docs: BTreeMap<(MonthKey, String), MonthlyDocument> = BTreeMap::new();
    for article in articles {
        let month = article.month();
        for unit in article_units(article, mode, &splitter) {
            let parties = lexicons.matching_parties(&unit.tokens);
            for p in parties {
                let pid = lexicons.party_id(p);
                docs.entry((month, pid.to_string()))
                    .or_insert_with(|| MonthlyDocument::new(month, pid, mode))
                    .push(unit.clone());
            }
        }
    }
    for doc in docs.values_mut() {
        doc.sort_units();
    }
    docs
}
