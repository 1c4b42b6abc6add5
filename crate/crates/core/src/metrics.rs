//! The directed imbalance score and the seven monthly imbalance metrics.
//!
//! For a metric, a month and two parties B and C, the imbalance is
//! `(score(B) - score(C)) / (score(B) + score(C))`: positive values lean
//! toward B, negative toward C. Months where both scores are zero carry no
//! value at all instead of a spurious 0.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Article, MonthKey, Sentence};
use crate::nlp::{degree_percentage, detect_reported_speech, sentence_sentiment, sentence_subjectivity, Analyzers};
use crate::tagging::{build_monthly_documents, DocumentMode, LexiconSet, MonthlyDocument};
use crate::{Error, Result};

/// The seven imbalance metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricId {
    CovHead,
    CovContent,
    Pov,
    PosSent,
    NegSent,
    Subj,
    Supcomp,
}

impl MetricId {
    pub const ALL: [MetricId; 7] = [
        MetricId::CovHead,
        MetricId::CovContent,
        MetricId::Pov,
        MetricId::PosSent,
        MetricId::NegSent,
        MetricId::Subj,
        MetricId::Supcomp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricId::CovHead => "cov_head",
            MetricId::CovContent => "cov_content",
            MetricId::Pov => "pov",
            MetricId::PosSent => "pos_sent",
            MetricId::NegSent => "neg_sent",
            MetricId::Subj => "subj",
            MetricId::Supcomp => "supcomp",
        }
    }

    /// Row label used in aggregate tables.
    pub fn table_label(self) -> &'static str {
        match self {
            MetricId::CovHead => "CovHead",
            MetricId::CovContent => "CovCon",
            MetricId::Pov => "PoV",
            MetricId::PosSent => "PosSent",
            MetricId::NegSent => "NegSent",
            MetricId::Subj => "Subj",
            MetricId::Supcomp => "SupComp",
        }
    }

    pub fn mode(self) -> DocumentMode {
        match self {
            MetricId::CovHead => DocumentMode::Headline,
            _ => DocumentMode::ContentSentence,
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown metric {s:?}")))
    }
}

/// The two parties compared by the imbalance score; B is the positive side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyPair {
    pub b: String,
    pub c: String,
}

impl Default for PartyPair {
    fn default() -> Self {
        PartyPair { b: "bjp".into(), c: "congress".into() }
    }
}

/// Directed imbalance of two non-negative document scores.
///
/// Returns `Ok(None)` when both scores are zero.
pub fn imbalance(score_b: f64, score_c: f64) -> Result<Option<f64>> {
    for s in [score_b, score_c] {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::InvalidScore(s));
        }
    }
    let total = score_b + score_c;
    if total == 0.0 {
        return Ok(None);
    }
    Ok(Some((score_b - score_c) / total))
}

/// Word-weighted mean of per-unit values; `None` when no words.
fn weighted_mean<'a>(units: impl Iterator<Item = (&'a Sentence, f64)>) -> Option<f64> {
    let (num, den) = units.fold((0.0, 0.0), |(n, d), (u, v)| {
        let w = u.word_count as f64;
        (n + w * v, d + w)
    });
    (den > 0.0).then(|| num / den)
}

/// Scores a set of units belonging to `party_id` under `metric`.
///
/// Units must come from a document built in `metric.mode()`. Coverage and
/// point-of-view scores of an empty document are 0; the weighted means are
/// `None`.
pub fn score_units(
    units: &[Sentence],
    party_id: &str,
    metric: MetricId,
    lexicons: &LexiconSet,
    analyzers: &Analyzers,
) -> Option<f64> {
    match metric {
        MetricId::CovHead => Some(units.len() as f64),
        MetricId::CovContent => Some(units.iter().map(|u| u.word_count as f64).sum()),
        MetricId::Pov => Some(
            units
                .iter()
                .filter(|u| detect_reported_speech(&u.tokens, lexicons).contains(party_id))
                .map(|u| u.word_count as f64)
                .sum(),
        ),
        MetricId::PosSent => {
            weighted_mean(units.iter().map(|u| (u, sentence_sentiment(&u.tokens, &analyzers.valence).positive)))
        }
        MetricId::NegSent => {
            weighted_mean(units.iter().map(|u| (u, sentence_sentiment(&u.tokens, &analyzers.valence).negative)))
        }
        MetricId::Subj => {
            weighted_mean(units.iter().map(|u| (u, sentence_subjectivity(&u.tokens, &analyzers.subjectivity))))
        }
        MetricId::Supcomp => weighted_mean(units.iter().map(|u| (u, degree_percentage(&u.tokens).unwrap_or(0.0)))),
    }
}

/// Score of one monthly document under `metric`.
pub fn score_document(
    doc: &MonthlyDocument,
    metric: MetricId,
    lexicons: &LexiconSet,
    analyzers: &Analyzers,
) -> Result<Option<f64>> {
    if doc.mode != metric.mode() {
        return Err(Error::ModeMismatch { metric: metric.as_str(), expected: metric.mode().as_str() });
    }
    Ok(score_units(&doc.units, &doc.party_id, metric, lexicons, analyzers))
}

/// One month of an imbalance series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImbalancePoint {
    pub month: MonthKey,
    pub value: Option<f64>,
    pub score_b: Option<f64>,
    pub score_c: Option<f64>,
}

/// Monthly directed scores of one metric for one outlet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImbalanceSeries {
    pub metric: MetricId,
    pub outlet: String,
    pub points: Vec<ImbalancePoint>,
}

impl ImbalanceSeries {
    /// Observed values, in month order, with missing months dropped.
    pub fn observed(&self) -> Vec<f64> {
        self.points.iter().filter_map(|p| p.value).collect()
    }
}

fn point(month: MonthKey, score_b: Option<f64>, score_c: Option<f64>) -> Result<ImbalancePoint> {
    let value = match (score_b, score_c) {
        (Some(b), Some(c)) => imbalance(b, c)?,
        _ => None,
    };
    Ok(ImbalancePoint { month, value, score_b, score_c })
}

fn check_pair(lexicons: &LexiconSet, pair: &PartyPair) -> Result<()> {
    for p in [&pair.b, &pair.c] {
        if lexicons.index_of(p).is_none() {
            return Err(Error::InvalidArgument(format!("party {p:?} has no lexicon")));
        }
    }
    if pair.b == pair.c {
        return Err(Error::InvalidArgument("the two compared parties must differ".into()));
    }
    Ok(())
}

/// First and last month of the corpus.
pub fn corpus_span(articles: &[Article]) -> Result<(MonthKey, MonthKey)> {
    let first = articles.iter().map(Article::month).min().ok_or(Error::EmptyCorpus)?;
    let last = articles.iter().map(Article::month).max().ok_or(Error::EmptyCorpus)?;
    Ok((first, last))
}

fn by_outlet(articles: &[Article]) -> BTreeMap<&str, Vec<&Article>> {
    let mut out: BTreeMap<&str, Vec<&Article>> = BTreeMap::new();
    for a in articles {
        out.entry(a.outlet.as_str()).or_default().push(a);
    }
    out
}

/// Monthly series of every requested metric for every outlet.
///
/// Every series spans the whole corpus, one point per month; months without
/// matching units for either party are missing.
pub fn compute_all_series(
    articles: &[Article],
    lexicons: &LexiconSet,
    pair: &PartyPair,
    metrics: &[MetricId],
    analyzers: &Analyzers,
) -> Result<Vec<ImbalanceSeries>> {
    check_pair(lexicons, pair)?;
    let (first, last) = corpus_span(articles)?;
    let months = MonthKey::range_inclusive(first, last);
    let modes: BTreeSet<DocumentMode> = metrics.iter().map(|m| m.mode()).collect();
    let mut out = Vec::new();
    for (outlet, arts) in by_outlet(articles) {
        let docs: BTreeMap<DocumentMode, _> = modes
            .iter()
            .map(|&mode| (mode, build_monthly_documents(arts.iter().copied(), lexicons, mode)))
            .collect();
        for &metric in metrics {
            let docs = &docs[&metric.mode()];
            let score = |month: MonthKey, party: &str| {
                let units = docs.get(&(month, party.to_string())).map_or(&[][..], |d| &d.units[..]);
                score_units(units, party, metric, lexicons, analyzers)
            };
            let points = months
                .iter()
                .map(|&m| point(m, score(m, &pair.b), score(m, &pair.c)))
                .collect::<Result<Vec<_>>>()?;
            out.push(ImbalanceSeries { metric, outlet: outlet.to_string(), points });
        }
    }
    Ok(out)
}

/// Monthly series of one metric, one per outlet.
pub fn compute_series(
    articles: &[Article],
    lexicons: &LexiconSet,
    pair: &PartyPair,
    metric: MetricId,
    analyzers: &Analyzers,
) -> Result<Vec<ImbalanceSeries>> {
    compute_all_series(articles, lexicons, pair, &[metric], analyzers)
}

/// Imbalance of the documents pooled over the whole timeline, per outlet.
pub fn aggregate_pooled(
    articles: &[Article],
    lexicons: &LexiconSet,
    pair: &PartyPair,
    metric: MetricId,
    analyzers: &Analyzers,
) -> Result<BTreeMap<String, Option<f64>>> {
    check_pair(lexicons, pair)?;
    let mut out = BTreeMap::new();
    for (outlet, arts) in by_outlet(articles) {
        let docs = build_monthly_documents(arts.iter().copied(), lexicons, metric.mode());
        let pooled = |party: &str| {
            let mut units: Vec<Sentence> =
                docs.iter().filter(|((_, p), _)| p == party).flat_map(|(_, d)| d.units.iter().cloned()).collect();
            units.sort_by(|a, b| (&a.article_id, a.index).cmp(&(&b.article_id, b.index)));
            score_units(&units, party, metric, lexicons, analyzers)
        };
        out.insert(outlet.to_string(), point(MonthKey { year: 0, month: 1 }, pooled(&pair.b), pooled(&pair.c))?.value);
    }
    Ok(out)
}

/// Mean absolute imbalance over the observed months of a series.
pub fn aggregate_mean_abs(series: &ImbalanceSeries) -> Option<f64> {
    let values = series.observed();
    if values.is_empty() {
        return None;
    }
    Some(values.iter().map(|v| v.abs()).sum::<f64>() / values.len() as f64)
}

/// Table rendering: an arrow for the direction (up toward B) and `|value| * 100`
/// with two decimals.
pub fn format_directed(value: Option<f64>) -> String {
    match value {
        None => "n/a".to_string(),
        Some(v) if v > 0.0 => format!("\u{2191}{:.2}", v * 100.0),
        Some(v) if v < 0.0 => format!("\u{2193}{:.2}", -v * 100.0),
        Some(_) => "0.00".to_string(),
    }
}
