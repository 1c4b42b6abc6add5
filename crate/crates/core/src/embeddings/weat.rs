use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{align, AlignOptions, EmbeddingSpace};
use crate::math::{cosine, mean, population_std};
use crate::metrics::PartyPair;
use crate::tagging::LexiconSet;
use crate::{Error, Result};

pub const DEFAULT_POSITIVE: [&str; 4] = ["good", "honest", "efficient", "superior"];
pub const DEFAULT_NEGATIVE: [&str; 4] = ["bad", "dishonest", "inefficient", "inferior"];

/// Target sets `s1`, `s2` (party words) and attribute sets `a1`, `a2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociationSets {
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub a1: Vec<String>,
    pub a2: Vec<String>,
}

fn lowered(words: impl IntoIterator<Item = impl AsRef<str>>) -> Vec<String> {
    words.into_iter().map(|w| w.as_ref().to_lowercase()).collect()
}

impl AssociationSets {
    /// Lowercases every word and checks that the sets are usable.
    pub fn new(
        s1: impl IntoIterator<Item = impl AsRef<str>>,
        s2: impl IntoIterator<Item = impl AsRef<str>>,
        a1: impl IntoIterator<Item = impl AsRef<str>>,
        a2: impl IntoIterator<Item = impl AsRef<str>>,
    ) -> Result<Self> {
        let sets = AssociationSets { s1: lowered(s1), s2: lowered(s2), a1: lowered(a1), a2: lowered(a2) };
        for (name, set) in [("S1", &sets.s1), ("S2", &sets.s2), ("A1", &sets.a1), ("A2", &sets.a2)] {
            if set.is_empty() {
                return Err(Error::EmptyWordSet(name));
            }
        }
        let a1: BTreeSet<&String> = sets.a1.iter().collect();
        if let Some(w) = sets.a2.iter().find(|w| a1.contains(w)) {
            return Err(Error::InvalidArgument(alloc::format!("attribute word {w:?} is in both A1 and A2")));
        }
        Ok(sets)
    }

    /// Single-token keywords of the two parties against the default attribute words.
    pub fn from_lexicons(lexicons: &LexiconSet, pair: &PartyPair) -> Result<Self> {
        let words = |party: &str| -> Result<Vec<String>> {
            let idx = lexicons.index_of(party).ok_or_else(|| Error::InvalidArgument(alloc::format!("unknown party {party:?}")))?;
            Ok(lexicons.lexicons()[idx].phrases.iter().filter(|p| !p.contains(char::is_whitespace)).cloned().collect())
        };
        Self::new(words(&pair.b)?, words(&pair.c)?, DEFAULT_POSITIVE, DEFAULT_NEGATIVE)
    }

    pub fn swapped_targets(&self) -> Self {
        AssociationSets { s1: self.s2.clone(), s2: self.s1.clone(), ..self.clone() }
    }

    pub fn swapped_attributes(&self) -> Self {
        AssociationSets { a1: self.a2.clone(), a2: self.a1.clone(), ..self.clone() }
    }

    /// Every target word, used to keep party words out of alignment anchors.
    pub fn target_words(&self) -> Vec<String> {
        self.s1.iter().chain(&self.s2).cloned().collect()
    }
}

fn mean_cosine(c: &[f64], words: &[String], space: &EmbeddingSpace, set: &'static str) -> Result<f64> {
    let mut sims = Vec::with_capacity(words.len());
    for w in words {
        match space.vector(&w.to_lowercase()) {
            Some(v) => sims.push(cosine(c, v)),
            None => log::warn!("attribute word {w:?} missing from {} vocabulary; skipped", space.year()),
        }
    }
    mean(&sims).ok_or(Error::EmptyWordSet(set))
}

/// Mean cosine of `c` with `a1` minus mean cosine with `a2`.
pub fn differential_association(c: &str, a1: &[String], a2: &[String], space: &EmbeddingSpace) -> Result<f64> {
    let v = space.vector(&c.to_lowercase()).ok_or_else(|| Error::OutOfVocabulary(c.to_string()))?;
    Ok(mean_cosine(v, a1, space, "A1")? - mean_cosine(v, a2, space, "A2")?)
}

fn target_associations(words: &[String], sets: &AssociationSets, space: &EmbeddingSpace, set: &'static str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for w in words {
        if space.contains(&w.to_lowercase()) {
            out.push(differential_association(w, &sets.a1, &sets.a2, space)?);
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyWordSet(set));
    }
    Ok(out)
}

/// Standardized difference of mean associations of `s1` and `s2`.
///
/// The denominator is the population standard deviation of the association
/// over all in-vocabulary target words.
pub fn weat_score(sets: &AssociationSets, space: &EmbeddingSpace) -> Result<f64> {
    let g1 = target_associations(&sets.s1, sets, space, "S1")?;
    let g2 = target_associations(&sets.s2, sets, space, "S2")?;
    let all: Vec<f64> = g1.iter().chain(&g2).copied().collect();
    let sd = population_std(&all).unwrap_or(0.0);
    if !(sd > 1e-12) {
        return Err(Error::DegenerateSpread);
    }
    let numerator = mean(&g1).unwrap_or(0.0) - mean(&g2).unwrap_or(0.0);
    Ok(numerator / sd)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartySeries {
    pub party: String,
    /// Mean association per year; `None` when no keyword is in that year's vocabulary.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopularityTimeline {
    pub years: Vec<i32>,
    pub parties: Vec<PartySeries>,
}

impl PopularityTimeline {
    /// Differences `first − second` per year, when both are defined.
    pub fn gap(&self) -> Vec<Option<f64>> {
        self.parties[0].values.iter().zip(&self.parties[1].values).map(|(a, b)| Some((*a)? - (*b)?)).collect()
    }

    /// Years in which the first party's series moves to the other side of the second's.
    pub fn crossings(&self) -> Vec<i32> {
        let gap = self.gap();
        let mut out = Vec::new();
        let mut last: Option<f64> = None;
        for (year, g) in self.years.iter().zip(gap) {
            if let Some(g) = g {
                if let Some(prev) = last {
                    if (prev < 0.0) != (g < 0.0) {
                        out.push(*year);
                    }
                }
                last = Some(g);
            }
        }
        out
    }
}

fn group_mean(words: &[String], sets: &AssociationSets, space: &EmbeddingSpace) -> Result<Option<f64>> {
    let mut gs = Vec::new();
    for w in words {
        if space.contains(&w.to_lowercase()) {
            gs.push(differential_association(w, &sets.a1, &sets.a2, space)?);
        }
    }
    Ok(mean(&gs))
}

/// Per-year mean association of each party's keywords, after aligning every
/// year to the latest one. Party words never serve as anchors.
pub fn popularity_timeline(
    spaces: &[EmbeddingSpace],
    sets: &AssociationSets,
    labels: [&str; 2],
    options: &AlignOptions,
) -> Result<PopularityTimeline> {
    if spaces.len() < 2 {
        return Err(Error::TooFewSeries(spaces.len()));
    }
    let mut ordered: Vec<&EmbeddingSpace> = spaces.iter().collect();
    ordered.sort_by_key(|s| s.year());
    let target = *ordered.last().expect("non-empty");
    let mut options = options.clone();
    options.exclude.extend(sets.target_words());
    let mut first = Vec::new();
    let mut second = Vec::new();
    for space in &ordered {
        let aligned = align(space, target, &options)?.apply(space)?;
        first.push(group_mean(&sets.s1, sets, &aligned)?);
        second.push(group_mean(&sets.s2, sets, &aligned)?);
    }
    Ok(PopularityTimeline {
        years: ordered.iter().map(|s| s.year()).collect(),
        parties: alloc::vec![
            PartySeries { party: labels[0].to_string(), values: first },
            PartySeries { party: labels[1].to_string(), values: second },
        ],
    })
}
