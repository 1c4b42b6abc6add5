//! Cloze probes over a masked language model: vote preference, normalized
//! party popularity, and the tokens whose probability rose or fell between
//! two models.

mod ngram;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use ngram::NgramBackend;

pub const MASK: &str = "<mask>";
pub const VOTE_PROMPT: &str = "This election people will vote for <mask>.";

/// A model that fills the single mask slot of a prompt.
pub trait MaskBackend {
    fn id(&self) -> &str;

    /// Candidate tokens with probabilities. Tokens must be distinct,
    /// probabilities non-negative and summing to at most one.
    fn fill(&self, prompt: &str) -> Result<Vec<(String, f64)>>;
}

impl<B: MaskBackend + ?Sized> MaskBackend for &B {
    fn id(&self) -> &str {
        (**self).id()
    }

    fn fill(&self, prompt: &str) -> Result<Vec<(String, f64)>> {
        (**self).fill(prompt)
    }
}

/// Fails with [`Error::MaskCount`] unless `prompt` has exactly one mask.
pub fn check_prompt(prompt: &str) -> Result<()> {
    match prompt.matches(MASK).count() {
        1 => Ok(()),
        n => Err(Error::MaskCount(n)),
    }
}

/// Returns the same distribution for every prompt.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedBackend {
    pub id: String,
    pub tokens: Vec<(String, f64)>,
}

impl FixedBackend {
    pub fn new<S: Into<String>>(id: &str, tokens: impl IntoIterator<Item = (S, f64)>) -> Self {
        FixedBackend { id: id.to_string(), tokens: tokens.into_iter().map(|(t, p)| (t.into(), p)).collect() }
    }
}

impl MaskBackend for FixedBackend {
    fn id(&self) -> &str {
        &self.id
    }

    fn fill(&self, prompt: &str) -> Result<Vec<(String, f64)>> {
        check_prompt(prompt)?;
        Ok(self.tokens.clone())
    }
}

/// Ranked fill-in tokens for one prompt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub prompt: String,
    pub backend: String,
    pub year: Option<i32>,
    /// Descending by probability, ties by token text.
    pub tokens: Vec<(String, f64)>,
}

impl ProbeResult {
    /// Validates and ranks a backend answer.
    pub fn new(prompt: &str, backend: &str, year: Option<i32>, mut tokens: Vec<(String, f64)>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut total = 0.0;
        for (t, p) in &tokens {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::Backend(alloc::format!("invalid probability {p} for {t:?}")));
            }
            if seen.insert(t.as_str(), ()).is_some() {
                return Err(Error::Backend(alloc::format!("token {t:?} returned twice")));
            }
            total += p;
        }
        if total > 1.0 + 1e-9 {
            return Err(Error::Backend(alloc::format!("probabilities sum to {total}")));
        }
        tokens.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        Ok(ProbeResult { prompt: prompt.to_string(), backend: backend.to_string(), year, tokens })
    }

    pub fn probability(&self, token: &str) -> f64 {
        self.tokens.iter().find(|t| t.0 == token).map_or(0.0, |t| t.1)
    }

    pub fn top(&self, k: usize) -> &[(String, f64)] {
        &self.tokens[..k.min(self.tokens.len())]
    }
}

pub fn probe<B: MaskBackend + ?Sized>(backend: &B, prompt: &str, year: Option<i32>) -> Result<ProbeResult> {
    check_prompt(prompt)?;
    ProbeResult::new(prompt, backend.id(), year, backend.fill(prompt)?)
}

/// Probability of `party_token` filling the vote prompt; zero when not returned.
pub fn vote_preference<B: MaskBackend + ?Sized>(backend: &B, party_token: &str) -> Result<f64> {
    Ok(probe(backend, VOTE_PROMPT, None)?.probability(party_token))
}

/// Normalized popularity of two parties; the two shares sum to exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Popularity {
    pub b: f64,
    pub c: f64,
}

pub fn popularity_from_votes(v_b: f64, v_c: f64) -> Result<Popularity> {
    if !(v_b >= 0.0 && v_c >= 0.0 && v_b.is_finite() && v_c.is_finite()) {
        return Err(Error::Backend(alloc::format!("invalid vote probabilities ({v_b}, {v_c})")));
    }
    let total = v_b + v_c;
    if total <= 0.0 {
        return Err(Error::UndefinedProbability);
    }
    let b = v_b / total;
    Ok(Popularity { b, c: 1.0 - b })
}

pub fn popularity_probability<B: MaskBackend + ?Sized>(backend: &B, b_token: &str, c_token: &str) -> Result<Popularity> {
    let result = probe(backend, VOTE_PROMPT, None)?;
    popularity_from_votes(result.probability(b_token), result.probability(c_token))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenDelta {
    pub token: String,
    pub early: f64,
    pub late: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DeltaRanking {
    pub rising: Vec<TokenDelta>,
    pub falling: Vec<TokenDelta>,
}

/// Over the union of both top-`k` lists, the `m` tokens with the largest gain
/// and the `m` with the largest loss from `early` to `late`.
pub fn rank_deltas(early: &ProbeResult, late: &ProbeResult, k: usize, m: usize) -> DeltaRanking {
    let mut union: Vec<&str> = early.top(k).iter().chain(late.top(k)).map(|t| t.0.as_str()).collect();
    union.sort_unstable();
    union.dedup();
    let deltas: Vec<TokenDelta> = union
        .into_iter()
        .map(|t| {
            let (e, l) = (early.probability(t), late.probability(t));
            TokenDelta { token: t.to_string(), early: e, late: l, delta: l - e }
        })
        .collect();
    let mut rising: Vec<TokenDelta> = deltas.iter().filter(|d| d.delta > 0.0).cloned().collect();
    rising.sort_by(|a, b| b.delta.total_cmp(&a.delta).then_with(|| a.token.cmp(&b.token)));
    rising.truncate(m);
    let mut falling: Vec<TokenDelta> = deltas.into_iter().filter(|d| d.delta < 0.0).collect();
    falling.sort_by(|a, b| a.delta.total_cmp(&b.delta).then_with(|| a.token.cmp(&b.token)));
    falling.truncate(m);
    DeltaRanking { rising, falling }
}

pub fn token_delta_ranking<E: MaskBackend + ?Sized, L: MaskBackend + ?Sized>(
    early: &E,
    late: &L,
    prompt: &str,
    k: usize,
    m: usize,
) -> Result<DeltaRanking> {
    Ok(rank_deltas(&probe(early, prompt, None)?, &probe(late, prompt, None)?, k, m))
}
