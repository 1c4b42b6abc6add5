use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{check_prompt, MaskBackend, MASK};
use crate::corpus::tokenize;
use crate::math::{exp, ln};
use crate::{Error, Result};

const BOS: &str = "<s>";
const EOS: &str = "</s>";

/// Additively smoothed n-gram model used as an offline mask filler.
///
/// A candidate's score is the joint probability of every n-gram that covers
/// the masked position, normalized over all vocabulary words.
#[derive(Debug, Clone)]
pub struct NgramBackend {
    id: String,
    order: usize,
    delta: f64,
    ids: BTreeMap<String, u32>,
    words: Vec<String>,
    grams: BTreeMap<Vec<u32>, u64>,
    contexts: BTreeMap<Vec<u32>, u64>,
}

impl NgramBackend {
    /// Trains on tokenized sentences; tokens keep their case.
    pub fn train<S: AsRef<str>>(id: &str, sentences: &[Vec<S>], order: usize, delta: f64) -> Result<Self> {
        if order == 0 || !(delta > 0.0) {
            return Err(Error::InvalidArgument("order and smoothing must be positive".into()));
        }
        let mut model = NgramBackend {
            id: id.to_string(),
            order,
            delta,
            ids: BTreeMap::new(),
            words: Vec::new(),
            grams: BTreeMap::new(),
            contexts: BTreeMap::new(),
        };
        let bos = model.intern(BOS);
        model.intern(EOS);
        let mut any = false;
        for s in sentences {
            if s.is_empty() {
                continue;
            }
            any = true;
            let mut seq = vec![bos; order - 1];
            for t in s {
                let id = model.intern(t.as_ref());
                seq.push(id);
            }
            seq.push(model.ids[EOS]);
            for w in seq.windows(order) {
                *model.grams.entry(w.to_vec()).or_default() += 1;
                *model.contexts.entry(w[..order - 1].to_vec()).or_default() += 1;
            }
        }
        if !any {
            return Err(Error::EmptyCorpus);
        }
        Ok(model)
    }

    /// Trigram model with add-0.01 smoothing.
    pub fn trigram<S: AsRef<str>>(id: &str, sentences: &[Vec<S>]) -> Result<Self> {
        Self::train(id, sentences, 3, 0.01)
    }

    fn intern(&mut self, w: &str) -> u32 {
        if let Some(&id) = self.ids.get(w) {
            return id;
        }
        let id = self.words.len() as u32;
        self.ids.insert(w.to_string(), id);
        self.words.push(w.to_string());
        id
    }

    /// Outcomes a position can take: every word plus the end marker.
    fn outcome_count(&self) -> f64 {
        (self.words.len() - 1) as f64
    }

    fn log_prob(&self, gram: &[Option<u32>]) -> f64 {
        let v = self.outcome_count();
        let (ctx, last) = gram.split_at(gram.len() - 1);
        let known: Option<Vec<u32>> = ctx.iter().copied().collect();
        let (c_gram, c_ctx) = match (known, last[0]) {
            (Some(ctx_ids), Some(w)) => {
                let c_ctx = self.contexts.get(&ctx_ids).copied().unwrap_or(0);
                let mut full = ctx_ids;
                full.push(w);
                (self.grams.get(&full).copied().unwrap_or(0), c_ctx)
            }
            (Some(ctx_ids), None) => (0, self.contexts.get(&ctx_ids).copied().unwrap_or(0)),
            (None, _) => (0, 0),
        };
        ln(c_gram as f64 + self.delta) - ln(c_ctx as f64 + self.delta * v)
    }
}

impl MaskBackend for NgramBackend {
    fn id(&self) -> &str {
        &self.id
    }

    fn fill(&self, prompt: &str) -> Result<Vec<(String, f64)>> {
        check_prompt(prompt)?;
        let (left, right) = prompt.split_once(MASK).expect("one mask");
        let lookup = |t: &str| self.ids.get(t).copied();
        let n = self.order;
        let mut seq: Vec<Option<u32>> = vec![Some(self.ids[BOS]); n - 1];
        seq.extend(tokenize(left).into_iter().map(lookup));
        let mask_at = seq.len();
        seq.push(None);
        seq.extend(tokenize(right).into_iter().map(lookup));
        seq.push(Some(self.ids[EOS]));

        let last = (mask_at + n - 1).min(seq.len() - 1);
        let candidates: Vec<u32> = (0..self.words.len() as u32).filter(|&id| id > 1).collect();
        let mut scores = Vec::with_capacity(candidates.len());
        for &cand in &candidates {
            seq[mask_at] = Some(cand);
            let s: f64 = (mask_at..=last).map(|j| self.log_prob(&seq[j + 1 - n..=j])).sum();
            scores.push(s);
        }
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = scores.iter().map(|s| exp(s - max)).collect();
        let total: f64 = weights.iter().sum();
        Ok(candidates.iter().zip(weights).map(|(&id, w)| (self.words[id as usize].clone(), w / total)).collect())
    }
}
