use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::EmbeddingSpace;
use crate::math::{powf, sqrt};
use crate::{Error, Result};

const MAX_EXP: f32 = 6.0;

/// Skip-gram with negative sampling hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SgnsParams {
    pub dim: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub min_count: u64,
    pub sample: f64,
    pub alpha: f32,
    pub seed: u64,
}

impl Default for SgnsParams {
    fn default() -> Self {
        SgnsParams { dim: 100, window: 5, negatives: 5, epochs: 5, min_count: 5, sample: 1e-3, alpha: 0.025, seed: 1 }
    }
}

fn sigmoid(x: f32) -> f32 {
    1.0 / (1.0 + libm::expf(-x))
}

/// Trains one embedding space on lowercased sentences.
///
/// Context windows never cross sentence boundaries. The run is a pure
/// function of the input and `params.seed`.
pub fn train_sgns<S: AsRef<str>>(year: i32, sentences: &[Vec<S>], params: &SgnsParams) -> Result<EmbeddingSpace> {
    if params.dim == 0 || params.window == 0 || params.epochs == 0 {
        return Err(Error::InvalidArgument("dim, window and epochs must be positive".into()));
    }
    let lowered: Vec<Vec<String>> =
        sentences.iter().map(|s| s.iter().map(|t| t.as_ref().to_lowercase()).collect()).collect();
    if lowered.iter().all(|s| s.is_empty()) {
        return Err(Error::EmptyCorpus);
    }

    let mut freq: BTreeMap<&str, u64> = BTreeMap::new();
    for t in lowered.iter().flatten() {
        *freq.entry(t.as_str()).or_default() += 1;
    }
    let mut entries: Vec<(&str, u64)> = freq.into_iter().filter(|&(_, c)| c >= params.min_count).collect();
    if entries.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let index: BTreeMap<&str, usize> = entries.iter().enumerate().map(|(i, (w, _))| (*w, i)).collect();
    let counts: Vec<u64> = entries.iter().map(|e| e.1).collect();
    let vocab: Vec<String> = entries.iter().map(|e| String::from(e.0)).collect();

    let corpus: Vec<Vec<usize>> = lowered
        .iter()
        .map(|s| s.iter().filter_map(|t| index.get(t.as_str()).copied()).collect())
        .collect();
    let train_words: u64 = counts.iter().sum();

    let dim = params.dim;
    let v = vocab.len();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut syn0: Vec<f32> = (0..v * dim).map(|_| (rng.random::<f32>() - 0.5) / dim as f32).collect();
    let mut syn1 = vec![0.0f32; v * dim];
    let noise = WeightedIndex::new(counts.iter().map(|&c| powf(c as f64, 0.75)))
        .map_err(|e| Error::InvalidArgument(alloc::format!("{e}")))?;

    let keep_prob: Vec<f64> = counts
        .iter()
        .map(|&c| {
            if params.sample <= 0.0 {
                return 1.0;
            }
            let threshold = params.sample * train_words as f64;
            (sqrt(c as f64 / threshold) + 1.0) * threshold / c as f64
        })
        .collect();

    let total = (params.epochs as u64 * train_words + 1) as f32;
    let mut processed: u64 = 0;
    let mut neu1e = vec![0.0f32; dim];
    let mut kept = Vec::new();
    for _ in 0..params.epochs {
        for sentence in &corpus {
            kept.clear();
            for &w in sentence {
                processed += 1;
                if keep_prob[w] >= rng.random::<f64>() {
                    kept.push(w);
                }
            }
            let alpha = (params.alpha * (1.0 - processed as f32 / total)).max(params.alpha * 1e-4);
            for (pos, &word) in kept.iter().enumerate() {
                let b = rng.random_range(0..params.window);
                let reach = params.window - b;
                let lo = pos.saturating_sub(reach);
                let hi = (pos + reach).min(kept.len() - 1);
                for (c, &context) in kept.iter().enumerate().take(hi + 1).skip(lo) {
                    if c == pos {
                        continue;
                    }
                    let l1 = context * dim;
                    neu1e.iter_mut().for_each(|x| *x = 0.0);
                    for d in 0..=params.negatives {
                        let (target, label) = if d == 0 {
                            (word, 1.0f32)
                        } else {
                            let t = noise.sample(&mut rng);
                            if t == word {
                                continue;
                            }
                            (t, 0.0)
                        };
                        let l2 = target * dim;
                        let f: f32 = syn0[l1..l1 + dim].iter().zip(&syn1[l2..l2 + dim]).map(|(a, b)| a * b).sum();
                        let g = if f > MAX_EXP {
                            (label - 1.0) * alpha
                        } else if f < -MAX_EXP {
                            label * alpha
                        } else {
                            (label - sigmoid(f)) * alpha
                        };
                        for k in 0..dim {
                            neu1e[k] += g * syn1[l2 + k];
                            syn1[l2 + k] += g * syn0[l1 + k];
                        }
                    }
                    for k in 0..dim {
                        syn0[l1 + k] += neu1e[k];
                    }
                }
            }
        }
    }
    EmbeddingSpace::new(year, dim, vocab, counts, syn0.into_iter().map(f64::from).collect())
}
