use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Word vectors learnt for one year, stored as dense `f64` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSpace {
    year: i32,
    dim: usize,
    vocab: Vec<String>,
    counts: Vec<u64>,
    index: BTreeMap<String, usize>,
    vectors: Vec<f64>,
}

impl EmbeddingSpace {
    /// Builds a space from a vocabulary, per-token counts, and row-major vectors.
    pub fn new(year: i32, dim: usize, vocab: Vec<String>, counts: Vec<u64>, vectors: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("embedding dimension must be positive".into()));
        }
        if counts.len() != vocab.len() {
            return Err(Error::DimensionMismatch { expected: vocab.len(), found: counts.len() });
        }
        if vectors.len() != vocab.len() * dim {
            return Err(Error::DimensionMismatch { expected: vocab.len() * dim, found: vectors.len() });
        }
        if let Some(pos) = vectors.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "non-finite value in row for {:?}",
                vocab[pos / dim]
            )));
        }
        let mut index = BTreeMap::new();
        for (i, w) in vocab.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::InvalidArgument(alloc::format!("duplicate vocabulary entry {w:?}")));
            }
        }
        Ok(EmbeddingSpace { year, dim, vocab, counts, index, vectors })
    }

    /// Builds a space from `(token, vector)` rows with unit counts.
    pub fn from_rows<S: Into<String>>(year: i32, rows: impl IntoIterator<Item = (S, Vec<f64>)>) -> Result<Self> {
        let mut vocab = Vec::new();
        let mut vectors = Vec::new();
        let mut dim = None;
        for (w, v) in rows {
            let d = *dim.get_or_insert(v.len());
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            vocab.push(w.into());
            vectors.extend(v);
        }
        let counts = alloc::vec![1; vocab.len()];
        Self::new(year, dim.unwrap_or(0), vocab, counts, vectors)
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    /// Tokens in row order.
    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn vectors(&self) -> &[f64] {
        &self.vectors
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vector(&self, token: &str) -> Option<&[f64]> {
        self.index_of(token).map(|i| self.row(i))
    }

    pub fn count(&self, token: &str) -> Option<u64> {
        self.index_of(token).map(|i| self.counts[i])
    }

    pub(crate) fn with_vectors(&self, vectors: Vec<f64>) -> Self {
        debug_assert_eq!(vectors.len(), self.vectors.len());
        EmbeddingSpace { vectors, ..self.clone() }
    }
}
