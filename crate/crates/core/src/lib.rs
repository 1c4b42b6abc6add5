//! Allocation-only algorithms for measuring political imbalance in news archives.
//!
//! The crate is `no_std` (it needs `alloc`) so the numerical pieces can be
//! embedded anywhere; file formats, configuration and the command line live in
//! the companion `inkspace` crate.
//!
//! Pipeline overview:
//!
//! - [`corpus`]: articles, month bucketing, sentence splitting and tokenization.
//! - [`tagging`]: party keyword lexicons and the monthly per-party documents.
//! - [`nlp`]: sentence-level sentiment, subjectivity, degree and reported-speech analyzers.
//! - [`metrics`]: the directed imbalance score, monthly series and aggregates.
//! - [`timeseries`]: DTW distances and agglomerative clustering of series.
//! - [`embeddings`]: SGNS training, orthogonal alignment and WEAT scoring.
//! - [`geo`]: place-mention counting and coverage homogeneity trends.
//! - [`probe`]: masked-LM cloze arithmetic and an n-gram reference backend.
#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod embeddings;
mod error;
pub mod geo;
mod math;
pub mod metrics;
pub mod nlp;
pub mod probe;
pub mod tagging;
pub mod timeseries;

pub use error::{Error, Result};
