//! Command-line pipeline around `inkspace-core`: corpus and lexicon files,
//! run configuration, embedding files, external mask-filling backends and
//! the per-command artifacts.

pub mod backend;
pub mod commands;
pub mod config;
pub mod embio;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod synth;

pub use commands::Run;
pub use error::{AppError, AppResult};
