//! Corpus ingestion and lexicon loading.

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use inkspace_core::corpus::Article;
use inkspace_core::geo::PlaceSet;
use inkspace_core::nlp::{SubjectivityLexicon, ValenceLexicon};
use inkspace_core::tagging::LexiconSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{AppError, AppResult};

/// A JSONL record that was not loaded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct LoadReport {
    pub articles: Vec<Article>,
    /// Source line of each article.
    pub lines: Vec<usize>,
    pub skips: Vec<Skip>,
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, name: &str) -> Result<&'a str, String> {
    match obj.get(name) {
        None => Err(format!("missing field {name:?}")),
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(format!("field {name:?} is not a string")),
    }
}

fn parse_record(line: &str) -> Result<Article, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("malformed JSON: {e}"))?;
    let obj = value.as_object().ok_or("record is not a JSON object")?;
    Article::from_parts(
        field(obj, "id")?,
        field(obj, "outlet")?,
        field(obj, "published")?,
        field(obj, "headline")?,
        field(obj, "content")?,
    )
    .map_err(|e| e.to_string())
}

/// Reads articles in file order. Bad records are skipped and reported with
/// their 1-based line number; blank lines are ignored.
pub fn read_jsonl(reader: impl BufRead) -> std::io::Result<LoadReport> {
    let mut report = LoadReport::default();
    let mut ids = BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_record(&line) {
            Ok(a) if !ids.insert(a.id.clone()) => {
                report.skips.push(Skip { line: i + 1, reason: format!("duplicate id {:?}", a.id) })
            }
            Ok(a) => {
                report.articles.push(a);
                report.lines.push(i + 1);
            }
            Err(reason) => report.skips.push(Skip { line: i + 1, reason }),
        }
    }
    for s in &report.skips {
        log::warn!("line {}: {}", s.line, s.reason);
    }
    Ok(report)
}

pub fn load_jsonl(path: &Path) -> AppResult<LoadReport> {
    let file = fs::File::open(path).map_err(|e| AppError::data(format!("cannot read {}: {e}", path.display())))?;
    read_jsonl(BufReader::new(file)).map_err(|e| AppError::data(format!("cannot read {}: {e}", path.display())))
}

pub fn write_jsonl<T: Serialize>(path: &Path, rows: &[T]) -> AppResult<()> {
    let mut out = Vec::new();
    for r in rows {
        serde_json::to_writer(&mut out, r).map_err(AppError::internal)?;
        out.push(b'\n');
    }
    write_bytes(path, &out)
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> AppResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| AppError::write(parent, e))?;
    }
    let mut f = fs::File::create(path).map_err(|e| AppError::write(path, e))?;
    f.write_all(bytes).map_err(|e| AppError::write(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> AppResult<()> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(AppError::internal)?;
    bytes.push(b'\n');
    write_bytes(path, &bytes)
}

/// Writes a CSV file with a header row.
pub fn write_csv<R, I>(path: &Path, header: &[&str], rows: R) -> AppResult<()>
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| AppError::write(path, e);
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r.into_iter()).map_err(err)?;
    }
    write_bytes(path, &w.into_inner().map_err(AppError::internal)?)
}

/// CSV cell of an optional number; empty when missing.
pub fn cell(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn read_text(path: &Path) -> AppResult<String> {
    fs::read_to_string(path).map_err(|e| AppError::data(format!("cannot read {}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: inkspace_core::Result<T>) -> AppResult<T> {
    r.map_err(|e| AppError::data(format!("{}: {e}", path.display())))
}

pub fn load_lexicons(path: &Path) -> AppResult<LexiconSet> {
    with_path(path, LexiconSet::parse(&read_text(path)?))
}

pub fn load_places(path: &Path) -> AppResult<PlaceSet> {
    with_path(path, PlaceSet::parse(&read_text(path)?))
}

pub fn load_valence(path: &Path) -> AppResult<ValenceLexicon> {
    with_path(path, ValenceLexicon::parse_tsv(&read_text(path)?))
}

pub fn load_subjectivity(path: &Path) -> AppResult<SubjectivityLexicon> {
    with_path(path, SubjectivityLexicon::parse_tsv(&read_text(path)?))
}
