//! Suffix and exception-list tagging of comparatives and superlatives.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    None,
    Comparative,
    Superlative,
}

const SUPERLATIVES: &[&str] = &["most", "least", "best", "worst"];
const COMPARATIVES: &[&str] = &["more", "less", "better", "worse"];

/// Words that look like -er/-est forms but are not.
const BLOCKERS: &[&str] = &[
    "after", "another", "border", "brother", "career", "center", "centre", "chapter", "computer",
    "contest", "corner", "counter", "cover", "daughter", "dinner", "either", "engineer", "enter",
    "ever", "father", "farmer", "finger", "forest", "former", "further", "gather", "harvest",
    "however", "honest", "interest", "invest", "latter", "leader", "letter", "manager", "manifest",
    "master", "matter", "member", "minister", "modest", "monster", "mother", "neither", "never",
    "number", "officer", "order", "other", "over", "owner", "paper", "partner", "player", "poster",
    "power", "premier", "protest", "quarter", "rather", "register", "remember", "reporter",
    "request", "sister", "speaker", "suggest", "summer", "supporter", "teacher", "theater",
    "theatre", "together", "under", "voter", "water", "weather", "whatever", "whenever",
    "wherever", "whether", "winter", "worker", "writer", "conquest", "digest", "arrest", "suggest",
    "attest", "ingest", "protester", "volunteer", "pioneer", "chancellor", "consider", "offer",
    "cluster", "charter", "disaster", "ledger", "lawyer", "character", "thunder", "wonder",
];

const MIN_STEM: usize = 4;

fn tag_one(token: &str, position: usize) -> Degree {
    if !token.chars().all(char::is_alphabetic) {
        return Degree::None;
    }
    let mut chars = token.chars();
    let first_upper = chars.next().is_some_and(char::is_uppercase);
    if chars.any(char::is_uppercase) || (first_upper && position > 0) {
        return Degree::None;
    }
    let lower: String = token.to_lowercase();
    let w = lower.as_str();
    if SUPERLATIVES.contains(&w) {
        return Degree::Superlative;
    }
    if COMPARATIVES.contains(&w) {
        return Degree::Comparative;
    }
    if BLOCKERS.contains(&w) {
        return Degree::None;
    }
    let len = w.chars().count();
    if w.ends_with("est") && len >= MIN_STEM + 3 {
        Degree::Superlative
    } else if w.ends_with("er") && !w.ends_with("eer") && len >= MIN_STEM + 2 {
        Degree::Comparative
    } else {
        Degree::None
    }
}

/// Degree flag per token. Capitalized words past the first position and
/// acronyms are treated as names and never tagged.
pub fn tag_degree<S: AsRef<str>>(tokens: &[S]) -> Vec<Degree> {
    tokens.iter().enumerate().map(|(i, t)| tag_one(t.as_ref(), i)).collect()
}

/// `100 * (superlatives + comparatives) / tokens`, or `None` for no tokens.
pub fn degree_percentage<S: AsRef<str>>(tokens: &[S]) -> Option<f64> {
    if tokens.is_empty() {
        return None;
    }
    let hits = tag_degree(tokens).iter().filter(|d| **d != Degree::None).count();
    Some(100.0 * hits as f64 / tokens.len() as f64)
}
