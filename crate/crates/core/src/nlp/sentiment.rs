//! Lexicon and rule based sentence sentiment in the style of VADER.
//!
//! The rules follow the published VADER procedure: negation within the three
//! preceding tokens damps and flips a valence by `-0.74`, boosters shift its
//! magnitude, an all-caps word in a mixed-case sentence adds `0.733`, and
//! valences before/after "but" are scaled by 0.5/1.5. The positive and negative
//! outputs are the VADER proportions, where every hit contributes
//! `|valence| + 1` and every neutral token contributes 1.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::math::sqrt;
use crate::{Error, Result};

const DEFAULT_LEXICON: &str = include_str!("../../data/vader.tsv");

pub const NEGATION_SCALAR: f64 = -0.74;
pub const CAPS_INCREMENT: f64 = 0.733;
pub const NORMALIZATION_ALPHA: f64 = 15.0;

/// Per-sentence positive and negative sentiment, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SentimentResult {
    pub positive: f64,
    pub negative: f64,
}

/// Valence lexicon plus the booster, negator and idiom tables.
#[derive(Debug, Clone, Default)]
pub struct ValenceLexicon {
    valence: BTreeMap<String, f64>,
    boosters: BTreeMap<String, f64>,
    negators: BTreeSet<String>,
    idioms: BTreeMap<String, f64>,
}

impl ValenceLexicon {
    /// Parses `token<TAB>score[<TAB>class]` lines, where class is `booster`,
    /// `negator` or `idiom` (absent means a plain valence entry).
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut lex = ValenceLexicon::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let token = cols.next().unwrap_or_default().trim().to_lowercase();
            let score = cols.next().ok_or_else(|| Error::Parse {
                line: n + 1,
                message: "expected token<TAB>score".into(),
            })?;
            let score: f64 = score.trim().parse().map_err(|_| Error::Parse {
                line: n + 1,
                message: alloc::format!("bad score {score:?}"),
            })?;
            if token.is_empty() {
                return Err(Error::Parse { line: n + 1, message: "empty token".into() });
            }
            match cols.next().map(str::trim) {
                None | Some("") | Some("valence") => {
                    lex.valence.insert(token, score);
                }
                Some("booster") => {
                    lex.boosters.insert(token, score);
                }
                Some("negator") => {
                    lex.negators.insert(token);
                }
                Some("idiom") => {
                    lex.idioms.insert(token, score);
                }
                Some(other) => {
                    return Err(Error::Parse {
                        line: n + 1,
                        message: alloc::format!("unknown modifier class {other:?}"),
                    })
                }
            }
        }
        Ok(lex)
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valence.get(&token.to_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.valence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valence.is_empty()
    }

    pub fn insert_valence(&mut self, token: &str, score: f64) {
        self.valence.insert(token.to_lowercase(), score);
    }

    fn has(&self, lower: &str) -> bool {
        self.valence.contains_key(lower)
    }

    fn is_negated(&self, lower: &str) -> bool {
        self.negators.contains(lower) || lower.contains("n't")
    }
}

/// The shipped VADER lexicon.
pub fn default_valence_lexicon() -> ValenceLexicon {
    ValenceLexicon::parse_tsv(DEFAULT_LEXICON).expect("shipped valence lexicon is valid")
}

/// Python's `str.isupper`: at least one cased character and no lower-case ones.
fn is_upper(token: &str) -> bool {
    token.chars().any(char::is_uppercase) && !token.chars().any(char::is_lowercase)
}

/// Compound-score squashing `x / sqrt(x^2 + alpha)`, clamped to `[-1, 1]`.
pub fn normalize(score: f64) -> f64 {
    (score / sqrt(score * score + NORMALIZATION_ALPHA)).clamp(-1.0, 1.0)
}

struct Ctx<'a> {
    tokens: Vec<&'a str>,
    lower: Vec<String>,
    cap_differential: bool,
}

impl Ctx<'_> {
    fn booster_scalar(&self, lex: &ValenceLexicon, j: usize, valence: f64) -> f64 {
        let Some(&b) = lex.boosters.get(&self.lower[j]) else {
            return 0.0;
        };
        let mut scalar = if valence < 0.0 { -b } else { b };
        if is_upper(self.tokens[j]) && self.cap_differential {
            if valence > 0.0 {
                scalar += CAPS_INCREMENT;
            } else {
                scalar -= CAPS_INCREMENT;
            }
        }
        scalar
    }

    fn negation_check(&self, lex: &ValenceLexicon, mut valence: f64, start_i: usize, i: usize) -> f64 {
        let w = |k: usize| self.lower[i - k].as_str();
        let so_this = |s: &str| s == "so" || s == "this";
        match start_i {
            0 => {
                if lex.is_negated(w(1)) {
                    valence *= NEGATION_SCALAR;
                }
            }
            1 => {
                if w(2) == "never" && so_this(w(1)) {
                    valence *= 1.25;
                } else if w(2) == "without" && w(1) == "doubt" {
                } else if lex.is_negated(w(2)) {
                    valence *= NEGATION_SCALAR;
                }
            }
            _ => {
                if w(3) == "never" && (so_this(w(2)) || so_this(w(1))) {
                    valence *= 1.25;
                } else if w(3) == "without" && (w(2) == "doubt" || w(1) == "doubt") {
                } else if lex.is_negated(w(3)) {
                    valence *= NEGATION_SCALAR;
                }
            }
        }
        valence
    }

    fn idioms_check(&self, lex: &ValenceLexicon, mut valence: f64, i: usize) -> f64 {
        let l = |k: usize| self.lower[k].as_str();
        let join2 = |a: usize, b: usize| alloc::format!("{} {}", l(a), l(b));
        let join3 = |a: usize, b: usize, c: usize| alloc::format!("{} {} {}", l(a), l(b), l(c));
        let onezero = join2(i - 1, i);
        let twoonezero = join3(i - 2, i - 1, i);
        let twoone = join2(i - 2, i - 1);
        let threetwoone = join3(i - 3, i - 2, i - 1);
        let threetwo = join2(i - 3, i - 2);
        for seq in [&onezero, &twoonezero, &twoone, &threetwoone, &threetwo] {
            if let Some(&v) = lex.idioms.get(seq.as_str()) {
                valence = v;
                break;
            }
        }
        let n = self.lower.len();
        if n > i + 1 {
            if let Some(&v) = lex.idioms.get(&join2(i, i + 1)) {
                valence = v;
            }
        }
        if n > i + 2 {
            if let Some(&v) = lex.idioms.get(&join3(i, i + 1, i + 2)) {
                valence = v;
            }
        }
        for seq in [&threetwoone, &threetwo, &twoone] {
            if let Some(&b) = lex.boosters.get(seq.as_str()) {
                valence += b;
            }
        }
        valence
    }

    fn least_check(&self, lex: &ValenceLexicon, valence: f64, i: usize) -> f64 {
        if i > 1 && !lex.has(&self.lower[i - 1]) && self.lower[i - 1] == "least" {
            if self.lower[i - 2] != "at" && self.lower[i - 2] != "very" {
                return valence * NEGATION_SCALAR;
            }
        } else if i > 0 && !lex.has(&self.lower[i - 1]) && self.lower[i - 1] == "least" {
            return valence * NEGATION_SCALAR;
        }
        valence
    }

    fn token_valence(&self, lex: &ValenceLexicon, i: usize) -> f64 {
        let item = &self.lower[i];
        let Some(&base) = lex.valence.get(item) else {
            return 0.0;
        };
        let n = self.lower.len();
        let mut valence = base;
        if item == "no" && i + 1 < n && lex.has(&self.lower[i + 1]) {
            valence = 0.0;
        }
        if (i > 0 && self.lower[i - 1] == "no")
            || (i > 1 && self.lower[i - 2] == "no")
            || (i > 2 && self.lower[i - 3] == "no" && matches!(self.lower[i - 1].as_str(), "or" | "nor"))
        {
            valence = base * NEGATION_SCALAR;
        }
        if is_upper(self.tokens[i]) && self.cap_differential {
            if valence > 0.0 {
                valence += CAPS_INCREMENT;
            } else {
                valence -= CAPS_INCREMENT;
            }
        }
        for start_i in 0..3 {
            if i > start_i && !lex.has(&self.lower[i - (start_i + 1)]) {
                let mut s = self.booster_scalar(lex, i - (start_i + 1), valence);
                if start_i == 1 {
                    s *= 0.95;
                } else if start_i == 2 {
                    s *= 0.9;
                }
                valence += s;
                valence = self.negation_check(lex, valence, start_i, i);
                if start_i == 2 {
                    valence = self.idioms_check(lex, valence, i);
                }
            }
        }
        self.least_check(lex, valence, i)
    }
}

/// Rule-adjusted valence of every token (0 for tokens without a lexicon hit).
pub fn token_valences<S: AsRef<str>>(tokens: &[S], lexicon: &ValenceLexicon) -> Vec<f64> {
    let toks: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    let upper = toks.iter().filter(|t| is_upper(t)).count();
    let ctx = Ctx {
        lower: toks.iter().map(|t| t.to_lowercase()).collect(),
        cap_differential: upper > 0 && upper < toks.len(),
        tokens: toks,
    };
    let n = ctx.tokens.len();
    let mut valences: Vec<f64> = (0..n)
        .map(|i| {
            let item = &ctx.lower[i];
            if lexicon.boosters.contains_key(item) || (item == "kind" && i + 1 < n && ctx.lower[i + 1] == "of") {
                0.0
            } else {
                ctx.token_valence(lexicon, i)
            }
        })
        .collect();
    if let Some(bi) = ctx.lower.iter().position(|w| w == "but") {
        for (si, v) in valences.iter_mut().enumerate() {
            if si < bi {
                *v *= 0.5;
            } else if si > bi {
                *v *= 1.5;
            }
        }
    }
    valences
}

/// Positive and negative sentiment of one tokenized sentence.
pub fn sentence_sentiment<S: AsRef<str>>(tokens: &[S], lexicon: &ValenceLexicon) -> SentimentResult {
    proportions(&token_valences(tokens, lexicon))
}

fn proportions(valences: &[f64]) -> SentimentResult {
    let mut pos = 0.0;
    let mut neg = 0.0;
    let mut neutral = 0.0;
    for &v in valences {
        if v > 0.0 {
            pos += v + 1.0;
        } else if v < 0.0 {
            neg += v - 1.0;
        } else {
            neutral += 1.0;
        }
    }
    if pos == 0.0 && neg == 0.0 {
        return SentimentResult::default();
    }
    let total = pos + neg.abs() + neutral;
    SentimentResult { positive: (pos / total).abs(), negative: (neg / total).abs() }
}

/// Compound score in `[-1, 1]`, without punctuation emphasis.
pub fn compound<S: AsRef<str>>(tokens: &[S], lexicon: &ValenceLexicon) -> f64 {
    let sum: f64 = token_valences(tokens, lexicon).iter().sum();
    normalize(sum)
}
