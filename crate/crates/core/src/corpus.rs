//! Articles, month buckets, sentence splitting and tokenization.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

const DEFAULT_ABBREVIATIONS: &str = include_str!("../data/abbreviations.txt");

/// One news item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Article {
    pub id: String,
    pub outlet: String,
    pub published: NaiveDate,
    pub headline: String,
    pub content: String,
}

impl Article {
    /// Builds an article from raw string fields, validating the id and date.
    pub fn from_parts(
        id: impl Into<String>,
        outlet: impl Into<String>,
        published: &str,
        headline: impl Into<String>,
        content: impl Into<String>,
    ) -> Result<Self> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(Error::InvalidArgument("article id must be non-empty".into()));
        }
        Ok(Article {
            id,
            outlet: outlet.into(),
            published: parse_date(published)?,
            headline: headline.into(),
            content: content.into(),
        })
    }

    pub fn month(&self) -> MonthKey {
        month_key(self.published)
    }

    pub fn year(&self) -> i32 {
        self.published.year()
    }
}

/// Parses a strict `YYYY-MM-DD` civil date.
pub fn parse_date(s: &str) -> Result<NaiveDate> {
    let b = s.as_bytes();
    let shape_ok = b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter().enumerate().all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit());
    if !shape_ok {
        return Err(Error::InvalidDate(s.to_string()));
    }
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|_| Error::InvalidDate(s.to_string()))
}

/// A calendar month, ordered chronologically and formatted as `YYYY-MM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthKey {
    pub year: i32,
    pub month: u8,
}

impl MonthKey {
    pub fn new(year: i32, month: u8) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidArgument(alloc::format!("month {month} out of range 1..=12")));
        }
        Ok(MonthKey { year, month })
    }

    pub fn succ(self) -> MonthKey {
        if self.month == 12 {
            MonthKey { year: self.year + 1, month: 1 }
        } else {
            MonthKey { year: self.year, month: self.month + 1 }
        }
    }

    /// Every month from `start` to `end`, both inclusive.
    pub fn range_inclusive(start: MonthKey, end: MonthKey) -> Vec<MonthKey> {
        let mut out = Vec::new();
        let mut m = start;
        while m <= end {
            out.push(m);
            m = m.succ();
        }
        out
    }
}

/// Month bucket of a publication date.
pub fn month_key(date: NaiveDate) -> MonthKey {
    MonthKey { year: date.year(), month: date.month() as u8 }
}

impl fmt::Display for MonthKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for MonthKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(alloc::format!("invalid month {s:?}, expected YYYY-MM"));
        let (y, m) = s.split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 {
            return Err(bad());
        }
        let year = y.parse().map_err(|_| bad())?;
        let month = m.parse().map_err(|_| bad())?;
        MonthKey::new(year, month).map_err(|_| bad())
    }
}

impl Serialize for MonthKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MonthKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A sentence (or a headline treated as one) with its tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub article_id: String,
    pub index: usize,
    pub text: String,
    pub tokens: Vec<String>,
    pub word_count: usize,
}

impl Sentence {
    pub fn new(article_id: &str, index: usize, text: &str) -> Self {
        let tokens: Vec<String> = tokenize(text).into_iter().map(String::from).collect();
        Sentence {
            article_id: article_id.to_string(),
            index,
            text: text.to_string(),
            word_count: tokens.len(),
            tokens,
        }
    }
}

/// Splits `text` into sentences and tokenizes each one; indices are dense from 0.
pub fn sentences(article_id: &str, text: &str, splitter: &SentenceSplitter) -> Vec<Sentence> {
    splitter
        .split(text)
        .into_iter()
        .enumerate()
        .map(|(i, s)| Sentence::new(article_id, i, s))
        .collect()
}

/// Rule-based sentence splitter with an abbreviation guard list.
#[derive(Debug, Clone)]
pub struct SentenceSplitter {
    abbreviations: BTreeSet<String>,
}

impl Default for SentenceSplitter {
    fn default() -> Self {
        Self::from_list(DEFAULT_ABBREVIATIONS)
    }
}

impl SentenceSplitter {
    /// One abbreviation per line; blank lines and `#` comments are ignored.
    pub fn from_list(list: &str) -> Self {
        let abbreviations = list
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect();
        SentenceSplitter { abbreviations }
    }

    pub fn is_abbreviation(&self, word: &str) -> bool {
        self.abbreviations.contains(word)
    }

    /// Splits at `.`, `!` or `?` (plus trailing closers) followed by whitespace
    /// and an upper-case letter, or by the end of the text.
    pub fn split<'a>(&self, text: &'a str) -> Vec<&'a str> {
        let mut out = Vec::new();
        let mut start = 0;
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if !is_terminator(c) {
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < chars.len() && (is_terminator(chars[j].1) || is_closer(chars[j].1)) {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
            let boundary = if j == chars.len() {
                true
            } else if chars[j].1.is_whitespace() {
                let mut k = j;
                while k < chars.len() && chars[k].1.is_whitespace() {
                    k += 1;
                }
                match chars.get(k) {
                    None => true,
                    Some(&(_, n)) if n.is_uppercase() => true,
                    Some(&(_, n)) if is_opener(n) => {
                        chars.get(k + 1).is_some_and(|&(_, n2)| n2.is_uppercase())
                    }
                    _ => false,
                }
            } else {
                false
            };
            let guarded = c == '.' && j == i + 1 && {
                let word_start = text[start..pos]
                    .rfind(char::is_whitespace)
                    .map_or(start, |w| start + w + 1);
                let word = text[word_start..pos + 1].trim_start_matches(is_opener);
                self.is_abbreviation(word)
            };
            if boundary && !guarded {
                let span = text[start..end].trim();
                if !span.is_empty() {
                    out.push(span);
                }
                start = end;
            }
            i = j;
        }
        let tail = text[start..].trim();
        if !tail.is_empty() {
            out.push(tail);
        }
        out
    }
}

/// Splits with the shipped abbreviation list.
pub fn split_sentences(text: &str) -> Vec<&str> {
    SentenceSplitter::default().split(text)
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{201c}' | '\u{2018}')
}

fn is_connector(c: char) -> bool {
    matches!(c, '\'' | '-' | '\u{2019}')
}

/// Word tokens: maximal runs of letters and digits, joined by internal
/// apostrophes or hyphens. Case is preserved and punctuation dropped.
pub fn tokenize(text: &str) -> Vec<&str> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut j = i + 1;
        loop {
            if j < chars.len() && chars[j].1.is_alphanumeric() {
                j += 1;
            } else if j + 1 < chars.len()
                && is_connector(chars[j].1)
                && chars[j + 1].1.is_alphanumeric()
            {
                j += 2;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
        out.push(&text[start..end]);
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn splits_two_terminal_periods() {
        assert_eq!(split_sentences("A b. C d."), vec!["A b.", "C d."]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(split_sentences("Mr. Modi spoke."), vec!["Mr. Modi spoke."]);
        assert_eq!(
            split_sentences("The U.S. Senate met. It adjourned."),
            vec!["The U.S. Senate met.", "It adjourned."]
        );
    }

    #[test]
    fn empty_text_has_no_sentences() {
        assert!(split_sentences("").is_empty());
        assert!(split_sentences("   \n ").is_empty());
    }

    #[test]
    fn lowercase_continuation_is_not_a_boundary() {
        assert_eq!(split_sentences("It cost 3.5 crore. then more"), vec!["It cost 3.5 crore. then more"]);
    }

    #[test]
    fn closers_and_openers() {
        assert_eq!(
            split_sentences("He said \"No!\" \"Fine,\" she replied. Why? Because."),
            vec!["He said \"No!\"", "\"Fine,\" she replied.", "Why?", "Because."]
        );
    }

    #[test]
    fn tokenizer_examples() {
        assert_eq!(tokenize("BJP won 42 seats."), vec!["BJP", "won", "42", "seats"]);
        assert_eq!(tokenize("Congress-led UPA"), vec!["Congress-led", "UPA"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("BJP's 'rally' -- ok-"), vec!["BJP's", "rally", "ok"]);
        assert_eq!(tokenize("Students' Union"), vec!["Students", "Union"]);
    }

    #[test]
    fn month_keys() {
        let d = |s| parse_date(s).unwrap();
        assert_eq!(month_key(d("2014-05-16")).to_string(), "2014-05");
        assert_eq!(month_key(d("2010-01-01")).to_string(), "2010-01");
        assert_eq!(month_key(d("2018-12-31")).to_string(), "2018-12");
        assert!(MonthKey::new(2018, 12).unwrap() < MonthKey::new(2019, 1).unwrap());
        assert_eq!("2014-05".parse::<MonthKey>().unwrap(), MonthKey::new(2014, 5).unwrap());
        assert_eq!(
            MonthKey::range_inclusive(MonthKey::new(2013, 11).unwrap(), MonthKey::new(2014, 2).unwrap())
                .len(),
            4
        );
    }

    #[test]
    fn dates_are_strict() {
        assert!(parse_date("2014-02-29").is_err());
        assert!(parse_date("2014-2-3").is_err());
        assert!(parse_date("16/05/2014").is_err());
        assert!(parse_date("2016-02-29").is_ok());
    }

    #[test]
    fn article_requires_id() {
        assert!(Article::from_parts("", "toi", "2014-05-16", "", "").is_err());
        assert!(Article::from_parts("a", "toi", "2014-05-16", "", "").is_ok());
    }

    #[test]
    fn sentence_indices_are_dense() {
        let s = sentences("a1", "One two. Three! Four?", &SentenceSplitter::default());
        assert_eq!(s.iter().map(|s| s.index).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(s.iter().all(|s| s.word_count == s.tokens.len()));
    }

    proptest! {
        #[test]
        fn sentence_word_counts_sum_to_text_word_count(text in "[A-Za-z .!?'\\-,\"]{0,120}") {
            let total: usize = sentences("x", &text, &SentenceSplitter::default())
                .iter().map(|s| s.word_count).sum();
            prop_assert_eq!(total, tokenize(&text).len());
        }

        #[test]
        fn split_covers_all_non_whitespace(text in "[A-Za-z .!?]{0,80}") {
            let joined: String = split_sentences(&text).concat();
            let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
            prop_assert_eq!(strip(&joined), strip(&text));
        }

        #[test]
        fn split_is_idempotent(text in "[A-Za-z .!?]{0,80}") {
            for s in split_sentences(&text) {
                prop_assert_eq!(split_sentences(s), vec![s]);
            }
        }
    }
}
