//! Shallow reported-speech attribution.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::tagging::{LexiconSet, MatchView};

/// Forms of the narrative verbs "say" and "tell".
pub const NARRATIVE_VERBS: &[&str] = &["say", "says", "said", "saying", "tell", "tells", "told", "telling"];

/// Parties presented as the speaker of `tokens`.
///
/// A party qualifies when one of its phrases ends before a narrative verb and
/// no other narrative verb sits between the phrase and that verb. The phrase
/// standing in front of the verb is taken as its subject.
pub fn detect_reported_speech<'l, S: AsRef<str>>(tokens: &[S], lexicons: &'l LexiconSet) -> BTreeSet<&'l str> {
    let view = MatchView::new(tokens);
    let verbs: Vec<usize> = (0..view.len()).filter(|&i| NARRATIVE_VERBS.contains(&view.lower(i))).collect();
    if verbs.is_empty() {
        return BTreeSet::new();
    }
    let matches = lexicons.find_matches(&view);
    let mut out = BTreeSet::new();
    let mut prev: Option<usize> = None;
    for &v in &verbs {
        for m in &matches {
            if m.end <= v && prev.is_none_or(|p| m.start > p) {
                out.insert(lexicons.party_id(m.party));
            }
        }
        prev = Some(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;
    use crate::tagging::match_parties;
    use alloc::string::String;
    use proptest::prelude::*;

    fn detect(text: &str) -> BTreeSet<&'static str> {
        let lex = alloc::boxed::Box::leak(alloc::boxed::Box::new(LexiconSet::default()));
        detect_reported_speech(&tokenize(text), lex)
    }

    #[test]
    fn canonical_pattern() {
        assert_eq!(detect("BJP said the bill will pass"), ["bjp"].into_iter().collect());
    }

    #[test]
    fn keyword_after_verb_is_not_the_speaker() {
        assert!(detect("The minister told reporters that Congress objected").is_empty());
    }

    #[test]
    fn two_subjects() {
        assert_eq!(detect("BJP and Congress said they would talk"), ["bjp", "congress"].into_iter().collect());
    }

    #[test]
    fn intervening_verb_resets_the_subject() {
        // BJP is the subject of "said"; Congress is the subject of "told".
        assert_eq!(detect("BJP said that Congress told lies"), ["bjp", "congress"].into_iter().collect());
        assert!(detect("The BJP rally was large").is_empty());
        assert_eq!(detect("The Congress-led UPA says no"), ["congress"].into_iter().collect());
    }

    const WORDS: &[&str] = &["BJP", "Congress", "said", "told", "the", "minister", "NDA", "that", "tells", "UPA"];

    proptest! {
        #[test]
        fn speakers_are_mentioned(words in prop::collection::vec(prop::sample::select(WORDS), 0..12)) {
            let text: String = words.join(" ");
            let lex = LexiconSet::default();
            let speakers = detect_reported_speech(&tokenize(&text), &lex);
            let mentioned = match_parties(&text, &lex);
            prop_assert!(speakers.is_subset(&mentioned));
        }
    }
}
