//! Sentence-level analyzers feeding the tonality and point-of-view metrics.

mod degree;
mod sentiment;
mod speech;
mod subjectivity;

pub use degree::{degree_percentage, tag_degree, Degree};
pub use sentiment::{
    compound, default_valence_lexicon, normalize, sentence_sentiment, token_valences, SentimentResult,
    ValenceLexicon, CAPS_INCREMENT, NEGATION_SCALAR, NORMALIZATION_ALPHA,
};
pub use speech::{detect_reported_speech, NARRATIVE_VERBS};
pub use subjectivity::{default_subjectivity_lexicon, sentence_subjectivity, SubjectivityLexicon};

/// The immutable lexicons the sentence analyzers share.
#[derive(Debug, Clone)]
pub struct Analyzers {
    pub valence: ValenceLexicon,
    pub subjectivity: SubjectivityLexicon,
}

impl Default for Analyzers {
    fn default() -> Self {
        Analyzers { valence: default_valence_lexicon(), subjectivity: default_subjectivity_lexicon() }
    }
}
