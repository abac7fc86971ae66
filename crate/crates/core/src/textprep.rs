//! Query normalization, tokenization and noun/verb bucketing.
//!
//! Bucketing is a deterministic lexicon lookup, not a statistical tagger:
//! only the noun/verb/cardinal partition matters to the scorer.

use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};
use crate::wordnet::{Pos, SynsetId, WordNetDb};

/// Personal and possessive pronouns. These count as nouns.
pub const PRONOUNS: [&str; 18] = [
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "my", "your",
    "his", "its", "our", "their",
];

/// Closed-class words (determiners, prepositions, conjunctions, wh-words and
/// inflected auxiliaries). Always [`PosBucket::Other`], even when WordNet has
/// an unrelated entry for the spelling (`in` as inch, `is` as a verb form).
pub const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "each", "every", "no",
    "all", "both", "either", "neither", "another", "such", "of", "in", "on", "at", "to", "for",
    "from", "with", "by", "about", "into", "onto", "over", "under", "near", "between", "through",
    "without", "within", "after", "before", "during", "against", "among", "around", "across",
    "behind", "below", "above", "beside", "beyond", "per", "via", "vs", "versus", "up", "out",
    "off", "upon", "than", "and", "or", "but", "nor", "if", "so", "as", "because", "while",
    "whether", "though", "although", "unless", "how", "what", "where", "when", "why", "who",
    "whom", "which", "whose", "is", "are", "was", "were", "am", "been", "being", "does", "did",
    "has", "had", "could", "would", "should", "shall", "not",
];

/// Single-token domain names with an optional port and path.
pub const URL_PATTERN: &str =
    r"(?i)^(?:[a-z0-9](?:[a-z0-9-]{0,61}[a-z0-9])?\.)+[a-z]{2,6}(?::[0-9]+)?(?:/?|[/?]\S+)$";

/// Digit groups joined by `.`, `,`, `/`, `:` or `-`.
pub const CARDINAL_PATTERN: &str = r"^[0-9]+(?:[.,/:-][0-9]+)*$";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosBucket {
    Noun,
    Verb,
    Cardinal,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub bucket: PosBucket,
}

/// A noun or verb word together with its first WordNet sense, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub word: String,
    pub sense: Option<SynsetId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryAnalysis {
    pub query_id: u32,
    pub raw: String,
    pub normalized: String,
    pub tokens: Vec<Token>,
    pub is_url_query: bool,
    pub has_cardinal: bool,
    pub nouns: Vec<Term>,
    pub verbs: Vec<Term>,
}

impl QueryAnalysis {
    pub fn noun_words(&self) -> impl Iterator<Item = &str> {
        self.nouns.iter().map(|t| t.word.as_str())
    }

    pub fn verb_words(&self) -> impl Iterator<Item = &str> {
        self.verbs.iter().map(|t| t.word.as_str())
    }

    /// Cached first sense of a noun or verb word of this query. The outer
    /// `None` means `word` is not one of them.
    pub fn first_synset(&self, word: &str) -> Option<Option<SynsetId>> {
        self.nouns
            .iter()
            .chain(&self.verbs)
            .find(|t| t.word == word)
            .map(|t| t.sense)
    }
}

fn url_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(URL_PATTERN).expect("valid URL pattern"))
}

fn cardinal_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(CARDINAL_PATTERN).expect("valid cardinal pattern"))
}

/// Trim, lowercase and collapse runs of whitespace to one space.
pub fn normalize(raw: &str) -> String {
    raw.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// True for a single-token query that looks like a domain name or URL.
/// Anything containing whitespace is never a URL.
pub fn is_url(query: &str) -> bool {
    !query.contains(char::is_whitespace) && url_regex().is_match(query)
}

pub fn is_cardinal(token: &str) -> bool {
    cardinal_regex().is_match(token)
}

fn is_punctuation(c: char) -> bool {
    c.is_ascii_punctuation() || (!c.is_ascii() && !c.is_alphanumeric())
}

fn bucket(word: &str, db: &WordNetDb) -> PosBucket {
    if is_cardinal(word) {
        PosBucket::Cardinal
    } else if PRONOUNS.contains(&word) {
        PosBucket::Noun
    } else if FUNCTION_WORDS.contains(&word) {
        PosBucket::Other
    } else if !db.morphy(word, Pos::Noun).is_empty() {
        PosBucket::Noun
    } else if !db.morphy(word, Pos::Verb).is_empty() {
        PosBucket::Verb
    } else if db.first_sense(word).is_none() {
        // Unknown to WordNet altogether: most likely a name.
        PosBucket::Noun
    } else {
        PosBucket::Other
    }
}

/// Normalizes, tokenizes and buckets one query, resolving the first sense of
/// every noun and verb word.
pub fn analyze_query(raw: &str, db: &WordNetDb, query_id: u32) -> Result<QueryAnalysis> {
    let normalized = normalize(raw);
    if normalized.is_empty() {
        return Err(Error::BlankQuery);
    }
    let is_url_query = is_url(&normalized);

    let tokens: Vec<Token> = if is_url_query {
        vec![Token {
            bucket: bucket(&normalized, db),
            surface: normalized.clone(),
        }]
    } else {
        normalized
            .split(' ')
            .map(|t| t.trim_matches(is_punctuation))
            .filter(|t| !t.is_empty())
            .map(|t| Token {
                surface: t.to_string(),
                bucket: bucket(t, db),
            })
            .collect()
    };

    let terms = |which: PosBucket| -> Vec<Term> {
        tokens
            .iter()
            .filter(|t| t.bucket == which)
            .map(|t| Term {
                word: t.surface.clone(),
                sense: db.first_sense(&t.surface),
            })
            .collect()
    };

    Ok(QueryAnalysis {
        query_id,
        raw: raw.to_string(),
        has_cardinal: tokens.iter().any(|t| t.bucket == PosBucket::Cardinal),
        nouns: terms(PosBucket::Noun),
        verbs: terms(PosBucket::Verb),
        normalized,
        tokens,
        is_url_query,
    })
}
