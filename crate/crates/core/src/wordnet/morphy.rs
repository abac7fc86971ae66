use super::{Pos, WordNetDb};

const NOUN_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
];

const VERB_RULES: &[(&str, &str)] = &[
    ("s", ""),
    ("ies", "y"),
    ("es", "e"),
    ("es", ""),
    ("ed", "e"),
    ("ed", ""),
    ("ing", "e"),
    ("ing", ""),
];

const ADJ_RULES: &[(&str, &str)] = &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")];

pub(super) fn detachment_rules(pos: Pos) -> &'static [(&'static str, &'static str)] {
    match pos {
        Pos::Noun => NOUN_RULES,
        Pos::Verb => VERB_RULES,
        Pos::Adjective => ADJ_RULES,
        Pos::Adverb => &[],
    }
}

impl WordNetDb {
    /// Base forms of `word` that are lemmas of `pos`.
    ///
    /// Candidates are tried in order: the word itself, then either its
    /// exception-list bases or, when the word has no exception entry for
    /// `pos`, one application of each detachment rule. Only candidates present
    /// in the index survive; the first occurrence of a duplicate wins.
    pub fn morphy(&self, word: &str, pos: Pos) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut keep = |candidate: &str| {
            if self.contains_lemma(pos, candidate) && !out.iter().any(|w| w == candidate) {
                out.push(candidate.to_string());
            }
        };

        keep(word);
        let exceptions = self.exception_bases(pos, word);
        if !exceptions.is_empty() {
            for base in exceptions {
                keep(base);
            }
            return out;
        }
        for (suffix, replacement) in detachment_rules(pos) {
            if let Some(stem) = word.strip_suffix(suffix) {
                keep(&format!("{stem}{replacement}"));
            }
        }
        out
    }
}
