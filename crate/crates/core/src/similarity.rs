//! Pairwise query relatedness.
//!
//! For each of the noun and verb buckets, every word pair contributes its
//! first-sense Wu-Palmer score divided by the combined bucket size, plus a
//! flat bonus when the two spellings are within a small edit distance. A word
//! without any WordNet sense voids its pairs entirely, bonus included. URL
//! queries and queries carrying a cardinal number score zero.

use std::collections::HashSet;

use crate::scalar::Weight;
use crate::textprep::{QueryAnalysis, Term};
use crate::wordnet::{SynsetId, WordNetDb};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairScore<T> {
    pub a: u32,
    pub b: u32,
    pub noun_weight: T,
    pub verb_weight: T,
    pub total: T,
    pub jaccard: Option<T>,
}

impl<T: Weight> PairScore<T> {
    /// A zero score for `(a, b)`, stored with the smaller id first.
    pub fn zero(a: u32, b: u32) -> Self {
        PairScore {
            a: a.min(b),
            b: a.max(b),
            noun_weight: T::zero(),
            verb_weight: T::zero(),
            total: T::zero(),
            jaccard: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScoringParams<T> {
    /// Largest edit distance that still earns the bonus.
    pub bonus_cutoff: usize,
    pub bonus_value: T,
}

impl<T: Weight> Default for ScoringParams<T> {
    fn default() -> Self {
        ScoringParams {
            bonus_cutoff: 2,
            bonus_value: T::from_f64_lossy(0.2),
        }
    }
}

/// Source of sense-to-sense similarity. Implemented by [`WordNetDb`] directly
/// and by memoizing wrappers.
pub trait SenseSimilarity<T> {
    fn wup(&self, a: SynsetId, b: SynsetId) -> Option<T>;
}

impl<T: Weight> SenseSimilarity<T> for WordNetDb {
    fn wup(&self, a: SynsetId, b: SynsetId) -> Option<T> {
        self.wup_similarity(a, b)
    }
}

impl<T, S: SenseSimilarity<T> + ?Sized> SenseSimilarity<T> for &S {
    fn wup(&self, a: SynsetId, b: SynsetId) -> Option<T> {
        (**self).wup(a, b)
    }
}

/// Levenshtein distance over Unicode scalar values, unit costs.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let substitute = prev[j] + usize::from(ca != cb);
            cur[j + 1] = substitute.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Weight contributed by one bucket (nouns or verbs) of a query pair.
pub fn bucket_pair_weight<T: Weight, S: SenseSimilarity<T>>(
    words1: &[Term],
    words2: &[Term],
    senses: &S,
    params: &ScoringParams<T>,
) -> T {
    let mut weight = T::zero();
    if words1.is_empty() || words2.is_empty() {
        return weight;
    }
    let norm = T::from_count(words1.len() + words2.len());
    for w1 in words1 {
        for w2 in words2 {
            let (Some(s1), Some(s2)) = (w1.sense, w2.sense) else {
                continue;
            };
            if let Some(s) = senses.wup(s1, s2) {
                weight += s / norm;
            }
            if edit_distance(&w1.word, &w2.word) <= params.bonus_cutoff {
                weight += params.bonus_value;
            }
        }
    }
    weight
}

/// Scores a query pair. The pair is evaluated with the lower `query_id` first
/// so the result does not depend on argument order.
pub fn semantic_similarity<T: Weight, S: SenseSimilarity<T>>(
    q1: &QueryAnalysis,
    q2: &QueryAnalysis,
    senses: &S,
    params: &ScoringParams<T>,
) -> PairScore<T> {
    let (q1, q2) = if q2.query_id < q1.query_id {
        (q2, q1)
    } else {
        (q1, q2)
    };
    let mut score = PairScore::zero(q1.query_id, q2.query_id);
    if q1.is_url_query || q2.is_url_query || q1.has_cardinal || q2.has_cardinal {
        return score;
    }
    score.noun_weight = bucket_pair_weight(&q1.nouns, &q2.nouns, senses, params);
    score.verb_weight = bucket_pair_weight(&q1.verbs, &q2.verbs, senses, params);
    score.total = score.noun_weight + score.verb_weight;
    score
}

/// Jaccard index of the two token sets; 0 when both are empty.
pub fn jaccard_similarity<T: Weight>(q1: &QueryAnalysis, q2: &QueryAnalysis) -> T {
    let t1: HashSet<&str> = q1.tokens.iter().map(|t| t.surface.as_str()).collect();
    let t2: HashSet<&str> = q2.tokens.iter().map(|t| t.surface.as_str()).collect();
    let union = t1.union(&t2).count();
    if union == 0 {
        return T::zero();
    }
    T::from_count(t1.intersection(&t2).count()) / T::from_count(union)
}
