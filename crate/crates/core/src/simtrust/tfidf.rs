use std::collections::BTreeMap;

use super::{Corpus, KeywordVector};
use crate::error::{Error, Result};

/// Lowercases, splits on anything that is not alphanumeric and drops tokens
/// shorter than two characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2)
        .map(str::to_lowercase)
        .collect()
}

/// Per-item tf-idf vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TfIdf {
    pub weights: BTreeMap<String, KeywordVector>,
}

impl TfIdf {
    pub fn item(&self, id: &str) -> Option<&KeywordVector> {
        self.weights.get(id)
    }
}

/// `tf(t, d) * ln(N / df(t))` with raw term counts.
///
/// Terms that occur in every item get weight 0 and are kept in the vector;
/// items with empty descriptions get an empty vector.
pub fn tf_idf(corpus: &Corpus) -> Result<TfIdf> {
    if corpus.is_empty() {
        return Err(Error::InvalidConfig(
            "tf-idf needs a non-empty corpus".into(),
        ));
    }
    let n = corpus.len() as f64;

    let counts: Vec<(&str, BTreeMap<String, usize>)> = corpus
        .items()
        .map(|item| {
            let mut tf = BTreeMap::new();
            for tok in tokenize(&item.description) {
                *tf.entry(tok).or_insert(0) += 1;
            }
            (item.id.as_str(), tf)
        })
        .collect();

    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, tf) in &counts {
        for term in tf.keys() {
            *df.entry(term.as_str()).or_insert(0) += 1;
        }
    }

    let weights = counts
        .iter()
        .map(|(id, tf)| {
            let vec = tf
                .iter()
                .map(|(term, &count)| {
                    let idf = (n / df[term.as_str()] as f64).ln();
                    (term.clone(), count as f64 * idf)
                })
                .collect();
            (id.to_string(), vec)
        })
        .collect();
    Ok(TfIdf { weights })
}
