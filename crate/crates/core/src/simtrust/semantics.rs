use super::tfidf::{tf_idf, tokenize};
use super::{Corpus, Item, KeywordVector, ProfileRecord, TagSemantics, TfIdf, UserProfile};
use crate::error::Result;

fn carries_tag(item: &Item, label: &str) -> bool {
    let label = label.to_lowercase();
    item.tags.iter().any(|t| t.to_lowercase() == label)
        || tokenize(&item.description).contains(&label)
}

/// Rebuilds every tag's keyword vector from the user's own items.
///
/// A tag's vector is the mean of the tf-idf vectors of the user's items that
/// carry the tag (as an item tag or a description token). Zero weights are
/// dropped. A tag with no such item, or whose items only contribute zero
/// weights, falls back to its own label with weight 1.
pub fn derive_tag_semantics(profile: &UserProfile, corpus: &Corpus, tfidf: &TfIdf) -> UserProfile {
    let tags = profile
        .tags
        .iter()
        .map(|t| {
            let sources: Vec<&KeywordVector> = profile
                .items
                .iter()
                .filter_map(|id| corpus.get(id))
                .filter(|item| carries_tag(item, &t.tag))
                .filter_map(|item| tfidf.item(&item.id))
                .collect();
            if sources.is_empty() {
                return TagSemantics::from_label(&t.tag);
            }
            let scale = 1.0 / sources.len() as f64;
            let mut keywords = KeywordVector::new();
            for vec in sources {
                for (k, w) in vec {
                    *keywords.entry(k.clone()).or_insert(0.0) += w * scale;
                }
            }
            keywords.retain(|_, w| *w > 0.0);
            if keywords.is_empty() {
                TagSemantics::from_label(&t.tag)
            } else {
                TagSemantics {
                    tag: t.tag.clone(),
                    keywords,
                }
            }
        })
        .collect();
    UserProfile {
        user: profile.user.clone(),
        tags,
        items: profile.items.clone(),
    }
}

/// Builds profiles from records and derives their tag semantics against one
/// tf-idf pass over `corpus`.
pub fn derive_all(records: &[ProfileRecord], corpus: &Corpus) -> Result<Vec<UserProfile>> {
    let tfidf = tf_idf(corpus)?;
    Ok(records
        .iter()
        .map(|r| derive_tag_semantics(&UserProfile::from_record(r), corpus, &tfidf))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(id: &str, desc: &str, tags: &[&str]) -> Item {
        Item {
            id: id.into(),
            description: desc.into(),
            tags: tags.iter().map(|t| t.to_string()).collect(),
        }
    }

    fn fixture() -> (Corpus, TfIdf) {
        let corpus = Corpus::new(vec![
            item("a", "leather stitching", &["quality"]),
            item("b", "glossy colour", &["look"]),
            item("c", "bright pattern", &["look"]),
            item("d", "plain", &[]),
        ])
        .unwrap();
        let t = tf_idf(&corpus).unwrap();
        (corpus, t)
    }

    #[test]
    fn single_item_tag_equals_item_vector() {
        let (corpus, t) = fixture();
        let p = UserProfile::new("u", &["quality"], &["a"]);
        let d = derive_tag_semantics(&p, &corpus, &t);
        assert_eq!(&d.tags[0].keywords, t.item("a").unwrap());
    }

    #[test]
    fn unmatched_tag_falls_back_to_label() {
        let (corpus, t) = fixture();
        let p = UserProfile::new("u", &["Haptic"], &["a", "b"]);
        let d = derive_tag_semantics(&p, &corpus, &t);
        assert_eq!(
            d.tags[0].keywords,
            KeywordVector::from([("haptic".to_string(), 1.0)])
        );
        assert_eq!(d.tags[0].tag, "Haptic");
    }

    #[test]
    fn two_disjoint_items_are_averaged() {
        let (corpus, t) = fixture();
        let p = UserProfile::new("u", &["look"], &["b", "c"]);
        let d = derive_tag_semantics(&p, &corpus, &t);
        let ln4 = 4f64.ln();
        let expected: KeywordVector = ["glossy", "colour", "bright", "pattern"]
            .into_iter()
            .map(|k| (k.to_string(), ln4 / 2.0))
            .collect();
        assert_eq!(d.tags[0].keywords.len(), 4);
        for (k, w) in &expected {
            assert!((d.tags[0].keywords[k] - w).abs() < 1e-12);
        }
    }

    #[test]
    fn description_token_associates_tag() {
        let (corpus, t) = fixture();
        let p = UserProfile::new("u", &["stitching"], &["a"]);
        let d = derive_tag_semantics(&p, &corpus, &t);
        assert!(d.tags[0].keywords.contains_key("leather"));
    }
}
