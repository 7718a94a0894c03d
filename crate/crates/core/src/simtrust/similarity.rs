use std::collections::BTreeSet;

use super::{KeywordVector, TagSemantics, UserProfile};

/// Cosine similarity over the union keyword space; 0 if either side has no
/// mass.
pub fn cosine(a: &KeywordVector, b: &KeywordVector) -> f64 {
    let dot: f64 = a
        .iter()
        .filter_map(|(k, wa)| b.get(k).map(|wb| wa * wb))
        .sum();
    let na = a.values().map(|w| w * w).sum::<f64>().sqrt();
    let nb = b.values().map(|w| w * w).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na * nb)).clamp(0.0, 1.0)
}

pub fn tag_similarity(a: &TagSemantics, b: &TagSemantics) -> f64 {
    cosine(&a.keywords, &b.keywords)
}

pub fn tags_similar(a: &TagSemantics, b: &TagSemantics, theta_sim: f64) -> bool {
    tag_similarity(a, b) >= theta_sim
}

/// Sum of all tag vectors of a user.
pub fn interest_vector(profile: &UserProfile) -> KeywordVector {
    let mut out = KeywordVector::new();
    for tag in &profile.tags {
        for (k, w) in &tag.keywords {
            *out.entry(k.clone()).or_insert(0.0) += w;
        }
    }
    out.retain(|_, w| *w > 0.0);
    out
}

/// Mean over the keyword union of `min(a_k, b_k) / max(a_k, b_k)`.
pub fn user_trust(a: &UserProfile, b: &UserProfile) -> f64 {
    interest_overlap(&interest_vector(a), &interest_vector(b))
}

pub(crate) fn interest_overlap(a: &KeywordVector, b: &KeywordVector) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let union: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    let total: f64 = union
        .iter()
        .map(|k| {
            let x = a.get(*k).copied().unwrap_or(0.0);
            let y = b.get(*k).copied().unwrap_or(0.0);
            if x <= 0.0 || y <= 0.0 {
                0.0
            } else {
                x.min(y) / x.max(y)
            }
        })
        .sum();
    total / union.len() as f64
}

/// Item-overlap baseline: `|A ∩ B| / |A ∪ B|`, 0 when both are empty.
pub fn jaccard_cf_trust(a: &UserProfile, b: &UserProfile) -> f64 {
    let inter = a.items.intersection(&b.items).count();
    let union = a.items.union(&b.items).count();
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kv(pairs: &[(&str, f64)]) -> KeywordVector {
        pairs.iter().map(|(k, w)| (k.to_string(), *w)).collect()
    }

    fn tag(pairs: &[(&str, f64)]) -> TagSemantics {
        TagSemantics {
            tag: "t".into(),
            keywords: kv(pairs),
        }
    }

    fn user(pairs: &[(&str, f64)]) -> UserProfile {
        UserProfile {
            user: "u".into(),
            tags: vec![tag(pairs)],
            items: Default::default(),
        }
    }

    #[test]
    fn tag_similarity_examples() {
        let a = tag(&[("a", 1.0), ("b", 1.0)]);
        assert!((tag_similarity(&a, &a) - 1.0).abs() < 1e-12);
        assert_eq!(tag_similarity(&a, &tag(&[("c", 2.0)])), 0.0);
        let s = tag_similarity(&a, &tag(&[("a", 1.0)]));
        assert!((s - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(tags_similar(&a, &tag(&[("a", 1.0)]), 0.5));
        assert_eq!(tag_similarity(&a, &tag(&[("a", 0.0)])), 0.0);
    }

    #[test]
    fn user_trust_examples() {
        let a = user(&[("x", 1.0), ("y", 3.0)]);
        assert_eq!(user_trust(&a, &a), 1.0);
        assert_eq!(user_trust(&a, &user(&[("z", 1.0)])), 0.0);
        assert_eq!(user_trust(&user(&[("x", 2.0)]), &user(&[("x", 1.0)])), 0.5);
        assert_eq!(user_trust(&a, &user(&[])), 0.0);
    }

    #[test]
    fn interest_vector_sums_tags() {
        let mut p = user(&[("x", 1.0)]);
        p.tags.push(tag(&[("x", 2.0), ("y", 1.0)]));
        assert_eq!(interest_vector(&p), kv(&[("x", 3.0), ("y", 1.0)]));
    }

    #[test]
    fn jaccard_examples() {
        let mk = |items: &[&str]| UserProfile::new("u", &[] as &[&str], items);
        assert_eq!(jaccard_cf_trust(&mk(&["a", "b"]), &mk(&["a", "b"])), 1.0);
        assert_eq!(jaccard_cf_trust(&mk(&["a"]), &mk(&["b"])), 0.0);
        let j = jaccard_cf_trust(&mk(&["a", "b"]), &mk(&["b", "c"]));
        assert!((j - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(jaccard_cf_trust(&mk(&[]), &mk(&[])), 0.0);
    }

    fn vec_strategy() -> impl Strategy<Value = KeywordVector> {
        prop::collection::btree_map("[a-e]", 0.0f64..5.0, 0..5)
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded(a in vec_strategy(), b in vec_strategy()) {
            let c1 = cosine(&a, &b);
            let c2 = cosine(&b, &a);
            prop_assert!((c1 - c2).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&c1));
            let o1 = interest_overlap(&a, &b);
            let o2 = interest_overlap(&b, &a);
            prop_assert_eq!(o1, o2);
            prop_assert!((0.0..=1.0).contains(&o1));
        }

        #[test]
        fn cosine_is_one_on_proportional(a in vec_strategy(), c in 0.1f64..10.0) {
            prop_assume!(a.values().any(|w| *w > 1e-3));
            let b: KeywordVector = a.iter().map(|(k, w)| (k.clone(), w * c)).collect();
            prop_assert!((cosine(&a, &b) - 1.0).abs() < 1e-9);
        }
    }
}
