use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{user_trust, UserProfile};

/// Ranked recommendations for one user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationResult {
    pub user: String,
    pub items: Vec<String>,
}

/// Other users whose trust from `user` is positive and reaches `theta_trust`,
/// in input order.
pub fn trusted_neighbors<'a, F>(
    user: &UserProfile,
    profiles: &'a [UserProfile],
    theta_trust: f64,
    trust: F,
) -> Vec<(&'a UserProfile, f64)>
where
    F: Fn(&UserProfile, &UserProfile) -> f64,
{
    profiles
        .iter()
        .filter(|p| p.user != user.user)
        .map(|p| (p, trust(user, p)))
        .filter(|(_, t)| *t >= theta_trust && *t > 0.0)
        .collect()
}

/// Ranks items held by trusted neighbors, excluding the user's own items.
///
/// An item's score is the sum of the trust values of the neighbors holding it.
/// Ties are broken by item id.
pub fn recommend_with<F>(
    user: &UserProfile,
    profiles: &[UserProfile],
    n: usize,
    theta_trust: f64,
    trust: F,
) -> RecommendationResult
where
    F: Fn(&UserProfile, &UserProfile) -> f64,
{
    let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
    for (neighbor, t) in trusted_neighbors(user, profiles, theta_trust, trust) {
        for item in neighbor.items.iter().filter(|i| !user.items.contains(*i)) {
            *scores.entry(item.as_str()).or_insert(0.0) += t;
        }
    }
    let mut ranked: Vec<(&str, f64)> = scores.into_iter().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    RecommendationResult {
        user: user.user.clone(),
        items: ranked
            .into_iter()
            .take(n)
            .map(|(id, _)| id.to_string())
            .collect(),
    }
}

/// Tag-based recommendation using [`user_trust`].
pub fn recommend(
    user: &UserProfile,
    profiles: &[UserProfile],
    n: usize,
    theta_trust: f64,
) -> RecommendationResult {
    recommend_with(user, profiles, n, theta_trust, user_trust)
}
