use std::collections::BTreeSet;

use sostrust::simtrust::{
    derive_all, eval_to_csv, evaluate_dataset, jaccard_cf_trust, mean_f1, read_jsonl, recommend,
    synth_corpus, user_trust, write_jsonl, Algorithm, Corpus, Dataset, Item, ProfileRecord,
    SimTrustConfig, SynthConfig, UserProfile,
};

fn cluster_of(user: &str) -> &str {
    &user[5..7]
}

fn pairwise(cfg: &SynthConfig) -> Vec<(String, String, f64)> {
    let ds = synth_corpus(cfg).unwrap();
    let profiles = derive_all(&ds.profiles, &ds.corpus).unwrap();
    let mut out = vec![];
    for a in &profiles {
        for b in &profiles {
            if a.user < b.user {
                out.push((a.user.clone(), b.user.clone(), user_trust(a, b)));
            }
        }
    }
    out
}

#[test]
fn separated_clusters_do_not_trust_each_other() {
    let cfg = SynthConfig {
        clusters: 2,
        mixing: 0.0,
        ..Default::default()
    };
    for (a, b, t) in pairwise(&cfg) {
        if cluster_of(&a) != cluster_of(&b) {
            assert_eq!(t, 0.0, "{a} {b}");
        }
    }
}

#[test]
fn single_cluster_users_share_interests() {
    let cfg = SynthConfig {
        clusters: 1,
        ..Default::default()
    };
    let pairs = pairwise(&cfg);
    assert!(pairs.iter().all(|(_, _, t)| *t > 0.0));
    let mean = pairs.iter().map(|p| p.2).sum::<f64>() / pairs.len() as f64;
    assert!(mean > SimTrustConfig::default().theta_trust, "mean {mean}");
}

#[test]
fn same_cluster_trust_exceeds_cross_cluster_trust() {
    let cfg = SynthConfig {
        mixing: 0.2,
        ..Default::default()
    };
    let (mut same, mut cross) = (vec![], vec![]);
    for (a, b, t) in pairwise(&cfg) {
        if cluster_of(&a) == cluster_of(&b) {
            same.push(t)
        } else {
            cross.push(t)
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    assert!(mean(&same) > mean(&cross) + 0.1);
}

#[test]
fn synthesis_and_evaluation_are_deterministic() {
    let cfg = SynthConfig::default();
    let a = synth_corpus(&cfg).unwrap();
    let b = synth_corpus(&cfg).unwrap();
    assert_eq!(a, b);
    let sc = SimTrustConfig::default();
    let ra = eval_to_csv(&evaluate_dataset(&a, &sc, 10).unwrap());
    let rb = eval_to_csv(&evaluate_dataset(&b, &sc, 10).unwrap());
    assert_eq!(ra, rb);
    let other = synth_corpus(&SynthConfig { seed: 8, ..cfg }).unwrap();
    assert_ne!(a, other);
}

#[test]
fn holdout_respects_sizes() {
    let cfg = SynthConfig::default();
    let ds = synth_corpus(&cfg).unwrap();
    assert_eq!(ds.profiles.len(), cfg.clusters * cfg.users_per_cluster);
    for p in &ds.profiles {
        assert_eq!(p.items.len(), cfg.held_per_user);
        let truth = &ds.ground_truth[&p.user];
        assert_eq!(truth.len() + p.items.len(), cfg.preferred_per_user);
        assert!(p.items.iter().all(|i| !truth.contains(i)));
        assert!(truth.iter().all(|i| ds.corpus.get(i).is_some()));
    }
}

#[test]
fn recommendations_exclude_held_items() {
    let ds = synth_corpus(&SynthConfig::default()).unwrap();
    let profiles = derive_all(&ds.profiles, &ds.corpus).unwrap();
    for u in &profiles {
        let rec = recommend(u, &profiles, 10, 0.3);
        assert!(rec.items.len() <= 10);
        assert!(rec.items.iter().all(|i| !u.items.contains(i)));
        let unique: BTreeSet<&String> = rec.items.iter().collect();
        assert_eq!(unique.len(), rec.items.len());
    }
}

#[test]
fn simtrust_beats_item_overlap_on_sparse_profiles() {
    let ds = synth_corpus(&SynthConfig::default()).unwrap();
    let rows = evaluate_dataset(&ds, &SimTrustConfig::default(), 10).unwrap();
    assert!(mean_f1(&rows, Algorithm::SimTrust) > mean_f1(&rows, Algorithm::JaccardCf));
    assert!(rows
        .iter()
        .all(|r| (0.0..=1.0).contains(&r.precision) && (0.0..=1.0).contains(&r.recall)));
}

#[test]
fn jaccard_needs_shared_items() {
    let a = UserProfile::new("a", &["x"], &["i1", "i2"]);
    let b = UserProfile::new("b", &["x"], &["i3"]);
    assert_eq!(jaccard_cf_trust(&a, &b), 0.0);
    assert!(user_trust(&a, &b) > 0.0);
}

#[test]
fn jsonl_files_round_trip_into_a_dataset() {
    let items = vec![
        Item {
            id: "b1".into(),
            description: "leather football stitched".into(),
            tags: vec!["football".into()],
        },
        Item {
            id: "b2".into(),
            description: "football boots leather".into(),
            tags: vec!["football".into()],
        },
        Item {
            id: "b3".into(),
            description: "ceramic teapot".into(),
            tags: vec!["kitchen".into()],
        },
    ];
    let profiles = vec![
        ProfileRecord {
            user: "u1".into(),
            tags: vec!["football".into()],
            items: vec!["b1".into(), "b2".into()],
        },
        ProfileRecord {
            user: "u2".into(),
            tags: vec!["football".into()],
            items: vec!["b1".into()],
        },
    ];
    let items: Vec<Item> = read_jsonl(write_jsonl(&items).as_bytes()).unwrap();
    let profiles: Vec<ProfileRecord> = read_jsonl(write_jsonl(&profiles).as_bytes()).unwrap();
    let ds = Dataset::with_holdout(Corpus::new(items).unwrap(), profiles, 1);
    let rows = evaluate_dataset(&ds, &SimTrustConfig::default(), 5).unwrap();
    // u2 has no withheld items and is skipped
    assert!(rows.iter().all(|r| r.user_id == "u1"));
    assert_eq!(rows.len(), 2);
}
