use std::collections::BTreeSet;

use proptest::prelude::*;

use wiggle_core::recognizer::{Encoding, Priority, Valence};
use wiggle_core::triage::{ClipId, ClipPart, Filter, SortKey, TankQuery, TopicId, TriageStore};

#[derive(Debug, Clone)]
enum Op {
    Add { valence: Option<i64>, domain: u8 },
    AddTopic { level: u8 },
    SetValence { clip: u8, v: i64 },
    Priority { topic: u8, level: u8 },
    Assign { clip: u8, topic: u8 },
    Notes { clip: u8 },
    Trash { clip: u8 },
    BatchTrash { threshold: u8 },
}

fn level(i: u8) -> Priority {
    [Priority::Low, Priority::Normal, Priority::High, Priority::Urgent][i as usize % 4]
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => (prop::option::of(-10i64..=10), 0u8..3).prop_map(|(valence, domain)| Op::Add { valence, domain }),
        1 => (0u8..4).prop_map(|level| Op::AddTopic { level }),
        1 => (any::<u8>(), -12i64..=12).prop_map(|(clip, v)| Op::SetValence { clip, v }),
        1 => (any::<u8>(), 0u8..4).prop_map(|(topic, level)| Op::Priority { topic, level }),
        1 => (any::<u8>(), any::<u8>()).prop_map(|(clip, topic)| Op::Assign { clip, topic }),
        1 => any::<u8>().prop_map(|clip| Op::Notes { clip }),
        1 => any::<u8>().prop_map(|clip| Op::Trash { clip }),
        1 => (0u8..=10).prop_map(|threshold| Op::BatchTrash { threshold }),
    ]
}

fn pick<T: Copy>(items: &[T], i: u8) -> Option<T> {
    (!items.is_empty()).then(|| items[i as usize % items.len()])
}

/// Applies `op`; errors from invalid ids or values are part of the model.
fn apply(store: &mut TriageStore, op: &Op, now: u64) -> bool {
    let clips: Vec<ClipId> = store.clips().map(|c| c.id).collect();
    let topics: Vec<TopicId> = store.topics().map(|t| t.id).collect();
    let parts = vec![ClipPart::new(format!("r{now}"), format!("clip {now}"))];
    match op {
        Op::Add { valence, domain } => {
            let enc = valence.map_or(Encoding::None, |v| Encoding::Valence { score: Valence::new(v).unwrap() });
            store.add_clip(parts, enc, &format!("site{domain}.com"), now).is_ok()
        }
        Op::AddTopic { level: l } => store.create_topic_from_clip(&parts, level(*l), now).is_ok(),
        Op::SetValence { clip, v } => pick(&clips, *clip).is_some_and(|c| store.set_valence(c, *v, now).is_ok()),
        Op::Priority { topic, level: l } => {
            pick(&topics, *topic).is_some_and(|t| store.set_topic_priority(t, level(*l), now).is_ok())
        }
        Op::Assign { clip, topic } => match (pick(&clips, *clip), pick(&topics, *topic)) {
            (Some(c), Some(t)) => store.assign_topic(c, t, now).is_ok(),
            _ => false,
        },
        Op::Notes { clip } => pick(&clips, *clip).is_some_and(|c| store.set_notes(c, "n", now).is_ok()),
        Op::Trash { clip } => pick(&clips, *clip).is_some_and(|c| store.trash(c, now).is_ok()),
        Op::BatchTrash { threshold } => {
            let q = TankQuery {
                focus_threshold: *threshold,
                ..TankQuery::default()
            };
            store.batch_trash(&q, now).is_ok_and(|n| n > 0)
        }
    }
}

fn build(ops: &[Op]) -> TriageStore {
    let mut s = TriageStore::new();
    for (i, op) in ops.iter().enumerate() {
        apply(&mut s, op, i as u64 * 100);
    }
    s
}

fn query() -> impl Strategy<Value = TankQuery> {
    (
        prop::collection::btree_set(
            prop_oneof![
                Just(Filter::PositiveRating),
                Just(Filter::NegativeRating),
                (0u8..3).prop_map(|d| Filter::Domain(format!("site{d}.com"))),
            ],
            0..3,
        ),
        prop_oneof![Just(SortKey::ValenceDesc), Just(SortKey::Temporal)],
        0u8..=10,
    )
        .prop_map(|(enabled_filters, sort_key, focus_threshold)| TankQuery {
            enabled_filters,
            sort_key,
            focus_threshold,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn undo_reverts_any_single_mutation(ops in prop::collection::vec(op(), 0..25), last in op()) {
        let mut store = build(&ops);
        let before = store.clone();
        let now = 1_000_000;
        if apply(&mut store, &last, now) {
            store.undo_last(now + 1).unwrap();
            prop_assert!(store.same_contents(&before));
        } else {
            prop_assert!(store.same_contents(&before));
        }
    }

    #[test]
    fn json_round_trip_preserves_queries(ops in prop::collection::vec(op(), 0..25), q in query()) {
        let store = build(&ops);
        let back = TriageStore::from_json(&store.to_json()).unwrap();
        prop_assert!(back.same_contents(&store));
        prop_assert_eq!(back.query_clips(&q).unwrap(), store.query_clips(&q).unwrap());
        prop_assert_eq!(back.available_filters(), store.available_filters());
    }

    #[test]
    fn query_partitions_the_filtered_set(ops in prop::collection::vec(op(), 0..25), q in query()) {
        let store = build(&ops);
        let r = store.query_clips(&q).unwrap();
        let main: BTreeSet<ClipId> = r.main.iter().copied().collect();
        let below: BTreeSet<ClipId> = r.below_focus.iter().copied().collect();
        prop_assert!(main.is_disjoint(&below));
        let filtered: BTreeSet<ClipId> = store
            .clips()
            .filter(|c| c.state == wiggle_core::triage::ClipState::Active)
            .filter(|c| q.enabled_filters.is_empty() || q.enabled_filters.iter().any(|f| f.matches(c)))
            .map(|c| c.id)
            .collect();
        prop_assert_eq!(main.union(&below).copied().collect::<BTreeSet<_>>(), filtered);
        for id in &r.main {
            let v = store.clip(*id).unwrap().valence;
            prop_assert!(v.is_none_or(|v| v.magnitude() >= q.focus_threshold));
        }
    }

    #[test]
    fn filters_follow_the_clips(ops in prop::collection::vec(op(), 0..25)) {
        let store = build(&ops);
        let active: Vec<_> = store
            .clips()
            .filter(|c| c.state == wiggle_core::triage::ClipState::Active)
            .collect();
        let mut expected = BTreeSet::new();
        if active.iter().any(|c| c.valence.is_some_and(|v| v.score() > 0)) {
            expected.insert(Filter::PositiveRating);
        }
        if active.iter().any(|c| c.valence.is_some_and(|v| v.score() < 0)) {
            expected.insert(Filter::NegativeRating);
        }
        for c in &active {
            expected.insert(Filter::Domain(c.provenance.clone()));
        }
        prop_assert_eq!(store.available_filters(), expected);
    }

    #[test]
    fn topics_sorted_by_priority_then_age(ops in prop::collection::vec(op(), 0..25)) {
        let store = build(&ops);
        let sorted = store.sort_topics();
        for w in sorted.windows(2) {
            prop_assert!(w[0].priority > w[1].priority || (w[0].priority == w[1].priority && w[0].created_at <= w[1].created_at));
        }
    }
}
