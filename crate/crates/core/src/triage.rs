//! Holding tank and topics: collected clips, their ratings and priorities.
//!
//! All mutations go through [`TriageStore`], which keeps a single-step undo
//! snapshot of the previous state. The snapshot stays available for
//! [`UNDO_WINDOW_MS`] or until the next mutation replaces it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::recognizer::{Encoding, Priority, Valence, ValenceError};

pub const STORE_VERSION: u32 = 1;
pub const UNDO_WINDOW_MS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClipId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TopicId(pub u64);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StoreError {
    #[error("a clip needs at least one part")]
    EmptyParts,
    #[error("unknown clip {0:?}")]
    UnknownClip(ClipId),
    #[error("unknown topic {0:?}")]
    UnknownTopic(TopicId),
    #[error("clip {0:?} is in the trash")]
    Trashed(ClipId),
    #[error(transparent)]
    Valence(#[from] ValenceError),
    #[error("topic title must not be empty")]
    EmptyTitle,
    #[error("focus threshold {0} outside [0, 10]")]
    Threshold(u8),
    #[error("nothing to undo")]
    NoPendingUndo,
    #[error("store file version {0} is not supported")]
    Version(u32),
    #[error("invalid store JSON: {0}")]
    Json(String),
}

/// One piece of collected content. `region_id` is `None` for clips added
/// by hand rather than by a wiggle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClipPart {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region_id: Option<String>,
    pub text: String,
}

impl ClipPart {
    pub fn new(region_id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            region_id: Some(region_id.into()),
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClipState {
    Active,
    Trashed,
    Archived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Clip {
    pub id: ClipId,
    pub parts: Vec<ClipPart>,
    pub valence: Option<Valence>,
    pub topic_id: Option<TopicId>,
    /// Source domain, e.g. `amazon.com`.
    pub provenance: String,
    pub created_at: u64,
    pub notes: String,
    pub state: ClipState,
}

impl Clip {
    pub fn text(&self) -> String {
        joined_text(&self.parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Topic {
    pub id: TopicId,
    pub title: String,
    pub priority: Priority,
    pub clip_ids: Vec<ClipId>,
    pub created_at: u64,
}

/// Auto-generated holding-tank filter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    PositiveRating,
    NegativeRating,
    Domain(String),
}

impl Filter {
    pub fn matches(&self, clip: &Clip) -> bool {
        match self {
            Filter::PositiveRating => clip.valence.is_some_and(|v| v.score() > 0),
            Filter::NegativeRating => clip.valence.is_some_and(|v| v.score() < 0),
            Filter::Domain(d) => &clip.provenance == d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SortKey {
    #[default]
    ValenceDesc,
    Temporal,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TankQuery {
    pub enabled_filters: BTreeSet<Filter>,
    pub sort_key: SortKey,
    /// Clips whose |valence| is below this are grouped at the end.
    pub focus_threshold: u8,
}

/// Query result: clips in focus first, then the grayed-out group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QueryResult {
    pub main: Vec<ClipId>,
    pub below_focus: Vec<ClipId>,
}

/// What a commit produced: a clip, or (for priority swipes) a new topic
/// titled from the content.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Added {
    Clip(ClipId),
    Topic(TopicId),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct StoreState {
    clips: BTreeMap<ClipId, Clip>,
    topics: BTreeMap<TopicId, Topic>,
    last_picked_topic: Option<TopicId>,
    next_id: u64,
}

/// On-disk layout: `{version, clips, topics, trash, ...}`.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct StoreFile {
    version: u32,
    clips: Vec<Clip>,
    topics: Vec<Topic>,
    trash: Vec<Clip>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    last_picked_topic: Option<TopicId>,
    #[serde(default)]
    next_id: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriageStore {
    state: StoreState,
    undo: Option<(u64, StoreState)>,
}

fn joined_text(parts: &[ClipPart]) -> String {
    parts
        .iter()
        .map(|p| p.text.trim())
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

impl TriageStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clip(&self, id: ClipId) -> Option<&Clip> {
        self.state.clips.get(&id)
    }

    pub fn topic(&self, id: TopicId) -> Option<&Topic> {
        self.state.topics.get(&id)
    }

    pub fn clips(&self) -> impl Iterator<Item = &Clip> {
        self.state.clips.values()
    }

    pub fn topics(&self) -> impl Iterator<Item = &Topic> {
        self.state.topics.values()
    }

    pub fn last_picked_topic(&self) -> Option<TopicId> {
        self.state.last_picked_topic
    }

    pub fn has_pending_undo(&self) -> bool {
        self.undo.is_some()
    }

    /// True when both stores hold the same clips, topics and defaults,
    /// ignoring undo history.
    pub fn same_contents(&self, other: &TriageStore) -> bool {
        self.state == other.state
    }

    fn next_id(&mut self) -> u64 {
        self.state.next_id += 1;
        self.state.next_id
    }

    fn checkpoint(&mut self, now: u64) {
        self.undo = Some((now, self.state.clone()));
    }

    fn active_clip_mut(&mut self, id: ClipId) -> Result<&mut Clip, StoreError> {
        let clip = self.state.clips.get_mut(&id).ok_or(StoreError::UnknownClip(id))?;
        if clip.state == ClipState::Trashed {
            return Err(StoreError::Trashed(id));
        }
        Ok(clip)
    }

    /// Stores a committed wiggle. A priority encoding creates a topic titled
    /// from the content instead of a clip; otherwise the clip joins the
    /// last-picked topic, or stays in the holding tank when none was picked.
    pub fn add_clip(
        &mut self,
        parts: Vec<ClipPart>,
        encoding: Encoding,
        provenance: &str,
        now: u64,
    ) -> Result<Added, StoreError> {
        if parts.is_empty() {
            return Err(StoreError::EmptyParts);
        }
        if let Encoding::Priority { level } = encoding {
            return self.create_topic_from_clip(&parts, level, now).map(Added::Topic);
        }
        self.checkpoint(now);
        let id = ClipId(self.next_id());
        let topic_id = self.state.last_picked_topic.filter(|t| self.state.topics.contains_key(t));
        if let Some(t) = topic_id {
            self.state.topics.get_mut(&t).expect("checked").clip_ids.push(id);
        }
        let valence = match encoding {
            Encoding::Valence { score } => Some(score),
            _ => None,
        };
        self.state.clips.insert(
            id,
            Clip {
                id,
                parts,
                valence,
                topic_id,
                provenance: provenance.to_owned(),
                created_at: now,
                notes: String::new(),
                state: ClipState::Active,
            },
        );
        Ok(Added::Clip(id))
    }

    /// Conventional select-and-clip path: one text part, no rating.
    pub fn add_manual_clip(&mut self, text: &str, provenance: &str, now: u64) -> Result<ClipId, StoreError> {
        let part = ClipPart {
            region_id: None,
            text: text.to_owned(),
        };
        match self.add_clip(vec![part], Encoding::None, provenance, now)? {
            Added::Clip(id) => Ok(id),
            Added::Topic(_) => unreachable!("no priority encoding"),
        }
    }

    /// New topic whose title is the concatenated text of `parts`.
    pub fn create_topic_from_clip(&mut self, parts: &[ClipPart], level: Priority, now: u64) -> Result<TopicId, StoreError> {
        if parts.is_empty() {
            return Err(StoreError::EmptyParts);
        }
        let title = joined_text(parts);
        if title.is_empty() {
            return Err(StoreError::EmptyTitle);
        }
        self.checkpoint(now);
        let id = TopicId(self.next_id());
        self.state.topics.insert(
            id,
            Topic {
                id,
                title,
                priority: level,
                clip_ids: Vec::new(),
                created_at: now,
            },
        );
        Ok(id)
    }

    /// Restores the state before the last mutation, if it happened within
    /// the undo window.
    pub fn undo_last(&mut self, now: u64) -> Result<(), StoreError> {
        match self.undo.take() {
            Some((at, previous)) if now.saturating_sub(at) <= UNDO_WINDOW_MS => {
                self.state = previous;
                Ok(())
            }
            _ => Err(StoreError::NoPendingUndo),
        }
    }

    pub fn set_valence(&mut self, id: ClipId, score: i64, now: u64) -> Result<(), StoreError> {
        let valence = Valence::new(score)?;
        self.active_clip_mut(id)?;
        self.checkpoint(now);
        self.active_clip_mut(id)?.valence = Some(valence);
        Ok(())
    }

    pub fn clear_valence(&mut self, id: ClipId, now: u64) -> Result<(), StoreError> {
        self.active_clip_mut(id)?;
        self.checkpoint(now);
        self.active_clip_mut(id)?.valence = None;
        Ok(())
    }

    pub fn set_topic_priority(&mut self, id: TopicId, level: Priority, now: u64) -> Result<(), StoreError> {
        if !self.state.topics.contains_key(&id) {
            return Err(StoreError::UnknownTopic(id));
        }
        self.checkpoint(now);
        self.state.topics.get_mut(&id).expect("checked").priority = level;
        Ok(())
    }

    pub fn set_topic_title(&mut self, id: TopicId, title: &str, now: u64) -> Result<(), StoreError> {
        if title.trim().is_empty() {
            return Err(StoreError::EmptyTitle);
        }
        if !self.state.topics.contains_key(&id) {
            return Err(StoreError::UnknownTopic(id));
        }
        self.checkpoint(now);
        self.state.topics.get_mut(&id).expect("checked").title = title.to_owned();
        Ok(())
    }

    /// Files a clip under a topic and remembers the topic as the default
    /// for subsequent clips.
    pub fn assign_topic(&mut self, clip: ClipId, topic: TopicId, now: u64) -> Result<(), StoreError> {
        let previous = self.active_clip_mut(clip)?.topic_id;
        if !self.state.topics.contains_key(&topic) {
            return Err(StoreError::UnknownTopic(topic));
        }
        self.checkpoint(now);
        if let Some(old) = previous.and_then(|t| self.state.topics.get_mut(&t)) {
            old.clip_ids.retain(|c| *c != clip);
        }
        let target = self.state.topics.get_mut(&topic).expect("checked");
        if !target.clip_ids.contains(&clip) {
            target.clip_ids.push(clip);
        }
        self.active_clip_mut(clip)?.topic_id = Some(topic);
        self.state.last_picked_topic = Some(topic);
        Ok(())
    }

    pub fn set_notes(&mut self, id: ClipId, notes: &str, now: u64) -> Result<(), StoreError> {
        self.active_clip_mut(id)?;
        self.checkpoint(now);
        self.active_clip_mut(id)?.notes = notes.to_owned();
        Ok(())
    }

    /// Filters generated from the current clips: polarity filters for the
    /// ratings present plus one per source domain.
    pub fn available_filters(&self) -> BTreeSet<Filter> {
        let mut filters = BTreeSet::new();
        for clip in self.active() {
            match clip.valence.map(Valence::score) {
                Some(v) if v > 0 => {
                    filters.insert(Filter::PositiveRating);
                }
                Some(v) if v < 0 => {
                    filters.insert(Filter::NegativeRating);
                }
                _ => {}
            }
            filters.insert(Filter::Domain(clip.provenance.clone()));
        }
        filters
    }

    fn active(&self) -> impl Iterator<Item = &Clip> {
        self.state.clips.values().filter(|c| c.state == ClipState::Active)
    }

    /// Active clips passing any enabled filter (all of them when none is
    /// enabled). Clips with `|valence| >= focus_threshold`, or no valence,
    /// come first; the rest form the trailing below-focus group. Both parts
    /// follow `sort_key`.
    pub fn query_clips(&self, q: &TankQuery) -> Result<QueryResult, StoreError> {
        if q.focus_threshold > 10 {
            return Err(StoreError::Threshold(q.focus_threshold));
        }
        let mut passing: Vec<&Clip> = self
            .active()
            .filter(|c| q.enabled_filters.is_empty() || q.enabled_filters.iter().any(|f| f.matches(c)))
            .collect();
        passing.sort_by(|a, b| match q.sort_key {
            SortKey::ValenceDesc => {
                let key = |c: &Clip| c.valence.map(Valence::score);
                // Rated clips first by descending score, unrated last.
                match (key(a), key(b)) {
                    (Some(x), Some(y)) => y.cmp(&x),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    (None, Some(_)) => std::cmp::Ordering::Greater,
                    (None, None) => std::cmp::Ordering::Equal,
                }
                .then(a.created_at.cmp(&b.created_at))
                .then(a.id.cmp(&b.id))
            }
            SortKey::Temporal => a.created_at.cmp(&b.created_at).then(a.id.cmp(&b.id)),
        });
        let (main, below): (Vec<&Clip>, Vec<&Clip>) = passing
            .into_iter()
            .partition(|c| c.valence.is_none_or(|v| v.magnitude() >= q.focus_threshold));
        Ok(QueryResult {
            main: main.into_iter().map(|c| c.id).collect(),
            below_focus: below.into_iter().map(|c| c.id).collect(),
        })
    }

    /// Trashes the below-focus group of `q`, returning how many clips moved.
    pub fn batch_trash(&mut self, q: &TankQuery, now: u64) -> Result<usize, StoreError> {
        let group = self.query_clips(q)?.below_focus;
        if group.is_empty() {
            return Ok(0);
        }
        self.checkpoint(now);
        for id in &group {
            self.trash_one(*id);
        }
        Ok(group.len())
    }

    pub fn trash(&mut self, id: ClipId, now: u64) -> Result<(), StoreError> {
        self.active_clip_mut(id)?;
        self.checkpoint(now);
        self.trash_one(id);
        Ok(())
    }

    fn trash_one(&mut self, id: ClipId) {
        let clip = self.state.clips.get_mut(&id).expect("caller checked");
        clip.state = ClipState::Trashed;
        if let Some(topic) = clip.topic_id.take().and_then(|t| self.state.topics.get_mut(&t)) {
            topic.clip_ids.retain(|c| *c != id);
        }
    }

    /// Topics from most to least urgent; equal priorities keep creation
    /// order.
    pub fn sort_topics(&self) -> Vec<&Topic> {
        let mut topics: Vec<&Topic> = self.state.topics.values().collect();
        topics.sort_by(|a, b| {
            b.priority
                .cmp(&a.priority)
                .then(a.created_at.cmp(&b.created_at))
                .then(a.id.cmp(&b.id))
        });
        topics
    }

    /// Markdown list for one topic.
    pub fn export_topic_markdown(&self, id: TopicId) -> Result<String, StoreError> {
        let topic = self.state.topics.get(&id).ok_or(StoreError::UnknownTopic(id))?;
        let mut out = String::new();
        let _ = writeln!(out, "## {}", topic.title);
        let _ = writeln!(out, "Priority: {}", topic.priority);
        out.push('\n');
        for clip in topic.clip_ids.iter().filter_map(|c| self.state.clips.get(c)) {
            let marker = match clip.valence.map(Valence::score) {
                Some(v) if v > 0 => format!(" 👍 {v:+}"),
                Some(v) if v < 0 => format!(" 👎 {v:+}"),
                Some(_) => " 0".to_owned(),
                None => String::new(),
            };
            let _ = writeln!(out, "- {}{marker}", clip.text());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let (clips, trash): (Vec<Clip>, Vec<Clip>) = self
            .state
            .clips
            .values()
            .cloned()
            .partition(|c| c.state != ClipState::Trashed);
        let file = StoreFile {
            version: STORE_VERSION,
            clips,
            topics: self.state.topics.values().cloned().collect(),
            trash,
            last_picked_topic: self.state.last_picked_topic,
            next_id: self.state.next_id,
        };
        serde_json::to_string_pretty(&file).expect("store always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, StoreError> {
        let file: StoreFile = serde_json::from_str(text).map_err(|e| StoreError::Json(e.to_string()))?;
        if file.version != STORE_VERSION {
            return Err(StoreError::Version(file.version));
        }
        let mut state = StoreState {
            last_picked_topic: file.last_picked_topic,
            next_id: file.next_id,
            ..StoreState::default()
        };
        for clip in file.clips.into_iter().chain(file.trash) {
            state.next_id = state.next_id.max(clip.id.0);
            state.clips.insert(clip.id, clip);
        }
        for topic in file.topics {
            state.next_id = state.next_id.max(topic.id.0);
            state.topics.insert(topic.id, topic);
        }
        Ok(Self { state, undo: None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(score: i64) -> Encoding {
        Encoding::Valence {
            score: Valence::new(score).unwrap(),
        }
    }

    fn part(text: &str) -> Vec<ClipPart> {
        vec![ClipPart::new("r1", text)]
    }

    fn clip_id(a: Added) -> ClipId {
        match a {
            Added::Clip(id) => id,
            Added::Topic(_) => panic!("expected a clip"),
        }
    }

    fn store_with(valences: &[i64]) -> (TriageStore, Vec<ClipId>) {
        let mut s = TriageStore::new();
        let ids = valences
            .iter()
            .enumerate()
            .map(|(i, &x)| clip_id(s.add_clip(part(&format!("c{i}")), v(x), "example.com", i as u64).unwrap()))
            .collect();
        (s, ids)
    }

    #[test]
    fn add_with_valence_matches_positive_filter() {
        let (s, ids) = store_with(&[7]);
        assert_eq!(s.clip(ids[0]).unwrap().valence.unwrap().score(), 7);
        assert!(Filter::PositiveRating.matches(s.clip(ids[0]).unwrap()));
    }

    #[test]
    fn add_without_encoding_and_multi_part() {
        let mut s = TriageStore::new();
        let a = clip_id(s.add_clip(part("x"), Encoding::None, "d", 0).unwrap());
        assert_eq!(s.clip(a).unwrap().valence, None);
        let parts = vec![ClipPart::new("A", "first"), ClipPart::new("B", "second")];
        let b = clip_id(s.add_clip(parts.clone(), Encoding::None, "d", 1).unwrap());
        assert_eq!(s.clip(b).unwrap().parts, parts);
        assert_eq!(s.add_clip(vec![], Encoding::None, "d", 2), Err(StoreError::EmptyParts));
    }

    #[test]
    fn priority_commit_creates_titled_topic() {
        let mut s = TriageStore::new();
        let parts = part("Autofocus performance");
        for (level, expected) in [(Priority::High, Priority::High), (Priority::Normal, Priority::Normal), (Priority::Urgent, Priority::Urgent)] {
            match s.add_clip(parts.clone(), Encoding::Priority { level }, "d", 0).unwrap() {
                Added::Topic(t) => {
                    let topic = s.topic(t).unwrap();
                    assert_eq!(topic.title, "Autofocus performance");
                    assert_eq!(topic.priority, expected);
                }
                Added::Clip(_) => panic!("priority commits create topics"),
            }
        }
        assert_eq!(s.clips().count(), 0);
    }

    #[test]
    fn clips_follow_last_picked_topic() {
        let mut s = TriageStore::new();
        let t = s.create_topic_from_clip(&part("Cameras"), Priority::Normal, 0).unwrap();
        let a = clip_id(s.add_clip(part("a"), Encoding::None, "d", 1).unwrap());
        assert_eq!(s.clip(a).unwrap().topic_id, None);
        s.assign_topic(a, t, 2).unwrap();
        let b = clip_id(s.add_clip(part("b"), Encoding::None, "d", 3).unwrap());
        assert_eq!(s.clip(b).unwrap().topic_id, Some(t));
        assert_eq!(s.topic(t).unwrap().clip_ids, vec![a, b]);
    }

    #[test]
    fn undo_examples() {
        let mut s = TriageStore::new();
        assert_eq!(s.undo_last(0), Err(StoreError::NoPendingUndo));
        let before = s.clone();
        s.add_clip(part("x"), Encoding::None, "d", 100).unwrap();
        s.undo_last(200).unwrap();
        assert!(s.same_contents(&before));

        s.create_topic_from_clip(&part("T"), Priority::High, 300).unwrap();
        s.undo_last(300).unwrap();
        assert_eq!(s.topics().count(), 0);
        assert_eq!(s.undo_last(300), Err(StoreError::NoPendingUndo));
    }

    #[test]
    fn undo_window_expires() {
        let mut s = TriageStore::new();
        s.add_clip(part("x"), Encoding::None, "d", 0).unwrap();
        assert_eq!(s.undo_last(UNDO_WINDOW_MS + 1), Err(StoreError::NoPendingUndo));
        assert_eq!(s.clips().count(), 1);
    }

    #[test]
    fn field_edits() {
        let (mut s, ids) = store_with(&[1]);
        s.set_valence(ids[0], -3, 5).unwrap();
        assert_eq!(s.clip(ids[0]).unwrap().valence.unwrap().score(), -3);
        assert_eq!(s.set_valence(ids[0], 11, 5), Err(StoreError::Valence(ValenceError(11))));
        assert_eq!(s.set_valence(ClipId(99), 1, 5), Err(StoreError::UnknownClip(ClipId(99))));
        let t = s.create_topic_from_clip(&part("t"), Priority::Normal, 6).unwrap();
        s.set_topic_priority(t, Priority::Urgent, 7).unwrap();
        assert_eq!(s.topic(t).unwrap().priority, Priority::Urgent);
        assert_eq!(s.set_topic_priority(TopicId(99), Priority::Low, 7), Err(StoreError::UnknownTopic(TopicId(99))));
        s.set_notes(ids[0], "check the price", 8).unwrap();
        assert_eq!(s.clip(ids[0]).unwrap().notes, "check the price");
    }

    #[test]
    fn query_examples() {
        let (s, ids) = store_with(&[8, -7, 3]);
        let all = s.query_clips(&TankQuery::default()).unwrap();
        assert_eq!(all.main, vec![ids[0], ids[2], ids[1]]);
        assert!(all.below_focus.is_empty());

        let q = TankQuery {
            focus_threshold: 5,
            ..TankQuery::default()
        };
        let r = s.query_clips(&q).unwrap();
        assert_eq!(r.main, vec![ids[0], ids[1]]);
        assert_eq!(r.below_focus, vec![ids[2]]);

        let q = TankQuery {
            enabled_filters: [Filter::PositiveRating].into(),
            ..TankQuery::default()
        };
        let (s2, ids2) = store_with(&[8, -7]);
        assert_eq!(s2.query_clips(&q).unwrap().main, vec![ids2[0]]);

        assert_eq!(
            s.query_clips(&TankQuery {
                focus_threshold: 11,
                ..TankQuery::default()
            }),
            Err(StoreError::Threshold(11))
        );
    }

    #[test]
    fn zero_and_unrated() {
        let mut s = TriageStore::new();
        let z = clip_id(s.add_clip(part("z"), v(0), "d", 0).unwrap());
        let n = clip_id(s.add_clip(part("n"), Encoding::None, "d", 1).unwrap());
        let clip = s.clip(z).unwrap();
        assert!(!Filter::PositiveRating.matches(clip) && !Filter::NegativeRating.matches(clip));
        let q = TankQuery {
            focus_threshold: 1,
            sort_key: SortKey::Temporal,
            ..TankQuery::default()
        };
        let r = s.query_clips(&q).unwrap();
        assert_eq!(r.main, vec![n]);
        assert_eq!(r.below_focus, vec![z]);
    }

    #[test]
    fn batch_trash_examples() {
        let (mut s, ids) = store_with(&[8, -7, 3]);
        let q = TankQuery {
            focus_threshold: 5,
            ..TankQuery::default()
        };
        assert_eq!(s.batch_trash(&q, 10).unwrap(), 1);
        assert_eq!(s.clip(ids[2]).unwrap().state, ClipState::Trashed);
        let after = s.query_clips(&TankQuery::default()).unwrap();
        assert!(!after.main.contains(&ids[2]));
        assert_eq!(s.batch_trash(&q, 11).unwrap(), 0);
    }

    #[test]
    fn trashed_clips_leave_topics() {
        let (mut s, ids) = store_with(&[1]);
        let t = s.create_topic_from_clip(&part("t"), Priority::Normal, 0).unwrap();
        s.assign_topic(ids[0], t, 1).unwrap();
        s.trash(ids[0], 2).unwrap();
        assert!(s.topic(t).unwrap().clip_ids.is_empty());
        assert_eq!(s.assign_topic(ids[0], t, 3), Err(StoreError::Trashed(ids[0])));
    }

    #[test]
    fn topic_sorting() {
        let mut s = TriageStore::new();
        assert!(s.sort_topics().is_empty());
        let n = s.create_topic_from_clip(&part("n"), Priority::Normal, 0).unwrap();
        let u = s.create_topic_from_clip(&part("u"), Priority::Urgent, 1).unwrap();
        let h = s.create_topic_from_clip(&part("h"), Priority::High, 2).unwrap();
        let order: Vec<TopicId> = s.sort_topics().iter().map(|t| t.id).collect();
        assert_eq!(order, vec![u, h, n]);

        let mut s = TriageStore::new();
        let ids: Vec<TopicId> = (0..3)
            .map(|i| s.create_topic_from_clip(&part("x"), Priority::Normal, i).unwrap())
            .collect();
        let order: Vec<TopicId> = s.sort_topics().iter().map(|t| t.id).collect();
        assert_eq!(order, ids);
    }

    #[test]
    fn filters_are_generated() {
        let mut s = TriageStore::new();
        assert!(s.available_filters().is_empty());
        s.add_clip(part("a"), v(4), "amazon.com", 0).unwrap();
        s.add_clip(part("b"), Encoding::None, "dpreview.com", 1).unwrap();
        let f = s.available_filters();
        assert_eq!(
            f,
            [
                Filter::PositiveRating,
                Filter::Domain("amazon.com".into()),
                Filter::Domain("dpreview.com".into())
            ]
            .into()
        );
    }

    #[test]
    fn json_round_trip_and_layout() {
        let (mut s, ids) = store_with(&[8, -7, 3]);
        let t = s.create_topic_from_clip(&part("Topic"), Priority::High, 5).unwrap();
        s.assign_topic(ids[0], t, 6).unwrap();
        s.trash(ids[2], 7).unwrap();
        let json = s.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["clips"].as_array().unwrap().len(), 2);
        assert_eq!(v["trash"].as_array().unwrap().len(), 1);
        let back = TriageStore::from_json(&json).unwrap();
        assert!(back.same_contents(&s));
        assert!(matches!(TriageStore::from_json(r#"{"version":9,"clips":[],"topics":[],"trash":[]}"#), Err(StoreError::Version(9))));
    }

    #[test]
    fn markdown_export() {
        let (mut s, ids) = store_with(&[8, -7]);
        let t = s.create_topic_from_clip(&part("Lenses"), Priority::Urgent, 5).unwrap();
        s.assign_topic(ids[0], t, 6).unwrap();
        s.assign_topic(ids[1], t, 7).unwrap();
        let md = s.export_topic_markdown(t).unwrap();
        assert_eq!(md, "## Lenses\nPriority: Urgent\n\n- c0 👍 +8\n- c1 👎 -7\n");
    }

    #[test]
    fn manual_clip() {
        let mut s = TriageStore::new();
        let id = s.add_manual_clip("copied text", "example.org", 3).unwrap();
        let clip = s.clip(id).unwrap();
        assert_eq!(clip.parts[0].region_id, None);
        assert_eq!(clip.valence, None);
    }
}
