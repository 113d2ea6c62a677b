//! Permutation events with repetition and the junction operators on them.
//!
//! An [`Event`] is an ordered tuple of frame elements in which an element may
//! occur more than once, so `(a, b)`, `(b, a)` and `(a, a, b)` are three
//! different events. The empty tuple is kept as a value because a junction of
//! two events with no common element yields it; it never carries mass.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::frame::Frame;

/// Compare two index sequences by length first, then lexicographically.
pub(crate) fn canonical_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The occurrences of `left` whose element appears anywhere in `right`,
/// keeping `left`'s order and multiplicities.
pub(crate) fn junction_items(left: &[usize], right: &[usize]) -> Vec<usize> {
    left.iter().copied().filter(|x| right.contains(x)).collect()
}

/// An ordered tuple of frame elements; repetition allowed.
///
/// Equality, ordering and hashing look only at the item sequence. Ordering is
/// canonical: shorter events first, then lexicographic by element index.
#[derive(Clone)]
pub struct Event {
    frame: Frame,
    items: Vec<usize>,
}

impl Event {
    pub fn new(frame: &Frame, items: Vec<usize>) -> Result<Self> {
        for &i in &items {
            frame.check_index(i)?;
        }
        Ok(Event {
            frame: frame.clone(),
            items,
        })
    }

    pub fn from_labels<I, S>(frame: &Frame, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let items = labels
            .into_iter()
            .map(|l| {
                let l = l.as_ref();
                frame
                    .index_of(l)
                    .ok_or_else(|| Error::UnknownElement(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Event {
            frame: frame.clone(),
            items,
        })
    }

    /// The conflict sentinel.
    pub fn empty(frame: &Frame) -> Self {
        Event {
            frame: frame.clone(),
            items: Vec::new(),
        }
    }

    pub(crate) fn from_trusted(frame: &Frame, items: Vec<usize>) -> Self {
        debug_assert!(items.iter().all(|&i| i < frame.len()));
        Event {
            frame: frame.clone(),
            items,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.items.iter().map(|&i| self.frame.labels()[i].as_str())
    }

    /// True if some element occurs more than once.
    pub fn has_repetition(&self) -> bool {
        let mut seen = vec![false; self.frame.len()];
        self.items
            .iter()
            .any(|&i| std::mem::replace(&mut seen[i], true))
    }

    /// Left junction: drop from `self` every occurrence of an element that
    /// does not appear in `other`.
    pub fn left_junction(&self, other: &Event) -> Result<Event> {
        self.frame.ensure_same(&other.frame)?;
        Ok(Event {
            frame: self.frame.clone(),
            items: junction_items(&self.items, &other.items),
        })
    }

    /// Right junction: drop from `other` every occurrence of an element that
    /// does not appear in `self`. Equal to `other.left_junction(self)`.
    pub fn right_junction(&self, other: &Event) -> Result<Event> {
        other.left_junction(self)
    }

    /// The set of distinct elements, forgetting order and multiplicity.
    pub fn project(&self) -> Result<ElementSet> {
        if self.is_empty() {
            return Err(Error::EmptyProjection);
        }
        let mut members = self.items.clone();
        members.sort_unstable();
        members.dedup();
        Ok(ElementSet {
            frame: self.frame.clone(),
            members,
        })
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

impl Eq for Event {}

impl Hash for Event {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.items.hash(state);
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.items, &other.items)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(a,b,b)`, or `∅` for the empty event.
impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        write!(f, "({})", self.labels().collect::<Vec<_>>().join(","))
    }
}

/// A set of frame elements, stored as sorted distinct indices.
///
/// Ordered like events: smaller sets first, then lexicographic by index.
#[derive(Clone)]
pub struct ElementSet {
    frame: Frame,
    members: Vec<usize>,
}

impl ElementSet {
    pub fn new(frame: &Frame, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        for &i in &members {
            frame.check_index(i)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(ElementSet {
            frame: frame.clone(),
            members,
        })
    }

    pub fn from_labels<I, S>(frame: &Frame, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let event = Event::from_labels(frame, labels)?;
        ElementSet::new(frame, event.items)
    }

    pub fn whole(frame: &Frame) -> Self {
        ElementSet {
            frame: frame.clone(),
            members: (0..frame.len()).collect(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.members
            .iter()
            .map(|&i| self.frame.labels()[i].as_str())
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&i| other.contains(i))
            .collect();
        ElementSet {
            frame: self.frame.clone(),
            members,
        }
    }

    /// The repetition-free event listing the members in ascending index order.
    pub fn canonical_event(&self) -> Event {
        Event::from_trusted(&self.frame, self.members.clone())
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(&self.members, &other.members)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().collect::<Vec<_>>().join(","))
    }
}
