//! Mass functions over permutation events and over element sets, and the
//! maps between the two levels.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::event::{ElementSet, Event};
use crate::frame::Frame;

/// Default tolerance on the total mass.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn check_mass(focal: &dyn std::fmt::Display, mass: f64, tolerance: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 && mass <= 1.0 + tolerance {
        Ok(())
    } else {
        Err(Error::MassOutOfRange {
            focal: focal.to_string(),
            mass,
        })
    }
}

fn check_total(total: f64, tolerance: f64) -> Result<()> {
    if (total - 1.0).abs() <= tolerance {
        Ok(())
    } else {
        Err(Error::NotNormalized { total, tolerance })
    }
}

/// Largest absolute per-key difference, treating missing keys as zero mass.
fn max_abs_diff<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let one_way = |x: &BTreeMap<K, f64>, y: &BTreeMap<K, f64>| {
        x.iter()
            .map(|(k, v)| (v - y.get(k).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// A normalized mass function whose focal elements are permutation events.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: BTreeMap<Event, f64>,
}

impl MassFunction {
    pub fn new(frame: &Frame, assignments: impl IntoIterator<Item = (Event, f64)>) -> Result<Self> {
        Self::with_tolerance(frame, assignments, DEFAULT_TOLERANCE)
    }

    /// Build and validate. Rejects empty events, duplicates, masses outside
    /// (0, 1] and totals further than `tolerance` from 1.
    pub fn with_tolerance(
        frame: &Frame,
        assignments: impl IntoIterator<Item = (Event, f64)>,
        tolerance: f64,
    ) -> Result<Self> {
        let mut focal = BTreeMap::new();
        for (event, mass) in assignments {
            frame.ensure_same(event.frame())?;
            if event.is_empty() {
                return Err(Error::EmptyFocal);
            }
            check_mass(&event, mass, tolerance)?;
            match focal.entry(event) {
                Entry::Occupied(e) => return Err(Error::DuplicateFocal(e.key().to_string())),
                Entry::Vacant(e) => {
                    e.insert(mass);
                }
            }
        }
        check_total(focal.values().sum(), tolerance)?;
        Ok(MassFunction {
            frame: frame.clone(),
            focal,
        })
    }

    /// A single event with mass 1.
    pub fn certain(event: Event) -> Result<Self> {
        let frame = event.frame().clone();
        Self::new(&frame, [(event, 1.0)])
    }

    /// Internal constructor for combination results, which are normalized by construction.
    pub(crate) fn from_parts(frame: &Frame, focal: BTreeMap<Event, f64>) -> Self {
        debug_assert!(focal.keys().all(|e| !e.is_empty()));
        debug_assert!(focal.values().all(|&m| m > 0.0));
        MassFunction {
            frame: frame.clone(),
            focal,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal events with their masses, in canonical event order.
    pub fn iter(&self) -> impl Iterator<Item = (&Event, f64)> + '_ {
        self.focal.iter().map(|(e, &m)| (e, m))
    }

    pub fn focal_events(&self) -> impl Iterator<Item = &Event> + '_ {
        self.focal.keys()
    }

    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    /// Mass of `event`; zero for non-focal events.
    pub fn mass(&self, event: &Event) -> f64 {
        self.focal.get(event).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.focal.values().sum()
    }

    /// True when no focal event repeats an element, i.e. this is an ordinary
    /// permutation mass function.
    pub fn is_rps(&self) -> bool {
        self.focal.keys().all(|e| !e.has_repetition())
    }

    /// Degenerate to a set-level mass function: each event's mass moves to
    /// the set of its elements.
    pub fn project(&self) -> SetMassFunction {
        let mut focal: BTreeMap<ElementSet, f64> = BTreeMap::new();
        for (event, &mass) in &self.focal {
            let set = event.project().expect("focal events are nonempty");
            *focal.entry(set).or_insert(0.0) += mass;
        }
        SetMassFunction {
            frame: self.frame.clone(),
            focal,
        }
    }

    /// Largest per-event mass difference, counting missing events as zero.
    pub fn max_deviation(&self, other: &MassFunction) -> f64 {
        max_abs_diff(&self.focal, &other.focal)
    }

    pub fn same_support(&self, other: &MassFunction) -> bool {
        self.focal.len() == other.focal.len() && self.focal.keys().eq(other.focal.keys())
    }

    /// Identical focal events and every mass within `tol`.
    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        self.frame == other.frame && self.same_support(other) && self.max_deviation(other) <= tol
    }
}

/// A normalized mass function over nonempty element sets (a basic
/// probability assignment).
#[derive(Clone, Debug, PartialEq)]
pub struct SetMassFunction {
    frame: Frame,
    focal: BTreeMap<ElementSet, f64>,
}

impl SetMassFunction {
    pub fn new(
        frame: &Frame,
        assignments: impl IntoIterator<Item = (ElementSet, f64)>,
    ) -> Result<Self> {
        Self::with_tolerance(frame, assignments, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(
        frame: &Frame,
        assignments: impl IntoIterator<Item = (ElementSet, f64)>,
        tolerance: f64,
    ) -> Result<Self> {
        let mut focal = BTreeMap::new();
        for (set, mass) in assignments {
            frame.ensure_same(set.frame())?;
            if set.is_empty() {
                return Err(Error::EmptyFocal);
            }
            check_mass(&set, mass, tolerance)?;
            match focal.entry(set) {
                Entry::Occupied(e) => return Err(Error::DuplicateFocal(e.key().to_string())),
                Entry::Vacant(e) => {
                    e.insert(mass);
                }
            }
        }
        check_total(focal.values().sum(), tolerance)?;
        Ok(SetMassFunction {
            frame: frame.clone(),
            focal,
        })
    }

    /// All mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        let focal = BTreeMap::from([(ElementSet::whole(frame), 1.0)]);
        SetMassFunction {
            frame: frame.clone(),
            focal,
        }
    }

    pub(crate) fn from_parts(frame: &Frame, focal: BTreeMap<ElementSet, f64>) -> Self {
        debug_assert!(focal.keys().all(|s| !s.is_empty()));
        SetMassFunction {
            frame: frame.clone(),
            focal,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementSet, f64)> + '_ {
        self.focal.iter().map(|(s, &m)| (s, m))
    }

    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    pub fn mass(&self, set: &ElementSet) -> f64 {
        self.focal.get(set).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.focal.values().sum()
    }

    /// Represent each focal set by its canonical repetition-free event
    /// (members in ascending frame order).
    pub fn lift(&self) -> MassFunction {
        let focal = self
            .focal
            .iter()
            .map(|(s, &m)| (s.canonical_event(), m))
            .collect();
        MassFunction::from_parts(&self.frame, focal)
    }

    pub fn max_deviation(&self, other: &SetMassFunction) -> f64 {
        max_abs_diff(&self.focal, &other.focal)
    }

    pub fn same_support(&self, other: &SetMassFunction) -> bool {
        self.focal.len() == other.focal.len() && self.focal.keys().eq(other.focal.keys())
    }

    pub fn approx_eq(&self, other: &SetMassFunction, tol: f64) -> bool {
        self.frame == other.frame && self.same_support(other) && self.max_deviation(other) <= tol
    }
}
