//! Multi-expert fusion and winner-take-all decisions.
//!
//! Each expert in turn leads a left chain over the whole panel. All chains
//! share one projection, so they differ only in the order and multiplicity
//! of elements inside each projection class. Summing the chains' masses per
//! event gives a support table; within every class the best-supported event
//! takes the entire class mass.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::event::{ElementSet, Event};
use crate::frame::Frame;
use crate::fusion::{chain, FusionOutcome, Rule};
use crate::mass::{MassFunction, SetMassFunction};

/// Supports closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct ExpertPanel {
    frame: Frame,
    experts: Vec<(String, MassFunction)>,
}

impl ExpertPanel {
    pub fn new(frame: &Frame, experts: Vec<(String, MassFunction)>) -> Result<Self> {
        if experts.is_empty() {
            return Err(Error::EmptyPanel);
        }
        let mut seen = HashSet::new();
        for (name, mass) in &experts {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateExpert(name.clone()));
            }
            frame.ensure_same(mass.frame())?;
        }
        Ok(ExpertPanel {
            frame: frame.clone(),
            experts,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn experts(&self) -> &[(String, MassFunction)] {
        &self.experts
    }

    pub fn len(&self) -> usize {
        self.experts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.experts.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.experts.iter().map(|(n, _)| n.as_str())
    }
}

/// One left chain per expert, that expert first and the rest in panel order.
/// `operands` of each outcome are panel positions in fold order.
pub fn fuse_all_orders(panel: &ExpertPanel) -> Result<Vec<FusionOutcome>> {
    let n = panel.len();
    (0..n)
        .map(|lead| {
            let order: Vec<usize> = std::iter::once(lead)
                .chain((0..n).filter(|&i| i != lead))
                .collect();
            let sources: Vec<&MassFunction> = order.iter().map(|&i| &panel.experts[i].1).collect();
            let mut outcome = chain(Rule::Left, &sources).map_err(|e| match e {
                Error::TotalConflict { step } => Error::OrderingConflict {
                    expert: panel.experts[lead].0.clone(),
                    step,
                },
                other => other,
            })?;
            outcome.operands = order;
            Ok(outcome)
        })
        .collect()
}

/// The decision within one projection class.
#[derive(Clone, Debug, PartialEq)]
pub struct DecisionClass {
    pub set: ElementSet,
    /// Mass of `set` in the shared projection.
    pub mass: f64,
    /// Every event projecting onto `set`, with its summed support, canonical order.
    pub candidates: Vec<(Event, f64)>,
    pub winner: Event,
    /// More than one candidate reached the top support.
    pub tied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionReport {
    pub experts: Vec<String>,
    /// Outcome `i` is the chain led by expert `i`.
    pub outcomes: Vec<FusionOutcome>,
    pub shared: SetMassFunction,
    pub classes: Vec<DecisionClass>,
    pub decision: MassFunction,
}

impl DecisionReport {
    pub fn ties(&self) -> impl Iterator<Item = &DecisionClass> + '_ {
        self.classes.iter().filter(|c| c.tied)
    }

    /// Summed support of `event` across all outcomes.
    pub fn support(&self, event: &Event) -> f64 {
        self.outcomes.iter().map(|o| o.result.mass(event)).sum()
    }
}

pub fn decide(panel: &ExpertPanel) -> Result<DecisionReport> {
    let outcomes = fuse_all_orders(panel)?;
    let shared = outcomes[0].result.project();

    let mut support: BTreeMap<Event, f64> = BTreeMap::new();
    for outcome in &outcomes {
        for (event, mass) in outcome.result.iter() {
            *support.entry(event.clone()).or_insert(0.0) += mass;
        }
    }
    let mut by_class: BTreeMap<ElementSet, Vec<(Event, f64)>> = BTreeMap::new();
    for (event, s) in support {
        let set = event.project().expect("focal events are nonempty");
        by_class.entry(set).or_default().push((event, s));
    }

    let mut classes = Vec::with_capacity(shared.len());
    let mut decision = BTreeMap::new();
    for (set, mass) in shared.iter() {
        let candidates = by_class.remove(set).unwrap_or_default();
        let best = candidates
            .iter()
            .map(|&(_, s)| s)
            .fold(f64::NEG_INFINITY, f64::max);
        // Candidates are in canonical order, so the first near-maximal one wins ties.
        let mut top = candidates
            .iter()
            .filter(|&&(_, s)| best - s <= TIE_TOLERANCE);
        let winner = top
            .next()
            .map(|(e, _)| e.clone())
            .expect("every projected class has a candidate");
        let tied = top.next().is_some();
        decision.insert(winner.clone(), mass);
        classes.push(DecisionClass {
            set: set.clone(),
            mass,
            candidates,
            winner,
            tied,
        });
    }

    Ok(DecisionReport {
        experts: panel.names().map(String::from).collect(),
        outcomes,
        shared,
        classes,
        decision: MassFunction::from_parts(panel.frame(), decision),
    })
}
