//! Junctional sums, their conflict coefficients, chained fusion, and the
//! classical set-level rule that the junctional sums degenerate to.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::event::{junction_items, ElementSet, Event};
use crate::mass::{MassFunction, SetMassFunction};

/// Which operand's order and multiplicities survive a junction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Left,
    Right,
}

impl Rule {
    pub const ALL: [Rule; 2] = [Rule::Left, Rule::Right];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Left => "left",
            Rule::Right => "right",
        }
    }

    fn junction(self, first: &[usize], second: &[usize]) -> Vec<usize> {
        match self {
            Rule::Left => junction_items(first, second),
            Rule::Right => junction_items(second, first),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "left" => Ok(Rule::Left),
            "right" => Ok(Rule::Right),
            other => Err(format!("unknown rule '{other}' (expected left or right)")),
        }
    }
}

/// Result of one combination or of a chain of them.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionOutcome {
    pub result: MassFunction,
    /// Conflict consumed by normalization; for chains, `1 - Π(1 - K_step)`.
    pub conflict: f64,
    /// Rule applied at each step, in fold order. Empty for a one-source chain.
    pub rules: Vec<Rule>,
    /// Positions of the operands in the caller's source list, in fold order.
    pub operands: Vec<usize>,
}

struct Step {
    result: MassFunction,
    conflict: f64,
}

/// One junctional sum. `None` signals total conflict.
fn combine_step(rule: Rule, first: &MassFunction, second: &MassFunction) -> Result<Option<Step>> {
    first.frame().ensure_same(second.frame())?;
    // Right is left with the operands swapped; sharing the loop keeps the two bit-identical.
    let (first, second) = match rule {
        Rule::Left => (first, second),
        Rule::Right => (second, first),
    };
    let frame = first.frame();
    let mut acc: BTreeMap<Event, f64> = BTreeMap::new();
    let mut conflict = 0.0;
    for (b, mb) in first.iter() {
        for (c, mc) in second.iter() {
            let items = junction_items(b.items(), c.items());
            let product = mb * mc;
            if items.is_empty() {
                conflict += product;
            } else {
                *acc.entry(Event::from_trusted(frame, items)).or_insert(0.0) += product;
            }
        }
    }
    let scale = 1.0 - conflict;
    if acc.is_empty() || scale <= 0.0 {
        return Ok(None);
    }
    let focal = acc
        .into_iter()
        .map(|(e, m)| (e, m / scale))
        .filter(|&(_, m)| m > 0.0)
        .collect();
    Ok(Some(Step {
        result: MassFunction::from_parts(frame, focal),
        conflict,
    }))
}

fn pair_conflict(rule: Rule, first: &MassFunction, second: &MassFunction) -> Result<f64> {
    first.frame().ensure_same(second.frame())?;
    let mut conflict = 0.0;
    for (b, mb) in first.iter() {
        for (c, mc) in second.iter() {
            if rule.junction(b.items(), c.items()).is_empty() {
                conflict += mb * mc;
            }
        }
    }
    Ok(conflict)
}

/// Mass of the focal pairs whose left junction is empty.
pub fn conflict_left(first: &MassFunction, second: &MassFunction) -> Result<f64> {
    pair_conflict(Rule::Left, first, second)
}

/// Mass of the focal pairs whose right junction is empty.
pub fn conflict_right(first: &MassFunction, second: &MassFunction) -> Result<f64> {
    pair_conflict(Rule::Right, first, second)
}

pub fn conflict(rule: Rule, first: &MassFunction, second: &MassFunction) -> Result<f64> {
    pair_conflict(rule, first, second)
}

/// Combine two mass functions with the given junction, normalizing away the
/// mass that falls on the empty event.
pub fn combine(rule: Rule, first: &MassFunction, second: &MassFunction) -> Result<FusionOutcome> {
    let step = combine_step(rule, first, second)?.ok_or(Error::TotalConflict { step: 1 })?;
    Ok(FusionOutcome {
        result: step.result,
        conflict: step.conflict,
        rules: vec![rule],
        operands: vec![0, 1],
    })
}

pub fn left_junctional_sum(first: &MassFunction, second: &MassFunction) -> Result<FusionOutcome> {
    combine(Rule::Left, first, second)
}

pub fn right_junctional_sum(first: &MassFunction, second: &MassFunction) -> Result<FusionOutcome> {
    combine(Rule::Right, first, second)
}

/// Fold `sources` left to right with a single rule.
pub fn chain(rule: Rule, sources: &[&MassFunction]) -> Result<FusionOutcome> {
    let rules = vec![rule; sources.len().saturating_sub(1)];
    chain_mixed(&rules, sources)
}

/// Fold `sources` left to right, applying `rules[i]` when adding source `i + 1`.
pub fn chain_mixed(rules: &[Rule], sources: &[&MassFunction]) -> Result<FusionOutcome> {
    let (head, tail) = sources.split_first().ok_or(Error::NoSources)?;
    if rules.len() != tail.len() {
        return Err(Error::RuleCountMismatch {
            expected: tail.len(),
            found: rules.len(),
        });
    }
    let mut result = (*head).clone();
    let mut survival = 1.0;
    for (i, (&rule, next)) in rules.iter().zip(tail).enumerate() {
        let step =
            combine_step(rule, &result, next)?.ok_or(Error::TotalConflict { step: i + 1 })?;
        survival *= 1.0 - step.conflict;
        result = step.result;
    }
    Ok(FusionOutcome {
        result,
        conflict: 1.0 - survival,
        rules: rules.to_vec(),
        operands: (0..sources.len()).collect(),
    })
}

/// Dempster's rule on set-level mass functions.
pub fn dempster_combine(
    first: &SetMassFunction,
    second: &SetMassFunction,
) -> Result<SetMassFunction> {
    first.frame().ensure_same(second.frame())?;
    let frame = first.frame();
    let mut acc: BTreeMap<ElementSet, f64> = BTreeMap::new();
    let mut conflict = 0.0;
    for (a, ma) in first.iter() {
        for (b, mb) in second.iter() {
            let meet = a.intersection(b);
            if meet.is_empty() {
                conflict += ma * mb;
            } else {
                *acc.entry(meet).or_insert(0.0) += ma * mb;
            }
        }
    }
    let scale = 1.0 - conflict;
    if acc.is_empty() || scale <= 0.0 {
        return Err(Error::TotalConflict { step: 1 });
    }
    let focal = acc
        .into_iter()
        .map(|(s, m)| (s, m / scale))
        .filter(|&(_, m)| m > 0.0)
        .collect();
    Ok(SetMassFunction::from_parts(frame, focal))
}

/// Left fold of [`dempster_combine`].
pub fn dempster_chain(sources: &[&SetMassFunction]) -> Result<SetMassFunction> {
    let (head, tail) = sources.split_first().ok_or(Error::NoSources)?;
    tail.iter()
        .enumerate()
        .try_fold((*head).clone(), |acc, (i, next)| {
            dempster_combine(&acc, next).map_err(|e| match e {
                Error::TotalConflict { .. } => Error::TotalConflict { step: i + 1 },
                other => other,
            })
        })
}
