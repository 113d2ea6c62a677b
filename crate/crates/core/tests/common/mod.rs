#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use r2ps::io::{parse_document, EvidenceDocument};
use r2ps::{ElementSet, Event, Frame, MassFunction, SetMassFunction};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> EvidenceDocument {
    let bytes = std::fs::read(fixture_path(name)).unwrap();
    parse_document(&bytes, 1e-9).unwrap()
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".ev"))
        .collect();
    names.sort();
    names
}

pub fn abc() -> Frame {
    Frame::new(["a", "b", "c"]).unwrap()
}

/// Event from single-character labels, e.g. `"aac"`.
pub fn ev(frame: &Frame, s: &str) -> Event {
    Event::from_labels(frame, s.chars().map(|c| c.to_string())).unwrap()
}

pub fn set(frame: &Frame, s: &str) -> ElementSet {
    ev(frame, s).project().unwrap()
}

pub fn mass(frame: &Frame, focal: &[(&str, f64)]) -> MassFunction {
    MassFunction::new(frame, focal.iter().map(|&(s, m)| (ev(frame, s), m))).unwrap()
}

pub fn set_mass(frame: &Frame, focal: &[(&str, f64)]) -> SetMassFunction {
    SetMassFunction::new(frame, focal.iter().map(|&(s, m)| (set(frame, s), m))).unwrap()
}

/// Events as label strings with masses; single-character labels only.
pub fn as_strings(m: &MassFunction) -> BTreeMap<String, f64> {
    m.iter()
        .map(|(e, v)| (e.labels().collect::<String>(), v))
        .collect()
}

/// Independent reference implementation over plain strings of single
/// characters. Shares no code with the library.
pub mod oracle {
    use super::*;

    pub type Bpa = BTreeMap<String, f64>;

    fn keep(from: &str, against: &str) -> String {
        from.chars().filter(|c| against.contains(*c)).collect()
    }

    /// Junctional sum; `left` selects which operand's order survives.
    pub fn junction_sum(left: bool, m1: &Bpa, m2: &Bpa) -> Option<(Bpa, f64)> {
        let mut acc: HashMap<String, f64> = HashMap::new();
        let mut k = 0.0;
        for (b, x) in m1 {
            for (c, y) in m2 {
                let r = if left { keep(b, c) } else { keep(c, b) };
                if r.is_empty() {
                    k += x * y;
                } else {
                    *acc.entry(r).or_default() += x * y;
                }
            }
        }
        if acc.is_empty() {
            return None;
        }
        Some((
            acc.into_iter().map(|(e, v)| (e, v / (1.0 - k))).collect(),
            k,
        ))
    }

    pub fn to_set(event: &str) -> String {
        event.chars().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn project(m: &Bpa) -> Bpa {
        let mut out = Bpa::new();
        for (e, v) in m {
            *out.entry(to_set(e)).or_default() += v;
        }
        out
    }

    /// Dempster's rule on sets encoded as sorted character strings.
    pub fn dempster(m1: &Bpa, m2: &Bpa) -> Option<Bpa> {
        let mut acc = Bpa::new();
        let mut k = 0.0;
        for (a, x) in m1 {
            for (b, y) in m2 {
                let meet: String = a.chars().filter(|c| b.contains(*c)).collect();
                if meet.is_empty() {
                    k += x * y;
                } else {
                    *acc.entry(meet).or_default() += x * y;
                }
            }
        }
        if acc.is_empty() {
            return None;
        }
        Some(acc.into_iter().map(|(s, v)| (s, v / (1.0 - k))).collect())
    }

    pub fn dempster_fold(ms: &[Bpa]) -> Option<Bpa> {
        let mut acc = ms[0].clone();
        for m in &ms[1..] {
            acc = dempster(&acc, m)?;
        }
        Some(acc)
    }

    pub fn max_diff(a: &Bpa, b: &Bpa) -> f64 {
        a.keys()
            .chain(b.keys())
            .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max)
    }

    pub fn from_pairs(pairs: &[(&str, f64)]) -> Bpa {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }
}

pub fn set_strings(m: &SetMassFunction) -> BTreeMap<String, f64> {
    m.iter()
        .map(|(s, v)| (s.labels().collect::<String>(), v))
        .collect()
}
