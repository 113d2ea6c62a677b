//! Deterministic text rendering.
//!
//! Masses are printed fixed-point, rounding exact decimal ties to even.
//! Events and sets appear in canonical order. Mass functions and documents
//! render as valid `.ev` text; reports are written with `#` comment lines
//! around `.ev` blocks so that their output can be fed back to the parser.

use std::fmt::Write;

use super::EvidenceDocument;
use crate::decision::DecisionReport;
use crate::event::{ElementSet, Event};
use crate::frame::Frame;
use crate::laws::{Evidence, PropertyReport};
use crate::mass::{MassFunction, SetMassFunction};

/// Digits after the decimal point, 1 to 17.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision(u8);

impl Precision {
    pub const DEFAULT: Precision = Precision(6);
    pub const FULL: Precision = Precision(17);

    pub fn new(digits: u8) -> Option<Self> {
        (1..=17).contains(&digits).then_some(Precision(digits))
    }

    pub fn digits(self) -> usize {
        self.0 as usize
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

pub fn format_mass(value: f64, precision: Precision) -> String {
    format!("{:.*}", precision.digits(), value)
}

fn event_tokens(event: &Event) -> String {
    event.labels().collect::<Vec<_>>().join(" ")
}

fn set_tokens(set: &ElementSet) -> String {
    format!("{{{}}}", set.labels().collect::<Vec<_>>().join(" "))
}

fn deviation(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        "inf".into()
    }
}

pub trait Render {
    fn render(&self, precision: Precision) -> String;
}

/// One `labels : mass` line per focal event.
impl Render for MassFunction {
    fn render(&self, precision: Precision) -> String {
        let mut out = String::new();
        for (event, mass) in self.iter() {
            let _ = writeln!(
                out,
                "{} : {}",
                event_tokens(event),
                format_mass(mass, precision)
            );
        }
        out
    }
}

/// One `{labels} : mass` line per focal set.
impl Render for SetMassFunction {
    fn render(&self, precision: Precision) -> String {
        let mut out = String::new();
        for (set, mass) in self.iter() {
            let _ = writeln!(
                out,
                "{} : {}",
                set_tokens(set),
                format_mass(mass, precision)
            );
        }
        out
    }
}

impl Render for EvidenceDocument {
    fn render(&self, precision: Precision) -> String {
        let mut out = format!("frame: {}\n", self.frame());
        for source in self.sources() {
            write_source(&mut out, &source.name, &source.mass, precision);
        }
        out
    }
}

fn write_source(out: &mut String, name: &str, mass: &MassFunction, precision: Precision) {
    let _ = writeln!(out, "source {name}");
    out.push_str(&mass.render(precision));
    out.push_str("end\n");
}

fn write_comment_block(out: &mut String, indent: &str, text: &str) {
    for line in text.lines() {
        let _ = writeln!(out, "#{indent}{line}");
    }
}

/// A complete document holding a single named source.
pub fn render_mass_document(
    frame: &Frame,
    name: &str,
    mass: &MassFunction,
    precision: Precision,
) -> String {
    let mut out = format!("frame: {frame}\n");
    write_source(&mut out, name, mass, precision);
    out
}

impl Render for PropertyReport {
    fn render(&self, precision: Precision) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut out = format!(
            "{status} {} max-deviation {}: {}\n",
            self.name,
            deviation(self.max_deviation),
            self.summary
        );
        if let Some(witness) = &self.witness {
            let _ = writeln!(out, "  {}", witness.note);
            for (label, value) in &witness.values {
                let _ = writeln!(out, "  {label}:");
                let body = match value {
                    Evidence::Events(m) => m.render(precision),
                    Evidence::Sets(m) => m.render(precision),
                };
                for line in body.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        out
    }
}

/// Rendered as an `.ev` document: one source per expert-led chain plus a
/// `decision` source, with the shared projection and the support table in
/// comments.
impl Render for DecisionReport {
    fn render(&self, precision: Precision) -> String {
        let frame = self.decision.frame();
        let noun = if self.experts.len() == 1 {
            "expert"
        } else {
            "experts"
        };
        let mut out = format!(
            "# winner-take-all decision over {} {noun}: {}\n",
            self.experts.len(),
            self.experts.join(" ")
        );
        let _ = writeln!(out, "frame: {frame}");
        for outcome in &self.outcomes {
            let order: Vec<&str> = outcome
                .operands
                .iter()
                .map(|&i| self.experts[i].as_str())
                .collect();
            let _ = writeln!(
                out,
                "# left chain {} conflict {}",
                order.join(" "),
                format_mass(outcome.conflict, precision)
            );
            write_source(
                &mut out,
                &format!("led-by-{}", order[0]),
                &outcome.result,
                precision,
            );
        }
        out.push_str("# shared projection\n");
        write_comment_block(&mut out, "   ", &self.shared.render(precision));
        out.push_str("# support per projection class; * marks the winner\n");
        for class in &self.classes {
            let cells: Vec<String> = class
                .candidates
                .iter()
                .map(|(e, s)| {
                    let mark = if *e == class.winner { "*" } else { "" };
                    format!("{mark}{} = {}", event_tokens(e), format_mass(*s, precision))
                })
                .collect();
            let tie = if class.tied {
                " (tie broken by canonical order)"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "#   {} : {}{tie}",
                set_tokens(&class.set),
                cells.join(" | ")
            );
        }
        write_source(&mut out, "decision", &self.decision, precision);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::left_junctional_sum;
    use crate::test_support::{abc, mass};

    #[test]
    fn precision_bounds() {
        assert!(Precision::new(0).is_none());
        assert!(Precision::new(18).is_none());
        assert_eq!(Precision::new(17), Some(Precision::FULL));
        assert_eq!(Precision::default().digits(), 6);
    }

    #[test]
    fn ties_round_to_even() {
        let p1 = Precision::new(1).unwrap();
        assert_eq!(format_mass(0.25, p1), "0.2");
        assert_eq!(format_mass(0.75, p1), "0.8");
        assert_eq!(format_mass(0.125, Precision::new(2).unwrap()), "0.12");
    }

    #[test]
    fn certain_mass_default_precision() {
        let f = abc();
        assert_eq!(
            mass(&f, &[("a", 1.0)]).render(Precision::DEFAULT),
            "a : 1.000000\n"
        );
    }

    #[test]
    fn worked_left_sum_at_three_digits() {
        let f = abc();
        let m1 = mass(&f, &[("ab", 0.4), ("b", 0.3), ("aac", 0.3)]);
        let m2 = mass(&f, &[("ba", 0.2), ("bb", 0.3), ("ca", 0.3), ("acc", 0.2)]);
        let out = left_junctional_sum(&m1, &m2).unwrap().result;
        assert_eq!(
            out.render(Precision::new(3).unwrap()),
            "a : 0.263\nb : 0.355\na a : 0.079\na b : 0.105\na a c : 0.197\n"
        );
    }

    #[test]
    fn set_rendering() {
        let f = abc();
        let m = mass(&f, &[("ab", 0.4), ("b", 0.3), ("aac", 0.3)]).project();
        assert_eq!(
            m.render(Precision::new(1).unwrap()),
            "{b} : 0.3\n{a b} : 0.4\n{a c} : 0.3\n"
        );
    }
}
