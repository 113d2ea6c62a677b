//! Repeatable random permutation sets.
//!
//! Evidence is expressed as mass over *events*: ordered tuples of frame
//! elements in which elements may repeat. Two evidence sources are combined
//! with the left or right junctional sum, which keep the order and
//! multiplicities of the left or right operand respectively. Projecting an
//! event onto its set of elements degenerates everything to ordinary
//! Dempster-Shafer mass functions, and the junctional sums then agree with
//! Dempster's rule.
//!
//! ```
//! use r2ps::{Event, Frame, MassFunction, fusion};
//!
//! let frame = Frame::new(["a", "b", "c"]).unwrap();
//! let ev = |s: &str| Event::from_labels(&frame, s.split_whitespace()).unwrap();
//! let m1 = MassFunction::new(&frame, [(ev("a b"), 0.4), (ev("b"), 0.3), (ev("a a c"), 0.3)]).unwrap();
//! let m2 = MassFunction::new(&frame, [(ev("b a"), 0.2), (ev("b b"), 0.3), (ev("c a"), 0.3), (ev("a c c"), 0.2)]).unwrap();
//!
//! let out = fusion::left_junctional_sum(&m1, &m2).unwrap();
//! assert_eq!(out.conflict, 0.24);
//! assert!((out.result.mass(&ev("b")) - 0.355).abs() < 5e-4);
//! ```

pub mod cli;
pub mod decision;
pub mod enumerate;
pub mod error;
pub mod event;
pub mod frame;
pub mod fusion;
pub mod io;
pub mod laws;
pub mod mass;
pub mod sample;

pub use decision::{decide, fuse_all_orders, DecisionReport, ExpertPanel};
pub use enumerate::{enumerate_pes, enumerate_r2es};
pub use error::{Error, Result};
pub use event::{ElementSet, Event};
pub use frame::Frame;
pub use fusion::{FusionOutcome, Rule};
pub use laws::PropertyReport;
pub use mass::{MassFunction, SetMassFunction};
