//! The `.ev` evidence file format: parsing and deterministic rendering.

mod parse;
mod render;

pub use parse::{is_decimal_literal, parse_document, ParseError, ParseErrorKind};
pub use render::{format_mass, render_mass_document, Precision, Render};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::MassFunction;

#[derive(Clone, Debug, PartialEq)]
pub struct Source {
    pub name: String,
    pub mass: MassFunction,
}

/// A frame and an ordered list of named sources over it.
#[derive(Clone, Debug, PartialEq)]
pub struct EvidenceDocument {
    frame: Frame,
    sources: Vec<Source>,
}

impl EvidenceDocument {
    pub fn new(frame: &Frame, sources: Vec<Source>) -> Result<Self> {
        let mut names = HashSet::new();
        for s in &sources {
            if !crate::frame::is_valid_label(&s.name) {
                return Err(Error::MalformedLabel(s.name.clone()));
            }
            if !names.insert(s.name.as_str()) {
                return Err(Error::DuplicateSource(s.name.clone()));
            }
            frame.ensure_same(s.mass.frame())?;
        }
        Ok(EvidenceDocument {
            frame: frame.clone(),
            sources,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn sources(&self) -> &[Source] {
        &self.sources
    }

    pub fn source(&self, name: &str) -> Option<&MassFunction> {
        self.sources
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.mass)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.sources.iter().map(|s| s.name.as_str())
    }
}
