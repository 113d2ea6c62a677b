use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered frame of discernment.
///
/// Element order is significant: the position of a label is its index, and
/// every canonical ordering in this crate is derived from it. Cloning is
/// cheap; clones share the label table.
#[derive(Clone)]
pub struct Frame {
    inner: Arc<FrameInner>,
}

struct FrameInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// Returns true if `label` is a usable element token: non-empty and free of
/// whitespace, `#` and `:`.
pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || c == '#' || c == ':')
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ordered = Vec::new();
        let mut index = HashMap::new();
        for label in labels {
            let label = label.into();
            if !is_valid_label(&label) {
                return Err(Error::MalformedLabel(label));
            }
            if index.insert(label.clone(), ordered.len()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            ordered.push(label);
        }
        if ordered.is_empty() {
            return Err(Error::EmptyFrame);
        }
        Ok(Frame {
            inner: Arc::new(FrameInner {
                labels: ordered,
                index,
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    /// Always false; frames are never empty. Present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.inner.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                size: self.len(),
            })
        }
    }

    pub(crate) fn ensure_same(&self, other: &Frame) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({})", self.labels().join(", "))
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(" "))
    }
}
