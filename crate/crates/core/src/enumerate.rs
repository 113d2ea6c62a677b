//! Event-space enumeration in canonical order.

use crate::error::{Error, Result};
use crate::event::Event;
use crate::frame::Frame;

/// Number of nonempty tuples of length at most `max_len` over `frame_size`
/// elements, or `None` on overflow.
pub fn r2es_size(frame_size: usize, max_len: usize) -> Option<u128> {
    let m = frame_size as u128;
    let mut power: u128 = 1;
    let mut total: u128 = 0;
    for _ in 0..max_len {
        power = power.checked_mul(m)?;
        total = total.checked_add(power)?;
    }
    Some(total)
}

/// Lazily walks every nonempty tuple of length `1..=max_len`, shortest
/// first and lexicographic by element index within a length.
#[derive(Debug, Clone)]
pub struct R2esIter {
    frame: Frame,
    max_len: usize,
    current: Vec<usize>,
    done: bool,
}

impl R2esIter {
    pub fn new(frame: &Frame, max_len: usize) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(R2esIter {
            frame: frame.clone(),
            max_len,
            current: vec![0],
            done: false,
        })
    }

    fn advance(&mut self) {
        let m = self.frame.len();
        for slot in self.current.iter_mut().rev() {
            *slot += 1;
            if *slot < m {
                return;
            }
            *slot = 0;
        }
        // Odometer wrapped: move on to the next length.
        if self.current.len() == self.max_len {
            self.done = true;
        } else {
            self.current = vec![0; self.current.len() + 1];
        }
    }
}

impl Iterator for R2esIter {
    type Item = Event;

    fn next(&mut self) -> Option<Event> {
        if self.done {
            return None;
        }
        let event = Event::from_trusted(&self.frame, self.current.clone());
        self.advance();
        Some(event)
    }
}

/// Every nonempty tuple over `frame` up to length `max_len`, canonical order.
pub fn enumerate_r2es(frame: &Frame, max_len: usize) -> Result<Vec<Event>> {
    Ok(R2esIter::new(frame, max_len)?.collect())
}

/// The repetition-free permutation event space: the empty event followed by
/// every arrangement of distinct elements of length `1..=|frame|`.
pub fn enumerate_pes(frame: &Frame) -> Vec<Event> {
    let m = frame.len();
    let mut out = vec![Event::empty(frame)];
    for len in 1..=m {
        let mut prefix = Vec::with_capacity(len);
        let mut used = vec![false; m];
        arrangements(frame, len, &mut prefix, &mut used, &mut out);
    }
    out
}

fn arrangements(
    frame: &Frame,
    len: usize,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Event>,
) {
    if prefix.len() == len {
        out.push(Event::from_trusted(frame, prefix.clone()));
        return;
    }
    for i in 0..used.len() {
        if !used[i] {
            used[i] = true;
            prefix.push(i);
            arrangements(frame, len, prefix, used, out);
            prefix.pop();
            used[i] = false;
        }
    }
}
