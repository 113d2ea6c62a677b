//! Random mass functions for experiments and randomized testing.

use rand::Rng;

use crate::enumerate::r2es_size;
use crate::event::Event;
use crate::frame::Frame;
use crate::mass::MassFunction;

/// Draw a mass function with between 1 and `max_focal` distinct focal
/// events, each of length `1..=max_len`, with masses proportional to
/// weights drawn from `[0.05, 1)`.
///
/// The number of focal events is capped by the size of the event space.
pub fn random_mass<R: Rng + ?Sized>(
    rng: &mut R,
    frame: &Frame,
    max_len: usize,
    max_focal: usize,
) -> MassFunction {
    assert!(
        max_len >= 1 && max_focal >= 1,
        "max_len and max_focal must be positive"
    );
    let space = r2es_size(frame.len(), max_len).unwrap_or(u128::MAX);
    let count = (rng.gen_range(1..=max_focal) as u128).min(space) as usize;

    let mut events: Vec<Event> = Vec::with_capacity(count);
    while events.len() < count {
        let len = rng.gen_range(1..=max_len);
        let items = (0..len).map(|_| rng.gen_range(0..frame.len())).collect();
        let event = Event::from_trusted(frame, items);
        if !events.contains(&event) {
            events.push(event);
        }
    }
    let weights: Vec<f64> = (0..count).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    MassFunction::new(
        frame,
        events
            .into_iter()
            .zip(weights.into_iter().map(|w| w / total)),
    )
    .expect("normalized random weights form a valid mass function")
}

/// A frame `a, b, c, ...` of the given size (at most 26).
pub fn letter_frame(size: usize) -> Frame {
    assert!(
        (1..=26).contains(&size),
        "letter frames hold 1 to 26 elements"
    );
    Frame::new((b'a'..b'a' + size as u8).map(|c| (c as char).to_string()))
        .expect("letters are valid labels")
}
