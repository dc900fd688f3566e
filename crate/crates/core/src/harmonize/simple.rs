use crate::error::HarmonizeError;
use crate::melody::Melody;
use crate::pitch::{Chord, PitchClass, Scale};

use super::{sustain_until_next, Harmonization};

/// The diatonic triad in which `pc` is the third, or `None` for accidentals.
pub fn matching_chord(scale: &Scale, pc: PitchClass) -> Option<Chord> {
    let degree = scale.degree_of(pc)?;
    // two scale steps below, wrapping within 1..=7
    let root_degree = (degree + 4) % 7 + 1;
    scale.triad(root_degree).ok()
}

/// Indices of notes that get their own chord in the first simple engine:
/// notes strictly longer than every neighbor they have, plus every tonic
/// note, never an accidental.
pub fn main_tone_indices(melody: &Melody) -> Vec<usize> {
    let scale = melody.scale();
    let events = &melody.events;
    (0..events.len())
        .filter(|&i| {
            let event = &events[i];
            if !scale.contains(event.note.pc) {
                return false;
            }
            if event.note.pc == melody.key {
                return true;
            }
            let longer_than_prev = i == 0 || event.duration > events[i - 1].duration;
            let longer_than_next = i + 1 == events.len() || event.duration > events[i + 1].duration;
            longer_than_prev && longer_than_next
        })
        .collect()
}

/// A chord on every main tone: the tonic triad on tonic notes, otherwise the
/// matching chord.
pub fn harmonize_simple1(melody: &Melody) -> Result<Harmonization, HarmonizeError> {
    if melody.is_empty() {
        return Err(HarmonizeError::EmptyMelody);
    }
    let scale = melody.scale();
    let changes = main_tone_indices(melody)
        .into_iter()
        .filter_map(|i| {
            let event = &melody.events[i];
            let chord = if event.note.pc == melody.key {
                Some(melody.tonic_triad())
            } else {
                matching_chord(&scale, event.note.pc)
            };
            chord.map(|c| (event.onset, c))
        })
        .collect();
    Ok(Harmonization::new(
        "simple1",
        sustain_until_next(changes, melody.end()),
    ))
}

/// A matching chord on every diatonic note; accidentals keep the previous
/// chord sounding.
pub fn harmonize_simple2(melody: &Melody) -> Result<Harmonization, HarmonizeError> {
    if melody.is_empty() {
        return Err(HarmonizeError::EmptyMelody);
    }
    let scale = melody.scale();
    let changes = melody
        .events
        .iter()
        .filter_map(|e| matching_chord(&scale, e.note.pc).map(|c| (e.onset, c)))
        .collect();
    Ok(Harmonization::new(
        "simple2",
        sustain_until_next(changes, melody.end()),
    ))
}
