use crate::pitch::{Chord, Note, PitchClass};

/// Lowest note of `pc` strictly above `below`.
fn next_above(below: Note, pc: PitchClass) -> Note {
    let gap = below.pc.interval_to(pc);
    let step = if gap == 0 { 12 } else { gap as i32 };
    Note::from_midi(below.midi() + step)
}

/// Fixed close-position voicing: root in octave 2, the third in octave 3,
/// remaining tones stacked upward, and triads doubled at the top with the root.
pub fn voice_chord(chord: Chord) -> Vec<Note> {
    let tones = chord.tones();
    let mut notes = Vec::with_capacity(4);
    notes.push(Note::new(chord.root, 2));
    let mut prev = Note::new(tones[1], 3);
    notes.push(prev);
    for pc in &tones[2..] {
        prev = next_above(prev, *pc);
        notes.push(prev);
    }
    if chord.quality.is_triad() {
        notes.push(next_above(prev, chord.root));
    }
    notes
}
