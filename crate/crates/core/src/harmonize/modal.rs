use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::HarmonizeError;
use crate::melody::Melody;
use crate::pitch::{Chord, ChordQuality, PitchClass, Scale, ScaleKind};

use super::{Harmonization, SlotGrid};

/// Slots each modal chord is held for.
const BLOCK_SLOTS: usize = 2;
/// Trailing blocks forced onto the home chord.
const HOME_TAIL_BLOCKS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModalKind {
    Dorian,
    PhrygianDominant,
    Lydian,
    Mixolydian,
    Locrian,
}

impl ModalKind {
    pub const ALL: [ModalKind; 5] = [
        ModalKind::Dorian,
        ModalKind::PhrygianDominant,
        ModalKind::Lydian,
        ModalKind::Mixolydian,
        ModalKind::Locrian,
    ];

    pub fn scale_kind(self) -> ScaleKind {
        match self {
            ModalKind::Dorian => ScaleKind::Dorian,
            ModalKind::PhrygianDominant => ScaleKind::PhrygianDominant,
            ModalKind::Lydian => ScaleKind::Lydian,
            ModalKind::Mixolydian => ScaleKind::Mixolydian,
            ModalKind::Locrian => ScaleKind::Locrian,
        }
    }
}

impl fmt::Display for ModalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModalKind::Dorian => "dorian",
            ModalKind::PhrygianDominant => "phrygian-dominant",
            ModalKind::Lydian => "lydian",
            ModalKind::Mixolydian => "mixolydian",
            ModalKind::Locrian => "locrian",
        })
    }
}

impl FromStr for ModalKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModalKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

/// A mode's chord cycle and the chord it comes home to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalProgression {
    pub chords: Vec<Chord>,
    pub home: Chord,
}

fn with_quality(chord: Chord, quality: ChordQuality) -> Chord {
    Chord::new(chord.root, quality)
}

/// Progression over the mode built on `tonic`.
///
/// Dorian plays ii-iii-ii-V of its relative major, phrygian dominant I-II,
/// lydian I-II7, mixolydian I7-bVII, and locrian alternates its relative
/// major's I with the diminished vii.
pub fn modal_progression(tonic: PitchClass, kind: ModalKind) -> ModalProgression {
    let scale = Scale::new(tonic, kind.scale_kind());
    // degrees 1, 2, 4 and 7 stack to plain triads in every mode used here
    let t = |d: usize| scale.triad(d).expect("supported modal degree");
    let chords = match kind {
        ModalKind::Dorian => vec![t(1), t(2), t(1), t(4)],
        ModalKind::PhrygianDominant => vec![t(1), t(2)],
        ModalKind::Lydian => vec![t(1), with_quality(t(2), ChordQuality::Dominant7)],
        ModalKind::Mixolydian => vec![with_quality(t(1), ChordQuality::Dominant7), t(7)],
        ModalKind::Locrian => vec![t(2), t(1)],
    };
    let home = chords[0];
    ModalProgression { chords, home }
}

/// Cycles the mode's progression in two-slot blocks over the melody, with
/// the last two blocks on the home chord. The melody tonic is the modal tonic.
pub fn harmonize_modal(melody: &Melody, kind: ModalKind) -> Result<Harmonization, HarmonizeError> {
    let grid = SlotGrid::for_melody(melody)?;
    let progression = modal_progression(melody.key, kind);
    let blocks = grid.slots.div_ceil(BLOCK_SLOTS);
    let cycled = blocks.saturating_sub(HOME_TAIL_BLOCKS);
    let slots: Vec<Chord> = (0..grid.slots)
        .map(|slot| {
            let block = slot / BLOCK_SLOTS;
            if block < cycled {
                progression.chords[block % progression.chords.len()]
            } else {
                progression.home
            }
        })
        .collect();
    Ok(Harmonization::new(kind.to_string(), grid.events(&slots)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::melody::NoteEvent;
    use crate::pitch::{Mode, Note};

    fn names(p: &ModalProgression) -> Vec<String> {
        p.chords.iter().map(|c| c.name(true)).collect()
    }

    #[test]
    fn progressions() {
        assert_eq!(
            names(&modal_progression(PitchClass::F, ModalKind::Lydian)),
            ["F", "G7"]
        );
        assert_eq!(
            names(&modal_progression(PitchClass::F, ModalKind::Mixolydian)),
            ["F7", "Eb"]
        );
        assert_eq!(
            names(&modal_progression(PitchClass::A, ModalKind::Dorian)),
            ["Am", "Bm", "Am", "D"]
        );
        let locrian = modal_progression(PitchClass::A, ModalKind::Locrian);
        assert_eq!(names(&locrian), ["Bb", "Adim"]);
        assert_eq!(locrian.home.name(true), "Bb");
        assert_eq!(
            names(&modal_progression(
                PitchClass::A,
                ModalKind::PhrygianDominant
            )),
            ["A", "Bb"]
        );
    }

    #[test]
    fn every_mode_and_tonic_builds() {
        for kind in ModalKind::ALL {
            for tonic in PitchClass::all() {
                let p = modal_progression(tonic, kind);
                assert!((2..=4).contains(&p.chords.len()));
            }
        }
    }

    #[test]
    fn twelve_slot_lydian_listing() {
        let events = (0..12)
            .map(|i| NoteEvent::new(i as f64, Note::new(PitchClass::F, 4), 1.0))
            .collect();
        let melody = Melody::new(PitchClass::F, Mode::Major, 120.0, events);
        let h = harmonize_modal(&melody, ModalKind::Lydian).unwrap();
        let got: Vec<String> = h.chords().map(|c| c.name(true)).collect();
        assert_eq!(got.join(" "), "F F G7 G7 F F G7 G7 F F F F");
    }

    #[test]
    fn short_melody_is_all_home() {
        let melody = Melody::new(
            PitchClass::A,
            Mode::Minor,
            120.0,
            vec![NoteEvent::new(0.5, Note::new(PitchClass::A, 4), 2.0)],
        );
        let h = harmonize_modal(&melody, ModalKind::Locrian).unwrap();
        assert_eq!(h.events.len(), 3);
        assert!(h.chords().all(|c| c.name(true) == "Bb"));
    }
}
