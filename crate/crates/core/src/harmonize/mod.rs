//! Harmonization engines.
//!
//! Every engine turns a [`Melody`] into a [`Harmonization`]: a sorted,
//! non-overlapping list of voiced chord events in beats. The simple engines
//! follow the melody note by note; the chart walk, the major-third cycle and
//! the modal engines lay chords onto a grid of one-beat slots.

mod giant_steps;
mod modal;
mod progression;
mod rng;
mod simple;
mod voicing;
mod walk;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::HarmonizeError;
use crate::melody::Melody;
use crate::pitch::{Chord, Note};

pub use giant_steps::{giant_steps_centers, harmonize_giant_steps, CycleDirection};
pub use modal::{harmonize_modal, modal_progression, ModalKind, ModalProgression};
pub use progression::{
    secondary_dominant, two_five_one_prefix, DominantPolicy, EntryKind, WalkEntry,
};
pub use rng::{derive_seed, RandomSource};
pub use simple::{harmonize_simple1, harmonize_simple2, main_tone_indices, matching_chord};
pub use voicing::voice_chord;
pub use walk::{
    base_step_count, harmonize_schoenberg, schoenberg_walk, SchoenbergParams, MAX_DRAWS,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordEvent {
    pub onset: f64,
    pub chord: Chord,
    pub voicing: Vec<Note>,
    pub duration: f64,
}

impl ChordEvent {
    pub fn new(onset: f64, chord: Chord, duration: f64) -> Self {
        ChordEvent {
            onset,
            chord,
            voicing: voice_chord(chord),
            duration,
        }
    }

    pub fn end(&self) -> f64 {
        self.onset + self.duration
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Harmonization {
    pub method_name: String,
    pub events: Vec<ChordEvent>,
}

impl Harmonization {
    pub fn new(method_name: impl Into<String>, events: Vec<ChordEvent>) -> Self {
        Harmonization {
            method_name: method_name.into(),
            events,
        }
    }

    pub fn chords(&self) -> impl Iterator<Item = Chord> + '_ {
        self.events.iter().map(|e| e.chord)
    }

    pub fn end(&self) -> f64 {
        self.events.last().map(ChordEvent::end).unwrap_or(0.0)
    }
}

/// Builds events from chord onsets, each lasting until the next onset and
/// the last until `end`.
fn sustain_until_next(changes: Vec<(f64, Chord)>, end: f64) -> Vec<ChordEvent> {
    let mut events = Vec::with_capacity(changes.len());
    for (i, (onset, chord)) in changes.iter().enumerate() {
        let until = changes.get(i + 1).map(|c| c.0).unwrap_or(end);
        if until > *onset {
            events.push(ChordEvent::new(*onset, *chord, until - onset));
        }
    }
    events
}

/// One-beat slots from the first onset (floored) to the melody end (ceiled).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotGrid {
    pub start: f64,
    pub slots: usize,
}

impl SlotGrid {
    pub fn for_melody(melody: &Melody) -> Result<Self, HarmonizeError> {
        let first = melody
            .events
            .first()
            .ok_or(HarmonizeError::EmptyMelody)?
            .onset;
        let start = first.floor();
        let end = melody.end().ceil();
        let slots = ((end - start) as usize).max(1);
        Ok(SlotGrid { start, slots })
    }

    /// One event per slot for the given per-slot chords.
    pub fn events(&self, chords: &[Chord]) -> Vec<ChordEvent> {
        chords
            .iter()
            .enumerate()
            .map(|(i, chord)| ChordEvent::new(self.start + i as f64, *chord, 1.0))
            .collect()
    }
}

/// The selectable harmonization methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Simple1,
    Simple2,
    SchoenbergMin,
    SchoenbergMax,
    GiantSteps,
    Dorian,
    PhrygianDominant,
    Lydian,
    Mixolydian,
    Locrian,
}

impl Method {
    pub const ALL: [Method; 10] = [
        Method::Simple1,
        Method::Simple2,
        Method::SchoenbergMin,
        Method::SchoenbergMax,
        Method::GiantSteps,
        Method::Dorian,
        Method::PhrygianDominant,
        Method::Lydian,
        Method::Mixolydian,
        Method::Locrian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Simple1 => "simple1",
            Method::Simple2 => "simple2",
            Method::SchoenbergMin => "schoenberg-min",
            Method::SchoenbergMax => "schoenberg-max",
            Method::GiantSteps => "giant-steps",
            Method::Dorian => "dorian",
            Method::PhrygianDominant => "phrygian-dominant",
            Method::Lydian => "lydian",
            Method::Mixolydian => "mixolydian",
            Method::Locrian => "locrian",
        }
    }

    pub fn is_stochastic(self) -> bool {
        matches!(
            self,
            Method::SchoenbergMin | Method::SchoenbergMax | Method::GiantSteps
        )
    }

    pub fn run(
        self,
        melody: &Melody,
        options: &EngineOptions,
        rng: &mut RandomSource,
    ) -> Result<Harmonization, HarmonizeError> {
        let mut h = match self {
            Method::Simple1 => harmonize_simple1(melody)?,
            Method::Simple2 => harmonize_simple2(melody)?,
            Method::SchoenbergMin => harmonize_schoenberg(
                melody,
                &SchoenbergParams::min_preset_with_measure(options.beats_per_measure),
                rng,
            )?,
            Method::SchoenbergMax => {
                harmonize_schoenberg(melody, &SchoenbergParams::max_preset(), rng)?
            }
            Method::GiantSteps => {
                giant_steps::harmonize_giant_steps_with(melody, options.giant_steps, rng)?
            }
            Method::Dorian => harmonize_modal(melody, ModalKind::Dorian)?,
            Method::PhrygianDominant => harmonize_modal(melody, ModalKind::PhrygianDominant)?,
            Method::Lydian => harmonize_modal(melody, ModalKind::Lydian)?,
            Method::Mixolydian => harmonize_modal(melody, ModalKind::Mixolydian)?,
            Method::Locrian => harmonize_modal(melody, ModalKind::Locrian)?,
        };
        h.method_name = self.name().to_string();
        Ok(h)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// Knobs shared by the engines that are not part of a preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineOptions {
    /// Slots a SchoenbergMin chord is held for.
    pub beats_per_measure: usize,
    pub giant_steps: CycleDirection,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            beats_per_measure: 4,
            giant_steps: CycleDirection::Descending,
        }
    }
}
