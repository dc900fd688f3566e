use serde::{Deserialize, Serialize};

use crate::pitch::{Chord, Mode, Note, PitchClass, Scale};

/// A sounding note, timed in beats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoteEvent {
    pub onset: f64,
    pub note: Note,
    pub duration: f64,
}

impl NoteEvent {
    pub fn new(onset: f64, note: Note, duration: f64) -> Self {
        NoteEvent {
            onset,
            note,
            duration,
        }
    }

    pub fn end(&self) -> f64 {
        self.onset + self.duration
    }
}

/// A monophonic melody with its key, mode and tempo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Melody {
    pub key: PitchClass,
    pub mode: Mode,
    pub bpm: f64,
    pub events: Vec<NoteEvent>,
}

impl Melody {
    pub fn new(key: PitchClass, mode: Mode, bpm: f64, events: Vec<NoteEvent>) -> Self {
        Melody {
            key,
            mode,
            bpm,
            events,
        }
    }

    pub fn scale(&self) -> Scale {
        Scale::new(self.key, self.mode.scale_kind())
    }

    pub fn tonic_triad(&self) -> Chord {
        Chord::new(self.key, self.mode.triad_quality())
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// End of the last note in beats, 0 for an empty melody.
    pub fn end(&self) -> f64 {
        self.events.iter().map(NoteEvent::end).fold(0.0, f64::max)
    }

    /// Same melody with a different mode, keeping the key signature: the
    /// tonic moves to the relative major or minor.
    pub fn with_relative_mode(mut self, mode: Mode) -> Self {
        if mode != self.mode {
            self.key = match mode {
                Mode::Minor => self.key.transpose(-3),
                Mode::Major => self.key.transpose(3),
            };
            self.mode = mode;
        }
        self
    }
}
