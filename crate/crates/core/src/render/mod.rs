//! Output formats: chord-symbol text, JSON, the browser music-script, and
//! Standard MIDI Files.

mod json;
mod midi;
mod script;
mod text;

pub use json::{read_music_json, write_music_json};
pub use midi::{write_midi, CHORD_CHANNEL, MELODY_CHANNEL, VELOCITY};
pub use script::write_music_script;
pub use text::{write_chord_listing, write_chord_symbols};

use crate::melody::Melody;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderConfig {
    /// Print black keys as flats in chord symbols.
    pub prefer_flats: bool,
    /// Replaces the melody tempo in the music-script and MIDI outputs.
    pub bpm_override: Option<f64>,
    pub ticks_per_quarter: u16,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            prefer_flats: true,
            bpm_override: None,
            ticks_per_quarter: 480,
        }
    }
}

impl RenderConfig {
    pub fn bpm(&self, melody: &Melody) -> f64 {
        self.bpm_override.unwrap_or(melody.bpm)
    }
}
