//! Melody harmonization over Schoenberg's chart of regions.
//!
//! The crate reads a monophonic melody (from a `pitches.txt` pitch stream or
//! a MusicXML subset), harmonizes it with one of several engines, and writes
//! the result as chord symbols, JSON, a Tone.js music-script or a Standard
//! MIDI File.
//!
//! ```
//! use harmonizer_core::{harmonize, melody_io, render};
//!
//! let xml = r#"<score><divisions>1</divisions><key><fifths>-1</fifths></key>
//!   <note><pitch><step>C</step><octave>5</octave></pitch><duration>1</duration></note>
//!   <note><pitch><step>F</step><octave>4</octave></pitch><duration>2</duration></note>
//! </score>"#;
//! let melody = melody_io::parse_musicxml(xml).unwrap();
//! let h = harmonize::harmonize_simple2(&melody).unwrap();
//! let line = render::write_chord_symbols(&h, &render::RenderConfig::default());
//! assert_eq!(line, "simple2: Am Dm");
//! ```

pub mod error;
pub mod harmonize;
pub mod melody;
pub mod melody_io;
pub mod pitch;
pub mod regions;
pub mod render;

pub use error::{Error, Result};
pub use harmonize::{ChordEvent, EngineOptions, Harmonization, Method, RandomSource};
pub use melody::{Melody, NoteEvent};
pub use pitch::{Chord, ChordQuality, Mode, Note, PitchClass, Scale, ScaleKind};
pub use regions::{Direction, GridPos, RegionChart};
