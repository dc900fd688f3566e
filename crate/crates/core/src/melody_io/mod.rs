//! Melody ingestion from pitch streams and MusicXML.

mod musicxml;
mod pitches;

pub use musicxml::{fifths_to_key, parse_musicxml, parse_musicxml_score, MusicXmlScore};
pub use pitches::{
    median_filter, parse_pitches_txt, parse_pitches_txt_with_confidence, quantize_pitch_stream,
    PitchStream, QuantizeOptions,
};
