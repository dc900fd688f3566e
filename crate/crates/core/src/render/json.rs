use serde::{Deserialize, Serialize};

use crate::error::InputError;
use crate::harmonize::{ChordEvent, Harmonization};
use crate::melody::{Melody, NoteEvent};
use crate::pitch::{Chord, Mode, Note, PitchClass};

#[derive(Serialize, Deserialize)]
struct MelodyEntry {
    time: f64,
    note: String,
    duration: f64,
}

#[derive(Serialize, Deserialize)]
struct ChordEntry {
    time: f64,
    chord: String,
    note: Vec<String>,
    duration: f64,
}

#[derive(Serialize, Deserialize)]
struct HarmonizationEntry {
    method: String,
    chords: Vec<ChordEntry>,
}

#[derive(Serialize, Deserialize)]
struct Document {
    key: String,
    mode: Mode,
    bpm: f64,
    melody: Vec<MelodyEntry>,
    harmonizations: Vec<HarmonizationEntry>,
}

/// Melody and harmonizations as one JSON document, times in beats.
pub fn write_music_json(melody: &Melody, harmonizations: &[Harmonization]) -> String {
    let doc = Document {
        key: melody.key.name(false).to_string(),
        mode: melody.mode,
        bpm: melody.bpm,
        melody: melody
            .events
            .iter()
            .map(|e| MelodyEntry {
                time: e.onset,
                note: e.note.to_string(),
                duration: e.duration,
            })
            .collect(),
        harmonizations: harmonizations
            .iter()
            .map(|h| HarmonizationEntry {
                method: h.method_name.clone(),
                chords: h
                    .events
                    .iter()
                    .map(|e| ChordEntry {
                        time: e.onset,
                        chord: e.chord.name(false),
                        note: e.voicing.iter().map(Note::to_string).collect(),
                        duration: e.duration,
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    out
}

/// Reads back a document produced by [`write_music_json`].
pub fn read_music_json(text: &str) -> Result<(Melody, Vec<Harmonization>), InputError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let events = doc
        .melody
        .iter()
        .map(|e| Ok(NoteEvent::new(e.time, Note::parse(&e.note)?, e.duration)))
        .collect::<Result<Vec<_>, InputError>>()?;
    let melody = Melody::new(PitchClass::parse(&doc.key)?, doc.mode, doc.bpm, events);
    let harmonizations = doc
        .harmonizations
        .iter()
        .map(|h| {
            let events = h
                .chords
                .iter()
                .map(|c| {
                    Ok(ChordEvent {
                        onset: c.time,
                        chord: Chord::parse(&c.chord)?,
                        voicing: c
                            .note
                            .iter()
                            .map(|n| Note::parse(n))
                            .collect::<Result<_, _>>()?,
                        duration: c.duration,
                    })
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            Ok(Harmonization::new(h.method.clone(), events))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok((melody, harmonizations))
}
