//! Standard MIDI File (format 1) writer.
//!
//! Three tracks: tempo, melody on channel 0, chords on channel 1. Every
//! event carries its own status byte and notes end with explicit note-offs.
//! All tracks end together at the later of the melody and chord spans.

use crate::error::RenderError;
use crate::harmonize::Harmonization;
use crate::melody::Melody;
use crate::pitch::Note;

use super::RenderConfig;

pub const MELODY_CHANNEL: u8 = 0;
pub const CHORD_CHANNEL: u8 = 1;
pub const VELOCITY: u8 = 80;
const RELEASE_VELOCITY: u8 = 64;

fn push_vlq(out: &mut Vec<u8>, mut value: u32) {
    let mut buf = [0u8; 4];
    let mut i = buf.len() - 1;
    buf[i] = (value & 0x7f) as u8;
    value >>= 7;
    while value > 0 {
        i -= 1;
        buf[i] = (value & 0x7f) as u8 | 0x80;
        value >>= 7;
    }
    out.extend_from_slice(&buf[i..]);
}

fn key_number(note: Note) -> Result<u8, RenderError> {
    let midi = note.midi();
    u8::try_from(midi)
        .ok()
        .filter(|k| *k <= 127)
        .ok_or(RenderError::PitchOutOfRange {
            note: note.to_string(),
            midi,
        })
}

/// Timed events of one track: (tick, sort rank, bytes). Note-offs rank
/// before note-ons at the same tick so repeated keys re-strike cleanly.
struct Track {
    events: Vec<(u32, u8, Vec<u8>)>,
}

impl Track {
    fn new(name: Option<&str>) -> Self {
        let mut events = Vec::new();
        if let Some(name) = name {
            let mut meta = vec![0xff, 0x03];
            push_vlq(&mut meta, name.len() as u32);
            meta.extend_from_slice(name.as_bytes());
            events.push((0, 0, meta));
        }
        Track { events }
    }

    fn note(&mut self, channel: u8, key: u8, on: u32, off: u32) {
        if off <= on {
            return;
        }
        self.events
            .push((on, 2, vec![0x90 | channel, key, VELOCITY]));
        self.events
            .push((off, 1, vec![0x80 | channel, key, RELEASE_VELOCITY]));
    }

    fn encode(mut self, end: u32) -> Vec<u8> {
        self.events.sort_by_key(|(tick, rank, _)| (*tick, *rank));
        let mut body = Vec::new();
        let mut now = 0;
        for (tick, _, bytes) in &self.events {
            push_vlq(&mut body, tick - now);
            body.extend_from_slice(bytes);
            now = *tick;
        }
        push_vlq(&mut body, end.saturating_sub(now));
        body.extend_from_slice(&[0xff, 0x2f, 0x00]);
        let mut chunk = b"MTrk".to_vec();
        chunk.extend_from_slice(&(body.len() as u32).to_be_bytes());
        chunk.extend_from_slice(&body);
        chunk
    }
}

pub fn write_midi(
    melody: &Melody,
    h: &Harmonization,
    cfg: &RenderConfig,
) -> Result<Vec<u8>, RenderError> {
    if cfg.ticks_per_quarter == 0 || cfg.ticks_per_quarter > 0x7fff {
        return Err(RenderError::Division);
    }
    let tpq = cfg.ticks_per_quarter as f64;
    let tick = |beats: f64| (beats * tpq).round().max(0.0) as u32;

    let mut melody_track = Track::new(Some("melody"));
    for e in &melody.events {
        melody_track.note(
            MELODY_CHANNEL,
            key_number(e.note)?,
            tick(e.onset),
            tick(e.end()),
        );
    }
    let mut chord_track = Track::new(Some("chords"));
    for e in &h.events {
        for n in &e.voicing {
            chord_track.note(CHORD_CHANNEL, key_number(*n)?, tick(e.onset), tick(e.end()));
        }
    }
    let end = tick(melody.end().max(h.end()));

    let micros = (60_000_000.0 / cfg.bpm(melody))
        .round()
        .clamp(1.0, 0xff_ffff as f64) as u32;
    let mut tempo_track = Track::new(None);
    tempo_track.events.push((
        0,
        0,
        vec![
            0xff,
            0x51,
            0x03,
            (micros >> 16) as u8,
            (micros >> 8) as u8,
            micros as u8,
        ],
    ));

    let mut out = b"MThd".to_vec();
    out.extend_from_slice(&6u32.to_be_bytes());
    out.extend_from_slice(&1u16.to_be_bytes());
    out.extend_from_slice(&3u16.to_be_bytes());
    out.extend_from_slice(&cfg.ticks_per_quarter.to_be_bytes());
    out.extend(tempo_track.encode(end));
    out.extend(melody_track.encode(end));
    out.extend(chord_track.encode(end));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonize::ChordEvent;
    use crate::melody::NoteEvent;
    use crate::pitch::{Chord, Mode, PitchClass};

    #[test]
    fn vlq_encoding() {
        let enc = |v| {
            let mut out = Vec::new();
            push_vlq(&mut out, v);
            out
        };
        assert_eq!(enc(0), [0x00]);
        assert_eq!(enc(0x7f), [0x7f]);
        assert_eq!(enc(0x80), [0x81, 0x00]);
        assert_eq!(enc(0x3fff), [0xff, 0x7f]);
        assert_eq!(enc(0x0fff_ffff), [0xff, 0xff, 0xff, 0x7f]);
    }

    fn melody(bpm: f64) -> Melody {
        Melody::new(
            PitchClass::C,
            Mode::Major,
            bpm,
            vec![NoteEvent::new(0.0, Note::new(PitchClass::C, 4), 1.0)],
        )
    }

    #[test]
    fn header_and_tempo() {
        let h = Harmonization::new(
            "x",
            vec![ChordEvent::new(0.0, Chord::major(PitchClass::C), 2.0)],
        );
        let bytes = write_midi(&melody(120.0), &h, &RenderConfig::default()).unwrap();
        assert_eq!(
            &bytes[..14],
            &[0x4d, 0x54, 0x68, 0x64, 0, 0, 0, 6, 0, 1, 0, 3, 0x01, 0xe0]
        );
        let tempo = bytes
            .windows(3)
            .position(|w| w == [0xff, 0x51, 0x03])
            .unwrap();
        assert_eq!(&bytes[tempo + 3..tempo + 6], &[0x07, 0xa1, 0x20]);
    }

    #[test]
    fn out_of_range_pitch() {
        let mut m = melody(120.0);
        m.events[0].note = Note::new(PitchClass::G_SHARP, 9);
        assert!(matches!(
            write_midi(
                &m,
                &Harmonization::new("x", vec![]),
                &RenderConfig::default()
            ),
            Err(RenderError::PitchOutOfRange { midi: 128, .. })
        ));
    }
}
