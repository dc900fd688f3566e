//! The `pitches.txt` pitch-stream format and its conversion to notes.
//!
//! A file is whitespace-separated: duration in seconds, key name, `major` or
//! `minor`, tempo in bpm, sample count, then that many frequencies in Hz,
//! equally spaced over the duration. Values `<= 0` are unvoiced frames.

use std::fmt::Write as _;

use crate::error::InputError;
use crate::melody::{Melody, NoteEvent};
use crate::pitch::{frequency_to_note, Mode, Note, PitchClass};

#[derive(Debug, Clone, PartialEq)]
pub struct PitchStream {
    pub duration_s: f64,
    pub key: PitchClass,
    pub mode: Mode,
    pub bpm: f64,
    pub samples_hz: Vec<f64>,
    /// Per-sample confidence when the file carries a second column.
    pub confidence: Option<Vec<f64>>,
}

impl PitchStream {
    pub fn sample_spacing(&self) -> f64 {
        self.duration_s / self.samples_hz.len() as f64
    }

    /// Serializes back to the single- or two-column text format.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {}",
            self.duration_s,
            self.key.name(false),
            self.mode,
            self.bpm,
            self.samples_hz.len()
        );
        for (i, hz) in self.samples_hz.iter().enumerate() {
            let _ = write!(out, " {hz}");
            if let Some(conf) = &self.confidence {
                let _ = write!(out, " {}", conf[i]);
            }
        }
        out.push('\n');
        out
    }
}

fn number(tokens: &[&str], position: usize, expected: &'static str) -> Result<f64, InputError> {
    let token = tokens.get(position).ok_or(InputError::MissingHeader)?;
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| InputError::Token {
            position,
            token: token.to_string(),
            expected,
        })
}

fn parse_stream(content: &str, with_confidence: bool) -> Result<PitchStream, InputError> {
    let tokens: Vec<&str> = content.split_whitespace().collect();
    if tokens.len() < 5 {
        return Err(InputError::MissingHeader);
    }
    let duration_s = number(&tokens, 0, "a duration in seconds")?;
    let key = PitchClass::parse(tokens[1]).map_err(|_| InputError::Token {
        position: 1,
        token: tokens[1].to_string(),
        expected: "a key name",
    })?;
    let mode: Mode = tokens[2].parse().map_err(|_| InputError::Token {
        position: 2,
        token: tokens[2].to_string(),
        expected: "major or minor",
    })?;
    let bpm = number(&tokens, 3, "a tempo in bpm")?;
    let declared: usize = tokens[4].parse().map_err(|_| InputError::Token {
        position: 4,
        token: tokens[4].to_string(),
        expected: "a sample count",
    })?;
    let width = if with_confidence { 2 } else { 1 };
    let body = &tokens[5..];
    if body.len() != declared * width {
        return Err(InputError::Length {
            declared,
            found: body.len() / width,
        });
    }
    let mut samples_hz = Vec::with_capacity(declared);
    let mut confidence = Vec::new();
    for i in 0..declared {
        samples_hz.push(number(&tokens, 5 + i * width, "a frequency in Hz")?);
        if with_confidence {
            confidence.push(number(&tokens, 6 + i * width, "a confidence value")?);
        }
    }
    Ok(PitchStream {
        duration_s,
        key,
        mode,
        bpm,
        samples_hz,
        confidence: with_confidence.then_some(confidence),
    })
}

pub fn parse_pitches_txt(content: &str) -> Result<PitchStream, InputError> {
    parse_stream(content, false)
}

/// Variant whose body holds `hz confidence` pairs.
pub fn parse_pitches_txt_with_confidence(content: &str) -> Result<PitchStream, InputError> {
    parse_stream(content, true)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizeOptions {
    /// Odd median window width in samples.
    pub median_window: usize,
    pub min_note_beats: f64,
    pub snap_grid_beats: f64,
    /// Samples below this confidence take the last confident frequency.
    /// Ignored for streams without a confidence column.
    pub min_confidence: Option<f64>,
}

impl Default for QuantizeOptions {
    fn default() -> Self {
        QuantizeOptions {
            median_window: 5,
            min_note_beats: 0.125,
            snap_grid_beats: 0.25,
            min_confidence: None,
        }
    }
}

impl QuantizeOptions {
    pub fn validate(&self) -> Result<(), InputError> {
        if self.median_window == 0 || self.median_window.is_multiple_of(2) {
            return Err(InputError::Options(format!(
                "median window must be odd and positive, got {}",
                self.median_window
            )));
        }
        if [self.min_note_beats, self.snap_grid_beats]
            .iter()
            .any(|v| v.is_nan() || *v <= 0.0)
        {
            return Err(InputError::Options("thresholds must be positive".into()));
        }
        Ok(())
    }
}

fn is_voiced(hz: f64) -> bool {
    hz > 0.0
}

/// Sliding median over voiced samples; unvoiced frames stay as they are and
/// are left out of every window. Windows are truncated at the edges, and an
/// even number of voiced values averages the middle pair.
pub fn median_filter(samples: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    let mut sorted: Vec<f64> = Vec::with_capacity(window);
    let insert = |sorted: &mut Vec<f64>, v: f64| {
        let at = sorted.partition_point(|x| *x < v);
        sorted.insert(at, v);
    };
    for v in samples.iter().take(half).copied().filter(|v| is_voiced(*v)) {
        insert(&mut sorted, v);
    }
    let mut out = Vec::with_capacity(samples.len());
    for i in 0..samples.len() {
        if let Some(&entering) = samples.get(i + half) {
            if is_voiced(entering) {
                insert(&mut sorted, entering);
            }
        }
        if i > half {
            let leaving = samples[i - half - 1];
            if is_voiced(leaving) {
                let at = sorted.partition_point(|x| *x < leaving);
                sorted.remove(at);
            }
        }
        if !is_voiced(samples[i]) {
            out.push(samples[i]);
            continue;
        }
        let n = sorted.len();
        out.push(if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        });
    }
    out
}

/// Replaces low-confidence samples with the last confident one, or silence
/// when none came before.
fn gate_confidence(samples: &[f64], confidence: &[f64], threshold: f64) -> Vec<f64> {
    let mut last = 0.0;
    samples
        .iter()
        .zip(confidence)
        .map(|(hz, c)| {
            if *c >= threshold {
                last = *hz;
                *hz
            } else {
                last
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    start: f64,
    end: f64,
    note: Note,
}

fn snap(value: f64, grid: f64) -> f64 {
    (value / grid).round() * grid
}

/// Filters, segments and snaps a pitch stream into a melody.
pub fn quantize_pitch_stream(
    stream: &PitchStream,
    opts: &QuantizeOptions,
) -> Result<Melody, InputError> {
    opts.validate()?;
    let mut melody = Melody::new(stream.key, stream.mode, stream.bpm, Vec::new());
    if stream.samples_hz.is_empty() {
        return Ok(melody);
    }
    let gated;
    let raw = match (&stream.confidence, opts.min_confidence) {
        (Some(conf), Some(threshold)) => {
            gated = gate_confidence(&stream.samples_hz, conf, threshold);
            &gated
        }
        _ => &stream.samples_hz,
    };
    let filtered = median_filter(raw, opts.median_window);
    let notes: Vec<Option<Note>> = filtered
        .iter()
        .map(|hz| frequency_to_note(*hz).ok().map(|(n, _)| n))
        .collect();

    let beats_per_sample = stream.sample_spacing() * stream.bpm / 60.0;
    let mut segments: Vec<Segment> = Vec::new();
    let mut i = 0;
    while i < notes.len() {
        let mut j = i + 1;
        while j < notes.len() && notes[j] == notes[i] {
            j += 1;
        }
        if let Some(note) = notes[i] {
            segments.push(Segment {
                start: i as f64 * beats_per_sample,
                end: j as f64 * beats_per_sample,
                note,
            });
        }
        i = j;
    }

    // Short blips a semitone or less from a contiguous predecessor extend
    // it; any other short segment becomes silence.
    let mut kept: Vec<Segment> = Vec::with_capacity(segments.len());
    for seg in segments {
        let short = seg.end - seg.start < opts.min_note_beats;
        match kept.last_mut() {
            Some(prev) if prev.end == seg.start && prev.note == seg.note => prev.end = seg.end,
            Some(prev)
                if short
                    && prev.end == seg.start
                    && (prev.note.midi() - seg.note.midi()).abs() <= 1 =>
            {
                prev.end = seg.end
            }
            _ if short => {}
            _ => kept.push(seg),
        }
    }

    let grid = opts.snap_grid_beats;
    for seg in kept {
        let onset = snap(seg.start, grid);
        let duration = snap(seg.end, grid) - onset;
        if duration >= opts.min_note_beats && duration > 0.0 {
            melody
                .events
                .push(NoteEvent::new(onset, seg.note, duration));
        }
    }
    Ok(melody)
}
