//! Single-voice MusicXML reader.
//!
//! Only a small tag subset is understood: `divisions`, `key/fifths` (and
//! `key/mode` when present), `beat-unit`, `per-minute`, `pitch` with `step`,
//! `octave` and `alter`, `rest`, `duration` and `tie`. Everything else is
//! skipped. The header tags must arrive before the first note or rest.
//!
//! Notes may be wrapped in `<note>` elements as in ordinary MusicXML, or
//! appear as a flat sequence of `rest`/`pitch`/`duration`/`tie` tags, in
//! which case each `rest` or `pitch` opens a new note.

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::error::InputError;
use crate::melody::{Melody, NoteEvent};
use crate::pitch::{Mode, Note, PitchClass};

const DEFAULT_BPM: f64 = 120.0;

/// Key of a signature with `fifths` sharps (negative for flats).
pub fn fifths_to_key(fifths: i32, mode: Mode) -> Result<PitchClass, InputError> {
    if !(-7..=7).contains(&fifths) {
        return Err(InputError::Fifths(fifths));
    }
    let origin = match mode {
        Mode::Major => PitchClass::C,
        Mode::Minor => PitchClass::A,
    };
    Ok(origin.transpose(7 * fifths))
}

/// Exact beat positions as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Beats {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Beats {
    const ZERO: Beats = Beats { num: 0, den: 1 };

    fn new(num: i64, den: i64) -> Self {
        let g = gcd(num, den).max(1);
        Beats {
            num: num / g,
            den: den / g,
        }
    }

    fn add(self, other: Beats) -> Beats {
        Beats::new(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }

    fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Default)]
struct PendingNote {
    started: bool,
    rest: bool,
    step: Option<char>,
    octave: Option<i32>,
    alter: i32,
    duration: Option<i64>,
    tie_start: bool,
    tie_stop: bool,
    chord: bool,
}

#[derive(Debug, Default)]
struct Scanner {
    divisions: Option<i64>,
    fifths: Option<i32>,
    mode: Option<Mode>,
    bpm: Option<f64>,
    stack: Vec<String>,
    in_note: bool,
    pending: PendingNote,
    forward: Option<i64>,
    cursor: Beats,
    open_tie: Option<(Beats, Note, Beats)>,
    events: Vec<NoteEvent>,
}

impl Default for Beats {
    fn default() -> Self {
        Beats::ZERO
    }
}

fn parse_num<T: std::str::FromStr>(tag: &str, value: &str) -> Result<T, InputError> {
    value.trim().parse().map_err(|_| InputError::Number {
        tag: tag.to_string(),
        value: value.trim().to_string(),
    })
}

fn step_class(step: char) -> Option<PitchClass> {
    Some(match step.to_ascii_uppercase() {
        'C' => PitchClass::C,
        'D' => PitchClass::D,
        'E' => PitchClass::E,
        'F' => PitchClass::F,
        'G' => PitchClass::G,
        'A' => PitchClass::A,
        'B' => PitchClass::B,
        _ => return None,
    })
}

impl Scanner {
    fn parent_is(&self, name: &str) -> bool {
        self.stack.iter().rev().nth(1).is_some_and(|p| p == name)
    }

    fn inside(&self, name: &str) -> bool {
        self.stack.iter().any(|p| p == name)
    }

    fn divisions(&self) -> Result<i64, InputError> {
        self.divisions.ok_or(InputError::State("divisions"))
    }

    /// Called when a `rest` or `pitch` tag opens note content.
    fn begin_note_content(&mut self) -> Result<(), InputError> {
        self.divisions()?;
        if self.fifths.is_none() {
            return Err(InputError::State("fifths"));
        }
        if !self.in_note && self.pending.started {
            self.flush()?;
        }
        self.pending.started = true;
        Ok(())
    }

    fn start(&mut self, e: &BytesStart<'_>, empty: bool) -> Result<(), InputError> {
        let name = String::from_utf8_lossy(e.local_name().as_ref()).into_owned();
        match name.as_str() {
            "note" => {
                if self.pending.started {
                    self.flush()?;
                }
                self.in_note = true;
            }
            "rest" => {
                self.begin_note_content()?;
                self.pending.rest = true;
            }
            "pitch" => self.begin_note_content()?,
            "chord" if self.in_note => self.pending.chord = true,
            "tie" => {
                let kind = e
                    .try_get_attribute("type")
                    .map_err(|err| InputError::Xml(err.to_string()))?
                    .map(|a| String::from_utf8_lossy(&a.value).into_owned());
                match kind.as_deref() {
                    Some("start") => self.pending.tie_start = true,
                    Some("stop") => self.pending.tie_stop = true,
                    _ => {}
                }
            }
            "sound" => {
                if let Ok(Some(tempo)) = e.try_get_attribute("tempo") {
                    if self.bpm.is_none() {
                        self.bpm = Some(parse_num(
                            "sound tempo",
                            &String::from_utf8_lossy(&tempo.value),
                        )?);
                    }
                }
            }
            "forward" => self.forward = Some(0),
            _ => {}
        }
        if !empty {
            self.stack.push(name);
        } else if name == "note" {
            self.in_note = false;
        }
        Ok(())
    }

    fn end(&mut self, name: &str) -> Result<(), InputError> {
        self.stack.pop();
        match name {
            "note" => {
                self.flush()?;
                self.in_note = false;
            }
            "forward" => {
                if let Some(duration) = self.forward.take() {
                    self.cursor = self.cursor.add(Beats::new(duration, self.divisions()?));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn text(&mut self, value: &str) -> Result<(), InputError> {
        let Some(tag) = self.stack.last().cloned() else {
            return Ok(());
        };
        match tag.as_str() {
            "divisions" => {
                let d: i64 = parse_num(&tag, value)?;
                if d <= 0 {
                    return Err(InputError::Number {
                        tag,
                        value: value.to_string(),
                    });
                }
                self.divisions = Some(d);
            }
            "fifths" => {
                let f: i32 = parse_num(&tag, value)?;
                if !(-7..=7).contains(&f) {
                    return Err(InputError::Fifths(f));
                }
                self.fifths = Some(f);
            }
            "mode" if self.parent_is("key") => {
                self.mode = Some(
                    value
                        .parse()
                        .map_err(|_| InputError::Mode(value.to_string()))?,
                );
            }
            "beat-unit" => {
                if value.trim() != "quarter" {
                    return Err(InputError::BeatUnit(value.trim().to_string()));
                }
            }
            "per-minute" => self.bpm = Some(parse_num(&tag, value)?),
            "step" => {
                let step = value
                    .trim()
                    .chars()
                    .next()
                    .filter(|c| step_class(*c).is_some());
                self.pending.step = Some(step.ok_or_else(|| InputError::Number {
                    tag: tag.clone(),
                    value: value.to_string(),
                })?);
            }
            "octave" => self.pending.octave = Some(parse_num(&tag, value)?),
            "alter" => {
                let alter: f64 = parse_num(&tag, value)?;
                if alter.fract() != 0.0 {
                    return Err(InputError::Number {
                        tag,
                        value: value.to_string(),
                    });
                }
                self.pending.alter = alter as i32;
            }
            "duration" if self.inside("backup") => {}
            "duration" if self.inside("forward") => self.forward = Some(parse_num(&tag, value)?),
            "duration" => {
                let d: i64 = parse_num(&tag, value)?;
                if d < 0 {
                    return Err(InputError::Number {
                        tag,
                        value: value.to_string(),
                    });
                }
                self.pending.duration = Some(d);
            }
            _ => {}
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), InputError> {
        let note = std::mem::take(&mut self.pending);
        if !note.started || note.chord {
            return Ok(());
        }
        // grace notes carry no duration and take no time
        let Some(ticks) = note.duration else {
            return Ok(());
        };
        let duration = Beats::new(ticks, self.divisions()?);
        let onset = self.cursor;
        self.cursor = self.cursor.add(duration);
        if note.rest {
            return Ok(());
        }
        let (Some(step), Some(octave)) = (note.step, note.octave) else {
            return Err(InputError::Xml("pitch without step or octave".into()));
        };
        // alter can cross an octave boundary (B#, Cb)
        let base = Note::new(step_class(step).expect("validated step"), octave).midi();
        let pitch = Note::from_midi(base + note.alter);

        if note.tie_stop {
            let (start, tied, held) = self.open_tie.take().ok_or(InputError::Tie)?;
            let held = held.add(duration);
            if note.tie_start {
                self.open_tie = Some((start, tied, held));
            } else {
                self.emit(start, tied, held);
            }
        } else if note.tie_start {
            if let Some((start, tied, held)) = self.open_tie.take() {
                self.emit(start, tied, held);
            }
            self.open_tie = Some((onset, pitch, duration));
        } else {
            self.emit(onset, pitch, duration);
        }
        Ok(())
    }

    fn emit(&mut self, onset: Beats, note: Note, duration: Beats) {
        self.events
            .push(NoteEvent::new(onset.as_f64(), note, duration.as_f64()));
    }
}

/// Parsed document: the melody plus the time cursor after the last element.
#[derive(Debug, Clone, PartialEq)]
pub struct MusicXmlScore {
    pub melody: Melody,
    /// Total beats covered by notes and rests.
    pub total_beats: f64,
    /// Whether the document named its mode explicitly.
    pub explicit_mode: bool,
}

pub fn parse_musicxml_score(content: &str) -> Result<MusicXmlScore, InputError> {
    let mut reader = Reader::from_str(content);
    reader.config_mut().trim_text(true);
    let mut scanner = Scanner::default();
    loop {
        match reader.read_event() {
            Ok(Event::Start(e)) => scanner.start(&e, false)?,
            Ok(Event::Empty(e)) => scanner.start(&e, true)?,
            Ok(Event::End(e)) => {
                let name = String::from_utf8_lossy(e.local_name().as_ref()).into_owned();
                scanner.end(&name)?;
            }
            Ok(Event::Text(t)) => {
                let value = t
                    .unescape()
                    .map_err(|err| InputError::Xml(err.to_string()))?;
                scanner.text(&value)?;
            }
            Ok(Event::Eof) => break,
            Ok(_) => {}
            Err(err) => {
                return Err(InputError::Xml(format!(
                    "at byte {}: {err}",
                    reader.error_position()
                )))
            }
        }
    }
    scanner.flush()?;
    if let Some((start, note, held)) = scanner.open_tie.take() {
        scanner.emit(start, note, held);
    }
    let fifths = scanner.fifths.ok_or(InputError::State("fifths"))?;
    scanner.divisions()?;
    let mode = scanner.mode.unwrap_or(Mode::Major);
    let key = fifths_to_key(fifths, mode)?;
    let mut events = scanner.events;
    events.sort_by(|a, b| a.onset.total_cmp(&b.onset));
    Ok(MusicXmlScore {
        melody: Melody::new(key, mode, scanner.bpm.unwrap_or(DEFAULT_BPM), events),
        total_beats: scanner.cursor.as_f64(),
        explicit_mode: scanner.mode.is_some(),
    })
}

pub fn parse_musicxml(content: &str) -> Result<Melody, InputError> {
    parse_musicxml_score(content).map(|s| s.melody)
}
