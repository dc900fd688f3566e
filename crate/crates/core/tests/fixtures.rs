mod common;

use harmonizer_core::melody_io::parse_musicxml_score;
use harmonizer_core::{Mode, Note, PitchClass};

fn names(m: &harmonizer_core::Melody) -> Vec<String> {
    m.events.iter().map(|e| e.note.to_string()).collect()
}

#[test]
fn happy_birthday_reads_in_f() {
    let m = common::happy_birthday();
    assert_eq!((m.key, m.mode, m.bpm), (PitchClass::F, Mode::Major, 120.0));
    assert_eq!(m.events.len(), 25);
    assert_eq!(&names(&m)[..6], ["C4", "C4", "D4", "C4", "F4", "E4"]);
    assert_eq!(m.events[0].duration, 0.75);
    assert_eq!(m.events[1].onset, 0.75);
    assert_eq!(m.events[5].duration, 2.0);
    assert_eq!(m.end(), 25.0);
    for pair in m.events.windows(2) {
        assert_eq!(pair[0].end(), pair[1].onset);
    }
}

#[test]
fn fur_elise_reads_in_a_minor() {
    let text = std::fs::read_to_string(common::fixture("fur_elise.musicxml")).unwrap();
    let score = parse_musicxml_score(&text).unwrap();
    assert!(score.explicit_mode);
    let m = score.melody;
    assert_eq!((m.key, m.mode, m.bpm), (PitchClass::A, Mode::Minor, 72.0));
    assert_eq!(&names(&m)[..4], ["E5", "D#5", "E5", "D#5"]);
    assert_eq!(m.events[0].duration, 0.25);
    let rests = m
        .events
        .windows(2)
        .filter(|w| w[1].onset > w[0].end())
        .count();
    assert_eq!(rests, 5);
    assert_eq!(m.events.last().unwrap().note, Note::new(PitchClass::A, 4));
    assert_eq!(score.total_beats, m.end());
}

#[test]
fn figure_fragment_ties_and_rests() {
    let text = std::fs::read_to_string(common::fixture("figure_fragment.xml")).unwrap();
    let score = parse_musicxml_score(&text).unwrap();
    let m = &score.melody;
    assert_eq!((m.key, m.bpm), (PitchClass::F, 120.0));
    assert_eq!(m.events.len(), 1);
    assert_eq!(m.events[0].onset, 1.1875);
    assert_eq!(m.events[0].duration, 0.1875);
    assert_eq!(m.events[0].note, Note::new(PitchClass::C, 4));
    assert_eq!(score.total_beats, 1.5);
}

#[test]
fn relative_mode_override() {
    let m = common::happy_birthday().with_relative_mode(Mode::Minor);
    assert_eq!((m.key, m.mode), (PitchClass::D, Mode::Minor));
}
