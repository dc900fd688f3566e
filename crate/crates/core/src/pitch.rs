//! Twelve-tone pitch algebra: pitch classes, octave-qualified notes, scales,
//! church modes, triads and seventh chords, and frequency conversion.
//!
//! Pitch classes are stored sharps-only. Flat names are accepted when parsing
//! and can be requested when printing, nothing more.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PitchError;

const SHARP_NAMES: [&str; 12] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];
const FLAT_NAMES: [&str; 12] = [
    "C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B",
];

/// Reference tuning, equal temperament.
pub const A4_HZ: f64 = 440.0;

/// One of the twelve pitch classes, 0 = C through 11 = B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PitchClass(u8);

impl PitchClass {
    pub const C: PitchClass = PitchClass(0);
    pub const C_SHARP: PitchClass = PitchClass(1);
    pub const D: PitchClass = PitchClass(2);
    pub const D_SHARP: PitchClass = PitchClass(3);
    pub const E: PitchClass = PitchClass(4);
    pub const F: PitchClass = PitchClass(5);
    pub const F_SHARP: PitchClass = PitchClass(6);
    pub const G: PitchClass = PitchClass(7);
    pub const G_SHARP: PitchClass = PitchClass(8);
    pub const A: PitchClass = PitchClass(9);
    pub const A_SHARP: PitchClass = PitchClass(10);
    pub const B: PitchClass = PitchClass(11);

    /// Reduces any integer modulo 12.
    pub fn new(semitones: i32) -> Self {
        PitchClass(semitones.rem_euclid(12) as u8)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }

    pub fn transpose(self, semitones: i32) -> Self {
        PitchClass::new(self.0 as i32 + semitones)
    }

    /// Upward distance in semitones from `self` to `other`, in 0..12.
    pub fn interval_to(self, other: PitchClass) -> u8 {
        (other.0 + 12 - self.0) % 12
    }

    pub fn name(self, prefer_flats: bool) -> &'static str {
        if prefer_flats {
            FLAT_NAMES[self.0 as usize]
        } else {
            SHARP_NAMES[self.0 as usize]
        }
    }

    pub fn parse(name: &str) -> Result<Self, PitchError> {
        let trimmed = name.trim();
        SHARP_NAMES
            .iter()
            .position(|n| *n == trimmed)
            .or_else(|| FLAT_NAMES.iter().position(|n| *n == trimmed))
            .map(|i| PitchClass(i as u8))
            .ok_or_else(|| PitchError::UnknownPitch(name.to_string()))
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name(false))
    }
}

impl FromStr for PitchClass {
    type Err = PitchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PitchClass::parse(s)
    }
}

/// A pitch class in a specific octave, scientific pitch notation (C4 = MIDI 60).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Note {
    pub pc: PitchClass,
    pub octave: i32,
}

impl Note {
    pub fn new(pc: PitchClass, octave: i32) -> Self {
        Note { pc, octave }
    }

    pub fn midi(self) -> i32 {
        12 * (self.octave + 1) + self.pc.index() as i32
    }

    pub fn from_midi(midi: i32) -> Self {
        Note {
            pc: PitchClass::new(midi),
            octave: midi.div_euclid(12) - 1,
        }
    }

    pub fn name(self, prefer_flats: bool) -> String {
        format!("{}{}", self.pc.name(prefer_flats), self.octave)
    }

    /// Parses names like `A2`, `C#3`, `Bb4`, `C-1`.
    pub fn parse(name: &str) -> Result<Self, PitchError> {
        let s = name.trim();
        let split = s
            .char_indices()
            .find(|(_, c)| c.is_ascii_digit() || *c == '-')
            .map(|(i, _)| i)
            .ok_or_else(|| PitchError::UnknownPitch(name.to_string()))?;
        let pc = PitchClass::parse(&s[..split])?;
        let octave = s[split..]
            .parse()
            .map_err(|_| PitchError::UnknownPitch(name.to_string()))?;
        Ok(Note { pc, octave })
    }
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.pc, self.octave)
    }
}

impl PartialOrd for Note {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Note {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.midi().cmp(&other.midi())
    }
}

/// Fractional MIDI number for a frequency (A4 = 69 = 440 Hz).
pub fn fractional_midi(hz: f64) -> f64 {
    69.0 + 12.0 * (hz / A4_HZ).log2()
}

pub fn midi_to_frequency(midi: i32) -> f64 {
    A4_HZ * 2f64.powf((midi as f64 - 69.0) / 12.0)
}

/// Nearest equal-tempered note and the deviation from it in cents, in [-50, 50).
pub fn frequency_to_note(hz: f64) -> Result<(Note, f64), PitchError> {
    if !hz.is_finite() || hz <= 0.0 {
        return Err(PitchError::NonPositiveFrequency(hz));
    }
    let fractional = fractional_midi(hz);
    let nearest = (fractional + 0.5).floor();
    let cents = 100.0 * (fractional - nearest);
    Ok((Note::from_midi(nearest as i32), cents))
}

/// Major or minor tonality of a melody or chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Major,
    Minor,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Major => "major",
            Mode::Minor => "minor",
        }
    }

    pub fn scale_kind(self) -> ScaleKind {
        match self {
            Mode::Major => ScaleKind::Major,
            Mode::Minor => ScaleKind::NaturalMinor,
        }
    }

    pub fn triad_quality(self) -> ChordQuality {
        match self {
            Mode::Major => ChordQuality::MajorTriad,
            Mode::Minor => ChordQuality::MinorTriad,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = PitchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "major" | "maj" | "ionian" => Ok(Mode::Major),
            "minor" | "min" | "aeolian" => Ok(Mode::Minor),
            _ => Err(PitchError::UnknownPitch(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScaleKind {
    Major,
    NaturalMinor,
    Dorian,
    Phrygian,
    Lydian,
    Mixolydian,
    Locrian,
    PhrygianDominant,
}

const IONIAN: [u8; 7] = [2, 2, 1, 2, 2, 2, 1];

impl ScaleKind {
    pub const ALL: [ScaleKind; 8] = [
        ScaleKind::Major,
        ScaleKind::NaturalMinor,
        ScaleKind::Dorian,
        ScaleKind::Phrygian,
        ScaleKind::Lydian,
        ScaleKind::Mixolydian,
        ScaleKind::Locrian,
        ScaleKind::PhrygianDominant,
    ];

    /// Step pattern in semitones, always summing to 12.
    pub fn intervals(self) -> [u8; 7] {
        match self.ionian_degree() {
            Some(degree) => {
                let mut pattern = IONIAN;
                pattern.rotate_left(degree - 1);
                pattern
            }
            // fifth mode of harmonic minor
            None => [1, 3, 1, 2, 1, 2, 2],
        }
    }

    /// Which degree of its relative major this mode starts on, for the
    /// rotations of the major scale.
    pub fn ionian_degree(self) -> Option<usize> {
        match self {
            ScaleKind::Major => Some(1),
            ScaleKind::Dorian => Some(2),
            ScaleKind::Phrygian => Some(3),
            ScaleKind::Lydian => Some(4),
            ScaleKind::Mixolydian => Some(5),
            ScaleKind::NaturalMinor => Some(6),
            ScaleKind::Locrian => Some(7),
            ScaleKind::PhrygianDominant => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scale {
    pub tonic: PitchClass,
    pub kind: ScaleKind,
}

impl Scale {
    pub fn new(tonic: PitchClass, kind: ScaleKind) -> Self {
        Scale { tonic, kind }
    }

    pub fn degrees(&self) -> [PitchClass; 7] {
        let mut out = [self.tonic; 7];
        let steps = self.kind.intervals();
        for i in 1..7 {
            out[i] = out[i - 1].transpose(steps[i - 1] as i32);
        }
        out
    }

    pub fn contains(&self, pc: PitchClass) -> bool {
        self.degrees().contains(&pc)
    }

    /// 1-based degree of `pc`, if diatonic.
    pub fn degree_of(&self, pc: PitchClass) -> Option<usize> {
        self.degrees().iter().position(|d| *d == pc).map(|i| i + 1)
    }

    /// The major scale sharing this mode's pitch classes.
    pub fn relative_ionian(&self) -> Option<Scale> {
        let degree = self.kind.ionian_degree()?;
        let offset: u32 = IONIAN[..degree - 1].iter().map(|s| *s as u32).sum();
        Some(Scale::new(
            self.tonic.transpose(-(offset as i32)),
            ScaleKind::Major,
        ))
    }

    /// Triad stacked in thirds on `degree` (1..=7).
    pub fn triad(&self, degree: usize) -> Result<Chord, PitchError> {
        if !(1..=7).contains(&degree) {
            return Err(PitchError::Degree(degree));
        }
        let d = self.degrees();
        let root = d[degree - 1];
        let third = root.interval_to(d[(degree + 1) % 7]);
        let fifth = root.interval_to(d[(degree + 3) % 7]);
        let quality = match (third, fifth) {
            (4, 7) => ChordQuality::MajorTriad,
            (3, 7) => ChordQuality::MinorTriad,
            (3, 6) => ChordQuality::DiminishedTriad,
            _ => {
                return Err(PitchError::UnsupportedTriad {
                    degree,
                    third,
                    fifth,
                })
            }
        };
        Ok(Chord::new(root, quality))
    }
}

pub fn is_diatonic(pc: PitchClass, scale: &Scale) -> bool {
    scale.contains(pc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChordQuality {
    MajorTriad,
    MinorTriad,
    DiminishedTriad,
    Dominant7,
    Minor7,
    Major7,
}

impl ChordQuality {
    pub const ALL: [ChordQuality; 6] = [
        ChordQuality::MajorTriad,
        ChordQuality::MinorTriad,
        ChordQuality::DiminishedTriad,
        ChordQuality::Dominant7,
        ChordQuality::Minor7,
        ChordQuality::Major7,
    ];

    pub fn offsets(self) -> &'static [u8] {
        match self {
            ChordQuality::MajorTriad => &[0, 4, 7],
            ChordQuality::MinorTriad => &[0, 3, 7],
            ChordQuality::DiminishedTriad => &[0, 3, 6],
            ChordQuality::Dominant7 => &[0, 4, 7, 10],
            ChordQuality::Minor7 => &[0, 3, 7, 10],
            ChordQuality::Major7 => &[0, 4, 7, 11],
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            ChordQuality::MajorTriad => "",
            ChordQuality::MinorTriad => "m",
            ChordQuality::DiminishedTriad => "dim",
            ChordQuality::Dominant7 => "7",
            ChordQuality::Minor7 => "m7",
            ChordQuality::Major7 => "maj7",
        }
    }

    pub fn is_triad(self) -> bool {
        self.offsets().len() == 3
    }

    /// True when the third is 3 semitones above the root.
    pub fn has_minor_third(self) -> bool {
        self.offsets()[1] == 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chord {
    pub root: PitchClass,
    pub quality: ChordQuality,
}

impl Chord {
    pub fn new(root: PitchClass, quality: ChordQuality) -> Self {
        Chord { root, quality }
    }

    pub fn major(root: PitchClass) -> Self {
        Chord::new(root, ChordQuality::MajorTriad)
    }

    pub fn minor(root: PitchClass) -> Self {
        Chord::new(root, ChordQuality::MinorTriad)
    }

    pub fn tones(&self) -> Vec<PitchClass> {
        self.quality
            .offsets()
            .iter()
            .map(|o| self.root.transpose(*o as i32))
            .collect()
    }

    pub fn third(&self) -> PitchClass {
        self.root.transpose(self.quality.offsets()[1] as i32)
    }

    pub fn name(&self, prefer_flats: bool) -> String {
        format!("{}{}", self.root.name(prefer_flats), self.quality.suffix())
    }

    /// Inverse of [`Chord::name`] for either spelling.
    pub fn parse(symbol: &str) -> Result<Self, PitchError> {
        let s = symbol.trim();
        let root_len = match s.as_bytes().get(1) {
            Some(b'#') | Some(b'b') => 2,
            _ => 1,
        };
        if s.len() < root_len {
            return Err(PitchError::UnknownChord(symbol.to_string()));
        }
        let root = PitchClass::parse(&s[..root_len])
            .map_err(|_| PitchError::UnknownChord(symbol.to_string()))?;
        let quality = ChordQuality::ALL
            .into_iter()
            .find(|q| q.suffix() == &s[root_len..])
            .ok_or_else(|| PitchError::UnknownChord(symbol.to_string()))?;
        Ok(Chord::new(root, quality))
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(false))
    }
}

impl FromStr for Chord {
    type Err = PitchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Chord::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pcs(names: &[&str]) -> Vec<PitchClass> {
        names
            .iter()
            .map(|n| PitchClass::parse(n).unwrap())
            .collect()
    }

    #[test]
    fn parses_sharps_and_flat_aliases() {
        assert_eq!(PitchClass::parse("C").unwrap().index(), 0);
        assert_eq!(
            PitchClass::parse("Bb").unwrap(),
            PitchClass::parse("A#").unwrap()
        );
        assert_eq!(PitchClass::parse("Bb").unwrap().index(), 10);
        assert_eq!(
            PitchClass::parse("H"),
            Err(PitchError::UnknownPitch("H".into()))
        );
    }

    #[test]
    fn names_respect_flat_preference() {
        assert_eq!(PitchClass::A_SHARP.name(false), "A#");
        assert_eq!(PitchClass::A_SHARP.name(true), "Bb");
        assert_eq!(PitchClass::C.name(true), "C");
    }

    #[test]
    fn transpose_wraps() {
        assert_eq!(PitchClass::C.transpose(7), PitchClass::G);
        assert_eq!(PitchClass::F.transpose(4), PitchClass::A);
        assert_eq!(PitchClass::C.transpose(-3), PitchClass::A);
    }

    #[test]
    fn scale_tables() {
        let f = PitchClass::F;
        assert_eq!(
            Scale::new(f, ScaleKind::Major).degrees().to_vec(),
            pcs(&["F", "G", "A", "A#", "C", "D", "E"])
        );
        assert_eq!(
            Scale::new(f, ScaleKind::NaturalMinor).degrees().to_vec(),
            pcs(&["F", "G", "G#", "A#", "C", "C#", "D#"])
        );
        assert_eq!(
            Scale::new(PitchClass::G, ScaleKind::Dorian)
                .degrees()
                .to_vec(),
            pcs(&["G", "A", "A#", "C", "D", "E", "F"])
        );
        assert_eq!(
            Scale::new(PitchClass::A, ScaleKind::PhrygianDominant)
                .degrees()
                .to_vec(),
            pcs(&["A", "A#", "C#", "D", "E", "F", "G"])
        );
    }

    #[test]
    fn diatonic_membership() {
        let f_major = Scale::new(PitchClass::F, ScaleKind::Major);
        assert!(is_diatonic(PitchClass::A, &f_major));
        assert!(!is_diatonic(PitchClass::F_SHARP, &f_major));
        for kind in ScaleKind::ALL {
            for tonic in PitchClass::all() {
                assert!(is_diatonic(tonic, &Scale::new(tonic, kind)));
            }
        }
    }

    #[test]
    fn diatonic_triads_of_f_major() {
        let f_major = Scale::new(PitchClass::F, ScaleKind::Major);
        assert_eq!(f_major.triad(1).unwrap(), Chord::major(PitchClass::F));
        assert_eq!(f_major.triad(2).unwrap(), Chord::minor(PitchClass::G));
        assert_eq!(
            f_major.triad(7).unwrap(),
            Chord::new(PitchClass::E, ChordQuality::DiminishedTriad)
        );
        assert_eq!(f_major.triad(0), Err(PitchError::Degree(0)));
        assert_eq!(f_major.triad(8), Err(PitchError::Degree(8)));
    }

    #[test]
    fn augmented_triad_is_reported_not_mislabelled() {
        // sixth degree of phrygian dominant stacks a major third on a major third
        let scale = Scale::new(PitchClass::A, ScaleKind::PhrygianDominant);
        assert!(matches!(
            scale.triad(6),
            Err(PitchError::UnsupportedTriad {
                third: 4,
                fifth: 8,
                ..
            })
        ));
    }

    #[test]
    fn chord_tones_and_names() {
        assert_eq!(Chord::major(PitchClass::A).tones(), pcs(&["A", "C#", "E"]));
        let c7 = Chord::new(PitchClass::C, ChordQuality::Dominant7);
        assert_eq!(c7.tones(), pcs(&["C", "E", "G", "A#"]));
        assert_eq!(
            Chord::new(PitchClass::G, ChordQuality::Minor7).tones(),
            pcs(&["G", "A#", "D", "F"])
        );
        assert_eq!(
            Chord::new(PitchClass::E, ChordQuality::DiminishedTriad).name(false),
            "Edim"
        );
        assert_eq!(c7.name(false), "C7");
        assert_eq!(
            Chord::new(PitchClass::F, ChordQuality::Minor7).name(true),
            "Fm7"
        );
        assert_eq!(
            Chord::new(PitchClass::C, ChordQuality::Major7).name(true),
            "Cmaj7"
        );
    }

    #[test]
    fn frequency_conversion_anchors() {
        let (note, cents) = frequency_to_note(440.0).unwrap();
        assert_eq!(note, Note::new(PitchClass::A, 4));
        assert_eq!(cents, 0.0);

        let (note, cents) = frequency_to_note(261.626).unwrap();
        assert_eq!(note, Note::new(PitchClass::C, 4));
        assert!(cents.abs() < 0.01, "{cents}");

        // 69 + 12*log2(394.344/440) = 67.10349...
        let (note, cents) = frequency_to_note(394.344).unwrap();
        assert_eq!(note, Note::new(PitchClass::G, 4));
        assert!((cents - 10.349).abs() < 0.01, "{cents}");

        assert!(frequency_to_note(0.0).is_err());
        assert!(frequency_to_note(-3.0).is_err());
    }

    #[test]
    fn note_names_and_midi() {
        assert_eq!(Note::new(PitchClass::C, 4).midi(), 60);
        assert_eq!(
            Note::parse("A#3").unwrap(),
            Note::new(PitchClass::A_SHARP, 3)
        );
        assert_eq!(
            Note::parse("Bb3").unwrap(),
            Note::new(PitchClass::A_SHARP, 3)
        );
        assert_eq!(Note::parse("C-1").unwrap().midi(), 0);
        assert!(Note::parse("X4").is_err());
    }

    #[test]
    fn major_scale_triad_qualities() {
        use ChordQuality::*;
        for tonic in PitchClass::all() {
            let scale = Scale::new(tonic, ScaleKind::Major);
            let qualities: Vec<_> = (1..=7).map(|d| scale.triad(d).unwrap().quality).collect();
            assert_eq!(
                qualities,
                [
                    MajorTriad,
                    MinorTriad,
                    MinorTriad,
                    MajorTriad,
                    MajorTriad,
                    MinorTriad,
                    DiminishedTriad
                ]
            );
        }
    }

    #[test]
    fn modes_share_relative_major_pitch_set() {
        for kind in ScaleKind::ALL {
            let total: u32 = kind.intervals().iter().map(|s| *s as u32).sum();
            assert_eq!(total, 12, "{kind:?}");
            for tonic in PitchClass::all() {
                let scale = Scale::new(tonic, kind);
                let mut degrees = scale.degrees().to_vec();
                degrees.sort();
                degrees.dedup();
                assert_eq!(degrees.len(), 7);
                if let Some(ionian) = scale.relative_ionian() {
                    let mut relative = ionian.degrees().to_vec();
                    relative.sort();
                    assert_eq!(degrees, relative, "{tonic} {kind:?}");
                }
            }
        }
    }

    #[test]
    fn triad_tones_stay_diatonic() {
        for kind in ScaleKind::ALL {
            for tonic in PitchClass::all() {
                let scale = Scale::new(tonic, kind);
                for degree in 1..=7 {
                    if let Ok(chord) = scale.triad(degree) {
                        assert!(chord.tones().iter().all(|t| scale.contains(*t)));
                    }
                }
            }
        }
    }

    #[test]
    fn frequency_inverts_midi_on_piano_range() {
        for midi in 21..=108 {
            let (note, cents) = frequency_to_note(midi_to_frequency(midi)).unwrap();
            assert_eq!(note.midi(), midi);
            assert!(cents.abs() < 1e-9);
        }
    }

    #[test]
    fn names_round_trip_for_every_chord() {
        for root in PitchClass::all() {
            assert_eq!(PitchClass::parse(root.name(false)).unwrap(), root);
            assert_eq!(PitchClass::parse(root.name(true)).unwrap(), root);
            for quality in ChordQuality::ALL {
                let chord = Chord::new(root, quality);
                let tones = chord.tones();
                let mut distinct = tones.clone();
                distinct.sort();
                distinct.dedup();
                assert_eq!(distinct.len(), tones.len());
                for flats in [false, true] {
                    assert_eq!(Chord::parse(&chord.name(flats)).unwrap(), chord);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn transpose_is_invertible(index in 0i32..12, k in -500i32..500) {
            let pc = PitchClass::new(index);
            prop_assert_eq!(pc.transpose(k).transpose(-k), pc);
            prop_assert_eq!(pc.transpose(12), pc);
            prop_assert!(pc.transpose(k).index() < 12);
        }

        #[test]
        fn midi_round_trips(midi in 0i32..128) {
            prop_assert_eq!(Note::from_midi(midi).midi(), midi);
            let note = Note::from_midi(midi);
            prop_assert_eq!(Note::parse(&note.name(true)).unwrap(), note);
        }

        #[test]
        fn cents_stay_in_half_open_range(hz in 20.0f64..5000.0) {
            let (_, cents) = frequency_to_note(hz).unwrap();
            prop_assert!((-50.0..50.0).contains(&cents));
        }
    }
}
