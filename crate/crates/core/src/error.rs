use thiserror::Error;

/// Errors raised by the pitch kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PitchError {
    #[error("unknown pitch name `{0}`")]
    UnknownPitch(String),
    #[error("unknown chord symbol `{0}`")]
    UnknownChord(String),
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("degree {0} is outside 1..=7")]
    Degree(usize),
    #[error("degree {degree} stacks to an unsupported triad (third {third}, fifth {fifth})")]
    UnsupportedTriad { degree: usize, third: u8, fifth: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("position ({row}, {col}) is outside the 24x24 chart")]
    OutOfRange { row: i32, col: i32 },
    #[error("moving {dir} from ({row}, {col}) leaves the chart")]
    Boundary { row: usize, col: usize, dir: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarmonizeError {
    #[error("walk found no legal direction after {draws} draws at step {step}")]
    RetryExhausted { step: usize, draws: usize },
    #[error("walk needs at least 2 base steps, got {0}")]
    TooFewSteps(usize),
    #[error("melody has no notes")]
    EmptyMelody,
    #[error("invalid walk parameters: {0}")]
    Params(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("token {position}: cannot parse `{token}` as {expected}")]
    Token {
        position: usize,
        token: String,
        expected: &'static str,
    },
    #[error("pitch stream header is incomplete")]
    MissingHeader,
    #[error("declared {declared} samples, found {found}")]
    Length { declared: usize, found: usize },
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("note content before the {0} header tag")]
    State(&'static str),
    #[error("tie stop without an open tie")]
    Tie,
    #[error("cannot parse <{tag}> value `{value}`")]
    Number { tag: String, value: String },
    #[error("fifths {0} outside -7..=7")]
    Fifths(i32),
    #[error("unsupported beat unit `{0}` (only quarter is accepted)")]
    BeatUnit(String),
    #[error("unknown mode `{0}`")]
    Mode(String),
    #[error("invalid quantize options: {0}")]
    Options(String),
    #[error(transparent)]
    Pitch(#[from] PitchError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("note {note} (MIDI {midi}) is outside 0..=127")]
    PitchOutOfRange { note: String, midi: i32 },
    #[error("ticks per quarter must be positive")]
    Division,
}

/// Crate-level error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Pitch(#[from] PitchError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Harmonize(#[from] HarmonizeError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Render(#[from] RenderError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
