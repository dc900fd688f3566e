use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use harmonizer_core::harmonize::{EngineOptions, Harmonization, Method, RandomSource};
use harmonizer_core::melody_io::{
    parse_musicxml, parse_pitches_txt, quantize_pitch_stream, QuantizeOptions,
};
use harmonizer_core::render::{
    write_chord_symbols, write_midi, write_music_json, write_music_script, RenderConfig,
};
use harmonizer_core::{Melody, Mode, PitchClass, RegionChart};

/// Harmonizes a monophonic melody and writes chord progressions.
#[derive(Parser, Debug)]
#[command(name = "harmonizer", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    harmonize: HarmonizeArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Harmonize a melody file (the default).
    Harmonize(HarmonizeArgs),
    /// Print the 24x24 region chart for a key.
    Chart(ChartArgs),
}

#[derive(Args, Debug)]
struct ChartArgs {
    #[arg(long, value_parser = parse_pitch_class)]
    key: PitchClass,
    #[arg(long, value_enum, default_value_t = ModeArg::Major)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct HarmonizeArgs {
    /// Melody file: a pitch stream (.txt) or MusicXML (.xml, .musicxml).
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Input kind; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    kind: Option<InputKind>,
    /// Comma separated methods.
    #[arg(long, value_delimiter = ',', default_values_t = Method::ALL.to_vec())]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reinterpret the key signature as its relative major or minor.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Comma separated output formats.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = vec![Format::Text])]
    formats: Vec<Format>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u16).range(1..))]
    beats_per_measure: u16,
    /// Median filter width in samples (odd).
    #[arg(long, default_value_t = 5)]
    median_window: usize,
    /// Shortest kept note, in beats.
    #[arg(long, default_value_t = 0.125)]
    min_note: f64,
    /// Spell black keys with sharps in chord symbols.
    #[arg(long)]
    prefer_sharps: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputKind {
    Pitches,
    Musicxml,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Major,
    Minor,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Major => Mode::Major,
            ModeArg::Minor => Mode::Minor,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Midi,
    Musicjs,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Midi => "mid",
            Format::Musicjs => "js",
        }
    }
}

fn parse_pitch_class(s: &str) -> Result<PitchClass, String> {
    PitchClass::parse(s).map_err(|e| e.to_string())
}

fn infer_kind(path: &Path) -> anyhow::Result<InputKind> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("txt") => Ok(InputKind::Pitches),
        Some("xml" | "musicxml") => Ok(InputKind::Musicxml),
        _ => bail!(
            "cannot infer input kind of {}; pass --kind pitches|musicxml",
            path.display()
        ),
    }
}

fn load_melody(args: &HarmonizeArgs, path: &Path) -> anyhow::Result<Melody> {
    let kind = match args.kind {
        Some(k) => k,
        None => infer_kind(path)?,
    };
    let content =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let melody = match kind {
        InputKind::Musicxml => {
            parse_musicxml(&content).with_context(|| format!("parsing {}", path.display()))?
        }
        InputKind::Pitches => {
            let stream = parse_pitches_txt(&content)
                .with_context(|| format!("parsing {}", path.display()))?;
            let opts = QuantizeOptions {
                median_window: args.median_window,
                min_note_beats: args.min_note,
                ..QuantizeOptions::default()
            };
            quantize_pitch_stream(&stream, &opts)?
        }
    };
    Ok(match args.mode {
        Some(m) => melody.with_relative_mode(m.into()),
        None => melody,
    })
}

fn write_outputs(
    args: &HarmonizeArgs,
    melody: &Melody,
    h: &Harmonization,
    cfg: &RenderConfig,
) -> anyhow::Result<()> {
    for format in &args.formats {
        let path = args
            .out
            .join(format!("{}.{}", h.method_name, format.extension()));
        let bytes = match format {
            Format::Text => (write_chord_symbols(h, cfg) + "\n").into_bytes(),
            Format::Json => write_music_json(melody, std::slice::from_ref(h)).into_bytes(),
            Format::Musicjs => write_music_script(melody, h, cfg).into_bytes(),
            Format::Midi => write_midi(melody, h, cfg)?,
        };
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn harmonize(args: &HarmonizeArgs) -> anyhow::Result<()> {
    let Some(path) = &args.input else {
        bail!("--input is required");
    };
    let melody = load_melody(args, path)?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let cfg = RenderConfig {
        prefer_flats: !args.prefer_sharps,
        ..RenderConfig::default()
    };
    let options = EngineOptions {
        beats_per_measure: args.beats_per_measure as usize,
        ..EngineOptions::default()
    };
    for method in &args.methods {
        let mut rng = RandomSource::derive(args.seed, method.name());
        let h = method
            .run(&melody, &options, &mut rng)
            .with_context(|| format!("method {method} with seed {}", args.seed))?;
        write_outputs(args, &melody, &h, &cfg)?;
        println!("{}", write_chord_symbols(&h, &cfg));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Some(Command::Chart(c)) => {
            print!("{}", RegionChart::new(c.key, c.mode.into()).render());
            Ok(())
        }
        Some(Command::Harmonize(args)) => harmonize(args),
        None => harmonize(&cli.harmonize),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
