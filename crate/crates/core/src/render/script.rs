use std::fmt::Write as _;

use crate::harmonize::Harmonization;
use crate::melody::Melody;

use super::RenderConfig;

fn seconds(beats: f64, bpm: f64) -> String {
    format!("{:.6}", beats * 60.0 / bpm)
}

fn sample_urls() -> Vec<String> {
    let mut names: Vec<String> = (0..=7).map(|o| format!("A{o}")).collect();
    names.extend((1..=8).map(|o| format!("C{o}")));
    names
}

/// Tone.js playback script: a sampled piano, the tempo, `melody`, `key`,
/// `mode` and `chords` constants, and the parts that play them. Times and
/// durations are quoted seconds with six decimals.
pub fn write_music_script(melody: &Melody, h: &Harmonization, cfg: &RenderConfig) -> String {
    let bpm = cfg.bpm(melody);
    let mut out = String::new();
    out.push_str("// Tone.sampler section\n\nconst sampler = new Tone.Sampler({\n  urls: {\n");
    let urls = sample_urls();
    for (i, name) in urls.iter().enumerate() {
        let comma = if i + 1 < urls.len() { "," } else { "" };
        let _ = writeln!(out, "    \"{name}\": \"{name}.mp3\"{comma}");
    }
    out.push_str("  },\n  baseUrl: \"pianoSamples/\"\n}).toDestination();\n\n");
    let _ = writeln!(out, "Tone.Transport.bpm.value = {bpm}\n");

    out.push_str("const melody = [\n");
    for e in &melody.events {
        let _ = writeln!(
            out,
            "  {{'time': '{}', 'note': '{}', 'duration': '{}'}},",
            seconds(e.onset, bpm),
            e.note,
            seconds(e.duration, bpm)
        );
    }
    out.push_str("];\n\n");
    let _ = writeln!(out, "const key = '{}';", melody.key);
    let _ = writeln!(out, "const mode = '{}';\n", melody.mode);

    out.push_str("const chords = [\n");
    for e in &h.events {
        let notes: Vec<String> = e.voicing.iter().map(|n| format!("'{n}'")).collect();
        let _ = writeln!(
            out,
            "  {{'time': '{}', 'note': [{}], 'duration': '{}'}},",
            seconds(e.onset, bpm),
            notes.join(", "),
            seconds(e.duration, bpm)
        );
    }
    out.push_str("];\n\n");
    out.push_str(
        "Tone.loaded().then(() => {\n\
         \x20 const part = new Tone.Part(function(time, value){\n\
         \x20   sampler.triggerAttackRelease(value.note, value.duration, time);\n\
         \x20 }, chords).start(0);\n\
         });\n\n\
         const part = new Tone.Part(function(time, note){\n\
         \x20 sampler.triggerAttackRelease(note.note, note.duration, time);\n\
         }, melody).start(0);\n\n\
         part.humanize = true;\n\
         Tone.Transport.start();\n",
    );
    out
}
