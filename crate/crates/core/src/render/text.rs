use crate::harmonize::Harmonization;

use super::RenderConfig;

/// `method: C1 C2 ...`, one symbol per chord event.
pub fn write_chord_symbols(h: &Harmonization, cfg: &RenderConfig) -> String {
    let mut line = format!("{}:", h.method_name);
    for chord in h.chords() {
        line.push(' ');
        line.push_str(&chord.name(cfg.prefer_flats));
    }
    line
}

/// One line per harmonization.
pub fn write_chord_listing(hs: &[Harmonization], cfg: &RenderConfig) -> String {
    hs.iter()
        .map(|h| write_chord_symbols(h, cfg) + "\n")
        .collect()
}
