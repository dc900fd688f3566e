//! Inputs shared by the benchmarks.

use harmonizer_core::melody_io::PitchStream;
use harmonizer_core::{Melody, Mode, Note, NoteEvent, PitchClass};

/// A repeating F-major scale fragment of `notes` quarter notes.
pub fn scale_melody(notes: usize) -> Melody {
    let pattern = [5, 7, 9, 10, 0, 2, 4];
    let events = (0..notes)
        .map(|i| {
            let pc = PitchClass::new(pattern[i % pattern.len()]);
            NoteEvent::new(i as f64, Note::new(pc, 4), 1.0)
        })
        .collect();
    Melody::new(PitchClass::F, Mode::Major, 120.0, events)
}

/// A stepwise sung line with a jittered outlier every 37 samples.
pub fn noisy_stream(samples: usize) -> PitchStream {
    let samples_hz = (0..samples)
        .map(|i| {
            if i % 37 == 0 {
                1760.0
            } else {
                440.0 * 2f64.powf(((i / 200) % 5) as f64 / 12.0)
            }
        })
        .collect();
    PitchStream {
        duration_s: samples as f64 / 100.0,
        key: PitchClass::A,
        mode: Mode::Minor,
        bpm: 120.0,
        samples_hz,
        confidence: None,
    }
}
