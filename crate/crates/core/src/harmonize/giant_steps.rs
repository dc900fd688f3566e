use crate::error::HarmonizeError;
use crate::melody::Melody;
use crate::pitch::{Chord, PitchClass};

use super::progression::{decorate, expand_to_slots, Decoration};
use super::rng::RandomSource;
use super::walk::base_step_count;
use super::{DominantPolicy, Harmonization, SlotGrid};

/// Which way the cycle of key centers moves by major thirds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CycleDirection {
    /// F, C#, A, F, ...
    #[default]
    Descending,
    /// F, A, C#, F, ...
    Ascending,
}

impl CycleDirection {
    fn step(self) -> i32 {
        match self {
            CycleDirection::Descending => -4,
            CycleDirection::Ascending => 4,
        }
    }
}

/// The three key centers a major third apart, starting at `tonic`.
pub fn giant_steps_centers(tonic: PitchClass, direction: CycleDirection) -> [PitchClass; 3] {
    let k1 = tonic.transpose(direction.step());
    [tonic, k1, k1.transpose(direction.step())]
}

const DECORATION: Decoration = Decoration {
    repeats_per_chord: 1,
    p_secondary_dominant: 1.0,
    p_ii_v_i: 0.25,
    policy: DominantPolicy::AlwaysDominant7,
};

pub fn harmonize_giant_steps(
    melody: &Melody,
    rng: &mut RandomSource,
) -> Result<Harmonization, HarmonizeError> {
    harmonize_giant_steps_with(melody, CycleDirection::Descending, rng)
}

/// Cycles major triads on the three centers, one slot each, every change
/// prepared by a dominant or a ii-V. Starts and ends on the tonic triad.
pub fn harmonize_giant_steps_with(
    melody: &Melody,
    direction: CycleDirection,
    rng: &mut RandomSource,
) -> Result<Harmonization, HarmonizeError> {
    let grid = SlotGrid::for_melody(melody)?;
    let n = base_step_count(grid.slots, 1, DECORATION.expected_insert_slots());
    let centers = giant_steps_centers(melody.key, direction);
    let tonic = melody.tonic_triad();
    let mut bases = Vec::with_capacity(n);
    bases.push((tonic, None));
    for i in 1..n - 1 {
        bases.push((Chord::major(centers[i % 3]), None));
    }
    bases.push((tonic, None));
    let entries = decorate(&bases, &DECORATION, rng);
    let slots = expand_to_slots(&entries, &grid);
    Ok(Harmonization::new("giant-steps", grid.events(&slots)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers_descend_by_major_thirds() {
        assert_eq!(
            giant_steps_centers(PitchClass::F, CycleDirection::Descending),
            [PitchClass::F, PitchClass::C_SHARP, PitchClass::A]
        );
        assert_eq!(
            giant_steps_centers(PitchClass::A, CycleDirection::Descending),
            [PitchClass::A, PitchClass::F, PitchClass::C_SHARP]
        );
        assert_eq!(
            giant_steps_centers(PitchClass::F, CycleDirection::Ascending),
            [PitchClass::F, PitchClass::A, PitchClass::C_SHARP]
        );
        for tonic in PitchClass::all() {
            let c = giant_steps_centers(tonic, CycleDirection::Descending);
            for i in 0..3 {
                assert_eq!(c[i].interval_to(c[(i + 1) % 3]), 8);
            }
            // transposition oracle against the F cycle
            let k = PitchClass::F.interval_to(tonic) as i32;
            let f = giant_steps_centers(PitchClass::F, CycleDirection::Descending);
            assert_eq!(c, f.map(|pc| pc.transpose(k)));
        }
    }
}
