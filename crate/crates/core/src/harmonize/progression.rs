use serde::{Deserialize, Serialize};

use crate::pitch::{Chord, ChordQuality};
use crate::regions::GridPos;

use super::rng::RandomSource;
use super::SlotGrid;

/// Quality of the chord inserted a fifth above a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DominantPolicy {
    /// Always a dominant seventh.
    AlwaysDominant7,
    /// Minor seventh before minor-third targets, dominant seventh otherwise.
    DiatonicFifth,
}

pub fn secondary_dominant(target: Chord, policy: DominantPolicy) -> Chord {
    let quality = match policy {
        DominantPolicy::DiatonicFifth if target.quality.has_minor_third() => ChordQuality::Minor7,
        _ => ChordQuality::Dominant7,
    };
    Chord::new(target.root.transpose(7), quality)
}

/// The ii7 and V7 leading into `target`.
pub fn two_five_one_prefix(target: Chord) -> [Chord; 2] {
    [
        Chord::new(target.root.transpose(2), ChordQuality::Minor7),
        Chord::new(target.root.transpose(7), ChordQuality::Dominant7),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EntryKind {
    Base,
    InsertedDominant,
    InsertedTwo,
    /// Closing tonic after the final dominant.
    Cadence,
}

/// One chord of a generated progression and how many slots it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkEntry {
    pub chord: Chord,
    pub slots: usize,
    pub kind: EntryKind,
    /// Chart cell for base chords taken from a chart.
    pub position: Option<GridPos>,
}

impl WalkEntry {
    fn base(chord: Chord, slots: usize, position: Option<GridPos>) -> Self {
        WalkEntry {
            chord,
            slots,
            kind: EntryKind::Base,
            position,
        }
    }

    fn inserted(chord: Chord, kind: EntryKind) -> Self {
        WalkEntry {
            chord,
            slots: 1,
            kind,
            position: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Decoration {
    pub repeats_per_chord: usize,
    pub p_secondary_dominant: f64,
    pub p_ii_v_i: f64,
    pub policy: DominantPolicy,
}

impl Decoration {
    /// Expected extra slots an insertion opportunity adds.
    pub fn expected_insert_slots(&self) -> f64 {
        2.0 * self.p_ii_v_i + (1.0 - self.p_ii_v_i) * self.p_secondary_dominant
    }
}

/// Lays out base chords with insertions before every base chord but the
/// first, then closes with the last chord's dominant and the last chord as
/// a cadence. `bases` must hold at least two chords.
pub(crate) fn decorate(
    bases: &[(Chord, Option<GridPos>)],
    deco: &Decoration,
    rng: &mut RandomSource,
) -> Vec<WalkEntry> {
    debug_assert!(bases.len() >= 2);
    let r = deco.repeats_per_chord;
    let mut out = Vec::with_capacity(bases.len() * 3);
    let (first, rest) = bases.split_first().expect("at least two base chords");
    let (last, inner) = rest.split_last().expect("at least two base chords");
    out.push(WalkEntry::base(first.0, r, first.1));
    for (chord, pos) in inner {
        if rng.chance(deco.p_ii_v_i) {
            for c in two_five_one_prefix(*chord) {
                out.push(WalkEntry::inserted(c, EntryKind::InsertedTwo));
            }
        } else if rng.chance(deco.p_secondary_dominant) {
            out.push(WalkEntry::inserted(
                secondary_dominant(*chord, deco.policy),
                EntryKind::InsertedDominant,
            ));
        }
        out.push(WalkEntry::base(*chord, r, *pos));
    }
    out.push(WalkEntry::inserted(
        secondary_dominant(last.0, deco.policy),
        EntryKind::InsertedDominant,
    ));
    out.push(WalkEntry {
        kind: EntryKind::Cadence,
        ..WalkEntry::base(last.0, r, last.1)
    });
    out
}

/// Expands entries into per-slot chords on `grid`. The final chord absorbs
/// leftover slots; a progression longer than the grid runs past its end.
pub(crate) fn expand_to_slots(entries: &[WalkEntry], grid: &SlotGrid) -> Vec<Chord> {
    let mut slots: Vec<Chord> = entries
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.chord, e.slots))
        .collect();
    if let Some(last) = slots.last().copied() {
        while slots.len() < grid.slots {
            slots.push(last);
        }
    }
    slots
}
