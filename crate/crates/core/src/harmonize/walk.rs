use serde::{Deserialize, Serialize};

use crate::error::HarmonizeError;
use crate::melody::Melody;
use crate::regions::{Direction, GridPos, RegionChart};

use super::progression::{decorate, expand_to_slots, Decoration};
use super::rng::RandomSource;
use super::{DominantPolicy, Harmonization, SlotGrid, WalkEntry};

/// Direction draws allowed per step before a walk gives up.
pub const MAX_DRAWS: usize = 64;

/// Parameters of a random walk over the chart of regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchoenbergParams {
    pub directions: Vec<Direction>,
    /// When false, a step may not return to the cell visited just before.
    pub allow_repeats: bool,
    /// When false, only cells with the tonic's quality are entered.
    pub allow_mode_change: bool,
    pub p_secondary_dominant: f64,
    pub p_ii_v_i: f64,
    pub repeats_per_chord: usize,
    pub dominant_policy: DominantPolicy,
}

impl SchoenbergParams {
    /// Four neighbors, always a pre-dominant, held for a 4-beat measure.
    pub fn min_preset() -> Self {
        Self::min_preset_with_measure(4)
    }

    pub fn min_preset_with_measure(beats_per_measure: usize) -> Self {
        SchoenbergParams {
            directions: Direction::NEIGHBORS.to_vec(),
            allow_repeats: false,
            allow_mode_change: true,
            p_secondary_dominant: 1.0,
            p_ii_v_i: 0.25,
            repeats_per_chord: beats_per_measure.max(1),
            dominant_policy: DominantPolicy::DiatonicFifth,
        }
    }

    /// All twelve moves, one slot per chord, dominants half the time.
    pub fn max_preset() -> Self {
        SchoenbergParams {
            directions: Direction::ALL.to_vec(),
            allow_repeats: false,
            allow_mode_change: true,
            p_secondary_dominant: 0.5,
            p_ii_v_i: 0.25,
            repeats_per_chord: 1,
            dominant_policy: DominantPolicy::AlwaysDominant7,
        }
    }

    pub fn validate(&self) -> Result<(), HarmonizeError> {
        if self.directions.is_empty() {
            return Err(HarmonizeError::Params("direction set is empty".into()));
        }
        for (name, p) in [
            ("p_secondary_dominant", self.p_secondary_dominant),
            ("p_ii_v_i", self.p_ii_v_i),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(HarmonizeError::Params(format!(
                    "{name} = {p} is not a probability"
                )));
            }
        }
        if self.repeats_per_chord == 0 {
            return Err(HarmonizeError::Params(
                "repeats_per_chord must be positive".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn decoration(&self) -> Decoration {
        Decoration {
            repeats_per_chord: self.repeats_per_chord,
            p_secondary_dominant: self.p_secondary_dominant,
            p_ii_v_i: self.p_ii_v_i,
            policy: self.dominant_policy,
        }
    }
}

/// Random walk over `n_base_steps - 1` chart cells from the tonic cell,
/// with pre-chord insertions, closed by a dominant-tonic cadence. The
/// closing tonic counts as the last base step.
pub fn schoenberg_walk(
    chart: &RegionChart,
    params: &SchoenbergParams,
    n_base_steps: usize,
    rng: &mut RandomSource,
) -> Result<Vec<WalkEntry>, HarmonizeError> {
    params.validate()?;
    if n_base_steps < 2 {
        return Err(HarmonizeError::TooFewSteps(n_base_steps));
    }
    let tonic = chart.tonic();
    let mut path: Vec<GridPos> = vec![chart.center()];
    for step in 1..n_base_steps - 1 {
        let current = path[path.len() - 1];
        let previous = path.len().checked_sub(2).map(|i| path[i]);
        let mut draws = 0;
        let next = loop {
            if draws == MAX_DRAWS {
                return Err(HarmonizeError::RetryExhausted { step, draws });
            }
            draws += 1;
            let dir = params.directions[rng.index(params.directions.len())];
            let Ok(candidate) = current.step(dir) else {
                continue;
            };
            if !params.allow_repeats && Some(candidate) == previous {
                continue;
            }
            if !params.allow_mode_change && chart.at(candidate).quality != tonic.quality {
                continue;
            }
            break candidate;
        };
        path.push(next);
    }
    let mut bases: Vec<_> = path.iter().map(|p| (chart.at(*p), Some(*p))).collect();
    bases.push((tonic, None));
    Ok(decorate(&bases, &params.decoration(), rng))
}

/// Largest base-chord count whose expected slot usage fits `total_slots`,
/// never fewer than two.
pub fn base_step_count(
    total_slots: usize,
    repeats_per_chord: usize,
    expected_insert: f64,
) -> usize {
    let r = repeats_per_chord as f64;
    // n*r + (n-2)*insert + 1 cadence slot <= total
    let n = (total_slots as f64 - 1.0 + 2.0 * expected_insert) / (r + expected_insert);
    (n.floor().max(0.0) as usize).max(2)
}

pub fn harmonize_schoenberg(
    melody: &Melody,
    params: &SchoenbergParams,
    rng: &mut RandomSource,
) -> Result<Harmonization, HarmonizeError> {
    let grid = SlotGrid::for_melody(melody)?;
    let deco = params.decoration();
    let n = base_step_count(
        grid.slots,
        params.repeats_per_chord,
        deco.expected_insert_slots(),
    );
    let chart = RegionChart::new(melody.key, melody.mode);
    let entries = schoenberg_walk(&chart, params, n, rng)?;
    let slots = expand_to_slots(&entries, &grid);
    Ok(Harmonization::new("schoenberg", grid.events(&slots)))
}
