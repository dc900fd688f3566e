//! The 24x24 chart of tonal regions, centered on the melody key.
//!
//! Reading a row left to right gives relative minor, major, parallel minor,
//! then the next major a minor third up: `A a C c D# d# ...` around C.
//! Reading a column bottom to top climbs the circle of fifths.
//!
//! Rows are indexed top to bottom, so [`Direction::Up`] decreases the row.
//! The center is fixed at (12, 12).

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::ChartError;
use crate::pitch::{Chord, ChordQuality, Mode, PitchClass};

pub const CHART_SIZE: usize = 24;
pub const CENTER: GridPos = GridPos { row: 12, col: 12 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPos {
    row: usize,
    col: usize,
}

impl GridPos {
    pub fn new(row: usize, col: usize) -> Result<Self, ChartError> {
        if row >= CHART_SIZE || col >= CHART_SIZE {
            return Err(ChartError::OutOfRange {
                row: row as i32,
                col: col as i32,
            });
        }
        Ok(GridPos { row, col })
    }

    pub fn row(self) -> usize {
        self.row
    }

    pub fn col(self) -> usize {
        self.col
    }

    /// Signed (rows up, columns right) offset from the center.
    pub fn offset_from_center(self) -> (i32, i32) {
        (
            CENTER.row as i32 - self.row as i32,
            self.col as i32 - CENTER.col as i32,
        )
    }

    pub fn step(self, dir: Direction) -> Result<GridPos, ChartError> {
        let (dr, dc) = dir.delta();
        let row = self.row as i32 + dr;
        let col = self.col as i32 + dc;
        if (0..CHART_SIZE as i32).contains(&row) && (0..CHART_SIZE as i32).contains(&col) {
            Ok(GridPos {
                row: row as usize,
                col: col as usize,
            })
        } else {
            Err(ChartError::Boundary {
                row: self.row,
                col: self.col,
                dir: format!("{dir:?}"),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
    UpLeft,
    UpRight,
    DownLeft,
    DownRight,
    Up2,
    Down2,
    Left2,
    Right2,
}

impl Direction {
    pub const ALL: [Direction; 12] = [
        Direction::Up,
        Direction::Down,
        Direction::Left,
        Direction::Right,
        Direction::UpLeft,
        Direction::UpRight,
        Direction::DownLeft,
        Direction::DownRight,
        Direction::Up2,
        Direction::Down2,
        Direction::Left2,
        Direction::Right2,
    ];

    pub const NEIGHBORS: [Direction; 4] = [
        Direction::Up,
        Direction::Down,
        Direction::Left,
        Direction::Right,
    ];

    /// (Δrow, Δcol); rows grow downward.
    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Down => (1, 0),
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
            Direction::UpLeft => (-1, -1),
            Direction::UpRight => (-1, 1),
            Direction::DownLeft => (1, -1),
            Direction::DownRight => (1, 1),
            Direction::Up2 => (-2, 0),
            Direction::Down2 => (2, 0),
            Direction::Left2 => (0, -2),
            Direction::Right2 => (0, 2),
        }
    }

    pub fn reverse(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::UpLeft => Direction::DownRight,
            Direction::UpRight => Direction::DownLeft,
            Direction::DownLeft => Direction::UpRight,
            Direction::DownRight => Direction::UpLeft,
            Direction::Up2 => Direction::Down2,
            Direction::Down2 => Direction::Up2,
            Direction::Left2 => Direction::Right2,
            Direction::Right2 => Direction::Left2,
        }
    }

    pub fn between(from: GridPos, to: GridPos) -> Option<Direction> {
        let delta = (
            to.row as i32 - from.row as i32,
            to.col as i32 - from.col as i32,
        );
        Direction::ALL.into_iter().find(|d| d.delta() == delta)
    }
}

/// Region names around the tonic: T/D/SD with their relative minors
/// (sm/m/dor) on the left and parallel minors (t/v/sd) on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    T,
    D,
    SD,
    #[serde(rename = "sm")]
    Sm,
    #[serde(rename = "m")]
    M,
    #[serde(rename = "dor")]
    Dor,
    #[serde(rename = "t")]
    Tonic,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "sd")]
    Sd,
    None,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionLabel::T => "T",
            RegionLabel::D => "D",
            RegionLabel::SD => "SD",
            RegionLabel::Sm => "sm",
            RegionLabel::M => "m",
            RegionLabel::Dor => "dor",
            RegionLabel::Tonic => "t",
            RegionLabel::V => "v",
            RegionLabel::Sd => "sd",
            RegionLabel::None => "",
        })
    }
}

/// Chord at a signed offset in the major-mode chart of `key`.
fn major_cell(key: PitchClass, up: i32, right: i32) -> Chord {
    let root = key.transpose(7 * up + 3 * right.div_euclid(2));
    let quality = if right.rem_euclid(2) == 0 {
        ChordQuality::MajorTriad
    } else {
        ChordQuality::MinorTriad
    };
    Chord::new(root, quality)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionChart {
    key: PitchClass,
    mode: Mode,
    cells: Vec<Chord>,
}

impl RegionChart {
    /// A minor-key chart is the relative major's chart shifted so the minor
    /// tonic (one column left of the relative major) sits at the center.
    pub fn new(key: PitchClass, mode: Mode) -> Self {
        let (major_key, col_shift) = match mode {
            Mode::Major => (key, 0),
            Mode::Minor => (key.transpose(3), -1),
        };
        let mut cells = Vec::with_capacity(CHART_SIZE * CHART_SIZE);
        for row in 0..CHART_SIZE {
            for col in 0..CHART_SIZE {
                let up = CENTER.row as i32 - row as i32;
                let right = col as i32 - CENTER.col as i32 + col_shift;
                cells.push(major_cell(major_key, up, right));
            }
        }
        RegionChart { key, mode, cells }
    }

    pub fn key(&self) -> PitchClass {
        self.key
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn center(&self) -> GridPos {
        CENTER
    }

    pub fn tonic(&self) -> Chord {
        self.at(CENTER)
    }

    pub fn at(&self, pos: GridPos) -> Chord {
        self.cells[pos.row * CHART_SIZE + pos.col]
    }

    pub fn chord_at(&self, row: usize, col: usize) -> Result<Chord, ChartError> {
        Ok(self.at(GridPos::new(row, col)?))
    }

    pub fn step(&self, pos: GridPos, dir: Direction) -> Result<GridPos, ChartError> {
        pos.step(dir)
    }

    pub fn region_label(&self, pos: GridPos) -> RegionLabel {
        match pos.offset_from_center() {
            (0, 0) => RegionLabel::T,
            (1, 0) => RegionLabel::D,
            (-1, 0) => RegionLabel::SD,
            (0, -1) => RegionLabel::Sm,
            (1, -1) => RegionLabel::M,
            (-1, -1) => RegionLabel::Dor,
            (0, 1) => RegionLabel::Tonic,
            (1, 1) => RegionLabel::V,
            (-1, 1) => RegionLabel::Sd,
            _ => RegionLabel::None,
        }
    }

    /// Tab-separated grid, majors uppercase and minors lowercase, with the
    /// center cell bracketed.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in 0..CHART_SIZE {
            for col in 0..CHART_SIZE {
                if col > 0 {
                    out.push('\t');
                }
                let pos = GridPos { row, col };
                let label = cell_label(self.at(pos));
                if pos == CENTER {
                    let _ = write!(out, "[{label}]");
                } else {
                    out.push_str(&label);
                }
            }
            out.push('\n');
        }
        out
    }
}

fn cell_label(chord: Chord) -> String {
    let name = chord.root.name(false);
    match chord.quality {
        ChordQuality::MinorTriad => name.to_lowercase(),
        _ => name.to_string(),
    }
}
