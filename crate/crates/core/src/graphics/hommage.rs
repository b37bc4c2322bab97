//! Two-level grid process after Frieder Nake's *Hommage à Paul Klee*.
//!
//! Level one perturbs the vertices of a regular lattice, giving a mesh of
//! quadrilaterals that share edges. Level two samples a visual state for
//! every cell and fills hatched cells with parallel chords interpolated
//! across the quad.

use std::fmt;
use std::str::FromStr;

use super::scene::{Point, Polyline, Rect, VectorScene};
use crate::error::{Error, Result};
use crate::measures::Distribution;
use crate::rng::RngState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellState {
    HHatch,
    VHatch,
    Empty,
    Diagonal,
}

impl CellState {
    /// Sampling order of the state distribution.
    pub const ALL: [CellState; 4] = [
        CellState::HHatch,
        CellState::VHatch,
        CellState::Empty,
        CellState::Diagonal,
    ];
}

impl FromStr for CellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h-hatch" => Ok(CellState::HHatch),
            "v-hatch" => Ok(CellState::VHatch),
            "empty" => Ok(CellState::Empty),
            "diagonal" => Ok(CellState::Diagonal),
            other => Err(Error::InvalidParams(format!("unknown cell state `{other}`"))),
        }
    }
}

impl fmt::Display for CellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellState::HHatch => "h-hatch",
            CellState::VHatch => "v-hatch",
            CellState::Empty => "empty",
            CellState::Diagonal => "diagonal",
        })
    }
}

/// Parses `h-hatch=0.3,v-hatch=0.3,empty=0.2,diagonal=0.2`; omitted states get 0.
pub fn parse_cell_states(s: &str) -> Result<Distribution> {
    let mut probs = [0.0; 4];
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParams(format!("expected state=prob, got `{part}`")))?;
        let state: CellState = name.trim().parse()?;
        let p: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("bad probability `{value}`")))?;
        let idx = CellState::ALL.iter().position(|s| *s == state).unwrap();
        probs[idx] = p;
    }
    Distribution::new(probs.to_vec())
}

pub fn format_cell_states(d: &Distribution) -> String {
    CellState::ALL
        .iter()
        .zip(d.probs())
        .map(|(s, p)| format!("{s}={p}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, PartialEq)]
pub struct HommageParams {
    pub rows: usize,
    pub cols: usize,
    /// Vertex displacement as a fraction of the cell size, in `[0, 0.5)`.
    pub jitter: f64,
    /// Probabilities in [`CellState::ALL`] order.
    pub cell_states: Distribution,
    pub hatch_min: usize,
    pub hatch_max: usize,
}

#[derive(Debug, Clone)]
pub struct Hommage {
    pub scene: VectorScene,
    /// `(rows+1) × (cols+1)` mesh vertices, row-major.
    pub lattice: Vec<Point>,
    /// One state per cell, row-major.
    pub states: Vec<CellState>,
    /// Fill chords emitted per cell, row-major.
    pub chords: Vec<usize>,
}

/// Draw order: both offsets of every lattice vertex (row-major), then per
/// cell (row-major) its state and, when hatched, its chord count.
pub fn gen_hommage_klee(
    page_w: f64,
    page_h: f64,
    frame: &Rect,
    params: &HommageParams,
    rng: &mut RngState,
) -> Result<Hommage> {
    let HommageParams {
        rows,
        cols,
        jitter,
        ref cell_states,
        hatch_min,
        hatch_max,
    } = *params;
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParams("mesh needs at least one row and column".into()));
    }
    if !(0.0..0.5).contains(&jitter) {
        return Err(Error::InvalidParams(format!("jitter {jitter} outside [0, 0.5)")));
    }
    if cell_states.len() != CellState::ALL.len() {
        return Err(Error::InvalidDistribution(format!(
            "cell-state distribution needs {} entries, got {}",
            CellState::ALL.len(),
            cell_states.len()
        )));
    }
    if hatch_min == 0 || hatch_min > hatch_max {
        return Err(Error::InvalidParams(format!(
            "hatch density range ({hatch_min}, {hatch_max}) must satisfy 1 <= min <= max"
        )));
    }
    let mut scene = VectorScene::new(page_w, page_h)?;
    let cw = frame.width() / cols as f64;
    let ch = frame.height() / rows as f64;

    let mut lattice = Vec::with_capacity((rows + 1) * (cols + 1));
    for r in 0..=rows {
        for c in 0..=cols {
            let ox = (2.0 * rng.next_unit() - 1.0) * jitter * cw;
            let oy = (2.0 * rng.next_unit() - 1.0) * jitter * ch;
            lattice.push(Point::new(frame.x0 + c as f64 * cw + ox, frame.y0 + r as f64 * ch + oy));
        }
    }
    let vertex = |r: usize, c: usize| lattice[r * (cols + 1) + c];

    for r in 0..=rows {
        let pts = (0..=cols).map(|c| vertex(r, c)).collect();
        scene.push(Polyline::new(pts, false)?);
    }
    for c in 0..=cols {
        let pts = (0..=rows).map(|r| vertex(r, c)).collect();
        scene.push(Polyline::new(pts, false)?);
    }

    let mut states = Vec::with_capacity(rows * cols);
    let mut chords = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let state = CellState::ALL[rng.next_categorical(cell_states.probs())];
            states.push(state);
            if state == CellState::Empty {
                chords.push(0);
                continue;
            }
            let n = rng.next_int(hatch_min as i64, hatch_max as i64)? as usize;
            let quad = [vertex(r, c), vertex(r, c + 1), vertex(r + 1, c + 1), vertex(r + 1, c)];
            for i in 0..n {
                let (a, b) = chord(&quad, state, (i + 1) as f64 / (n + 1) as f64);
                scene.push(Polyline::segment(a, b));
            }
            chords.push(n);
        }
    }
    Ok(Hommage {
        scene,
        lattice,
        states,
        chords,
    })
}

/// Chord at parameter `s ∈ (0, 1)` across the quad `[tl, tr, br, bl]`.
fn chord(quad: &[Point; 4], state: CellState, s: f64) -> (Point, Point) {
    let [tl, tr, br, bl] = *quad;
    match state {
        CellState::HHatch => (tl.lerp(bl, s), tr.lerp(br, s)),
        CellState::VHatch => (tl.lerp(tr, s), bl.lerp(br, s)),
        CellState::Diagonal => {
            // Lines u + v = 2s in the quad's parameter space.
            let t = 2.0 * s;
            if t <= 1.0 {
                (tl.lerp(tr, t), tl.lerp(bl, t))
            } else {
                (tr.lerp(br, t - 1.0), bl.lerp(br, t - 1.0))
            }
        }
        CellState::Empty => unreachable!("empty cells have no chords"),
    }
}

/// `count` segments with both endpoints uniform in `frame`: the disordered
/// reference against which mesh compositions are compared.
pub fn gen_iid_segments(
    page_w: f64,
    page_h: f64,
    frame: &Rect,
    count: usize,
    rng: &mut RngState,
) -> Result<VectorScene> {
    let mut scene = VectorScene::new(page_w, page_h)?;
    for _ in 0..count {
        let a = Point::new(rng.next_range(frame.x0, frame.x1), rng.next_range(frame.y0, frame.y1));
        let b = Point::new(rng.next_range(frame.x0, frame.x1), rng.next_range(frame.y0, frame.y1));
        scene.push(Polyline::segment(a, b));
    }
    Ok(scene)
}
