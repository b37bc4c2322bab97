//! Random-phase synthesis of sea-surface elevation from a directional
//! spectrum.
//!
//! Each spectral bin with positive energy contributes one linear wave with
//! deterministic amplitude `a = √(2·S·Δf·Δθ)` and a phase drawn uniformly
//! in `[0, 2π)`. Frequencies map to wavenumbers through the deep-water
//! dispersion relation `ω² = g·k`.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::spectrum::DirectionalSpectrum;
use crate::error::{Error, Result};
use crate::raster::{normalize_to_bytes, write_pgm_p2};
use crate::rng::RngState;

pub const STANDARD_GRAVITY: f64 = 9.81;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveComponent {
    /// m
    pub amplitude: f64,
    /// rad/m
    pub wavenumber: f64,
    /// rad, direction of propagation
    pub direction: f64,
    /// rad/s
    pub omega: f64,
    /// rad in `[0, 2π)`
    pub phase: f64,
}

/// One component per positive bin, frequency-major, consuming one unit draw
/// per emitted component.
pub fn draw_components(s: &DirectionalSpectrum, gravity: f64, rng: &mut RngState) -> Vec<WaveComponent> {
    let mut out = Vec::new();
    for (i, (&f, &df)) in s.freqs().iter().zip(s.df()).enumerate() {
        let omega = TAU * f;
        let k = omega * omega / gravity;
        for (j, (&theta, &dtheta)) in s.dirs().iter().zip(s.dtheta()).enumerate() {
            let density = s.value(i, j);
            if density <= 0.0 {
                continue;
            }
            out.push(WaveComponent {
                amplitude: (2.0 * density * df * dtheta).sqrt(),
                wavenumber: k,
                direction: theta,
                omega,
                phase: TAU * rng.next_unit(),
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64) -> Result<Self> {
        let g = Self {
            nx,
            ny,
            dx,
            dy,
            x0: 0.0,
            y0: 0.0,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_origin(mut self, x0: f64, y0: f64) -> Self {
        self.x0 = x0;
        self.y0 = y0;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidParams("grid needs nx, ny >= 1".into()));
        }
        if !(self.dx > 0.0 && self.dy > 0.0 && self.dx.is_finite() && self.dy.is_finite()) {
            return Err(Error::InvalidParams("grid spacing must be > 0".into()));
        }
        if !(self.x0.is_finite() && self.y0.is_finite()) {
            return Err(Error::InvalidParams("grid origin must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub grid: GridSpec,
    pub t: f64,
    /// Row-major by `y`: `heights[iy * nx + ix]` is `η(x0 + ix·dx, y0 + iy·dy)`.
    pub heights: Vec<f64>,
    pub components: Vec<WaveComponent>,
}

impl WaveField {
    pub fn height(&self, ix: usize, iy: usize) -> f64 {
        self.heights[iy * self.grid.nx + ix]
    }

    /// Raw metres, one grid row per line, `y` increasing downwards.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.heights.len() * 12);
        for row in self.heights.chunks(self.grid.nx) {
            for (i, h) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&h.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// 8-bit graymap normalized between the field minimum and maximum, which
    /// are also returned.
    pub fn to_pgm(&self) -> (Vec<u8>, f64, f64) {
        let (bytes, min, max) = normalize_to_bytes(&self.heights);
        let comment = format!("eta min={min} m max={max} m");
        (
            write_pgm_p2(self.grid.nx, self.grid.ny, &bytes, Some(&comment)),
            min,
            max,
        )
    }
}

fn elevation(components: &[WaveComponent], x: f64, y: f64, t: f64) -> f64 {
    components
        .iter()
        .map(|c| {
            let (s, co) = c.direction.sin_cos();
            c.amplitude * (c.wavenumber * (x * co + y * s) - c.omega * t + c.phase).cos()
        })
        .fold(0.0, |acc, v| acc + v)
}

/// `η(x, y, t) = Σ a·cos(k·(x cos θ + y sin θ) − ω t + φ)` at every grid
/// node. Rows are evaluated in parallel; each node sums its components in
/// list order, so the result does not depend on scheduling.
pub fn synthesize_field(components: &[WaveComponent], grid: GridSpec, t: f64) -> Result<WaveField> {
    grid.validate()?;
    let mut heights = vec![0.0; grid.nx * grid.ny];
    heights
        .par_chunks_mut(grid.nx)
        .enumerate()
        .for_each(|(iy, row)| fill_row(components, &grid, t, iy, row));
    Ok(WaveField {
        grid,
        t,
        heights,
        components: components.to_vec(),
    })
}

/// Single-threaded evaluation, for checking the parallel path.
pub fn synthesize_field_sequential(components: &[WaveComponent], grid: GridSpec, t: f64) -> Result<WaveField> {
    grid.validate()?;
    let mut heights = vec![0.0; grid.nx * grid.ny];
    for (iy, row) in heights.chunks_mut(grid.nx).enumerate() {
        fill_row(components, &grid, t, iy, row);
    }
    Ok(WaveField {
        grid,
        t,
        heights,
        components: components.to_vec(),
    })
}

fn fill_row(components: &[WaveComponent], grid: &GridSpec, t: f64, iy: usize, row: &mut [f64]) {
    let y = grid.y0 + iy as f64 * grid.dy;
    for (ix, h) in row.iter_mut().enumerate() {
        *h = elevation(components, grid.x0 + ix as f64 * grid.dx, y, t);
    }
}

/// Population variance of the elevation over all grid nodes (m²).
pub fn field_variance(field: &WaveField) -> Result<f64> {
    let n = field.heights.len();
    if n < 2 {
        return Err(Error::DegenerateGrid(format!(
            "variance needs at least 2 nodes, got {n}"
        )));
    }
    let mean = field.heights.iter().sum::<f64>() / n as f64;
    Ok(field.heights.iter().map(|h| (h - mean).powi(2)).sum::<f64>() / n as f64)
}

pub fn field_mean(field: &WaveField) -> f64 {
    field.heights.iter().sum::<f64>() / field.heights.len() as f64
}
