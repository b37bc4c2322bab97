//! Compositions of short oriented segments whose local density follows a
//! map over the unit square.

use std::fmt;
use std::str::FromStr;

use super::scene::{Point, Polyline, Rect, VectorScene};
use crate::error::{Error, Result};
use crate::rng::RngState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Horizontal,
    Vertical,
    Oblique,
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horizontal" | "h" => Ok(Orientation::Horizontal),
            "vertical" | "v" => Ok(Orientation::Vertical),
            "oblique" | "o" => Ok(Orientation::Oblique),
            other => Err(Error::InvalidParams(format!("unknown orientation `{other}`"))),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
            Orientation::Oblique => "oblique",
        })
    }
}

/// Acceptance probability over normalized frame coordinates `(u, v) ∈ [0,1]²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMap {
    Constant,
    /// `u`: sparse on the left, dense on the right.
    RampX,
    /// `v`: sparse at the top, dense at the bottom.
    RampY,
    /// `1 − r/r_max` around the frame centre.
    Radial,
    /// Gaussian bump at the centre, σ = 0.2.
    Gaussian,
}

impl DensityMap {
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        match self {
            DensityMap::Constant => 1.0,
            DensityMap::RampX => u,
            DensityMap::RampY => v,
            DensityMap::Radial => {
                let r = (u - 0.5).hypot(v - 0.5);
                (1.0 - r / std::f64::consts::FRAC_1_SQRT_2).max(0.0)
            }
            DensityMap::Gaussian => {
                let r2 = (u - 0.5).powi(2) + (v - 0.5).powi(2);
                (-r2 / (2.0 * 0.2 * 0.2)).exp()
            }
        }
    }
}

impl FromStr for DensityMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(DensityMap::Constant),
            "ramp-x" => Ok(DensityMap::RampX),
            "ramp-y" => Ok(DensityMap::RampY),
            "radial" => Ok(DensityMap::Radial),
            "gaussian" => Ok(DensityMap::Gaussian),
            other => Err(Error::UnknownRule(other.to_string())),
        }
    }
}

impl fmt::Display for DensityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityMap::Constant => "constant",
            DensityMap::RampX => "ramp-x",
            DensityMap::RampY => "ramp-y",
            DensityMap::Radial => "radial",
            DensityMap::Gaussian => "gaussian",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityParams {
    pub count: usize,
    pub orientations: Vec<Orientation>,
    pub density: DensityMap,
    /// Segment length in page units.
    pub segment_length: f64,
}

/// Rejection attempts allowed per requested segment before giving up.
const ATTEMPTS_PER_SEGMENT: usize = 1000;

/// Places up to `count` segments centred on points accepted against the
/// density map. Each attempt draws `u`, `v` and an acceptance value; an
/// accepted point then draws its orientation and, for oblique strokes, an
/// angle in (0°, 90°).
pub fn gen_density_field(
    page_w: f64,
    page_h: f64,
    frame: &Rect,
    params: &DensityParams,
    rng: &mut RngState,
) -> Result<VectorScene> {
    if params.orientations.is_empty() {
        return Err(Error::InvalidParams("orientation set is empty".into()));
    }
    if !(params.segment_length > 0.0 && params.segment_length.is_finite()) {
        return Err(Error::InvalidParams("segment length must be > 0".into()));
    }
    let mut scene = VectorScene::new(page_w, page_h)?;
    let half = params.segment_length / 2.0;
    let max_attempts = params.count.saturating_mul(ATTEMPTS_PER_SEGMENT);
    let mut placed = 0;
    let mut attempts = 0;
    while placed < params.count && attempts < max_attempts {
        attempts += 1;
        let u = rng.next_unit();
        let v = rng.next_unit();
        if rng.next_unit() >= params.density.eval(u, v) {
            continue;
        }
        let centre = Point::new(frame.x0 + u * frame.width(), frame.y0 + v * frame.height());
        let angle = match params.orientations[rng.next_index(params.orientations.len())] {
            Orientation::Horizontal => 0.0,
            Orientation::Vertical => std::f64::consts::FRAC_PI_2,
            Orientation::Oblique => {
                let mut a = rng.next_unit();
                while a == 0.0 {
                    a = rng.next_unit();
                }
                a * std::f64::consts::FRAC_PI_2
            }
        };
        let (s, c) = angle.sin_cos();
        let a = Point::new(centre.x - half * c, centre.y - half * s);
        let b = Point::new(centre.x + half * c, centre.y + half * s);
        scene.push(Polyline::segment(a, b));
        placed += 1;
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(count: usize, density: DensityMap) -> DensityParams {
        DensityParams {
            count,
            orientations: vec![Orientation::Horizontal, Orientation::Vertical, Orientation::Oblique],
            density,
            segment_length: 1.0,
        }
    }

    fn frame() -> Rect {
        Rect::new(10.0, 10.0, 90.0, 90.0).unwrap()
    }

    #[test]
    fn zero_count_is_empty() {
        let s = gen_density_field(
            100.0,
            100.0,
            &frame(),
            &params(0, DensityMap::Constant),
            &mut RngState::new(1),
        )
        .unwrap();
        assert!(s.strokes().is_empty());
    }

    #[test]
    fn constant_density_places_every_segment() {
        let s = gen_density_field(
            100.0,
            100.0,
            &frame(),
            &params(500, DensityMap::Constant),
            &mut RngState::new(1),
        )
        .unwrap();
        assert_eq!(s.strokes().len(), 500);
    }

    #[test]
    fn empty_orientation_set_rejected() {
        let mut p = params(10, DensityMap::Constant);
        p.orientations.clear();
        assert!(matches!(
            gen_density_field(100.0, 100.0, &frame(), &p, &mut RngState::new(1)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn orientations_respected() {
        let mut p = params(300, DensityMap::Constant);
        p.orientations = vec![Orientation::Oblique];
        let s = gen_density_field(100.0, 100.0, &frame(), &p, &mut RngState::new(4)).unwrap();
        for st in s.strokes() {
            let [a, b] = [st.points()[0], st.points()[1]];
            assert!(b.x > a.x && b.y > a.y, "oblique strokes are never axis-aligned");
        }
        p.orientations = vec![Orientation::Vertical];
        let s = gen_density_field(100.0, 100.0, &frame(), &p, &mut RngState::new(4)).unwrap();
        for st in s.strokes() {
            assert!((st.points()[0].x - st.points()[1].x).abs() < 1e-12);
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in ["constant", "ramp-x", "ramp-y", "radial", "gaussian"] {
            assert_eq!(id.parse::<DensityMap>().unwrap().to_string(), id);
        }
        assert!("wavy".parse::<DensityMap>().is_err());
        assert_eq!("oblique".parse::<Orientation>().unwrap(), Orientation::Oblique);
    }
}
