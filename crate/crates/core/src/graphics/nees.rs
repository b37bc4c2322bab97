//! Random polygon figures and motif grids in the manner of Georg Nees's
//! 1965 stochastic plotter graphics.
//!
//! An n-corner is read here as `n` vertices drawn independently and
//! uniformly in the frame and joined in draw order, then closed. The
//! original programs survive only as prose, so this is an interpretation.

use std::fmt;
use std::str::FromStr;

use super::scene::{Point, Polyline, Rect, VectorScene};
use crate::error::{Error, Result};
use crate::rng::RngState;

pub fn gen_ncorner(n: usize, frame: &Rect, rng: &mut RngState) -> Result<Polyline> {
    if n < 3 {
        return Err(Error::InvalidOrder(n));
    }
    let frame = Rect::new(frame.x0, frame.y0, frame.x1, frame.y1)?;
    let points = (0..n)
        .map(|_| {
            let x = rng.next_range(frame.x0, frame.x1);
            let y = rng.next_range(frame.y0, frame.y1);
            Point::new(x, y)
        })
        .collect();
    Polyline::new(points, true)
}

/// Motif drawn in each grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRule {
    /// Closed random polygon with the given vertex count.
    NCorner(usize),
    /// Single segment between two uniform points of the cell.
    Segment,
}

impl FromStr for CellRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        match (name, arg) {
            ("ncorner", Some(a)) => {
                let n: usize = a
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("bad n-corner order `{a}`")))?;
                if n < 3 {
                    return Err(Error::InvalidOrder(n));
                }
                Ok(CellRule::NCorner(n))
            }
            ("segment", None) => Ok(CellRule::Segment),
            _ => Err(Error::UnknownRule(s.to_string())),
        }
    }
}

impl fmt::Display for CellRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellRule::NCorner(n) => write!(f, "ncorner:{n}"),
            CellRule::Segment => write!(f, "segment"),
        }
    }
}

/// `rows × cols` cells tiling `frame`, each holding one motif drawn inside
/// the cell inset by `margin`. Cells are visited row-major.
#[allow(clippy::too_many_arguments)]
pub fn gen_motif_grid(
    rows: usize,
    cols: usize,
    rule: CellRule,
    page_w: f64,
    page_h: f64,
    frame: &Rect,
    margin: f64,
    rng: &mut RngState,
) -> Result<VectorScene> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParams("grid needs at least one row and column".into()));
    }
    let mut scene = VectorScene::new(page_w, page_h)?;
    let cw = frame.width() / cols as f64;
    let ch = frame.height() / rows as f64;
    if !(margin >= 0.0) || 2.0 * margin >= cw.min(ch) {
        return Err(Error::InvalidParams(format!(
            "margin {margin} leaves no room in a {cw}x{ch} cell"
        )));
    }
    for r in 0..rows {
        for c in 0..cols {
            let cell = Rect::new(
                frame.x0 + c as f64 * cw,
                frame.y0 + r as f64 * ch,
                frame.x0 + (c + 1) as f64 * cw,
                frame.y0 + (r + 1) as f64 * ch,
            )?
            .inset(margin)?;
            let motif = match rule {
                CellRule::NCorner(n) => gen_ncorner(n, &cell, rng)?,
                CellRule::Segment => {
                    let a = Point::new(rng.next_range(cell.x0, cell.x1), rng.next_range(cell.y0, cell.y1));
                    let b = Point::new(rng.next_range(cell.x0, cell.x1), rng.next_range(cell.y0, cell.y1));
                    Polyline::segment(a, b)
                }
            };
            scene.push(motif);
        }
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page(side: f64) -> Rect {
        Rect::new(0.0, 0.0, side, side).unwrap()
    }

    #[test]
    fn ncorner_vertex_counts() {
        let frame = Rect::new(10.0, 10.0, 90.0, 90.0).unwrap();
        let mut rng = RngState::new(3);
        for n in [3, 8, 23] {
            let p = gen_ncorner(n, &frame, &mut rng).unwrap();
            assert_eq!(p.points().len(), n);
            assert!(p.is_closed());
            assert!(p.points().iter().all(|q| frame.contains(*q)));
        }
    }

    #[test]
    fn ncorner_rejects_low_order() {
        let frame = Rect::new(0.0, 0.0, 1.0, 1.0).unwrap();
        let mut rng = RngState::new(3);
        assert!(matches!(gen_ncorner(2, &frame, &mut rng), Err(Error::InvalidOrder(2))));
    }

    #[test]
    fn ncorner_is_seed_stable() {
        let frame = Rect::new(0.0, 0.0, 1.0, 1.0).unwrap();
        let a = gen_ncorner(3, &frame, &mut RngState::new(11)).unwrap();
        let b = gen_ncorner(3, &frame, &mut RngState::new(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cell_rules_parse() {
        assert_eq!("ncorner:23".parse::<CellRule>().unwrap(), CellRule::NCorner(23));
        assert_eq!("segment".parse::<CellRule>().unwrap(), CellRule::Segment);
        assert!(matches!("spiral".parse::<CellRule>(), Err(Error::UnknownRule(_))));
        assert!(matches!("ncorner:2".parse::<CellRule>(), Err(Error::InvalidOrder(2))));
        assert_eq!(CellRule::NCorner(8).to_string(), "ncorner:8");
    }

    #[test]
    fn single_cell_grid() {
        let s = gen_motif_grid(
            1,
            1,
            CellRule::NCorner(8),
            100.0,
            100.0,
            &page(100.0),
            5.0,
            &mut RngState::new(1),
        )
        .unwrap();
        assert_eq!(s.strokes().len(), 1);
        assert!(s.strokes()[0].is_closed());
    }

    #[test]
    fn motifs_stay_in_their_cells() {
        let s = gen_motif_grid(
            10,
            10,
            CellRule::NCorner(23),
            200.0,
            200.0,
            &page(200.0),
            1.0,
            &mut RngState::new(5),
        )
        .unwrap();
        assert_eq!(s.strokes().len(), 100);
        for (i, stroke) in s.strokes().iter().enumerate() {
            let (r, c) = (i / 10, i % 10);
            let (lo_x, lo_y) = (c as f64 * 20.0 + 1.0, r as f64 * 20.0 + 1.0);
            for p in stroke.points() {
                assert!(p.x >= lo_x && p.x <= lo_x + 18.0);
                assert!(p.y >= lo_y && p.y <= lo_y + 18.0);
            }
        }
    }

    #[test]
    fn oversized_margin_rejected() {
        let r = gen_motif_grid(
            2,
            2,
            CellRule::Segment,
            10.0,
            10.0,
            &page(10.0),
            3.0,
            &mut RngState::new(1),
        );
        assert!(r.is_err());
    }
}
