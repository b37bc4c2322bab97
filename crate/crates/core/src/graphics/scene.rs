use crate::error::{Error, Result};

/// Default pen width in page units (millimetres on an A-series page).
pub const DEFAULT_STROKE_WIDTH: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let r = Self { x0, y0, x1, y1 };
        if ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) || x1 <= x0 || y1 <= y0 {
            return Err(Error::InvalidParams(format!(
                "degenerate rectangle [{x0}, {x1}] x [{y0}, {y1}]"
            )));
        }
        Ok(r)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    pub fn inset(&self, d: f64) -> Result<Rect> {
        Rect::new(self.x0 + d, self.y0 + d, self.x1 - d, self.y1 - d)
    }

    /// Liang–Barsky clip of segment `a → b`; `None` when it misses the rectangle.
    pub fn clip_segment(&self, a: Point, b: Point) -> Option<(Point, Point)> {
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        for (p, q) in [
            (-dx, a.x - self.x0),
            (dx, self.x1 - a.x),
            (-dy, a.y - self.y0),
            (dy, self.y1 - a.y),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        if t0 > t1 {
            return None;
        }
        let at = |t: f64| {
            let p = if t == 0.0 {
                a
            } else if t == 1.0 {
                b
            } else {
                a.lerp(b, t)
            };
            Point::new(p.x.clamp(self.x0, self.x1), p.y.clamp(self.y0, self.y1))
        };
        Some((at(t0), at(t1)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Point>,
    closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<Point>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "a polyline needs at least 2 points, got {}",
                points.len()
            )));
        }
        if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidParams("non-finite polyline coordinate".into()));
        }
        Ok(Self { points, closed })
    }

    pub fn segment(a: Point, b: Point) -> Self {
        Self {
            points: vec![a, b],
            closed: false,
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Vertices as drawn: closed polylines repeat their first point at the end.
    pub fn emitted_points(&self) -> impl Iterator<Item = Point> + '_ {
        let tail = self.closed.then(|| self.points[0]);
        self.points.iter().copied().chain(tail)
    }

    pub fn midpoint(&self) -> Point {
        let n = self.points.len() as f64;
        let (sx, sy) = self.points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point::new(sx / n, sy / n)
    }

    /// Pieces of this polyline inside `rect`. A fully contained polyline is
    /// returned unchanged; otherwise the result is a list of open runs.
    pub fn clip(&self, rect: &Rect) -> Vec<Polyline> {
        if self.points.iter().all(|p| rect.contains(*p)) {
            return vec![self.clone()];
        }
        let pts: Vec<Point> = self.emitted_points().collect();
        let mut pieces: Vec<Vec<Point>> = Vec::new();
        let mut current: Vec<Point> = Vec::new();
        for w in pts.windows(2) {
            match rect.clip_segment(w[0], w[1]) {
                Some((a, b)) => {
                    if current.last() != Some(&a) {
                        if current.len() >= 2 {
                            pieces.push(std::mem::take(&mut current));
                        }
                        current.clear();
                        current.push(a);
                    }
                    current.push(b);
                }
                None => {
                    if current.len() >= 2 {
                        pieces.push(std::mem::take(&mut current));
                    }
                    current.clear();
                }
            }
        }
        if current.len() >= 2 {
            pieces.push(current);
        }
        pieces
            .into_iter()
            .map(|points| Polyline { points, closed: false })
            .collect()
    }

    fn translate(&mut self, dx: f64, dy: f64) {
        for p in &mut self.points {
            p.x += dx;
            p.y += dy;
        }
    }
}

/// Ordered strokes on a `width × height` page with the origin top-left.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorScene {
    width: f64,
    height: f64,
    stroke_width: f64,
    strokes: Vec<Polyline>,
}

impl VectorScene {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        Rect::new(0.0, 0.0, width, height)?;
        Ok(Self {
            width,
            height,
            stroke_width: DEFAULT_STROKE_WIDTH,
            strokes: Vec::new(),
        })
    }

    pub fn with_stroke_width(mut self, w: f64) -> Result<Self> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidParams(format!("stroke width must be > 0, got {w}")));
        }
        self.stroke_width = w;
        Ok(self)
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn stroke_width(&self) -> f64 {
        self.stroke_width
    }

    pub fn strokes(&self) -> &[Polyline] {
        &self.strokes
    }

    pub fn page(&self) -> Rect {
        Rect {
            x0: 0.0,
            y0: 0.0,
            x1: self.width,
            y1: self.height,
        }
    }

    /// Adds a stroke, clipped to the page.
    pub fn push(&mut self, stroke: Polyline) {
        let page = self.page();
        self.strokes.extend(stroke.clip(&page));
    }

    /// Editorial crop: strokes fully outside `rect` are dropped, the rest are
    /// clipped, and the page becomes `rect` translated to the origin.
    pub fn crop(&self, rect: &Rect) -> Result<VectorScene> {
        let page = self.page();
        let x0 = rect.x0.max(0.0);
        let y0 = rect.y0.max(0.0);
        let inter = Rect::new(x0, y0, rect.x1.min(page.x1), rect.y1.min(page.y1))?;
        let mut out = VectorScene::new(inter.width(), inter.height())?.with_stroke_width(self.stroke_width)?;
        for s in &self.strokes {
            for mut piece in s.clip(&inter) {
                piece.translate(-inter.x0, -inter.y0);
                let bounds = out.page();
                for p in &mut piece.points {
                    p.x = p.x.clamp(0.0, bounds.x1);
                    p.y = p.y.clamp(0.0, bounds.y1);
                }
                out.strokes.push(piece);
            }
        }
        Ok(out)
    }
}
