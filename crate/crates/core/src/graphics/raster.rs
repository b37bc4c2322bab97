use super::scene::{Point, VectorScene};
use crate::measures::SymbolGrid;

/// Binary raster of a scene: symbol 1 where a stroke passes, 0 elsewhere.
/// Each segment is sampled every quarter pixel.
pub fn rasterize(scene: &VectorScene, px_w: usize, px_h: usize) -> SymbolGrid {
    let mut cells = vec![0u32; px_w * px_h];
    let sx = px_w as f64 / scene.width();
    let sy = px_h as f64 / scene.height();
    let mut mark = |p: Point| {
        let x = ((p.x * sx).floor() as isize).clamp(0, px_w as isize - 1) as usize;
        let y = ((p.y * sy).floor() as isize).clamp(0, px_h as isize - 1) as usize;
        cells[y * px_w + x] = 1;
    };
    for stroke in scene.strokes() {
        let pts: Vec<Point> = stroke.emitted_points().collect();
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let len_px = ((b.x - a.x) * sx).hypot((b.y - a.y) * sy);
            let steps = (len_px * 4.0).ceil().max(1.0) as usize;
            for i in 0..=steps {
                mark(a.lerp(b, i as f64 / steps as f64));
            }
        }
    }
    SymbolGrid::new(px_w, px_h, 2, cells).expect("raster dimensions are consistent")
}
