//! SVG 1.1 emission with fixed four-decimal coordinates so that identical
//! scenes serialize to identical bytes.

use std::fmt::Write;

use super::scene::VectorScene;

pub fn fmt_coord(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

/// Black unfilled strokes in scene order; closed polylines repeat their first
/// vertex.
pub fn to_svg(scene: &VectorScene) -> String {
    let w = fmt_coord(scene.width());
    let h = fmt_coord(scene.height());
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}mm\" height=\"{h}mm\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(
        out,
        "<g fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\">",
        fmt_coord(scene.stroke_width())
    );
    for stroke in scene.strokes() {
        out.push_str("<polyline points=\"");
        for (i, p) in stroke.emitted_points().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&fmt_coord(p.x));
            out.push(',');
            out.push_str(&fmt_coord(p.y));
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphics::scene::{Point, Polyline};

    #[test]
    fn exact_bytes_for_small_scene() {
        let mut s = VectorScene::new(10.0, 5.0).unwrap();
        s.push(
            Polyline::new(
                vec![Point::new(1.0, 1.0), Point::new(2.5, 1.0), Point::new(2.0, 3.0)],
                true,
            )
            .unwrap(),
        );
        let svg = to_svg(&s);
        let expected = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n\
<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"10.0000mm\" height=\"5.0000mm\" viewBox=\"0 0 10.0000 5.0000\">\n\
<g fill=\"none\" stroke=\"black\" stroke-width=\"0.5000\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n\
<polyline points=\"1.0000,1.0000 2.5000,1.0000 2.0000,3.0000 1.0000,1.0000\"/>\n\
</g>\n</svg>\n";
        assert_eq!(svg, expected);
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fmt_coord(-0.0), "0.0000");
        assert_eq!(fmt_coord(-0.00001), "0.0000");
        assert_eq!(fmt_coord(1.23456), "1.2346");
    }
}
