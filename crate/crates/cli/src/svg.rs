//! SVG 1.1 rendering of an instance and an optional radius assignment.

use std::fmt::Write;

use diskscale_core::geom::{to_f64, Instance, RadiusAssignment};

/// Fixed-precision number without trailing zeros, so output is stable.
fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

/// One `<circle>` per disk, one `<ellipse>` dot per center. The y axis
/// points up, as in the instance's coordinates.
pub fn render(inst: &Instance, solution: Option<&RadiusAssignment>) -> String {
    let radius = |i: usize| solution.map_or(1.0, |r| r.radius(i));
    let centers: Vec<(f64, f64)> = inst.points().iter().map(|p| (to_f64(&p.x), -to_f64(&p.y))).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (i, &(x, y)) in centers.iter().enumerate() {
        let r = radius(i);
        x0 = x0.min(x - r);
        y0 = y0.min(y - r);
        x1 = x1.max(x + r);
        y1 = y1.max(y + r);
    }
    let margin = 0.1 * (x1 - x0).max(y1 - y0);
    let (vx, vy, vw, vh) = (x0 - margin, y0 - margin, x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = 0.004 * vw.max(vh);
    let dot = 2.0 * stroke;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let _ = writeln!(
        s,
        "<style>.disk{{fill:#4a90d9;fill-opacity:0.15;stroke:#2c3e50;stroke-width:{w}}}\
         .scaled{{fill:#e67e22;stroke:#c0392b;stroke-width:{w2}}}.center{{fill:#111}}</style>",
        w = num(stroke),
        w2 = num(2.0 * stroke)
    );
    for (i, &(x, y)) in centers.iter().enumerate() {
        let class = if radius(i) != 1.0 { "disk scaled" } else { "disk" };
        let _ = writeln!(s, "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(x), num(y), num(radius(i)));
    }
    for &(x, y) in &centers {
        let _ = writeln!(s, "<ellipse class=\"center\" cx=\"{}\" cy=\"{}\" rx=\"{d}\" ry=\"{d}\"/>", num(x), num(y), d = num(dot));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use diskscale_core::geom::{int, Instance};

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(2.0), "2");
        assert_eq!(num(-0.00001), "0");
        assert_eq!(num(1.0 / 3.0), "0.3333");
    }

    #[test]
    fn two_points() {
        let inst = Instance::from_coords([(int(0), int(0)), (int(3), int(0))], int(1), int(2), 1).unwrap();
        let svg = render(&inst, None);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("class=\"center\"").count(), 2);
        assert!(svg.contains("viewBox=\"-1.5 -1.5 6 3\""), "{svg}");
    }
}
