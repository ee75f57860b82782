//! SVG rendering of per-cell values.
//!
//! The colormap is linear in RGB: a value `v` maps to
//! `t = (v - min) / (max - min)` and to the colour `(1 - t) COLD + t HOT`.
//! When all values are equal, or none are given, `t = 0.5`.

use std::fmt::Write as _;

use sweepvor_core::VoronoiMesh;

pub const COLD: [u8; 3] = [44, 123, 182];
pub const HOT: [u8; 3] = [215, 25, 28];

/// Rendered width in pixels; the height follows the domain aspect ratio.
pub const WIDTH: f64 = 800.0;

/// `#rrggbb` for `t` in `[0, 1]`.
pub fn colour(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let mix = |a: u8, b: u8| ((1.0 - t) * a as f64 + t * b as f64).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(COLD[0], HOT[0]), mix(COLD[1], HOT[1]), mix(COLD[2], HOT[2]))
}

/// Colour parameter of each value over `[min, max]` of the slice.
pub fn normalise(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .map(|v| if hi > lo { (v - lo) / (hi - lo) } else { 0.5 })
        .collect()
}

/// One filled `<polygon>` per cell, in cell order.
pub fn render_svg(mesh: &VoronoiMesh, values: Option<&[f64]>) -> String {
    let (lo, hi) = mesh.domain().bounding_box();
    let scale = WIDTH / (hi.x - lo.x).max(hi.y - lo.y);
    let (w, h) = ((hi.x - lo.x) * scale, (hi.y - lo.y) * scale);
    let ts = match values {
        Some(v) => normalise(v),
        None => vec![0.5; mesh.n_cells()],
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.4} {h:.4}">"#
    );
    for (cell, t) in mesh.cells().iter().zip(ts) {
        let pts: Vec<String> = cell
            .vertices
            .iter()
            .map(|p| format!("{:.4},{:.4}", (p.x - lo.x) * scale, (hi.y - p.y) * scale))
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{}" stroke="black" stroke-width="0.5"/>"#,
            pts.join(" "),
            colour(t)
        );
    }
    s.push_str("</svg>\n");
    s
}
