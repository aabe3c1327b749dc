//! Static SVG of a configuration in the Poincaré disk, one panel per factor.
//!
//! Endpoints go through the Cayley transform `x ↦ (x − i)/(x + i)` in
//! double precision. Nothing computed here feeds back into exact code.

use std::fmt::Write;

use flatcert_core::flats::ConfigSpec;
use flatcert_core::moebius::BoundaryPt;

const PANEL: f64 = 360.0;
const RADIUS: f64 = 160.0;
const MARGIN: f64 = 20.0;

/// Point of the unit circle for a boundary point; `∞ ↦ 1`.
pub fn cayley(p: &BoundaryPt) -> (f64, f64) {
    let x = p.to_f64();
    if !x.is_finite() {
        return (1.0, 0.0);
    }
    let q = x * x + 1.0;
    ((x * x - 1.0) / q, -2.0 * x / q)
}

/// Path data of the geodesic between two points of the unit circle, in
/// screen coordinates of a panel centred at `(cx, cy)`.
fn geodesic_path(u: (f64, f64), v: (f64, f64), cx: f64, cy: f64) -> String {
    let screen = |p: (f64, f64)| (cx + RADIUS * p.0, cy - RADIUS * p.1);
    let (a, b) = (screen(u), screen(v));
    let dot = (u.0 * v.0 + u.1 * v.1).clamp(-1.0, 1.0);
    let theta = dot.acos();
    if std::f64::consts::PI - theta < 1e-6 {
        return format!("M {:.3} {:.3} L {:.3} {:.3}", a.0, a.1, b.0, b.1);
    }
    // the orthogonal circle has radius tan(θ/2) in disk units
    let r = RADIUS * (theta / 2.0).tan();
    let cross = u.0 * v.1 - u.1 * v.0;
    let sweep = if cross > 0.0 { 0 } else { 1 };
    format!(
        "M {:.3} {:.3} A {:.3} {:.3} 0 0 {} {:.3} {:.3}",
        a.0, a.1, r, r, sweep, b.0, b.1
    )
}

/// Renders every factor of `c` side by side. Each panel holds the boundary
/// circle and exactly `2n` geodesic paths, `A` flats first.
pub fn render(c: &ConfigSpec, title: &str) -> String {
    let width = PANEL * c.r() as f64;
    let height = PANEL + MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let _ = writeln!(
        s,
        "  <style>.boundary{{fill:none;stroke:#444;stroke-width:1}} .geodesic{{fill:none;stroke-width:1.5}} .A{{stroke:#1f5fa8}} .B{{stroke:#c0392b}} text{{font:12px sans-serif}}</style>"
    );
    for k in 0..c.r() {
        let cx = PANEL * k as f64 + PANEL / 2.0;
        let cy = MARGIN + PANEL / 2.0;
        let _ = writeln!(s, r#"  <g class="factor" data-factor="{}">"#, k + 1);
        let _ = writeln!(
            s,
            r#"    <text x="{:.1}" y="{:.1}" text-anchor="middle">factor {}</text>"#,
            cx,
            MARGIN,
            k + 1
        );
        let _ = writeln!(
            s,
            r#"    <circle class="boundary" cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS:.3}"/>"#
        );
        let sides = [("A", c.a()), ("B", c.b())];
        for (side, flats) in sides {
            for (i, f) in flats.iter().enumerate() {
                let g = &f.coords()[k];
                let d = geodesic_path(cayley(g.start()), cayley(g.end()), cx, cy);
                let _ = writeln!(
                    s,
                    r#"    <path class="geodesic {side}" data-flat="{side}{}" d="{d}"/>"#,
                    i + 1
                );
            }
        }
        let _ = writeln!(s, "  </g>");
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_lands_on_the_circle() {
        for x in [-3, -1, 0, 1, 2, 7] {
            let (a, b) = cayley(&BoundaryPt::from_int(x));
            assert!((a * a + b * b - 1.0).abs() < 1e-12);
        }
        assert_eq!(cayley(&BoundaryPt::from_int(0)), (-1.0, 0.0));
        assert_eq!(cayley(&BoundaryPt::Infinity), (1.0, 0.0));
    }

    #[test]
    fn antipodal_points_give_a_diameter() {
        let p = geodesic_path((0.0, 1.0), (0.0, -1.0), 0.0, 0.0);
        assert!(p.contains(" L "));
        let q = geodesic_path((1.0, 0.0), (0.0, 1.0), 0.0, 0.0);
        assert!(q.contains(" A ") && q.contains(" 0 0 0 "));
    }
}
