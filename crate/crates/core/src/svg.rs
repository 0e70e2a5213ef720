//! SVG 1.1 rendering of the punctured upper half-plane region: punctures as
//! circles inside the viewport [-xmax, xmax] x (0, ymax]. Coordinates are
//! rendered as decimal approximations for display only.

use crate::num::quad::quad_approx_f64;
use crate::period::Puncture;

const W: f64 = 800.0;
const H: f64 = 400.0;
const MARGIN: f64 = 40.0;

pub fn punctures_svg(n: u32, punctures: &[Puncture], xmax: f64, ymax: f64) -> String {
    let sx = (W - 2.0 * MARGIN) / (2.0 * xmax);
    let sy = (H - 2.0 * MARGIN) / ymax;
    let map_x = |x: f64| MARGIN + (x + xmax) * sx;
    let map_y = |y: f64| H - MARGIN - y * sy;

    let mut body = String::new();
    // axes: the real line and the imaginary axis
    body.push_str(&format!(
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\" stroke-width=\"1\"/>\n",
        map_x(-xmax), map_y(0.0), map_x(xmax), map_y(0.0)
    ));
    body.push_str(&format!(
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#bbb\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n",
        map_x(0.0), map_y(0.0), map_x(0.0), map_y(ymax)
    ));
    for p in punctures {
        let z = p.point();
        let x = quad_approx_f64(z.x());
        let y = quad_approx_f64(z.y());
        if x.abs() > xmax || y > ymax || y <= 0.0 {
            continue;
        }
        body.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3.5\" fill=\"#c0392b\" fill-opacity=\"0.85\">\n    <title>b={} c={} ({:.4} + {:.4}i)</title>\n  </circle>\n",
            map_x(x), map_y(y), p.b, p.c, x, y
        ));
    }
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n  <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n  <text x=\"{}\" y=\"20\" font-family=\"monospace\" font-size=\"13\">punctured upper half-plane, n = {n}</text>\n{body}</svg>\n",
        MARGIN
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_circles_within_viewport() {
        let punctures = crate::period::punctures_in_box(2, 3, 3).unwrap();
        let svg = punctures_svg(2, &punctures, 2.0, 2.0);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg"));
        assert!(svg.contains("circle"));
        // the (1, 0) puncture is at height 1/sqrt(2) < 2: must be drawn
        assert!(svg.contains("b=1 c=0"));
        // deterministic output
        let svg2 = punctures_svg(2, &punctures, 2.0, 2.0);
        assert_eq!(svg, svg2);
    }
}
