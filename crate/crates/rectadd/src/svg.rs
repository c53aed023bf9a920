//! SVG 1.1 rendering of a greedy square decomposition.

use std::fmt::Write;

use rectadd_core::{Decomposition, Rect};

/// Longer side of the original rectangle, in SVG user units.
const VIEW_SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

/// Packed squares are outlined (`class="square"`), the remainder is hatched
/// (`class="remainder"`). Math orientation: y grows upward.
pub fn render_svg(d: &Decomposition) -> String {
    let orig = &d.original;
    let (ox, oy) = (orig.x1().to_f64(), orig.y1().to_f64());
    let (w, h) = (orig.width().to_f64(), orig.height().to_f64());
    let scale = VIEW_SIZE / w.max(h);
    let (vw, vh) = (w * scale + 2.0 * MARGIN, h * scale + 2.0 * MARGIN);

    let smallest = d.steps.last().map(|s| s.side.to_f64() * scale).unwrap_or(VIEW_SIZE);
    let stroke = (smallest / 25.0).clamp(0.02, 2.0);

    let place = |r: &Rect| {
        let x = MARGIN + (r.x1().to_f64() - ox) * scale;
        let y = MARGIN + (oy + h - r.y2().to_f64()) * scale;
        (x, y, r.width().to_f64() * scale, r.height().to_f64() * scale)
    };

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{vw:.3}" height="{vh:.3}" viewBox="0 0 {vw:.3} {vh:.3}">"#
    )
    .unwrap();
    writeln!(out, "  <title>Greedy square decomposition of {orig}</title>").unwrap();
    writeln!(
        out,
        r#"  <defs>
    <pattern id="hatch" patternUnits="userSpaceOnUse" width="8" height="8" patternTransform="rotate(45)">
      <line x1="0" y1="0" x2="0" y2="8" stroke="black" stroke-width="1.5"/>
    </pattern>
  </defs>"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();

    for (step_index, step) in d.steps.iter().enumerate() {
        writeln!(out, r#"  <g id="step-{}" data-side="{}">"#, step_index + 1, step.side).unwrap();
        for sq in &step.squares {
            let (x, y, sw, sh) = place(sq);
            writeln!(
                out,
                r#"    <rect class="square" x="{x:.4}" y="{y:.4}" width="{sw:.4}" height="{sh:.4}" fill="none" stroke="black" stroke-width="{stroke:.4}"/>"#
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    if let Some(rem) = &d.remainder {
        let (x, y, rw, rh) = place(rem);
        writeln!(
            out,
            r#"  <rect class="remainder" x="{x:.4}" y="{y:.4}" width="{rw:.4}" height="{rh:.4}" fill="url(#hatch)" stroke="black" stroke-width="{stroke:.4}"/>"#
        )
        .unwrap();
    }
    let (x, y, ow, oh) = place(orig);
    writeln!(
        out,
        r#"  <rect class="outline" x="{x:.4}" y="{y:.4}" width="{ow:.4}" height="{oh:.4}" fill="none" stroke="black" stroke-width="{:.4}"/>"#,
        2.0 * stroke
    )
    .unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
