//! Deterministic SVG emission: polylines for edges, discs for vertices,
//! crosses for bends.

use std::fmt::Write;

use orthobend_core::compact::GridDrawing;
use orthobend_core::graph::PlaneGraph;

const SCALE: i64 = 24;
const MARGIN: i64 = 24;

/// Renders a grid drawing as a standalone SVG document. Output is
/// byte-deterministic for a given drawing.
pub fn emit_svg(g: &PlaneGraph, d: &GridDrawing) -> String {
    let min_x = d.coords.iter().map(|p| p.0).min().unwrap_or(0);
    let max_x = d.coords.iter().map(|p| p.0).max().unwrap_or(0);
    let min_y = d.coords.iter().map(|p| p.1).min().unwrap_or(0);
    let max_y = d.coords.iter().map(|p| p.1).max().unwrap_or(0);
    // Flip y so larger grid y is up, as drawn.
    let tx = |x: i64| (x - min_x) * SCALE + MARGIN;
    let ty = |y: i64| (max_y - y) * SCALE + MARGIN;
    let w = (max_x - min_x) * SCALE + 2 * MARGIN;
    let h = (max_y - min_y) * SCALE + 2 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">"
    );
    let _ = writeln!(out, "  <g fill=\"none\" stroke=\"#1a237e\" stroke-width=\"2\">");
    let mut edge_ids: Vec<u32> = (0..g.edge_count() as u32).collect();
    edge_ids.sort_by_key(|&e| g.edge_id(e));
    for e in &edge_ids {
        let pts: Vec<String> = d.polylines[*e as usize]
            .iter()
            .map(|&(x, y)| format!("{},{}", tx(x), ty(y)))
            .collect();
        let _ = writeln!(out, "    <polyline points=\"{}\"/>", pts.join(" "));
    }
    let _ = writeln!(out, "  </g>");
    // Bends as crosses.
    let _ = writeln!(out, "  <g stroke=\"#c62828\" stroke-width=\"2\" class=\"bend\">");
    for e in &edge_ids {
        let line = &d.polylines[*e as usize];
        for p in &line[1..line.len().saturating_sub(1)] {
            let (cx, cy) = (tx(p.0), ty(p.1));
            let r = 5;
            let _ = writeln!(
                out,
                "    <path d=\"M {} {} L {} {} M {} {} L {} {}\"/>",
                cx - r,
                cy - r,
                cx + r,
                cy + r,
                cx - r,
                cy + r,
                cx + r,
                cy - r
            );
        }
    }
    let _ = writeln!(out, "  </g>");
    let mut vertex_ids: Vec<u32> = (0..g.vertex_count() as u32).collect();
    vertex_ids.sort_by_key(|&v| g.vertex_id(v));
    let _ = writeln!(out, "  <g fill=\"#1a237e\">");
    for v in &vertex_ids {
        let (x, y) = d.coords[*v as usize];
        let _ = writeln!(out, "    <circle cx=\"{}\" cy=\"{}\" r=\"4\"/>", tx(x), ty(y));
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "  <g font-family=\"monospace\" font-size=\"11\" fill=\"#424242\">");
    for v in &vertex_ids {
        let (x, y) = d.coords[*v as usize];
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\">{}</text>",
            tx(x) + 6,
            ty(y) - 6,
            g.vertex_id(*v)
        );
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}
