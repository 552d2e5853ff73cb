//! Rendering a point set on the `q × q` grid, as SVG or text.

use ips_core::plane::PointSet;
use std::fmt::Write;

const CELL: u32 = 24;
const MARGIN: u32 = 24;

/// Rows from `y = q−1` down to `y = 0`; `#` marks a point, `.` an empty cell.
pub fn ascii(set: &PointSet) -> String {
    let q = set.q();
    let mut out = String::new();
    for y in (0..q).rev() {
        let row: Vec<&str> = (0..q).map(|x| if set.contains_code(x * q + y) { "#" } else { "." }).collect();
        writeln!(out, "{:>3} {}", y, row.join(" ")).unwrap();
    }
    let axis: Vec<String> = (0..q).map(|x| (x % 10).to_string()).collect();
    writeln!(out, "    {}", axis.join(" ")).unwrap();
    out
}

/// Grid of `q × q` cells with a filled dot in the cell of each point.
pub fn svg(set: &PointSet) -> String {
    let q = set.q();
    let side = q * CELL + 2 * MARGIN;
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#).unwrap();
    writeln!(out, r#"<rect width="{side}" height="{side}" fill="white"/>"#).unwrap();
    for i in 0..=q {
        let t = MARGIN + i * CELL;
        let (a, b) = (MARGIN, MARGIN + q * CELL);
        writeln!(out, r#"<line x1="{t}" y1="{a}" x2="{t}" y2="{b}" stroke="gray" stroke-width="1"/>"#).unwrap();
        writeln!(out, r#"<line x1="{a}" y1="{t}" x2="{b}" y2="{t}" stroke="gray" stroke-width="1"/>"#).unwrap();
    }
    for [x, y] in set.coords() {
        let cx = MARGIN + x * CELL + CELL / 2;
        let cy = MARGIN + (q - 1 - y) * CELL + CELL / 2;
        writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="{}" fill="black"/>"#, CELL * 3 / 8).unwrap();
    }
    out.push_str("</svg>\n");
    out
}
