// SPDX-License-Identifier: Apache-2.0

//! Minimal line plots written directly as SVG.

use std::fmt::Write as _;

use crate::table::ResultTable;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x: String,
    pub y: String,
    /// Column whose distinct values split the rows into separate lines.
    pub series: Option<String>,
    pub log_x: bool,
    pub log_y: bool,
    pub title: String,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn transform(v: f64, log: bool) -> Option<f64> {
    if log {
        (v > 0.0).then(|| v.log10())
    } else {
        v.is_finite().then_some(v)
    }
}

pub fn render(table: &ResultTable, plot: &PlotSpec) -> String {
    let xi = table.column_index(&plot.x).expect("x column exists");
    let yi = table.column_index(&plot.y).expect("y column exists");
    let si = plot.series.as_ref().and_then(|s| table.column_index(s));

    // series key -> points, in first-seen order
    let mut series: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for row in table.rows() {
        let key = si.map(|i| row[i].as_f64()).unwrap_or(0.0);
        let (Some(x), Some(y)) = (transform(row[xi].as_f64(), plot.log_x), transform(row[yi].as_f64(), plot.log_y)) else {
            continue;
        };
        match series.iter_mut().find(|(k, _)| *k == key) {
            Some((_, pts)) => pts.push((x, y)),
            None => series.push((key, vec![(x, y)])),
        }
    }

    let all = series.iter().flat_map(|(_, p)| p.iter().copied());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let label = |v: f64, log: bool| if log { format!("1e{v:.2}") } else { format!("{v:.4}") };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        plot.title
    );
    let _ = writeln!(
        s,
        r#"<path d="M{m} {b} L{r} {b} M{m} {b} L{m} {m}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for (x, y, anchor, text) in [
        (MARGIN, HEIGHT - MARGIN + 18.0, "start", label(x0, plot.log_x)),
        (WIDTH - MARGIN, HEIGHT - MARGIN + 18.0, "end", label(x1, plot.log_x)),
        (MARGIN - 6.0, HEIGHT - MARGIN, "end", label(y0, plot.log_y)),
        (MARGIN - 6.0, MARGIN + 4.0, "end", label(y1, plot.log_y)),
        (WIDTH / 2.0, HEIGHT - 16.0, "middle", plot.x.clone()),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{text}</text>"#
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" transform="rotate(-90 16 {:.2})" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        plot.y
    );
    for (idx, (key, pts)) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let points: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            points.join(" ")
        );
        if let Some(name) = &plot.series {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" fill="{color}" font-family="sans-serif" font-size="11">{name} = {key}</text>"#,
                WIDTH - MARGIN - 90.0,
                MARGIN + 14.0 * (idx as f64 + 1.0)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{ColumnKind, Value};

    #[test]
    fn renders_one_polyline_per_series() {
        let mut t = ResultTable::new([("m", ColumnKind::Int), ("g", ColumnKind::Real), ("error", ColumnKind::Real)]);
        for m in 1..=2 {
            for g in [0.1, 0.2, 0.4] {
                t.push(vec![Value::Int(m), Value::Real(g), Value::Real(g.powi(m as i32 + 1))]);
            }
        }
        let spec = PlotSpec {
            x: "g".into(),
            y: "error".into(),
            series: Some("m".into()),
            log_x: true,
            log_y: true,
            title: "order error".into(),
        };
        let svg = render(&t, &spec);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg, render(&t, &spec));
    }

    #[test]
    fn log_scale_drops_non_positive_points() {
        let mut t = ResultTable::new([("x", ColumnKind::Real), ("y", ColumnKind::Real)]);
        t.push(vec![Value::Real(1.0), Value::Real(0.0)]);
        t.push(vec![Value::Real(2.0), Value::Real(1.0)]);
        let spec = PlotSpec {
            x: "x".into(),
            y: "y".into(),
            series: None,
            log_x: false,
            log_y: true,
            title: String::new(),
        };
        let svg = render(&t, &spec);
        assert!(svg.contains("<polyline points=\"60.00,420.00\""), "{svg}");
    }
}
