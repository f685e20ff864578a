use std::fmt::Write as _;
use std::str::FromStr;

use super::{central_distances_of, DataKind, FanSolution, FanSpec, GeomError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Csv,
}

impl FromStr for Format {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Format::Svg),
            "csv" => Ok(Format::Csv),
            _ => Err(GeomError::Format(s.to_string())),
        }
    }
}

pub fn render(sol: &FanSolution, spec: &FanSpec, format: Format) -> Result<Vec<u8>, GeomError> {
    Ok(match format {
        Format::Csv => csv(sol).into_bytes(),
        Format::Svg => svg(sol, spec).into_bytes(),
    })
}

fn csv(sol: &FanSolution) -> String {
    let mut out = String::from("index,x,y\n");
    for (i, [x, y]) in sol.vertices.iter().enumerate() {
        writeln!(out, "{i},{:.12},{:.12}", unsigned_zero(*x), unsigned_zero(*y)).unwrap();
    }
    out
}

/// Keeps rounding noise from printing as `-0.000000000000`.
fn unsigned_zero(v: f64) -> f64 {
    if v.abs() < 5e-13 {
        0.0
    } else {
        v
    }
}

fn svg(sol: &FanSolution, spec: &FanSpec) -> String {
    let r = sol.radius;
    let margin = 0.1 * 2.0 * r;
    let side = 2.0 * r + 2.0 * margin;
    let stroke = r / 100.0;
    let font = r / 12.0;
    // SVG's y axis points down
    let pt = |v: &[f64; 2]| (v[0], -v[1]);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        -r - margin,
        -r - margin,
        side,
        side
    )
    .unwrap();
    writeln!(
        out,
        r#"  <circle cx="0" cy="0" r="{r:.6}" fill="none" stroke="gray" stroke-width="{:.6}" stroke-dasharray="{:.6}"/>"#,
        stroke / 2.0,
        stroke * 4.0
    )
    .unwrap();
    writeln!(out, r#"  <circle class="center" cx="0" cy="0" r="{:.6}" fill="black"/>"#, stroke * 2.0).unwrap();
    let dists = central_distances_of(&sol.vertices);
    let labels: Vec<String> = match spec.kind {
        DataKind::CentralDistances => spec.values.iter().enumerate().map(|(i, v)| format!("d{}={v}", i + 1)).collect(),
        DataKind::SideLengths => spec.values.iter().enumerate().map(|(i, v)| format!("a{}={v}", i + 1)).collect(),
    };
    for (i, w) in sol.vertices.windows(2).enumerate() {
        let (x1, y1) = pt(&w[0]);
        let (x2, y2) = pt(&w[1]);
        writeln!(
            out,
            r#"  <line class="chord" x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}" stroke="black" stroke-width="{stroke:.6}"/>"#
        )
        .unwrap();
        // label placed on the far side of the chord, away from the center
        let (mx, my) = (0.5 * (x1 + x2), 0.5 * (y1 + y2));
        let scale = if dists[i] > 0.0 { (dists[i] + font) / dists[i] } else { 1.0 };
        writeln!(
            out,
            r#"  <text x="{:.6}" y="{:.6}" font-size="{font:.6}" text-anchor="middle">{}</text>"#,
            mx * scale,
            my * scale,
            labels[i]
        )
        .unwrap();
    }
    for (i, v) in sol.vertices.iter().enumerate() {
        let (x, y) = pt(v);
        writeln!(out, r#"  <circle class="vertex" cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="black"><title>A{i}</title></circle>"#, stroke * 1.5)
            .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
