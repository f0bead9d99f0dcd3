//! Static SVG plots of region estimates.
//!
//! Boundary edges are drawn solid when their midpoint belongs to `Λ_k`,
//! dashed when it does not and dotted when undecided. Vertices follow the
//! same rule with filled, hollow and grey dots.

use crate::geometry::{Point, Verdict};
use crate::range::RegionEstimate;
use crate::spectral::SpectralMeasureModel;
use std::fmt::Write as _;

const SIZE: f64 = 480.0;

pub fn verdict_at(region: &RegionEstimate, p: Point) -> Verdict {
    region
        .boundary_report
        .iter()
        .min_by(|a, b| (a.point - p).norm().total_cmp(&(b.point - p).norm()))
        .filter(|s| (s.point - p).norm() < 1e-9)
        .map_or(Verdict::Uncertain, |s| s.verdict)
}

fn stroke(v: Verdict) -> &'static str {
    match v {
        Verdict::In => "",
        Verdict::Out => r#" stroke-dasharray="8 5""#,
        Verdict::Uncertain => r#" stroke-dasharray="1 4""#,
    }
}

/// Render `region`, with the atoms of `model` as small crosses if given.
pub fn region_svg(region: &RegionEstimate, model: Option<&SpectralMeasureModel>) -> String {
    let mut pts: Vec<Point> = region.polygon.vertices().to_vec();
    if let Some(m) = model {
        pts.extend(m.atoms().iter().map(|a| a.location));
    }
    let reach = pts.iter().map(|p| p.re.abs().max(p.im.abs())).fold(0.5, f64::max) * 1.15;
    let scale = SIZE / (2.0 * reach);
    let map = |p: Point| ((p.re + reach) * scale, (reach - p.im) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">
<rect width="100%" height="100%" fill="white"/>
<title>Lambda_{} region</title>"#,
        region.k
    );
    let (ox, oy) = map(Point::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r##"<g stroke="#bbbbbb" stroke-width="1"><line x1="0" y1="{oy:.3}" x2="{SIZE}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{SIZE}"/></g>"##
    );
    let verts = region.polygon.vertices();
    if verts.len() >= 3 {
        let list: Vec<String> = verts
            .iter()
            .map(|&v| {
                let (x, y) = map(v);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#cfe0f5" stroke="none"/>"##,
            list.join(" ")
        );
    }
    let _ = writeln!(out, r##"<g stroke="#1f4e8c" stroke-width="2" fill="none">"##);
    for (a, b) in region.polygon.edges() {
        let v = verdict_at(region, 0.5 * (a + b));
        let ((x1, y1), (x2, y2)) = (map(a), map(b));
        let _ = writeln!(
            out,
            r#"<line class="{}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"{}/>"#,
            class(v),
            stroke(v)
        );
    }
    let _ = writeln!(out, "</g>");
    for &p in verts {
        let v = verdict_at(region, p);
        let (x, y) = map(p);
        let fill = match v {
            Verdict::In => "#1f4e8c",
            Verdict::Out => "white",
            Verdict::Uncertain => "#999999",
        };
        let _ = writeln!(
            out,
            r##"<circle class="{}" cx="{x:.3}" cy="{y:.3}" r="4" fill="{fill}" stroke="#1f4e8c" stroke-width="1.5"/>"##,
            class(v)
        );
    }
    if let Some(m) = model {
        let _ = writeln!(out, r##"<g stroke="#b22222" stroke-width="1.5">"##);
        for a in m.atoms() {
            let (x, y) = map(a.location);
            let _ = writeln!(
                out,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/><line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                x - 4.0,
                y - 4.0,
                x + 4.0,
                y + 4.0,
                x - 4.0,
                y + 4.0,
                x + 4.0,
                y - 4.0
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

fn class(v: Verdict) -> &'static str {
    match v {
        Verdict::In => "in",
        Verdict::Out => "out",
        Verdict::Uncertain => "uncertain",
    }
}
