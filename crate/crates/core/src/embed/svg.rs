//! Plain SVG 1.1 rendering of segments and points.

use std::fmt::Write as _;

use crate::points::{Point, PointSet};
use crate::rational::to_f64;

use super::SegmentComplex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Stroke width and point radius as fractions of the larger extent.
    pub stroke: f64,
    pub radius: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            stroke: 0.004,
            radius: 0.006,
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        _ => s.to_string(),
    }
}

/// Lines for `segments`, circles for `points`. The viewBox is the bounding
/// box grown by 5% on each side; y points up.
pub fn emit_svg(segments: &[(Point, Point)], points: &[Point], opts: SvgOptions) -> String {
    let all: Vec<(f64, f64)> = segments
        .iter()
        .flat_map(|(a, b)| [a, b])
        .chain(points)
        .map(|p| (to_f64(p.x()), to_f64(p.y())))
        .collect();
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if all.is_empty() {
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1 1\">\n</svg>\n",
        );
        return out;
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
        all.iter().map(pick).fold(init, f)
    };
    let (x0, x1) = (
        fold(f64::min, f64::INFINITY, |p| p.0),
        fold(f64::max, f64::NEG_INFINITY, |p| p.0),
    );
    let (y0, y1) = (
        fold(f64::min, f64::INFINITY, |p| p.1),
        fold(f64::max, f64::NEG_INFINITY, |p| p.1),
    );
    let extent = (x1 - x0).max(y1 - y0);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let (mx, my) = (
        if x1 > x0 {
            0.05 * (x1 - x0)
        } else {
            0.05 * extent
        },
        if y1 > y0 {
            0.05 * (y1 - y0)
        } else {
            0.05 * extent
        },
    );
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(x0 - mx),
        num(-(y1 + my)),
        num(x1 - x0 + 2.0 * mx),
        num(y1 - y0 + 2.0 * my)
    );
    let _ = writeln!(
        out,
        "<g transform=\"scale(1,-1)\" stroke=\"black\" stroke-width=\"{}\" fill=\"black\">",
        num(opts.stroke * extent)
    );
    for (a, b) in segments {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(to_f64(a.x())),
            num(to_f64(a.y())),
            num(to_f64(b.x())),
            num(to_f64(b.y()))
        );
    }
    for p in points {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"none\"/>",
            num(to_f64(p.x())),
            num(to_f64(p.y())),
            num(opts.radius * extent)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

pub fn svg_for_complex(sc: &SegmentComplex, points: Option<&PointSet>, opts: SvgOptions) -> String {
    let segs: Vec<(Point, Point)> = sc
        .segments
        .iter()
        .map(|s| (s.a.clone(), s.b.clone()))
        .collect();
    let pts = points.map(|k| k.points().to_vec()).unwrap_or_default();
    emit_svg(&segs, &pts, opts)
}

pub fn svg_for_points(k: &PointSet, opts: SvgOptions) -> String {
    emit_svg(&[], k.points(), opts)
}
