use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::cones::Cone;
use crate::demazure::DemazureRoot;
use crate::error::{Error, Result};
use crate::lattice::{Int, LatticeVector};
use crate::surface::SurfaceCase;

const CELL: i64 = 24;
const RADIUS: i64 = 5;

fn coords2(v: &LatticeVector) -> (i64, i64) {
    let c = v.to_i64().expect("small coordinates");
    (c[0], c[1])
}

fn dot(out: &mut String, x: i64, y: i64, filled: bool) {
    let fill = if filled { "black" } else { "white" };
    let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{RADIUS}" fill="{fill}" stroke="black"/>"#);
}

/// Roots of a rank-2 cone in the box: filled dots for the first ray,
/// hollow dots for the second, grey lattice points elsewhere.
pub fn root_diagram(cone: &Cone, roots: &[DemazureRoot], bound: u32) -> Result<String> {
    if cone.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, found: cone.rank() });
    }
    let b = bound as i64;
    let size = (2 * b + 2) * CELL;
    let to_px = |(x, y): (i64, i64)| ((x + b + 1) * CELL, (b + 1 - y) * CELL);
    let mut out = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">"#);
    out.push('\n');
    let (ox, oy) = to_px((0, 0));
    let _ = writeln!(out, r#"<line x1="{CELL}" y1="{oy}" x2="{}" y2="{oy}" stroke="grey"/>"#, size - CELL);
    let _ = writeln!(out, r#"<line x1="{ox}" y1="{CELL}" x2="{ox}" y2="{}" stroke="grey"/>"#, size - CELL);
    // the weight cone, drawn along its extremal directions
    for f in cone.facets() {
        let (fx, fy) = coords2(f);
        let scale = b / fx.abs().max(fy.abs()).max(1);
        let (x, y) = to_px((fx * scale, fy * scale));
        let _ = writeln!(out, r#"<line x1="{ox}" y1="{oy}" x2="{x}" y2="{y}" stroke="steelblue" stroke-width="2"/>"#);
    }
    let first = &cone.rays()[0];
    let marked: BTreeSet<(i64, i64)> = roots.iter().map(|r| coords2(r.e())).collect();
    for x in -b..=b {
        for y in -b..=b {
            if !marked.contains(&(x, y)) {
                let (px, py) = to_px((x, y));
                let _ = writeln!(out, r#"<circle cx="{px}" cy="{py}" r="1.5" fill="lightgrey"/>"#);
            }
        }
    }
    for r in roots {
        let (px, py) = to_px(coords2(r.e()));
        dot(&mut out, px, py, r.ray() == first);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// `{base + k step : k >= 0}` intersected with `[-bound, bound]`.
fn progression_within(base: &Int, step: &Int, bound: i64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    let (Some(base), Some(step)) = (base.to_i64(), step.to_i64()) else {
        return out;
    };
    if step == 0 {
        if base.abs() <= bound {
            out.insert(base);
        }
        return out;
    }
    let steps = (base.abs() + bound) / step.abs() + 1;
    for k in 0..=steps {
        let t = base + k * step;
        if t.abs() <= bound {
            out.insert(t);
        }
    }
    out
}

/// The `T`-root line of a surface: filled dots for images of roots of
/// `(1,0)`, hollow dots (drawn lower) for images of roots of `(a,b)`.
pub fn t_root_line(case: &SurfaceCase, bound: u32) -> String {
    let s = &case.data;
    let b = bound as i64;
    // roots of (1,0) are (-1, m) with m >= ⌈a/b⌉, roots of (a,b) are m⁰ + k (b,-a)
    let rho1_base = -&s.r + s.rho1_threshold() * &s.q;
    let images = [
        progression_within(&rho1_base, &s.q, b),
        progression_within(&s.restrict(&s.least_rho2_root()), &s.d(), b),
    ];
    let width = (2 * b + 2) * CELL;
    let height = 4 * CELL;
    let mut out = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">"#);
    out.push('\n');
    let axis = 2 * CELL;
    let _ = writeln!(out, r#"<line x1="{CELL}" y1="{axis}" x2="{}" y2="{axis}" stroke="grey"/>"#, width - CELL);
    for t in -b..=b {
        let x = (t + b + 1) * CELL;
        let _ = writeln!(out, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="grey"/>"#, axis - 4, axis + 4);
        if t % 5 == 0 {
            let _ = writeln!(out, r#"<text x="{x}" y="{}" font-size="10" text-anchor="middle">{t}</text>"#, axis + 3 * CELL / 2);
        }
    }
    for t in &images[0] {
        dot(&mut out, (t + b + 1) * CELL, axis - RADIUS - 2, true);
    }
    for t in &images[1] {
        dot(&mut out, (t + b + 1) * CELL, axis + RADIUS + 2, false);
    }
    out.push_str("</svg>\n");
    out
}
