//! Deterministic SVG rendering of instances and solutions, optionally with
//! the Voronoi cells of the selected points.

use crate::geom::Coord;
use crate::instance::{Instance, SubsetSolution};
use num_traits::ToPrimitive;

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

fn approx(c: &Coord) -> f64 {
    c.to_f64().unwrap_or(0.0)
}

/// Clips a convex polygon by the halfplane `a*x + b*y <= c`.
fn clip(poly: &[(f64, f64)], a: f64, b: f64, c: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let fp = a * p.0 + b * p.1 - c;
        let fq = a * q.0 + b * q.1 - c;
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// Renders the instance; solution points are emphasized, and when `voronoi`
/// is set the Voronoi cell of each selected point is drawn behind them.
pub fn emit_svg(inst: &Instance, solution: Option<&SubsetSolution>, voronoi: bool) -> String {
    let width = 640.0;
    let height = 640.0;
    let margin = 40.0;
    let xs: Vec<f64> = inst.points.iter().map(|p| approx(&p.pos.x)).collect();
    let ys: Vec<f64> = inst.points.iter().map(|p| approx(&p.pos.y)).collect();
    let (min_x, max_x) = xs
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let (min_y, max_y) = ys
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let span_x = (max_x - min_x).max(1.0);
    let span_y = (max_y - min_y).max(1.0);
    let scale = ((width - 2.0 * margin) / span_x).min((height - 2.0 * margin) / span_y);
    let tx = |x: f64| margin + (x - min_x) * scale;
    let ty = |y: f64| height - margin - (y - min_y) * scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if voronoi {
        if let Some(sol) = solution {
            // Cell of each selected point: intersection of nearer-halfplanes
            // against the other selected points, clipped to the frame.
            let frame = vec![
                (min_x - span_x, min_y - span_y),
                (max_x + span_x, min_y - span_y),
                (max_x + span_x, max_y + span_y),
                (min_x - span_x, max_y + span_y),
            ];
            for &i in &sol.indices {
                let pi = &inst.points[i];
                let (px, py) = (approx(&pi.pos.x), approx(&pi.pos.y));
                let mut cell = frame.clone();
                for &j in &sol.indices {
                    if i == j {
                        continue;
                    }
                    let qj = &inst.points[j];
                    let (qx, qy) = (approx(&qj.pos.x), approx(&qj.pos.y));
                    // Closer to p than to q: 2(q-p).x <= |q|^2 - |p|^2.
                    let a = 2.0 * (qx - px);
                    let b = 2.0 * (qy - py);
                    let c = qx * qx + qy * qy - px * px - py * py;
                    cell = clip(&cell, a, b, c);
                    if cell.is_empty() {
                        break;
                    }
                }
                if cell.len() >= 3 {
                    let path: Vec<String> = cell
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y)))
                        .collect();
                    let color = PALETTE[(pi.color as usize) % PALETTE.len()];
                    out.push_str(&format!(
                        "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.15\" stroke=\"{}\" stroke-opacity=\"0.5\"/>\n",
                        path.join(" "),
                        color,
                        color
                    ));
                }
            }
        }
    }

    for (idx, p) in inst.points.iter().enumerate() {
        let color = PALETTE[(p.color as usize) % PALETTE.len()];
        let cx = tx(approx(&p.pos.x));
        let cy = ty(approx(&p.pos.y));
        let selected = solution.map_or(false, |s| s.contains(idx));
        if selected {
            out.push_str(&format!(
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"9\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n"
            ));
        }
        out.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"4\" fill=\"{color}\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}
