//! The cross-section polygon of a canonical half-cone and the scaled-copy
//! distance machinery built on it.
//!
//! After canonicalization the half-cone's section at z = 1 is a convex
//! polygon M lying in x >= 0, with the origin on the relative interior of its
//! x = 0 edge. The surface of a translated half-cone is then described by
//! `f(q) = weight + gauge(q - apex)`, where the gauge of a direction `w` is
//! the factor by which M must be scaled to reach `w` -- a maximum of linear
//! functions, one per boundary edge, selected by a binary search over the
//! edge directions.

use crate::geom::{convex_hull, Coord, Point};
use num_traits::One;
use num_traits::Zero;
use super::{CanonicalizeError, Site};

/// Cross-section polygon of one half-cone: the chain of boundary vertices
/// from (0, y_lo) counterclockwise around the x > 0 side to (0, y_hi).
#[derive(Clone, Debug)]
pub struct PolygonM {
    pub chain: Vec<Point>,
    /// Per chain edge, the supporting line `nx*u + ny*v = c` with c > 0.
    edges: Vec<(Coord, Coord, Coord)>,
    pub y_lo: Coord,
    pub y_hi: Coord,
}

fn cross2(a: &Point, bx: &Coord, by: &Coord) -> Coord {
    &a.x * by - &a.y * bx
}

impl PolygonM {
    /// Intersects the given halfplanes `a*x + b*y <= c` (the x >= 0 guard is
    /// added internally) into the section polygon.
    pub fn build(halfplanes: &[(Coord, Coord, Coord)]) -> Result<PolygonM, CanonicalizeError> {
        let mut hs: Vec<(Coord, Coord, Coord)> = halfplanes.to_vec();
        hs.push((-Coord::one(), Coord::zero(), Coord::zero()));
        // Candidate vertices: pairwise boundary intersections that satisfy
        // every constraint.
        let mut verts: Vec<Point> = Vec::new();
        for i in 0..hs.len() {
            for j in (i + 1)..hs.len() {
                let (a1, b1, c1) = &hs[i];
                let (a2, b2, c2) = &hs[j];
                let det = a1 * b2 - a2 * b1;
                if det.is_zero() {
                    continue;
                }
                let x = (c1 * b2 - c2 * b1) / &det;
                let y = (a1 * c2 - a2 * c1) / &det;
                if hs.iter().all(|(a, b, c)| &(a * &x + b * &y) <= c) {
                    verts.push(Point::new(x, y));
                }
            }
        }
        verts.sort_by(|p, q| p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y)));
        verts.dedup();
        if verts.len() < 3 {
            return Err(CanonicalizeError::EmptyInterior);
        }
        let hull = convex_hull(&verts);
        if hull.is_degenerate() {
            return Err(CanonicalizeError::EmptyInterior);
        }
        let vs = hull.vertices;
        let n = vs.len();
        // Locate the x = 0 edge endpoints.
        let on_axis: Vec<usize> = (0..n).filter(|&i| vs[i].x.is_zero()).collect();
        if on_axis.len() != 2 {
            return Err(CanonicalizeError::EmptyInterior);
        }
        let (lo_idx, hi_idx) = if vs[on_axis[0]].y < vs[on_axis[1]].y {
            (on_axis[0], on_axis[1])
        } else {
            (on_axis[1], on_axis[0])
        };
        let y_lo = vs[lo_idx].y.clone();
        let y_hi = vs[hi_idx].y.clone();
        if !(y_lo < Coord::zero() && Coord::zero() < y_hi) {
            return Err(CanonicalizeError::EmptyInterior);
        }
        // Counterclockwise chain from (0, y_lo) around the x > 0 side.
        let mut chain = Vec::with_capacity(n);
        let mut k = lo_idx;
        loop {
            chain.push(vs[k].clone());
            if k == hi_idx {
                break;
            }
            k = (k + 1) % n;
        }
        if chain.len() < 2 || chain.iter().skip(1).rev().skip(1).any(|p| p.x.is_zero()) {
            return Err(CanonicalizeError::EmptyInterior);
        }
        let mut edges = Vec::with_capacity(chain.len() - 1);
        for w in chain.windows(2) {
            // Outward line through the edge, with the origin strictly on the
            // < c side.
            let nx = &w[1].y - &w[0].y;
            let ny = &w[0].x - &w[1].x;
            let c = &nx * &w[0].x + &ny * &w[0].y;
            debug_assert!(c > Coord::zero(), "origin lies strictly inside");
            edges.push((nx, ny, c));
        }
        Ok(PolygonM {
            chain,
            edges,
            y_lo,
            y_hi,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of the chain edge crossed by the ray from the origin through
    /// `w`, found by binary search over the vertex directions. Requires
    /// `w.x >= 0` and `w != 0`.
    pub fn edge_for(&self, wx: &Coord, wy: &Coord) -> usize {
        // Largest chain vertex index whose direction is not counterclockwise
        // past w.
        let mut lo = 0usize;
        let mut hi = self.chain.len() - 1;
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if cross2(&self.chain[mid], wx, wy) >= Coord::zero() {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo.min(self.edges.len() - 1)
    }

    /// Both chain edges active at direction `w`: two when the ray passes
    /// exactly through an interior chain vertex.
    pub fn active_edges(&self, wx: &Coord, wy: &Coord) -> (usize, Option<usize>) {
        let e = self.edge_for(wx, wy);
        if e + 1 < self.edges.len()
            && cross2(&self.chain[e + 1], wx, wy).is_zero()
        {
            (e, Some(e + 1))
        } else if e > 0 && cross2(&self.chain[e], wx, wy).is_zero() {
            (e - 1, Some(e))
        } else {
            (e, None)
        }
    }

    /// The scaling gauge: least `t >= 0` with `w` inside `t * M`. None when
    /// `w.x < 0` (outside the half-cone's shadow).
    pub fn gauge(&self, wx: &Coord, wy: &Coord) -> Option<Coord> {
        if wx < &Coord::zero() {
            return None;
        }
        if wx.is_zero() && wy.is_zero() {
            return Some(Coord::zero());
        }
        let e = self.edge_for(wx, wy);
        let (nx, ny, c) = &self.edges[e];
        Some((nx * wx + ny * wy) / c)
    }

    /// Linear form of edge `e` as a function of the query point, for a cone
    /// translated to `site`: `f(q) = slope_x*qx + slope_y*qy + offset`.
    pub fn edge_form(&self, e: usize, site: &Site) -> LinearForm {
        let (nx, ny, c) = &self.edges[e];
        LinearForm {
            ax: nx / c,
            ay: ny / c,
            b: &site.weight - (nx * &site.pos.0 + ny * &site.pos.1) / c,
        }
    }

    /// Restriction of `f_site` to the vertical line x = t as a piecewise
    /// linear convex function of y; None when the line misses the domain.
    pub fn vertical_restriction(&self, site: &Site, t: &Coord) -> Option<PiecewiseLinear> {
        if t < &site.pos.0 {
            return None;
        }
        let dx = t - &site.pos.0;
        let b = &site.pos.1;
        if dx.is_zero() {
            // Straight up/down the apex: two pieces meeting at the apex.
            let s_lo = Coord::one() / &self.y_lo;
            let s_hi = Coord::one() / &self.y_hi;
            return Some(PiecewiseLinear {
                breaks: vec![b.clone()],
                pieces: vec![
                    (s_lo.clone(), &site.weight - &s_lo * b),
                    (s_hi.clone(), &site.weight - &s_hi * b),
                ],
            });
        }
        let mut breaks = Vec::with_capacity(self.chain.len().saturating_sub(2));
        for v in &self.chain[1..self.chain.len() - 1] {
            // Ray parallel to interior vertex v: y = b + dx * v.y / v.x.
            breaks.push(b + &dx * &v.y / &v.x);
        }
        let pieces = (0..self.edges.len())
            .map(|e| {
                let form = self.edge_form(e, site);
                (form.ay.clone(), &form.ax * t + &form.b)
            })
            .collect();
        Some(PiecewiseLinear { breaks, pieces })
    }

    /// `f_site(q)`: weight plus the gauge of `q - apex`. None outside the
    /// halfplane domain.
    pub fn f_eval(&self, site: &Site, qx: &Coord, qy: &Coord) -> Option<Coord> {
        let wx = qx - &site.pos.0;
        let wy = qy - &site.pos.1;
        self.gauge(&wx, &wy).map(|g| &site.weight + g)
    }
}

/// `ax*qx + ay*qy + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub ax: Coord,
    pub ay: Coord,
    pub b: Coord,
}

impl LinearForm {
    pub fn eval(&self, qx: &Coord, qy: &Coord) -> Coord {
        &self.ax * qx + &self.ay * qy + &self.b
    }
}

/// Piecewise linear function of one variable with ascending breakpoints;
/// `pieces.len() == breaks.len() + 1`.
#[derive(Clone, Debug)]
pub struct PiecewiseLinear {
    pub breaks: Vec<Coord>,
    pub pieces: Vec<(Coord, Coord)>,
}

impl PiecewiseLinear {
    pub fn eval(&self, y: &Coord) -> Coord {
        let i = self.breaks.partition_point(|b| b < y);
        let (s, c) = &self.pieces[i];
        s * y + c
    }
}

/// A root of `f - g` together with the signs just before and after it.
#[derive(Clone, Debug)]
pub struct CrossingRoot {
    pub y: Coord,
    pub before: i8,
    pub after: i8,
}

/// All isolated roots of `f - g`, ascending. `Err(())` when the difference
/// vanishes on a whole piece (a degenerate overlap).
pub fn difference_roots(f: &PiecewiseLinear, g: &PiecewiseLinear) -> Result<Vec<CrossingRoot>, ()> {
    let mut breaks: Vec<Coord> = f.breaks.iter().chain(g.breaks.iter()).cloned().collect();
    breaks.sort();
    breaks.dedup();
    let sgn = |v: &Coord| -> i8 {
        if v.is_zero() {
            0
        } else if v > &Coord::zero() {
            1
        } else {
            -1
        }
    };
    // Linear form of the difference on each merged piece.
    let npieces = breaks.len() + 1;
    let mut forms: Vec<(Coord, Coord)> = Vec::with_capacity(npieces);
    for k in 0..npieces {
        let rep = match (if k == 0 { None } else { Some(&breaks[k - 1]) }, breaks.get(k)) {
            (None, None) => Coord::zero(),
            (None, Some(h)) => h - Coord::one(),
            (Some(l), None) => l + Coord::one(),
            (Some(l), Some(h)) => (l + h) / (Coord::one() + Coord::one()),
        };
        let fi = f.breaks.partition_point(|b| b < &rep);
        let gi = g.breaks.partition_point(|b| b < &rep);
        let slope = &f.pieces[fi].0 - &g.pieces[gi].0;
        let icept = &f.pieces[fi].1 - &g.pieces[gi].1;
        if slope.is_zero() && icept.is_zero() {
            return Err(());
        }
        forms.push((slope, icept));
    }
    let mut roots: Vec<CrossingRoot> = Vec::new();
    for k in 0..npieces {
        let (slope, icept) = &forms[k];
        let lo = if k == 0 { None } else { Some(&breaks[k - 1]) };
        let hi = breaks.get(k);
        // Interior root, strictly inside the piece.
        if !slope.is_zero() {
            let root = -icept / slope;
            let inside = lo.map_or(true, |l| &root > l) && hi.map_or(true, |h| &root < h);
            if inside {
                roots.push(CrossingRoot {
                    y: root,
                    before: -sgn(slope),
                    after: sgn(slope),
                });
            }
        }
        // Root exactly at the right endpoint: the next piece starts at zero.
        if let Some(h) = hi {
            if (slope * h + icept).is_zero() {
                // A zero at a shared breakpoint with a zero slope on either
                // side would be a zero piece, already rejected.
                let (ns, ni) = &forms[k + 1];
                debug_assert!(!slope.is_zero() && !(ns.is_zero() && (ns * h + ni).is_zero()));
                roots.push(CrossingRoot {
                    y: h.clone(),
                    before: -sgn(slope),
                    after: if ns.is_zero() { sgn(ni) } else { sgn(ns) },
                });
            }
        }
    }
    Ok(roots)
}

/// Intersection points of the two regions' boundary `f_a = f_b` with the
/// vertical line x = t. Empty when either function is undefined on the line.
pub fn line_bitangent(
    m: &PolygonM,
    a: &Site,
    b: &Site,
    t: &Coord,
) -> Vec<(Coord, Coord)> {
    let (Some(fa), Some(fb)) = (m.vertical_restriction(a, t), m.vertical_restriction(b, t))
    else {
        return Vec::new();
    };
    match difference_roots(&fa, &fb) {
        Ok(roots) => roots.into_iter().map(|r| (t.clone(), r.y)).collect(),
        Err(()) => {
            // Degenerate overlap: report the segment endpoints when they are
            // finite breakpoints.
            Vec::new()
        }
    }
}

/// Points where three translated copies share a boundary value
/// (`f_a = f_b = f_c`), by exact enumeration of active edge pairs.
pub fn tritangent(m: &PolygonM, a: &Site, b: &Site, c: &Site) -> Vec<(Coord, Coord)> {
    let mut out: Vec<(Coord, Coord)> = Vec::new();
    for ea in 0..m.edge_count() {
        let fa = m.edge_form(ea, a);
        for eb in 0..m.edge_count() {
            let fb = m.edge_form(eb, b);
            // The line f_a = f_b under these active edges.
            let ax = &fa.ax - &fb.ax;
            let ay = &fa.ay - &fb.ay;
            let rhs = &fb.b - &fa.b;
            if ax.is_zero() && ay.is_zero() {
                continue;
            }
            // Parametrize: base point q0 plus direction (-ay, ax).
            let q0 = if !ay.is_zero() {
                (Coord::zero(), &rhs / &ay)
            } else {
                (&rhs / &ax, Coord::zero())
            };
            let dir = (-ay.clone(), ax.clone());
            for ec in 0..m.edge_count() {
                let fc = m.edge_form(ec, c);
                // f_a(q0 + t dir) = f_c(q0 + t dir): linear in t.
                let g0 = fa.eval(&q0.0, &q0.1) - fc.eval(&q0.0, &q0.1);
                let g1 = (&fa.ax - &fc.ax) * &dir.0 + (&fa.ay - &fc.ay) * &dir.1;
                if g1.is_zero() {
                    continue;
                }
                let t = -g0 / g1;
                let q = (&q0.0 + &t * &dir.0, &q0.1 + &t * &dir.1);
                // Validate via the true gauge values.
                let (va, vb, vc) = (
                    m.f_eval(a, &q.0, &q.1),
                    m.f_eval(b, &q.0, &q.1),
                    m.f_eval(c, &q.0, &q.1),
                );
                if let (Some(va), Some(vb), Some(vc)) = (va, vb, vc) {
                    if va == vb && vb == vc && !out.contains(&q) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out.sort_by(|p, q| p.0.cmp(&q.0).then_with(|| p.1.cmp(&q.1)));
    out.dedup();
    out
}
