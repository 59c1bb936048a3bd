//! Exact-rational geometric kernel: predicates, convex hulls, separating
//! tangents and the bisector-separation test.
//!
//! Coordinates are [`Coord`] (arbitrary-precision rationals in canonical
//! form), so every sign test below is exact. "Closer" always means strictly
//! closer: a point equidistant from two candidates is on neither side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

/// Exact rational coordinate. `BigRational` keeps fractions reduced with a
/// positive denominator, which is exactly the canonical form we need.
pub type Coord = BigRational;

/// Shorthand for an integer-valued coordinate.
pub fn coord(v: i64) -> Coord {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact fraction `n / d`.
pub fn ratio(n: i64, d: i64) -> Coord {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(coord(x), coord(y))
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Squared Euclidean distance, exact.
pub fn dist2(a: &Point, b: &Point) -> Coord {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Sign of the cross product `(b - a) x (c - a)`: `+1` for a left turn,
/// `0` for collinear, `-1` for a right turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    sign(&v)
}

fn sign(v: &Coord) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Compares `|pa|` with `|pb|` exactly (via squared distances).
pub fn cmp_dist(p: &Point, a: &Point, b: &Point) -> Ordering {
    dist2(p, a).cmp(&dist2(p, b))
}

/// Closed disk centered at `center` whose boundary passes through
/// `boundary_point`.
#[derive(Clone, Debug)]
pub struct Disk {
    pub center: Point,
    pub boundary_point: Point,
}

impl Disk {
    pub fn new(center: Point, boundary_point: Point) -> Self {
        Disk {
            center,
            boundary_point,
        }
    }

    pub fn radius2(&self) -> Coord {
        dist2(&self.center, &self.boundary_point)
    }

    /// Closed containment: `|cq| <= r`.
    pub fn contains(&self, q: &Point) -> bool {
        dist2(&self.center, q) <= self.radius2()
    }

    /// Strict exterior: `|cq| > r`.
    pub fn strictly_outside(&self, q: &Point) -> bool {
        dist2(&self.center, q) > self.radius2()
    }
}

/// Convex hull with counterclockwise vertices. Hulls of one or two distinct
/// points (or of collinear point sets) are degenerate and kept as such; no
/// perturbation is applied anywhere.
#[derive(Clone, Debug)]
pub struct Hull {
    pub vertices: Vec<Point>,
}

impl Hull {
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Closed containment test; works for degenerate hulls too.
    pub fn contains(&self, q: &Point) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == q,
            2 => on_segment(&self.vertices[0], &self.vertices[1], q),
            n => {
                for i in 0..n {
                    let a = &self.vertices[i];
                    let b = &self.vertices[(i + 1) % n];
                    if orient(a, b, q) < 0 {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// `q` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, q: &Point) -> bool {
    if orient(a, b, q) != 0 {
        return false;
    }
    let in_range = |lo: &Coord, hi: &Coord, v: &Coord| {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        lo <= v && v <= hi
    };
    in_range(&a.x, &b.x, &q.x) && in_range(&a.y, &b.y, &q.y)
}

/// Counterclockwise strictly convex hull by monotone chain. Duplicate input
/// points are tolerated. Collinear inputs produce the two extreme points; a
/// single distinct point produces a one-vertex hull.
pub fn convex_hull(points: &[Point]) -> Hull {
    assert!(!points.is_empty(), "convex_hull needs at least one point");
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|p, q| p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return Hull { vertices: pts };
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in pts.iter() {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    Hull { vertices: lower }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TangentError {
    /// The hulls' interiors or boundaries meet, so no separating tangent (and
    /// no size-two consistent subset) exists.
    #[error("convex hulls intersect")]
    HullsIntersect,
}

/// One separating common tangent: the line through vertex `a_vertex` of the
/// first hull and `b_vertex` of the second, oriented by the normal that points
/// from the first hull toward the second.
#[derive(Clone, Debug)]
pub struct TangentLine {
    pub a_vertex: usize,
    pub b_vertex: usize,
    /// Normal direction with the first hull on the `<= c` side and the second
    /// on the `>= c` side; zero when both hulls lie on the line itself.
    pub normal: (Coord, Coord),
}

fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0))
        && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))
    {
        return true;
    }
    (d1 == 0 && on_segment(c, d, a))
        || (d2 == 0 && on_segment(c, d, b))
        || (d3 == 0 && on_segment(a, b, c))
        || (d4 == 0 && on_segment(a, b, d))
}

fn hull_edges(h: &Hull) -> Vec<(Point, Point)> {
    let n = h.vertices.len();
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(h.vertices[0].clone(), h.vertices[1].clone())],
        _ => (0..n)
            .map(|i| (h.vertices[i].clone(), h.vertices[(i + 1) % n].clone()))
            .collect(),
    }
}

/// Closed intersection test between two convex hulls (degenerate ones
/// included): any shared point counts.
pub fn hulls_intersect(a: &Hull, b: &Hull) -> bool {
    if a.vertices.iter().any(|v| b.contains(v)) || b.vertices.iter().any(|v| a.contains(v)) {
        return true;
    }
    let ea = hull_edges(a);
    let eb = hull_edges(b);
    for (p, q) in &ea {
        for (r, s) in &eb {
            if segments_intersect(p, q, r, s) {
                return true;
            }
        }
    }
    false
}

/// Canonical primitive-integer form of the line through `p` and `q`,
/// as `(a, b, c)` with `a*x + b*y = c`.
fn canonical_line(p: &Point, q: &Point) -> (BigInt, BigInt, BigInt) {
    // Direction (dx, dy); normal (-dy, dx); c = normal . p.
    let a = &p.y - &q.y;
    let b = &q.x - &p.x;
    let c = &a * &p.x + &b * &p.y;
    // Clear denominators.
    let lcm = num_integer::lcm(
        num_integer::lcm(a.denom().clone(), b.denom().clone()),
        c.denom().clone(),
    );
    let ai = a.numer() * (&lcm / a.denom());
    let bi = b.numer() * (&lcm / b.denom());
    let ci = c.numer() * (&lcm / c.denom());
    let mut g = num_integer::gcd(num_integer::gcd(ai.clone(), bi.clone()), ci.clone());
    if g.is_zero() {
        g = BigInt::one();
    }
    let (mut ai, mut bi, mut ci) = (ai / &g, bi / &g, ci / &g);
    let flip = if ai.is_zero() {
        bi.is_negative()
    } else {
        ai.is_negative()
    };
    if flip {
        ai = -ai;
        bi = -bi;
        ci = -ci;
    }
    (ai, bi, ci)
}

/// The two separating common tangents of two disjoint convex hulls.
///
/// Found by exhaustive bitangency over vertex pairs: a line through a vertex
/// of each hull qualifies when the hulls lie on opposite closed sides. For
/// two one-point hulls the two tangents coincide and the single line is
/// returned twice.
pub fn separating_tangents(a: &Hull, b: &Hull) -> Result<(TangentLine, TangentLine), TangentError> {
    if hulls_intersect(a, b) {
        return Err(TangentError::HullsIntersect);
    }
    let mut found: Vec<(BigInt, BigInt, BigInt)> = Vec::new();
    let mut lines: Vec<TangentLine> = Vec::new();
    for (i, va) in a.vertices.iter().enumerate() {
        for (j, vb) in b.vertices.iter().enumerate() {
            // Sides of each hull relative to the line va->vb.
            let mut a_side = 0i32;
            let mut ok = true;
            for v in &a.vertices {
                let s = orient(va, vb, v);
                if s != 0 {
                    if a_side == 0 {
                        a_side = s;
                    } else if a_side != s {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut b_side = 0i32;
            for v in &b.vertices {
                let s = orient(va, vb, v);
                if s != 0 {
                    if b_side == 0 {
                        b_side = s;
                    } else if b_side != s {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok || (a_side != 0 && a_side == b_side) {
                continue;
            }
            let key = canonical_line(va, vb);
            if found.contains(&key) {
                continue;
            }
            found.push(key);
            // Normal pointing from hull A's side toward hull B's side.
            let dx = &vb.x - &va.x;
            let dy = &vb.y - &va.y;
            // Left normal of va->vb is (-dy, dx); orient(va,vb,v) > 0 on that side.
            let normal = match (a_side, b_side) {
                (_, 1) | (-1, _) => (-dy.clone(), dx.clone()),
                (_, -1) | (1, _) => (dy.clone(), -dx.clone()),
                _ => (Coord::zero(), Coord::zero()),
            };
            lines.push(TangentLine {
                a_vertex: i,
                b_vertex: j,
                normal,
            });
        }
    }
    match lines.len() {
        0 => Err(TangentError::HullsIntersect),
        1 => Ok((lines[0].clone(), lines[0].clone())),
        2 => Ok((lines[0].clone(), lines[1].clone())),
        _ => {
            // More than two distinct bitangent lines can only arise through
            // duplicated candidates along collinear degeneracies; keep the
            // two with distinct canonical keys encountered first.
            Ok((lines[0].clone(), lines[1].clone()))
        }
    }
}

fn cross2(u: &(Coord, Coord), v: &(Coord, Coord)) -> Coord {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Direction `d` lies in the closed cone swept counterclockwise from `u` to
/// `v`, where that sweep is at most a half turn.
fn dir_in_ccw_cone(u: &(Coord, Coord), v: &(Coord, Coord), d: &(Coord, Coord)) -> bool {
    !cross2(u, d).is_negative() && !cross2(d, v).is_negative()
}

/// The chains of hull vertices facing the other hull, between the two
/// separating tangents and inclusive of the tangency vertices.
///
/// A hull vertex belongs to the facing chain exactly when it is extreme in
/// some direction inside the cone spanned by the two tangent normals (both
/// pointing toward the other hull). Degenerate hulls contribute all of their
/// vertices.
pub fn chains_between_tangents(
    r_points: &[Point],
    b_points: &[Point],
) -> Result<(Vec<Point>, Vec<Point>), TangentError> {
    let hr = convex_hull(r_points);
    let hb = convex_hull(b_points);
    let (t1, t2) = separating_tangents(&hr, &hb)?;
    let r_chain = facing_chain(&hr, &t1.normal, &t2.normal, t1.a_vertex, t2.a_vertex);
    // For hull B the normals toward the *other* hull point the opposite way.
    let neg = |n: &(Coord, Coord)| (-n.0.clone(), -n.1.clone());
    let b_chain = facing_chain(
        &hb,
        &neg(&t1.normal),
        &neg(&t2.normal),
        t1.b_vertex,
        t2.b_vertex,
    );
    Ok((r_chain, b_chain))
}

/// Vertices of `h` whose normal cone meets the cone spanned by `n1`, `n2`
/// (each pointing away from `h`), collected in hull order starting at the
/// start of the contiguous run. `t1`/`t2` are tangency vertices used as a
/// fallback for degenerate normal data.
fn facing_chain(
    h: &Hull,
    n1: &(Coord, Coord),
    n2: &(Coord, Coord),
    t1: usize,
    t2: usize,
) -> Vec<Point> {
    let n = h.vertices.len();
    if n <= 2 {
        return h.vertices.clone();
    }
    let zero = (Coord::zero(), Coord::zero());
    if *n1 == zero || *n2 == zero {
        return h.vertices.clone();
    }
    // Order the cone so it is swept counterclockwise from lo to hi.
    let c = cross2(n1, n2);
    let (lo, hi) = if c.is_negative() { (n2, n1) } else { (n1, n2) };
    if c.is_zero() {
        // Parallel tangent normals: the facing set is just the tangency
        // vertices (possibly one).
        let mut idx = vec![t1];
        if t2 != t1 {
            idx.push(t2);
        }
        return idx.into_iter().map(|i| h.vertices[i].clone()).collect();
    }
    let outward = |i: usize| -> (Coord, Coord) {
        let a = &h.vertices[i];
        let b = &h.vertices[(i + 1) % n];
        (&b.y - &a.y, -(&b.x - &a.x))
    };
    let mut selected = vec![false; n];
    for k in 0..n {
        // Normal cone of vertex k: from outward(k-1) to outward(k), CCW.
        let prev = outward((k + n - 1) % n);
        let cur = outward(k);
        // Two CCW cones (each under half a turn) intersect iff an endpoint of
        // one lies in the other.
        let meets = dir_in_ccw_cone(&prev, &cur, lo)
            || dir_in_ccw_cone(&prev, &cur, hi)
            || dir_in_ccw_cone(lo, hi, &prev)
            || dir_in_ccw_cone(lo, hi, &cur);
        selected[k] = meets;
    }
    // The selected vertices form a contiguous cyclic run; emit it in order.
    if selected.iter().all(|&s| s) {
        return h.vertices.clone();
    }
    let mut start = 0;
    while !(selected[start] && !selected[(start + n - 1) % n]) {
        start += 1;
        if start == n {
            // No vertex selected: fall back to the tangency vertices.
            let mut idx = vec![t1];
            if t2 != t1 {
                idx.push(t2);
            }
            return idx.into_iter().map(|i| h.vertices[i].clone()).collect();
        }
    }
    let mut chain = Vec::new();
    let mut k = start;
    while selected[k] {
        chain.push(h.vertices[k].clone());
        k = (k + 1) % n;
        if k == start {
            break;
        }
    }
    chain
}

/// Does the perpendicular bisector of `rb` separate `R` from `B`, i.e. is
/// every point of `R` strictly closer to `r` than to `b` and every point of
/// `B` strictly closer to `b` than to `r`? Ties fail.
pub fn bisector_separates(r: &Point, b: &Point, reds: &[Point], blues: &[Point]) -> bool {
    reds.iter().all(|p| cmp_dist(p, r, b) == Ordering::Less)
        && blues.iter().all(|p| cmp_dist(p, b, r) == Ordering::Less)
}
