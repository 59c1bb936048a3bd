//! Seeded instance generators, one per structural class. Identical seed and
//! parameters always produce the identical instance.

use crate::cone_sweep::Vec3;
use crate::geom::{coord, orient, Coord, Point};
use crate::instance::{ColoredPoint, Instance, StructureTag};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenClass {
    General,
    Collinear,
    TwoLines,
    /// Two lines, one color per line.
    Bichromatic,
    OneRed,
}

impl std::str::FromStr for GenClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(GenClass::General),
            "collinear" => Ok(GenClass::Collinear),
            "two-lines" => Ok(GenClass::TwoLines),
            "bichromatic" => Ok(GenClass::Bichromatic),
            "one-red" => Ok(GenClass::OneRed),
            other => Err(format!("unknown class {other:?}")),
        }
    }
}

/// Generates an instance of `n` points with at most `colors` colors.
pub fn generate(class: GenClass, n: usize, colors: u32, seed: u64) -> Instance {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let span = (4 * n.max(4)) as i64;
    match class {
        GenClass::General => {
            let mut pts = Vec::new();
            let mut seen = BTreeSet::new();
            while pts.len() < n {
                let xy = (rng.gen_range(-span..=span), rng.gen_range(-span..=span));
                if seen.insert(xy) {
                    pts.push(ColoredPoint::ints(xy.0, xy.1, rng.gen_range(0..colors.max(1))));
                }
            }
            Instance::new(pts, StructureTag::General).unwrap()
        }
        GenClass::Collinear => {
            let mut xs = BTreeSet::new();
            while xs.len() < n {
                xs.insert(rng.gen_range(-span..=span));
            }
            let pts = xs
                .into_iter()
                .map(|x| ColoredPoint::ints(x, 0, rng.gen_range(0..colors.max(1))))
                .collect();
            Instance::new(pts, StructureTag::Collinear).unwrap()
        }
        GenClass::TwoLines | GenClass::Bichromatic => {
            let gap = rng.gen_range(1..=8i64);
            let split = match class {
                GenClass::Bichromatic => rng.gen_range(1..n.max(2)),
                _ => rng.gen_range(0..=n),
            };
            let mut top_xs = BTreeSet::new();
            while top_xs.len() < split {
                top_xs.insert(rng.gen_range(-span..=span));
            }
            let mut bottom_xs = BTreeSet::new();
            while bottom_xs.len() < n - split {
                bottom_xs.insert(rng.gen_range(-span..=span));
            }
            let mut pts = Vec::new();
            for x in top_xs {
                let c = match class {
                    GenClass::Bichromatic => 0,
                    _ => rng.gen_range(0..colors.max(1)),
                };
                pts.push(ColoredPoint::ints(x, gap, c));
            }
            for x in bottom_xs {
                let c = match class {
                    GenClass::Bichromatic => 1,
                    _ => rng.gen_range(0..colors.max(1)),
                };
                pts.push(ColoredPoint::ints(x, 0, c));
            }
            Instance::new(
                pts,
                StructureTag::TwoLines {
                    y_top: coord(gap),
                    y_bottom: coord(0),
                },
            )
            .unwrap()
        }
        GenClass::OneRed => {
            assert!(n >= 2, "one-red instances need a red and a blue");
            loop {
                let red = Point::ints(rng.gen_range(-span..=span), rng.gen_range(-span..=span));
                let mut blues: Vec<Point> = Vec::new();
                let mut seen = BTreeSet::new();
                seen.insert((red.x.clone(), red.y.clone()));
                while blues.len() + 1 < n {
                    let p = Point::ints(rng.gen_range(-span..=span), rng.gen_range(-span..=span));
                    if seen.insert((p.x.clone(), p.y.clone())) {
                        blues.push(p);
                    }
                }
                // Keep the radial order unambiguous: no two blues on one ray
                // from the red point.
                let mut ok = true;
                'rays: for i in 0..blues.len() {
                    for j in (i + 1)..blues.len() {
                        if orient(&red, &blues[i], &blues[j]) == 0 {
                            let di = (&blues[i].x - &red.x, &blues[i].y - &red.y);
                            let dj = (&blues[j].x - &red.x, &blues[j].y - &red.y);
                            let dot = &di.0 * &dj.0 + &di.1 * &dj.1;
                            if dot > Coord::zero() {
                                ok = false;
                                break 'rays;
                            }
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let mut pts = vec![ColoredPoint::new(red, 0)];
                pts.extend(blues.into_iter().map(|p| ColoredPoint::new(p, 1)));
                return Instance::new(pts, StructureTag::OneRed).unwrap();
            }
        }
    }
}

/// A seeded point-cone incidence family: a pointed upward-opening cone given
/// by apex-incident halfspace normals, translated apexes, and query points.
pub fn generate_cone_family(
    n_cones: usize,
    n_queries: usize,
    seed: u64,
) -> (Vec<Vec3>, Vec<Vec3>, Vec<Vec3>) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let v3 = |x: i64, y: i64, z: i64| -> Vec3 { [coord(x), coord(y), coord(z)] };
    let extra = rng.gen_range(0..=4);
    let mut normals = Vec::new();
    for (ax, ay) in [(3, 1), (-2, 3), (-3, -2), (2, -3)] {
        normals.push(v3(ax, ay, -1));
    }
    for _ in 0..extra {
        normals.push(v3(rng.gen_range(-4..=4), rng.gen_range(-4..=4), -1));
    }
    let span = 500i64;
    let mut apexes = Vec::new();
    let mut seen = BTreeSet::new();
    while apexes.len() < n_cones {
        let a = (
            rng.gen_range(-span..=span),
            rng.gen_range(-span..=span),
            rng.gen_range(-span..=span),
        );
        if seen.insert(a) {
            apexes.push(v3(a.0, a.1, a.2));
        }
    }
    let mut queries = Vec::new();
    for _ in 0..n_queries {
        queries.push(v3(
            rng.gen_range(-span..=span),
            rng.gen_range(-span..=span),
            rng.gen_range(-2 * span..=3 * span),
        ));
    }
    (normals, apexes, queries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::render_instance;

    #[test]
    fn deterministic_per_seed() {
        for class in [
            GenClass::General,
            GenClass::Collinear,
            GenClass::TwoLines,
            GenClass::Bichromatic,
            GenClass::OneRed,
        ] {
            let a = generate(class, 10, 3, 7);
            let b = generate(class, 10, 3, 7);
            assert_eq!(render_instance(&a), render_instance(&b));
            let c = generate(class, 10, 3, 8);
            assert_ne!(render_instance(&a), render_instance(&c));
        }
    }

    #[test]
    fn classes_validate_their_tags() {
        for seed in 0..20 {
            assert!(generate(GenClass::Collinear, 8, 4, seed).validate().is_ok());
            assert!(generate(GenClass::TwoLines, 8, 3, seed).validate().is_ok());
            assert!(generate(GenClass::OneRed, 8, 2, seed).validate().is_ok());
        }
    }
}
