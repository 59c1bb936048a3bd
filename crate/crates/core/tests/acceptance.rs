//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers. Seeds are fixed, so every run checks the identical
//! corpus.

use mcs_core::bichromatic::{solve_bichromatic_lines, split_bichromatic};
use mcs_core::collinear::{
    solve_collinear_linear, solve_collinear_quadratic, LinePoint,
};
use mcs_core::cone_sweep::{
    canonicalize, decide_incidence, line_bitangent, naive_incidence, tritangent, IncidenceMode,
    Site,
};
use mcs_core::consistency::{brute_min_consistent, is_consistent};
use mcs_core::gen::{generate, generate_cone_family, GenClass};
use mcs_core::geom::{bisector_separates, chains_between_tangents, coord, dist2, Point};
use mcs_core::instance::{Instance, SubsetSolution};
use mcs_core::one_red::{
    build_arcs, compute_c_cc, compute_c_cc_naive, covers_circle, min_circle_cover, radial_order,
    solve_one_red, Arc, CyclicArcSystem, RangeFarthestTree,
};
use mcs_core::parallel_lines::solve_instance as solve_two_lines_instance;
use mcs_core::size_two::{solve_pair, solve_pair_naive};
use rand::{Rng, SeedableRng};
use std::time::Instant;

fn collinear_points(inst: &Instance) -> Vec<LinePoint> {
    inst.points
        .iter()
        .map(|p| LinePoint::new(p.pos.x.clone(), p.color))
        .collect()
}

#[test]
fn criterion_01_collinear_matches_oracle() {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA001_0000 + seed);
        let n = rng.gen_range(1..=18);
        let colors = rng.gen_range(1..=4);
        let inst = generate(GenClass::Collinear, n, colors, seed);
        let pts = collinear_points(&inst);
        let fast = solve_collinear_linear(&pts).unwrap();
        let oracle = brute_min_consistent(&inst, None).unwrap();
        assert_eq!(fast.size, oracle.size, "seed {seed}");
        assert!(is_consistent(&inst, &fast), "seed {seed}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 30.0, "criterion 1 took {secs:.1}s (budget 30s)");
    println!("criterion 1 (collinear oracle equivalence, 1000 seeds): PASS in {secs:.1}s");
}

#[test]
fn criterion_02_linear_vs_quadratic() {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA002_0000 + seed);
        let n = rng.gen_range(1..=200);
        let colors = rng.gen_range(1..=5);
        let inst = generate(GenClass::Collinear, n, colors, seed);
        let pts = collinear_points(&inst);
        let a = solve_collinear_linear(&pts).unwrap();
        let b = solve_collinear_quadratic(&pts).unwrap();
        assert_eq!(a.size, b.size, "seed {seed}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "criterion 2 took {secs:.1}s (budget 60s)");
    println!("criterion 2 (linear vs quadratic, 1000 seeds, n <= 200): PASS in {secs:.1}s");
}

#[test]
fn criterion_03_linear_scaling_smoke() {
    let build = |n: usize| -> Vec<LinePoint> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA003);
        let mut points = Vec::with_capacity(n);
        let mut x = 0i64;
        for _ in 0..n {
            x += rng.gen_range(1..=5);
            points.push(LinePoint::new(coord(x), rng.gen_range(0..4u32)));
        }
        points
    };
    let half = build(500_000);
    let full = build(1_000_000);
    let t0 = Instant::now();
    let sol_half = solve_collinear_linear(&half).unwrap();
    let t_half = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let sol_full = solve_collinear_linear(&full).unwrap();
    let t_full = t1.elapsed().as_secs_f64();
    assert!(sol_half.size > 0 && sol_full.size > 0);
    assert!(t_full < 10.0, "n=1e6 took {t_full:.2}s (budget 10s)");
    assert!(
        t_full < 3.0 * t_half,
        "growth {t_full:.3}s vs {t_half:.3}s exceeds 3x"
    );
    println!(
        "criterion 3 (scaling smoke): PASS, 5e5 in {t_half:.3}s, 1e6 in {t_full:.3}s (ratio {:.2})",
        t_full / t_half
    );
}

#[test]
fn criterion_04_two_lines_matches_oracle() {
    let start = Instant::now();
    for seed in 0..150u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA004_0000 + seed);
        let n = rng.gen_range(1..=10);
        let colors = rng.gen_range(1..=3);
        let inst = generate(GenClass::TwoLines, n, colors, seed);
        let fast = solve_two_lines_instance(&inst).unwrap();
        let oracle = brute_min_consistent(&inst, None).unwrap();
        assert_eq!(fast.size, oracle.size, "seed {seed}");
        assert!(is_consistent(&inst, &fast), "seed {seed}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 600.0, "criterion 4 took {secs:.1}s (budget 600s)");
    println!("criterion 4 (two parallel lines oracle equivalence, 150 seeds): PASS in {secs:.1}s");
}

#[test]
fn criterion_05_bichromatic_matches_oracle_and_general_solver() {
    for seed in 0..120u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA005_0000 + seed);
        let n = rng.gen_range(2..=12);
        let inst = generate(GenClass::Bichromatic, n, 2, seed);
        let (two, order) = mcs_core::parallel_lines::TwoLineInstance::from_instance(&inst).unwrap();
        let (reds, blues, gap) = split_bichromatic(&two).unwrap();
        let fast = solve_bichromatic_lines(reds, blues, gap);
        let fast = SubsetSolution::new(fast.indices.iter().map(|&i| order[i]).collect());
        let oracle = brute_min_consistent(&inst, None).unwrap();
        let general = solve_two_lines_instance(&inst).unwrap();
        assert_eq!(fast.size, oracle.size, "seed {seed}");
        assert_eq!(general.size, oracle.size, "seed {seed}");
        assert!(is_consistent(&inst, &fast), "seed {seed}");
    }
    println!("criterion 5 (bichromatic lines: oracle + cross-solver, 120 seeds): PASS");
}

#[test]
fn criterion_06_one_red() {
    // (a) tree-based arcs equal the naive scan, 400 seeds up to n = 300.
    for seed in 0..400u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA006_0000 + seed);
        let n = rng.gen_range(3..=300);
        let inst = generate(GenClass::OneRed, n, 2, seed);
        let center = inst.points[0].pos.clone();
        let blues: Vec<(Point, usize)> = inst.points[1..]
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let d2 = dist2(&center, &p.pos);
                (
                    Point::new(
                        &center.x + (&p.pos.x - &center.x) / &d2,
                        &center.y + (&p.pos.y - &center.y) / &d2,
                    ),
                    i + 1,
                )
            })
            .collect();
        let order = radial_order(center, &blues);
        let tree = RangeFarthestTree::build(&order);
        assert_eq!(
            compute_c_cc(&order, &tree),
            compute_c_cc_naive(&order),
            "seed {seed}"
        );
        if seed % 10 == 0 {
            let arcs = build_arcs(&order, &compute_c_cc_naive(&order));
            assert!(covers_circle(&arcs), "seed {seed}");
        }
    }
    println!("criterion 6a (range-tree arcs equal naive scan, 400 seeds, n <= 300): PASS");

    // (b, c) end-to-end optimality and the size bound.
    for seed in 0..200u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA006_1000 + seed);
        let n = rng.gen_range(2..=14);
        let inst = generate(GenClass::OneRed, n, 2, seed);
        let sol = solve_one_red(&inst).unwrap();
        let oracle = brute_min_consistent(&inst, None).unwrap();
        assert_eq!(sol.size, oracle.size, "seed {seed}");
        assert!(sol.size <= 7, "seed {seed}: size bound violated");
        assert!(is_consistent(&inst, &sol), "seed {seed}");
    }
    println!("criterion 6b+6c (end-to-end optimality, 200 seeds; size <= 7 always): PASS");

    // (d) minimum circle cover equals subset brute force on arc families.
    let mut tested = 0u32;
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xA006_2000);
    while tested < 300 {
        let slots = 2 * rng.gen_range(2..=8usize);
        let m = rng.gen_range(1..=12usize);
        let arcs: Vec<Arc> = (0..m)
            .map(|_| {
                if rng.gen_bool(0.05) {
                    Arc::Full
                } else {
                    let start = 2 * rng.gen_range(0..slots / 2) + 1;
                    let len = rng.gen_range(1..=slots);
                    Arc::Span {
                        start: start % slots,
                        end: (start + len - 1) % slots,
                    }
                }
            })
            .collect();
        let sys = CyclicArcSystem { slots, arcs };
        let brute = brute_cover(&sys);
        match brute {
            Some(sz) => {
                assert_eq!(min_circle_cover(&sys).unwrap().len(), sz);
                tested += 1;
            }
            None => assert!(min_circle_cover(&sys).is_err()),
        }
    }
    println!("criterion 6d (minimum circle cover equals subset brute force, 300 families): PASS");
}

fn brute_cover(sys: &CyclicArcSystem) -> Option<usize> {
    let n = sys.arcs.len();
    let mut best = None;
    for mask in 1u32..(1u32 << n) {
        let chosen: Vec<Arc> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| sys.arcs[i])
            .collect();
        let sub = CyclicArcSystem {
            slots: sys.slots,
            arcs: chosen,
        };
        if covers_circle(&sub) {
            let c = mask.count_ones() as usize;
            if best.map_or(true, |b| c < b) {
                best = Some(c);
            }
        }
    }
    best
}

#[test]
fn criterion_07_size_two_matches_naive() {
    let start = Instant::now();
    for seed in 0..500u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA007_0000 + seed);
        let total = rng.gen_range(2..=60);
        let inst = generate(GenClass::General, total, 2, seed);
        let colors = inst.colors();
        if colors.len() != 2 {
            continue;
        }
        let reds: Vec<Point> = inst
            .points
            .iter()
            .filter(|p| p.color == colors[0])
            .map(|p| p.pos.clone())
            .collect();
        let blues: Vec<Point> = inst
            .points
            .iter()
            .filter(|p| p.color == colors[1])
            .map(|p| p.pos.clone())
            .collect();
        let fast = solve_pair(&reds, &blues);
        let naive = solve_pair_naive(&reds, &blues);
        assert_eq!(fast.is_some(), naive.is_some(), "seed {seed}");
        if let Some((ri, bi)) = fast {
            assert!(
                bisector_separates(&reds[ri], &blues[bi], &reds, &blues),
                "seed {seed}"
            );
        }
    }
    // The constructed instance whose unique pair is interior to both hulls.
    let pts = |v: &[(i64, i64)]| -> Vec<Point> { v.iter().map(|&(x, y)| Point::ints(x, y)).collect() };
    let reds = pts(&[(-6, 4), (-9, -10), (-17, -1), (-4, 8), (-2, 5)]);
    let blues = pts(&[(7, 4), (18, 12), (2, 12), (4, -9)]);
    assert_eq!(solve_pair_naive(&reds, &blues), Some((0, 0)));
    assert_eq!(solve_pair(&reds, &blues), Some((0, 0)));
    let rh = mcs_core::geom::convex_hull(&reds);
    assert!(!rh.vertices.contains(&reds[0]));
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 120.0, "criterion 7 took {secs:.1}s (budget 120s)");
    println!(
        "criterion 7 (size-two existence vs naive, 500 seeds + interior instance): PASS in {secs:.1}s"
    );
}

#[test]
fn criterion_08_cone_sweep_matches_naive() {
    let mut fallbacks = 0usize;
    let mut halves = 0usize;
    for seed in 0..500u64 {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xA008_0000 + seed);
        let n_cones = rng.gen_range(1..=60);
        let n_queries = rng.gen_range(1..=60);
        let (normals, apexes, queries) = generate_cone_family(n_cones, n_queries, seed);
        let canonical = canonicalize(&normals, &apexes, &queries).unwrap();
        let naive = canonical
            .halves
            .iter()
            .find_map(|h| naive_incidence(h, IncidenceMode::Closed));
        let (verdict, fb) = decide_incidence(&canonical, IncidenceMode::Closed);
        halves += canonical.halves.len();
        fallbacks += fb;
        assert_eq!(verdict.is_some(), naive.is_some(), "seed {seed}");
    }
    println!(
        "criterion 8 (sweep vs naive incidence, 500 families): PASS, degenerate fallbacks {fallbacks}/{halves} half-sweeps (each resolved by the naive path)"
    );
}

#[test]
fn criterion_09_lemma_level_invariants() {
    // Bisector separation is equivalent to the disk conditions evaluated on
    // the facing chains only.
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xA009_0001);
    let mut tested = 0usize;
    while tested < 500 {
        let nr = rng.gen_range(1..=15);
        let nb = rng.gen_range(1..=15);
        let mut reds: Vec<Point> = Vec::new();
        while reds.len() < nr {
            let p = Point::ints(rng.gen_range(-12..=-1), rng.gen_range(-10..=10));
            if !reds.contains(&p) {
                reds.push(p);
            }
        }
        let mut blues: Vec<Point> = Vec::new();
        while blues.len() < nb {
            let p = Point::ints(rng.gen_range(1..=12), rng.gen_range(-10..=10));
            if !blues.contains(&p) {
                blues.push(p);
            }
        }
        let Ok((rc, bc)) = chains_between_tangents(&reds, &blues) else {
            continue;
        };
        for r in &reds {
            for b in &blues {
                tested += 1;
                let direct = bisector_separates(r, b, &reds, &blues);
                let via_chains = rc.iter().all(|rp| dist2(rp, b) > dist2(rp, r))
                    && bc.iter().all(|bp| dist2(bp, b) < dist2(bp, r));
                assert_eq!(direct, via_chains);
            }
        }
    }

    // Translation identity: covered exactly by the cone-spec construction;
    // verify through membership equivalence per red on seeded instances.
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xA009_0002);
    for _ in 0..100 {
        let nr = rng.gen_range(1..=8);
        let nb = rng.gen_range(1..=8);
        let mut reds: Vec<Point> = Vec::new();
        while reds.len() < nr {
            let p = Point::ints(rng.gen_range(-12..=-1), rng.gen_range(-10..=10));
            if !reds.contains(&p) {
                reds.push(p);
            }
        }
        let mut blues: Vec<Point> = Vec::new();
        while blues.len() < nb {
            let p = Point::ints(rng.gen_range(1..=12), rng.gen_range(-10..=10));
            if !blues.contains(&p) {
                blues.push(p);
            }
        }
        let Some(spec) = mcs_core::size_two::build_cone_spec(&reds, &blues) else {
            continue;
        };
        let (rc, bc) = chains_between_tangents(&reds, &blues).unwrap();
        for (i, r) in reds.iter().enumerate() {
            let direct = mcs_core::size_two::ConeSpec::built_directly(&rc, &bc, r);
            for b in &blues {
                let lifted = mcs_core::size_two::LiftedPoint::lift(b);
                let via_translation = spec.contains(i, &lifted);
                let via_direct = direct.iter().all(|h| h.satisfied(&lifted));
                assert_eq!(via_translation, via_direct);
            }
        }
    }

    // Two-point bounds on region triple intersections and line crossings.
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xA009_0003);
    for seed in 0..60u64 {
        let (normals, apexes, _) = generate_cone_family(6, 0, 0xB000 + seed);
        let canonical = canonicalize(&normals, &apexes, &[]).unwrap();
        let half = &canonical.halves[0];
        let m = &half.m;
        let site = |i: usize| -> &Site { &half.sites[i] };
        if half.sites.len() >= 3 {
            for _ in 0..4 {
                let mut idx = [0usize; 3];
                idx[0] = rng.gen_range(0..half.sites.len());
                idx[1] = rng.gen_range(0..half.sites.len());
                idx[2] = rng.gen_range(0..half.sites.len());
                if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                    continue;
                }
                let pts = tritangent(m, site(idx[0]), site(idx[1]), site(idx[2]));
                assert!(pts.len() <= 2, "triple intersection bound violated");
            }
        }
        if half.sites.len() >= 2 {
            let a = site(0);
            let b = site(1);
            let t = coord(rng.gen_range(-20..=20));
            if a.pos.0 <= t && b.pos.0 <= t {
                let pts = line_bitangent(m, a, b, &t);
                assert!(pts.len() <= 2, "line crossing bound violated");
            }
        }
    }
    println!("criterion 9 (separation equivalence, translation identity, two-point bounds): PASS");
}

#[test]
fn criterion_10_all_solver_outputs_are_consistent() {
    // Every solver, on a mixed corpus, returns a consistent subset.
    for seed in 0..60u64 {
        let c = generate(GenClass::Collinear, 12, 3, seed);
        let sol = mcs_core::collinear::solve_instance(&c).unwrap();
        assert!(is_consistent(&c, &sol));

        let t = generate(GenClass::TwoLines, 8, 3, seed);
        let sol = solve_two_lines_instance(&t).unwrap();
        assert!(is_consistent(&t, &sol));

        let b = generate(GenClass::Bichromatic, 9, 2, seed);
        let sol = mcs_core::bichromatic::solve_instance(&b).unwrap();
        assert!(is_consistent(&b, &sol));

        let o = generate(GenClass::OneRed, 11, 2, seed);
        let sol = solve_one_red(&o).unwrap();
        assert!(is_consistent(&o, &sol));

        let g = generate(GenClass::General, 10, 3, seed);
        let sol = brute_min_consistent(&g, None).unwrap();
        assert!(is_consistent(&g, &sol));

        // Size-two results, when they exist, are consistent subsets of the
        // bichromatic instance.
        let p = generate(GenClass::General, 14, 2, seed);
        let colors = p.colors();
        if colors.len() == 2 {
            let reds: Vec<Point> = p
                .points
                .iter()
                .filter(|q| q.color == colors[0])
                .map(|q| q.pos.clone())
                .collect();
            let blues: Vec<Point> = p
                .points
                .iter()
                .filter(|q| q.color == colors[1])
                .map(|q| q.pos.clone())
                .collect();
            if let Some((ri, bi)) = solve_pair(&reds, &blues) {
                let mut red_seen = 0usize;
                let mut idx_r = None;
                let mut idx_b = None;
                let mut blue_seen = 0usize;
                for (i, q) in p.points.iter().enumerate() {
                    if q.color == colors[0] {
                        if red_seen == ri {
                            idx_r = Some(i);
                        }
                        red_seen += 1;
                    } else {
                        if blue_seen == bi {
                            idx_b = Some(i);
                        }
                        blue_seen += 1;
                    }
                }
                let sol = SubsetSolution::new(vec![idx_r.unwrap(), idx_b.unwrap()]);
                assert!(is_consistent(&p, &sol), "seed {seed}");
            }
        }
    }
    println!("criterion 10 (every solver output passes the consistency check): PASS");
}
