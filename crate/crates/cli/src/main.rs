//! `mcs`: solve, verify, generate, cross-check and render minimum consistent
//! subset instances.
//!
//! Exit codes: 0 on success, 1 when a cross-check finds a mismatch, 2 on
//! usage or parse errors.

use clap::{Parser, Subcommand, ValueEnum};
use mcs_core::consistency::{brute_min_consistent, is_consistent};
use mcs_core::cone_sweep::{
    canonicalize, decide_incidence, naive_incidence, IncidenceMode,
};
use mcs_core::gen::{generate, generate_cone_family, GenClass};
use mcs_core::instance::{Instance, StructureTag, SubsetSolution};
use mcs_core::io::{parse_instance, render_instance};
use mcs_core::{bichromatic, collinear, one_red, parallel_lines, size_two, svg};
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "mcs", about = "Minimum consistent subset solvers", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Collinear,
    CollinearQuadratic,
    TwoLines,
    Bichromatic,
    OneRed,
    Pair2,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckAlgo {
    Collinear,
    TwoLines,
    Bichromatic,
    OneRed,
    Pair2,
    Cone,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and print a JSON report.
    Solve {
        file: String,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Also render the solved instance to this SVG path.
        #[arg(long)]
        svg: Option<String>,
        /// Draw the Voronoi cells of the solution in the SVG.
        #[arg(long)]
        voronoi: bool,
    },
    /// Check whether a subset (comma-separated indices) is consistent.
    Verify {
        file: String,
        #[arg(long)]
        subset: String,
    },
    /// Generate a seeded instance and print it (or write it to a file).
    Gen {
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        colors: u32,
        /// Defaults to the CS_SEED environment variable, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Solve seeded instances with a fast solver and its oracle; report
    /// mismatches (exit code 1 if any).
    Xcheck {
        #[arg(long, value_enum)]
        algo: CheckAlgo,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        colors: u32,
        #[arg(long)]
        seed_base: Option<u64>,
    },
    /// Timing table for the linear collinear solver.
    Bench {
        #[arg(long, default_value = "100000,500000,1000000")]
        sizes: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn env_seed() -> u64 {
    std::env::var("CS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("{}", json!({ "error": msg.to_string() }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            file,
            algo,
            svg,
            voronoi,
        } => cmd_solve(&file, algo, svg.as_deref(), voronoi),
        Command::Verify { file, subset } => cmd_verify(&file, &subset),
        Command::Gen {
            class,
            n,
            colors,
            seed,
            out,
        } => cmd_gen(&class, n, colors, seed.unwrap_or_else(env_seed), out.as_deref()),
        Command::Xcheck {
            algo,
            seeds,
            n,
            colors,
            seed_base,
        } => cmd_xcheck(algo, seeds, n, colors, seed_base.unwrap_or_else(env_seed)),
        Command::Bench { sizes, seed } => cmd_bench(&sizes, seed.unwrap_or_else(env_seed)),
    }
}

fn read_instance(path: &str) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_instance(&text).map_err(|e| format!("{path}: {e}"))
}

/// Splits a two-colored instance into (reds, blues) point lists with their
/// original indices.
fn split_colors(inst: &Instance) -> Option<(Vec<(usize, mcs_core::Point)>, Vec<(usize, mcs_core::Point)>)> {
    let colors = inst.colors();
    if colors.len() != 2 {
        return None;
    }
    let mut reds = Vec::new();
    let mut blues = Vec::new();
    for (i, p) in inst.points.iter().enumerate() {
        if p.color == colors[0] {
            reds.push((i, p.pos.clone()));
        } else {
            blues.push((i, p.pos.clone()));
        }
    }
    Some((reds, blues))
}

fn cmd_solve(path: &str, algo: Algo, svg_path: Option<&str>, voronoi: bool) -> ExitCode {
    let inst = match read_instance(path) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let chosen = if algo == Algo::Auto {
        match &inst.tag {
            StructureTag::Collinear => Algo::Collinear,
            StructureTag::TwoLines { .. } => Algo::TwoLines,
            StructureTag::OneRed => Algo::OneRed,
            StructureTag::General => Algo::Brute,
        }
    } else {
        algo
    };
    let start = Instant::now();
    let (name, solved): (&str, Result<Option<SubsetSolution>, String>) = match chosen {
        Algo::Collinear => (
            "collinear",
            collinear::solve_instance(&inst)
                .map(Some)
                .map_err(|e| e.to_string()),
        ),
        Algo::CollinearQuadratic => ("collinear-quadratic", {
            match collinear::line_points_from_instance(&inst) {
                Some((pts, order)) => collinear::solve_collinear_quadratic(&pts)
                    .map(|sol| {
                        Some(SubsetSolution::new(
                            sol.indices.iter().map(|&i| order[i]).collect(),
                        ))
                    })
                    .map_err(|e| e.to_string()),
                None => Err("instance is not collinear".into()),
            }
        }),
        Algo::TwoLines => (
            "two-lines",
            match parallel_lines::solve_instance(&inst) {
                Some(sol) => Ok(Some(sol)),
                None => Err("instance is not on two lines".to_string()),
            },
        ),
        Algo::Bichromatic => (
            "bichromatic",
            bichromatic::solve_instance(&inst)
                .map(Some)
                .ok_or_else(|| "instance is not a red-line/blue-line configuration".to_string()),
        ),
        Algo::OneRed => (
            "one-red",
            one_red::solve_one_red(&inst).map(Some).map_err(|e| e.to_string()),
        ),
        Algo::Pair2 => ("pair2", {
            match split_colors(&inst) {
                Some((reds, blues)) => {
                    let rp: Vec<mcs_core::Point> = reds.iter().map(|(_, p)| p.clone()).collect();
                    let bp: Vec<mcs_core::Point> = blues.iter().map(|(_, p)| p.clone()).collect();
                    Ok(size_two::solve_pair(&rp, &bp)
                        .map(|(ri, bi)| SubsetSolution::new(vec![reds[ri].0, blues[bi].0])))
                }
                None => Err("size-two search needs exactly two colors".into()),
            }
        }),
        Algo::Brute => ("brute", {
            if inst.len() > 22 {
                Err("exhaustive search is limited to 22 points; pick a structured solver".into())
            } else {
                brute_min_consistent(&inst, None)
                    .map(Some)
                    .map_err(|e| e.to_string())
            }
        }),
        Algo::Auto => unreachable!(),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    match solved {
        Ok(Some(sol)) => {
            let verified = is_consistent(&inst, &sol);
            if let Some(svg_path) = svg_path {
                if let Err(e) =
                    std::fs::write(svg_path, svg::emit_svg(&inst, Some(&sol), voronoi))
                {
                    return fail(format!("{svg_path}: {e}"));
                }
            }
            println!(
                "{}",
                json!({
                    "algo": name,
                    "n": inst.len(),
                    "size": sol.size,
                    "indices": sol.indices,
                    "elapsed_ms": elapsed,
                    "verified": verified,
                })
            );
            ExitCode::SUCCESS
        }
        Ok(None) => {
            println!(
                "{}",
                json!({
                    "algo": name,
                    "n": inst.len(),
                    "size": null,
                    "indices": [],
                    "elapsed_ms": elapsed,
                    "verified": null,
                })
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_verify(path: &str, subset: &str) -> ExitCode {
    let inst = match read_instance(path) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let indices: Result<Vec<usize>, _> = subset
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect();
    let Ok(indices) = indices else {
        return fail("subset must be comma-separated indices");
    };
    if indices.iter().any(|&i| i >= inst.len()) {
        return fail("subset index out of range");
    }
    let sol = SubsetSolution::new(indices);
    let verified = is_consistent(&inst, &sol);
    println!(
        "{}",
        json!({
            "algo": "verify",
            "n": inst.len(),
            "size": sol.size,
            "indices": sol.indices,
            "elapsed_ms": 0.0,
            "verified": verified,
        })
    );
    ExitCode::SUCCESS
}

fn cmd_gen(class: &str, n: usize, colors: u32, seed: u64, out: Option<&str>) -> ExitCode {
    let class: GenClass = match class.parse() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let inst = generate(class, n, colors, seed);
    let text = render_instance(&inst);
    match out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => {
                println!("{}", json!({ "written": path, "n": inst.len(), "seed": seed }));
                ExitCode::SUCCESS
            }
            Err(e) => fail(format!("{path}: {e}")),
        },
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}

fn cmd_xcheck(algo: CheckAlgo, seeds: u64, n: usize, colors: u32, base: u64) -> ExitCode {
    let start = Instant::now();
    let mut mismatches = 0u64;
    let mut degeneracies = 0usize;
    for s in 0..seeds {
        let seed = base.wrapping_add(s);
        match algo {
            CheckAlgo::Collinear => {
                let inst = generate(GenClass::Collinear, n.min(18), colors.min(4), seed);
                let fast = collinear::solve_instance(&inst).unwrap();
                let oracle = brute_min_consistent(&inst, None).unwrap();
                if fast.size != oracle.size || !is_consistent(&inst, &fast) {
                    mismatches += 1;
                }
            }
            CheckAlgo::TwoLines => {
                let inst = generate(GenClass::TwoLines, n.min(10), colors.min(3), seed);
                let fast = parallel_lines::solve_instance(&inst).unwrap();
                let oracle = brute_min_consistent(&inst, None).unwrap();
                if fast.size != oracle.size || !is_consistent(&inst, &fast) {
                    mismatches += 1;
                }
            }
            CheckAlgo::Bichromatic => {
                let inst = generate(GenClass::Bichromatic, n.min(12).max(2), 2, seed);
                let fast = bichromatic::solve_instance(&inst).unwrap();
                let oracle = brute_min_consistent(&inst, None).unwrap();
                let general = parallel_lines::solve_instance(&inst).unwrap();
                if fast.size != oracle.size
                    || general.size != oracle.size
                    || !is_consistent(&inst, &fast)
                {
                    mismatches += 1;
                }
            }
            CheckAlgo::OneRed => {
                let inst = generate(GenClass::OneRed, n.min(14).max(2), 2, seed);
                let fast = one_red::solve_one_red(&inst).unwrap();
                let oracle = brute_min_consistent(&inst, None).unwrap();
                if fast.size != oracle.size || !is_consistent(&inst, &fast) || fast.size > 7 {
                    mismatches += 1;
                }
            }
            CheckAlgo::Pair2 => {
                let inst = generate(GenClass::General, n.min(60).max(2), 2, seed);
                match split_colors(&inst) {
                    Some((reds, blues)) if !reds.is_empty() && !blues.is_empty() => {
                        let rp: Vec<mcs_core::Point> =
                            reds.iter().map(|(_, p)| p.clone()).collect();
                        let bp: Vec<mcs_core::Point> =
                            blues.iter().map(|(_, p)| p.clone()).collect();
                        let fast = size_two::solve_pair(&rp, &bp);
                        let naive = size_two::solve_pair_naive(&rp, &bp);
                        let fast_ok = fast.map_or(true, |(ri, bi)| {
                            mcs_core::geom::bisector_separates(&rp[ri], &bp[bi], &rp, &bp)
                        });
                        if fast.is_some() != naive.is_some() || !fast_ok {
                            mismatches += 1;
                        }
                    }
                    _ => {}
                }
            }
            CheckAlgo::Cone => {
                let (normals, apexes, queries) = generate_cone_family(n.min(60), n.min(60), seed);
                let canonical = canonicalize(&normals, &apexes, &queries).unwrap();
                let naive = canonical
                    .halves
                    .iter()
                    .find_map(|h| naive_incidence(h, IncidenceMode::Closed));
                let (verdict, fb) = decide_incidence(&canonical, IncidenceMode::Closed);
                degeneracies += fb;
                if verdict.is_some() != naive.is_some() {
                    mismatches += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    println!(
        "{}",
        json!({
            "algo": format!("xcheck-{:?}", algo).to_lowercase(),
            "seeds": seeds,
            "n": n,
            "mismatches": mismatches,
            "degenerate_fallbacks": degeneracies,
            "elapsed_ms": elapsed,
        })
    );
    if mismatches > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_bench(sizes: &str, seed: u64) -> ExitCode {
    use mcs_core::collinear::{solve_collinear_linear, LinePoint};
    use mcs_core::geom::coord;
    let sizes: Result<Vec<usize>, _> = sizes.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let Ok(sizes) = sizes else {
        return fail("sizes must be comma-separated integers");
    };
    use rand::{Rng, SeedableRng};
    for n in sizes {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(n);
        let mut x = 0i64;
        for _ in 0..n {
            x += rng.gen_range(1..=5);
            points.push(LinePoint::new(coord(x), rng.gen_range(0..4u32)));
        }
        let start = Instant::now();
        let sol = solve_collinear_linear(&points).unwrap();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        println!(
            "{}",
            json!({ "algo": "collinear", "n": n, "size": sol.size, "elapsed_ms": elapsed })
        );
    }
    ExitCode::SUCCESS
}
