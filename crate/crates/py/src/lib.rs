//! Python bindings: instances travel as the same text format the CLI uses,
//! so all exact-rational coordinates survive the crossing.

use mcs_core::consistency::{brute_min_consistent, is_consistent};
use mcs_core::gen::{generate, GenClass};
use mcs_core::instance::{Instance, StructureTag, SubsetSolution};
use mcs_core::io::{parse_instance, render_instance};
use mcs_core::{bichromatic, collinear, one_red, parallel_lines, size_two, svg};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn parse(text: &str) -> PyResult<Instance> {
    parse_instance(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Generate a seeded instance; returns its text.
#[pyfunction]
#[pyo3(signature = (class, n, colors = 3, seed = 0))]
fn gen(class: &str, n: usize, colors: u32, seed: u64) -> PyResult<String> {
    let class: GenClass = class.parse().map_err(PyValueError::new_err)?;
    Ok(render_instance(&generate(class, n, colors, seed)))
}

fn solution_dict<'py>(
    py: Python<'py>,
    algo: &str,
    inst: &Instance,
    sol: Option<&SubsetSolution>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("algo", algo)?;
    d.set_item("n", inst.len())?;
    match sol {
        Some(sol) => {
            d.set_item("size", sol.size)?;
            d.set_item("indices", sol.indices.clone())?;
            d.set_item("verified", is_consistent(inst, sol))?;
        }
        None => {
            d.set_item("size", py.None())?;
            d.set_item("indices", Vec::<usize>::new())?;
            d.set_item("verified", py.None())?;
        }
    }
    Ok(d)
}

/// Solve an instance given as text. `algo` picks a solver or dispatches by
/// the instance tag (`auto`).
#[pyfunction]
#[pyo3(signature = (text, algo = "auto"))]
fn solve<'py>(py: Python<'py>, text: &str, algo: &str) -> PyResult<Bound<'py, PyDict>> {
    let inst = parse(text)?;
    let chosen = if algo == "auto" {
        match &inst.tag {
            StructureTag::Collinear => "collinear",
            StructureTag::TwoLines { .. } => "two-lines",
            StructureTag::OneRed => "one-red",
            StructureTag::General => "brute",
        }
    } else {
        algo
    };
    let err = |e: String| PyValueError::new_err(e);
    let sol = match chosen {
        "collinear" => Some(collinear::solve_instance(&inst).map_err(|e| err(e.to_string()))?),
        "two-lines" => Some(
            parallel_lines::solve_instance(&inst)
                .ok_or_else(|| err("instance is not on two lines".into()))?,
        ),
        "bichromatic" => Some(
            bichromatic::solve_instance(&inst)
                .ok_or_else(|| err("instance is not a red-line/blue-line configuration".into()))?,
        ),
        "one-red" => Some(one_red::solve_one_red(&inst).map_err(|e| err(e.to_string()))?),
        "brute" => Some(brute_min_consistent(&inst, None).map_err(|e| err(e.to_string()))?),
        "pair2" => {
            let colors = inst.colors();
            if colors.len() != 2 {
                return Err(err("size-two search needs exactly two colors".into()));
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
            let rp: Vec<mcs_core::Point> = reds.iter().map(|(_, p)| p.clone()).collect();
            let bp: Vec<mcs_core::Point> = blues.iter().map(|(_, p)| p.clone()).collect();
            size_two::solve_pair(&rp, &bp)
                .map(|(ri, bi)| SubsetSolution::new(vec![reds[ri].0, blues[bi].0]))
        }
        other => return Err(err(format!("unknown algo {other:?}"))),
    };
    solution_dict(py, chosen, &inst, sol.as_ref())
}

/// Is the given index subset a consistent subset of the instance?
#[pyfunction]
fn verify(text: &str, indices: Vec<usize>) -> PyResult<bool> {
    let inst = parse(text)?;
    if indices.iter().any(|&i| i >= inst.len()) {
        return Err(PyValueError::new_err("subset index out of range"));
    }
    Ok(is_consistent(&inst, &SubsetSolution::new(indices)))
}

/// Render an instance (and optionally a solution) as an SVG string.
#[pyfunction]
#[pyo3(signature = (text, indices = None, voronoi = false))]
fn render_svg(text: &str, indices: Option<Vec<usize>>, voronoi: bool) -> PyResult<String> {
    let inst = parse(text)?;
    let sol = indices.map(SubsetSolution::new);
    Ok(svg::emit_svg(&inst, sol.as_ref(), voronoi))
}

#[pymodule]
fn mcs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gen, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}
