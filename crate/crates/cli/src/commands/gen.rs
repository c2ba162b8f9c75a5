use std::io::Write;

use glauber::graph::{
    complete, cycle, gen_erdos_renyi, gen_galton_watson_poisson, gen_random_regular, grid, path, star, write_instance, Graph,
};
use glauber::{Field, Instance};

use super::{read_instance, require_seed};
use crate::args::{Family, GenArgs, GlobalArgs};
use crate::output::emit;
use crate::{CliError, CliResult};

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::invalid(format!("--{flag} is required for --family {family}")))
}

fn integer_degree(d: f64) -> CliResult<usize> {
    if d < 0.0 || d.fract() != 0.0 {
        return Err(CliError::invalid(format!("regular degree must be a non-negative integer, got {d}")));
    }
    Ok(d as usize)
}

pub(super) fn build(g: &GlobalArgs, a: &GenArgs) -> CliResult<Instance> {
    if !(a.beta >= 0.0) {
        return Err(CliError::invalid(format!("beta must be non-negative, got {}", a.beta)));
    }
    if !a.field.is_finite() {
        return Err(CliError::invalid("field must be finite"));
    }
    let graph: Graph = match a.family {
        Family::File => {
            let path = a.input.as_deref().ok_or_else(|| CliError::invalid("--in is required for --family file"))?;
            return read_instance(path);
        }
        Family::Cycle => cycle(need(a.n, "n", "cycle")?),
        Family::Path => path(need(a.n, "n", "path")?),
        Family::Complete => complete(need(a.n, "n", "complete")?),
        // `--n` counts all vertices; the star has `n - 1` leaves
        Family::Star => star(need(a.n, "n", "star")?.saturating_sub(1)),
        Family::Grid => grid(need(a.rows, "rows", "grid")?, need(a.cols, "cols", "grid")?),
        Family::Regular => {
            let d = integer_degree(need(a.d, "d", "regular")?)?;
            gen_random_regular(need(a.n, "n", "regular")?, d, require_seed(g)?)?
        }
        Family::Er => gen_erdos_renyi(need(a.n, "n", "er")?, need(a.d, "d", "er")?, require_seed(g)?)?,
        Family::Gw => gen_galton_watson_poisson(need(a.d, "d", "gw")?, need(a.depth, "depth", "gw")?, require_seed(g)?)?.graph,
    };
    let edges: Vec<(usize, usize, f64)> = graph.edges().map(|(u, v)| (u, v, a.beta)).collect();
    let fields: Vec<(usize, Field<f64>)> =
        if a.field != 0.0 { (0..graph.n()).map(|v| (v, Field::Finite(a.field))).collect() } else { Vec::new() };
    Ok(Instance::build(graph.n(), &edges, &fields)?)
}

pub(super) fn run(g: &GlobalArgs, a: &GenArgs, stdout: &mut dyn Write) -> CliResult {
    let inst = build(g, a)?;
    let graph = inst.graph();
    let excess = graph.m() + graph.components() - graph.n();
    eprintln!(
        "n={} m={} max_degree={} components={} cycle_rank={}",
        graph.n(),
        graph.m(),
        graph.max_degree(),
        graph.components(),
        excess
    );
    emit(g.out.as_deref(), stdout, write_instance(&inst).as_bytes())
}
