use icelat::analysis::{demarcation, flip_ratio, heatmap, vertex_census as census};
use icelat::boundary::{alternating_edge_split, cycle_config, fill_in, from_signature, parse_signature, seed_config, SeedRecipe};
use icelat::dynamics::{run, Parallelism};
use icelat::exact::{enumerate, entropy_of, DEFAULT_CAP};
use icelat::io::{read_config, write_config};
use icelat::*;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn domain(lattice: &str, n: usize) -> PyResult<HexDomain> {
    build_domain(lattice.parse().map_err(err)?, n).map_err(err)
}

/// Boundary and starting configuration from a boundary string and/or a seed recipe.
fn source(d: &HexDomain, boundary: Option<&str>, recipe: Option<&str>) -> PyResult<(BoundarySpec, Configuration)> {
    let seeded = match recipe {
        Some(r) => Some(seed_config(d, &r.parse::<SeedRecipe>().map_err(err)?).map_err(err)?),
        None => None,
    };
    let spec = match boundary {
        Some(b) => {
            if let Some(sig) = b.strip_prefix("sig:") {
                from_signature(d, parse_signature(sig).map_err(err)?).map_err(err)?
            } else if b == "split" {
                alternating_edge_split(d).map_err(err)?
            } else if b == "cycle" {
                cycle_config(d).map_err(err)?.boundary(d)
            } else {
                return Err(err(format!("unknown boundary `{b}` (sig:..., split, cycle)")));
            }
        }
        None => match &seeded {
            Some(c) => c.boundary(d),
            None => return Err(err("give a boundary or a seed recipe")),
        },
    };
    let start = match seeded {
        Some(c) if c.agrees_with(d, &spec) => c,
        Some(_) => return Err(err("the seed recipe does not match the boundary")),
        None => fill_in(d, &spec, None).map_err(err)?,
    };
    Ok((spec, start))
}

/// Element counts of the N-hexagon.
#[pyfunction]
fn domain_info(py: Python<'_>, lattice: &str, n: usize) -> PyResult<Py<PyDict>> {
    let d = domain(lattice, n)?;
    let out = PyDict::new(py);
    out.set_item("lattice", d.kind.to_string())?;
    out.set_item("n", d.n)?;
    out.set_item("vertices", d.vertices.len())?;
    out.set_item("edges", d.edge_count())?;
    out.set_item("interior_edges", d.interior_edges().count())?;
    out.set_item("faces", d.faces.len())?;
    Ok(out.unbind())
}

/// Number of ice-rule fill-ins of a boundary.
#[pyfunction]
#[pyo3(signature = (lattice, n, boundary=None, recipe=None))]
fn count_fill_ins(lattice: &str, n: usize, boundary: Option<&str>, recipe: Option<&str>) -> PyResult<u128> {
    let d = domain(lattice, n)?;
    let (b, _) = source(&d, boundary, recipe)?;
    Ok(enumerate(&d, &b, 0).map_err(err)?.count)
}

/// Fill-ins as config-file texts, in canonical order.
#[pyfunction]
#[pyo3(signature = (lattice, n, boundary=None, recipe=None, cap=DEFAULT_CAP))]
fn fill_ins(lattice: &str, n: usize, boundary: Option<&str>, recipe: Option<&str>, cap: usize) -> PyResult<Vec<String>> {
    let d = domain(lattice, n)?;
    let (b, _) = source(&d, boundary, recipe)?;
    let r = enumerate(&d, &b, cap).map_err(err)?;
    Ok(r.configs().map_err(err)?.iter().map(write_config).collect())
}

#[pyfunction]
fn entropy(count: u128, arrows: usize) -> PyResult<f64> {
    entropy_of(count, arrows).map_err(err)
}

/// Runs the sampler. Returns per-face flip counts, the final configuration
/// text, the frozen fraction and a binary PGM heat map.
#[pyfunction]
#[pyo3(signature = (lattice, n, boundary=None, recipe=None, seed=0, burn_in=0, window=100, schedule=None, p=0.5, ppu=4.0))]
#[allow(clippy::too_many_arguments)]
fn sample(
    py: Python<'_>,
    lattice: &str,
    n: usize,
    boundary: Option<&str>,
    recipe: Option<&str>,
    seed: u64,
    burn_in: u64,
    window: u64,
    schedule: Option<&str>,
    p: f64,
    ppu: f64,
) -> PyResult<Py<PyDict>> {
    let d = domain(lattice, n)?;
    let (b, start) = source(&d, boundary, recipe)?;
    let s = match schedule {
        Some(s) => Schedule::parse(d.kind, s, p),
        None => Schedule::new(d.kind, Schedule::default_for(d.kind).passes, p),
    }
    .map_err(err)?;
    let (fin, stats) = py.detach(|| run(&d, &b, &start, &s, burn_in, window, seed, Parallelism::Rayon)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("per_face", stats.per_face.clone())?;
    out.set_item("total", stats.total())?;
    out.set_item("config", write_config(&fin))?;
    out.set_item("frozen_fraction", demarcation(&stats, &d).map_err(err)?.frozen_fraction)?;
    if let Ok(r) = flip_ratio(&stats, &d, icelat::analysis::default_center_radius(&d)) {
        out.set_item("flip_ratio", r)?;
    }
    if let Ok(img) = heatmap(&stats, &d, ppu, None) {
        out.set_item("heatmap", PyBytes::new(py, &img.to_pgm(true)))?;
    }
    Ok(out.unbind())
}

/// True when a config-file text obeys the ice rule everywhere.
#[pyfunction]
fn is_legal(lattice: &str, n: usize, text: &str) -> PyResult<bool> {
    let d = domain(lattice, n)?;
    let c = read_config(text, &d).map_err(err)?;
    Ok(icelat::config::is_legal(&d, &c))
}

/// (legal vertex configurations, vertex orientations, total vertex types).
#[pyfunction]
fn vertex_census(lattice: &str) -> PyResult<(usize, usize, usize)> {
    let c = census(lattice.parse().map_err(err)?).map_err(err)?;
    Ok((c.per_vertex, c.orientations, c.total))
}

#[pymodule]
fn pyicelat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(domain_info, m)?)?;
    m.add_function(wrap_pyfunction!(count_fill_ins, m)?)?;
    m.add_function(wrap_pyfunction!(fill_ins, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(is_legal, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_census, m)?)?;
    Ok(())
}
