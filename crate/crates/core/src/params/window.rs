//! Windows of gadgets: `A_{i,j}(d)` is the index set within L1 distance `d`
//! of `(i,j)` (clipped to the grid), `V_{i,j}(d)` its gadget vertices plus
//! the connectors joining two gadgets of the window.

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::paths::AllPairs;
use crate::rational::Rational;
use crate::reduction::{ConnectorKind, ReducedInstance};

pub fn window_indices(chi: usize, i: usize, j: usize, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=chi {
        for b in 1..=chi {
            if a.abs_diff(i) + b.abs_diff(j) <= d {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn window_vertices(reduced: &ReducedInstance, i: usize, j: usize, d: usize) -> Result<Vec<usize>> {
    if !(1..=reduced.chi).contains(&i) || !(1..=reduced.chi).contains(&j) {
        return Err(Error::InvalidInstance(format!(
            "no gadget ({i},{j}) in a {0}x{0} grid",
            reduced.chi
        )));
    }
    let idx = window_indices(reduced.chi, i, j, d);
    let mut out: Vec<usize> = idx.iter().flat_map(|&(a, b)| reduced.gadget(a, b).vertices()).collect();
    for c in &reduced.connectors {
        let far = match c.kind {
            ConnectorKind::Vertical => (c.i + 1, c.j),
            ConnectorKind::Horizontal => (c.i, c.j + 1),
        };
        if idx.contains(&(c.i, c.j)) && idx.contains(&far) {
            out.extend(&c.path);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Exact diameter of the subgraph induced by `V_{i,j}(d)`.
pub fn window_diameter(reduced: &ReducedInstance, i: usize, j: usize, d: usize, exec: Exec) -> Result<Rational> {
    let keep = window_vertices(reduced, i, j, d)?;
    let (sub, _) = reduced.graph.induced(&keep)?;
    Ok(AllPairs::compute(&sub, exec)?.diameter())
}
