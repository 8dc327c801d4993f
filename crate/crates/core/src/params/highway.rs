//! Highway dimension: the constructive hitting families `H_r` of the
//! reduction and an exact computation for small graphs.
//!
//! `hd` is the smallest `h` such that for every `r > 0` and vertex `v` the
//! shortest paths `pi` with `|pi| > r` and `pi ⊆ B_{4r}(v)` have a hitting
//! set of size `h` inside `B_{4r}(v)`. The exact computation uses canonical
//! shortest paths (one per vertex pair).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting::{HittingProblem, NodeBudget};
use crate::par::Exec;
use crate::paths::AllPairs;
use crate::rational::Rational;
use crate::reduction::ReducedInstance;

pub const DEFAULT_HD_VERTEX_BUDGET: usize = 64;

/// Greedy `q`-cover of a path given as consecutive vertices: start with the
/// first vertex and repeatedly add the closest vertex at distance at least
/// `q` (along the path) from the last one added.
pub fn q_cover(graph: &Graph, path: &[usize], q: &Rational) -> Result<Vec<usize>> {
    let Some(&first) = path.first() else {
        return Ok(Vec::new());
    };
    let mut out = vec![first];
    let mut since = Rational::zero();
    for w in path.windows(2) {
        let e = graph
            .edge_between(w[0], w[1])
            .ok_or_else(|| Error::InvalidGraph(format!("no edge between {} and {}", w[0], w[1])))?;
        since += &graph.edge(e).len;
        if &since >= q {
            out.push(w[1]);
            since = Rational::zero();
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingFamily {
    pub radius: Rational,
    /// Sorted vertex ids.
    pub hitters: Vec<usize>,
    /// `max_v |hitters ∩ B_{4r}(v)|`.
    pub per_ball_max: usize,
    pub per_ball_center: usize,
}

/// The family `H_r`: `X` (all `y`, `x^h`, `z^h`) for `r >= 2^{n+2}`,
/// otherwise `X` plus `r/4`-covers of every quadrant, both `U` paths, both
/// connectors and the vertices `u^1_n`, `u^3_n` of every gadget.
pub fn highway_witness_set(reduced: &ReducedInstance, r: &Rational) -> Result<Vec<usize>> {
    let g = &reduced.graph;
    let mut out: Vec<usize> = Vec::new();
    for gd in &reduced.gadgets {
        out.push(gd.y);
        out.extend(gd.x);
        out.extend(gd.z);
    }
    if *r < Rational::pow2(reduced.n + 2) {
        let q = r / &Rational::integer(4);
        for gd in &reduced.gadgets {
            for quad in &gd.quadrants {
                out.extend(q_cover(g, quad, &q)?);
            }
            for u in &gd.u {
                out.extend(q_cover(g, u, &q)?);
                out.extend(u.last().copied());
            }
        }
        for c in &reduced.connectors {
            out.extend(q_cover(g, &c.path, &q)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn highway_witness(reduced: &ReducedInstance, r: &Rational, exec: Exec) -> Result<HittingFamily> {
    let apsp = AllPairs::compute(&reduced.graph, exec)?;
    highway_witness_with(reduced, &apsp, r)
}

pub fn highway_witness_with(reduced: &ReducedInstance, apsp: &AllPairs, r: &Rational) -> Result<HittingFamily> {
    let hitters = highway_witness_set(reduced, r)?;
    let (per_ball_max, per_ball_center) = per_ball_max(apsp, &hitters, &(r * Rational::integer(4)));
    Ok(HittingFamily {
        radius: r.clone(),
        hitters,
        per_ball_max,
        per_ball_center,
    })
}

/// `max_v |set ∩ B_rho(v)|` and the first maximizing `v`.
pub fn per_ball_max(apsp: &AllPairs, set: &[usize], rho: &Rational) -> (usize, usize) {
    (0..apsp.vertex_count())
        .map(|v| (set.iter().filter(|&&h| apsp.dist(v, h) <= rho).count(), v))
        .fold((0, 0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

/// A pair `(s, t)` joined by some shortest path of length `> r` that avoids
/// `hitters`, or `None` if every such path is hit. All shortest paths are
/// considered, not just canonical ones.
pub fn unhit_long_path(
    graph: &Graph,
    apsp: &AllPairs,
    hitters: &[usize],
    r: &Rational,
    exec: Exec,
) -> Option<(usize, usize)> {
    let n = graph.vertex_count();
    let mut is_hitter = vec![false; n];
    for &h in hitters {
        is_hitter[h] = true;
    }
    let found = exec.map(n, |s| {
        if is_hitter[s] {
            return None;
        }
        let tree = apsp.tree(s);
        // free[v]: some shortest s-v path avoids every hitter.
        let mut free = vec![false; n];
        free[s] = true;
        for &v in &tree.order()[1..] {
            if is_hitter[v] {
                continue;
            }
            free[v] = graph
                .neighbors(v)
                .any(|(u, len)| free[u] && &(tree.dist(u) + len) == tree.dist(v));
            if free[v] && tree.dist(v) > r {
                return Some((s, v));
            }
        }
        None
    });
    found.into_iter().flatten().next()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighwayDimension {
    pub value: usize,
    pub center: usize,
    pub radius: Rational,
}

/// Radii where the family `{pi : |pi| > r, pi ⊆ B_{4r}(v)}` can change
/// (every distance `D` and `D/4`), plus midpoints and one radius past the
/// last breakpoint.
pub fn representative_radii(apsp: &AllPairs) -> Vec<Rational> {
    let four = Rational::integer(4);
    let mut pts: Vec<Rational> = apsp
        .distinct_distances()
        .into_iter()
        .flat_map(|d| [&d / &four, d])
        .filter(Rational::is_positive)
        .collect();
    pts.push(Rational::zero());
    pts.sort_unstable();
    pts.dedup();
    let mut out = Vec::with_capacity(2 * pts.len());
    for w in pts.windows(2) {
        out.push(w[0].midpoint(&w[1]));
        out.push(w[1].clone());
    }
    if let Some(last) = pts.last() {
        out.push(last + &Rational::one());
    }
    out
}

pub fn highway_dimension_exact(
    graph: &Graph,
    vertex_budget: usize,
    nodes: NodeBudget,
    exec: Exec,
) -> Result<HighwayDimension> {
    let n = graph.vertex_count();
    if n > vertex_budget {
        return Err(Error::VertexBudget {
            what: "highway_dimension_exact",
            vertices: n,
            limit: vertex_budget,
            hint: "use highway_witness for an upper bound",
        });
    }
    let apsp = AllPairs::compute(graph, exec)?;
    let radii = representative_radii(&apsp);
    let four = Rational::integer(4);

    struct PathInfo {
        vertices: Vec<usize>,
        // radius indices with |pi| > r are < long_until
        long_until: usize,
    }
    let mut paths = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            let d = apsp.dist(u, w);
            let long_until = radii.partition_point(|r| r < d);
            paths.push(PathInfo {
                vertices: apsp.tree(u).path_to(w),
                long_until,
            });
        }
    }

    let per_center = exec.try_map(n, |v| -> Result<(usize, usize)> {
        // Path p is in the family for radius indices [from, until).
        let mut events: Vec<(usize, usize, usize)> = Vec::new();
        for (pid, p) in paths.iter().enumerate() {
            let reach = p
                .vertices
                .iter()
                .map(|&w| apsp.dist(v, w))
                .max()
                .expect("non-empty path");
            let from = radii.partition_point(|r| &(r * &four) < reach);
            if from < p.long_until {
                events.push((from, p.long_until, pid));
            }
        }
        let mut cut_points: Vec<usize> = events.iter().flat_map(|e| [e.0, e.1]).collect();
        cut_points.sort_unstable();
        cut_points.dedup();
        let mut memo: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut best = (0usize, 0usize);
        for &t in &cut_points {
            let family: Vec<usize> = events.iter().filter(|e| e.0 <= t && t < e.1).map(|e| e.2).collect();
            if family.is_empty() {
                continue;
            }
            let size = match memo.get(&family) {
                Some(&s) => s,
                None => {
                    let lists: Vec<Vec<usize>> = family.iter().map(|&pid| paths[pid].vertices.clone()).collect();
                    let s = HittingProblem::from_lists(n, &lists)
                        .minimum(nodes)?
                        .map_or(0, |h| h.len());
                    memo.insert(family, s);
                    s
                }
            };
            if size > best.0 {
                best = (size, t);
            }
        }
        Ok(best)
    })?;
    let (center, (value, t)) =
        per_center
            .into_iter()
            .enumerate()
            .fold((0, (0, 0)), |acc, cur| if cur.1 .0 > acc.1 .0 { cur } else { acc });
    Ok(HighwayDimension {
        value,
        center,
        radius: if value == 0 { Rational::zero() } else { radii[t].clone() },
    })
}
