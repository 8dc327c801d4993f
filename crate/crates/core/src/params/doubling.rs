//! Doubling behaviour: covering balls `B_{2r}(v)` by balls of radius `r`.
//!
//! Balls are centered at vertices. For a fixed `v` the content of
//! `B_{2r}(v)` only changes at `r = dist(v, w) / 2`, and inside each such
//! interval a larger `r` only makes covering easier, so checking exactly
//! those radii is exhaustive.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting::{HittingProblem, NodeBudget};
use crate::par::Exec;
use crate::paths::AllPairs;
use crate::rational::Rational;

pub const DEFAULT_DOUBLING_VERTEX_BUDGET: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingProfile {
    /// Largest minimum number of radius-`r` balls needed for some `B_{2r}(v)`.
    pub max_cover: usize,
    pub center: usize,
    pub radius: Rational,
    /// Smallest `d` with `max_cover <= 2^d`.
    pub passes_d: u32,
}

fn guard(graph: &Graph, vertex_budget: usize) -> Result<()> {
    if graph.vertex_count() > vertex_budget {
        return Err(Error::VertexBudget {
            what: "doubling",
            vertices: graph.vertex_count(),
            limit: vertex_budget,
            hint: "doubling is only measured on small graphs",
        });
    }
    Ok(())
}

/// Pairwise distances replaced by their rank among all distinct distances,
/// so the many ball-membership tests compare integers.
struct RankedDistances {
    values: Vec<Rational>,
    rank: Vec<Vec<u32>>,
}

impl RankedDistances {
    fn new(apsp: &AllPairs) -> RankedDistances {
        let values = apsp.distinct_distances();
        let n = apsp.vertex_count();
        let rank = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| values.binary_search(apsp.dist(u, v)).expect("listed distance") as u32)
                    .collect()
            })
            .collect();
        RankedDistances { values, rank }
    }

    /// Number of distinct distances `<= r`; `dist <= r` iff `rank < this`.
    fn bound(&self, r: &Rational) -> u32 {
        self.values.partition_point(|d| d <= r) as u32
    }
}

/// Radii `dist(v, w) / 2` for `w != v`, ascending and distinct.
fn radii_for(apsp: &AllPairs, v: usize) -> Vec<Rational> {
    let two = Rational::integer(2);
    let mut rs: Vec<Rational> = apsp
        .tree(v)
        .dists()
        .iter()
        .filter(|d| d.is_positive())
        .map(|d| d / &two)
        .collect();
    rs.sort_unstable();
    rs.dedup();
    rs
}

/// Requirements: vertices of `B_{2r}(v)`; elements: all vertices, an
/// element covering the vertices within `r`.
fn cover_problem(ranked: &RankedDistances, v: usize, r: &Rational) -> HittingProblem {
    let n = ranked.rank.len();
    let inner = ranked.bound(r);
    let outer = ranked.bound(&(r * Rational::integer(2)));
    let sets: Vec<FixedBitSet> = (0..n)
        .filter(|&w| ranked.rank[v][w] < outer)
        .map(|w| {
            let mut s = FixedBitSet::with_capacity(n);
            for c in (0..n).filter(|&c| ranked.rank[c][w] < inner) {
                s.insert(c);
            }
            s
        })
        .collect();
    HittingProblem::new(n, sets)
}

fn greedy_size(p: &HittingProblem) -> usize {
    let mut all = FixedBitSet::with_capacity(p.requirement_count());
    all.insert_range(..);
    p.greedy(&all).len()
}

/// Every `B_{2r}(v)` is covered by `2^d` vertex-centered balls of radius `r`.
pub fn doubling_check(graph: &Graph, d: u32, vertex_budget: usize, nodes: NodeBudget, exec: Exec) -> Result<bool> {
    guard(graph, vertex_budget)?;
    let apsp = AllPairs::compute(graph, exec)?;
    let ranked = RankedDistances::new(&apsp);
    let k = 1usize.checked_shl(d).unwrap_or(usize::MAX);
    let ok = exec.try_map(graph.vertex_count(), |v| -> Result<bool> {
        for r in radii_for(&apsp, v) {
            let p = cover_problem(&ranked, v, &r);
            if greedy_size(&p) <= k {
                continue;
            }
            if p.decide(k, nodes)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    Ok(ok.into_iter().all(|b| b))
}

pub fn doubling_profile(graph: &Graph, vertex_budget: usize, nodes: NodeBudget, exec: Exec) -> Result<DoublingProfile> {
    guard(graph, vertex_budget)?;
    let apsp = AllPairs::compute(graph, exec)?;
    let ranked = RankedDistances::new(&apsp);
    let per_vertex = exec.try_map(graph.vertex_count(), |v| -> Result<(usize, Rational)> {
        let mut best = (1usize, Rational::zero());
        for r in radii_for(&apsp, v) {
            let p = cover_problem(&ranked, v, &r);
            // Only a cover strictly larger than the current best matters.
            if greedy_size(&p) <= best.0 || p.decide(best.0, nodes)?.is_some() {
                continue;
            }
            let m = p.minimum(nodes)?.map_or(0, |s| s.len());
            best = (m, r);
        }
        Ok(best)
    })?;
    let (center, (max_cover, radius)) =
        per_vertex
            .into_iter()
            .enumerate()
            .fold(
                (0, (0, Rational::zero())),
                |acc, cur| if cur.1 .0 > acc.1 .0 { cur } else { acc },
            );
    let passes_d = max_cover.max(1).next_power_of_two().trailing_zeros();
    Ok(DoublingProfile {
        max_cover,
        center,
        radius,
        passes_d,
    })
}
