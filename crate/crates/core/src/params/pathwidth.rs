//! Path decompositions of the reduced graph after suppressing degree-2
//! vertices, their verification, and an exact pathwidth for tiny graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{graph_from_triples, Graph};
use crate::rational::Rational;
use crate::reduction::{ReducedInstance, VertexLabel};

pub const PATHWIDTH_EXACT_LIMIT: usize = 20;

#[derive(Clone, Debug)]
pub struct Contracted {
    pub graph: Graph,
    /// Contracted vertex id -> original vertex id.
    pub original: Vec<usize>,
}

impl Contracted {
    pub fn index_of(&self, original: usize) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }
}

/// Repeatedly suppresses vertices with exactly two distinct neighbours,
/// except vertices for which `keep` holds. Parallel edges keep the shorter
/// length.
pub fn suppress_degree2<F: Fn(usize) -> bool>(graph: &Graph, keep: F) -> Result<Contracted> {
    let n = graph.vertex_count();
    let mut adj: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
    for e in graph.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let slot = adj[a].entry(b).or_insert_with(|| e.len.clone());
            if e.len < *slot {
                *slot = e.len.clone();
            }
        }
    }
    let mut alive = vec![true; n];
    while let Some(v) = (0..n).find(|&v| alive[v] && !keep(v) && adj[v].len() == 2) {
        let mut it = std::mem::take(&mut adj[v]).into_iter();
        let (a, la) = it.next().expect("two neighbours");
        let (b, lb) = it.next().expect("two neighbours");
        adj[a].remove(&v);
        adj[b].remove(&v);
        let len = &la + &lb;
        for (x, y) in [(a, b), (b, a)] {
            let slot = adj[x].entry(y).or_insert_with(|| len.clone());
            if len < *slot {
                *slot = len.clone();
            }
        }
        alive[v] = false;
    }
    let original: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in original.iter().enumerate() {
        new_id[v] = i;
    }
    let mut triples = Vec::new();
    for &a in &original {
        for (&b, len) in &adj[a] {
            if a < b {
                triples.push((new_id[a], new_id[b], len.clone()));
            }
        }
    }
    Ok(Contracted {
        graph: graph_from_triples(original.len(), &triples)?,
        original,
    })
}

/// Suppresses every degree-2 vertex except the anchors `x^h_{i,j}`.
pub fn contract_degree2(reduced: &ReducedInstance) -> Result<Contracted> {
    suppress_degree2(&reduced.graph, |v| matches!(reduced.label(v), VertexLabel::X { .. }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    /// Sorted vertex ids per bag.
    pub bags: Vec<Vec<usize>>,
    pub width: usize,
}

impl PathDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>) -> PathDecomposition {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        let width = bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
        PathDecomposition { bags, width }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionViolation {
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    NotContiguous(usize),
    UnknownVertex(usize),
}

/// Checks coverage of vertices and edges and that each vertex occupies a
/// contiguous run of bags. Returns the width or the first violation.
pub fn verify_path_decomposition(
    graph: &Graph,
    pd: &PathDecomposition,
) -> std::result::Result<usize, DecompositionViolation> {
    let n = graph.vertex_count();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (i, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(DecompositionViolation::UnknownVertex(v));
            }
            first[v] = first[v].min(i);
            last[v] = i;
            count[v] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| count[v] == 0) {
        return Err(DecompositionViolation::UncoveredVertex(v));
    }
    if let Some(v) = (0..n).find(|&v| last[v] - first[v] + 1 != count[v]) {
        return Err(DecompositionViolation::NotContiguous(v));
    }
    for e in graph.edges() {
        let lo = first[e.u].max(first[e.v]);
        let hi = last[e.u].min(last[e.v]);
        // Both runs are contiguous, so they share a bag iff they overlap.
        if lo > hi {
            return Err(DecompositionViolation::UncoveredEdge(e.u.min(e.v), e.u.max(e.v)));
        }
    }
    Ok(pd.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1))
}

/// The gadget-by-gadget decomposition of the contracted graph: a width-2
/// decomposition of each contracted cycle, every kept `U` vertex added to
/// the bags around its portal neighbours, `y` and the anchors of the gadget
/// and of the next `chi` gadgets (row-major) added to every bag.
pub fn build_path_decomposition(reduced: &ReducedInstance) -> Result<(Contracted, PathDecomposition)> {
    let c = contract_degree2(reduced)?;
    let id = |v: usize| c.index_of(v);
    let chi = reduced.chi;
    let mut bags: Vec<Vec<usize>> = Vec::new();
    for (g_idx, gd) in reduced.gadgets.iter().enumerate() {
        let ring: Vec<usize> = gd.cycle().into_iter().filter_map(id).collect();
        let mut local: Vec<Vec<usize>> = if ring.len() <= 3 {
            vec![ring.clone()]
        } else {
            (1..ring.len() - 1)
                .map(|i| vec![ring[0], ring[i], ring[i + 1]])
                .collect()
        };
        for u in gd.u.iter().flatten().filter_map(|&u| id(u)) {
            let mut range: Option<(usize, usize)> = None;
            for (w, _) in c.graph.neighbors(u) {
                if !ring.contains(&w) {
                    continue;
                }
                for (b, bag) in local.iter().enumerate() {
                    if bag.contains(&w) {
                        range = Some(range.map_or((b, b), |(lo, hi)| (lo.min(b), hi.max(b))));
                    }
                }
            }
            let (lo, hi) = range.ok_or_else(|| {
                Error::InvalidGraph(format!(
                    "{} has no cycle neighbour after contraction",
                    reduced.render(c.original[u])
                ))
            })?;
            for bag in &mut local[lo..=hi] {
                bag.push(u);
            }
        }
        let mut extra: Vec<usize> = vec![gd.y];
        extra.extend(gd.x);
        for later in reduced.gadgets.iter().skip(g_idx + 1).take(chi) {
            extra.extend(later.x);
        }
        let extra: Vec<usize> = extra.into_iter().filter_map(id).collect();
        for bag in &mut local {
            bag.extend(&extra);
        }
        bags.extend(local);
    }
    Ok((c, PathDecomposition::new(bags)))
}

/// Exact pathwidth as the vertex separation number, by dynamic programming
/// over vertex subsets: `f(S) = max(|∂S|, min_{v ∈ S} f(S - v))`.
pub fn pathwidth_exact_tiny(graph: &Graph) -> Result<usize> {
    let n = graph.vertex_count();
    if n > PATHWIDTH_EXACT_LIMIT {
        return Err(Error::VertexBudget {
            what: "pathwidth_exact_tiny",
            vertices: n,
            limit: PATHWIDTH_EXACT_LIMIT,
            hint: "use build_path_decomposition for an upper bound",
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| graph.neighbors(v).fold(0u32, |m, (w, _)| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut f = vec![u8::MAX; 1usize << n];
    f[0] = 0;
    for s in 1..=full {
        let outside = full & !s;
        let boundary = (0..n).filter(|&v| s & (1 << v) != 0 && nbr[v] & outside != 0).count() as u8;
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(f[(s & !(1 << v)) as usize]);
        }
        f[s as usize] = best.max(boundary);
    }
    Ok(f[full as usize] as usize)
}
