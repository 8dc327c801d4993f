//! Skeleton cuts on the geometric realization of canonical shortest-path
//! trees.
//!
//! A point `p` of the tree of `s` belongs to the skeleton `T*_s` when some
//! vertex `w` below it satisfies `dist(s, p) <= 2 dist(p, w)`. With
//! `f(c)` the largest distance from `c` into its subtree, a tree edge
//! `u -> c` of length `l` is covered up to offset
//! `t* = (2 (l + f(c)) - dist(s, u)) / 3` (clamped to `[0, l]`), and a vertex
//! `v` is in the skeleton iff `dist(s, v) <= 2 f(v)`.
//!
//! `Cut^r_s` counts skeleton points at distance exactly `r`; a point at a
//! vertex counts once. The count is piecewise constant between breakpoints,
//! so evaluating every breakpoint and every gap midpoint is exact.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, PointOnEdge};
use crate::par::Exec;
use crate::paths::{dijkstra, ShortestPathTree};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonProfile {
    pub source: usize,
    /// Sorted distinct radii where the cut size can change.
    pub breakpoints: Vec<Rational>,
    /// `(radius, |Cut|)` at every breakpoint and every midpoint between
    /// consecutive breakpoints, in increasing radius.
    pub cut_sizes: Vec<(Rational, usize)>,
    /// Largest cut, attained first at the recorded radius.
    pub max_cut: (Rational, usize),
}

impl SkeletonProfile {
    /// `|Cut^r_s|` for any `r >= 0`.
    pub fn cut_at(&self, r: &Rational) -> usize {
        match self.breakpoints.binary_search(r) {
            Ok(k) => self.cut_sizes[2 * k].1,
            Err(0) => 0,
            Err(k) if k == self.breakpoints.len() => 0,
            Err(k) => self.cut_sizes[2 * k - 1].1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDimension {
    pub value: usize,
    pub source: usize,
    pub radius: Rational,
}

/// Offset `t*` up to which the tree edge into `c` lies in the skeleton.
fn covered_offset(tree: &ShortestPathTree, f: &[Rational], u: usize, c: usize) -> Rational {
    let len = tree.dist(c) - tree.dist(u);
    let raw = (Rational::integer(2) * (&len + &f[c]) - tree.dist(u)) / Rational::integer(3);
    raw.clamp_to(&Rational::zero(), &len)
}

/// Whether each vertex belongs to the skeleton of the tree's source.
pub fn skeleton_vertices(tree: &ShortestPathTree) -> Vec<bool> {
    let f = tree.subtree_eccentricities();
    (0..tree.vertex_count())
        .map(|v| *tree.dist(v) <= Rational::integer(2) * &f[v])
        .collect()
}

/// A member of `Cut^r_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutPoint {
    Vertex(usize),
    Edge(PointOnEdge),
}

/// The points of `Cut^r_s` explicitly, for a tree computed on `graph`.
pub fn cut_points(graph: &Graph, tree: &ShortestPathTree, r: &Rational) -> Vec<CutPoint> {
    let f = tree.subtree_eccentricities();
    let two = Rational::integer(2);
    let mut out = Vec::new();
    for &c in tree.order() {
        let dc = tree.dist(c);
        if dc == r {
            if *r <= &two * &f[c] {
                out.push(CutPoint::Vertex(c));
            }
            continue;
        }
        let Some(u) = tree.parent(c) else { continue };
        if tree.dist(u) < r && r < dc {
            let offset = r - tree.dist(u);
            if offset <= covered_offset(tree, &f, u, c) {
                let edge = graph.edge_between(u, c).expect("tree edge exists");
                out.push(CutPoint::Edge(PointOnEdge { edge, from: u, offset }));
            }
        }
    }
    out
}

pub fn skeleton_profile(graph: &Graph, s: usize) -> Result<SkeletonProfile> {
    Ok(profile_of_tree(&dijkstra(graph, s)?))
}

pub fn profile_of_tree(tree: &ShortestPathTree) -> SkeletonProfile {
    let n = tree.vertex_count();
    let f = tree.subtree_eccentricities();
    let two = Rational::integer(2);
    let in_skel: Vec<bool> = (0..n).map(|v| *tree.dist(v) <= &two * &f[v]).collect();

    // (lo, hi, closed_top) per covered edge interior.
    let mut segments: Vec<(Rational, Rational, bool)> = Vec::new();
    let mut points: Vec<Rational> = (0..n).map(|v| tree.dist(v).clone()).collect();
    for c in 0..n {
        let Some(u) = tree.parent(c) else { continue };
        let t = covered_offset(tree, &f, u, c);
        if !t.is_positive() {
            continue;
        }
        let full = t == (tree.dist(c) - tree.dist(u));
        let hi = tree.dist(u) + &t;
        points.push(hi.clone());
        segments.push((tree.dist(u).clone(), hi, !full));
    }
    points.sort_unstable();
    points.dedup();

    let idx = |r: &Rational| points.binary_search(r).expect("breakpoint present");
    // Slot 2k is breakpoint k, slot 2k+1 the open gap after it.
    let slots = 2 * points.len();
    let mut diff = vec![0i64; slots + 1];
    for v in (0..n).filter(|&v| in_skel[v]) {
        let k = 2 * idx(tree.dist(v));
        diff[k] += 1;
        diff[k + 1] -= 1;
    }
    for (lo, hi, closed) in &segments {
        let first = 2 * idx(lo) + 1;
        let last = if *closed { 2 * idx(hi) } else { 2 * idx(hi) - 1 };
        diff[first] += 1;
        diff[last + 1] -= 1;
    }

    let mut cut_sizes = Vec::with_capacity(slots);
    let mut running = 0i64;
    for (slot, d) in diff.iter().take(slots).enumerate() {
        running += d;
        let k = slot / 2;
        let r = if slot % 2 == 0 {
            points[k].clone()
        } else if k + 1 < points.len() {
            points[k].midpoint(&points[k + 1])
        } else {
            // Beyond the last breakpoint the cut is empty; keep slot parity.
            &points[k] + &Rational::one()
        };
        cut_sizes.push((r, running as usize));
    }
    let max_cut = cut_sizes
        .iter()
        .fold(None::<&(Rational, usize)>, |best, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })
        .cloned()
        .unwrap_or((Rational::zero(), 0));
    SkeletonProfile {
        source: tree.source(),
        breakpoints: points,
        cut_sizes,
        max_cut,
    }
}

/// `kappa = max_{s, r} |Cut^r_s|` with the first `(source, radius)` attaining it.
pub fn skeleton_dimension(graph: &Graph, exec: Exec) -> Result<SkeletonDimension> {
    let best = exec.try_map(graph.vertex_count(), |s| skeleton_profile(graph, s).map(|p| p.max_cut))?;
    let (source, (radius, value)) = best
        .into_iter()
        .enumerate()
        .fold(None::<(usize, (Rational, usize))>, |acc, cur| match acc {
            Some(a) if a.1 .1 >= cur.1 .1 => Some(a),
            _ => Some(cur),
        })
        .unwrap_or((0, (Rational::zero(), 0)));
    Ok(SkeletonDimension { value, source, radius })
}
