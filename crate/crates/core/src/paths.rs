//! Exact shortest paths with canonical tie-breaking.
//!
//! Among all shortest `s`-`v` paths the canonical one minimizes, in order,
//! the length, the number of hops, and the sequence of vertex ids read from
//! `s` (lexicographically). This selects a unique tree for every source with
//! no weight perturbation, and the choice is the same on every run.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::Exec;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestPathTree {
    source: usize,
    parent: Vec<Option<usize>>,
    dist: Vec<Rational>,
    hops: Vec<usize>,
    /// Vertices by non-decreasing distance; parents precede children.
    order: Vec<usize>,
}

impl ShortestPathTree {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn dist(&self, v: usize) -> &Rational {
        &self.dist[v]
    }

    pub fn dists(&self) -> &[Rational] {
        &self.dist
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn hops(&self, v: usize) -> usize {
        self.hops[v]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Tree path from the source to `v`, source first.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.vertex_count()];
        for &v in &self.order {
            if let Some(p) = self.parent[v] {
                children[p].push(v);
            }
        }
        children
    }

    /// `f(v)`: the largest distance from `v` to a vertex of its subtree.
    pub fn subtree_eccentricities(&self) -> Vec<Rational> {
        let mut deepest: Vec<Rational> = self.dist.clone();
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                if deepest[v] > deepest[p] {
                    deepest[p] = deepest[v].clone();
                }
            }
        }
        deepest.into_iter().zip(&self.dist).map(|(d, own)| d - own).collect()
    }

    /// Whether `a` lies on the tree path from the source to `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        if self.hops[a] > self.hops[b] {
            return false;
        }
        let mut cur = b;
        while self.hops[cur] > self.hops[a] {
            cur = self.parent[cur].expect("non-root has a parent");
        }
        cur == a
    }

    /// Lexicographic comparison of the tree paths to `a` and `b`, which must
    /// have the same hop count.
    fn cmp_paths_same_depth(&self, mut a: usize, mut b: usize) -> Ordering {
        debug_assert_eq!(self.hops[a], self.hops[b]);
        if a == b {
            return Ordering::Equal;
        }
        // Equal positions form a common prefix, so the first difference read
        // from the source is just below the point where the two paths meet.
        loop {
            let (pa, pb) = (self.parent[a], self.parent[b]);
            if pa == pb {
                return a.cmp(&b);
            }
            a = pa.expect("same depth paths meet at the root");
            b = pb.expect("same depth paths meet at the root");
        }
    }
}

/// Exact single-source distances only, no tree.
fn dijkstra_dists(graph: &Graph, sources: &[usize]) -> Vec<Option<Rational>> {
    let n = graph.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = Some(Rational::zero());
        heap.push(Reverse((Rational::zero(), s)));
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for (w, len) in graph.neighbors(v) {
            if done[w] {
                continue;
            }
            let cand = &d + len;
            let better = match &dist[w] {
                None => true,
                Some(old) => cand < *old,
            };
            if better {
                dist[w] = Some(cand.clone());
                heap.push(Reverse((cand, w)));
            }
        }
    }
    dist
}

/// Canonical shortest-path tree of `source`.
pub fn dijkstra(graph: &Graph, source: usize) -> Result<ShortestPathTree> {
    graph.check_vertex(source)?;
    let n = graph.vertex_count();
    let raw = dijkstra_dists(graph, &[source]);
    let mut dist = Vec::with_capacity(n);
    for (v, d) in raw.into_iter().enumerate() {
        match d {
            Some(d) => dist.push(d),
            None => {
                return Err(Error::Disconnected {
                    origin: source,
                    vertex: v,
                })
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dist[a].cmp(&dist[b]).then(a.cmp(&b)));

    let mut tree = ShortestPathTree {
        source,
        parent: vec![None; n],
        dist,
        hops: vec![0; n],
        order,
    };
    // Every tight predecessor has a strictly smaller distance, hence is
    // already fixed when `v` is reached in distance order.
    for idx in 1..n {
        let v = tree.order[idx];
        let mut best: Option<usize> = None;
        for (p, len) in graph.neighbors(v) {
            if &tree.dist[p] + len != tree.dist[v] {
                continue;
            }
            best = Some(match best {
                None => p,
                Some(q) => {
                    let by_hops = tree.hops[p].cmp(&tree.hops[q]);
                    let ord = by_hops.then_with(|| tree.cmp_paths_same_depth(p, q));
                    if ord == Ordering::Less {
                        p
                    } else {
                        q
                    }
                }
            });
        }
        let p = best.expect("a tight predecessor exists for every reachable vertex");
        tree.parent[v] = Some(p);
        tree.hops[v] = tree.hops[p] + 1;
    }
    Ok(tree)
}

pub fn distance(graph: &Graph, u: usize, v: usize) -> Result<Rational> {
    graph.check_vertex(v)?;
    Ok(dijkstra(graph, u)?.dist(v).clone())
}

/// `{w : dist(v, w) <= r}` in increasing id order.
pub fn ball(graph: &Graph, v: usize, r: &Rational) -> Result<Vec<usize>> {
    if r.is_negative() {
        return Err(Error::NegativeRadius(r.to_string()));
    }
    let tree = dijkstra(graph, v)?;
    Ok((0..graph.vertex_count()).filter(|&w| tree.dist(w) <= r).collect())
}

/// The path realized by the canonical tree of `u`.
pub fn canonical_path(graph: &Graph, u: usize, v: usize) -> Result<Vec<usize>> {
    graph.check_vertex(v)?;
    Ok(dijkstra(graph, u)?.path_to(v))
}

/// Largest distance from `v` to a vertex in its subtree of `spt`.
pub fn subtree_eccentricity(spt: &ShortestPathTree, v: usize) -> Rational {
    spt.subtree_eccentricities().swap_remove(v)
}

/// Distance from every vertex to its nearest member of `sources`.
pub fn multi_source_distances(graph: &Graph, sources: &[usize]) -> Result<Vec<Rational>> {
    for &s in sources {
        graph.check_vertex(s)?;
    }
    let first = *sources.first().ok_or(Error::EmptyCenterSet)?;
    dijkstra_dists(graph, sources)
        .into_iter()
        .enumerate()
        .map(|(v, d)| {
            d.ok_or(Error::Disconnected {
                origin: first,
                vertex: v,
            })
        })
        .collect()
}

/// Length of a vertex sequence, which must follow graph edges.
pub fn path_length(graph: &Graph, path: &[usize]) -> Result<Rational> {
    let mut total = Rational::zero();
    for w in path.windows(2) {
        let e = graph
            .edge_between(w[0], w[1])
            .ok_or_else(|| Error::InvalidGraph(format!("no edge between {} and {}", w[0], w[1])))?;
        total += &graph.edge(e).len;
    }
    Ok(total)
}

/// Canonical trees of every source.
#[derive(Clone, Debug)]
pub struct AllPairs {
    trees: Vec<ShortestPathTree>,
}

impl AllPairs {
    pub fn compute(graph: &Graph, exec: Exec) -> Result<AllPairs> {
        let trees = exec.try_map(graph.vertex_count(), |s| dijkstra(graph, s))?;
        Ok(AllPairs { trees })
    }

    pub fn dist(&self, u: usize, v: usize) -> &Rational {
        self.trees[u].dist(v)
    }

    pub fn tree(&self, s: usize) -> &ShortestPathTree {
        &self.trees[s]
    }

    pub fn trees(&self) -> &[ShortestPathTree] {
        &self.trees
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.len()
    }

    /// Sorted distinct pairwise distances (zero included).
    pub fn distinct_distances(&self) -> Vec<Rational> {
        let mut all: Vec<Rational> = self
            .trees
            .iter()
            .enumerate()
            .flat_map(|(u, t)| t.dists()[u..].iter().cloned())
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn diameter(&self) -> Rational {
        self.trees
            .iter()
            .flat_map(|t| t.dists().iter())
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}
