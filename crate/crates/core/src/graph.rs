//! Immutable undirected graphs with exact positive edge lengths.
//!
//! Vertices are dense ids `0..n`. Labels are kept outside the graph (see
//! [`GraphDocument`] and the reduction's label table) so the algorithms only
//! ever see ids and lengths.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const GRAPH_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub len: Rational,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A point in the interior of an edge of the geometric realization, at
/// distance `offset` from the endpoint `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointOnEdge {
    pub edge: usize,
    pub from: usize,
    pub offset: Rational,
}

#[derive(Clone, Debug)]
pub struct Graph {
    edges: Vec<Edge>,
    /// Per vertex: `(neighbor, edge id)` sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
    pair_index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Validates positivity, absence of self-loops and of parallel edges.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Graph> {
        let mut adj = vec![Vec::new(); vertex_count];
        let mut pair_index = HashMap::with_capacity(edges.len());
        for (id, e) in edges.iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} ({}, {}) references a vertex outside 0..{vertex_count}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", e.u)));
            }
            if !e.len.is_positive() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive length {}",
                    e.u, e.v, e.len
                )));
            }
            if pair_index.insert(key(e.u, e.v), id).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge between {} and {}",
                    e.u, e.v
                )));
            }
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { edges, adj, pair_index })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing id order, with the connecting edge length.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.adj[v].iter().map(move |&(w, e)| (w, &self.edges[e].len))
    }

    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.pair_index.get(&key(u, v)).copied()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::NoSuchVertex(v))
        }
    }

    /// Copy of the graph with one edge length replaced.
    pub fn with_edge_length(&self, edge: usize, len: Rational) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges[edge].len = len;
        Graph::new(self.vertex_count(), edges)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Subgraph induced by `keep` (ids are renumbered in the order given).
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX)
            .map(|e| Edge {
                u: new_id[e.u],
                v: new_id[e.v],
                len: e.len.clone(),
            })
            .collect();
        Ok((Graph::new(keep.len(), edges)?, keep.to_vec()))
    }

    pub fn to_document<F>(&self, label: F) -> GraphDocument
    where
        F: Fn(usize) -> String,
    {
        GraphDocument {
            version: GRAPH_FORMAT_VERSION,
            vertices: (0..self.vertex_count())
                .map(|id| VertexRecord { id, label: label(id) })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    u: e.u,
                    v: e.v,
                    len: e.len.clone(),
                })
                .collect(),
        }
    }

    /// Graphviz rendering with lengths as edge labels. `cluster` optionally
    /// assigns vertices to named clusters.
    pub fn to_dot<F, C>(&self, label: F, cluster: C) -> String
    where
        F: Fn(usize) -> String,
        C: Fn(usize) -> Option<String>,
    {
        let mut out = String::from("graph G {\n  node [shape=circle, fontsize=9];\n");
        let mut clusters: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut loose = Vec::new();
        for v in 0..self.vertex_count() {
            match cluster(v) {
                Some(c) => clusters.entry(c).or_default().push(v),
                None => loose.push(v),
            }
        }
        for (name, members) in &clusters {
            let ident: String = name
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
                .collect();
            let _ = writeln!(out, "  subgraph cluster_{ident} {{");
            let _ = writeln!(out, "    label=\"{}\";", escape(name));
            for &v in members {
                let _ = writeln!(out, "    n{v} [label=\"{}\"];", escape(&label(v)));
            }
            out.push_str("  }\n");
        }
        for v in loose {
            let _ = writeln!(out, "  n{v} [label=\"{}\"];", escape(&label(v)));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.u, e.v, e.len);
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub len: Rational,
}

/// Serialized graph: `{version, vertices: [{id, label}], edges: [{u, v, len: "p/q"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub version: u32,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphDocument {
    /// Rebuild the graph and its label table. Vertex ids must be exactly `0..n`.
    pub fn into_graph(self) -> Result<(Graph, Vec<String>)> {
        if self.version != GRAPH_FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported graph format version {}",
                self.version
            )));
        }
        let n = self.vertices.len();
        let mut labels = vec![None; n];
        for rec in self.vertices {
            if rec.id >= n || labels[rec.id].is_some() {
                return Err(Error::Parse(format!("bad or duplicate vertex id {}", rec.id)));
            }
            labels[rec.id] = Some(rec.label);
        }
        let labels: Vec<String> = labels.into_iter().map(Option::unwrap).collect();
        let edges = self
            .edges
            .into_iter()
            .map(|e| Edge {
                u: e.u,
                v: e.v,
                len: e.len,
            })
            .collect();
        Ok((Graph::new(n, edges)?, labels))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<GraphDocument> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Small helper for tests and generators: build from `(u, v, len)` triples.
pub fn graph_from_triples(n: usize, triples: &[(usize, usize, Rational)]) -> Result<Graph> {
    Graph::new(
        n,
        triples
            .iter()
            .map(|(u, v, len)| Edge {
                u: *u,
                v: *v,
                len: len.clone(),
            })
            .collect(),
    )
}

/// Unit-length path `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Graph {
    let triples: Vec<_> = (1..n).map(|i| (i - 1, i, Rational::one())).collect();
    graph_from_triples(n, &triples).expect("path graph is valid")
}

/// Unit-length cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    let triples: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, Rational::one())).collect();
    graph_from_triples(n, &triples).expect("cycle graph is valid")
}

/// Star with hub `0` and `rays` unit-length rays.
pub fn star_graph(rays: usize) -> Graph {
    let triples: Vec<_> = (1..=rays).map(|i| (0, i, Rational::one())).collect();
    graph_from_triples(rays + 1, &triples).expect("star graph is valid")
}
