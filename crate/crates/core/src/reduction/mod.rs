//! Construction of the k-Center instance `G_I` from a b-covered grid tiling
//! instance, plus the solution mappings in both directions.
//!
//! Each cell `(i, j)` becomes a gadget: a cycle through `z^1..z^4` whose four
//! quadrants have length `2^{n+2} + 1/n`, with pair vertices `v^h` and
//! sentinels `psi^h`, `psi'^h` inserted at exact offsets; a hub `y` joined to
//! every `z^h`; anchors `x^1..x^4`; and portal paths `U^1`, `U^3`. Anchors of
//! neighbouring gadgets are joined by the connectors `P` (vertical) and `P'`
//! (horizontal).

mod label;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphDocument};
use crate::gridtiling::{first_uncovered, GtInstance, GtSolution, Pair};
use crate::kcenter::CenterSet;
use crate::rational::Rational;

pub use label::{succ, VertexLabel};

/// `d_{(a,b)} = 2^b - 1 + a/n`: offset of `v^h_{(a,b)}` from `z^h`.
pub fn cycle_offset(a: u32, b: u32, n: u32) -> Rational {
    Rational::pow2(b) - Rational::one() + Rational::new(a.into(), n.into())
}

/// Closed form of `dist(x^h, v^h_{(a,b)})`.
pub fn anchor_distance(h: u8, a: u32, b: u32, n: u32) -> Rational {
    let frac = Rational::new(a.into(), n.into());
    match h {
        1 => Rational::pow2(n + 1) - frac,
        2 => Rational::pow2(n) + Rational::pow2(b) + frac,
        3 => Rational::pow2(n + 1) - Rational::one() + frac,
        4 => Rational::pow2(n + 1) + Rational::one() - Rational::pow2(b) - frac,
        _ => panic!("quadrant index {h} outside 1..=4"),
    }
}

/// Total length of one quadrant `O^h`.
pub fn quadrant_length(n: u32) -> Rational {
    Rational::pow2(n + 2) + Rational::new(1, n.into())
}

/// The `b`-portal pair: largest `a` for `h = 1` (furthest from `z^1`),
/// smallest `a` for `h = 3` (closest to `z^3`).
pub fn portal_pair(inst: &GtInstance, i: usize, j: usize, h: u8, b: u32) -> Result<Pair> {
    let cell = inst.cell(i, j);
    let mut with_b = cell.iter().filter(|p| p.b == b);
    let found = match h {
        1 => with_b.next_back(),
        3 => with_b.next(),
        _ => {
            return Err(Error::InvalidInstance(format!(
                "portals exist only for quadrants 1 and 3, not {h}"
            )))
        }
    };
    found.copied().ok_or(Error::MissingBCoverage { i, j, b })
}

/// Pair with the smallest cycle offset (order by `b`, then `a`).
fn min_offset_pair(pairs: &[Pair]) -> Pair {
    *pairs.iter().min_by_key(|p| (p.b, p.a)).expect("non-empty cell")
}

fn max_offset_pair(pairs: &[Pair]) -> Pair {
    *pairs.iter().max_by_key(|p| (p.b, p.a)).expect("non-empty cell")
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub i: usize,
    pub j: usize,
    /// `S_{i,j}` in lexical order.
    pub pairs: Vec<Pair>,
    pub y: usize,
    pub z: [usize; 4],
    pub x: [usize; 4],
    /// `O^h` from `z^h` to `z^{h⊞1}`, both ends included.
    pub quadrants: [Vec<usize>; 4],
    pub v: [BTreeMap<Pair, usize>; 4],
    pub psi: [BTreeMap<Pair, usize>; 4],
    pub psi_prime: [BTreeMap<Pair, usize>; 4],
    /// `u^1_1..u^1_n` and `u^3_1..u^3_n`.
    pub u: [Vec<usize>; 2],
    /// Portal pair for each `b` in `[n]`, for `h = 1` and `h = 3`.
    pub portals: [Vec<Pair>; 2],
    /// Pairs whose `v^2` and `v^4` carry the `x^2` and `x^4` edges.
    pub x2_pair: Pair,
    pub x4_pair: Pair,
}

fn portal_slot(h: u8) -> usize {
    match h {
        1 => 0,
        3 => 1,
        _ => panic!("portal paths exist only for quadrants 1 and 3"),
    }
}

impl Gadget {
    pub fn v(&self, h: u8, p: Pair) -> usize {
        self.v[h as usize - 1][&p]
    }

    pub fn psi(&self, h: u8, p: Pair, primed: bool) -> usize {
        let map = if primed { &self.psi_prime } else { &self.psi };
        map[h as usize - 1][&p]
    }

    pub fn u(&self, h: u8, b: u32) -> usize {
        self.u[portal_slot(h)][b as usize - 1]
    }

    pub fn portal(&self, h: u8, b: u32) -> Pair {
        self.portals[portal_slot(h)][b as usize - 1]
    }

    pub fn z(&self, h: u8) -> usize {
        self.z[h as usize - 1]
    }

    pub fn x(&self, h: u8) -> usize {
        self.x[h as usize - 1]
    }

    /// The cycle `O_{i,j}` starting at `z^1`, without repeating it.
    pub fn cycle(&self) -> Vec<usize> {
        self.quadrants
            .iter()
            .flat_map(|q| q[..q.len() - 1].iter().copied())
            .collect()
    }

    /// `u^h_1 .. u^h_n, x^h`.
    pub fn u_path(&self, h: u8) -> Vec<usize> {
        let mut p = self.u[portal_slot(h)].clone();
        p.push(self.x(h));
        p
    }

    /// Every vertex of the gadget.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.y];
        out.extend(self.x);
        out.extend(self.cycle());
        out.extend(self.u.iter().flatten());
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectorKind {
    /// `P_{i,j}` from `x^3_{i,j}` to `x^1_{i+1,j}`.
    Vertical,
    /// `P'_{i,j}` from `x^2_{i,j}` (= `w_n`) to `x^4_{i,j+1}` (= `w_1`).
    Horizontal,
}

#[derive(Clone, Debug)]
pub struct Connector {
    pub kind: ConnectorKind,
    pub i: usize,
    pub j: usize,
    /// Full path including both anchors.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub chi: usize,
    pub n: u32,
    /// `5 chi^2`.
    pub k: usize,
    /// `2^{n+1}`.
    pub threshold: Rational,
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, usize>,
    /// Row-major.
    pub gadgets: Vec<Gadget>,
    pub connectors: Vec<Connector>,
}

impl ReducedInstance {
    pub fn gadget(&self, i: usize, j: usize) -> &Gadget {
        &self.gadgets[(i - 1) * self.chi + (j - 1)]
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    /// Resolve a label (atomic or merged) to its vertex.
    pub fn vertex(&self, label: &VertexLabel) -> Result<usize> {
        let first = &label.parts()[0];
        self.index
            .get(first)
            .copied()
            .filter(|&v| label.parts().iter().all(|p| self.index.get(p) == Some(&v)))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<usize> {
        self.vertex(&name.parse()?)
    }

    pub fn render(&self, v: usize) -> String {
        self.labels[v].to_string()
    }

    /// Same labels and structure over a different graph on the same vertex
    /// set; used for fault injection.
    pub fn with_graph(&self, graph: Graph) -> Result<ReducedInstance> {
        if graph.vertex_count() != self.graph.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "replacement graph has {} vertices, expected {}",
                graph.vertex_count(),
                self.graph.vertex_count()
            )));
        }
        let mut out = self.clone();
        out.graph = graph;
        Ok(out)
    }

    pub fn to_document(&self) -> GraphDocument {
        self.graph.to_document(|v| self.render(v))
    }

    /// DOT with one cluster per gadget; connector vertices stay outside.
    pub fn to_dot(&self) -> String {
        self.graph.to_dot(
            |v| self.render(v),
            |v| {
                let l = &self.labels[v];
                (!l.is_connector()).then(|| {
                    let (i, j) = l.cell();
                    format!("G_{i}_{j}")
                })
            },
        )
    }
}

struct Builder {
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, usize>,
    edges: Vec<Edge>,
}

impl Builder {
    fn vertex(&mut self, label: VertexLabel) -> usize {
        let id = self.labels.len();
        for p in label.parts() {
            let prev = self.index.insert(p.clone(), id);
            debug_assert!(prev.is_none(), "label {p} allocated twice");
        }
        self.labels.push(label);
        id
    }

    fn edge(&mut self, u: usize, v: usize, len: Rational) {
        self.edges.push(Edge { u, v, len });
    }
}

/// Build `G_I`. The instance must be b-covered, and `n >= 2` whenever there
/// are horizontal connectors (for `n = 1`, `P'` would identify two anchors).
pub fn build(inst: &GtInstance) -> Result<ReducedInstance> {
    let (chi, n) = (inst.chi(), inst.n());
    if let Some((i, j, b)) = first_uncovered(inst) {
        return Err(Error::MissingBCoverage { i, j, b });
    }
    if chi >= 2 && n < 2 {
        return Err(Error::InvalidInstance(
            "horizontal connectors need n >= 2; augment the instance first".into(),
        ));
    }
    let mut bld = Builder {
        labels: Vec::new(),
        index: HashMap::new(),
        edges: Vec::new(),
    };
    let mut gadgets = Vec::with_capacity(chi * chi);
    for ((i, j), set) in inst.cells() {
        let pairs: Vec<Pair> = set.iter().copied().collect();
        gadgets.push(build_gadget(&mut bld, inst, i, j, pairs)?);
    }

    let mut connectors = Vec::new();
    let step = Rational::new(1, i64::from(n) + 1);
    for i in 1..chi {
        for j in 1..=chi {
            let mut path = vec![gadgets[(i - 1) * chi + (j - 1)].x[2]];
            for idx in 1..=n {
                path.push(bld.vertex(VertexLabel::P { i, j, idx }));
            }
            path.push(gadgets[i * chi + (j - 1)].x[0]);
            for w in path.windows(2) {
                bld.edge(w[0], w[1], step.clone());
            }
            connectors.push(Connector {
                kind: ConnectorKind::Vertical,
                i,
                j,
                path,
            });
        }
    }
    for i in 1..=chi {
        for j in 1..chi {
            // w_1 = x^4_{i,j+1}, w_n = x^2_{i,j}; {w_{l+1}, w_l} has length 2^l.
            let mut w = vec![gadgets[(i - 1) * chi + j].x[3]];
            for idx in 2..n {
                w.push(bld.vertex(VertexLabel::PP { i, j, idx }));
            }
            w.push(gadgets[(i - 1) * chi + (j - 1)].x[1]);
            for l in 1..n {
                let (a, b) = (w[l as usize - 1], w[l as usize]);
                bld.edge(b, a, Rational::pow2(l));
            }
            w.reverse();
            connectors.push(Connector {
                kind: ConnectorKind::Horizontal,
                i,
                j,
                path: w,
            });
        }
    }

    let graph = Graph::new(bld.labels.len(), bld.edges)?;
    Ok(ReducedInstance {
        graph,
        chi,
        n,
        k: 5 * chi * chi,
        threshold: Rational::pow2(n + 1),
        labels: bld.labels,
        index: bld.index,
        gadgets,
        connectors,
    })
}

fn build_gadget(bld: &mut Builder, inst: &GtInstance, i: usize, j: usize, pairs: Vec<Pair>) -> Result<Gadget> {
    let n = inst.n();
    let nr = i64::from(n);
    let y = bld.vertex(VertexLabel::Y { i, j });
    let z: [usize; 4] = std::array::from_fn(|k| bld.vertex(VertexLabel::Z { i, j, h: k as u8 + 1 }));
    let x: [usize; 4] = std::array::from_fn(|k| bld.vertex(VertexLabel::X { i, j, h: k as u8 + 1 }));
    let spoke = Rational::pow2(n + 1) + Rational::one();
    for &zh in &z {
        bld.edge(y, zh, spoke.clone());
    }

    let big_l = quadrant_length(n);
    let psi_gap = Rational::pow2(n + 1);
    let tick = Rational::new(1, nr);
    let mut quadrants: [Vec<usize>; 4] = Default::default();
    let mut v: [BTreeMap<Pair, usize>; 4] = Default::default();
    let mut psi: [BTreeMap<Pair, usize>; 4] = Default::default();
    let mut psi_prime: [BTreeMap<Pair, usize>; 4] = Default::default();
    for h in 1..=4u8 {
        let mut points: BTreeMap<Rational, Vec<VertexLabel>> = BTreeMap::new();
        for &pair in &pairs {
            let d = cycle_offset(pair.a, pair.b, n);
            let s = &d + &psi_gap;
            let s2 = &s + &tick;
            points.entry(d).or_default().push(VertexLabel::V { i, j, h, pair });
            points.entry(s).or_default().push(VertexLabel::Psi {
                i,
                j,
                h,
                pair,
                primed: false,
            });
            points.entry(s2).or_default().push(VertexLabel::Psi {
                i,
                j,
                h,
                pair,
                primed: true,
            });
        }
        let mut chain = vec![z[h as usize - 1]];
        let mut prev_off = Rational::zero();
        for (off, mut labs) in points {
            if !off.is_positive() || off >= big_l {
                return Err(Error::OffsetCollision {
                    i,
                    j,
                    h,
                    detail: format!("offset {off} outside the open quadrant (0, {big_l})"),
                });
            }
            if labs.len() > 1 && labs.iter().any(|l| matches!(l, VertexLabel::V { .. })) {
                let names: Vec<String> = labs.iter().map(ToString::to_string).collect();
                return Err(Error::OffsetCollision {
                    i,
                    j,
                    h,
                    detail: format!("{} share offset {off}", names.join(", ")),
                });
            }
            let label = if labs.len() == 1 {
                labs.pop().expect("one label")
            } else {
                VertexLabel::Merged(labs)
            };
            let id = bld.vertex(label.clone());
            for part in label.parts() {
                match part {
                    VertexLabel::V { pair, .. } => {
                        v[h as usize - 1].insert(*pair, id);
                    }
                    VertexLabel::Psi {
                        pair, primed: false, ..
                    } => {
                        psi[h as usize - 1].insert(*pair, id);
                    }
                    VertexLabel::Psi { pair, primed: true, .. } => {
                        psi_prime[h as usize - 1].insert(*pair, id);
                    }
                    _ => unreachable!("only pair points live on quadrants"),
                }
            }
            bld.edge(*chain.last().expect("starts at z"), id, &off - &prev_off);
            chain.push(id);
            prev_off = off;
        }
        let next_z = z[succ(h) as usize - 1];
        bld.edge(*chain.last().expect("starts at z"), next_z, &big_l - &prev_off);
        chain.push(next_z);
        quadrants[h as usize - 1] = chain;
    }

    let mut u: [Vec<usize>; 2] = Default::default();
    let mut portals: [Vec<Pair>; 2] = Default::default();
    for (slot, h) in [(0usize, 1u8), (1, 3)] {
        let path: Vec<usize> = (1..=n).map(|b| bld.vertex(VertexLabel::U { i, j, h, b })).collect();
        for l in 1..n {
            bld.edge(path[l as usize - 1], path[l as usize], Rational::pow2(l));
        }
        bld.edge(path[n as usize - 1], x[h as usize - 1], Rational::pow2(n));
        for b in 1..=n {
            let p = portal_pair(inst, i, j, h, b)?;
            let frac = Rational::new(p.a.into(), nr);
            let len = if h == 1 {
                Rational::pow2(b) - frac
            } else {
                Rational::pow2(b) - Rational::one() + frac
            };
            bld.edge(v[h as usize - 1][&p], path[b as usize - 1], len);
            portals[slot].push(p);
        }
        u[slot] = path;
    }

    let x2_pair = min_offset_pair(&pairs);
    let x4_pair = max_offset_pair(&pairs);
    let frac2 = Rational::new(x2_pair.a.into(), nr);
    let frac4 = Rational::new(x4_pair.a.into(), nr);
    bld.edge(
        x[1],
        v[1][&x2_pair],
        Rational::pow2(n) + Rational::pow2(x2_pair.b) + frac2,
    );
    bld.edge(
        x[3],
        v[3][&x4_pair],
        Rational::pow2(n + 1) + Rational::one() - Rational::pow2(x4_pair.b) - frac4,
    );

    Ok(Gadget {
        i,
        j,
        pairs,
        y,
        z,
        x,
        quadrants,
        v,
        psi,
        psi_prime,
        u,
        portals,
        x2_pair,
        x4_pair,
    })
}

/// Every hub `y` plus `v^1..v^4` of each chosen pair.
pub fn solution_to_centers(reduced: &ReducedInstance, sol: &GtSolution) -> Result<CenterSet> {
    if sol.chi() != reduced.chi || sol.pairs().len() != reduced.chi * reduced.chi {
        return Err(Error::ShapeMismatch {
            chi: reduced.chi,
            got: (sol.chi(), sol.pairs().len()),
        });
    }
    let mut centers = Vec::with_capacity(reduced.k);
    for g in &reduced.gadgets {
        let s = sol.get(g.i, g.j);
        if !g.v[0].contains_key(&s) {
            return Err(Error::InvalidInstance(format!(
                "pair {s} is not in S_{{{},{}}}",
                g.i, g.j
            )));
        }
        centers.push(g.y);
        for h in 1..=4 {
            centers.push(g.v(h, s));
        }
    }
    CenterSet::new(&reduced.graph, centers)
}

/// Read `s_{i,j}` from the unique `v^1` center in each gadget.
pub fn extract_solution(reduced: &ReducedInstance, centers: &[usize]) -> Result<GtSolution> {
    let mut chosen = Vec::with_capacity(reduced.gadgets.len());
    for g in &reduced.gadgets {
        let hits: Vec<Pair> = g.v[0]
            .iter()
            .filter(|(_, id)| centers.contains(id))
            .map(|(p, _)| *p)
            .collect();
        match hits.as_slice() {
            [p] => chosen.push(*p),
            [] => {
                return Err(Error::CenterStructure {
                    i: g.i,
                    j: g.j,
                    detail: "no v^1 vertex among the centers".into(),
                })
            }
            many => {
                let names: Vec<String> = many.iter().map(ToString::to_string).collect();
                return Err(Error::CenterStructure {
                    i: g.i,
                    j: g.j,
                    detail: format!("several v^1 centers: {}", names.join(", ")),
                });
            }
        }
    }
    Ok(GtSolution::new(reduced.chi, chosen))
}
