//! Brute-force oracles and random graph generators shared by the
//! integration tests. Everything here is written against the definitions
//! directly and avoids the library's algorithms where possible.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use gtkc_core::graph::{graph_from_triples, Graph};
use gtkc_core::paths::ShortestPathTree;
use gtkc_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Connected graph: a random spanning tree plus `extra` random edges, with
/// lengths `p/q`, `p` in `1..=max_len`, `q` in `1..=max_den`.
pub fn random_graph(n: usize, extra: usize, max_len: i64, max_den: i64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut triples = Vec::new();
    let len = |rng: &mut ChaCha8Rng| Rational::new(rng.random_range(1..=max_len), rng.random_range(1..=max_den));
    for v in 1..n {
        let u = rng.random_range(0..v);
        seen.insert((u, v));
        triples.push((u, v, len(&mut rng)));
    }
    let mut tries = 0;
    while triples.len() < n - 1 + extra && tries < 10 * (extra + 1) {
        tries += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a != b && seen.insert((a, b)) {
            triples.push((a, b, len(&mut rng)));
        }
    }
    graph_from_triples(n, &triples).expect("valid random graph")
}

/// Floyd-Warshall distance matrix.
pub fn floyd(g: &Graph) -> Vec<Vec<Option<Rational>>> {
    let n = g.vertex_count();
    let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(Rational::zero());
    }
    for e in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if d[a][b].as_ref().is_none_or(|x| e.len < *x) {
                d[a][b] = Some(e.len.clone());
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (&d[i][k], &d[k][j]) {
                    let s = a + b;
                    if d[i][j].as_ref().is_none_or(|x| s < *x) {
                        d[i][j] = Some(s);
                    }
                }
            }
        }
    }
    d
}

pub fn dist_matrix(g: &Graph) -> Vec<Vec<Rational>> {
    floyd(g)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.expect("connected")).collect())
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Optimal k-Center cost by enumerating every center set of size `min(k, n)`.
pub fn kcenter_bruteforce(g: &Graph, k: usize) -> Rational {
    let d = dist_matrix(g);
    let n = g.vertex_count();
    subsets(n, k.min(n))
        .into_iter()
        .map(|c| {
            (0..n)
                .map(|v| c.iter().map(|&x| d[v][x].clone()).min().unwrap())
                .max()
                .unwrap()
        })
        .min()
        .unwrap()
}

/// Number of skeleton points at distance exactly `r` from the tree's
/// source, straight from the definition: a point `p` at distance `r`
/// belongs to the skeleton iff some vertex `w` below it has
/// `r <= 2 (dist(w) - r)`.
pub fn sampled_cut(tree: &ShortestPathTree, r: &Rational) -> usize {
    let n = tree.vertex_count();
    let two = Rational::integer(2);
    let below = |p: usize| (0..n).filter(move |&w| tree.is_ancestor(p, w));
    let ok = |p: usize| below(p).any(|w| *r <= &two * &(tree.dist(w) - r));
    let at_vertices = (0..n).filter(|&v| tree.dist(v) == r && ok(v)).count();
    let on_edges = (0..n)
        .filter(|&c| {
            tree.parent(c)
                .is_some_and(|u| tree.dist(u) < r && r < tree.dist(c) && ok(c))
        })
        .count();
    at_vertices + on_edges
}

/// Radii sampled at one third of the grid `1 / (3 D)`, `D` the common
/// denominator of all distances in the tree; every breakpoint of the cut
/// function is a multiple of `1 / (3 D)`.
pub fn skeleton_sample_radii(tree: &ShortestPathTree) -> Vec<Rational> {
    let den = Rational::common_denominator(tree.dists().iter());
    let step = Rational::from_big(1.into(), den * 9);
    let max = tree.dists().iter().max().unwrap().clone() + Rational::one();
    let mut out = Vec::new();
    let mut r = Rational::zero();
    while r <= max {
        out.push(r.clone());
        r = &r + &step;
    }
    out
}

/// Integer-weighted graph in which every pair has a unique shortest path.
pub fn unique_path_graph(n: usize, extra: usize, seed: u64) -> Graph {
    (0..)
        .map(|i| random_graph(n, extra, 20, 1, seed * 1000 + i))
        .find(|g| shortest_path_counts(g).iter().flatten().all(|&c| c == 1))
        .unwrap()
}

pub fn shortest_path_counts(g: &Graph) -> Vec<Vec<u64>> {
    let d = dist_matrix(g);
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| d[s][a].cmp(&d[s][b]));
            let mut count = vec![0u64; n];
            count[s] = 1;
            for &v in &order[1..] {
                count[v] = g
                    .neighbors(v)
                    .filter(|(u, len)| (&d[s][*u] + *len) == d[s][v])
                    .map(|(u, _)| count[u])
                    .sum();
            }
            count
        })
        .collect()
}

/// The unique shortest path between `a` and `b` (requires uniqueness).
pub fn unique_path(g: &Graph, d: &[Vec<Rational>], a: usize, b: usize) -> Vec<usize> {
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = g
            .neighbors(cur)
            .find(|(u, len)| (&d[a][*u] + *len) == d[a][cur])
            .map(|(u, _)| u)
            .unwrap();
        path.push(cur);
    }
    path.reverse();
    path
}

/// Highway dimension from the definition on a graph with unique shortest
/// paths: every radius on a `1/8` grid (all breakpoints `D` and `D/4` are
/// multiples of `1/4` for integer lengths), every center, and the smallest
/// hitting set found by enumerating vertex subsets by size.
pub fn highway_bruteforce(g: &Graph) -> usize {
    let n = g.vertex_count();
    let d = dist_matrix(g);
    let mut paths = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            paths.push((d[a][b].clone(), unique_path(g, &d, a, b)));
        }
    }
    let max = d.iter().flatten().max().unwrap().clone();
    let step = Rational::new(1, 8);
    let four = Rational::integer(4);
    let mut memo: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut best = 0;
    let mut r = step.clone();
    while r <= &max + &Rational::one() {
        for v in 0..n {
            let family: Vec<usize> = paths
                .iter()
                .enumerate()
                .filter(|(_, (len, p))| *len > r && p.iter().all(|&w| d[v][w] <= &four * &r))
                .map(|(i, _)| i)
                .collect();
            if family.is_empty() {
                continue;
            }
            let size = *memo.entry(family.clone()).or_insert_with(|| {
                (1..=n)
                    .find(|&k| {
                        subsets(n, k)
                            .iter()
                            .any(|s| family.iter().all(|&i| paths[i].1.iter().any(|w| s.contains(w))))
                    })
                    .unwrap()
            });
            best = best.max(size);
        }
        r = &r + &step;
    }
    best
}

/// Vertex separation number by trying every vertex order.
pub fn vertex_separation_bruteforce(g: &Graph) -> usize {
    fn permute(order: &mut Vec<usize>, k: usize, g: &Graph, best: &mut usize) {
        let n = order.len();
        if k == n {
            let mut worst = 0;
            for i in 1..=n {
                let prefix = &order[..i];
                let boundary = prefix
                    .iter()
                    .filter(|&&v| g.neighbors(v).any(|(w, _)| !prefix.contains(&w)))
                    .count();
                worst = worst.max(boundary);
            }
            *best = (*best).min(worst);
            return;
        }
        for i in k..n {
            order.swap(k, i);
            permute(order, k + 1, g, best);
            order.swap(k, i);
        }
    }
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, g, &mut best);
    best
}
