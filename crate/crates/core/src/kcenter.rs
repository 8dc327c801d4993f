//! k-Center on exact-rational graphs: covering radius, exact decision and
//! optimization, and the farthest-point 2-approximation.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting::{HittingProblem, NodeBudget};
use crate::par::Exec;
use crate::paths::{dijkstra, multi_source_distances, AllPairs};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSet {
    /// Sorted, distinct vertex ids.
    pub centers: Vec<usize>,
    pub cost: Rational,
}

/// Serialized form: labels of the centers plus the exact cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSetFile {
    pub centers: Vec<String>,
    pub cost: Rational,
}

impl CenterSet {
    pub fn new(graph: &Graph, centers: Vec<usize>) -> Result<CenterSet> {
        let mut centers = centers;
        centers.sort_unstable();
        centers.dedup();
        let cost = cost(graph, &centers)?;
        Ok(CenterSet { centers, cost })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn to_file<F: Fn(usize) -> String>(&self, label: F) -> CenterSetFile {
        CenterSetFile {
            centers: self.centers.iter().map(|&c| label(c)).collect(),
            cost: self.cost.clone(),
        }
    }
}

/// Covering radius: `max_v min_{c in C} dist(v, c)`.
pub fn cost(graph: &Graph, centers: &[usize]) -> Result<Rational> {
    if centers.is_empty() {
        return Err(Error::EmptyCenterSet);
    }
    let d = multi_source_distances(graph, centers)?;
    Ok(d.into_iter().max().expect("graph has a vertex"))
}

fn balls(apsp: &AllPairs, r: &Rational) -> Vec<FixedBitSet> {
    let n = apsp.vertex_count();
    (0..n)
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(n);
            for u in 0..n {
                if apsp.dist(v, u) <= r {
                    b.insert(u);
                }
            }
            b
        })
        .collect()
}

/// Is there a set of at most `k` centers with cost at most `r`?
pub fn decide(graph: &Graph, k: usize, r: &Rational, budget: NodeBudget) -> Result<Option<CenterSet>> {
    let apsp = AllPairs::compute(graph, Exec::default())?;
    decide_with(graph, &apsp, k, r, budget)
}

/// [`decide`] reusing precomputed distances.
pub fn decide_with(
    graph: &Graph,
    apsp: &AllPairs,
    k: usize,
    r: &Rational,
    budget: NodeBudget,
) -> Result<Option<CenterSet>> {
    if r.is_negative() {
        return Err(Error::NegativeRadius(r.to_string()));
    }
    if k == 0 {
        return Ok(None);
    }
    let problem = HittingProblem::new(graph.vertex_count(), balls(apsp, r));
    match problem.decide(k, budget)? {
        Some(centers) => Ok(Some(CenterSet::new(graph, centers)?)),
        None => Ok(None),
    }
}

/// An optimal solution with at most `k` centers.
///
/// The optimum is a pairwise distance; binary search over those between the
/// 2-approximation's cost halved and its cost.
pub fn solve_exact(graph: &Graph, k: usize, budget: NodeBudget) -> Result<CenterSet> {
    let apsp = AllPairs::compute(graph, Exec::default())?;
    solve_exact_with(graph, &apsp, k, budget)
}

pub fn solve_exact_with(graph: &Graph, apsp: &AllPairs, k: usize, budget: NodeBudget) -> Result<CenterSet> {
    let upper = approx2(graph, k)?;
    let half = &upper.cost / &Rational::integer(2);
    let radii: Vec<Rational> = apsp
        .distinct_distances()
        .into_iter()
        .filter(|d| *d >= half && *d < upper.cost)
        .collect();
    let (mut lo, mut hi) = (0, radii.len());
    let mut best = upper;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match decide_with(graph, apsp, k, &radii[mid], budget)? {
            Some(c) => {
                best = c;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok(best)
}

/// Farthest-point traversal from vertex 0; ties go to the lowest id.
pub fn approx2(graph: &Graph, k: usize) -> Result<CenterSet> {
    if k == 0 {
        return Err(Error::EmptyCenterSet);
    }
    if graph.vertex_count() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let mut centers = vec![0];
    let mut near: Vec<Rational> = dijkstra(graph, 0)?.dists().to_vec();
    while centers.len() < k {
        let (far, d) = near
            .iter()
            .enumerate()
            .fold((0, &near[0]), |best, (v, d)| if d > best.1 { (v, d) } else { best });
        if d.is_zero() {
            break;
        }
        centers.push(far);
        let t = dijkstra(graph, far)?;
        for (v, dv) in near.iter_mut().enumerate() {
            if t.dist(v) < dv {
                *dv = t.dist(v).clone();
            }
        }
    }
    let cost = near.into_iter().max().expect("non-empty");
    centers.sort_unstable();
    Ok(CenterSet { centers, cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_graph, star_graph};

    #[test]
    fn cost_basics() {
        let g = path_graph(3);
        assert_eq!(cost(&g, &[1]).unwrap(), Rational::integer(1));
        assert_eq!(cost(&g, &[0, 1, 2]).unwrap(), Rational::zero());
        assert!(matches!(cost(&g, &[]), Err(Error::EmptyCenterSet)));
    }

    #[test]
    fn star_hub_is_optimal() {
        let g = star_graph(4);
        let c = solve_exact(&g, 1, NodeBudget::unlimited()).unwrap();
        assert_eq!(c.cost, Rational::integer(1));
        assert_eq!(c.centers, vec![0]);
    }

    #[test]
    fn all_vertices_cost_zero() {
        let g = path_graph(5);
        assert!(solve_exact(&g, 5, NodeBudget::unlimited()).unwrap().cost.is_zero());
        assert!(approx2(&g, 5).unwrap().cost.is_zero());
    }

    #[test]
    fn decide_thresholds() {
        let g = path_graph(7);
        let one = Rational::integer(1);
        assert!(decide(&g, 2, &one, NodeBudget::unlimited()).unwrap().is_none());
        let c = decide(&g, 3, &one, NodeBudget::unlimited()).unwrap().unwrap();
        assert!(c.len() <= 3 && c.cost <= one);
        assert!(decide(&g, 1, &Rational::integer(3), NodeBudget::unlimited())
            .unwrap()
            .is_some());
    }

    #[test]
    fn approx_is_deterministic_and_within_factor_two() {
        let g = path_graph(9);
        let a = approx2(&g, 2).unwrap();
        assert_eq!(a, approx2(&g, 2).unwrap());
        let opt = solve_exact(&g, 2, NodeBudget::unlimited()).unwrap();
        assert!(a.cost <= &opt.cost * &Rational::integer(2));
        assert_eq!(opt.cost, Rational::integer(2));
    }
}
