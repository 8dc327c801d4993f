//! Exact hitting sets by branch and bound.
//!
//! A problem is a list of requirements over a universe of elements; each
//! requirement is the set of elements that satisfy it. A k-Center decision
//! is one instance (requirement = vertex, elements = centers within `r`), so
//! are the per-ball problems of the highway dimension and ball covers.
//!
//! Search: branch on the unsatisfied requirement with the fewest elements,
//! skip elements whose remaining coverage is dominated by a sibling's, and
//! prune with the size of a greedy packing of pairwise disjoint requirements.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Upper bound on search nodes; `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NodeBudget(pub Option<usize>);

impl NodeBudget {
    pub fn unlimited() -> Self {
        NodeBudget(None)
    }

    pub fn limit(n: usize) -> Self {
        NodeBudget(Some(n))
    }
}

const FAIL_CACHE_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct HittingProblem {
    universe: usize,
    /// requirement -> elements satisfying it
    sets: Vec<FixedBitSet>,
    /// element -> requirements it satisfies
    covers: Vec<FixedBitSet>,
    /// requirements sorted by set size, ties by index
    by_size: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
}

impl HittingProblem {
    pub fn new(universe: usize, sets: Vec<FixedBitSet>) -> HittingProblem {
        let mut sets = sets;
        for s in &mut sets {
            s.grow(universe);
        }
        let sets = drop_supersets(sets);
        let mut covers = vec![FixedBitSet::with_capacity(sets.len()); universe];
        for (r, s) in sets.iter().enumerate() {
            for e in s.ones() {
                covers[e].insert(r);
            }
        }
        let mut by_size: Vec<usize> = (0..sets.len()).collect();
        by_size.sort_by_key(|&r| (sets[r].count_ones(..), r));
        HittingProblem {
            universe,
            sets,
            covers,
            by_size,
        }
    }

    pub fn from_lists(universe: usize, lists: &[Vec<usize>]) -> HittingProblem {
        let sets = lists
            .iter()
            .map(|l| {
                let mut b = FixedBitSet::with_capacity(universe);
                for &e in l {
                    b.insert(e);
                }
                b
            })
            .collect();
        HittingProblem::new(universe, sets)
    }

    pub fn requirement_count(&self) -> usize {
        self.sets.len()
    }

    pub fn is_infeasible(&self) -> bool {
        self.sets.iter().any(|s| s.is_clear())
    }

    /// A hitting set with at most `k` elements, if one exists.
    pub fn decide(&self, k: usize, budget: NodeBudget) -> Result<Option<Vec<usize>>> {
        self.decide_with_stats(k, budget).map(|(r, _)| r)
    }

    pub fn decide_with_stats(&self, k: usize, budget: NodeBudget) -> Result<(Option<Vec<usize>>, SearchStats)> {
        if self.is_infeasible() {
            return Ok((None, SearchStats::default()));
        }
        let mut search = Search {
            problem: self,
            budget,
            nodes: 0,
            failed: HashMap::new(),
            chosen: Vec::new(),
        };
        let mut uncovered = FixedBitSet::with_capacity(self.sets.len());
        uncovered.insert_range(..);
        let found = search.run(&uncovered, k)?;
        let stats = SearchStats { nodes: search.nodes };
        Ok((
            found.then(|| {
                let mut c = search.chosen.clone();
                c.sort_unstable();
                c
            }),
            stats,
        ))
    }

    /// A minimum hitting set (`None` if some requirement is empty).
    pub fn minimum(&self, budget: NodeBudget) -> Result<Option<Vec<usize>>> {
        if self.is_infeasible() {
            return Ok(None);
        }
        let mut all = FixedBitSet::with_capacity(self.sets.len());
        all.insert_range(..);
        let greedy = self.greedy(&all);
        let mut k = self.packing_bound(&all);
        while k < greedy.len() {
            if let Some(sol) = self.decide(k, budget)? {
                return Ok(Some(sol));
            }
            k += 1;
        }
        let mut g = greedy;
        g.sort_unstable();
        Ok(Some(g))
    }

    /// Greedy packing of requirements with pairwise disjoint element sets.
    fn packing_bound(&self, uncovered: &FixedBitSet) -> usize {
        let mut used = FixedBitSet::with_capacity(self.universe);
        let mut count = 0;
        for &r in &self.by_size {
            if uncovered.contains(r) && self.sets[r].is_disjoint(&used) {
                used.union_with(&self.sets[r]);
                count += 1;
            }
        }
        count
    }

    /// Largest-gain greedy solution (ties to the smallest element).
    pub fn greedy(&self, uncovered: &FixedBitSet) -> Vec<usize> {
        let mut left = uncovered.clone();
        let mut out = Vec::new();
        while !left.is_clear() {
            let best = (0..self.universe)
                .max_by_key(|&e| (self.covers[e].intersection_count(&left), std::cmp::Reverse(e)))
                .expect("non-empty universe");
            if self.covers[best].intersection_count(&left) == 0 {
                break;
            }
            left.difference_with(&self.covers[best]);
            out.push(best);
        }
        out
    }
}

/// Requirements whose element set contains another requirement's set are
/// implied by it.
fn drop_supersets(mut sets: Vec<FixedBitSet>) -> Vec<FixedBitSet> {
    sets.sort_by_key(|s| s.count_ones(..));
    let mut kept: Vec<FixedBitSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

struct Search<'a> {
    problem: &'a HittingProblem,
    budget: NodeBudget,
    nodes: usize,
    /// uncovered state -> largest budget known to fail
    failed: HashMap<FixedBitSet, usize>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, uncovered: &FixedBitSet, k: usize) -> Result<bool> {
        self.nodes += 1;
        if let NodeBudget(Some(limit)) = self.budget {
            if self.nodes > limit {
                return Err(Error::BudgetExceeded {
                    what: "search node",
                    limit,
                });
            }
        }
        let p = self.problem;
        let Some(&pivot) = p.by_size.iter().find(|&&r| uncovered.contains(r)) else {
            return Ok(true);
        };
        if k == 0 || p.packing_bound(uncovered) > k {
            return Ok(false);
        }
        if let Some(&b) = self.failed.get(uncovered) {
            if b >= k {
                return Ok(false);
            }
        }

        let mut options: Vec<(usize, FixedBitSet)> = p.sets[pivot]
            .ones()
            .map(|e| {
                let mut gain = p.covers[e].clone();
                gain.intersect_with(uncovered);
                (e, gain)
            })
            .collect();
        let dominated: Vec<bool> = (0..options.len())
            .map(|i| {
                options
                    .iter()
                    .enumerate()
                    .any(|(j, (_, g))| j != i && options[i].1.is_subset(g) && (options[i].1 != *g || j < i))
            })
            .collect();
        let mut idx = 0;
        options.retain(|_| {
            let keep = !dominated[idx];
            idx += 1;
            keep
        });
        options.sort_by_key(|(e, g)| (std::cmp::Reverse(g.count_ones(..)), *e));

        for (e, gain) in options {
            let mut next = uncovered.clone();
            next.difference_with(&gain);
            self.chosen.push(e);
            if self.run(&next, k - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        if self.failed.len() < FAIL_CACHE_CAP {
            let entry = self.failed.entry(uncovered.clone()).or_insert(0);
            *entry = (*entry).max(k);
        }
        Ok(false)
    }
}
