//! Grid Tiling with inequality: instances, solutions, brute force, and the
//! normalizations that make an instance acceptable to the reduction.
//!
//! Cells are addressed 1-based as `(i, j)` with `i` the row. A solution picks
//! one pair per cell such that first components never decrease down a
//! column (`i -> i+1`) and second components never decrease along a row
//! (`j -> j+1`).

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pair `(a, b)`. The derived order is the lexical one: `a` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Pair {
    pub a: u32,
    pub b: u32,
}

impl Pair {
    pub const fn new(a: u32, b: u32) -> Pair {
        Pair { a, b }
    }
}

impl From<(u32, u32)> for Pair {
    fn from((a, b): (u32, u32)) -> Pair {
        Pair { a, b }
    }
}

impl From<Pair> for (u32, u32) {
    fn from(p: Pair) -> (u32, u32) {
        (p.a, p.b)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtInstance {
    chi: usize,
    n: u32,
    /// Row-major, `chi * chi` cells.
    sets: Vec<BTreeSet<Pair>>,
}

/// On-disk form: `{chi, n, sets: [[[a, b], ...], ...]}` with cells row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtInstanceFile {
    pub chi: usize,
    pub n: u32,
    pub sets: Vec<Vec<Pair>>,
}

impl GtInstance {
    pub fn new(chi: usize, n: u32, cells: Vec<Vec<Pair>>) -> Result<GtInstance> {
        if chi == 0 || n == 0 {
            return Err(Error::InvalidInstance("chi and n must be positive".into()));
        }
        if cells.len() != chi * chi {
            return Err(Error::InvalidInstance(format!(
                "expected {} cells, got {}",
                chi * chi,
                cells.len()
            )));
        }
        let mut sets = Vec::with_capacity(cells.len());
        for (idx, cell) in cells.into_iter().enumerate() {
            let (i, j) = (idx / chi + 1, idx % chi + 1);
            let mut set = BTreeSet::new();
            for p in cell {
                if p.a < 1 || p.a > n || p.b < 1 || p.b > n {
                    return Err(Error::InvalidInstance(format!(
                        "pair {p} in cell ({i},{j}) lies outside [{n}]^2"
                    )));
                }
                if !set.insert(p) {
                    return Err(Error::InvalidInstance(format!("duplicate pair {p} in cell ({i},{j})")));
                }
            }
            sets.push(set);
        }
        Ok(GtInstance { chi, n, sets })
    }

    /// Every cell receives the same pair list.
    pub fn uniform(chi: usize, n: u32, cell: &[Pair]) -> Result<GtInstance> {
        GtInstance::new(chi, n, vec![cell.to_vec(); chi * chi])
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `S_{i,j}`, 1-based.
    pub fn cell(&self, i: usize, j: usize) -> &BTreeSet<Pair> {
        &self.sets[self.index(i, j)]
    }

    fn index(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.chi).contains(&i) && (1..=self.chi).contains(&j),
            "cell ({i},{j}) outside a {0}x{0} grid",
            self.chi
        );
        (i - 1) * self.chi + (j - 1)
    }

    /// Cells in row-major order with their 1-based coordinates.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &BTreeSet<Pair>)> + '_ {
        self.sets
            .iter()
            .enumerate()
            .map(move |(idx, s)| ((idx / self.chi + 1, idx % self.chi + 1), s))
    }

    pub fn has_empty_cell(&self) -> bool {
        self.sets.iter().any(BTreeSet::is_empty)
    }

    pub fn to_file(&self) -> GtInstanceFile {
        GtInstanceFile {
            chi: self.chi,
            n: self.n,
            sets: self.sets.iter().map(|s| s.iter().copied().collect()).collect(),
        }
    }

    pub fn from_file(file: GtInstanceFile) -> Result<GtInstance> {
        GtInstance::new(file.chi, file.n, file.sets)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_file()).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<GtInstance> {
        GtInstance::from_file(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtSolution {
    chi: usize,
    /// Row-major.
    chosen: Vec<Pair>,
}

impl GtSolution {
    pub fn new(chi: usize, chosen: Vec<Pair>) -> GtSolution {
        GtSolution { chi, chosen }
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn get(&self, i: usize, j: usize) -> Pair {
        self.chosen[(i - 1) * self.chi + (j - 1)]
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.chosen
    }
}

/// Membership plus both monotonicity conditions.
pub fn check_solution(inst: &GtInstance, sol: &GtSolution) -> Result<bool> {
    let chi = inst.chi();
    if sol.chi != chi || sol.chosen.len() != chi * chi {
        return Err(Error::ShapeMismatch {
            chi,
            got: (sol.chi, sol.chosen.len()),
        });
    }
    for i in 1..=chi {
        for j in 1..=chi {
            let s = sol.get(i, j);
            if !inst.cell(i, j).contains(&s) {
                return Ok(false);
            }
            if i < chi && s.a > sol.get(i + 1, j).a {
                return Ok(false);
            }
            if j < chi && s.b > sol.get(i, j + 1).b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive backtracking in row-major order; a candidate must dominate the
/// `a` of the cell above and the `b` of the cell to the left.
pub fn solve_bruteforce(inst: &GtInstance) -> Option<GtSolution> {
    fn go(inst: &GtInstance, idx: usize, chosen: &mut Vec<Pair>) -> bool {
        let chi = inst.chi;
        if idx == chi * chi {
            return true;
        }
        let (i, j) = (idx / chi, idx % chi);
        let min_a = if i > 0 { chosen[idx - chi].a } else { 0 };
        let min_b = if j > 0 { chosen[idx - 1].b } else { 0 };
        for &p in &inst.sets[idx] {
            if p.a >= min_a && p.b >= min_b {
                chosen.push(p);
                if go(inst, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(inst.sets.len());
    go(inst, 0, &mut chosen).then(|| GtSolution::new(inst.chi, chosen))
}

/// Every cell holds a pair with second component `b` for each `b` in `[n]`.
pub fn is_b_covered(inst: &GtInstance) -> bool {
    first_uncovered(inst).is_none()
}

pub(crate) fn first_uncovered(inst: &GtInstance) -> Option<(usize, usize, u32)> {
    for ((i, j), set) in inst.cells() {
        let bs: BTreeSet<u32> = set.iter().map(|p| p.b).collect();
        if let Some(b) = (1..=inst.n).find(|b| !bs.contains(b)) {
            return Some((i, j, b));
        }
    }
    None
}

/// Dummy-pair augmentation, normalized into `[N]^2` with `N = n + chi`.
///
/// Genuine pairs move to `(a + 1, b)`. Rows `i < chi` gain
/// `(n + chi - i + 1, b)` and row `chi` gains `(1, b)`, for every `b` in
/// `[N]`. No dummy can ever be chosen, so solvability is unchanged.
pub fn augment(inst: &GtInstance) -> Result<GtInstance> {
    let chi = inst.chi;
    if chi < 2 {
        return Err(Error::ChiTooSmall(chi));
    }
    let n = inst.n;
    let big_n = n + chi as u32;
    let mut cells = Vec::with_capacity(chi * chi);
    for ((i, _j), set) in inst.cells() {
        let mut cell: Vec<Pair> = set.iter().map(|p| Pair::new(p.a + 1, p.b)).collect();
        let dummy_a = if i < chi { n + chi as u32 - i as u32 + 1 } else { 1 };
        cell.extend((1..=big_n).map(|b| Pair::new(dummy_a, b)));
        cells.push(cell);
    }
    GtInstance::new(chi, big_n, cells)
}

/// How an instance was made acceptable to the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `chi = 1`, b-covered and `n >= 2`; used as is.
    Direct,
    /// [`augment`] applied.
    Augmented,
    /// `chi = 1` and not b-covered: embedded as cell `(1,1)` of a `2 x 2`
    /// instance with always-compatible singleton companions, then augmented.
    EmbeddedThenAugmented,
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub original: GtInstance,
    pub instance: GtInstance,
    pub kind: Normalization,
}

impl Normalized {
    /// Map a solution of the normalized instance back to the original.
    /// Returns `None` if the solution uses a pair with no preimage (a dummy).
    pub fn restore(&self, sol: &GtSolution) -> Option<GtSolution> {
        let orig = &self.original;
        let map = |p: Pair| (p.a >= 2).then(|| Pair::new(p.a - 1, p.b));
        let chosen: Option<Vec<Pair>> = match self.kind {
            Normalization::Direct => Some(sol.pairs().to_vec()),
            Normalization::Augmented => sol.pairs().iter().map(|&p| map(p)).collect(),
            Normalization::EmbeddedThenAugmented => map(sol.get(1, 1)).map(|p| vec![p]),
        };
        let restored = GtSolution::new(orig.chi, chosen?);
        let in_sets = (1..=orig.chi).all(|i| (1..=orig.chi).all(|j| orig.cell(i, j).contains(&restored.get(i, j))));
        in_sets.then_some(restored)
    }
}

/// Make `inst` acceptable to the reduction while preserving solvability.
///
/// Instances with `chi >= 2` are always augmented, even when already
/// b-covered: with a genuine pair `(a, n)` chosen in the last column the
/// anchor `x^2_{i,chi}` lies at distance `2^{n+1} + a/n` from every center
/// of the canonical center set, and nothing outside the gadget reaches it.
/// After augmentation genuine pairs have `b <= n < N`, which avoids this.
pub fn normalize(inst: &GtInstance) -> Result<Normalized> {
    let chi = inst.chi;
    let direct_ok = chi == 1 && inst.n >= 2 && is_b_covered(inst);
    let (instance, kind) = if direct_ok {
        (inst.clone(), Normalization::Direct)
    } else if chi >= 2 {
        (augment(inst)?, Normalization::Augmented)
    } else {
        let n = inst.n;
        let cell: Vec<Pair> = inst.cell(1, 1).iter().copied().collect();
        let embedded = GtInstance::new(
            2,
            n,
            vec![
                cell,
                vec![Pair::new(1, n)],
                vec![Pair::new(n, 1)],
                vec![Pair::new(1, 1)],
            ],
        )?;
        (augment(&embedded)?, Normalization::EmbeddedThenAugmented)
    };
    Ok(Normalized {
        original: inst.clone(),
        instance,
        kind,
    })
}

/// Deterministic random instance: each cell gets `pairs_per_cell` distinct
/// pairs drawn uniformly from `[n]^2`.
pub fn random_instance(chi: usize, n: u32, pairs_per_cell: usize, seed: u64) -> Result<GtInstance> {
    let total = (n as usize) * (n as usize);
    if pairs_per_cell > total {
        return Err(Error::InvalidInstance(format!(
            "{pairs_per_cell} pairs per cell exceed |[{n}]^2| = {total}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = (0..chi * chi)
        .map(|_| {
            sample(&mut rng, total, pairs_per_cell)
                .into_iter()
                .map(|k| Pair::new(k as u32 / n + 1, k as u32 % n + 1))
                .collect()
        })
        .collect();
    GtInstance::new(chi, n, cells)
}

/// Deterministic random b-covered instance: for each `b` one random `a`, plus
/// `extra` further distinct random pairs per cell.
pub fn random_covered_instance(chi: usize, n: u32, extra: usize, seed: u64) -> Result<GtInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let total = (n as usize) * (n as usize);
    let cells = (0..chi * chi)
        .map(|_| {
            let mut set: BTreeSet<Pair> = (1..=n).map(|b| Pair::new(rng.random_range(1..=n), b)).collect();
            let target = (set.len() + extra).min(total);
            while set.len() < target {
                set.insert(Pair::new(rng.random_range(1..=n), rng.random_range(1..=n)));
            }
            set.into_iter().collect()
        })
        .collect();
    GtInstance::new(chi, n, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: u32, b: u32) -> Pair {
        Pair::new(a, b)
    }

    /// The unsolvable 2x2 example: needs 2 <= 1 down the first column.
    pub(crate) fn unsolvable_2x2() -> GtInstance {
        GtInstance::new(2, 2, vec![vec![p(2, 1)], vec![p(2, 2)], vec![p(1, 1)], vec![p(2, 2)]]).unwrap()
    }

    #[test]
    fn chi1_any_member_is_a_solution() {
        let inst = GtInstance::new(1, 3, vec![vec![p(3, 1), p(1, 2)]]).unwrap();
        for &s in inst.cell(1, 1) {
            assert!(check_solution(&inst, &GtSolution::new(1, vec![s])).unwrap());
        }
    }

    #[test]
    fn identity_pairs_solve() {
        let cells = vec![vec![p(1, 1)], vec![p(1, 2)], vec![p(2, 1)], vec![p(2, 2)]];
        let inst = GtInstance::new(2, 2, cells).unwrap();
        let sol = GtSolution::new(2, vec![p(1, 1), p(1, 2), p(2, 1), p(2, 2)]);
        assert!(check_solution(&inst, &sol).unwrap());
    }

    #[test]
    fn decreasing_b_along_row_fails() {
        let inst = GtInstance::uniform(2, 2, &[p(1, 1), p(1, 2)]).unwrap();
        let sol = GtSolution::new(2, vec![p(1, 2), p(1, 1), p(1, 1), p(1, 2)]);
        assert!(!check_solution(&inst, &sol).unwrap());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let inst = GtInstance::uniform(2, 2, &[p(1, 1)]).unwrap();
        let sol = GtSolution::new(1, vec![p(1, 1)]);
        assert!(matches!(check_solution(&inst, &sol), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn bruteforce_examples() {
        let mut cells = vec![vec![p(1, 1)]; 4];
        cells[2].clear();
        assert!(solve_bruteforce(&GtInstance::new(2, 2, cells).unwrap()).is_none());
        assert!(solve_bruteforce(&unsolvable_2x2()).is_none());
        let both = GtInstance::uniform(2, 2, &[p(1, 1), p(2, 2)]).unwrap();
        let sol = solve_bruteforce(&both).unwrap();
        assert!(check_solution(&both, &sol).unwrap());
        assert_eq!(sol.pairs(), &[p(1, 1); 4]);
    }

    #[test]
    fn b_coverage() {
        let n1 = GtInstance::uniform(2, 1, &[p(1, 1)]).unwrap();
        assert!(is_b_covered(&n1));
        let missing = GtInstance::uniform(1, 2, &[p(1, 1), p(2, 1)]).unwrap();
        assert!(!is_b_covered(&missing));
        assert_eq!(first_uncovered(&missing), Some((1, 1, 2)));
    }

    #[test]
    fn augment_applies_the_dummy_rule() {
        let empty = GtInstance::new(2, 2, vec![vec![]; 4]).unwrap();
        let aug = augment(&empty).unwrap();
        assert_eq!(aug.n(), 4);
        for j in 1..=2 {
            let top: Vec<Pair> = (1..=4).map(|b| p(4, b)).collect();
            let bottom: Vec<Pair> = (1..=4).map(|b| p(1, b)).collect();
            assert_eq!(aug.cell(1, j).iter().copied().collect::<Vec<_>>(), top);
            assert_eq!(aug.cell(2, j).iter().copied().collect::<Vec<_>>(), bottom);
        }
        assert!(is_b_covered(&aug));
        assert!(solve_bruteforce(&aug).is_none());
    }

    #[test]
    fn augment_preserves_solvability_of_examples() {
        let bad = unsolvable_2x2();
        assert!(solve_bruteforce(&augment(&bad).unwrap()).is_none());
        let good = GtInstance::uniform(2, 2, &[p(1, 1), p(2, 2)]).unwrap();
        assert!(solve_bruteforce(&augment(&good).unwrap()).is_some());
        assert!(matches!(
            augment(&GtInstance::uniform(1, 2, &[p(1, 1)]).unwrap()),
            Err(Error::ChiTooSmall(1))
        ));
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = random_instance(2, 3, 4, 17).unwrap();
        let b = random_instance(2, 3, 4, 17).unwrap();
        assert_eq!(a, b);
        assert!(a.cells().all(|(_, s)| s.len() == 4));
        let full = random_instance(2, 2, 4, 1).unwrap();
        assert!(full.cells().all(|(_, s)| s.len() == 4));
        let none = random_instance(2, 2, 0, 1).unwrap();
        assert!(solve_bruteforce(&none).is_none());
        assert!(random_instance(1, 2, 5, 0).is_err());
    }

    #[test]
    fn covered_generator_is_covered() {
        for seed in 0..20 {
            let inst = random_covered_instance(3, 3, 2, seed).unwrap();
            assert!(is_b_covered(&inst));
        }
    }

    #[test]
    fn normalization_kinds() {
        let covered = GtInstance::uniform(1, 2, &[p(1, 1), p(2, 2)]).unwrap();
        assert_eq!(normalize(&covered).unwrap().kind, Normalization::Direct);
        let chi1_empty = GtInstance::new(1, 2, vec![vec![]]).unwrap();
        let nz = normalize(&chi1_empty).unwrap();
        assert_eq!(nz.kind, Normalization::EmbeddedThenAugmented);
        assert!(solve_bruteforce(&nz.instance).is_none());
        let chi1_partial = GtInstance::new(1, 3, vec![vec![p(2, 3)]]).unwrap();
        let nz = normalize(&chi1_partial).unwrap();
        let sol = solve_bruteforce(&nz.instance).unwrap();
        let back = nz.restore(&sol).unwrap();
        assert!(check_solution(&chi1_partial, &back).unwrap());
        let n1 = GtInstance::uniform(2, 1, &[p(1, 1)]).unwrap();
        assert_eq!(normalize(&n1).unwrap().kind, Normalization::Augmented);
        let covered2 = GtInstance::uniform(2, 2, &[p(1, 1), p(2, 2)]).unwrap();
        assert_eq!(normalize(&covered2).unwrap().kind, Normalization::Augmented);
        let tiny = GtInstance::uniform(1, 1, &[p(1, 1)]).unwrap();
        assert_eq!(normalize(&tiny).unwrap().kind, Normalization::EmbeddedThenAugmented);
    }

    #[test]
    fn file_round_trip() {
        let inst = random_instance(2, 3, 2, 5).unwrap();
        let text = inst.to_json();
        assert_eq!(GtInstance::from_json(&text).unwrap(), inst);
        let dup = r#"{"chi":1,"n":2,"sets":[[[1,1],[1,1]]]}"#;
        assert!(GtInstance::from_json(dup).is_err());
    }
}
