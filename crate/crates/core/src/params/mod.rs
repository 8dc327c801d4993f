//! Graph parameters of the reduced instance: skeleton dimension, highway
//! dimension, doubling behaviour and pathwidth, each with a certificate.

pub mod doubling;
pub mod highway;
pub mod pathwidth;
pub mod skeleton;
pub mod window;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hitting::NodeBudget;
use crate::par::Exec;
use crate::paths::AllPairs;
use crate::rational::Rational;
use crate::reduction::ReducedInstance;

pub use doubling::{doubling_check, doubling_profile, DoublingProfile};
pub use highway::{
    highway_dimension_exact, highway_witness, highway_witness_with, q_cover, unhit_long_path, HighwayDimension,
    HittingFamily,
};
pub use pathwidth::{
    build_path_decomposition, contract_degree2, pathwidth_exact_tiny, verify_path_decomposition, Contracted,
    PathDecomposition,
};
pub use skeleton::{cut_points, skeleton_dimension, skeleton_profile, CutPoint, SkeletonDimension, SkeletonProfile};
pub use window::window_diameter;

/// Dyadic radii `2^k` for `k` in `-2..=n+3`, spanning every regime of the
/// witness family.
pub fn highway_radius_grid(n: u32) -> Vec<Rational> {
    (-2..=(n as i32 + 3))
        .map(|k| {
            if k < 0 {
                Rational::new(1, 1 << -k)
            } else {
                Rational::pow2(k as u32)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct ParamOptions {
    pub exec: Exec,
    pub nodes: NodeBudget,
    pub hd_vertex_budget: usize,
    pub doubling_vertex_budget: usize,
}

impl Default for ParamOptions {
    fn default() -> Self {
        ParamOptions {
            exec: Exec::default(),
            nodes: NodeBudget::limit(2_000_000),
            hd_vertex_budget: highway::DEFAULT_HD_VERTEX_BUDGET,
            doubling_vertex_budget: doubling::DEFAULT_DOUBLING_VERTEX_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaReport {
    pub value: usize,
    pub witness_source: String,
    pub witness_radius: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdReport {
    /// `None` above the vertex budget.
    pub exact: Option<usize>,
    /// Largest `|H_r|` over the radius grid.
    pub witness_bound: usize,
    /// Largest `|H_r ∩ B_{4r}(v)|` over the grid and all `v`.
    pub per_ball_max: usize,
    /// Every shortest path longer than `r` meets `H_r`, for every grid radius.
    pub witness_hits_all: bool,
    pub radii: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingReport {
    /// Smallest `d` such that every `B_{2r}(v)` is covered by `2^d` balls of
    /// radius `r`; `None` above the vertex budget.
    pub passes_d: Option<u32>,
    pub max_cover: Option<usize>,
    pub ball_centers: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathwidthReport {
    pub constructive_width: usize,
    pub contracted_vertices: usize,
    /// `None` when the contracted graph is above the exact limit.
    pub exact_tiny: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterReport {
    pub kappa: KappaReport,
    pub hd: HdReport,
    pub doubling: DoublingReport,
    pub pathwidth: PathwidthReport,
}

fn over_budget<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::VertexBudget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn parameter_report(reduced: &ReducedInstance, opts: &ParamOptions) -> Result<ParameterReport> {
    let g = &reduced.graph;
    let kappa = skeleton_dimension(g, opts.exec)?;

    let apsp = AllPairs::compute(g, opts.exec)?;
    let radii = highway_radius_grid(reduced.n);
    let mut witness_bound = 0;
    let mut per_ball = 0;
    let mut hits_all = true;
    for r in &radii {
        let fam = highway_witness_with(reduced, &apsp, r)?;
        witness_bound = witness_bound.max(fam.hitters.len());
        per_ball = per_ball.max(fam.per_ball_max);
        hits_all &= unhit_long_path(g, &apsp, &fam.hitters, r, opts.exec).is_none();
    }
    let exact = over_budget(highway_dimension_exact(g, opts.hd_vertex_budget, opts.nodes, opts.exec))?;

    let dbl = over_budget(doubling_profile(g, opts.doubling_vertex_budget, opts.nodes, opts.exec))?;

    let (contracted, pd) = build_path_decomposition(reduced)?;
    let constructive_width = verify_path_decomposition(&contracted.graph, &pd)
        .map_err(|v| Error::InvalidGraph(format!("path decomposition rejected: {v:?}")))?;
    let exact_tiny = over_budget(pathwidth_exact_tiny(&contracted.graph))?;

    Ok(ParameterReport {
        kappa: KappaReport {
            value: kappa.value,
            witness_source: reduced.render(kappa.source),
            witness_radius: kappa.radius,
        },
        hd: HdReport {
            exact: exact.map(|h| h.value),
            witness_bound,
            per_ball_max: per_ball,
            witness_hits_all: hits_all,
            radii,
        },
        doubling: DoublingReport {
            passes_d: dbl.as_ref().map(|p| p.passes_d),
            max_cover: dbl.as_ref().map(|p| p.max_cover),
            ball_centers: "vertices".to_string(),
        },
        pathwidth: PathwidthReport {
            constructive_width,
            contracted_vertices: contracted.graph.vertex_count(),
            exact_tiny,
        },
    })
}
