//! Batches of random instances: equivalence verdict, structure report and
//! parameter report per instance, plus an aggregate table by `(chi, n)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gridtiling::{normalize, random_instance, GtInstanceFile};
use crate::harness::equivalence::{verify_equivalence, EquivalenceOptions, Timings, Verdict};
use crate::harness::structure::{verify_structure_with, StructureReport};
use crate::par::Exec;
use crate::params::{parameter_report, ParamOptions, ParameterReport};
use crate::reduction::build;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub chi: Vec<usize>,
    pub n: Vec<u32>,
    pub seeds: Vec<u64>,
    pub pairs_per_cell: usize,
    /// Also compute parameter reports (slower).
    pub params: bool,
    pub equivalence: EquivalenceOptions,
    pub param_options: ParamOptions,
    /// Strategy across instances; each instance then runs its own loops
    /// with the strategies in the option structs.
    pub exec: Exec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepItem {
    pub id: String,
    pub seed: u64,
    pub instance: GtInstanceFile,
    /// Timings are zeroed here so reports stay byte-identical across runs;
    /// they are kept in [`SweepReport::timings`].
    pub verdict: Verdict,
    pub structure: StructureReport,
    pub params: Option<ParameterReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub chi: usize,
    pub n: u32,
    pub instances: usize,
    pub agree: usize,
    pub inconclusive: usize,
    pub structure_ok: usize,
    pub kappa_max: Option<usize>,
    pub hd_per_ball_max: Option<usize>,
    pub pw_width_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub items: Vec<SweepItem>,
    pub aggregate: Vec<AggregateRow>,
    /// Id of the first disagreeing instance; later items are dropped.
    pub aborted_on: Option<String>,
    #[serde(skip)]
    pub timings: Vec<(String, Timings)>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.aborted_on.is_none() && self.items.iter().all(|i| i.verdict.agree)
    }

    pub fn any_inconclusive(&self) -> bool {
        self.items.iter().any(|i| i.verdict.inconclusive)
    }

    pub fn structure_ok(&self) -> bool {
        self.items.iter().all(|i| i.structure.all_passed())
    }

    pub fn table(&self) -> String {
        let mut out = String::from("chi  n  instances  agree  inconclusive  structure_ok  kappa  hd_ball  pw_width\n");
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        for r in &self.aggregate {
            let _ = writeln!(
                out,
                "{:>3} {:>2} {:>10} {:>6} {:>13} {:>13} {:>6} {:>8} {:>9}",
                r.chi,
                r.n,
                r.instances,
                r.agree,
                r.inconclusive,
                r.structure_ok,
                opt(r.kappa_max),
                opt(r.hd_per_ball_max),
                opt(r.pw_width_max)
            );
        }
        out
    }

    /// Writes one JSON file per instance, `summary.json` and `summary.txt`.
    /// A disagreement additionally gets a `disagreement-<id>.json` dump.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir.join("instances"))?;
        for item in &self.items {
            let body = serde_json::to_string_pretty(item)?;
            fs::write(dir.join("instances").join(format!("{}.json", item.id)), body + "\n")?;
            if !item.verdict.agree {
                fs::write(
                    dir.join(format!("disagreement-{}.json", item.id)),
                    serde_json::to_string_pretty(item)? + "\n",
                )?;
            }
        }
        fs::write(dir.join("summary.json"), serde_json::to_string_pretty(self)? + "\n")?;
        fs::write(dir.join("summary.txt"), self.table())?;
        Ok(())
    }
}

fn run_item(chi: usize, n: u32, seed: u64, cfg: &SweepConfig) -> Result<(SweepItem, Timings)> {
    let id = format!("chi{chi}-n{n}-p{}-s{seed}", cfg.pairs_per_cell);
    let inst = random_instance(chi, n, cfg.pairs_per_cell, seed)?;
    let mut verdict = verify_equivalence(&id, &inst, &cfg.equivalence)?;
    let timings = std::mem::take(&mut verdict.timings);
    let reduced = build(&normalize(&inst)?.instance)?;
    let structure = verify_structure_with(&reduced, cfg.equivalence.exec)?;
    let params = if cfg.params {
        Some(parameter_report(&reduced, &cfg.param_options)?)
    } else {
        None
    };
    Ok((
        SweepItem {
            id,
            seed,
            instance: inst.to_file(),
            verdict,
            structure,
            params,
        },
        timings,
    ))
}

pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut jobs = Vec::new();
    for &chi in &cfg.chi {
        for &n in &cfg.n {
            for &seed in &cfg.seeds {
                jobs.push((chi, n, seed));
            }
        }
    }
    let results = cfg.exec.map_items(&jobs, |&(chi, n, seed)| run_item(chi, n, seed, cfg));
    let mut items = Vec::new();
    let mut timings = Vec::new();
    let mut aborted_on = None;
    for res in results {
        let (item, t) = res?;
        timings.push((item.id.clone(), t));
        let agree = item.verdict.agree;
        if !agree {
            aborted_on = Some(item.id.clone());
        }
        items.push(item);
        if !agree {
            break;
        }
    }

    let mut groups: BTreeMap<(usize, u32), Vec<&SweepItem>> = BTreeMap::new();
    for it in &items {
        groups.entry((it.verdict.chi, it.verdict.n)).or_default().push(it);
    }
    let aggregate = groups
        .into_iter()
        .map(|((chi, n), its)| {
            let max_of =
                |f: &dyn Fn(&ParameterReport) -> usize| its.iter().filter_map(|i| i.params.as_ref().map(f)).max();
            AggregateRow {
                chi,
                n,
                instances: its.len(),
                agree: its.iter().filter(|i| i.verdict.agree).count(),
                inconclusive: its.iter().filter(|i| i.verdict.inconclusive).count(),
                structure_ok: its.iter().filter(|i| i.structure.all_passed()).count(),
                kappa_max: max_of(&|p| p.kappa.value),
                hd_per_ball_max: max_of(&|p| p.hd.per_ball_max),
                pw_width_max: max_of(&|p| p.pathwidth.constructive_width),
            }
        })
        .collect();
    Ok(SweepReport {
        items,
        aggregate,
        aborted_on,
        timings,
    })
}
