//! Batch runs over generated instances: one CSV row per (instance, μ, seed)
//! and a success-rate table per (family, n, μ).

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classification::Params;
use crate::error::{invalid, Result};
use crate::fraction::Fraction;
use crate::generators::{generate, ColourScheme, GenSpec};
use crate::graph::ProtectedSet;
use crate::rainbow::{find_rainbow_hc, verify, PipelineConfig};
use crate::seed::derive_seed;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentPlan {
    /// Each family's own `seed` is replaced by the plan seeds.
    pub families: Vec<GenSpec>,
    /// Applied as a bounded colouring to families without a fixed colouring.
    pub mu_grid: Vec<Fraction>,
    pub seeds: Range<u64>,
    #[serde(default)]
    pub pipeline: PipelineConfig,
    #[serde(default)]
    pub params: Params,
    pub output: PathBuf,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() || self.mu_grid.is_empty() || self.seeds.is_empty() {
            return invalid("families, mu_grid and seeds must all be non-empty");
        }
        self.params.validate()?;
        self.pipeline.search.validate()
    }

    /// Instance specs in plan order with the μ label of each row.
    pub fn jobs(&self) -> Vec<(GenSpec, String)> {
        let mut jobs = Vec::new();
        for fam in &self.families {
            for seed in self.seeds.clone() {
                let fixed = fam.colouring.is_some() || fam.family.has_intrinsic_colouring();
                if fixed {
                    jobs.push((GenSpec { seed, ..*fam }, "fixed".to_string()));
                    continue;
                }
                for mu in &self.mu_grid {
                    let spec = GenSpec { seed, colouring: Some(ColourScheme::Bounded { mu: *mu }), ..*fam };
                    jobs.push((spec, mu.to_string()));
                }
            }
        }
        jobs
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub index: usize,
    pub family: String,
    pub n: usize,
    pub mu: String,
    pub seed: u64,
    pub max_class: Option<usize>,
    pub tag: Option<String>,
    pub success: bool,
    pub steps: Option<u64>,
    pub min_admissible: Option<usize>,
    pub median_admissible: Option<usize>,
    pub error: Option<String>,
    /// Excluded from determinism comparisons.
    pub wall_ms: f64,
}

impl ExperimentRow {
    /// The row with its timing column zeroed.
    pub fn without_timing(&self) -> ExperimentRow {
        ExperimentRow { wall_ms: 0.0, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: String,
    pub n: usize,
    pub mu: String,
    pub runs: usize,
    pub successes: usize,
    pub errors: usize,
    pub success_rate: f64,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub rows: Vec<ExperimentRow>,
    pub summary: Vec<SummaryRow>,
    pub rows_path: PathBuf,
    pub summary_path: PathBuf,
}

fn run_job(index: usize, spec: &GenSpec, mu: String, plan: &ExperimentPlan) -> ExperimentRow {
    let start = Instant::now();
    let mut row = ExperimentRow {
        index,
        family: spec.family.name().to_string(),
        n: spec.n,
        mu,
        seed: spec.seed,
        max_class: None,
        tag: None,
        success: false,
        steps: None,
        min_admissible: None,
        median_admissible: None,
        error: None,
        wall_ms: 0.0,
    };
    let mut cfg = plan.pipeline;
    cfg.search.seed = derive_seed(spec.seed, 0x5EA);
    cfg.search.beta_report = true;
    let outcome = generate(spec).and_then(|(g, c)| {
        row.max_class = Some(c.max_multiplicity());
        let res = find_rainbow_hc(&g, &c, &plan.params, &cfg)?;
        Ok((g, c, res))
    });
    match outcome {
        Ok((g, c, res)) => {
            row.tag = Some(format!("{:?}", res.classification.tag));
            row.success = res.cycle.as_ref().is_some_and(|h| verify(&g, &c, h, &ProtectedSet::empty()));
            row.steps = Some(res.search_reports().map(|r| r.total_steps()).sum());
            let counts: Vec<usize> = {
                let mut all: Vec<usize> = res.search_reports().flat_map(|r| r.admissible_counts()).collect();
                all.sort_unstable();
                all
            };
            row.min_admissible = counts.first().copied();
            row.median_admissible = counts.get(counts.len() / 2).copied();
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    row
}

pub fn summarise(rows: &[ExperimentRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, usize, String), (usize, usize, usize)> = BTreeMap::new();
    let mut order = Vec::new();
    for r in rows {
        let key = (r.family.clone(), r.n, r.mu.clone());
        let slot = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (0, 0, 0)
        });
        slot.0 += 1;
        slot.1 += usize::from(r.success);
        slot.2 += usize::from(r.error.is_some());
    }
    order
        .into_iter()
        .map(|key| {
            let (runs, successes, errors) = groups[&key];
            SummaryRow { family: key.0, n: key.1, mu: key.2, runs, successes, errors, success_rate: successes as f64 / runs as f64 }
        })
        .collect()
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::error::Error {
    std::io::Error::other(e.to_string()).into()
}

/// Runs every job on the rayon pool; rows are written in plan order, and a
/// failing job becomes a row with `error` set.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentOutput> {
    plan.validate()?;
    std::fs::create_dir_all(&plan.output)?;
    let jobs = plan.jobs();
    let rows: Vec<ExperimentRow> = jobs.into_par_iter().enumerate().map(|(i, (spec, mu))| run_job(i, &spec, mu, plan)).collect();
    let summary = summarise(&rows);
    let rows_path = plan.output.join("rows.csv");
    let summary_path = plan.output.join("summary.csv");
    write_csv(&rows_path, &rows)?;
    write_csv(&summary_path, &summary)?;
    let echo = serde_json::to_string_pretty(plan).map_err(|e| std::io::Error::other(e.to_string()))?;
    std::fs::write(plan.output.join("plan.json"), echo)?;
    Ok(ExperimentOutput { rows, summary, rows_path, summary_path })
}
