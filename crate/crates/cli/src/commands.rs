use serde::Serialize;

use rendezvous_core::analysis::{
    lemma_suite, loglog_slope, run_row, scaling_experiment, string_read_experiment_with, trial_seed, CheckResult,
    ScalingRow, ScalingSpec, SuiteConfig,
};
use rendezvous_core::baseline::{run_asy, AsyOptions};
use rendezvous_core::boundary::boundary_stats;
use rendezvous_core::par::{self, Exec};
use rendezvous_core::rgg::CommGraph;
use rendezvous_core::{geometry, DiscConfig};

use crate::output::{emit, Table};
use crate::{CliError, CommandKind, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StringRow {
    pub n_strings: usize,
    pub k: usize,
    pub seed: u64,
    pub max_total_bits: u64,
    pub mean_total_bits: f64,
    pub per_pair_mean: f64,
}

impl Table for StringRow {
    const COLUMNS: &'static [&'static str] =
        &["n_strings", "k", "seed", "max_total_bits", "mean_total_bits", "per_pair_mean"];
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsyRow {
    pub n: f64,
    pub f: usize,
    pub seed: u64,
    pub rounds: usize,
    pub comp_cost: f64,
    pub converged: bool,
    pub final_spread: f64,
    pub connectivity_preserved: bool,
}

impl Table for AsyRow {
    const COLUMNS: &'static [&'static str] =
        &["n", "f", "seed", "rounds", "comp_cost", "converged", "final_spread", "connectivity_preserved"];
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryRow {
    pub n: f64,
    pub f: usize,
    pub seed: u64,
    pub count: usize,
    pub ratio_count_over_n: f64,
    pub max_rim_distance: f64,
}

impl Table for BoundaryRow {
    const COLUMNS: &'static [&'static str] = &["n", "f", "seed", "count", "ratio_count_over_n", "max_rim_distance"];
}

impl Table for CheckResult {
    const COLUMNS: &'static [&'static str] = &["name", "statistic", "threshold", "passed", "detail"];
}

macro_rules! note {
    ($cfg:expr, $($arg:tt)*) => {
        if !$cfg.quiet {
            eprintln!($($arg)*);
        }
    };
}

/// Runs `cfg` inside a pool of `--jobs` threads when requested.
pub fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    #[cfg(feature = "parallel")]
    if let Some(jobs) = cfg.jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
        return pool.install(|| dispatch(cfg));
    }
    dispatch(cfg)
}

fn configs(cfg: &RunConfig) -> Result<Vec<DiscConfig>, CliError> {
    let mut out = Vec::new();
    for &n in &cfg.n_grid {
        let f = cfg.law.count(n)?;
        for t in 0..cfg.trials.unwrap_or(1) {
            out.push(DiscConfig::new(n, f, trial_seed(cfg.seed, t))?);
        }
    }
    Ok(out)
}

fn dispatch(cfg: &RunConfig) -> Result<(), CliError> {
    let path = cfg.output_path();
    let path = path.as_deref();
    let exec = Exec::default();
    match &cfg.command {
        CommandKind::Rendezvous => {
            let cfgs = configs(cfg)?;
            let rows = par::map_slice(exec, &cfgs, |dc| run_row(dc, &cfg.params, &cfg.cost, Exec::Sequential))
                .into_iter()
                .collect::<Result<Vec<ScalingRow>, _>>()?;
            emit(&rows, path, cfg.format)?;
            for r in &rows {
                note!(
                    cfg,
                    "n={} f={} seed={} success={} leaders={} t_total={:.3}",
                    r.n,
                    r.f,
                    r.seed,
                    r.success,
                    r.leader_count,
                    r.t_total
                );
            }
            if let Some(bad) = rows.iter().find(|r| !r.success) {
                return Err(CliError::Simulation(format!(
                    "seed {} ended with {} leader(s) and no full merge",
                    bad.seed, bad.leader_count
                )));
            }
        }
        CommandKind::Scaling => {
            let spec = ScalingSpec {
                n_grid: cfg.n_grid.clone(),
                law: cfg.law.clone(),
                trials: cfg.trials.unwrap_or(1),
                base_seed: cfg.seed,
                params: cfg.params,
                cost: cfg.cost,
                exec,
            };
            let report = scaling_experiment(&spec)?;
            emit(&report.rows, path, cfg.format)?;
            for s in &report.per_n {
                note!(
                    cfg,
                    "n={} success={}/{} median t_total={}",
                    s.n,
                    s.successes,
                    s.runs,
                    s.median_t_total.map_or("-".into(), |m| format!("{m:.3}"))
                );
            }
            match report.slope {
                Some(s) => note!(cfg, "log-log slope of median t_total: {s:.4}"),
                None => note!(cfg, "log-log slope of median t_total: undefined"),
            }
        }
        CommandKind::Lemmas => {
            let suite = SuiteConfig {
                base_seed: cfg.seed,
                trials: cfg.trials,
                law: cfg.law.clone(),
                params: cfg.params,
                cost: cfg.cost,
                exec,
            };
            let results = lemma_suite(&suite)?;
            emit(&results, path, cfg.format)?;
            for r in &results {
                note!(cfg, "{}", r.line());
            }
        }
        CommandKind::Strings { strings, k } => {
            let seeds: Vec<u64> = (0..cfg.trials.unwrap_or(1)).map(|t| trial_seed(cfg.seed, t)).collect();
            let rows = par::map_slice(exec, &seeds, |&s| {
                string_read_experiment_with(*strings, *k, s, Exec::Sequential).map(|r| StringRow {
                    n_strings: r.n_strings,
                    k: r.k,
                    seed: s,
                    max_total_bits: r.max_total_bits,
                    mean_total_bits: r.mean_total_bits,
                    per_pair_mean: r.per_pair_mean,
                })
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
            emit(&rows, path, cfg.format)?;
        }
        CommandKind::Asy { step_cap, tol, max_rounds } => {
            let cfgs = configs(cfg)?;
            let rows = par::map_slice(exec, &cfgs, |dc| {
                let opts = AsyOptions {
                    step_cap: *step_cap,
                    tol: tol.unwrap_or(1e-3 * dc.n),
                    max_rounds: *max_rounds,
                    ..AsyOptions::for_radius(dc.n)
                };
                run_asy(dc, &opts).map(|r| AsyRow {
                    n: dc.n,
                    f: dc.f,
                    seed: dc.seed,
                    rounds: r.rounds,
                    comp_cost: r.comp_cost,
                    converged: r.converged,
                    final_spread: r.final_spread,
                    connectivity_preserved: r.connectivity_preserved,
                })
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
            emit(&rows, path, cfg.format)?;
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n, r.comp_cost)).collect();
            if let Some(s) = loglog_slope(&pts) {
                note!(cfg, "log-log slope of comp_cost: {s:.4}");
            }
        }
        CommandKind::Boundary => {
            let cfgs = configs(cfg)?;
            let rows = par::map_slice(exec, &cfgs, |dc| {
                let g = CommGraph::from_points_with(geometry::sample_uniform_disc(dc), Exec::Sequential);
                let r = boundary_stats(&g, dc);
                BoundaryRow {
                    n: dc.n,
                    f: dc.f,
                    seed: dc.seed,
                    count: r.count,
                    ratio_count_over_n: r.ratio_count_over_n,
                    max_rim_distance: r.max_rim_distance,
                }
            });
            emit(&rows, path, cfg.format)?;
        }
    }
    Ok(())
}
