//! Named statistical checks, one per acceptance criterion that can be stated
//! as a pass rate or a fitted statistic.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{loglog_slope, scaling_experiment, string_read_experiment_with, trial_seed, ScalingSpec};
use crate::baseline::{run_asy, AsyOptions};
use crate::boundary::boundary_stats;
use crate::density::DensityLaw;
use crate::error::Result;
use crate::geometry::DiscConfig;
use crate::par::{self, Exec};
use crate::protocol::{global_visibility_election, step1a_classify, Color, CostModel, ProtocolParams};
use crate::rgg::{build_comm_graph, degree_stats, graph_diameter_with, is_connected, DiameterMode};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub statistic: f64,
    /// Human-readable acceptance region for `statistic`, e.g. `>= 0.95`.
    pub threshold: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, statistic: f64, threshold: impl Into<String>, passed: bool, detail: String) -> Self {
        CheckResult { name: name.to_string(), statistic, threshold: threshold.into(), passed, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: statistic={:.6} threshold {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.statistic,
            self.threshold,
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub base_seed: u64,
    /// Replaces every check's default seed count when set.
    pub trials: Option<usize>,
    pub law: DensityLaw,
    pub params: ProtocolParams,
    pub cost: CostModel,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            base_seed: DEFAULT_SEED,
            trials: None,
            law: DensityLaw::default(),
            params: ProtocolParams::default(),
            cost: CostModel::default(),
            exec: Exec::default(),
        }
    }
}

impl SuiteConfig {
    fn seeds(&self, default: usize) -> Vec<u64> {
        (0..self.trials.unwrap_or(default)).map(|t| trial_seed(self.base_seed, t)).collect()
    }

    fn config(&self, n: f64, seed: u64) -> Result<DiscConfig> {
        DiscConfig::new(n, self.law.count(n)?, seed)
    }
}

fn fraction(flags: &[bool]) -> f64 {
    flags.iter().filter(|&&b| b).count() as f64 / flags.len().max(1) as f64
}

fn collect<T>(v: Vec<Result<T>>) -> Result<Vec<T>> {
    v.into_iter().collect()
}

/// Every degree strictly inside `(pi/3 lambda, 2 pi lambda)` at n = 40.
pub fn degree_window(cfg: &SuiteConfig) -> Result<CheckResult> {
    let n = 40.0;
    let seeds = cfg.seeds(50);
    let runs = collect(par::map_slice(cfg.exec, &seeds, |&s| {
        let dc = cfg.config(n, s)?;
        let lambda = dc.lambda();
        let d = degree_stats(&build_comm_graph(&dc));
        Ok((d, lambda))
    }))?;
    let lambda = runs.first().map_or(0.0, |r| r.1);
    let (lo, hi) = (PI / 3.0 * lambda, 2.0 * PI * lambda);
    let ok: Vec<bool> = runs.iter().map(|(d, _)| (d.min as f64) > lo && (d.max as f64) < hi).collect();
    let min = runs.iter().map(|r| r.0.min).min().unwrap_or(0);
    let max = runs.iter().map(|r| r.0.max).max().unwrap_or(0);
    let frac = fraction(&ok);
    Ok(CheckResult::new(
        "degree_window",
        frac,
        ">= 0.95",
        frac >= 0.95,
        format!("n=40 seeds={} window=({lo:.3}, {hi:.3}) observed degrees {min}..{max}", seeds.len()),
    ))
}

/// Sampled-source eccentricity at most 6n at n = 30.
pub fn hop_diameter(cfg: &SuiteConfig) -> Result<CheckResult> {
    let n = 30.0;
    let seeds = cfg.seeds(50);
    let diam = collect(par::map_slice(cfg.exec, &seeds, |&s| {
        let g = build_comm_graph(&cfg.config(n, s)?);
        graph_diameter_with(&g, DiameterMode::Sampled { sources: 32, seed: s }, Exec::Sequential)
    }));
    let (frac, detail) = match diam {
        Ok(d) => {
            let ok: Vec<bool> = d.iter().map(|&x| x as f64 <= 6.0 * n).collect();
            (fraction(&ok), format!("n=30 seeds={} max sampled eccentricity {}", seeds.len(), d.iter().max().unwrap()))
        }
        Err(e) => (0.0, format!("n=30: {e}")),
    };
    Ok(CheckResult::new("hop_diameter", frac, "== 1.0", frac >= 1.0, detail))
}

/// Connected at the working density, disconnected at `n^2` points.
pub fn connectivity_threshold(cfg: &SuiteConfig) -> Result<CheckResult> {
    let n: f64 = 30.0;
    let seeds = cfg.seeds(50);
    let sparse = (n * n).ceil() as usize;
    let runs = collect(par::map_slice(cfg.exec, &seeds, |&s| {
        let dense = is_connected(&build_comm_graph(&cfg.config(n, s)?));
        let thin = is_connected(&build_comm_graph(&DiscConfig::new(n, sparse, s)?));
        Ok((dense, !thin))
    }))?;
    let dense = fraction(&runs.iter().map(|r| r.0).collect::<Vec<_>>());
    let thin = fraction(&runs.iter().map(|r| r.1).collect::<Vec<_>>());
    let stat = dense.min(thin);
    Ok(CheckResult::new(
        "connectivity_threshold",
        stat,
        ">= 0.95",
        stat >= 0.95,
        format!("n=30 seeds={} connected at f(n): {dense:.2}, disconnected at n^2: {thin:.2}", seeds.len()),
    ))
}

/// Boundary size per unit radius, and the depth of the boundary layer
/// measured in units of `3 log n / lambda`, across n in {15, 20, 25}.
pub fn boundary_checks(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let grid = [15.0, 20.0, 25.0];
    let seeds = cfg.seeds(20);
    let jobs: Vec<(f64, u64)> = grid.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect();
    let runs = collect(par::map_slice(cfg.exec, &jobs, |&(n, s)| {
        let dc = cfg.config(n, s)?;
        let g = build_comm_graph(&dc);
        let r = boundary_stats(&g, &dc);
        Ok((r.ratio_count_over_n, r.max_rim_distance * dc.lambda() / (3.0 * n.ln())))
    }))?;
    let per_n = |pick: fn(&(f64, f64)) -> f64, reduce: fn(&[f64]) -> f64| -> Vec<f64> {
        runs.chunks(seeds.len()).map(|c| reduce(&c.iter().map(pick).collect::<Vec<_>>())).collect()
    };
    let ratios = per_n(|r| r.0, |v| v.iter().sum::<f64>() / v.len() as f64);
    // Pilot constant per n: the 95th percentile of the scaled depth.
    let depth = per_n(
        |r| r.1,
        |v| {
            let mut v = v.to_vec();
            v.sort_by(f64::total_cmp);
            v[((v.len() as f64 * 0.95).ceil() as usize).clamp(1, v.len()) - 1]
        },
    );
    let spread = |v: &[f64]| {
        let max = v.iter().copied().fold(f64::MIN, f64::max);
        let min = v.iter().copied().fold(f64::MAX, f64::min);
        if min > 0.0 {
            max / min
        } else {
            f64::INFINITY
        }
    };
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ");
    let (s1, s2) = (spread(&ratios), spread(&depth));
    Ok(vec![
        CheckResult::new(
            "boundary_size",
            s1,
            "<= 2",
            s1 <= 2.0,
            format!("mean count/n at n=15,20,25: [{}] seeds={}", fmt(&ratios), seeds.len()),
        ),
        CheckResult::new(
            "boundary_depth",
            s2,
            "<= 2",
            s2 <= 2.0,
            format!("pilot constant (95th pct of depth*lambda/(3 log n)) at n=15,20,25: [{}]", fmt(&depth)),
        ),
    ])
}

/// All Step 1A blue agents within 3/5 of the rim at n = 25.
pub fn blue_near_rim(cfg: &SuiteConfig) -> Result<CheckResult> {
    let n = 25.0;
    let seeds = cfg.seeds(50);
    let runs = collect(par::map_slice(cfg.exec, &seeds, |&s| {
        let g = build_comm_graph(&cfg.config(n, s)?);
        let c = step1a_classify(&g, &cfg.params, &cfg.cost);
        let depths: Vec<f64> =
            (0..g.len()).filter(|&v| c.colors[v] == Color::Blue).map(|v| n - g.point(v).norm()).collect();
        let deepest = depths.iter().copied().fold(0.0, f64::max);
        Ok((deepest, depths.len(), g.len()))
    }))?;
    let ok: Vec<bool> = runs.iter().map(|r| r.0 <= 0.6).collect();
    let frac = fraction(&ok);
    let deepest = runs.iter().map(|r| r.0).fold(0.0, f64::max);
    let blue_share = runs.iter().map(|r| r.1 as f64 / r.2 as f64).sum::<f64>() / runs.len().max(1) as f64;
    Ok(CheckResult::new(
        "blue_near_rim",
        frac,
        ">= 0.95",
        frac >= 0.95,
        format!(
            "n=25 K={} seeds={} deepest blue {deepest:.3} from rim, mean blue share {blue_share:.3}",
            cfg.params.orientations,
            seeds.len()
        ),
    ))
}

/// Bits read by the worst string against all others, and the per-pair mean.
pub fn string_bound(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let (count, k) = (10_000, 46);
    let seeds = cfg.seeds(30);
    let runs =
        collect(par::map_slice(cfg.exec, &seeds, |&s| string_read_experiment_with(count, k, s, Exec::Sequential)))?;
    let ok: Vec<bool> = runs.iter().map(|r| r.max_total_bits as f64 <= 2.2 * count as f64).collect();
    let frac = fraction(&ok);
    let worst = runs.iter().map(|r| r.max_total_bits).max().unwrap_or(0);
    let mean = runs.iter().map(|r| r.per_pair_mean).sum::<f64>() / runs.len() as f64;
    Ok(vec![
        CheckResult::new(
            "string_max_bits",
            frac,
            ">= 0.95",
            frac >= 0.95,
            format!("n_strings={count} k={k} seeds={} worst X/n = {:.4}", seeds.len(), worst as f64 / count as f64),
        ),
        CheckResult::new(
            "string_pair_mean",
            mean,
            "in [1.9, 2.1]",
            (1.9..=2.1).contains(&mean),
            format!("mean over {} seeds", seeds.len()),
        ),
    ])
}

/// Unique leader and full merge, and linear growth of the median total time.
pub fn end_to_end(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let spec = ScalingSpec {
        n_grid: vec![15.0, 30.0, 60.0],
        law: cfg.law.clone(),
        trials: cfg.trials.unwrap_or(50),
        base_seed: cfg.base_seed,
        params: cfg.params,
        cost: cfg.cost,
        exec: cfg.exec,
    };
    let report = scaling_experiment(&spec)?;
    let fractions: Vec<f64> = report.per_n.iter().map(|s| s.success_fraction).collect();
    let worst = fractions.iter().copied().fold(1.0, f64::min);
    let last = fractions.last().copied().unwrap_or(0.0);
    let leaders: Vec<usize> = report.rows.iter().map(|r| r.leader_count).collect();
    let mean_leaders = leaders.iter().sum::<usize>() as f64 / leaders.len() as f64;
    let fmt = fractions.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join(", ");
    let slope = report.slope;
    Ok(vec![
        CheckResult::new(
            "merge_success",
            worst,
            ">= 0.95",
            worst >= 0.95,
            format!("success at n=15,30,60: [{fmt}], mean leader count {mean_leaders:.2}"),
        ),
        CheckResult::new(
            "merge_success_largest_n",
            last,
            ">= 0.9",
            last >= 0.9,
            format!("n=60 trials={}", spec.trials),
        ),
        CheckResult::new(
            "time_slope",
            slope.unwrap_or(f64::NAN),
            "in [0.8, 1.2]",
            slope.is_some_and(|s| (0.8..=1.2).contains(&s)),
            match slope {
                Some(_) => {
                    let m: Vec<String> = report
                        .per_n
                        .iter()
                        .map(|s| s.median_t_total.map_or("-".into(), |m| format!("{m:.1}")))
                        .collect();
                    format!("median t_total at n=15,30,60: [{}]", m.join(", "))
                }
                None => "fewer than two n values with a successful run".into(),
            },
        ),
    ])
}

/// Simplified CSEC baseline: connectivity kept, convergence, superlinear cost.
pub fn baseline_contrast(cfg: &SuiteConfig) -> Result<CheckResult> {
    let grid = [6.0, 9.0, 12.0];
    let runs = collect(par::map_slice(cfg.exec, &grid, |&n| {
        run_asy(&cfg.config(n, cfg.base_seed)?, &AsyOptions::for_radius(n))
    }))?;
    let all_ok = runs.iter().all(|r| r.converged && r.connectivity_preserved);
    let pts: Vec<(f64, f64)> = grid.iter().zip(&runs).map(|(&n, r)| (n, r.comp_cost)).collect();
    let slope = loglog_slope(&pts);
    let costs: Vec<String> = runs.iter().map(|r| format!("{:.0}/{}r", r.comp_cost, r.rounds)).collect();
    Ok(CheckResult::new(
        "baseline_contrast",
        slope.unwrap_or(f64::NAN),
        ">= 1.5",
        all_ok && slope.is_some_and(|s| s >= 1.5),
        format!("cost/rounds at n=6,9,12: [{}], converged and connected: {all_ok}", costs.join(", ")),
    ))
}

/// Coin-flip election among 1024 mutually visible agents.
pub fn election(cfg: &SuiteConfig) -> Result<CheckResult> {
    let count = 1024;
    let seeds = cfg.seeds(200);
    let runs = collect(par::map_slice(cfg.exec, &seeds, |&s| global_visibility_election(count, s)))?;
    let unique = runs.iter().all(|r| r.contenders_per_round.last() == Some(&1));
    let mean = runs.iter().map(|r| r.rounds as f64).sum::<f64>() / runs.len() as f64;
    Ok(CheckResult::new(
        "election",
        mean,
        "<= 30 with a unique winner",
        unique && mean <= 3.0 * (count as f64).log2(),
        format!("count={count} seeds={} unique winner every time: {unique}", seeds.len()),
    ))
}

/// Runs every check in order.
pub fn lemma_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = vec![degree_window(cfg)?, hop_diameter(cfg)?, connectivity_threshold(cfg)?];
    out.extend(boundary_checks(cfg)?);
    out.push(blue_near_rim(cfg)?);
    out.extend(string_bound(cfg)?);
    out.extend(end_to_end(cfg)?);
    out.push(baseline_contrast(cfg)?);
    out.push(election(cfg)?);
    Ok(out)
}
