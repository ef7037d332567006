//! Experiments: bit-reading totals, scaling sweeps and the lemma checks.

pub mod checks;

use serde::{Deserialize, Serialize};

use crate::boundary::boundary_labels_with;
use crate::density::DensityLaw;
use crate::error::{Error, Result};
use crate::geometry::DiscConfig;
use crate::par::{self, Exec};
use crate::protocol::{simulate, CostModel, ProtocolParams};
use crate::rgg::CommGraph;
use crate::rng::{self, Purpose};

pub use checks::{lemma_suite, CheckResult, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StringExperimentResult {
    pub n_strings: usize,
    pub k: usize,
    /// Largest per-string total of bits read.
    pub max_total_bits: u64,
    pub mean_total_bits: f64,
    /// Mean bits read per ordered pair.
    pub per_pair_mean: f64,
}

/// Default string length: `ceil(log2 n_strings) + 32`.
pub fn default_string_length(n_strings: usize) -> usize {
    (n_strings.max(1) as f64).log2().ceil() as usize + 32
}

/// Bit strings packed most-significant-first into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedStrings {
    k: usize,
    words: usize,
    data: Vec<u64>,
}

impl PackedStrings {
    pub fn random(n_strings: usize, k: usize, seed: u64) -> Self {
        use rand::RngCore;
        let words = k.div_ceil(64);
        let mut rng = rng::stream(seed, Purpose::Strings, 0);
        let mut data = vec![0u64; n_strings * words];
        for s in 0..n_strings {
            for w in 0..words {
                data[s * words + w] = rng.next_u64() & Self::mask(k, w);
            }
        }
        PackedStrings { k, words, data }
    }

    pub fn from_bits(strings: &[Vec<u8>]) -> Result<Self> {
        let k = strings.first().map_or(0, Vec::len);
        if k == 0 || strings.iter().any(|s| s.len() != k) {
            return Err(Error::InvalidParameter("strings must be non-empty and of equal length".into()));
        }
        let words = k.div_ceil(64);
        let mut data = vec![0u64; strings.len() * words];
        for (s, bits) in strings.iter().enumerate() {
            for (t, &b) in bits.iter().enumerate() {
                if b != 0 {
                    data[s * words + t / 64] |= 1 << (63 - t % 64);
                }
            }
        }
        Ok(PackedStrings { k, words, data })
    }

    fn mask(k: usize, word: usize) -> u64 {
        let used = (k - word * 64).min(64);
        if used == 64 {
            u64::MAX
        } else {
            !(u64::MAX >> used)
        }
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.words.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn bits(&self, s: usize) -> Vec<u8> {
        (0..self.k).map(|t| ((self.row(s)[t / 64] >> (63 - t % 64)) & 1) as u8).collect()
    }

    fn row(&self, s: usize) -> &[u64] {
        &self.data[s * self.words..(s + 1) * self.words]
    }

    /// Bits of `b` read by `a` under left-to-right-until-mismatch.
    #[inline]
    pub fn bits_read(&self, a: usize, b: usize) -> usize {
        for (w, (x, y)) in self.row(a).iter().zip(self.row(b)).enumerate() {
            let diff = x ^ y;
            if diff != 0 {
                return w * 64 + diff.leading_zeros() as usize + 1;
            }
        }
        self.k
    }

    /// `X_i = sum over j != i of bits_read(i, j)` for every `i`.
    pub fn totals(&self, exec: Exec) -> Vec<u64> {
        let n = self.len();
        if exec.is_parallel() && par::threads() > 1 {
            return par::map_range(exec, n, |i| (0..n).filter(|&j| j != i).map(|j| self.bits_read(i, j) as u64).sum());
        }
        // The read count is symmetric, so one triangle suffices.
        let mut totals = vec![0u64; n];
        for i in 0..n {
            let (head, rest) = totals.split_at_mut(i + 1);
            for (offset, t) in rest.iter_mut().enumerate() {
                let r = self.bits_read(i, i + 1 + offset) as u64;
                head[i] += r;
                *t += r;
            }
        }
        totals
    }
}

fn summarize(packed: &PackedStrings, exec: Exec) -> StringExperimentResult {
    let n = packed.len();
    let totals = packed.totals(exec);
    let sum: u64 = totals.iter().sum();
    StringExperimentResult {
        n_strings: n,
        k: packed.k,
        max_total_bits: totals.iter().copied().max().unwrap_or(0),
        mean_total_bits: sum as f64 / n as f64,
        per_pair_mean: sum as f64 / (n * (n - 1)) as f64,
    }
}

/// Draws `n_strings` uniform `k`-bit strings and totals, for each, the bits it
/// reads from every other string.
pub fn string_read_experiment(n_strings: usize, k: usize, seed: u64) -> Result<StringExperimentResult> {
    string_read_experiment_with(n_strings, k, seed, Exec::default())
}

pub fn string_read_experiment_with(
    n_strings: usize,
    k: usize,
    seed: u64,
    exec: Exec,
) -> Result<StringExperimentResult> {
    if k < 1 || n_strings < 2 {
        return Err(Error::InvalidParameter("need k >= 1 and n_strings >= 2".into()));
    }
    Ok(summarize(&PackedStrings::random(n_strings, k, seed), exec))
}

/// Same experiment on caller-supplied strings.
pub fn string_read_experiment_on(strings: &[Vec<u8>]) -> Result<StringExperimentResult> {
    if strings.len() < 2 {
        return Err(Error::InvalidParameter("need at least two strings".into()));
    }
    Ok(summarize(&PackedStrings::from_bits(strings)?, Exec::default()))
}

/// One `(n, seed)` run of the full protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: f64,
    pub f: usize,
    pub seed: u64,
    pub t_total: f64,
    #[serde(rename = "t_1A")]
    pub t_1a: f64,
    #[serde(rename = "t_1B")]
    pub t_1b: f64,
    #[serde(rename = "t_1C")]
    pub t_1c: f64,
    pub t_wave: f64,
    pub t_travel: f64,
    pub success: bool,
    pub leader_count: usize,
    pub blue_count: usize,
    pub pink_count: usize,
    pub boundary_count: usize,
}

/// Column names of [`ScalingRow`], in order.
pub const SCALING_COLUMNS: [&str; 14] = [
    "n",
    "f",
    "seed",
    "t_total",
    "t_1A",
    "t_1B",
    "t_1C",
    "t_wave",
    "t_travel",
    "success",
    "leader_count",
    "blue_count",
    "pink_count",
    "boundary_count",
];

#[derive(Debug, Clone)]
pub struct ScalingSpec {
    pub n_grid: Vec<f64>,
    pub law: DensityLaw,
    pub trials: usize,
    pub base_seed: u64,
    pub params: ProtocolParams,
    pub cost: CostModel,
    pub exec: Exec,
}

impl ScalingSpec {
    pub fn new(n_grid: Vec<f64>, trials: usize) -> Self {
        ScalingSpec {
            n_grid,
            law: DensityLaw::default(),
            trials,
            base_seed: checks::DEFAULT_SEED,
            params: ProtocolParams::default(),
            cost: CostModel::default(),
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSummary {
    pub n: f64,
    pub runs: usize,
    pub successes: usize,
    pub success_fraction: f64,
    /// Median `t_total` over successful runs.
    pub median_t_total: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub per_n: Vec<ScalingSummary>,
    /// Least-squares slope of log median `t_total` against log `n`.
    pub slope: Option<f64>,
}

/// Seed of trial `t` under `base`.
pub fn trial_seed(base: u64, trial: usize) -> u64 {
    base.wrapping_add(trial as u64)
}

pub fn run_row(cfg: &DiscConfig, params: &ProtocolParams, cost: &CostModel, exec: Exec) -> Result<ScalingRow> {
    let g = CommGraph::from_points_with(crate::geometry::sample_uniform_disc(cfg), exec);
    let sim = simulate(&g, cfg.seed, params, cost)?;
    let boundary_count = boundary_labels_with(&g, exec).into_iter().filter(|&b| b).count();
    let r = sim.report;
    Ok(ScalingRow {
        n: cfg.n,
        f: cfg.f,
        seed: cfg.seed,
        t_total: r.t_total,
        t_1a: r.t_1a,
        t_1b: r.t_1b,
        t_1c: r.t_1c,
        t_wave: r.t_wave,
        t_travel: r.t_travel,
        success: r.success,
        leader_count: r.leader_count,
        blue_count: r.blue_count,
        pink_count: r.pink_count,
        boundary_count,
    })
}

/// Runs the protocol for every `(n, trial)` and fits the growth exponent of
/// the median total time. Rows come back ordered by `(n, seed)` whatever the
/// execution mode.
pub fn scaling_experiment(spec: &ScalingSpec) -> Result<ScalingReport> {
    if spec.trials < 1 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if spec.n_grid.is_empty() || spec.n_grid.windows(2).any(|w| w[1] <= w[0]) || spec.n_grid[0] <= 0.0 {
        return Err(Error::InvalidParameter("n grid must be positive and strictly increasing".into()));
    }
    spec.params.validate()?;
    spec.cost.validate()?;
    let mut jobs = Vec::new();
    for &n in &spec.n_grid {
        let f = spec.law.count(n)?;
        for t in 0..spec.trials {
            jobs.push(DiscConfig::new(n, f, trial_seed(spec.base_seed, t))?);
        }
    }
    let rows = par::map_slice(spec.exec, &jobs, |cfg| run_row(cfg, &spec.params, &spec.cost, Exec::Sequential))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let per_n: Vec<ScalingSummary> = spec
        .n_grid
        .iter()
        .map(|&n| {
            let group: Vec<&ScalingRow> = rows.iter().filter(|r| r.n == n).collect();
            let ok: Vec<f64> = group.iter().filter(|r| r.success).map(|r| r.t_total).collect();
            ScalingSummary {
                n,
                runs: group.len(),
                successes: ok.len(),
                success_fraction: ok.len() as f64 / group.len() as f64,
                median_t_total: median(&ok),
            }
        })
        .collect();
    let fit: Vec<(f64, f64)> = per_n.iter().filter_map(|s| s.median_t_total.map(|m| (s.n, m))).collect();
    Ok(ScalingReport { slope: loglog_slope(&fit), rows, per_n })
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { 0.5 * (v[mid - 1] + v[mid]) })
}

/// Least-squares slope of `ln y` on `ln x`; `None` with fewer than two
/// distinct `x` or any non-positive value.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (logs.len() >= 2 && sxx > 1e-12).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::compare_strings;

    #[test]
    fn packed_reads_match_bitwise_comparison() {
        for k in [1, 5, 63, 64, 65, 130] {
            let packed = PackedStrings::random(40, k, k as u64);
            for a in 0..40 {
                for b in 0..40 {
                    let direct = compare_strings(&packed.bits(a), &packed.bits(b)).unwrap().bits_read;
                    assert_eq!(packed.bits_read(a, b), direct, "k={k} a={a} b={b}");
                }
            }
            let repacked = PackedStrings::from_bits(&(0..40).map(|s| packed.bits(s)).collect::<Vec<_>>()).unwrap();
            assert_eq!(repacked, packed);
        }
    }

    #[test]
    fn totals_agree_across_modes() {
        let packed = PackedStrings::random(300, 40, 2);
        assert_eq!(packed.totals(Exec::Sequential), packed.totals(Exec::Parallel));
        let naive: Vec<u64> =
            (0..300).map(|i| (0..300).filter(|&j| j != i).map(|j| packed.bits_read(i, j) as u64).sum()).collect();
        assert_eq!(packed.totals(Exec::Sequential), naive);
    }

    #[test]
    fn equal_strings_read_in_full() {
        let s = vec![1, 0, 1, 1, 0, 0, 1];
        let r = string_read_experiment_on(&[s.clone(), s]).unwrap();
        assert_eq!(r.max_total_bits, 7);
        assert_eq!(r.mean_total_bits, 7.0);
        assert_eq!(r.per_pair_mean, 7.0);
    }

    #[test]
    fn single_bit_strings_read_one_bit_each() {
        let r = string_read_experiment(500, 1, 4).unwrap();
        assert_eq!(r.max_total_bits, 499);
        assert_eq!(r.mean_total_bits, 499.0);
    }

    #[test]
    fn bad_arguments() {
        assert!(string_read_experiment(1, 10, 0).is_err());
        assert!(string_read_experiment(10, 0, 0).is_err());
        assert!(string_read_experiment_on(&[vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn per_pair_mean_tracks_exact_expectation() {
        // E[bits read] = sum_{t<k} t 2^-t + k 2^-(k-1).
        let k = 40;
        let exact: f64 =
            (1..k).map(|t| t as f64 * 0.5f64.powi(t as i32)).sum::<f64>() + k as f64 * 0.5f64.powi(k as i32 - 1);
        assert!((exact - 2.0).abs() < 1e-9);
        let r = string_read_experiment(10_000, k, 11).unwrap();
        assert!((r.per_pair_mean - exact).abs() / exact < 0.05, "{}", r.per_pair_mean);
        assert!(r.max_total_bits as f64 >= r.mean_total_bits);
        assert!(r.mean_total_bits >= (r.n_strings - 1) as f64);
    }

    #[test]
    fn default_length() {
        assert_eq!(default_string_length(10_000), 46);
        assert_eq!(default_string_length(1024), 42);
    }

    #[test]
    fn slope_recovers_linear_law() {
        let pts: Vec<(f64, f64)> = [15.0, 30.0, 60.0, 120.0].iter().map(|&n| (n, 3.7 * n)).collect();
        assert!((loglog_slope(&pts).unwrap() - 1.0).abs() < 1e-6);
        let quad: Vec<(f64, f64)> = [2.0, 3.0, 5.0].iter().map(|&n| (n, n * n)).collect();
        assert!((loglog_slope(&quad).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&[(10.0, 5.0)]), None);
        assert_eq!(loglog_slope(&[]), None);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    #[test]
    fn scaling_rejects_bad_grids() {
        assert!(scaling_experiment(&ScalingSpec::new(vec![10.0, 5.0], 1)).is_err());
        assert!(scaling_experiment(&ScalingSpec::new(vec![5.0], 0)).is_err());
    }

    #[test]
    fn single_n_has_no_slope_but_a_table() {
        let mut spec = ScalingSpec::new(vec![5.0], 1);
        spec.law = DensityLaw::parse("400").unwrap();
        let report = scaling_experiment(&spec).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.slope, None);
    }
}
