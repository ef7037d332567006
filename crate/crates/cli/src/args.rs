use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rendezvous_core::analysis::checks::DEFAULT_SEED;
use rendezvous_core::density::DensityLaw;
use rendezvous_core::protocol::{CostModel, ProtocolParams};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rendezvous",
    version,
    about = "Seeded simulator for O(n) multi-agent rendezvous on random geometric graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run the full protocol once per seed.
    Rendezvous,
    /// Sweep n and fit the growth of the median total time.
    Scaling,
    /// Run every statistical check.
    Lemmas,
    /// Bit-reading experiment on random strings.
    Strings {
        /// Number of strings.
        #[arg(long, default_value_t = 10_000)]
        strings: usize,
        /// String length; defaults to ceil(log2 strings) + 32.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Simplified CSEC-averaging baseline.
    Asy {
        #[arg(long, default_value_t = 0.25)]
        step_cap: f64,
        /// Convergence radius; defaults to 1e-3 * n.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 20_000)]
        max_rounds: usize,
    },
    /// Boundary statistics.
    Boundary,
}

#[derive(Debug, Args)]
struct Common {
    /// Disc radius, or a comma-separated increasing list.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_n_list)]
    n: Option<NList>,
    /// Point count as an expression in n over numbers, n, log(), ^, *, +.
    #[arg(long, global = true, default_value = rendezvous_core::density::DEFAULT_LAW, value_parser = parse_law)]
    density: DensityLaw,
    /// Base seed; trial t uses seed + t.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Seeds per n (command-specific default).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    /// Output file; defaults to $RENDEZVOUS_OUT_DIR/<command>.<format>, else stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Suppress the summary printed on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Worker threads for parallel dispatch.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    #[arg(long, global = true)]
    orientations: Option<usize>,
    #[arg(long, global = true)]
    r_blue: Option<f64>,
    #[arg(long, global = true)]
    r_green: Option<f64>,
    #[arg(long, global = true)]
    r_yellow: Option<f64>,
    #[arg(long, global = true)]
    min_bits: Option<usize>,
    #[arg(long, global = true)]
    storage_per_bit: Option<usize>,

    #[arg(long, global = true)]
    scan_rate: Option<f64>,
    #[arg(long, global = true)]
    bit_op: Option<f64>,
    #[arg(long, global = true)]
    signal_op: Option<f64>,
    #[arg(long, global = true)]
    relay_hop: Option<f64>,
}

#[derive(Debug, Clone)]
struct NList(Vec<f64>);

fn parse_n_list(s: &str) -> Result<NList, String> {
    let values = s
        .split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|_| format!("`{t}` is not a number"))?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(format!("n must be > 0, got {t}"))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err("n list must be strictly increasing".into());
    }
    Ok(NList(values))
}

fn parse_law(s: &str) -> Result<DensityLaw, String> {
    DensityLaw::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandKind {
    Rendezvous,
    Scaling,
    Lemmas,
    Strings { strings: usize, k: usize },
    Asy { step_cap: f64, tol: Option<f64>, max_rounds: usize },
    Boundary,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Rendezvous => "rendezvous",
            CommandKind::Scaling => "scaling",
            CommandKind::Lemmas => "lemmas",
            CommandKind::Strings { .. } => "strings",
            CommandKind::Asy { .. } => "asy",
            CommandKind::Boundary => "boundary",
        }
    }

    fn default_n(&self) -> Vec<f64> {
        match self {
            CommandKind::Scaling => vec![15.0, 30.0, 60.0],
            CommandKind::Asy { .. } => vec![6.0, 9.0, 12.0],
            CommandKind::Boundary => vec![15.0, 20.0, 25.0],
            _ => vec![30.0],
        }
    }

    fn default_trials(&self) -> Option<usize> {
        match self {
            CommandKind::Rendezvous | CommandKind::Asy { .. } => Some(1),
            CommandKind::Scaling => Some(50),
            CommandKind::Strings { .. } => Some(30),
            CommandKind::Boundary => Some(20),
            CommandKind::Lemmas => None,
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n_grid: Vec<f64>,
    pub law: DensityLaw,
    pub seed: u64,
    /// `None` only for `lemmas`, where each check keeps its own default.
    pub trials: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: Option<usize>,
    pub quiet: bool,
    pub params: ProtocolParams,
    pub cost: CostModel,
}

impl RunConfig {
    /// Where output goes: `--out`, else the environment directory, else stdout.
    pub fn output_path(&self) -> Option<PathBuf> {
        self.out.clone().or_else(|| {
            std::env::var_os(crate::OUT_DIR_ENV)
                .filter(|d| !d.is_empty())
                .map(|d| PathBuf::from(d).join(format!("{}.{}", self.command.name(), self.format.extension())))
        })
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let c = cli.common;
    let command = match cli.command {
        Cmd::Rendezvous => CommandKind::Rendezvous,
        Cmd::Scaling => CommandKind::Scaling,
        Cmd::Lemmas => CommandKind::Lemmas,
        Cmd::Strings { strings, k } => {
            if strings < 2 {
                return Err(CliError::Usage("--strings must be >= 2".into()));
            }
            let k = k.unwrap_or_else(|| rendezvous_core::analysis::default_string_length(strings));
            if k < 1 {
                return Err(CliError::Usage("--k must be >= 1".into()));
            }
            CommandKind::Strings { strings, k }
        }
        Cmd::Asy { step_cap, tol, max_rounds } => {
            if !(step_cap.is_finite() && step_cap > 0.0) || tol.is_some_and(|t| !(t.is_finite() && t > 0.0)) {
                return Err(CliError::Usage("--step-cap and --tol must be > 0".into()));
            }
            CommandKind::Asy { step_cap, tol, max_rounds }
        }
        Cmd::Boundary => CommandKind::Boundary,
    };

    let defaults = ProtocolParams::default();
    let params = ProtocolParams {
        orientations: c.orientations.unwrap_or(defaults.orientations),
        r_blue: c.r_blue.unwrap_or(defaults.r_blue),
        r_green: c.r_green.unwrap_or(defaults.r_green),
        r_yellow: c.r_yellow.unwrap_or(defaults.r_yellow),
        min_bits: c.min_bits.unwrap_or(defaults.min_bits),
        storage_per_bit: c.storage_per_bit.unwrap_or(defaults.storage_per_bit),
    };
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let base = CostModel::default();
    let cost = CostModel {
        scan_rate: c.scan_rate.unwrap_or(base.scan_rate),
        bit_op: c.bit_op.unwrap_or(base.bit_op),
        signal_op: c.signal_op.unwrap_or(base.signal_op),
        relay_hop: c.relay_hop.unwrap_or(base.relay_hop),
        ..base
    };
    cost.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    Ok(RunConfig {
        n_grid: c.n.map_or_else(|| command.default_n(), |l| l.0),
        trials: c.trials.map(|t| t as usize).or_else(|| command.default_trials()),
        command,
        law: c.density,
        seed: c.seed,
        out: c.out,
        format: c.format,
        jobs: c.jobs.map(|j| j as usize),
        quiet: c.quiet,
        params,
        cost,
    })
}
