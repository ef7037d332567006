//! The linear-time leader-election-and-merge protocol.
//!
//! Phases, in order:
//!
//! 1. [`classify`]: every agent scans quadrants of its small neighbourhood at
//!    `K` orientations and turns blue (a candidate chief) if one is ever
//!    empty; the others become green, yellow or stay white depending on how
//!    close the nearest blue agent is.
//! 2. [`strings`]: each chief draws one random bit per green neighbour and
//!    stores two copies of the resulting string (stationary S and mobile M)
//!    in claimed yellow neighbours. Chiefs that cannot finish turn pink.
//! 3. [`walk`]: each surviving chief's M-string walks the ring of chiefs,
//!    comparing itself with every S-string it meets, and claims leadership if
//!    it returns home undefeated.
//! 4. [`merge`]: the leader broadcasts a red wave and everyone travels to it.
//!
//! Time is abstract and charged through a [`CostModel`].

pub mod classify;
pub mod election;
pub mod merge;
pub mod strings;
pub mod walk;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{DiscConfig, Point2};
use crate::rgg::{self, build_comm_graph, CommGraph};

pub use classify::{step1a_classify, Classification};
pub use election::{global_visibility_election, ElectionOutcome};
pub use merge::{step2_merge, MergeTimes};
pub use strings::{compare_strings, step1b_build_strings, Comparison, Registry, StringBuild, StringRecord};
pub use walk::{step1c_walk, WalkEnd, WalkOutcome, WalkTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    White,
    Blue,
    Green,
    Yellow,
    Purple,
    /// S-string headman.
    Brown,
    /// M-string headman.
    Orange,
    TailmanS,
    TailmanM,
    Middleman,
    Pink,
    Red,
}

impl Color {
    /// Colors worn by members of a storage string.
    pub fn is_string_member(self) -> bool {
        matches!(
            self,
            Color::Purple | Color::Brown | Color::Orange | Color::TailmanS | Color::TailmanM | Color::Middleman
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StringCopy {
    /// Stationary copy, read by walkers.
    S,
    /// Mobile copy, carried on the walk.
    M,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub id: usize,
    pub pos: Point2,
    pub color: Color,
    pub chief: Option<usize>,
    pub copy: Option<StringCopy>,
    /// Position in read order; 0 is the headman.
    pub string_index: Option<usize>,
    pub bit: Option<u8>,
}

impl AgentState {
    pub fn new(id: usize, pos: Point2) -> Self {
        AgentState { id, pos, color: Color::White, chief: None, copy: None, string_index: None, bit: None }
    }

    fn release(&mut self) {
        self.color = Color::White;
        self.chief = None;
        self.copy = None;
        self.string_index = None;
        self.bit = None;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    /// Number of scan orientations in a half turn.
    pub orientations: usize,
    /// Radius of the quadrant scan.
    pub r_blue: f64,
    /// A non-blue agent turns green when a blue agent is this close.
    pub r_green: f64,
    /// ... and yellow when the nearest blue agent is closer than this.
    pub r_yellow: f64,
    /// Chiefs with fewer green neighbours drop out immediately.
    pub min_bits: usize,
    /// Storage agents per bit (one per copy).
    pub storage_per_bit: usize,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        ProtocolParams { orientations: 16, r_blue: 0.5, r_green: 0.1, r_yellow: 0.5, min_bits: 4, storage_per_bit: 2 }
    }
}

impl ProtocolParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.orientations < 4 {
            return bad("orientations must be >= 4");
        }
        if !(self.r_blue > 0.0 && self.r_blue <= 1.0) {
            return bad("r_blue must lie in (0, 1]");
        }
        if !(self.r_green > 0.0 && self.r_green < self.r_yellow && self.r_yellow <= 1.0) {
            return bad("need 0 < r_green < r_yellow <= 1");
        }
        if self.min_bits < 1 {
            return bad("min_bits must be >= 1");
        }
        if self.storage_per_bit != 2 {
            return bad("storage_per_bit is fixed at 2 (one S and one M copy)");
        }
        Ok(())
    }
}

/// Abstract time charged per primitive action.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    /// Length per time unit; fixed at 1.
    pub move_speed: f64,
    /// Points identified per time unit during a sweep.
    pub scan_rate: f64,
    /// Time to generate, send or compare one bit.
    pub bit_op: f64,
    /// Time to switch, detect or locate a color signal.
    pub signal_op: f64,
    /// Time for the red wave to cross one hop.
    pub relay_hop: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel { move_speed: 1.0, scan_rate: 1.0, bit_op: 1.0, signal_op: 1.0, relay_hop: 1.0 }
    }
}

impl CostModel {
    pub fn validate(&self) -> Result<()> {
        if self.move_speed != 1.0 {
            return Err(Error::InvalidParameter("move_speed is fixed at 1".into()));
        }
        let all_positive =
            [self.scan_rate, self.bit_op, self.signal_op, self.relay_hop].iter().all(|v| v.is_finite() && *v > 0.0);
        if !all_positive {
            return Err(Error::InvalidParameter("cost constants must be finite and > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    GraphDisconnected,
    NoCandidates,
    LeaderCollision,
}

impl FailureReason {
    pub fn code(self) -> &'static str {
        match self {
            FailureReason::GraphDisconnected => "graph disconnected",
            FailureReason::NoCandidates => "no candidates",
            FailureReason::LeaderCollision => "leader collision",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeReport {
    pub leader_ids: Vec<usize>,
    pub leader_count: usize,
    pub success: bool,
    pub t_1a: f64,
    pub t_1b: f64,
    pub t_1c: f64,
    pub t_wave: f64,
    pub t_travel: f64,
    pub t_total: f64,
    /// Chiefs that dropped out while building strings.
    pub pink_count: usize,
    /// Agents that turned blue in the classification phase.
    pub blue_count: usize,
    pub failure: Option<FailureReason>,
}

/// Everything a run produces, including final agent states.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub report: MergeReport,
    pub states: Vec<AgentState>,
    pub registry: Registry,
    /// Positions after the merge phase (initial positions if it did not run).
    pub final_positions: Vec<Point2>,
}

/// Samples `cfg`, builds its graph and runs every phase.
pub fn run_rendezvous(cfg: &DiscConfig, params: &ProtocolParams, cost: &CostModel) -> Result<MergeReport> {
    let g = build_comm_graph(cfg);
    Ok(simulate(&g, cfg.seed, params, cost)?.report)
}

/// Runs every phase on a prebuilt graph. Parameter errors are returned as
/// `Err`; in-model failures are reported through `MergeReport::failure`.
pub fn simulate(g: &CommGraph, seed: u64, params: &ProtocolParams, cost: &CostModel) -> Result<Simulation> {
    params.validate()?;
    cost.validate()?;
    let connected = rgg::is_connected(g);
    let mut states: Vec<AgentState> = g.points().iter().enumerate().map(|(id, &p)| AgentState::new(id, p)).collect();

    let classification = step1a_classify(g, params, cost);
    for (state, &color) in states.iter_mut().zip(&classification.colors) {
        state.color = color;
    }
    let build = step1b_build_strings(&mut states, g, params, cost, seed);

    let mut report = MergeReport {
        leader_ids: Vec::new(),
        leader_count: 0,
        success: false,
        t_1a: classification.t_1a,
        t_1b: build.t_1b,
        t_1c: 0.0,
        t_wave: 0.0,
        t_travel: 0.0,
        t_total: 0.0,
        pink_count: build.pink.len(),
        blue_count: classification.chiefs.len(),
        failure: None,
    };
    let mut final_positions = g.points().to_vec();

    match step1c_walk(&states, &classification.chiefs, &build.registry, cost) {
        Err(_) => report.failure = Some(FailureReason::NoCandidates),
        Ok(walk) => {
            report.t_1c = walk.t_1c;
            report.leader_count = walk.leaders.len();
            report.leader_ids = walk.leaders.clone();
            if walk.leaders.len() != 1 {
                report.failure = Some(FailureReason::LeaderCollision);
            } else if connected {
                let leader = walk.leaders[0];
                let times = step2_merge(g, leader, cost)?;
                report.t_wave = times.t_wave;
                report.t_travel = times.t_travel;
                states[leader].color = Color::Red;
                final_positions = vec![g.point(leader); g.len()];
            }
        }
    }
    if !connected {
        report.failure = Some(FailureReason::GraphDisconnected);
    }
    report.success = report.failure.is_none();
    report.t_total = report.t_1a + report.t_1b + report.t_1c + report.t_wave + report.t_travel;
    Ok(Simulation { report, states, registry: build.registry, final_positions })
}
