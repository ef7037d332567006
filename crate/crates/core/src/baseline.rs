//! Smallest-enclosing-circle rendezvous baseline with computation-inclusive
//! cost.
//!
//! A simplified synchronous variant of the classical circumcentre algorithm:
//! each round every robot computes the smallest enclosing circle of its
//! closed unit neighbourhood and steps toward its centre by at most
//! `step_cap`, while staying inside the radius-1/2 disc around the midpoint
//! to each current neighbour. Two neighbours both stay within 1/2 of their
//! shared midpoint, so no edge is ever lost. A round costs one unit per
//! point each robot has to process, i.e. the sum of closed-neighbourhood
//! sizes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sample_uniform_disc, smallest_enclosing_circle, DiscConfig, Point2};
use crate::par::{self, Exec};
use crate::rgg::{is_connected, CommGraph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsyOptions {
    pub step_cap: f64,
    /// Stop once the swarm's enclosing radius drops below this.
    pub tol: f64,
    pub max_rounds: usize,
    /// Re-test connectivity after every round.
    pub check_connectivity: bool,
}

impl AsyOptions {
    pub fn for_radius(n: f64) -> Self {
        AsyOptions { step_cap: 0.25, tol: 1e-3 * n, max_rounds: 20_000, check_connectivity: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    pub rounds: usize,
    pub comp_cost: f64,
    pub converged: bool,
    pub final_spread: f64,
    /// Enclosing radius before the first round and after each round.
    pub spread_history: Vec<f64>,
    /// False if some round left the graph disconnected (only checked when
    /// requested).
    pub connectivity_preserved: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsyRound {
    pub positions: Vec<Point2>,
    pub cost: f64,
}

/// One synchronous round.
pub fn asy_round(positions: &[Point2], step_cap: f64) -> AsyRound {
    asy_round_with(positions, step_cap, Exec::default())
}

pub fn asy_round_with(positions: &[Point2], step_cap: f64, exec: Exec) -> AsyRound {
    let g = CommGraph::from_points_with(positions.to_vec(), exec);
    let moved = par::map_range(exec, positions.len(), |i| step_robot(&g, i, step_cap));
    let cost = (0..g.len()).map(|i| g.degree(i) + 1).sum::<usize>() as f64;
    AsyRound { positions: moved, cost }
}

fn step_robot(g: &CommGraph, i: usize, step_cap: f64) -> Point2 {
    let here = g.point(i);
    let mut hood: Vec<Point2> = g.neighbors(i).iter().map(|&j| g.point(j as usize)).collect();
    hood.push(here);
    let center = smallest_enclosing_circle(&hood).expect("neighbourhood contains the robot").center;
    let offset = center - here;
    let len = offset.norm();
    if len < 1e-15 {
        return here;
    }
    let step = offset * (step_cap / len).min(1.0);
    let mut t: f64 = 1.0;
    let a = step.norm2();
    for &j in g.neighbors(i) {
        let w = here - here.midpoint(g.point(j as usize));
        let b = w.dot(step);
        let c = (w.norm2() - 0.25).min(0.0);
        // Largest root of a t^2 + 2 b t + c = 0.
        let root = (-b + (b * b - a * c).max(0.0).sqrt()) / a;
        t = t.min(root.max(0.0));
    }
    here + step * t
}

/// Samples `cfg` and runs rounds until the swarm fits in a circle of radius
/// `opts.tol` or `opts.max_rounds` is reached.
pub fn run_asy(cfg: &DiscConfig, opts: &AsyOptions) -> Result<BaselineReport> {
    run_asy_on(sample_uniform_disc(cfg), opts)
}

pub fn run_asy_on(mut positions: Vec<Point2>, opts: &AsyOptions) -> Result<BaselineReport> {
    if positions.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !is_connected(&CommGraph::from_points(positions.clone())) {
        return Err(Error::Disconnected);
    }
    let mut spread = smallest_enclosing_circle(&positions)?.radius;
    let mut history = vec![spread];
    let mut comp_cost = 0.0;
    let mut rounds = 0;
    let mut connectivity_preserved = true;
    while spread >= opts.tol && rounds < opts.max_rounds {
        let round = asy_round(&positions, opts.step_cap);
        positions = round.positions;
        comp_cost += round.cost;
        rounds += 1;
        spread = smallest_enclosing_circle(&positions)?.radius;
        history.push(spread);
        if opts.check_connectivity && !is_connected(&CommGraph::from_points(positions.clone())) {
            connectivity_preserved = false;
        }
    }
    Ok(BaselineReport {
        rounds,
        comp_cost,
        converged: spread < opts.tol,
        final_spread: spread,
        spread_history: history,
        connectivity_preserved,
    })
}
