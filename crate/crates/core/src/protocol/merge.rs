//! Red wave from the leader and straight-line travel to it.

use crate::error::{Error, Result};
use crate::rgg::{bfs_depths, CommGraph};

use super::CostModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeTimes {
    /// Hops of the red wave: the leader's eccentricity.
    pub depth: usize,
    pub t_wave: f64,
    pub t_travel: f64,
}

/// The red wave is a BFS from `leader` (one `relay_hop` per level); every
/// agent then walks straight to the stationary leader.
pub fn step2_merge(g: &CommGraph, leader: usize, cost: &CostModel) -> Result<MergeTimes> {
    let depths = bfs_depths(g, leader);
    if depths.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    let depth = depths.into_iter().max().unwrap_or(0) as usize;
    let target = g.point(leader);
    let farthest = g.points().iter().map(|p| p.dist(target)).fold(0.0, f64::max);
    Ok(MergeTimes { depth, t_wave: depth as f64 * cost.relay_hop, t_travel: farthest / cost.move_speed })
}
