//! Coin-flip election when every agent sees every other.
//!
//! All agents start red. Each round every red agent flips a fair coin and
//! turns blue on a zero. If every remaining red agent flips zero in the same
//! round, they all stay red and the round is repeated. The election ends
//! when one red agent is left.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{self, Purpose};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionOutcome {
    pub winner: usize,
    pub rounds: usize,
    /// Red agents remaining after each round.
    pub contenders_per_round: Vec<usize>,
}

pub fn global_visibility_election(count: usize, seed: u64) -> Result<ElectionOutcome> {
    if count == 0 {
        return Err(Error::InvalidParameter("election needs at least one agent".into()));
    }
    let mut streams: Vec<_> = (0..count).map(|id| rng::stream(seed, Purpose::Election, id as u64)).collect();
    let mut red: Vec<usize> = (0..count).collect();
    let mut contenders_per_round = Vec::new();
    while red.len() > 1 {
        let survivors: Vec<usize> = red.iter().copied().filter(|&id| streams[id].gen::<bool>()).collect();
        if !survivors.is_empty() {
            red = survivors;
        }
        contenders_per_round.push(red.len());
    }
    Ok(ElectionOutcome { winner: red[0], rounds: contenders_per_round.len(), contenders_per_round })
}
