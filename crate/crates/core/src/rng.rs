//! Seed and sub-stream derivation.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] seeded with
//! `seed_from_u64(run_seed)`. Independent consumers use distinct ChaCha
//! streams: the top byte of the 64-bit stream id names the purpose and the
//! low 56 bits carry an index (agent id, trial number, ...). Two consumers
//! with different `(purpose, index)` pairs never share key-stream output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the crate.
pub type SimRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Purpose {
    /// Point positions.
    Sampling = 1,
    /// Per-agent random bits in string construction.
    AgentBits = 2,
    /// Coin flips of the global-visibility election, one stream per agent.
    Election = 3,
    /// Random strings of the bit-reading experiment.
    Strings = 4,
    /// Source selection for sampled diameters.
    Diameter = 5,
    /// Shuffles inside smallest-enclosing-circle computations.
    Shuffle = 6,
}

const INDEX_MASK: u64 = (1 << 56) - 1;

/// Returns the generator for `(purpose, index)` under `seed`.
pub fn stream(seed: u64, purpose: Purpose, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 56) | (index & INDEX_MASK));
    rng
}
