//! Seeded simulator for randomized multi-agent rendezvous on random
//! geometric graphs in a disc.
//!
//! Points are dropped uniformly in a disc of radius `n`, joined whenever they
//! are within unit distance, and then run a leader-election protocol that
//! classifies rim points, stores random bit strings in neighbouring agents,
//! compares the strings along the rim and finally broadcasts a merge wave from
//! the elected leader. Every phase charges abstract time to a ledger so that
//! the linear-in-`n` running time can be checked empirically.
//!
//! Alongside the protocol the crate carries the graph lemmas it relies on
//! (degree window, hop diameter, boundary size), a bit-reading experiment and
//! a smallest-enclosing-circle rendezvous baseline for comparison.
//!
//! All randomness flows from [`DiscConfig::seed`] through [`rng`], so every
//! run is replayable bit for bit.

pub mod analysis;
pub mod baseline;
pub mod boundary;
pub mod density;
pub mod error;
pub mod geometry;
pub mod par;
pub mod protocol;
pub mod rgg;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{Circle, DiscConfig, Point2};
pub use rgg::CommGraph;
