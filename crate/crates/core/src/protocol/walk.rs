//! The comparison walk around the ring of chiefs.
//!
//! Chiefs (blue or pink) are ordered by polar angle about the disc centre,
//! ties broken by id, and the ring is closed. Every chief still holding a
//! string sends its M-copy around the ring starting just after itself,
//! walking the chords between consecutive chiefs. At each blue chief the
//! walker reads that chief's S-copy; pink chiefs are passed without reading.
//! A walker stops as soon as it reads a larger string (it lost) or a string
//! equal to its own (normally its own S-copy, one full circuit later), and in
//! the latter case claims leadership.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

use super::strings::{compare_strings, Registry};
use super::{AgentState, CostModel, StringCopy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkEnd {
    /// Read a larger S-string; dropped out.
    Lost { at: usize },
    /// Read a string equal to its own without meeting a larger one.
    Claimed { at: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkTrace {
    pub chief: usize,
    pub path_length: f64,
    pub bits_read: usize,
    pub end: WalkEnd,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkOutcome {
    /// Claimants, ascending.
    pub leaders: Vec<usize>,
    pub walks: Vec<WalkTrace>,
    pub t_1c: f64,
}

/// Ring order of chiefs around the origin.
pub fn ring_order(states: &[AgentState], chiefs: &[usize]) -> Vec<usize> {
    let mut order = chiefs.to_vec();
    order.sort_by(|&a, &b| states[a].pos.angle().total_cmp(&states[b].pos.angle()).then(a.cmp(&b)));
    order
}

/// Walks every registered string around the ring of `chiefs`.
///
/// Each walker's time is `path_length / move_speed + bits_read * bit_op`;
/// `t_1c` is the slowest walker. Fails with [`Error::NoCandidates`] when no
/// chief holds a string.
pub fn step1c_walk(
    states: &[AgentState],
    chiefs: &[usize],
    registry: &Registry,
    cost: &CostModel,
) -> Result<WalkOutcome> {
    if registry.is_empty() {
        return Err(Error::NoCandidates);
    }
    let order = ring_order(states, chiefs);
    let slot: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let s_bits: HashMap<usize, Vec<u8>> =
        registry.iter().map(|(&c, rec)| (c, rec.bits(states, StringCopy::S))).collect();

    let mut walks = Vec::with_capacity(registry.len());
    for (&walker, rec) in registry {
        let own = rec.bits(states, StringCopy::M);
        let start = slot[&walker];
        let mut at = states[walker].pos;
        let mut path_length = 0.0;
        let mut bits_read = 0;
        let mut end = None;
        for step in 1..=order.len() {
            let next = order[(start + step) % order.len()];
            path_length += at.dist(states[next].pos);
            at = states[next].pos;
            let Some(theirs) = s_bits.get(&next) else {
                continue;
            };
            let cmp = compare_strings(&own, theirs)?;
            bits_read += cmp.bits_read;
            match cmp.ordering {
                Ordering::Less => {
                    end = Some(WalkEnd::Lost { at: next });
                    break;
                }
                Ordering::Equal => {
                    end = Some(WalkEnd::Claimed { at: next });
                    break;
                }
                Ordering::Greater => {}
            }
        }
        let end = end.expect("a walker always reaches its own S-copy");
        let time = path_length / cost.move_speed + bits_read as f64 * cost.bit_op;
        walks.push(WalkTrace { chief: walker, path_length, bits_read, end, time });
    }

    let leaders = walks.iter().filter(|w| matches!(w.end, WalkEnd::Claimed { .. })).map(|w| w.chief).collect();
    let t_1c = walks.iter().map(|w| w.time).fold(0.0, f64::max);
    Ok(WalkOutcome { leaders, walks, t_1c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use crate::protocol::strings::StringRecord;
    use crate::protocol::Color;

    /// Chiefs on a circle of radius 10, each with the given string (or pink
    /// when `None`). String members are parked at the origin.
    fn ring(strings: &[Option<&[u8]>]) -> (Vec<AgentState>, Vec<usize>, Registry) {
        let k = strings.len();
        let mut states: Vec<AgentState> = (0..k)
            .map(|i| {
                let mut s = AgentState::new(i, Point2::from_polar(10.0, i as f64 * std::f64::consts::TAU / k as f64));
                s.color = Color::Blue;
                s
            })
            .collect();
        let mut registry = Registry::new();
        for (chief, bits) in strings.iter().enumerate() {
            let Some(bits) = bits else {
                states[chief].color = Color::Pink;
                continue;
            };
            let mut rec = StringRecord { chief, s_members: Vec::new(), m_members: Vec::new() };
            for copy in [StringCopy::S, StringCopy::M] {
                for (i, &b) in bits.iter().enumerate() {
                    let id = states.len();
                    let mut s = AgentState::new(id, Point2::ORIGIN);
                    s.color = Color::Middleman;
                    s.chief = Some(chief);
                    s.copy = Some(copy);
                    s.string_index = Some(i);
                    s.bit = Some(b);
                    states.push(s);
                    match copy {
                        StringCopy::S => rec.s_members.push(id),
                        StringCopy::M => rec.m_members.push(id),
                    }
                }
            }
            registry.insert(chief, rec);
        }
        (states, (0..k).collect(), registry)
    }

    #[test]
    fn single_chief_leads_after_full_circuit() {
        let (states, chiefs, registry) = ring(&[Some(&[1, 0, 1]), None, None]);
        let out = step1c_walk(&states, &chiefs, &registry, &CostModel::default()).unwrap();
        assert_eq!(out.leaders, vec![0]);
        let w = &out.walks[0];
        let side = states[0].pos.dist(states[1].pos);
        assert!((w.path_length - 3.0 * side).abs() < 1e-9);
        assert_eq!(w.bits_read, 3);
        assert!((out.t_1c - (3.0 * side + 3.0)).abs() < 1e-9);
    }

    #[test]
    fn larger_string_wins() {
        let (states, chiefs, registry) = ring(&[Some(&[1, 1]), Some(&[1, 0])]);
        let out = step1c_walk(&states, &chiefs, &registry, &CostModel::default()).unwrap();
        assert_eq!(out.leaders, vec![0]);
        assert_eq!(out.walks[1].end, WalkEnd::Lost { at: 0 });
    }

    #[test]
    fn identical_strings_both_claim() {
        let (states, chiefs, registry) = ring(&[Some(&[1, 0, 1]), Some(&[1, 0, 1]), Some(&[0, 1, 1])]);
        let out = step1c_walk(&states, &chiefs, &registry, &CostModel::default()).unwrap();
        assert_eq!(out.leaders, vec![0, 1]);
    }

    #[test]
    fn no_strings_no_candidates() {
        let (states, chiefs, registry) = ring(&[None, None]);
        assert_eq!(step1c_walk(&states, &chiefs, &registry, &CostModel::default()), Err(Error::NoCandidates));
    }

    #[test]
    fn ring_order_is_by_angle_then_id() {
        let mut states: Vec<AgentState> = [(1.0, 0.0), (0.0, 1.0), (-1.0, -0.1), (2.0, 0.0)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| AgentState::new(i, Point2::new(x, y)))
            .collect();
        states[0].color = Color::Blue;
        assert_eq!(ring_order(&states, &[0, 1, 2, 3]), vec![2, 0, 3, 1]);
    }
}
