//! Random strings and their storage in neighbouring agents.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rgg::CommGraph;
use crate::rng::{self, Purpose};

use super::{AgentState, Color, CostModel, ProtocolParams, StringCopy};

/// Outcome of reading one S-string against the reader's own bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    /// `Less` means the reader's chief loses.
    pub ordering: Ordering,
    /// Bits of the S-string consumed.
    pub bits_read: usize,
}

/// Reads `s_copy` left to right against `reader` until the first mismatch
/// or until one of them ends.
///
/// At a mismatch the reader loses iff the S-bit is 1. A reader that runs out
/// first loses; an S-string that runs out first loses. Equal strings are read
/// in full.
pub fn compare_strings(reader: &[u8], s_copy: &[u8]) -> Result<Comparison> {
    if reader.is_empty() || s_copy.is_empty() {
        return Err(Error::EmptyBitString);
    }
    let common = reader.len().min(s_copy.len());
    if let Some(i) = (0..common).find(|&i| reader[i] != s_copy[i]) {
        let ordering = if s_copy[i] == 1 { Ordering::Less } else { Ordering::Greater };
        return Ok(Comparison { ordering, bits_read: i + 1 });
    }
    Ok(Comparison { ordering: reader.len().cmp(&s_copy.len()), bits_read: common })
}

/// Member ids of one chief's two copies, in read order (headman first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringRecord {
    pub chief: usize,
    pub s_members: Vec<usize>,
    pub m_members: Vec<usize>,
}

impl StringRecord {
    pub fn len(&self) -> usize {
        self.s_members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_members.is_empty()
    }

    /// Bits of one copy, read off the storing agents.
    pub fn bits(&self, states: &[AgentState], copy: StringCopy) -> Vec<u8> {
        let members = match copy {
            StringCopy::S => &self.s_members,
            StringCopy::M => &self.m_members,
        };
        members.iter().map(|&id| states[id].bit.expect("string member stores a bit")).collect()
    }
}

/// Strings of the chiefs still in contention, keyed by chief id.
pub type Registry = BTreeMap<usize, StringRecord>;

#[derive(Debug, Clone)]
pub struct StringBuild {
    pub registry: Registry,
    /// Chiefs that turned pink, ascending.
    pub pink: Vec<usize>,
    pub t_1b: f64,
}

/// Lets every blue chief, in ascending id, generate one bit per green
/// neighbour and store each bit twice in its nearest unclaimed yellow
/// neighbours. Chiefs with fewer than `min_bits` greens, or that run out of
/// yellow neighbours, turn pink and release whatever they had claimed.
///
/// Bits come from the chief's own stream under `seed`. The charged time is
/// the slowest chief's `m / scan_rate + stored * storage_per_bit * (bit_op +
/// signal_op)`.
pub fn step1b_build_strings(
    states: &mut [AgentState],
    g: &CommGraph,
    params: &ProtocolParams,
    cost: &CostModel,
    seed: u64,
) -> StringBuild {
    let chiefs: Vec<usize> = states.iter().filter(|s| s.color == Color::Blue).map(|s| s.id).collect();
    let mut registry = Registry::new();
    let mut pink = Vec::new();
    let mut t_1b: f64 = 0.0;

    for chief in chiefs {
        let here = g.point(chief);
        let greens = g.neighbors(chief).iter().filter(|&&u| states[u as usize].color == Color::Green).count();
        let charge = |stored: usize| {
            greens as f64 / cost.scan_rate + (stored * params.storage_per_bit) as f64 * (cost.bit_op + cost.signal_op)
        };
        if greens < params.min_bits {
            states[chief].color = Color::Pink;
            pink.push(chief);
            t_1b = t_1b.max(charge(0));
            continue;
        }

        let mut yellows: Vec<usize> =
            g.neighbors(chief).iter().map(|&u| u as usize).filter(|&u| states[u].color == Color::Yellow).collect();
        yellows.sort_by(|&a, &b| g.point(a).dist2(here).total_cmp(&g.point(b).dist2(here)).then(a.cmp(&b)));
        let mut supply = yellows.into_iter();

        let mut rng = rng::stream(seed, Purpose::AgentBits, chief as u64);
        let mut s_members = Vec::with_capacity(greens);
        let mut m_members = Vec::with_capacity(greens);
        let mut exhausted = false;
        for _ in 0..greens {
            let bit: u8 = rng.gen_range(0..=1);
            let Some(s) = supply.next() else {
                exhausted = true;
                break;
            };
            claim(&mut states[s], chief, StringCopy::S, bit);
            s_members.push(s);
            let Some(m) = supply.next() else {
                exhausted = true;
                break;
            };
            claim(&mut states[m], chief, StringCopy::M, bit);
            m_members.push(m);
        }

        if exhausted {
            t_1b = t_1b.max(charge(m_members.len()));
            for &id in s_members.iter().chain(&m_members) {
                states[id].release();
            }
            states[chief].color = Color::Pink;
            pink.push(chief);
            continue;
        }

        // Generation order runs tailman -> headman; read order is the reverse.
        s_members.reverse();
        m_members.reverse();
        let len = s_members.len();
        for (copy, members) in [(StringCopy::S, &s_members), (StringCopy::M, &m_members)] {
            for (index, &id) in members.iter().enumerate() {
                states[id].string_index = Some(index);
                states[id].color = role_color(copy, index, len);
            }
        }
        t_1b = t_1b.max(charge(len));
        registry.insert(chief, StringRecord { chief, s_members, m_members });
    }
    StringBuild { registry, pink, t_1b }
}

fn claim(state: &mut AgentState, chief: usize, copy: StringCopy, bit: u8) {
    state.color = Color::Purple;
    state.chief = Some(chief);
    state.copy = Some(copy);
    state.bit = Some(bit);
}

fn role_color(copy: StringCopy, index: usize, len: usize) -> Color {
    match (copy, index) {
        (StringCopy::S, 0) => Color::Brown,
        (StringCopy::M, 0) => Color::Orange,
        (StringCopy::S, i) if i + 1 == len => Color::TailmanS,
        (StringCopy::M, i) if i + 1 == len => Color::TailmanM,
        _ => Color::Middleman,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use rendezvous_oracles::{compare_bits, Naive};
    use std::f64::consts::TAU;

    fn to_ordering(n: Naive) -> Ordering {
        match n {
            Naive::Less => Ordering::Less,
            Naive::Greater => Ordering::Greater,
            Naive::Equal => Ordering::Equal,
        }
    }

    #[test]
    fn comparison_examples() {
        let c = compare_strings(&[1, 0, 1], &[1, 0, 1]).unwrap();
        assert_eq!((c.ordering, c.bits_read), (Ordering::Equal, 3));
        let c = compare_strings(&[1, 1], &[1, 0, 1]).unwrap();
        assert_eq!((c.ordering, c.bits_read), (Ordering::Greater, 2));
        let c = compare_strings(&[1, 0], &[1, 0, 1]).unwrap();
        assert_eq!((c.ordering, c.bits_read), (Ordering::Less, 2));
        assert_eq!(compare_strings(&[], &[1]), Err(Error::EmptyBitString));
        assert_eq!(compare_strings(&[0], &[]), Err(Error::EmptyBitString));
    }

    #[test]
    fn comparison_matches_naive_scan_exhaustively() {
        let all: Vec<Vec<u8>> = (1..=6usize)
            .flat_map(|len| (0..1u32 << len).map(move |m| (0..len).map(|i| ((m >> i) & 1) as u8).collect()))
            .collect();
        for a in &all {
            for b in &all {
                let fast = compare_strings(a, b).unwrap();
                let (ord, read) = compare_bits(a, b);
                assert_eq!((fast.ordering, fast.bits_read), (to_ordering(ord), read), "{a:?} vs {b:?}");
                // Antisymmetric on distinct strings.
                let back = compare_strings(b, a).unwrap();
                assert_eq!(back.ordering, fast.ordering.reverse());
            }
        }
    }

    /// Chief at the origin; `greens` green agents and `yellows` yellow agents
    /// placed on small circles around it.
    fn hub(greens: usize, yellows: usize) -> (CommGraph, Vec<AgentState>) {
        let mut pts = vec![Point2::ORIGIN];
        pts.extend((0..greens).map(|k| Point2::from_polar(0.05, k as f64 * TAU / greens.max(1) as f64)));
        pts.extend((0..yellows).map(|k| Point2::from_polar(0.3 + 0.01 * k as f64, k as f64)));
        let g = CommGraph::from_points(pts.clone());
        let mut states: Vec<AgentState> = pts.iter().enumerate().map(|(i, &p)| AgentState::new(i, p)).collect();
        states[0].color = Color::Blue;
        for s in &mut states[1..=greens] {
            s.color = Color::Green;
        }
        for s in &mut states[1 + greens..] {
            s.color = Color::Yellow;
        }
        (g, states)
    }

    #[test]
    fn chief_without_greens_turns_pink() {
        let (g, mut states) = hub(0, 6);
        let build = step1b_build_strings(&mut states, &g, &ProtocolParams::default(), &CostModel::default(), 1);
        assert_eq!(build.pink, vec![0]);
        assert!(build.registry.is_empty());
        assert_eq!(states[0].color, Color::Pink);
        assert!(states[1..].iter().all(|s| s.color == Color::Yellow));
    }

    #[test]
    fn three_bits_make_matching_copies() {
        let (g, mut states) = hub(3, 7);
        let params = ProtocolParams { min_bits: 1, ..Default::default() };
        let build = step1b_build_strings(&mut states, &g, &params, &CostModel::default(), 5);
        let rec = &build.registry[&0];
        assert_eq!(rec.len(), 3);
        assert_eq!(rec.bits(&states, StringCopy::S), rec.bits(&states, StringCopy::M));
        for (copy, members) in [(StringCopy::S, &rec.s_members), (StringCopy::M, &rec.m_members)] {
            for (i, &id) in members.iter().enumerate() {
                assert_eq!(states[id].string_index, Some(i));
                assert_eq!(states[id].chief, Some(0));
                assert_eq!(states[id].copy, Some(copy));
            }
        }
        assert_eq!(states[rec.s_members[0]].color, Color::Brown);
        assert_eq!(states[rec.m_members[0]].color, Color::Orange);
        assert_eq!(states[rec.s_members[1]].color, Color::Middleman);
        assert_eq!(states[rec.s_members[2]].color, Color::TailmanS);
        assert_eq!(states[rec.m_members[2]].color, Color::TailmanM);
        // One yellow left over.
        assert_eq!(states.iter().filter(|s| s.color == Color::Yellow).count(), 1);
        // 3 greens scanned, 3 bits x 2 copies x (bit + signal).
        assert_eq!(build.t_1b, 3.0 + 12.0);
    }

    #[test]
    fn nearest_yellow_is_claimed_first() {
        let (g, mut states) = hub(1, 4);
        let params = ProtocolParams { min_bits: 1, ..Default::default() };
        let build = step1b_build_strings(&mut states, &g, &params, &CostModel::default(), 2);
        let rec = &build.registry[&0];
        // Yellows sit at radii 0.30, 0.31, ...; ids 2 and 3 are the nearest.
        assert_eq!((rec.s_members[0], rec.m_members[0]), (2, 3));
    }

    #[test]
    fn shared_storage_forces_a_dropout() {
        // Two chiefs 1.6 apart share exactly five yellow agents; each has
        // three private greens and needs six storage slots.
        let mut pts = vec![Point2::new(-0.8, 0.0), Point2::new(0.8, 0.0)];
        let mut colors = vec![Color::Blue, Color::Blue];
        for c in [-0.8, 0.8] {
            for k in 0..3 {
                pts.push(Point2::new(c, 0.0) + Point2::from_polar(0.04, k as f64 * 2.0));
                colors.push(Color::Green);
            }
        }
        for k in 0..5 {
            pts.push(Point2::new(-0.1 + 0.05 * k as f64, 0.1));
            colors.push(Color::Yellow);
        }
        let g = CommGraph::from_points(pts.clone());
        for chief in 0..2 {
            let greens = g.neighbors(chief).iter().filter(|&&u| colors[u as usize] == Color::Green).count();
            let yellows = g.neighbors(chief).iter().filter(|&&u| colors[u as usize] == Color::Yellow).count();
            assert_eq!((greens, yellows), (3, 5));
        }
        let mut states: Vec<AgentState> = pts.iter().enumerate().map(|(i, &p)| AgentState::new(i, p)).collect();
        for (s, c) in states.iter_mut().zip(colors) {
            s.color = c;
        }
        let params = ProtocolParams { min_bits: 3, ..Default::default() };
        let build = step1b_build_strings(&mut states, &g, &params, &CostModel::default(), 9);
        assert!(!build.pink.is_empty());
        // Under ascending-id arbitration chief 0 fails first and its claims
        // revert to white, leaving chief 1 with nothing.
        assert_eq!(build.pink, vec![0, 1]);
        assert!(states.iter().all(|s| !s.color.is_string_member()));
        assert_eq!(states.iter().filter(|s| s.color == Color::White).count(), 5);
    }
}
