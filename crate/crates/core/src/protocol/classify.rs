//! Colour classification: who might be on the rim, and who stores for them.

use std::f64::consts::PI;

use crate::geometry::{quadrant_occupancy, Point2, TOL};
use crate::par;
use crate::rgg::CommGraph;

use super::{Color, CostModel, ProtocolParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub colors: Vec<Color>,
    /// Blue agents in ascending id.
    pub chiefs: Vec<usize>,
    pub t_1a: f64,
}

/// Whether agent `v` sees an empty quadrant of its `r_blue`-ball at one of
/// the orientations `j * pi / K`, `0 <= j < K`.
pub fn sees_empty_quadrant(g: &CommGraph, v: usize, params: &ProtocolParams) -> bool {
    let center = g.point(v);
    let r2 = params.r_blue * params.r_blue;
    let close: Vec<Point2> =
        g.neighbors(v).iter().map(|&u| g.point(u as usize)).filter(|p| p.dist2(center) < r2).collect();
    if close.len() < 4 {
        return true;
    }
    let k = params.orientations;
    (0..k).any(|j| {
        let flags = quadrant_occupancy(center, j as f64 * PI / k as f64, params.r_blue, &close);
        flags.contains(&false)
    })
}

/// Colour of a non-blue agent whose nearest blue neighbour is at `distance`.
pub fn color_for_nearest_blue(distance: f64, params: &ProtocolParams) -> Color {
    if distance <= params.r_green + TOL {
        Color::Green
    } else if distance < params.r_yellow {
        Color::Yellow
    } else {
        Color::White
    }
}

/// Runs the blue test everywhere, then lets non-blue agents pick green,
/// yellow or white from the distance to their nearest blue neighbour.
///
/// Every agent performs `K` quadrant scans plus two colour look-ups, so the
/// phase costs `(K + 2) * signal_op` regardless of the configuration.
pub fn step1a_classify(g: &CommGraph, params: &ProtocolParams, cost: &CostModel) -> Classification {
    let blue = par::map_range(Default::default(), g.len(), |v| sees_empty_quadrant(g, v, params));
    let colors = par::map_range(Default::default(), g.len(), |v| {
        if blue[v] {
            return Color::Blue;
        }
        let p = g.point(v);
        let nearest_blue = g
            .neighbors(v)
            .iter()
            .filter(|&&u| blue[u as usize])
            .map(|&u| g.point(u as usize).dist(p))
            .fold(f64::INFINITY, f64::min);
        color_for_nearest_blue(nearest_blue, params)
    });
    let chiefs = (0..g.len()).filter(|&v| blue[v]).collect();
    Classification { colors, chiefs, t_1a: (params.orientations as f64 + 2.0) * cost.signal_op }
}
