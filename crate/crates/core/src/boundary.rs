//! Boundary classification of communication-graph vertices.
//!
//! A vertex `v` is interior when some closed walk through its neighbours,
//! moving only along graph edges, winds around `v`. Each link edge `a -> b`
//! sweeps the signed angle `theta_b - theta_a` folded into `(-pi, pi)`; the
//! fold adds a whole turn count `m(a, b)` in `{-1, 0, 1}` and the raw angle
//! differences telescope, so the winding of a closed walk is the sum of the
//! `m` along it. A walk with non-zero winding therefore exists iff the link
//! graph admits no consistent integer potential `p` with
//! `p(b) = p(a) + m(a, b)`, which a BFS per component decides in
//! `O(deg^2)`. Segments passing exactly through `v` (a fold of exactly
//! `pi`) and neighbours coincident with `v` are ignored.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry::{DiscConfig, TOL};
use crate::par::{self, Exec};
use crate::rgg::CommGraph;

const FOLD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub boundary_ids: Vec<usize>,
    pub count: usize,
    /// Largest `n - |p|` over boundary points (0 when there are none).
    pub max_rim_distance: f64,
    pub ratio_count_over_n: f64,
}

/// True when `v` is a boundary point: no cycle of pairwise-adjacent
/// neighbours encloses it.
pub fn exact_boundary_label(g: &CommGraph, v: usize) -> bool {
    let center = g.point(v);
    let ring: Vec<u32> = g.neighbors(v).iter().copied().filter(|&u| g.point(u as usize).dist(center) > TOL).collect();
    if ring.len() < 3 {
        return true;
    }
    let theta: Vec<f64> = ring.iter().map(|&u| (g.point(u as usize) - center).angle()).collect();

    let mut potential: Vec<Option<i32>> = vec![None; ring.len()];
    let mut stack = Vec::new();
    for root in 0..ring.len() {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(0);
        stack.push(root);
        while let Some(a) = stack.pop() {
            let pa = potential[a].unwrap();
            for &w in g.neighbors(ring[a] as usize) {
                let Ok(b) = ring.binary_search(&w) else {
                    continue;
                };
                let Some(turns) = fold_turns(theta[b] - theta[a]) else {
                    continue;
                };
                match potential[b] {
                    None => {
                        potential[b] = Some(pa + turns);
                        stack.push(b);
                    }
                    Some(pb) if pb != pa + turns => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Whole turns added when folding `delta` (in `(-2pi, 2pi)`) into `(-pi, pi)`;
/// `None` when the folded angle is a half turn.
fn fold_turns(delta: f64) -> Option<i32> {
    let (folded, turns) = if delta > PI {
        (delta - TAU, -1)
    } else if delta <= -PI {
        (delta + TAU, 1)
    } else {
        (delta, 0)
    };
    (folded.abs() < PI - FOLD_SLACK).then_some(turns)
}

/// Boundary label of every vertex.
pub fn boundary_labels(g: &CommGraph) -> Vec<bool> {
    boundary_labels_with(g, Exec::default())
}

pub fn boundary_labels_with(g: &CommGraph, exec: Exec) -> Vec<bool> {
    par::map_range(exec, g.len(), |v| exact_boundary_label(g, v))
}

pub fn boundary_stats(g: &CommGraph, cfg: &DiscConfig) -> BoundaryReport {
    let labels = boundary_labels(g);
    let boundary_ids: Vec<usize> = labels.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect();
    let max_rim_distance = boundary_ids.iter().map(|&v| (cfg.n - g.point(v).norm()).max(0.0)).fold(0.0, f64::max);
    BoundaryReport {
        count: boundary_ids.len(),
        ratio_count_over_n: boundary_ids.len() as f64 / cfg.n,
        boundary_ids,
        max_rim_distance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn star(count: usize, radius: f64) -> Vec<Point2> {
        let mut pts = vec![Point2::ORIGIN];
        pts.extend((0..count).map(|k| Point2::from_polar(radius, k as f64 * TAU / count as f64)));
        pts
    }

    #[test]
    fn isolated_vertex_is_boundary() {
        let g = CommGraph::from_points(vec![Point2::ORIGIN, Point2::new(5.0, 0.0)]);
        assert!(exact_boundary_label(&g, 0));
    }

    #[test]
    fn sparse_triangle_does_not_enclose() {
        let pts = star(3, 0.6);
        // Pairwise distance 0.6 * sqrt(3) ~ 1.039 > 1: no link edges.
        assert!((pts[1].dist(pts[2]) - 0.6 * 3f64.sqrt()).abs() < 1e-12);
        assert!(pts[1].dist(pts[2]) > 1.0);
        let g = CommGraph::from_points(pts);
        assert!(exact_boundary_label(&g, 0));
    }

    #[test]
    fn hexagon_encloses() {
        let g = CommGraph::from_points(star(6, 0.6));
        assert!(!exact_boundary_label(&g, 0));
        // Each hexagon vertex sits on the outside of the configuration.
        for v in 1..7 {
            assert!(exact_boundary_label(&g, v));
        }
    }

    #[test]
    fn half_turn_edges_are_ignored() {
        // Two opposite neighbours only: the segment passes through v.
        let g = CommGraph::from_points(vec![Point2::ORIGIN, Point2::new(0.4, 0.0), Point2::new(-0.4, 0.0)]);
        assert!(exact_boundary_label(&g, 0));
    }

    #[test]
    fn mutually_distant_points_are_all_boundary() {
        let cfg = DiscConfig::new(10.0, 3, 0).unwrap();
        let g = CommGraph::from_points(vec![Point2::new(0.0, 0.0), Point2::new(3.0, 0.0), Point2::new(0.0, 3.0)]);
        let report = boundary_stats(&g, &cfg);
        assert_eq!(report.count, 3);
        assert_eq!(report.boundary_ids, vec![0, 1, 2]);
    }

    #[test]
    fn fold_turns_cases() {
        assert_eq!(fold_turns(0.5), Some(0));
        assert_eq!(fold_turns(-0.5), Some(0));
        assert_eq!(fold_turns(1.5 * PI), Some(-1));
        assert_eq!(fold_turns(-1.5 * PI), Some(1));
        assert_eq!(fold_turns(PI), None);
        assert_eq!(fold_turns(-PI), None);
    }
}
