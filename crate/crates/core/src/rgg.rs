//! Unit-distance communication graph over a point configuration.
//!
//! Points are bucketed into a grid of unit cells, so every neighbour of a
//! point lies in the 3x3 block of cells around it. Adjacency is stored in
//! compressed rows with each neighbour list sorted by id.

use std::collections::VecDeque;
use std::io::{self, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sample_uniform_disc, DiscConfig, Point2, TOL};
use crate::par::{self, Exec};
use crate::rng::{self, Purpose};

/// Closed unit-distance test shared by every adjacency computation.
#[inline]
pub fn within_unit(a: Point2, b: Point2) -> bool {
    a.dist2(b) <= (1.0 + TOL) * (1.0 + TOL)
}

/// Cell side: the unit interaction radius plus the closed-comparison slack.
const CELL: f64 = 1.0 + 2.0 * TOL;

/// Bucket index with unit cells over the bounding box of the points.
#[derive(Debug, Clone)]
pub struct UnitGrid {
    min_cx: i64,
    min_cy: i64,
    width: usize,
    height: usize,
    cell_start: Vec<u32>,
    items: Vec<u32>,
}

impl UnitGrid {
    pub fn new(points: &[Point2]) -> Self {
        if points.is_empty() {
            return UnitGrid { min_cx: 0, min_cy: 0, width: 0, height: 0, cell_start: vec![0], items: Vec::new() };
        }
        let (mut min_cx, mut min_cy, mut max_cx, mut max_cy) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for p in points {
            let (cx, cy) = Self::cell_of(*p);
            min_cx = min_cx.min(cx);
            min_cy = min_cy.min(cy);
            max_cx = max_cx.max(cx);
            max_cy = max_cy.max(cy);
        }
        let width = (max_cx - min_cx + 1) as usize;
        let height = (max_cy - min_cy + 1) as usize;
        let mut grid = UnitGrid { min_cx, min_cy, width, height, cell_start: Vec::new(), items: Vec::new() };

        let mut counts = vec![0u32; width * height + 1];
        let keys: Vec<usize> = points.iter().map(|p| grid.key(Self::cell_of(*p)).unwrap()).collect();
        for &k in &keys {
            counts[k + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut items = vec![0u32; points.len()];
        for (id, &k) in keys.iter().enumerate() {
            items[fill[k] as usize] = id as u32;
            fill[k] += 1;
        }
        grid.cell_start = counts;
        grid.items = items;
        grid
    }

    fn cell_of(p: Point2) -> (i64, i64) {
        ((p.x / CELL).floor() as i64, (p.y / CELL).floor() as i64)
    }

    fn key(&self, (cx, cy): (i64, i64)) -> Option<usize> {
        let dx = cx - self.min_cx;
        let dy = cy - self.min_cy;
        if dx < 0 || dy < 0 || dx as usize >= self.width || dy as usize >= self.height {
            return None;
        }
        Some(dy as usize * self.width + dx as usize)
    }

    /// Ids of all points in the 3x3 cell block around `p`.
    pub fn candidates(&self, p: Point2) -> impl Iterator<Item = u32> + '_ {
        let (cx, cy) = Self::cell_of(p);
        (-1..=1).flat_map(move |dy| (-1..=1).map(move |dx| (cx + dx, cy + dy))).filter_map(|c| self.key(c)).flat_map(
            |k| {
                let (a, b) = (self.cell_start[k] as usize, self.cell_start[k + 1] as usize);
                self.items[a..b].iter().copied()
            },
        )
    }
}

/// The communication graph: vertex `u` and `v` are adjacent iff `u != v` and
/// `|p_u - p_v| <= 1`.
#[derive(Debug, Clone)]
pub struct CommGraph {
    points: Vec<Point2>,
    offsets: Vec<usize>,
    adjacency: Vec<u32>,
    grid: UnitGrid,
}

/// Samples `cfg` and builds its communication graph.
pub fn build_comm_graph(cfg: &DiscConfig) -> CommGraph {
    CommGraph::from_points(sample_uniform_disc(cfg))
}

impl CommGraph {
    pub fn from_points(points: Vec<Point2>) -> Self {
        Self::from_points_with(points, Exec::default())
    }

    pub fn from_points_with(points: Vec<Point2>, exec: Exec) -> Self {
        let grid = UnitGrid::new(&points);
        let rows: Vec<Vec<u32>> = par::map_range(exec, points.len(), |u| {
            let p = points[u];
            let mut row: Vec<u32> =
                grid.candidates(p).filter(|&v| v as usize != u && within_unit(p, points[v as usize])).collect();
            row.sort_unstable();
            row
        });
        let mut offsets = Vec::with_capacity(points.len() + 1);
        offsets.push(0);
        let mut adjacency = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        for row in rows {
            adjacency.extend_from_slice(&row);
            offsets.push(adjacency.len());
        }
        CommGraph { points, offsets, adjacency, grid }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point2 {
        self.points[v]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn grid(&self) -> &UnitGrid {
        &self.grid
    }

    /// Writes one line `id: id id id` per vertex.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for v in 0..self.len() {
            write!(out, "{v}:")?;
            for u in self.neighbors(v) {
                write!(out, " {u}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// Degree and connectivity summary of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub mean_degree: f64,
    pub diameter_hops: Option<usize>,
    pub connected: bool,
    pub lambda: f64,
}

pub fn degree_stats(g: &CommGraph) -> DegreeStats {
    if g.is_empty() {
        return DegreeStats { min: 0, max: 0, mean: 0.0 };
    }
    let degrees = (0..g.len()).map(|v| g.degree(v));
    DegreeStats {
        min: degrees.clone().min().unwrap(),
        max: degrees.max().unwrap(),
        mean: 2.0 * g.edge_count() as f64 / g.len() as f64,
    }
}

pub fn graph_stats(g: &CommGraph, cfg: &DiscConfig, mode: DiameterMode) -> GraphStats {
    let d = degree_stats(g);
    GraphStats {
        min_degree: d.min,
        max_degree: d.max,
        mean_degree: d.mean,
        diameter_hops: graph_diameter(g, mode).ok(),
        connected: is_connected(g),
        lambda: cfg.lambda(),
    }
}

/// Hop distances from `source`; unreachable vertices get `u32::MAX`.
pub fn bfs_depths(g: &CommGraph, source: usize) -> Vec<u32> {
    let mut depth = vec![u32::MAX; g.len()];
    let mut queue = VecDeque::new();
    depth[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = depth[v] + 1;
        for &u in g.neighbors(v) {
            let u = u as usize;
            if depth[u] == u32::MAX {
                depth[u] = next;
                queue.push_back(u);
            }
        }
    }
    depth
}

/// Largest hop distance from `source`, or `None` if some vertex is unreachable.
pub fn eccentricity(g: &CommGraph, source: usize) -> Option<usize> {
    let depths = bfs_depths(g, source);
    if depths.contains(&u32::MAX) {
        None
    } else {
        depths.into_iter().max().map(|d| d as usize)
    }
}

/// True iff the graph has a single component. Empty and single-vertex graphs
/// count as connected.
pub fn is_connected(g: &CommGraph) -> bool {
    g.is_empty() || !bfs_depths(g, 0).contains(&u32::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterMode {
    /// All-sources BFS.
    Exact,
    /// Maximum eccentricity over `sources` random vertices: a lower bound on
    /// the diameter.
    Sampled { sources: usize, seed: u64 },
}

pub fn graph_diameter(g: &CommGraph, mode: DiameterMode) -> Result<usize> {
    graph_diameter_with(g, mode, Exec::default())
}

pub fn graph_diameter_with(g: &CommGraph, mode: DiameterMode, exec: Exec) -> Result<usize> {
    if g.is_empty() {
        return Ok(0);
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let sources: Vec<usize> = match mode {
        DiameterMode::Exact => (0..g.len()).collect(),
        DiameterMode::Sampled { sources, seed } => {
            let mut rng = rng::stream(seed, Purpose::Diameter, 0);
            (0..sources.max(1)).map(|_| rng.gen_range(0..g.len())).collect()
        }
    };
    let ecc = par::map_slice(exec, &sources, |&s| eccentricity(g, s).unwrap_or(0));
    Ok(ecc.into_iter().max().unwrap_or(0))
}
