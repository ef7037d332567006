//! Planar primitives, uniform sampling in a disc, quadrant scans and the
//! smallest enclosing circle.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::{Add, Mul, Sub};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, Purpose, SimRng};

/// Absolute tolerance for closed boundary comparisons.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Point2::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn dist2(self, other: Point2) -> f64 {
        (self - other).norm2()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Self {
        Circle { center, radius }
    }

    /// Closed containment with a small relative slack for rounding.
    pub fn contains(&self, p: Point2) -> bool {
        self.center.dist(p) <= self.radius * (1.0 + 1e-14) + 1e-12
    }

    fn diameter(a: Point2, b: Point2) -> Circle {
        let c = a.midpoint(b);
        Circle::new(c, c.dist(a).max(c.dist(b)))
    }

    /// Circle through three points, `None` when they are (nearly) collinear.
    pub fn circumscribed(a: Point2, b: Point2, c: Point2) -> Option<Circle> {
        // Work relative to the bounding-box centre for conditioning.
        let ox = (a.x.min(b.x).min(c.x) + a.x.max(b.x).max(c.x)) / 2.0;
        let oy = (a.y.min(b.y).min(c.y) + a.y.max(b.y).max(c.y)) / 2.0;
        let (ax, ay) = (a.x - ox, a.y - oy);
        let (bx, by) = (b.x - ox, b.y - oy);
        let (cx, cy) = (c.x - ox, c.y - oy);
        let d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0;
        if d == 0.0 {
            return None;
        }
        let a2 = ax * ax + ay * ay;
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
        let y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
        let center = Point2::new(x, y);
        let r = center.dist(a).max(center.dist(b)).max(center.dist(c));
        (center.is_finite() && r.is_finite()).then_some(Circle::new(center, r))
    }
}

/// Disc radius, point count and seed of one random configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscConfig {
    pub n: f64,
    pub f: usize,
    pub seed: u64,
}

impl DiscConfig {
    pub fn new(n: f64, f: usize, seed: u64) -> Result<Self> {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidParameter(format!("disc radius must be > 0, got {n}")));
        }
        Ok(DiscConfig { n, f, seed })
    }

    /// Average point density `f / (pi n^2)`.
    pub fn lambda(&self) -> f64 {
        self.f as f64 / (PI * self.n * self.n)
    }
}

/// Draws `cfg.f` points uniformly from the open disc of radius `cfg.n` by
/// rejection from the bounding square.
pub fn sample_uniform_disc(cfg: &DiscConfig) -> Vec<Point2> {
    let mut rng = rng::stream(cfg.seed, Purpose::Sampling, 0);
    sample_uniform_disc_with(cfg.n, cfg.f, &mut rng)
}

pub fn sample_uniform_disc_with<R: Rng + ?Sized>(n: f64, count: usize, rng: &mut R) -> Vec<Point2> {
    let r2 = n * n;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = Point2::new(rng.gen_range(-n..n), rng.gen_range(-n..n));
        if p.norm2() < r2 {
            out.push(p);
        }
    }
    out
}

/// Smallest circle enclosing every point, by randomized incremental
/// construction (expected linear time).
///
/// The shuffle is seeded from the input length so the result is a pure
/// function of `pts`.
pub fn smallest_enclosing_circle(pts: &[Point2]) -> Result<Circle> {
    let mut rng = rng::stream(pts.len() as u64, Purpose::Shuffle, 0);
    smallest_enclosing_circle_with(pts, &mut rng)
}

pub fn smallest_enclosing_circle_with(pts: &[Point2], rng: &mut SimRng) -> Result<Circle> {
    if pts.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut shuffled = pts.to_vec();
    shuffled.shuffle(rng);
    let mut circle = Circle::new(shuffled[0], 0.0);
    for i in 1..shuffled.len() {
        let p = shuffled[i];
        if !circle.contains(p) {
            circle = sec_with_one(&shuffled[..i], p);
        }
    }
    Ok(circle)
}

fn sec_with_one(pts: &[Point2], p: Point2) -> Circle {
    let mut circle = Circle::new(p, 0.0);
    for (i, &q) in pts.iter().enumerate() {
        if !circle.contains(q) {
            circle = if circle.radius == 0.0 { Circle::diameter(p, q) } else { sec_with_two(&pts[..i], p, q) };
        }
    }
    circle
}

fn sec_with_two(pts: &[Point2], p: Point2, q: Point2) -> Circle {
    let base = Circle::diameter(p, q);
    let pq = q - p;
    let mut left: Option<Circle> = None;
    let mut right: Option<Circle> = None;
    for &r in pts {
        if base.contains(r) {
            continue;
        }
        let side = pq.cross(r - p);
        let Some(c) = Circle::circumscribed(p, q, r) else {
            continue;
        };
        let offset = pq.cross(c.center - p);
        if side > 0.0 {
            if left.is_none_or(|l| offset > pq.cross(l.center - p)) {
                left = Some(c);
            }
        } else if side < 0.0 && right.is_none_or(|l| offset < pq.cross(l.center - p)) {
            right = Some(c);
        }
    }
    match (left, right) {
        (None, None) => base,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

/// Index of the quadrant containing direction `d` when quadrant 0 starts at
/// `orientation` and quadrants advance counter-clockwise in quarter turns.
pub fn quadrant_of(d: Point2, orientation: f64) -> usize {
    let a = (d.angle() - orientation).rem_euclid(TAU);
    ((a / FRAC_PI_2) as usize).min(3)
}

/// For each quadrant of the open `radius`-ball around `center` (quadrant 0
/// spans `[orientation, orientation + pi/2)`), whether some other point lies
/// inside it.
pub fn quadrant_occupancy(center: Point2, orientation: f64, radius: f64, others: &[Point2]) -> [bool; 4] {
    let mut flags = [false; 4];
    let r2 = radius * radius;
    for &p in others {
        let d = p - center;
        if d.norm2() < r2 {
            flags[quadrant_of(d, orientation)] = true;
        }
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn brute_force_sec(pts: &[Point2]) -> Circle {
        let covers = |c: &Circle| pts.iter().all(|&p| c.center.dist(p) <= c.radius + 1e-10);
        let mut best = Circle::new(pts[0], if pts.len() == 1 { 0.0 } else { f64::INFINITY });
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let c = Circle::new(pts[i].midpoint(pts[j]), pts[i].dist(pts[j]) / 2.0);
                if c.radius < best.radius && covers(&c) {
                    best = c;
                }
                for k in j + 1..pts.len() {
                    if let Some(c) = Circle::circumscribed(pts[i], pts[j], pts[k]) {
                        if c.radius < best.radius && covers(&c) {
                            best = c;
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn empty_disc_config_samples_nothing() {
        let cfg = DiscConfig::new(10.0, 0, 1).unwrap();
        assert!(sample_uniform_disc(&cfg).is_empty());
    }

    #[test]
    fn sampling_is_deterministic_and_inside() {
        let cfg = DiscConfig::new(3.0, 500, 11).unwrap();
        let a = sample_uniform_disc(&cfg);
        let b = sample_uniform_disc(&cfg);
        assert_eq!(a.len(), 500);
        assert!(a.iter().zip(&b).all(|(p, q)| p.x.to_bits() == q.x.to_bits() && p.y.to_bits() == q.y.to_bits()));
        assert!(a.iter().all(|p| p.norm() < 3.0));
    }

    #[test]
    fn second_moment_matches_quadrature() {
        // E|p|^2 for the uniform disc: integral of r^2 * (2r / n^2) over [0, n],
        // evaluated by composite Simpson.
        let n = 10.0_f64;
        let steps = 1000;
        let h = n / steps as f64;
        let g = |r: f64| r * r * 2.0 * r / (n * n);
        let mut sum = g(0.0) + g(n);
        for i in 1..steps {
            sum += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let expected = sum * h / 3.0;
        assert!((expected - 50.0).abs() < 1e-9);

        let cfg = DiscConfig::new(n, 100_000, 7).unwrap();
        let pts = sample_uniform_disc(&cfg);
        let mean = pts.iter().map(|p| p.norm2()).sum::<f64>() / pts.len() as f64;
        assert!((mean - expected).abs() / expected < 0.01, "mean {mean}");
        let inner = pts.iter().filter(|p| p.norm() <= n / 2f64.sqrt()).count() as f64 / pts.len() as f64;
        assert!((inner - 0.5).abs() <= 0.01, "inner fraction {inner}");
    }

    #[test]
    fn sec_trivial_cases() {
        assert_eq!(smallest_enclosing_circle(&[]), Err(Error::EmptyPointSet));
        let c = smallest_enclosing_circle(&[Point2::ORIGIN]).unwrap();
        assert_eq!(c, Circle::new(Point2::ORIGIN, 0.0));
        let c = smallest_enclosing_circle(&[Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0)]).unwrap();
        assert!(c.center.dist(Point2::ORIGIN) < 1e-12);
        assert!((c.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sec_handles_collinear_and_duplicates() {
        let pts: Vec<Point2> = (0..7).map(|i| Point2::new(i as f64, 2.0 * i as f64)).collect();
        let c = smallest_enclosing_circle(&pts).unwrap();
        assert!((c.radius - pts[0].dist(pts[6]) / 2.0).abs() < 1e-9);
        let dup = vec![Point2::new(1.5, -2.0); 5];
        let c = smallest_enclosing_circle(&dup).unwrap();
        assert_eq!(c.radius, 0.0);
    }

    #[test]
    fn sec_matches_brute_force_on_ten_random_points() {
        let mut rng = SimRng::seed_from_u64(99);
        for _ in 0..200 {
            let pts = sample_uniform_disc_with(5.0, 10, &mut rng);
            let fast = smallest_enclosing_circle(&pts).unwrap();
            let slow = brute_force_sec(&pts);
            assert!((fast.radius - slow.radius).abs() < 1e-9, "{fast:?} vs {slow:?}");
        }
    }

    #[test]
    fn quadrant_examples() {
        assert_eq!(quadrant_occupancy(Point2::ORIGIN, 0.0, 0.5, &[]), [false; 4]);
        let flags = quadrant_occupancy(Point2::ORIGIN, 0.0, 0.5, &[Point2::new(0.1, 0.1)]);
        assert_eq!(flags, [true, false, false, false]);
        // Outside the open ball.
        let flags = quadrant_occupancy(Point2::ORIGIN, 0.0, 0.5, &[Point2::new(0.5, 0.0)]);
        assert_eq!(flags, [false; 4]);
    }

    fn naive_quadrants(center: Point2, orientation: f64, radius: f64, others: &[Point2]) -> [bool; 4] {
        // Rotate into the orientation frame and read quadrants off coordinate signs.
        let (s, c) = orientation.sin_cos();
        let mut flags = [false; 4];
        for &p in others {
            let d = p - center;
            if d.x * d.x + d.y * d.y >= radius * radius {
                continue;
            }
            let u = c * d.x + s * d.y;
            let v = -s * d.x + c * d.y;
            let q = if u > 0.0 && v >= 0.0 {
                0
            } else if u <= 0.0 && v > 0.0 {
                1
            } else if u < 0.0 && v <= 0.0 {
                2
            } else if u >= 0.0 && v < 0.0 {
                3
            } else {
                0
            };
            flags[q] = true;
        }
        flags
    }

    fn arb_points(max: usize) -> impl Strategy<Value = Vec<Point2>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(x, y)| Point2::new(x, y)), 0..max)
    }

    proptest! {
        #[test]
        fn sec_contains_all_points(pts in arb_points(60).prop_filter("non-empty", |v| !v.is_empty())) {
            let c = smallest_enclosing_circle(&pts).unwrap();
            for p in &pts {
                prop_assert!(c.center.dist(*p) <= c.radius + TOL);
            }
        }

        #[test]
        fn sec_is_minimal_for_small_sets(pts in arb_points(13).prop_filter("non-empty", |v| !v.is_empty())) {
            let c = smallest_enclosing_circle(&pts).unwrap();
            let oracle = brute_force_sec(&pts);
            prop_assert!((c.radius - oracle.radius).abs() <= TOL);
        }

        #[test]
        fn quadrants_agree_with_naive_scan(
            pts in arb_points(30),
            orientation in 0.0f64..TAU,
            radius in 0.05f64..1.5,
        ) {
            prop_assert_eq!(
                quadrant_occupancy(Point2::ORIGIN, orientation, radius, &pts),
                naive_quadrants(Point2::ORIGIN, orientation, radius, &pts)
            );
        }

        #[test]
        fn quarter_turn_permutes_flags(pts in arb_points(10), orientation in 0.0f64..PI) {
            let a = quadrant_occupancy(Point2::ORIGIN, orientation, 0.5, &pts);
            let b = quadrant_occupancy(Point2::ORIGIN, orientation + FRAC_PI_2, 0.5, &pts);
            // Skip inputs with a point within rounding distance of a quadrant edge.
            let near_edge = pts.iter().any(|p| {
                let a = (p.angle() - orientation).rem_euclid(FRAC_PI_2);
                a < 1e-9 || FRAC_PI_2 - a < 1e-9
            });
            if !near_edge {
                for q in 0..4 {
                    prop_assert_eq!(b[q], a[(q + 1) % 4]);
                }
            }
        }
    }
}
