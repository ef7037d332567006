//! Slow, obviously-correct reference computations for cross-checking the
//! simulator. Nothing here depends on the simulator crate: inputs are plain
//! coordinate tuples and bit slices.

pub type Xy = (f64, f64);

fn dist(a: Xy, b: Xy) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// O(k^2) adjacency: distinct indices at distance at most `1 + 1e-9`.
pub fn adjacency(points: &[Xy]) -> Vec<Vec<usize>> {
    (0..points.len())
        .map(|u| (0..points.len()).filter(|&v| v != u && dist(points[u], points[v]) <= 1.0 + 1e-9).collect())
        .collect()
}

fn circumcircle(a: Xy, b: Xy, c: Xy) -> Option<(Xy, f64)> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    if d.abs() < 1e-14 {
        return None;
    }
    let a2 = a.0 * a.0 + a.1 * a.1;
    let b2 = b.0 * b.0 + b.1 * b.1;
    let c2 = c.0 * c.0 + c.1 * c.1;
    let x = (a2 * (b.1 - c.1) + b2 * (c.1 - a.1) + c2 * (a.1 - b.1)) / d;
    let y = (a2 * (c.0 - b.0) + b2 * (a.0 - c.0) + c2 * (b.0 - a.0)) / d;
    Some(((x, y), dist((x, y), a)))
}

/// Smallest enclosing circle by trying every circle determined by a pair
/// (as diameter) or a triple (circumcircle). Returns `(center, radius)`.
pub fn smallest_enclosing_circle(points: &[Xy]) -> (Xy, f64) {
    assert!(!points.is_empty());
    if points.len() == 1 {
        return (points[0], 0.0);
    }
    let covers = |c: Xy, r: f64| points.iter().all(|&p| dist(c, p) <= r + 1e-10);
    let mut best = (points[0], f64::INFINITY);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (a, b) = (points[i], points[j]);
            let c = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let r = dist(a, b) / 2.0;
            if r < best.1 && covers(c, r) {
                best = (c, r);
            }
            for &p in &points[j + 1..] {
                if let Some((c, r)) = circumcircle(a, b, p) {
                    if r < best.1 && covers(c, r) {
                        best = (c, r);
                    }
                }
            }
        }
    }
    if best.1.is_infinite() {
        // All points coincide.
        best = (points[0], 0.0);
    }
    best
}

/// Winding number of the closed polygon `poly` around `center`, from the sum
/// of signed angles between consecutive vertex directions.
pub fn winding_number(center: Xy, poly: &[Xy]) -> i32 {
    let mut total = 0.0;
    for i in 0..poly.len() {
        let a = (poly[i].0 - center.0, poly[i].1 - center.1);
        let b = {
            let q = poly[(i + 1) % poly.len()];
            (q.0 - center.0, q.1 - center.1)
        };
        let cross = a.0 * b.1 - a.1 * b.0;
        let dot = a.0 * b.0 + a.1 * b.1;
        total += cross.atan2(dot);
    }
    (total / std::f64::consts::TAU).round() as i32
}

fn segments_cross(p1: Xy, p2: Xy, q1: Xy, q2: Xy) -> bool {
    let orient = |a: Xy, b: Xy, c: Xy| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != 0.0 && d2 != 0.0 && d3 != 0.0 && d4 != 0.0
}

/// True when no two non-adjacent edges of the closed polygon intersect.
pub fn is_simple_polygon(poly: &[Xy]) -> bool {
    let k = poly.len();
    for i in 0..k {
        for j in i + 1..k {
            if j == i + 1 || (i == 0 && j == k - 1) {
                continue;
            }
            if segments_cross(poly[i], poly[(i + 1) % k], poly[j], poly[(j + 1) % k]) {
                return false;
            }
        }
    }
    true
}

/// Enumerates the simple cycles (length 3..=max_len) of the graph on
/// `ring` given by `linked`, and reports whether one of them winds around
/// `center` (non-zero winding number). With `require_simple`, only polygons
/// without self-intersections count.
pub fn enclosed_by_cycle(
    center: Xy,
    ring: &[Xy],
    linked: &dyn Fn(usize, usize) -> bool,
    max_len: usize,
    require_simple: bool,
) -> bool {
    let k = ring.len();
    let mut path = Vec::with_capacity(max_len);
    for start in 0..k {
        path.clear();
        path.push(start);
        if dfs_cycle(center, ring, linked, max_len, require_simple, &mut path) {
            return true;
        }
    }
    false
}

fn dfs_cycle(
    center: Xy,
    ring: &[Xy],
    linked: &dyn Fn(usize, usize) -> bool,
    max_len: usize,
    require_simple: bool,
    path: &mut Vec<usize>,
) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 3 && linked(last, start) {
        let poly: Vec<Xy> = path.iter().map(|&i| ring[i]).collect();
        if winding_number(center, &poly) != 0 && (!require_simple || is_simple_polygon(&poly)) {
            return true;
        }
    }
    if path.len() == max_len {
        return false;
    }
    for next in start + 1..ring.len() {
        if !path.contains(&next) && linked(last, next) {
            path.push(next);
            if dfs_cycle(center, ring, linked, max_len, require_simple, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// Indices of convex hull vertices (strictly convex corners only).
pub fn convex_hull(points: &[Xy]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].partial_cmp(&points[b]).unwrap());
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: Xy, a: Xy, b: Xy| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let order: Vec<usize> = if pass == 0 { idx.clone() } else { idx.iter().rev().copied().collect() };
        for &i in &order {
            while hull.len() >= start + 2
                && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0.0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Result of the naive left-to-right string comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Naive {
    Less,
    Greater,
    Equal,
}

/// Reads `s` bit by bit against `reader`; returns the verdict for the reader
/// and how many bits of `s` were consumed.
pub fn compare_bits(reader: &[u8], s: &[u8]) -> (Naive, usize) {
    let mut read = 0;
    loop {
        match (reader.get(read), s.get(read)) {
            (Some(&r), Some(&b)) => {
                read += 1;
                if r != b {
                    return (if b == 1 { Naive::Less } else { Naive::Greater }, read);
                }
            }
            (Some(_), None) => return (Naive::Greater, read),
            (None, Some(_)) => return (Naive::Less, read),
            (None, None) => return (Naive::Equal, read),
        }
    }
}
