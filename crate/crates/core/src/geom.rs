//! Exact integer geometry: orientation, convex hull, segment crossing.
//!
//! Coordinates are bounded by [`COORD_LIMIT`] so every cross product fits in
//! an `i64` without overflow. Nothing in this module touches floating point.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest allowed absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("point set needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("point {index} ({x}, {y}) exceeds the coordinate limit of 2^20")]
    OutOfRange { index: usize, x: i64, y: i64 },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("all points are collinear")]
    CollinearInput,
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("hull boundary points {0}, {1} and {2} are collinear")]
    CollinearBoundary(usize, usize, usize),
}

/// A point on the integer grid. Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    fn sub(self, other: Point) -> (i64, i64) {
        (self.x - other.x, self.y - other.y)
    }

    fn in_range(self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Cross product `(q - p) x (r - p)`.
pub fn cross(p: Point, q: Point, r: Point) -> i64 {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    ax * by - ay * bx
}

/// Which side of the directed line `p -> q` the point `r` falls on.
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Compares the directions of two nonzero vectors by counter-clockwise angle
/// measured from the positive x axis, in `[0, 2pi)`.
pub fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    fn half(v: (i64, i64)) -> u8 {
        if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
            0
        } else {
            1
        }
    }
    half(a)
        .cmp(&half(b))
        .then_with(|| (b.0 * a.1).cmp(&(a.0 * b.1)))
}

/// Direction vector from `from` to `to`.
pub fn direction(from: Point, to: Point) -> (i64, i64) {
    to.sub(from)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

// r is collinear with p-q; is it within the bounding box of the segment?
fn within(p: Point, q: Point, r: Point) -> bool {
    r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
}

/// True iff the closed segments meet anywhere other than at a shared
/// endpoint. Collinear overlap counts as a crossing.
pub fn segments_cross(s: Segment, t: Segment) -> bool {
    let shared = [(s.a, t.a), (s.a, t.b), (s.b, t.a), (s.b, t.b)]
        .iter()
        .filter(|(u, v)| u == v)
        .count();
    if shared >= 2 {
        // Same segment (or both degenerate).
        return true;
    }
    if shared == 1 {
        let (p, s_other, t_other) = if s.a == t.a {
            (s.a, s.b, t.b)
        } else if s.a == t.b {
            (s.a, s.b, t.a)
        } else if s.b == t.a {
            (s.b, s.a, t.b)
        } else {
            (s.b, s.a, t.a)
        };
        if orientation(p, s_other, t_other) != Orientation::Collinear {
            return false;
        }
        let (ax, ay) = s_other.sub(p);
        let (bx, by) = t_other.sub(p);
        return ax * bx + ay * by > 0;
    }

    let o1 = orientation(s.a, s.b, t.a);
    let o2 = orientation(s.a, s.b, t.b);
    let o3 = orientation(t.a, t.b, s.a);
    let o4 = orientation(t.a, t.b, s.b);
    use Orientation::Collinear;
    if o1 != o2
        && o3 != o4
        && o1 != Collinear
        && o2 != Collinear
        && o3 != Collinear
        && o4 != Collinear
    {
        return true;
    }
    (o1 == Collinear && within(s.a, s.b, t.a))
        || (o2 == Collinear && within(s.a, s.b, t.b))
        || (o3 == Collinear && within(t.a, t.b, s.a))
        || (o4 == Collinear && within(t.a, t.b, s.b))
}

/// How strictly general position is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Position {
    /// No three points collinear anywhere.
    #[default]
    Strict,
    /// Collinear triples allowed; points in the relative interior of a hull
    /// edge are kept on the hull and counted into `h`.
    Lax,
}

/// An ordered list of pairwise distinct grid points. Indices are identities.
///
/// The JSON form is `{"points": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet", into = "RawPointSet")]
pub struct PointSet {
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct RawPointSet {
    points: Vec<Point>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = GeomError;
    fn try_from(raw: RawPointSet) -> Result<Self, Self::Error> {
        PointSet::new(raw.points)
    }
}

impl From<PointSet> for RawPointSet {
    fn from(ps: PointSet) -> Self {
        RawPointSet { points: ps.points }
    }
}

impl PointSet {
    /// Checks the coordinate cap and distinctness.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        for (i, p) in points.iter().enumerate() {
            if !p.in_range() {
                return Err(GeomError::OutOfRange {
                    index: i,
                    x: p.x,
                    y: p.y,
                });
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| points[i]);
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(GeomError::DuplicatePoint(a, b));
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, GeomError> {
        PointSet::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    /// First collinear triple in index order, if any. Cubic; meant for the
    /// point-set sizes this crate targets.
    pub fn collinear_triple(&self) -> Option<(usize, usize, usize)> {
        let p = &self.points;
        let n = p.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if cross(p[i], p[j], p[k]) == 0 {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_general_position(&self) -> Result<(), GeomError> {
        match self.collinear_triple() {
            Some((i, j, k)) => Err(GeomError::CollinearTriple(i, j, k)),
            None => Ok(()),
        }
    }

    /// `n` points in strict general position drawn uniformly from
    /// `[0, range)^2`, reproducible from `seed`.
    pub fn random_general_position(n: usize, range: i64, seed: u64) -> Self {
        assert!(range > 0 && range <= COORD_LIMIT);
        assert!((n as i64) <= range, "range too small for {n} points");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<Point> = Vec::with_capacity(n);
        while points.len() < n {
            let cand = Point::new(rng.gen_range(0..range), rng.gen_range(0..range));
            if points.contains(&cand) {
                continue;
            }
            let degenerate = (0..points.len())
                .any(|i| (i + 1..points.len()).any(|j| cross(points[i], points[j], cand) == 0));
            if !degenerate {
                points.push(cand);
            }
        }
        PointSet { points }
    }
}

/// Convex hull boundary as counter-clockwise point indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull {
    pub indices: Vec<usize>,
    pub h: usize,
}

impl Hull {
    pub fn contains_index(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }
}

/// Convex hull in strict mode.
pub fn convex_hull(ps: &PointSet) -> Result<Hull, GeomError> {
    convex_hull_with(ps, Position::Strict)
}

/// Andrew's monotone chain. In [`Position::Strict`] mode a hull-boundary
/// point in the relative interior of a hull edge is an error; in
/// [`Position::Lax`] it is kept on the hull.
pub fn convex_hull_with(ps: &PointSet, mode: Position) -> Result<Hull, GeomError> {
    let n = ps.len();
    if n < 3 {
        return Err(GeomError::TooFewPoints { needed: 3, got: n });
    }
    let pts = ps.points();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| pts[i]);

    if (2..n).all(|k| cross(pts[order[0]], pts[order[1]], pts[order[k]]) == 0) {
        return Err(GeomError::CollinearInput);
    }

    // Keep collinear points on the chain so they can be reported or kept.
    let chain = |iter: &mut dyn Iterator<Item = usize>| {
        let mut out: Vec<usize> = Vec::new();
        for i in iter {
            while out.len() >= 2
                && cross(pts[out[out.len() - 2]], pts[out[out.len() - 1]], pts[i]) < 0
            {
                out.pop();
            }
            out.push(i);
        }
        out
    };
    let mut lower = chain(&mut order.iter().copied());
    let mut upper = chain(&mut order.iter().rev().copied());
    lower.pop();
    upper.pop();
    let mut ring = lower;
    ring.extend(upper);

    // A chain that keeps collinear points can fold back over a straight
    // stretch at the extremes; drop repeated indices.
    let mut seen = vec![false; n];
    ring.retain(|&i| !std::mem::replace(&mut seen[i], true));

    let len = ring.len();
    for k in 0..len {
        let (a, b, c) = (ring[(k + len - 1) % len], ring[k], ring[(k + 1) % len]);
        if cross(pts[a], pts[b], pts[c]) == 0 && mode == Position::Strict {
            let mut t = [a, b, c];
            t.sort_unstable();
            return Err(GeomError::CollinearBoundary(t[0], t[1], t[2]));
        }
    }
    let h = ring.len();
    Ok(Hull { indices: ring, h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0, 0), p(1, 0), p(0, 1)), Orientation::Left);
        assert_eq!(
            orientation(p(0, 0), p(1, 0), p(2, 0)),
            Orientation::Collinear
        );
        assert_eq!(orientation(p(0, 0), p(0, 1), p(1, 1)), Orientation::Right);
    }

    #[test]
    fn square_with_center() {
        let ps = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]).unwrap();
        let hull = convex_hull(&ps).unwrap();
        assert_eq!(hull.h, 4);
        let mut idx = hull.indices.clone();
        idx.sort();
        assert_eq!(idx, vec![0, 1, 2, 3]);
    }

    #[test]
    fn triangle_hull() {
        let ps = PointSet::from_coords(&[(0, 0), (6, 0), (3, 5)]).unwrap();
        assert_eq!(convex_hull(&ps).unwrap().h, 3);
    }

    #[test]
    fn collinear_inputs() {
        let line = PointSet::from_coords(&[(0, 0), (1, 1), (2, 2), (5, 5)]).unwrap();
        assert_eq!(convex_hull(&line), Err(GeomError::CollinearInput));

        let mid_edge = PointSet::from_coords(&[(0, 0), (2, 0), (4, 0), (2, 3)]).unwrap();
        assert_eq!(
            convex_hull(&mid_edge),
            Err(GeomError::CollinearBoundary(0, 1, 2))
        );
        let lax = convex_hull_with(&mid_edge, Position::Lax).unwrap();
        assert_eq!(lax.h, 4);
        assert_eq!(lax.indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn lax_allows_interior_collinearity() {
        let ps = PointSet::from_coords(&[(0, 0), (10, 0), (5, 9), (4, 3), (5, 3), (6, 3)]).unwrap();
        assert!(ps.check_general_position().is_err());
        assert_eq!(convex_hull_with(&ps, Position::Lax).unwrap().h, 3);
        assert_eq!(convex_hull(&ps).unwrap().h, 3);
    }

    #[test]
    fn bad_point_sets() {
        assert_eq!(
            PointSet::from_coords(&[(0, 0), (1, 0), (0, 0)]),
            Err(GeomError::DuplicatePoint(0, 2))
        );
        assert!(matches!(
            PointSet::from_coords(&[(COORD_LIMIT + 1, 0)]),
            Err(GeomError::OutOfRange { index: 0, .. })
        ));
        let two = PointSet::from_coords(&[(0, 0), (1, 0)]).unwrap();
        assert!(matches!(
            convex_hull(&two),
            Err(GeomError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn crossing_examples() {
        let s = |a: (i64, i64), b: (i64, i64)| Segment::new(p(a.0, a.1), p(b.0, b.1));
        assert!(segments_cross(s((0, 0), (2, 2)), s((0, 2), (2, 0))));
        assert!(!segments_cross(s((0, 0), (1, 0)), s((1, 0), (2, 1))));
        assert!(segments_cross(s((0, 0), (4, 0)), s((2, 0), (6, 0))));
        // Shared endpoint with collinear overlap.
        assert!(segments_cross(s((0, 0), (4, 0)), s((0, 0), (2, 0))));
        // Shared endpoint, collinear, opposite directions.
        assert!(!segments_cross(s((0, 0), (4, 0)), s((0, 0), (-2, 0))));
        // T-junction: endpoint touching the other segment's interior.
        assert!(segments_cross(s((0, 0), (4, 0)), s((2, 0), (2, 3))));
        assert!(!segments_cross(s((0, 0), (4, 0)), s((5, 0), (7, 0))));
    }

    #[test]
    fn json_shape() {
        let ps: PointSet = serde_json::from_str(r#"{"points": [[0,0],[3,1],[1,4]]}"#).unwrap();
        assert_eq!(ps.get(1), p(3, 1));
        assert_eq!(
            serde_json::to_string(&ps).unwrap(),
            r#"{"points":[[0,0],[3,1],[1,4]]}"#
        );
        assert!(serde_json::from_str::<PointSet>(r#"{"points": [[0,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn seeded_hull_matches_all_edges_oracle() {
        let ps = PointSet::random_general_position(7, 100, 7);
        let hull = convex_hull(&ps).unwrap();
        // Oracle: i -> j is a hull edge iff every other point is strictly left.
        let pts = ps.points();
        let mut oracle_edges = Vec::new();
        for i in 0..7 {
            for j in 0..7 {
                if i != j
                    && (0..7)
                        .filter(|&k| k != i && k != j)
                        .all(|k| cross(pts[i], pts[j], pts[k]) > 0)
                {
                    oracle_edges.push((i, j));
                }
            }
        }
        let h = hull.h;
        let mut hull_edges: Vec<(usize, usize)> = (0..h)
            .map(|k| (hull.indices[k], hull.indices[(k + 1) % h]))
            .collect();
        hull_edges.sort();
        oracle_edges.sort();
        assert_eq!(hull_edges, oracle_edges);
        assert_eq!(h, oracle_edges.len());
    }

    #[test]
    fn random_sets_are_reproducible() {
        let a = PointSet::random_general_position(12, 1000, 42);
        let b = PointSet::random_general_position(12, 1000, 42);
        assert_eq!(a, b);
        assert!(a.check_general_position().is_ok());
    }

    fn small() -> impl Strategy<Value = Point> {
        (-20i64..20, -20i64..20).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric_and_cyclic(a in small(), b in small(), c in small()) {
            let o = orientation(a, b, c);
            prop_assert_eq!(o, orientation(a, c, b).reversed());
            prop_assert_eq!(o, orientation(b, c, a));
            prop_assert_eq!(o, orientation(c, a, b));
        }

        #[test]
        fn crossing_symmetric(a in small(), b in small(), c in small(), d in small()) {
            let s = Segment::new(a, b);
            let t = Segment::new(c, d);
            prop_assert_eq!(segments_cross(s, t), segments_cross(t, s));
        }

        #[test]
        fn hull_permutation_invariant(seed in 0u64..500, n in 3usize..15, rot in 0usize..15) {
            let ps = PointSet::random_general_position(n, 200, seed);
            let hull = convex_hull(&ps).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.rotate_left(rot % n);
            perm.reverse();
            let shuffled = PointSet::new(perm.iter().map(|&i| ps.get(i)).collect()).unwrap();
            let hull2 = convex_hull(&shuffled).unwrap();
            let mapped: Vec<usize> = hull2.indices.iter().map(|&i| perm[i]).collect();
            prop_assert_eq!(mapped.len(), hull.h);
            let start = mapped.iter().position(|&i| i == hull.indices[0]).unwrap();
            let mut rotated = mapped.clone();
            rotated.rotate_left(start);
            prop_assert_eq!(rotated, hull.indices.clone());
        }

        #[test]
        fn non_hull_points_strictly_inside(seed in 0u64..500, n in 3usize..20) {
            let ps = PointSet::random_general_position(n, 300, seed);
            let hull = convex_hull(&ps).unwrap();
            let h = hull.h;
            for i in 0..n {
                if hull.contains_index(i) { continue; }
                for k in 0..h {
                    let a = ps.get(hull.indices[k]);
                    let b = ps.get(hull.indices[(k + 1) % h]);
                    prop_assert_eq!(orientation(a, b, ps.get(i)), Orientation::Left);
                }
            }
        }
    }
}
