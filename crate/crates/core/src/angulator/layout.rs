//! Straight-line coordinates for coordinate-free plane graphs.
//!
//! Each face of length four or more gets an extra vertex joined to its whole
//! boundary, the exterior face included. The result is a triangulation,
//! which is drawn with Schnyder's face-counting method: a canonical order
//! yields three spanning trees, the three tree paths out of a vertex cut the
//! inner triangles into three regions, and two region sizes are the
//! vertex's grid coordinates. The drawing is exact and crossing-free on a
//! `(2N - 5)`-sized grid, where `N` counts the extra vertices too. Removing
//! the extra vertices leaves a drawing of the original graph with the same
//! rotation system and exterior face.

use std::collections::{HashMap, HashSet};

use crate::geom::{Point, PointSet, COORD_LIMIT};
use crate::plane_graph::PlaneGraph;

use super::AngulatorError;

/// Gives `graph` integer coordinates. The drawing is rebuilt geometrically
/// and compared against the input's rotation system and face census before
/// it is returned.
pub fn synthesize_coordinates(graph: &PlaneGraph) -> Result<PlaneGraph, AngulatorError> {
    let n = graph.vertex_count();
    let census = graph.face_census();
    for walk in &census.walks {
        let distinct: HashSet<usize> = walk.iter().copied().collect();
        if distinct.len() != walk.len() {
            return Err(AngulatorError::LayoutUnsupported(format!(
                "face {walk:?} is not bounded by a simple cycle"
            )));
        }
    }

    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut total = n;
    let mut outer_triangle = None;
    for (f, walk) in census.walks.iter().enumerate() {
        if walk.len() == 3 {
            if f == census.outer {
                outer_triangle = Some(faces.len());
            }
            faces.push(walk.clone());
            continue;
        }
        let hub = total;
        total += 1;
        let k = walk.len();
        for i in 0..k {
            if f == census.outer && i == 0 {
                outer_triangle = Some(faces.len());
            }
            faces.push(vec![walk[i], walk[(i + 1) % k], hub]);
        }
    }
    let outer = outer_triangle.expect("exterior face produced no triangle");
    let stacked = PlaneGraph::from_faces(total, &faces, outer)?;

    let span = 2 * total as i64 - 5;
    if span > COORD_LIMIT {
        return Err(AngulatorError::LayoutOverflow(span));
    }
    let coords = schnyder(&stacked)?;

    let ps = PointSet::new(coords[..n].to_vec())?;
    let rebuilt = PlaneGraph::build_geometric(&ps, &graph.edges())?;
    let same_rotation = (0..n).all(|v| same_cycle(rebuilt.rotation(v), graph.rotation(v)));
    if !same_rotation || rebuilt.face_census().canonical() != census.canonical() {
        return Err(AngulatorError::Inconsistent(
            "synthesized drawing does not reproduce the embedding".into(),
        ));
    }
    let mut out = graph.clone();
    out.set_coordinates(coords[..n].to_vec());
    Ok(out)
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(s) => a
            .iter()
            .zip(b[s..].iter().chain(&b[..s]))
            .all(|(x, y)| x == y),
        None => false,
    }
}

/// Schnyder drawing of a triangulation whose exterior face is a triangle.
fn schnyder(tri: &PlaneGraph) -> Result<Vec<Point>, AngulatorError> {
    let total = tri.vertex_count();
    let outer = tri.face_walk(tri.outer_face());
    // The exterior walk runs clockwise; counter-clockwise it is a1, a2, a3.
    let (a1, a3, a2) = (outer[0], outer[1], outer[2]);
    let span = 2 * total as i64 - 5;
    if total == 3 {
        let mut coords = vec![Point::new(0, 0); 3];
        coords[a1] = Point::new(span, 0);
        coords[a2] = Point::new(0, span);
        return Ok(coords);
    }

    let inconsistent = |msg: &str| AngulatorError::Inconsistent(format!("schnyder: {msg}"));

    // Peel vertices off the top of the boundary path a1 .. a2 in reverse
    // canonical order. When v leaves, its lower neighbours replace it on the
    // path; the outermost two are its parents towards a1 and a2, the ones
    // strictly between take v as their parent towards a3.
    const NONE: usize = usize::MAX;
    let mut parent = [vec![NONE; total], vec![NONE; total], vec![NONE; total]];
    let mut removed = vec![false; total];
    let mut on_path = vec![false; total];
    let mut path = vec![a1, a3, a2];
    for &v in &path {
        on_path[v] = true;
    }
    for _ in 0..total - 2 {
        let pick = (1..path.len() - 1).find(|&i| {
            let v = path[i];
            tri.rotation(v)
                .iter()
                .all(|&w| removed[w] || !on_path[w] || w == path[i - 1] || w == path[i + 1])
        });
        let i = pick.ok_or_else(|| inconsistent("no removable vertex on the boundary"))?;
        let (v, left, right) = (path[i], path[i - 1], path[i + 1]);
        let rot = tri.rotation(v);
        let k = rot.len();
        let start = rot.iter().position(|&w| w == left).unwrap();
        let mut inner = Vec::new();
        let mut s = (start + 1) % k;
        while rot[s] != right {
            let w = rot[s];
            if removed[w] || on_path[w] {
                return Err(inconsistent("lower neighbourhood is not an interval"));
            }
            inner.push(w);
            s = (s + 1) % k;
        }
        removed[v] = true;
        on_path[v] = false;
        parent[0][v] = left;
        parent[1][v] = right;
        for &w in &inner {
            parent[2][w] = v;
            on_path[w] = true;
        }
        path.splice(i..=i, inner);
    }
    if path != [a1, a2] {
        return Err(inconsistent("peeling did not end on the base edge"));
    }

    let half_of: HashMap<(usize, usize), usize> = tri
        .half_edges()
        .iter()
        .enumerate()
        .map(|(e, he)| ((he.origin, tri.head(e)), e))
        .collect();
    let inner_side = |u: usize, v: usize| {
        let e = half_of[&(u, v)];
        let f = tri.face_of(e);
        if f == tri.outer_face() {
            tri.face_of(tri.half_edges()[e].twin)
        } else {
            f
        }
    };
    // Region i is bounded by the paths in the two other trees and the
    // exterior edge opposite root i.
    let seeds = [inner_side(a2, a3), inner_side(a3, a1)];

    let mut coords = vec![Point::new(0, 0); total];
    coords[a1] = Point::new(span, 0);
    coords[a2] = Point::new(0, span);
    for (v, slot) in coords.iter_mut().enumerate() {
        if v == a1 || v == a2 || v == a3 {
            continue;
        }
        let mut barrier: HashSet<(usize, usize)> = HashSet::new();
        for tree in &parent {
            let mut u = v;
            while tree[u] != NONE {
                let p = tree[u];
                barrier.insert((u.min(p), u.max(p)));
                u = p;
            }
        }
        let mut region = [0i64; 2];
        for (r, &seed) in seeds.iter().enumerate() {
            region[r] = flood(tri, seed, &barrier) as i64;
        }
        *slot = Point::new(region[0], region[1]);
    }
    Ok(coords)
}

/// Inner faces reachable from `seed` without crossing a barrier edge.
fn flood(tri: &PlaneGraph, seed: usize, barrier: &HashSet<(usize, usize)>) -> usize {
    let he = tri.half_edges();
    let mut seen = vec![false; tri.face_count()];
    let mut stack = vec![seed];
    seen[seed] = true;
    let mut count = 0;
    let mut starts = vec![usize::MAX; tri.face_count()];
    for e in 0..he.len() {
        let f = tri.face_of(e);
        if starts[f] == usize::MAX {
            starts[f] = e;
        }
    }
    while let Some(f) = stack.pop() {
        count += 1;
        let mut e = starts[f];
        loop {
            let (u, v) = (he[e].origin, tri.head(e));
            let across = tri.face_of(he[e].twin);
            if !seen[across]
                && across != tri.outer_face()
                && !barrier.contains(&(u.min(v), u.max(v)))
            {
                seen[across] = true;
                stack.push(across);
            }
            e = he[e].next;
            if e == starts[f] {
                break;
            }
        }
    }
    count
}
