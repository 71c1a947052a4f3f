use std::collections::BTreeSet;

use crate::geom::{convex_hull, cross, PointSet};
use crate::plane_graph::PlaneGraph;

use super::AngulatorError;

/// Triangulates a point set in strict general position: fan over the hull
/// polygon, then split the triangle containing each interior point into
/// three.
pub fn triangulate_points(ps: &PointSet) -> Result<PlaneGraph, AngulatorError> {
    ps.check_general_position()?;
    let hull = convex_hull(ps)?;
    let pts = ps.points();

    let apex = hull.indices[0];
    let mut triangles: Vec<[usize; 3]> = hull
        .indices
        .windows(2)
        .skip(1)
        .map(|w| [apex, w[0], w[1]])
        .collect();

    for p in (0..ps.len()).filter(|&i| !hull.contains_index(i)) {
        let at = triangles
            .iter()
            .position(|&[a, b, c]| {
                cross(pts[a], pts[b], pts[p]) > 0
                    && cross(pts[b], pts[c], pts[p]) > 0
                    && cross(pts[c], pts[a], pts[p]) > 0
            })
            .ok_or_else(|| {
                AngulatorError::Inconsistent(format!("point {p} lies in no triangle"))
            })?;
        let [a, b, c] = triangles.swap_remove(at);
        triangles.extend([[a, b, p], [b, c, p], [c, a, p]]);
    }

    let edges: BTreeSet<(usize, usize)> = triangles
        .iter()
        .flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)])
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(PlaneGraph::build_geometric(ps, &edges)?)
}
