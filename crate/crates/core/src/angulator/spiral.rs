//! Spiral-fill construction.
//!
//! Start from an `h`-cycle and an interior budget of `b = n - h` fresh
//! vertices. Each step glues an ear, a new `g`-face, onto `j` consecutive
//! edges of the unfilled region's boundary by running a path of `g - j`
//! edges through `g - j - 1` fresh vertices. With `c` the boundary length,
//! a step maps `c -> c + g - 2j` and `b -> b - (g - 1 - j)`, so
//! `(c + 2b - g) / (g - 2)` drops by exactly one. That quantity starts at
//! `t`; when it reaches zero the region left over is the last `g`-face.
//!
//! The ear size is `j = max(1, g - 1 - b)`: single-edge ears while the
//! budget lasts, then one ear that spends the remainder, then chords
//! cutting `g`-gons off the region. Each ear starts where the previous one
//! ended, so the ears wind around the region in a spiral.
//!
//! An ear over the arc `v0 .. vj` closes new cycles only through its path,
//! of length `g - j`, so it keeps the girth at `g` exactly when `v0` and
//! `vj` are still `j` apart in the graph built so far. The cursor skips
//! forward past arcs that have a shortcut (a chord over a stacked vertex
//! when `g = 3`, for instance).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::formulas;
use crate::plane_graph::PlaneGraph;

use super::AngulatorError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarStep {
    /// Boundary edges consumed by the ear.
    pub j: u64,
    /// Boundary length after the step.
    pub boundary: u64,
    /// Fresh vertices still unplaced after the step.
    pub budget: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralTrace {
    pub ears: Vec<EarStep>,
}

/// A convex hull g-angulation on `n` vertices with exterior degree `h`.
///
/// Vertices `0..h` form the exterior cycle in counter-clockwise order.
pub fn construct_combinatorial(n: u64, h: u64, g: u64) -> Result<PlaneGraph, AngulatorError> {
    construct_with_trace(n, h, g).map(|(graph, _)| graph)
}

pub fn construct_with_trace(
    n: u64,
    h: u64,
    g: u64,
) -> Result<(PlaneGraph, SpiralTrace), AngulatorError> {
    let report = formulas::feasibility(n, g, h)?;
    if let Some(reason) = report.reason {
        return Err(AngulatorError::Infeasible(reason));
    }
    let (n, h, g) = (n as usize, h as usize, g as usize);

    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut trace = SpiralTrace::default();
    // Unfilled region, counter-clockwise, with the cursor at index 0.
    let mut boundary: Vec<usize> = (0..h).collect();
    let mut budget = n - h;
    let mut next_vertex = h;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..h {
        let (u, v) = (i, (i + 1) % h);
        adjacency[u].push(v);
        adjacency[v].push(u);
    }

    while boundary.len() + 2 * budget > g {
        let c = boundary.len();
        let j = (g - 1).saturating_sub(budget).max(1);
        if j >= c {
            return Err(AngulatorError::Inconsistent(format!(
                "ear of {j} edges does not fit a boundary of length {c}"
            )));
        }
        let offset = (0..c)
            .find(|&p| j == 1 || !within(&adjacency, boundary[p], boundary[(p + j) % c], j - 1))
            .ok_or_else(|| {
                AngulatorError::Inconsistent(format!("no boundary arc of {j} edges accepts an ear"))
            })?;
        boundary.rotate_left(offset);

        let fresh: Vec<usize> = (next_vertex..next_vertex + (g - 1 - j)).collect();
        next_vertex += fresh.len();
        budget -= fresh.len();

        let mut face: Vec<usize> = boundary[..=j].to_vec();
        face.extend(fresh.iter().rev());
        let path: Vec<usize> = std::iter::once(boundary[0])
            .chain(fresh.iter().copied())
            .chain([boundary[j]])
            .collect();
        for w in path.windows(2) {
            adjacency[w[0]].push(w[1]);
            adjacency[w[1]].push(w[0]);
        }
        faces.push(face);

        let mut rest: Vec<usize> = boundary[j..].to_vec();
        rest.push(boundary[0]);
        rest.extend(&fresh);
        boundary = rest;
        trace.ears.push(EarStep {
            j: j as u64,
            boundary: boundary.len() as u64,
            budget: budget as u64,
        });
    }
    if boundary.len() != g || budget != 0 {
        return Err(AngulatorError::Inconsistent(format!(
            "spiral ended with boundary {} and budget {budget}",
            boundary.len()
        )));
    }
    faces.push(boundary);
    faces.push((0..h).rev().collect());
    let outer = faces.len() - 1;
    Ok((PlaneGraph::from_faces(n, &faces, outer)?, trace))
}

/// Is `to` within `depth` steps of `from`?
fn within(adjacency: &[Vec<usize>], from: usize, to: usize, depth: usize) -> bool {
    let mut dist = vec![usize::MAX; adjacency.len()];
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        if dist[u] == depth {
            continue;
        }
        for &w in &adjacency[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angulator::{recognize, Classification, InfeasibleReason};

    #[test]
    fn single_cycles() {
        for g in 3..=8 {
            let (graph, trace) = construct_with_trace(g, g, g).unwrap();
            assert!(trace.ears.is_empty());
            assert_eq!(graph.edge_count() as u64, g);
            assert_eq!(graph.face_count(), 2);
            let r = recognize(&graph).unwrap();
            assert!(r.is(Classification::GAngulation) && r.is(Classification::ConvexGAngulation));
            assert_eq!(r.measured.t, 0);
        }
    }

    #[test]
    fn eight_four_four_trace() {
        let (graph, trace) = construct_with_trace(8, 4, 4).unwrap();
        let js: Vec<u64> = trace.ears.iter().map(|e| e.j).collect();
        assert_eq!(js, vec![1, 1, 3, 3]);
        assert_eq!(
            trace.ears.last().map(|e| (e.boundary, e.budget)),
            Some((4, 0))
        );
        assert_eq!(graph.edge_count(), 12);
        let r = recognize(&graph).unwrap();
        assert_eq!(r.measured.inner_faces, 5);
        assert_eq!(r.measured.g, 4);
    }

    #[test]
    fn five_four_three() {
        let r = recognize(&construct_combinatorial(5, 4, 3).unwrap()).unwrap();
        assert!(r.is_angulation);
        assert_eq!(
            (r.measured.t, r.measured.m, r.measured.inner_faces),
            (3, 8, 4)
        );
    }

    #[test]
    fn fourteen_five_five() {
        let r = recognize(&construct_combinatorial(14, 5, 5).unwrap()).unwrap();
        assert!(r.is(Classification::GAngulation));
        assert_eq!(
            (r.measured.t, r.measured.m, r.measured.inner_faces),
            (6, 20, 7)
        );
    }

    #[test]
    fn infeasible_requests() {
        assert_eq!(
            construct_combinatorial(7, 5, 4).unwrap_err(),
            AngulatorError::Infeasible(InfeasibleReason::NotDivisible)
        );
        assert_eq!(
            construct_combinatorial(5, 6, 3).unwrap_err(),
            AngulatorError::Infeasible(InfeasibleReason::HExceedsN)
        );
    }

    #[test]
    fn residual_drops_by_one_per_ear() {
        for g in 3u64..=7 {
            for h in g..=14 {
                for n in h..=28 {
                    let Some(params) = formulas::feasibility(n, g, h).unwrap().params else {
                        continue;
                    };
                    let (_, trace) = construct_with_trace(n, h, g).unwrap();
                    let t = params.t;
                    let mut residual = t;
                    for ear in &trace.ears {
                        let r = (ear.boundary + 2 * ear.budget - g) / (g - 2);
                        assert_eq!((ear.boundary + 2 * ear.budget - g) % (g - 2), 0);
                        assert_eq!(r + 1, residual, "({n}, {h}, {g})");
                        residual = r;
                    }
                    assert_eq!(residual, 0);
                    assert_eq!(trace.ears.len() as u64, t);
                }
            }
        }
    }
}
