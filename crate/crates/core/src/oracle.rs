//! Exhaustive extremal search over straight-line graphs on small point sets.
//!
//! Every candidate segment between two points gets a bit; a graph is a
//! `u64` mask. The search adds segments in index order, keeping a mask of
//! segments that can still be added: later in the order, not crossing
//! anything chosen, and not closing a cycle shorter than the girth floor.
//! Since adding edges only shortens distances and creates crossings, a
//! segment that drops out of that mask never comes back, and a subtree is
//! dead once the chosen plus still-addable segments cannot connect all
//! points or cannot reach the current edge target.
//!
//! Only spanning connected graphs are counted. The exterior degree is the
//! length of the boundary walk of the unbounded face, bridges walked twice.

use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{self, FormulaError};
use crate::geom::{angle_cmp, direction, segments_cross, GeomError, PointSet, Segment};

/// Largest point set the search accepts.
pub const MAX_POINTS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} points exceeds the exhaustive-search limit of {MAX_POINTS}")]
    TooLarge(usize),
    #[error("no connected graph with girth >= {g} and exterior degree {h} exists on these points")]
    NoGraph { g: u64, h: u64 },
    #[error("girth floor must be at least 3, got {0}")]
    InvalidGirth(u64),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub point_count: u64,
    pub girth_floor: u64,
    pub exterior_degree: u64,
    pub max_edges_found: u64,
    pub bound: u64,
    pub attained: bool,
    /// Lexicographically smallest maximum-edge graph.
    pub witness: Vec<(usize, usize)>,
    /// Number of distinct maximum-edge graphs.
    pub witness_count: u64,
    /// Every maximum-edge graph whose girth is exactly the floor has all
    /// inner faces of that degree.
    pub all_extremal_are_angulations: bool,
}

impl ExtremalReport {
    pub fn within_bound(&self) -> bool {
        self.max_edges_found <= self.bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    /// Plain incumbent branch-and-bound instead of descending from the
    /// formula bound. Reports are identical; this mode exists to check that.
    pub slow: bool,
    /// Run the top-level branches sequentially.
    pub sequential: bool,
}

/// Maximum edge count over connected non-crossing graphs on `ps` with girth
/// at least `g` and exterior degree `h`.
pub fn enumerate_extremal(ps: &PointSet, g: u64, h: u64) -> Result<ExtremalReport, OracleError> {
    enumerate_extremal_with(ps, g, h, SearchOptions::default())
}

pub fn enumerate_extremal_with(
    ps: &PointSet,
    g: u64,
    h: u64,
    opts: SearchOptions,
) -> Result<ExtremalReport, OracleError> {
    let search = Search::new(ps, g)?;
    let n = ps.len() as u32;
    let bound = formulas::edge_bound(n as u64, g, h)?;

    let stats = if opts.slow {
        let incumbent = AtomicU32::new(0);
        search.run(
            Target::Exterior(h as u32),
            &Threshold::Incumbent(&incumbent),
            opts.sequential,
        )
    } else {
        // Every graph at or above the threshold is visited, so graphs that
        // beat the bound would still be found; the bound only decides where
        // to start looking.
        let mut found = None;
        for target in (n - 1..=(bound as u32).max(n - 1)).rev() {
            let stats = search.run(
                Target::Exterior(h as u32),
                &Threshold::Fixed(target),
                opts.sequential,
            );
            if stats.get(h as usize).is_some_and(Option::is_some) {
                found = Some(stats);
                break;
            }
        }
        found.unwrap_or_else(|| vec![None; search.max_walk + 1])
    };
    let best = stats
        .get(h as usize)
        .copied()
        .flatten()
        .ok_or(OracleError::NoGraph { g, h })?;
    Ok(search.report(g, h, bound, best))
}

/// One report per exterior degree realized by some graph on `ps`.
pub fn certify_bound(ps: &PointSet, g: u64) -> Result<Vec<ExtremalReport>, OracleError> {
    certify_bound_with(ps, g, SearchOptions::default())
}

pub fn certify_bound_with(
    ps: &PointSet,
    g: u64,
    opts: SearchOptions,
) -> Result<Vec<ExtremalReport>, OracleError> {
    let search = Search::new(ps, g)?;
    let stats = search.run(Target::Any, &Threshold::Fixed(0), opts.sequential);
    let n = ps.len() as u64;
    let mut reports = Vec::new();
    for (h, best) in stats.into_iter().enumerate() {
        // Walks shorter than g only bound trees.
        if let (Some(best), true) = (best, h as u64 >= g) {
            let h = h as u64;
            reports.push(search.report(g, h, formulas::edge_bound(n, g, h)?, best));
        }
    }
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Best {
    edges: u32,
    count: u64,
    witness: u64,
    all_angulations: bool,
}

impl Best {
    fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(match a.edges.cmp(&b.edges) {
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Equal => Best {
                    edges: a.edges,
                    count: a.count + b.count,
                    witness: lex_min(a.witness, b.witness),
                    all_angulations: a.all_angulations && b.all_angulations,
                },
            }),
        }
    }
}

/// Smaller of two equal-size edge sets compared as sorted index lists.
fn lex_min(a: u64, b: u64) -> u64 {
    let diff = a ^ b;
    if diff == 0 || a & diff & diff.wrapping_neg() != 0 {
        a
    } else {
        b
    }
}

#[derive(Clone, Copy)]
enum Target {
    Any,
    Exterior(u32),
}

enum Threshold<'a> {
    Fixed(u32),
    Incumbent(&'a AtomicU32),
}

impl Threshold<'_> {
    fn get(&self) -> u32 {
        match self {
            Threshold::Fixed(t) => *t,
            Threshold::Incumbent(a) => a.load(AtomicOrdering::Relaxed),
        }
    }
    fn raise(&self, to: u32) {
        if let Threshold::Incumbent(a) = self {
            a.fetch_max(to, AtomicOrdering::Relaxed);
        }
    }
}

struct Search {
    n: usize,
    g: u32,
    edges: Vec<(usize, usize)>,
    /// Edge index by endpoint pair.
    edge_id: Vec<Vec<usize>>,
    crossing: Vec<u64>,
    /// Other points around each point, counter-clockwise.
    around: Vec<Vec<usize>>,
    position: Vec<Vec<usize>>,
    lowest: usize,
    max_walk: usize,
}

impl Search {
    fn new(ps: &PointSet, g: u64) -> Result<Self, OracleError> {
        let n = ps.len();
        if n > MAX_POINTS {
            return Err(OracleError::TooLarge(n));
        }
        if g < 3 {
            return Err(OracleError::InvalidGirth(g));
        }
        if n < 3 {
            return Err(GeomError::TooFewPoints { needed: 3, got: n }.into());
        }
        ps.check_general_position()?;

        let mut edges = Vec::new();
        let mut edge_id = vec![vec![usize::MAX; n]; n];
        #[allow(clippy::needless_range_loop)]
        for u in 0..n {
            for v in u + 1..n {
                edge_id[u][v] = edges.len();
                edge_id[v][u] = edges.len();
                edges.push((u, v));
            }
        }
        let seg = |&(u, v): &(usize, usize)| Segment::new(ps.get(u), ps.get(v));
        let crossing = edges
            .iter()
            .map(|a| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| segments_cross(seg(a), seg(b)))
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        let around: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                let at = ps.get(v);
                others.sort_by(|&a, &b| {
                    angle_cmp(direction(at, ps.get(a)), direction(at, ps.get(b)))
                });
                others
            })
            .collect();
        let mut position = vec![vec![usize::MAX; n]; n];
        for v in 0..n {
            for (i, &u) in around[v].iter().enumerate() {
                position[v][u] = i;
            }
        }
        let lowest = (0..n).min_by_key(|&v| (ps.get(v).y, ps.get(v).x)).unwrap();
        Ok(Search {
            n,
            g: g as u32,
            max_walk: 2 * edges.len(),
            edges,
            edge_id,
            crossing,
            around,
            position,
            lowest,
        })
    }

    fn report(&self, g: u64, h: u64, bound: u64, best: Best) -> ExtremalReport {
        ExtremalReport {
            point_count: self.n as u64,
            girth_floor: g,
            exterior_degree: h,
            max_edges_found: best.edges as u64,
            bound,
            attained: best.edges as u64 == bound,
            witness: (0..self.edges.len())
                .filter(|&k| best.witness >> k & 1 == 1)
                .map(|k| self.edges[k])
                .collect(),
            witness_count: best.count,
            all_extremal_are_angulations: best.all_angulations,
        }
    }

    fn adjacency(&self, mask: u64) -> [u16; MAX_POINTS] {
        let mut adj = [0u16; MAX_POINTS];
        let mut m = mask;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.edges[k];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    fn connected(&self, adj: &[u16; MAX_POINTS]) -> bool {
        let all = (1u16 << self.n) - 1;
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    /// Points within `depth` steps of `v`.
    fn ball(&self, adj: &[u16; MAX_POINTS], v: usize, depth: u32) -> u16 {
        let mut seen = 1u16 << v;
        let mut frontier = seen;
        for _ in 0..depth {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[u];
            }
            frontier = next & !seen;
            if frontier == 0 {
                break;
            }
            seen |= next;
        }
        seen
    }

    /// Drops candidates whose endpoints are fewer than `g - 1` steps apart.
    fn girth_filter(&self, adj: &[u16; MAX_POINTS], mut allowed: u64) -> u64 {
        if self.g <= 3 {
            return allowed;
        }
        let balls: Vec<u16> = (0..self.n).map(|v| self.ball(adj, v, self.g - 2)).collect();
        let mut m = allowed;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            m &= m - 1;
            let (u, v) = self.edges[k];
            if balls[u] >> v & 1 == 1 {
                allowed &= !(1 << k);
            }
        }
        allowed
    }

    fn neighbor_before(&self, adj: &[u16; MAX_POINTS], v: usize, u: usize) -> usize {
        let order = &self.around[v];
        let k = order.len();
        let mut i = self.position[v][u];
        loop {
            i = (i + k - 1) % k;
            if adj[v] >> order[i] & 1 == 1 {
                return order[i];
            }
        }
    }

    fn last_neighbor(&self, adj: &[u16; MAX_POINTS], v: usize) -> usize {
        *self.around[v]
            .iter()
            .rev()
            .find(|&&u| adj[v] >> u & 1 == 1)
            .unwrap()
    }

    fn exterior_degree(&self, adj: &[u16; MAX_POINTS]) -> u32 {
        let start = (self.lowest, self.last_neighbor(adj, self.lowest));
        let mut he = start;
        let mut len = 0;
        loop {
            len += 1;
            let (u, v) = he;
            he = (v, self.neighbor_before(adj, v, u));
            if he == start {
                return len;
            }
        }
    }

    fn girth_of(&self, adj: &[u16; MAX_POINTS]) -> Option<u32> {
        let mut best = None;
        for root in 0..self.n {
            let mut dist = [u32::MAX; MAX_POINTS];
            let mut parent = [usize::MAX; MAX_POINTS];
            let mut queue = std::collections::VecDeque::from([root]);
            dist[root] = 0;
            while let Some(u) = queue.pop_front() {
                for w in 0..self.n {
                    if adj[u] >> w & 1 == 0 {
                        continue;
                    }
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b: u32| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Girth exactly `g` implies every inner face has degree `g`; vacuously
    /// true for graphs whose girth is larger.
    fn angulation_ok(&self, adj: &[u16; MAX_POINTS], mask: u64) -> bool {
        if self.girth_of(adj) != Some(self.g) {
            return true;
        }
        let outer_start = (self.lowest, self.last_neighbor(adj, self.lowest));
        // Visited half-edges: low-to-high direction in `done`, the other in `done_hi`.
        let mut done = 0u64;
        let mut done_hi = 0u64;
        let mark = |done: &mut u64, done_hi: &mut u64, (u, v): (usize, usize)| -> bool {
            let k = self.edge_id[u][v];
            let bits = if u < v { done } else { done_hi };
            let fresh = *bits >> k & 1 == 0;
            *bits |= 1 << k;
            fresh
        };
        let mut outer_walk = outer_start;
        loop {
            mark(&mut done, &mut done_hi, outer_walk);
            let (u, v) = outer_walk;
            outer_walk = (v, self.neighbor_before(adj, v, u));
            if outer_walk == outer_start {
                break;
            }
        }
        let mut m = mask;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            m &= m - 1;
            let (a, b) = self.edges[k];
            for start in [(a, b), (b, a)] {
                if !mark(&mut done, &mut done_hi, start) {
                    continue;
                }
                let mut len = 1;
                let mut he = start;
                loop {
                    let (u, v) = he;
                    he = (v, self.neighbor_before(adj, v, u));
                    if he == start {
                        break;
                    }
                    mark(&mut done, &mut done_hi, he);
                    len += 1;
                }
                if len != self.g {
                    return false;
                }
            }
        }
        true
    }

    /// Best graph per exterior degree.
    fn run(&self, target: Target, threshold: &Threshold, sequential: bool) -> Vec<Option<Best>> {
        let all = (1u64 << self.edges.len()) - 1;
        let root = |k: usize| {
            let mut stats = vec![None; self.max_walk + 1];
            let mask = 1u64 << k;
            let later = all & !((mask << 1) - 1);
            let adj = self.adjacency(mask);
            let allowed = self.girth_filter(&adj, later & !self.crossing[k]);
            self.descend(mask, allowed, target, threshold, &mut stats);
            stats
        };
        let merge = |a: Vec<Option<Best>>, b: Vec<Option<Best>>| {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| Best::merge(x, y))
                .collect::<Vec<_>>()
        };
        let empty = || vec![None; self.max_walk + 1];
        if sequential {
            (0..self.edges.len()).map(root).fold(empty(), merge)
        } else {
            (0..self.edges.len())
                .into_par_iter()
                .map(root)
                .reduce(empty, merge)
        }
    }

    fn descend(
        &self,
        mask: u64,
        allowed: u64,
        target: Target,
        threshold: &Threshold,
        stats: &mut [Option<Best>],
    ) {
        let size = mask.count_ones();
        if size + allowed.count_ones() < threshold.get() {
            return;
        }
        let adj = self.adjacency(mask);
        if !self.connected(&self.adjacency(mask | allowed)) {
            return;
        }
        if size >= threshold.get() && self.connected(&adj) {
            let h = self.exterior_degree(&adj);
            let wanted = match target {
                Target::Any => true,
                Target::Exterior(want) => want == h,
            };
            if wanted {
                let slot = &mut stats[h as usize];
                if slot.is_none_or(|b| size >= b.edges) {
                    let found = Best {
                        edges: size,
                        count: 1,
                        witness: mask,
                        all_angulations: self.angulation_ok(&adj, mask),
                    };
                    *slot = Best::merge(*slot, Some(found));
                    if matches!(target, Target::Exterior(_)) {
                        threshold.raise(size);
                    }
                }
            }
        }
        let mut rest = allowed;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let child = mask | 1 << k;
            let child_adj = {
                let mut a = adj;
                let (u, v) = self.edges[k];
                a[u] |= 1 << v;
                a[v] |= 1 << u;
                a
            };
            let child_allowed = self.girth_filter(&child_adj, rest & !self.crossing[k]);
            self.descend(child, child_allowed, target, threshold, stats);
        }
    }
}
