//! Connected simple plane graphs stored as half-edges.
//!
//! Every undirected edge is split into two half-edges that are each other's
//! `twin`. `next` walks the face lying to the left of a half-edge, so inner
//! faces are traced counter-clockwise and the exterior face clockwise. The
//! rotation at a vertex (counter-clockwise neighbour order) is recovered as
//! `twin(prev(e))`.
//!
//! Face degree is the length of the closed boundary walk. A bridge is walked
//! twice by the single face it borders, so
//! `2m = h + sum of inner face degrees` holds for every graph, bridges
//! included.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{angle_cmp, direction, segments_cross, GeomError, Point, PointSet, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a plane graph needs at least {0} vertices")]
    TooFewVertices(usize),
    #[error("edge {edge} refers to vertex {vertex}, but there are only {n} vertices")]
    InvalidVertex {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edges {first:?} and {second:?} cross")]
    CrossingEdges {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("malformed rotation system: {0}")]
    MalformedRotationSystem(String),
    #[error("no face has boundary walk {0:?}")]
    OuterFaceNotFound(Vec<usize>),
    #[error("declared outer face {declared:?} differs from the geometric exterior {actual:?}")]
    OuterFaceMismatch {
        declared: Vec<usize>,
        actual: Vec<usize>,
    },
    #[error("graph document has neither coordinates nor a rotation system")]
    MissingRotation,
    #[error("graph document lists {0} coordinates for {1} vertices")]
    CoordinateCountMismatch(usize, usize),
    #[error("rotation system and edge list describe different edge sets")]
    EdgeListMismatch,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// One directed side of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    n: usize,
    half_edges: Vec<HalfEdge>,
    prev: Vec<usize>,
    face_of: Vec<usize>,
    /// One representative half-edge per face.
    face_start: Vec<usize>,
    outer_face: usize,
    /// Counter-clockwise neighbour order per vertex.
    rotation: Vec<Vec<usize>>,
    coords: Option<Vec<Point>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> Result<(), GraphError> {
    let mut seen = std::collections::HashSet::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::InvalidVertex {
                    edge: k,
                    vertex: w,
                    n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
    }
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    let root = uf.find(0);
    if (1..n).any(|v| uf.find(v) != root) {
        return Err(GraphError::Disconnected);
    }
    Ok(())
}

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedRotationSystem(msg.into())
}

impl PlaneGraph {
    /// Straight-line graph on a point set. Rotations come from sorting
    /// incident edges by angle; the exterior face is the one met when
    /// leaving the lowest (then leftmost) point along its steepest edge.
    pub fn build_geometric(ps: &PointSet, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = ps.len();
        if n < 2 {
            return Err(GraphError::TooFewVertices(2));
        }
        check_edges(n, edges)?;
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            let s = Segment::new(ps.get(a), ps.get(b));
            for &(c, d) in &edges[i + 1..] {
                if segments_cross(s, Segment::new(ps.get(c), ps.get(d))) {
                    return Err(GraphError::CrossingEdges {
                        first: (a, b),
                        second: (c, d),
                    });
                }
            }
        }

        let mut rotation = vec![Vec::new(); n];
        for &(u, v) in edges {
            rotation[u].push(v);
            rotation[v].push(u);
        }
        for (v, nbrs) in rotation.iter_mut().enumerate() {
            let at = ps.get(v);
            nbrs.sort_by(|&a, &b| angle_cmp(direction(at, ps.get(a)), direction(at, ps.get(b))));
        }

        let lowest = (0..n).min_by_key(|&v| (ps.get(v).y, ps.get(v).x)).unwrap();
        // Incident directions at the lowest point all lie in [0, pi); the
        // last one in counter-clockwise order borders the exterior.
        let steepest = *rotation[lowest].last().unwrap();

        let (half_edges, index) = half_edges_from_rotation(&rotation)?;
        let outer = index[&(lowest, steepest)];
        let mut g = PlaneGraph::assemble(n, half_edges, outer)?;
        g.coords = Some(ps.points().to_vec());
        Ok(g)
    }

    /// Graph from an explicit half-edge table. `outer_walk` is the vertex
    /// sequence of the exterior face as traced by `next`.
    pub fn build_combinatorial(
        n: usize,
        table: Vec<HalfEdge>,
        outer_walk: &[usize],
    ) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::TooFewVertices(2));
        }
        let len = table.len();
        if len == 0 {
            return Err(GraphError::Disconnected);
        }
        let mut next_hit = vec![false; len];
        for (e, he) in table.iter().enumerate() {
            if he.origin >= n {
                return Err(malformed(format!(
                    "half-edge {e} has origin {} >= n",
                    he.origin
                )));
            }
            if he.twin >= len || he.twin == e || table[he.twin].twin != e {
                return Err(malformed(format!(
                    "twin of half-edge {e} is not an involution"
                )));
            }
            if he.next >= len || std::mem::replace(&mut next_hit[he.next], true) {
                return Err(malformed(format!(
                    "next is not a permutation (at half-edge {e})"
                )));
            }
        }
        for (e, he) in table.iter().enumerate() {
            let dest = table[he.twin].origin;
            if table[he.next].origin != dest {
                return Err(malformed(format!(
                    "next of half-edge {e} does not start at its head"
                )));
            }
        }
        let edges: Vec<(usize, usize)> = table
            .iter()
            .enumerate()
            .filter(|&(e, _)| e < table[e].twin)
            .map(|(_, he)| (he.origin, table[he.twin].origin))
            .collect();
        check_edges(n, &edges)?;

        let outer = find_walk(&table, outer_walk)
            .ok_or_else(|| GraphError::OuterFaceNotFound(outer_walk.to_vec()))?;
        PlaneGraph::assemble(n, table, outer)
    }

    /// Graph from counter-clockwise neighbour lists.
    pub fn from_rotation(
        n: usize,
        rotation: &[Vec<usize>],
        outer_walk: &[usize],
    ) -> Result<Self, GraphError> {
        if rotation.len() != n {
            return Err(malformed(format!(
                "{} rotation lists for {n} vertices",
                rotation.len()
            )));
        }
        for (v, nbrs) in rotation.iter().enumerate() {
            if let Some(&w) = nbrs.iter().find(|&&w| w >= n) {
                return Err(GraphError::InvalidVertex {
                    edge: v,
                    vertex: w,
                    n,
                });
            }
        }
        let (table, _) = half_edges_from_rotation(rotation)?;
        PlaneGraph::build_combinatorial(n, table, outer_walk)
    }

    /// Graph from its face boundary walks. Every face except the exterior
    /// one is listed counter-clockwise; the exterior walk is clockwise.
    pub fn from_faces(n: usize, faces: &[Vec<usize>], outer: usize) -> Result<Self, GraphError> {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut table = Vec::new();
        for face in faces {
            let k = face.len();
            for i in 0..k {
                let (u, v) = (face[i], face[(i + 1) % k]);
                if u >= n || v >= n {
                    return Err(GraphError::InvalidVertex {
                        edge: table.len(),
                        vertex: u.max(v),
                        n,
                    });
                }
                if index.insert((u, v), table.len()).is_some() {
                    return Err(malformed(format!("directed edge {u}->{v} appears twice")));
                }
                table.push(HalfEdge {
                    origin: u,
                    twin: usize::MAX,
                    next: usize::MAX,
                });
            }
        }
        let mut e = 0;
        for face in faces {
            let k = face.len();
            let base = e;
            for i in 0..k {
                let (u, v) = (face[i], face[(i + 1) % k]);
                table[e].next = base + (i + 1) % k;
                table[e].twin = *index
                    .get(&(v, u))
                    .ok_or_else(|| malformed(format!("edge {u}->{v} has no twin")))?;
                e += 1;
            }
        }
        let walk = faces
            .get(outer)
            .ok_or_else(|| malformed("outer face index out of range"))?;
        PlaneGraph::build_combinatorial(n, table, walk)
    }

    fn assemble(
        n: usize,
        half_edges: Vec<HalfEdge>,
        outer_half: usize,
    ) -> Result<Self, GraphError> {
        let len = half_edges.len();
        let mut prev = vec![0; len];
        for (e, he) in half_edges.iter().enumerate() {
            prev[he.next] = e;
        }

        // Outgoing half-edges of each vertex must form a single orbit of the
        // rotation, otherwise the surface is pinched at that vertex.
        let mut out_count = vec![0usize; n];
        let mut any_out = vec![usize::MAX; n];
        for (e, he) in half_edges.iter().enumerate() {
            out_count[he.origin] += 1;
            any_out[he.origin] = e;
        }
        let mut rotation = vec![Vec::new(); n];
        for v in 0..n {
            let start = any_out[v];
            if start == usize::MAX {
                return Err(GraphError::Disconnected);
            }
            let mut e = start;
            loop {
                rotation[v].push(half_edges[half_edges[e].twin].origin);
                e = half_edges[prev[e]].twin;
                if e == start {
                    break;
                }
            }
            if rotation[v].len() != out_count[v] {
                return Err(malformed(format!(
                    "rotation at vertex {v} splits into several cycles"
                )));
            }
        }

        let mut face_of = vec![usize::MAX; len];
        let mut face_start = Vec::new();
        for s in 0..len {
            if face_of[s] != usize::MAX {
                continue;
            }
            let id = face_start.len();
            face_start.push(s);
            let mut e = s;
            while face_of[e] == usize::MAX {
                face_of[e] = id;
                e = half_edges[e].next;
            }
        }
        let m = len / 2;
        let f = face_start.len();
        if n as i64 - m as i64 + f as i64 != 2 {
            return Err(malformed(format!(
                "rotation system is not planar: n - m + f = {} - {} + {} != 2",
                n, m, f
            )));
        }
        let outer_face = face_of[outer_half];
        Ok(PlaneGraph {
            n,
            half_edges,
            prev,
            face_of,
            face_start,
            outer_face,
            rotation,
            coords: None,
        })
    }

    /// Rebuilds from an interchange document. Documents with coordinates are
    /// built geometrically; otherwise `rotation` and `outer_face` are needed.
    pub fn from_doc(doc: &GraphDoc) -> Result<Self, GraphError> {
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        if let Some(coords) = &doc.coordinates {
            if coords.len() != doc.n {
                return Err(GraphError::CoordinateCountMismatch(coords.len(), doc.n));
            }
            let ps = PointSet::new(coords.clone())?;
            let g = PlaneGraph::build_geometric(&ps, &edges)?;
            if let Some(declared) = &doc.outer_face {
                if find_walk(&g.half_edges, declared).map(|e| g.face_of[e]) != Some(g.outer_face) {
                    return Err(GraphError::OuterFaceMismatch {
                        declared: declared.clone(),
                        actual: g.face_walk(g.outer_face),
                    });
                }
            }
            return Ok(g);
        }
        let rotation = doc.rotation.as_ref().ok_or(GraphError::MissingRotation)?;
        let outer = doc.outer_face.as_ref().ok_or(GraphError::MissingRotation)?;
        let g = PlaneGraph::from_rotation(doc.n, rotation, outer)?;
        check_edges(doc.n, &edges)?;
        let mut listed: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        listed.sort_unstable();
        if listed != g.edges() {
            return Err(GraphError::EdgeListMismatch);
        }
        Ok(g)
    }

    /// Canonical document: rotations start at the smallest neighbour and
    /// faces are listed as in [`FaceCensus::canonical`], exterior first, so
    /// equal embeddings give equal documents.
    pub fn to_doc(&self) -> GraphDoc {
        let (outer, inner) = self.face_census().canonical();
        let rotation = self
            .rotation
            .iter()
            .map(|r| {
                let s = r
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &w)| w)
                    .map_or(0, |(i, _)| i);
                r[s..].iter().chain(&r[..s]).copied().collect()
            })
            .collect();
        GraphDoc {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            coordinates: self.coords.clone(),
            outer_face: Some(outer.clone()),
            rotation: Some(rotation),
            faces: Some(std::iter::once(outer).chain(inner).collect()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_start.len()
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn coordinates(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub(crate) fn set_coordinates(&mut self, coords: Vec<Point>) {
        self.coords = Some(coords);
    }

    /// Counter-clockwise neighbour order around `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn head(&self, e: usize) -> usize {
        self.half_edges[self.half_edges[e].twin].origin
    }

    pub fn prev(&self, e: usize) -> usize {
        self.prev[e]
    }

    pub fn face_of(&self, e: usize) -> usize {
        self.face_of[e]
    }

    /// Sorted `(min, max)` endpoint pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .half_edges
            .iter()
            .filter(|he| he.origin < self.half_edges[he.twin].origin)
            .map(|he| (he.origin, self.half_edges[he.twin].origin))
            .collect();
        out.sort_unstable();
        out
    }

    fn face_half_edges(&self, face: usize) -> Vec<usize> {
        let start = self.face_start[face];
        let mut walk = vec![start];
        let mut e = self.half_edges[start].next;
        while e != start {
            walk.push(e);
            e = self.half_edges[e].next;
        }
        walk
    }

    /// Vertex sequence of a face's boundary walk.
    pub fn face_walk(&self, face: usize) -> Vec<usize> {
        self.face_half_edges(face)
            .into_iter()
            .map(|e| self.half_edges[e].origin)
            .collect()
    }

    pub fn face_census(&self) -> FaceCensus {
        let faces: Vec<Vec<usize>> = (0..self.face_count())
            .map(|f| self.face_half_edges(f))
            .collect();
        let walks = faces
            .iter()
            .map(|w| w.iter().map(|&e| self.half_edges[e].origin).collect())
            .collect();
        let degrees: Vec<usize> = faces.iter().map(Vec::len).collect();
        let mut inner_degrees = BTreeMap::new();
        for (f, &d) in degrees.iter().enumerate() {
            if f != self.outer_face {
                *inner_degrees.entry(d).or_insert(0) += 1;
            }
        }
        FaceCensus {
            f: faces.len(),
            exterior_degree: degrees[self.outer_face],
            outer: self.outer_face,
            faces,
            walks,
            degrees,
            inner_degrees,
        }
    }

    /// Length of a shortest cycle, by breadth-first search from every
    /// vertex. `None` for trees.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n;
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &w in &self.rotation[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn euler_audit(&self) -> EulerAudit {
        let (n, m, f) = (self.n, self.edge_count(), self.face_count());
        EulerAudit {
            n,
            m,
            f,
            holds: n as i64 - m as i64 + f as i64 == 2,
        }
    }

    pub fn degree_sum_audit(&self) -> DegreeSumAudit {
        let census = self.face_census();
        let lhs = 2 * self.edge_count();
        let rhs = census.exterior_degree
            + census
                .inner_degrees
                .iter()
                .map(|(d, count)| d * count)
                .sum::<usize>();
        DegreeSumAudit {
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

/// Half-edges plus the id of each directed edge `(origin, head)`.
type HalfEdgeTable = (Vec<HalfEdge>, HashMap<(usize, usize), usize>);

fn half_edges_from_rotation(rotation: &[Vec<usize>]) -> Result<HalfEdgeTable, GraphError> {
    let mut index = HashMap::new();
    let mut table = Vec::new();
    for (v, nbrs) in rotation.iter().enumerate() {
        for &u in nbrs {
            if u == v {
                return Err(GraphError::SelfLoop(v));
            }
            if index.insert((v, u), table.len()).is_some() {
                return Err(GraphError::DuplicateEdge(v.min(u), v.max(u)));
            }
            table.push(HalfEdge {
                origin: v,
                twin: usize::MAX,
                next: usize::MAX,
            });
        }
    }
    for (v, nbrs) in rotation.iter().enumerate() {
        let k = nbrs.len();
        for (i, &u) in nbrs.iter().enumerate() {
            let out = index[&(v, u)];
            let inc = *index
                .get(&(u, v))
                .ok_or_else(|| malformed(format!("{u} is not listed around {v}")))?;
            table[out].twin = inc;
            // The face left of u->v continues along v's clockwise successor of u.
            let w = nbrs[(i + k - 1) % k];
            table[inc].next = index[&(v, w)];
        }
    }
    Ok((table, index))
}

/// Half-edge that starts a face whose vertex walk is exactly `walk`.
fn find_walk(table: &[HalfEdge], walk: &[usize]) -> Option<usize> {
    if walk.len() < 2 {
        return None;
    }
    let start = table
        .iter()
        .position(|he| he.origin == walk[0] && table[he.twin].origin == walk[1])?;
    let mut e = start;
    for (i, &v) in walk.iter().enumerate() {
        if table[e].origin != v || (i > 0 && e == start) {
            return None;
        }
        e = table[e].next;
    }
    (e == start).then_some(start)
}

/// Boundary walks and degrees of every face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    /// Half-edge ids of each face walk.
    pub faces: Vec<Vec<usize>>,
    /// The same walks as vertex sequences.
    pub walks: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub outer: usize,
    pub exterior_degree: usize,
    /// Inner face degree -> number of inner faces with that degree.
    pub inner_degrees: BTreeMap<usize, usize>,
    pub f: usize,
}

impl FaceCensus {
    pub fn inner_face_count(&self) -> usize {
        self.f - 1
    }

    pub fn min_inner_degree(&self) -> Option<usize> {
        self.inner_degrees.keys().next().copied()
    }

    /// Embedding-independent form: each walk rotated to start at its
    /// smallest vertex, inner walks sorted, exterior kept apart.
    pub fn canonical(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        fn normalize(w: &[usize]) -> Vec<usize> {
            // Smallest rotation, so walks that revisit a vertex still compare.
            (0..w.len())
                .map(|s| w[s..].iter().chain(&w[..s]).copied().collect::<Vec<_>>())
                .min()
                .unwrap_or_default()
        }
        let mut inner: Vec<Vec<usize>> = self
            .walks
            .iter()
            .enumerate()
            .filter(|&(f, _)| f != self.outer)
            .map(|(_, w)| normalize(w))
            .collect();
        inner.sort();
        (normalize(&self.walks[self.outer]), inner)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerAudit {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSumAudit {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// JSON interchange form of a plane graph.
///
/// `rotation` lists each vertex's neighbours counter-clockwise and is what
/// makes a coordinate-free document rebuildable. `faces` is written for
/// inspection and ignored when reading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
}
