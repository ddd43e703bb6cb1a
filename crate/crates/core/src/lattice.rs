//! Finite lattice geometry: boxes and tori of `Z^d` for `d = 1, 2`.
//!
//! Infinite lattices are represented by finite windows. A censored box
//! `B_k` is the set of points at L1 distance at most `k` from the origin,
//! with only the edges whose two endpoints both lie inside the box (no
//! boundary edges). A torus has side `n` per axis and is translation
//! invariant, which the shift and mass-transport machinery relies on.
//!
//! Vertex enumeration is row-major over coordinates and edge enumeration is
//! (vertex, axis-direction) lexicographic, so indices are stable across runs
//! and usable as matrix indices.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point. One-dimensional lattices use `coords[1] == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub coords: [i64; 2],
}

impl Vertex {
    pub fn new(x: i64, y: i64) -> Self {
        Vertex { coords: [x, y] }
    }

    pub fn origin() -> Self {
        Vertex { coords: [0, 0] }
    }

    pub fn l1_norm(&self) -> i64 {
        self.coords[0].abs() + self.coords[1].abs()
    }
}

/// An unordered nearest-neighbour edge, stored with its endpoints in
/// canonical (lexicographic) order so each edge has exactly one
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    endpoints: [Vertex; 2],
}

impl Edge {
    /// Canonicalize an endpoint pair. Idempotent and order independent.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { endpoints: [a, b] }
        } else {
            Edge { endpoints: [b, a] }
        }
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        self.endpoints
    }
}

/// Index of an edge in the host lattice's stable enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeMode {
    Torus,
    /// Box `B_k` with censored boundary: no edges leave the box.
    CensoredBox,
}

/// Serializable lattice description, as it appears in experiment configs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub dimension: usize,
    pub mode: LatticeMode,
    pub side_length: i64,
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice> {
        match self.mode {
            LatticeMode::Torus => Lattice::torus(self.dimension, self.side_length),
            LatticeMode::CensoredBox => Lattice::censored_box(self.dimension, self.side_length),
        }
    }
}

/// A finite lattice with stable vertex and edge enumerations.
#[derive(Debug)]
pub struct Lattice {
    dim: usize,
    mode: LatticeMode,
    side: i64,
    vertices: Vec<Vertex>,
    vertex_ids: HashMap<Vertex, usize>,
    edges: Vec<Edge>,
    edge_ids: HashMap<Edge, EdgeId>,
    edge_endpoints: Vec<(usize, usize)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Lattice {
    /// Torus of side `n` per axis. `n = 2` degenerates to a single edge per
    /// axis pair (the two wrap directions meet), which is permitted.
    pub fn torus(dim: usize, n: i64) -> Result<Lattice> {
        if !(dim == 1 || dim == 2) {
            return Err(Error::InvalidLattice(format!("dimension {dim} not in {{1, 2}}")));
        }
        if n < 2 {
            return Err(Error::InvalidLattice(format!("torus side {n} < 2")));
        }
        let mut vertices = Vec::new();
        if dim == 1 {
            for x in 0..n {
                vertices.push(Vertex::new(x, 0));
            }
        } else {
            for y in 0..n {
                for x in 0..n {
                    vertices.push(Vertex::new(x, y));
                }
            }
        }
        Ok(Self::finish(dim, LatticeMode::Torus, n, vertices))
    }

    /// Censored box `B_k`: points of `Z^d` at L1 distance at most `k` from
    /// the origin, with edges `E_{d,k}` (both endpoints inside).
    pub fn censored_box(dim: usize, k: i64) -> Result<Lattice> {
        if !(dim == 1 || dim == 2) {
            return Err(Error::InvalidLattice(format!("dimension {dim} not in {{1, 2}}")));
        }
        if k < 1 {
            return Err(Error::InvalidLattice(format!("box radius {k} < 1")));
        }
        let mut vertices = Vec::new();
        if dim == 1 {
            for x in -k..=k {
                vertices.push(Vertex::new(x, 0));
            }
        } else {
            for y in -k..=k {
                for x in -k..=k {
                    if x.abs() + y.abs() <= k {
                        vertices.push(Vertex::new(x, y));
                    }
                }
            }
        }
        Ok(Self::finish(dim, LatticeMode::CensoredBox, k, vertices))
    }

    pub fn spec(&self) -> LatticeSpec {
        LatticeSpec { dimension: self.dim, mode: self.mode, side_length: self.side }
    }

    fn finish(dim: usize, mode: LatticeMode, side: i64, vertices: Vec<Vertex>) -> Lattice {
        let vertex_ids: HashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut lat = Lattice {
            dim,
            mode,
            side,
            vertices,
            vertex_ids,
            edges: Vec::new(),
            edge_ids: HashMap::new(),
            edge_endpoints: Vec::new(),
            incident: Vec::new(),
        };
        lat.incident = vec![Vec::new(); lat.vertices.len()];
        for vid in 0..lat.vertices.len() {
            let v = lat.vertices[vid];
            for axis in 0..lat.dim {
                let mut c = v.coords;
                c[axis] += 1;
                let n = Vertex { coords: c };
                let Some(nid) = lat.resolve_wrapped(n) else { continue };
                let e = Edge::new(lat.vertices[vid], lat.vertices[nid]);
                if lat.edge_ids.contains_key(&e) {
                    continue; // side-2 torus wrap duplicates
                }
                let id = EdgeId(lat.edges.len());
                lat.edge_ids.insert(e, id);
                lat.edges.push(e);
                lat.edge_endpoints.push((vid, nid));
                lat.incident[vid].push(id);
                if nid != vid {
                    lat.incident[nid].push(id);
                }
            }
        }
        for inc in &mut lat.incident {
            inc.sort_unstable();
        }
        lat
    }

    /// Exact lookup: the vertex must already be in canonical form.
    fn resolve(&self, v: Vertex) -> Option<usize> {
        self.vertex_ids.get(&v).copied()
    }

    /// Lookup after canonicalization (wraps on tori).
    fn resolve_wrapped(&self, v: Vertex) -> Option<usize> {
        self.vertex_ids.get(&self.canonical(v)).copied()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> LatticeMode {
        self.mode
    }

    pub fn is_torus(&self) -> bool {
        self.mode == LatticeMode::Torus
    }

    /// Torus side, or box radius `k` for censored boxes.
    pub fn side(&self) -> i64 {
        self.side
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        self.vertices[id]
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id.0]
    }

    /// Map a vertex to its torus fundamental domain; the identity on boxes.
    pub fn canonical(&self, v: Vertex) -> Vertex {
        match self.mode {
            LatticeMode::Torus => {
                let n = self.side;
                let x = v.coords[0].rem_euclid(n);
                let y = if self.dim == 2 { v.coords[1].rem_euclid(n) } else { v.coords[1] };
                Vertex::new(x, y)
            }
            LatticeMode::CensoredBox => v,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.resolve(v).is_some()
    }

    pub fn vertex_id(&self, v: Vertex) -> Result<usize> {
        self.resolve(v).ok_or(Error::VertexOutsideLattice(v.coords))
    }

    pub fn edge_id(&self, e: &Edge) -> Option<EdgeId> {
        self.edge_ids.get(e).copied()
    }

    pub fn endpoints_of(&self, id: EdgeId) -> (usize, usize) {
        self.edge_endpoints[id.0]
    }

    /// The endpoint of `edge` that is not `vid`.
    pub fn across(&self, edge: EdgeId, vid: usize) -> usize {
        let (a, b) = self.edge_endpoints[edge.0];
        if vid == a {
            b
        } else {
            a
        }
    }

    /// All edges containing `x`, in canonical (enumeration) order.
    pub fn incident_edges(&self, x: Vertex) -> Result<Vec<Edge>> {
        let id = self.vertex_id(x)?;
        Ok(self.incident[id].iter().map(|&e| self.edges[e.0]).collect())
    }

    pub fn incident_ids(&self, vid: usize) -> &[EdgeId] {
        &self.incident[vid]
    }

    pub fn degree(&self, vid: usize) -> usize {
        self.incident[vid].len()
    }

    /// Boundary vertices of a censored box have degree below `2d`; tori have
    /// no boundary.
    pub fn is_boundary(&self, vid: usize) -> bool {
        self.incident[vid].len() < 2 * self.dim
    }

    /// Translate a vertex by `z` (torus only for nonzero shifts).
    pub fn translate(&self, v: Vertex, z: Vertex) -> Result<Vertex> {
        if z.coords == [0, 0] {
            return Ok(v);
        }
        if !self.is_torus() {
            return Err(Error::SpatialShiftOnBox);
        }
        Ok(self.canonical(Vertex::new(v.coords[0] + z.coords[0], v.coords[1] + z.coords[1])))
    }

    /// Translate every endpoint of an edge by `z` (torus only).
    pub fn translate_edge(&self, id: EdgeId, z: Vertex) -> Result<EdgeId> {
        let [a, b] = self.edges[id.0].endpoints();
        let e = Edge::new(self.translate(a, z)?, self.translate(b, z)?);
        Ok(self.edge_ids[&e])
    }

    /// L1 distance in the lattice metric (wrapping on tori).
    pub fn l1_distance(&self, a: Vertex, b: Vertex) -> i64 {
        let mut d = 0;
        for axis in 0..self.dim {
            let mut delta = (a.coords[axis] - b.coords[axis]).abs();
            if self.is_torus() {
                delta = delta.rem_euclid(self.side).min((self.side - delta).rem_euclid(self.side));
            }
            d += delta;
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallNorm {
    L1,
    L2,
}

/// A lattice ball used for membership sums (Cauchy-Schwarz denominators).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Vertex,
    pub radius: i64,
    pub norm: BallNorm,
}

impl Ball {
    fn contains_offset(&self, dx: i64, dy: i64) -> bool {
        match self.norm {
            BallNorm::L1 => dx.abs() + dy.abs() <= self.radius,
            BallNorm::L2 => dx * dx + dy * dy <= self.radius * self.radius,
        }
    }
}

/// Exact member list of a ball, sorted by vertex enumeration index.
///
/// On a torus the radius must be below half the side so that distinct
/// offsets land on distinct vertices; on a box the whole ball must fit.
pub fn ball_members(lattice: &Lattice, ball: &Ball) -> Result<Vec<Vertex>> {
    lattice.vertex_id(ball.center)?;
    if ball.radius < 0 {
        return Err(Error::BallTooLarge { center: ball.center.coords, radius: ball.radius });
    }
    if lattice.is_torus() && 2 * ball.radius >= lattice.side() {
        return Err(Error::BallTooLarge { center: ball.center.coords, radius: ball.radius });
    }
    let mut ids = Vec::new();
    let r = ball.radius;
    let y_range: Vec<i64> = if lattice.dim() == 2 { (-r..=r).collect() } else { vec![0] };
    for dy in y_range {
        for dx in -r..=r {
            if !ball.contains_offset(dx, dy) {
                continue;
            }
            let p = Vertex::new(ball.center.coords[0] + dx, ball.center.coords[1] + dy);
            match lattice.vertex_id(lattice.canonical(p)) {
                Ok(id) => ids.push(id),
                Err(_) => {
                    return Err(Error::BallTooLarge {
                        center: ball.center.coords,
                        radius: ball.radius,
                    })
                }
            }
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids.into_iter().map(|i| lattice.vertex(i)).collect())
}

/// Helper shared with `Arc` consumers across the crate.
pub type SharedLattice = Arc<Lattice>;
