//! Connected plane multigraphs represented by rotation systems.
//!
//! Every undirected edge is a pair of *darts* (half-edges) exchanged by the
//! `twin` involution. The counterclockwise order of darts around their origin
//! vertex is the rotation system; it determines the embedding combinatorially.
//! Faces are traced with the fixed rule
//!
//! ```text
//! next-on-face(d) = next_at_vertex(twin(d))
//! ```
//!
//! scanning darts in ascending id order, so face ids and walks are
//! reproducible bit-for-bit. Loops and parallel edges (bigons) are
//! first-class. The outer face is an explicit designation, never inferred.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod build;
mod edit;
mod iso;

pub use build::{build_named, build_wheel, NamedGraph};
pub(crate) use build::simple_from_neighbor_orders;
pub use edit::{Deletion, ElementMap};
pub use iso::{are_isomorphic, find_isomorphism, IsoOptions, PlaneIso};

/// Identifier of a dart (half-edge). Dart ids are dense, starting at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DartId(pub usize);

/// Identifier of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Identifier of a face. Faces are numbered in order of discovery while
/// tracing darts ascending, so ids are stable for a given rotation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId(pub usize);

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// A tagged reference to a vertex or a face — the unit that receives lists
/// and colors in a coupled coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementRef {
    Vertex(VertexId),
    Face(FaceId),
}

impl ElementRef {
    pub fn vertex(id: usize) -> Self {
        ElementRef::Vertex(VertexId(id))
    }

    pub fn face(id: usize) -> Self {
        ElementRef::Face(FaceId(id))
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, ElementRef::Vertex(_))
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Vertex(v) => write!(f, "v:{}", v.0),
            ElementRef::Face(x) => write!(f, "f:{}", x.0),
        }
    }
}

impl Serialize for ElementRef {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ElementRef {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for ElementRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, id) = s
            .split_once(':')
            .ok_or_else(|| format!("element key {s:?} is not of the form \"v:<id>\" or \"f:<id>\""))?;
        let id: usize = id
            .parse()
            .map_err(|_| format!("element key {s:?} has a non-numeric id"))?;
        match kind {
            "v" => Ok(ElementRef::vertex(id)),
            "f" => Ok(ElementRef::face(id)),
            _ => Err(format!("element key {s:?} must start with \"v:\" or \"f:\"")),
        }
    }
}

/// One half of an undirected edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    /// The opposite dart of the same edge. A fixed-point-free involution.
    pub twin: DartId,
    /// Rotation successor: the next dart counterclockwise with the same origin.
    pub next_at_vertex: DartId,
    /// The vertex this dart leaves from.
    pub origin: VertexId,
}

/// Input to [`PlaneGraph::from_rotation_system`]: per-vertex counterclockwise
/// dart orders plus the twin pairing.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    pub vertex_count: usize,
    /// `rotations[v]` lists the darts with origin `v` in counterclockwise order.
    pub rotations: Vec<Vec<DartId>>,
    /// `twins[d]` is the opposite dart of `d`.
    pub twins: Vec<DartId>,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("rotation system does not describe a plane embedding: V - E + F = {euler}, expected 2")]
    NonPlanarRotation { euler: i64 },
    #[error("graph is not connected")]
    Disconnected,
    #[error("twin pairing is not a fixed-point-free involution at dart {0}")]
    TwinViolation(DartId),
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("no such vertex: {0}")]
    MissingVertex(VertexId),
    #[error("no such edge: dart {0}")]
    MissingEdge(DartId),
    #[error("no such face: {0}")]
    MissingFace(FaceId),
    #[error("deleting {0} would disconnect the graph")]
    WouldDisconnect(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// The labeling of a wheel used throughout the coloring pipeline: hub
/// `x_0`, outer face `f_0`, rim vertices `x_1..x_{n-1}` in cyclic order and
/// inner faces `f_1..f_{n-1}` such that `x_i` is incident to `f_i` and
/// `f_{i+1}` (indices cyclic, so `x_{n-1}` is incident to `f_{n-1}` and `f_1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelLabeling {
    pub hub: VertexId,
    pub outer: FaceId,
    pub rim: Vec<VertexId>,
    pub inner_faces: Vec<FaceId>,
}

impl WheelLabeling {
    /// Number of wheel vertices, `n` (hub plus rim).
    pub fn n(&self) -> usize {
        self.rim.len() + 1
    }
}

/// A connected plane multigraph. Immutable after construction; all edit
/// operations return a fresh graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    darts: Vec<Dart>,
    vertex_count: usize,
    first_dart_at: Vec<Option<DartId>>,
    faces: Vec<Vec<DartId>>,
    face_of: Vec<FaceId>,
    outer_face: FaceId,
}

/// Two-way element correspondence returned by [`PlaneGraph::dual`].
#[derive(Clone, Debug)]
pub struct DualBijection {
    /// Primal vertex id -> dual face id.
    pub vertex_to_face: Vec<FaceId>,
    /// Primal face id -> dual vertex id.
    pub face_to_vertex: Vec<VertexId>,
}

impl PlaneGraph {
    /// Build a plane graph from a rotation system, tracing the faces.
    ///
    /// `outer_hint` designates the outer face by one of its darts; when
    /// `None`, the face of the lowest-id dart is used. A graph with one
    /// vertex and no darts is permitted (one face, empty walk).
    pub fn from_rotation_system(
        rs: RotationSystem,
        outer_hint: Option<DartId>,
    ) -> Result<Self, GraphError> {
        let dart_count = rs.twins.len();
        if rs.rotations.len() != rs.vertex_count {
            return Err(GraphError::MalformedRotation(format!(
                "expected {} rotation lists, got {}",
                rs.vertex_count,
                rs.rotations.len()
            )));
        }
        if rs.vertex_count == 0 {
            return Err(GraphError::MalformedRotation("graph has no vertices".into()));
        }
        if !dart_count.is_multiple_of(2) {
            return Err(GraphError::MalformedRotation(format!(
                "odd number of darts ({dart_count})"
            )));
        }

        // Twin involution, no fixed points.
        for d in 0..dart_count {
            let t = rs.twins[d];
            if t.0 >= dart_count || t.0 == d || rs.twins[t.0].0 != d {
                return Err(GraphError::TwinViolation(DartId(d)));
            }
        }

        // Every dart must appear exactly once across the rotation lists.
        let mut seen = vec![false; dart_count];
        let mut darts = vec![
            Dart {
                twin: DartId(0),
                next_at_vertex: DartId(0),
                origin: VertexId(0),
            };
            dart_count
        ];
        let mut first_dart_at = vec![None; rs.vertex_count];
        for (v, rot) in rs.rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d.0 >= dart_count {
                    return Err(GraphError::MalformedRotation(format!(
                        "rotation of v{v} mentions unknown dart {d}"
                    )));
                }
                if seen[d.0] {
                    return Err(GraphError::MalformedRotation(format!(
                        "dart {d} appears in more than one rotation position"
                    )));
                }
                seen[d.0] = true;
                let next = rot[(i + 1) % rot.len()];
                darts[d.0] = Dart {
                    twin: rs.twins[d.0],
                    next_at_vertex: next,
                    origin: VertexId(v),
                };
            }
            first_dart_at[v] = rot.first().copied();
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(GraphError::MalformedRotation(format!(
                "dart d{missing} does not appear in any rotation"
            )));
        }

        // Connectivity over vertices through edges.
        if !connected(rs.vertex_count, &darts, &first_dart_at) {
            return Err(GraphError::Disconnected);
        }

        // Trace faces: orbits of next_at_vertex(twin(d)), darts ascending.
        let (faces, face_of) = trace_faces(&darts);

        let euler =
            rs.vertex_count as i64 - (dart_count / 2) as i64 + faces.len().max(1) as i64;
        if euler != 2 {
            return Err(GraphError::NonPlanarRotation { euler });
        }

        let outer_face = match outer_hint {
            Some(d) if d.0 < dart_count => face_of[d.0],
            Some(d) => return Err(GraphError::MissingEdge(d)),
            None => FaceId(0),
        };

        Ok(PlaneGraph {
            darts,
            vertex_count: rs.vertex_count,
            first_dart_at,
            faces: if dart_count == 0 { vec![Vec::new()] } else { faces },
            face_of,
            outer_face,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d.0]
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.darts[d.0].twin
    }

    pub fn origin(&self, d: DartId) -> VertexId {
        self.darts[d.0].origin
    }

    /// The vertex a dart points at (origin of its twin).
    pub fn head(&self, d: DartId) -> VertexId {
        self.origin(self.twin(d))
    }

    pub fn next_at_vertex(&self, d: DartId) -> DartId {
        self.darts[d.0].next_at_vertex
    }

    /// Successor of `d` on its face walk.
    pub fn next_on_face(&self, d: DartId) -> DartId {
        self.next_at_vertex(self.twin(d))
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d.0]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    /// The boundary walk of a face as a cyclic dart sequence, starting at the
    /// face's lowest dart.
    pub fn face_walk(&self, f: FaceId) -> &[DartId] {
        &self.faces[f.0]
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    /// Vertices visited by the boundary walk of `f`, with repetitions.
    pub fn face_vertices(&self, f: FaceId) -> impl Iterator<Item = VertexId> + '_ {
        self.faces[f.0].iter().map(|&d| self.origin(d))
    }

    /// The darts leaving `v` in rotation order (starting at an arbitrary but
    /// fixed dart).
    pub fn darts_at(&self, v: VertexId) -> Vec<DartId> {
        let mut out = Vec::new();
        if let Some(start) = self.first_dart_at[v.0] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.next_at_vertex(d);
                if d == start {
                    break;
                }
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.darts_at(v).len()
    }

    /// Neighbors of `v` in rotation order, with repetitions for parallel
    /// edges; a loop contributes `v` twice.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.darts_at(v).iter().map(|&d| self.head(d)).collect()
    }

    /// One representative dart per edge: the lower-id dart of each pair.
    pub fn edge_darts(&self) -> impl Iterator<Item = DartId> + '_ {
        (0..self.darts.len())
            .map(DartId)
            .filter(|&d| d.0 < self.twin(d).0)
    }

    /// Endpoints of the edge containing dart `d` (origin first).
    pub fn edge_endpoints(&self, d: DartId) -> (VertexId, VertexId) {
        (self.origin(d), self.head(d))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.darts_at(u).iter().any(|&d| self.head(d) == v)
    }

    /// All elements of the graph: vertices first, then faces, ascending ids.
    pub fn elements(&self) -> Vec<ElementRef> {
        self.vertex_ids()
            .map(ElementRef::Vertex)
            .chain(self.face_ids().map(ElementRef::Face))
            .collect()
    }

    /// Same embedding, different designated outer face.
    pub fn reroot_outer_face(&self, f: FaceId) -> Result<Self, GraphError> {
        if f.0 >= self.faces.len() {
            return Err(GraphError::MissingFace(f));
        }
        let mut g = self.clone();
        g.outer_face = f;
        Ok(g)
    }

    /// The dual plane graph: one vertex per face, one edge per edge, plus the
    /// element bijection both ways. Dart ids are shared with the primal; the
    /// dual's rotation at the vertex for face `f` follows `f`'s boundary walk.
    pub fn dual(&self) -> (PlaneGraph, DualBijection) {
        if self.darts.is_empty() {
            // Single vertex: the dual is again a single vertex.
            let g = PlaneGraph {
                darts: Vec::new(),
                vertex_count: 1,
                first_dart_at: vec![None],
                faces: vec![Vec::new()],
                face_of: Vec::new(),
                outer_face: FaceId(0),
            };
            let bij = DualBijection {
                vertex_to_face: vec![FaceId(0)],
                face_to_vertex: vec![VertexId(0)],
            };
            return (g, bij);
        }

        let dual_darts: Vec<Dart> = (0..self.darts.len())
            .map(|i| {
                let d = DartId(i);
                Dart {
                    twin: self.twin(d),
                    next_at_vertex: self.next_on_face(d),
                    origin: VertexId(self.face_of(d).0),
                }
            })
            .collect();
        let mut first_dart_at = vec![None; self.faces.len()];
        for (f, walk) in self.faces.iter().enumerate() {
            first_dart_at[f] = walk.first().copied();
        }
        let (dual_faces, dual_face_of) = trace_faces(&dual_darts);
        debug_assert_eq!(dual_faces.len(), self.vertex_count);

        // Dual faces are the primal vertex rotations; map each primal vertex
        // to the dual face containing one of its darts.
        let mut vertex_to_face = vec![FaceId(usize::MAX); self.vertex_count];
        for (i, d) in self.darts.iter().enumerate() {
            vertex_to_face[d.origin.0] = dual_face_of[i];
        }
        let face_to_vertex = (0..self.faces.len()).map(VertexId).collect();

        // Designated outer: the dual face containing the first dart of the
        // primal outer face (that is, the dual face of a vertex on it).
        let outer_dart = self.faces[self.outer_face.0][0];
        let outer_face = dual_face_of[outer_dart.0];

        let g = PlaneGraph {
            darts: dual_darts,
            vertex_count: self.faces.len(),
            first_dart_at,
            faces: dual_faces,
            face_of: dual_face_of,
            outer_face,
        };
        (g, DualBijection { vertex_to_face, face_to_vertex })
    }

    /// The mirror image: every rotation reversed. Face ids are preserved
    /// (each reflected face consists of the twins of the original's darts).
    pub fn reflected(&self) -> PlaneGraph {
        let mut prev = vec![DartId(0); self.darts.len()];
        for (i, d) in self.darts.iter().enumerate() {
            prev[d.next_at_vertex.0] = DartId(i);
        }
        let darts: Vec<Dart> = self
            .darts
            .iter()
            .enumerate()
            .map(|(i, d)| Dart {
                twin: d.twin,
                next_at_vertex: prev[i],
                origin: d.origin,
            })
            .collect();
        let (faces, face_of) = trace_faces(&darts);
        let outer_face = if self.darts.is_empty() {
            FaceId(0)
        } else {
            face_of[self.twin(self.faces[self.outer_face.0][0]).0]
        };
        PlaneGraph {
            darts,
            vertex_count: self.vertex_count,
            first_dart_at: self.first_dart_at.clone(),
            faces: if self.darts.is_empty() { vec![Vec::new()] } else { faces },
            face_of,
            outer_face,
        }
    }

    /// Extract the rotation system (inverse of `from_rotation_system`).
    pub fn rotation_system(&self) -> RotationSystem {
        RotationSystem {
            vertex_count: self.vertex_count,
            rotations: (0..self.vertex_count)
                .map(|v| self.darts_at(VertexId(v)))
                .collect(),
            twins: self.darts.iter().map(|d| d.twin).collect(),
        }
    }
}

fn connected(vertex_count: usize, darts: &[Dart], first_dart_at: &[Option<DartId>]) -> bool {
    if vertex_count == 0 {
        return false;
    }
    let mut visited = vec![false; vertex_count];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        if let Some(start) = first_dart_at[v] {
            let mut d = start;
            loop {
                let u = darts[darts[d.0].twin.0].origin.0;
                if !visited[u] {
                    visited[u] = true;
                    reached += 1;
                    stack.push(u);
                }
                d = darts[d.0].next_at_vertex;
                if d == start {
                    break;
                }
            }
        }
    }
    reached == vertex_count
}

fn trace_faces(darts: &[Dart]) -> (Vec<Vec<DartId>>, Vec<FaceId>) {
    let mut face_of = vec![FaceId(usize::MAX); darts.len()];
    let mut faces = Vec::new();
    for start in 0..darts.len() {
        if face_of[start].0 != usize::MAX {
            continue;
        }
        let id = FaceId(faces.len());
        let mut walk = Vec::new();
        let mut d = DartId(start);
        loop {
            face_of[d.0] = id;
            walk.push(d);
            d = darts[darts[d.0].twin.0].next_at_vertex;
            if d.0 == start {
                break;
            }
        }
        faces.push(walk);
    }
    (faces, face_of)
}
