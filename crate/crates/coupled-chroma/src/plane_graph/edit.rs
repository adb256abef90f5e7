//! Embedding-preserving edits: subdivision, edge duplication, stellation,
//! deletion, all returning a fresh graph plus an element correspondence.

use std::collections::BTreeMap;

use super::{DartId, FaceId, GraphError, PlaneGraph, RotationSystem, VertexId};

/// Relates the elements of a graph before an edit to the elements after it.
/// Vertices or faces that vanish (a deleted vertex, a face replaced by
/// stellation, a merged-away face with no surviving dart) have no entry.
#[derive(Clone, Debug, Default)]
pub struct ElementMap {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub faces: BTreeMap<FaceId, FaceId>,
}

impl ElementMap {
    /// Compose two maps: `self` (old -> mid) followed by `next` (mid -> new).
    pub fn then(&self, next: &ElementMap) -> ElementMap {
        ElementMap {
            vertices: self
                .vertices
                .iter()
                .filter_map(|(&a, b)| next.vertices.get(b).map(|&c| (a, c)))
                .collect(),
            faces: self
                .faces
                .iter()
                .filter_map(|(&a, b)| next.faces.get(b).map(|&c| (a, c)))
                .collect(),
        }
    }
}

/// Target of [`PlaneGraph::delete_element`]. Edges are named by either of
/// their darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deletion {
    Vertex(VertexId),
    Edge(DartId),
}

impl PlaneGraph {
    /// Replace the edge containing `e` by a path of length two through a new
    /// vertex. The face count is unchanged. Returns the new graph, the id of
    /// the subdivision vertex, and the element correspondence.
    pub fn subdivide_edge(
        &self,
        e: DartId,
    ) -> Result<(PlaneGraph, VertexId, ElementMap), GraphError> {
        if e.0 >= self.dart_count() {
            return Err(GraphError::MissingEdge(e));
        }
        let d = e;
        let t = self.twin(d);
        let w = VertexId(self.vertex_count);
        let n1 = DartId(self.dart_count());
        let n2 = DartId(self.dart_count() + 1);

        let mut rs = self.rotation_system();
        rs.vertex_count += 1;
        rs.rotations.push(vec![n1, n2]);
        rs.twins.push(d); // n1
        rs.twins.push(t); // n2
        rs.twins[d.0] = n1;
        rs.twins[t.0] = n2;

        let outer_dart = self.face_walk(self.outer_face())[0];
        let g = PlaneGraph::from_rotation_system(rs, Some(outer_dart))?;
        let map = self.map_into(&g, Some);
        Ok((g, w, map))
    }

    /// Add an edge parallel to the one containing `e`, creating a bigon face
    /// between the two copies. This is the dual operation of subdivision.
    pub fn duplicate_edge(&self, e: DartId) -> Result<(PlaneGraph, ElementMap), GraphError> {
        if e.0 >= self.dart_count() {
            return Err(GraphError::MissingEdge(e));
        }
        let d = e;
        let t = self.twin(d);
        let n1 = DartId(self.dart_count());
        let n2 = DartId(self.dart_count() + 1);

        let mut rs = self.rotation_system();
        rs.twins.push(n2);
        rs.twins.push(n1);
        // n1 goes immediately after d at its origin, n2 immediately before t
        // at its origin; the face between n1 and t is the new bigon.
        let u_rot = &mut rs.rotations[self.origin(d).0];
        let pos = u_rot.iter().position(|&x| x == d).unwrap();
        u_rot.insert(pos + 1, n1);
        let v_rot = &mut rs.rotations[self.origin(t).0];
        let pos = v_rot.iter().position(|&x| x == t).unwrap();
        v_rot.insert(pos, n2);

        let outer_dart = self.face_walk(self.outer_face())[0];
        let g = PlaneGraph::from_rotation_system(rs, Some(outer_dart))?;
        let map = self.map_into(&g, Some);
        Ok((g, map))
    }

    /// Insert a new vertex inside face `f` and join it to every vertex on
    /// `f`'s boundary walk, once per occurrence. A face with a walk of length
    /// `k` is replaced by `k` new faces.
    pub fn stellate_face(
        &self,
        f: FaceId,
    ) -> Result<(PlaneGraph, VertexId, ElementMap), GraphError> {
        if f.0 >= self.face_count() {
            return Err(GraphError::MissingFace(f));
        }
        let walk: Vec<DartId> = self.face_walk(f).to_vec();
        if walk.is_empty() {
            return Err(GraphError::InvalidParameter(
                "cannot stellate the face of an edgeless graph".into(),
            ));
        }
        let w = VertexId(self.vertex_count);
        let base = self.dart_count();
        // Walk position i gets spoke darts a_i = base + 2i (at the boundary
        // vertex) and b_i = base + 2i + 1 (at the new vertex).
        let spoke_before: BTreeMap<DartId, DartId> = walk
            .iter()
            .enumerate()
            .map(|(i, &d)| (d, DartId(base + 2 * i)))
            .collect();

        let mut rs = self.rotation_system();
        rs.vertex_count += 1;
        for i in 0..walk.len() {
            rs.twins.push(DartId(base + 2 * i + 1));
            rs.twins.push(DartId(base + 2 * i));
        }
        for rot in rs.rotations.iter_mut() {
            let mut out = Vec::with_capacity(rot.len() + 2);
            for &d in rot.iter() {
                if let Some(&a) = spoke_before.get(&d) {
                    out.push(a);
                }
                out.push(d);
            }
            *rot = out;
        }
        // Around the new vertex the spokes run in reverse walk order, so each
        // triangle (walk dart, next spoke, back spoke) closes up.
        rs.rotations
            .push((0..walk.len()).rev().map(|i| DartId(base + 2 * i + 1)).collect());

        let outer_dart = self.face_walk(self.outer_face())[0];
        let g = PlaneGraph::from_rotation_system(rs, Some(outer_dart))?;
        let map = self.map_into_skipping(&g, Some, &[f]);
        Ok((g, w, map))
    }

    /// Delete a vertex or an edge, merging the incident faces. Deletions that
    /// would disconnect the graph are rejected.
    pub fn delete_element(
        &self,
        target: Deletion,
    ) -> Result<(PlaneGraph, ElementMap), GraphError> {
        match target {
            Deletion::Edge(e) => self.delete_edge(e),
            Deletion::Vertex(v) => self.delete_vertex(v),
        }
    }

    fn delete_edge(&self, e: DartId) -> Result<(PlaneGraph, ElementMap), GraphError> {
        if e.0 >= self.dart_count() {
            return Err(GraphError::MissingEdge(e));
        }
        let d = e;
        let t = self.twin(d);
        // An edge with the same face on both sides is a bridge.
        if self.face_of(d) == self.face_of(t) {
            return Err(GraphError::WouldDisconnect(format!("edge {d}")));
        }
        let dead = |x: DartId| x == d || x == t;
        let renumber = self.dart_renumbering(&dead);

        let mut rotations: Vec<Vec<DartId>> = Vec::with_capacity(self.vertex_count);
        for v in 0..self.vertex_count {
            rotations.push(
                self.darts_at(VertexId(v))
                    .into_iter()
                    .filter(|&x| !dead(x))
                    .map(|x| renumber[x.0])
                    .collect(),
            );
        }
        let twins = self.surviving_twins(&dead, &renumber);
        let g = PlaneGraph::from_rotation_system(
            RotationSystem {
                vertex_count: self.vertex_count,
                rotations,
                twins,
            },
            self.surviving_outer_hint(&dead, &renumber),
        )?;
        let map = self.map_into_renumbered(&g, Some, &dead, &renumber);
        Ok((g, map))
    }

    fn delete_vertex(&self, v: VertexId) -> Result<(PlaneGraph, ElementMap), GraphError> {
        if v.0 >= self.vertex_count {
            return Err(GraphError::MissingVertex(v));
        }
        if self.vertex_count == 1 {
            return Err(GraphError::WouldDisconnect(format!("vertex {v}")));
        }
        let mut is_dead = vec![false; self.dart_count()];
        for d in self.darts_at(v) {
            is_dead[d.0] = true;
            is_dead[self.twin(d).0] = true;
        }
        let dead = |x: DartId| is_dead[x.0];

        // The remaining graph must stay connected.
        let mut visited = vec![false; self.vertex_count];
        visited[v.0] = true; // excluded
        let start = (0..self.vertex_count).find(|&u| u != v.0).unwrap();
        let mut stack = vec![start];
        visited[start] = true;
        let mut reached = 1usize;
        while let Some(u) = stack.pop() {
            for d in self.darts_at(VertexId(u)) {
                if dead(d) {
                    continue;
                }
                let w = self.head(d).0;
                if !visited[w] {
                    visited[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != self.vertex_count - 1 {
            return Err(GraphError::WouldDisconnect(format!("vertex {v}")));
        }

        let renumber = self.dart_renumbering(&dead);
        let vmap = |u: VertexId| -> Option<VertexId> {
            match u.0.cmp(&v.0) {
                std::cmp::Ordering::Less => Some(u),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(VertexId(u.0 - 1)),
            }
        };
        let mut rotations = Vec::with_capacity(self.vertex_count - 1);
        for u in 0..self.vertex_count {
            if u == v.0 {
                continue;
            }
            rotations.push(
                self.darts_at(VertexId(u))
                    .into_iter()
                    .filter(|&x| !dead(x))
                    .map(|x| renumber[x.0])
                    .collect(),
            );
        }
        let twins = self.surviving_twins(&dead, &renumber);
        let g = PlaneGraph::from_rotation_system(
            RotationSystem {
                vertex_count: self.vertex_count - 1,
                rotations,
                twins,
            },
            self.surviving_outer_hint(&dead, &renumber),
        )?;
        let map = self.map_into_renumbered(&g, vmap, &dead, &renumber);
        Ok((g, map))
    }

    /// Old dart id -> new dart id after removing the dead darts (ids are
    /// compacted preserving order).
    fn dart_renumbering(&self, dead: &dyn Fn(DartId) -> bool) -> Vec<DartId> {
        let mut next = 0usize;
        (0..self.dart_count())
            .map(|i| {
                if dead(DartId(i)) {
                    DartId(usize::MAX)
                } else {
                    next += 1;
                    DartId(next - 1)
                }
            })
            .collect()
    }

    fn surviving_twins(
        &self,
        dead: &dyn Fn(DartId) -> bool,
        renumber: &[DartId],
    ) -> Vec<DartId> {
        (0..self.dart_count())
            .filter(|&i| !dead(DartId(i)))
            .map(|i| renumber[self.twin(DartId(i)).0])
            .collect()
    }

    /// A hint dart for the outer face of the edited graph: the first
    /// surviving dart of the old outer face, else the lowest surviving dart.
    fn surviving_outer_hint(
        &self,
        dead: &dyn Fn(DartId) -> bool,
        renumber: &[DartId],
    ) -> Option<DartId> {
        self.face_walk(self.outer_face())
            .iter()
            .find(|&&d| !dead(d))
            .map(|&d| renumber[d.0])
            .or_else(|| {
                (0..self.dart_count())
                    .map(DartId)
                    .find(|&d| !dead(d))
                    .map(|d| renumber[d.0])
            })
    }

    fn map_into(
        &self,
        g: &PlaneGraph,
        vmap: impl Fn(VertexId) -> Option<VertexId>,
    ) -> ElementMap {
        self.map_into_skipping(g, vmap, &[])
    }

    fn map_into_skipping(
        &self,
        g: &PlaneGraph,
        vmap: impl Fn(VertexId) -> Option<VertexId>,
        skip_faces: &[FaceId],
    ) -> ElementMap {
        let identity: Vec<DartId> = (0..self.dart_count()).map(DartId).collect();
        self.map_into_renumbered(g, vmap, &|_| false, &identity)
            .retain_faces(|f| !skip_faces.contains(f))
    }

    /// Match old faces to new ones by their first surviving dart. Faces whose
    /// darts were all removed are dropped from the map.
    fn map_into_renumbered(
        &self,
        g: &PlaneGraph,
        vmap: impl Fn(VertexId) -> Option<VertexId>,
        dead: &dyn Fn(DartId) -> bool,
        renumber: &[DartId],
    ) -> ElementMap {
        let mut map = ElementMap::default();
        for u in 0..self.vertex_count {
            if let Some(nu) = vmap(VertexId(u)) {
                map.vertices.insert(VertexId(u), nu);
            }
        }
        for f in self.face_ids() {
            if let Some(&d) = self.face_walk(f).iter().find(|&&d| !dead(d)) {
                map.faces.insert(f, g.face_of(renumber[d.0]));
            }
        }
        map
    }
}

impl ElementMap {
    fn retain_faces(mut self, keep: impl Fn(&FaceId) -> bool) -> Self {
        self.faces.retain(|f, _| keep(f));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{
        are_isomorphic, build_named, build_wheel, IsoOptions, NamedGraph,
    };

    #[test]
    fn subdividing_spokes_of_w5_preserves_faces() {
        let (mut g, lab) = build_wheel(5).unwrap();
        // Subdivide every spoke once: spokes are hub-incident edges.
        for _ in 0..4 {
            let spoke = g
                .edge_darts()
                .find(|&d| g.origin(d) == lab.hub || g.head(d) == lab.hub)
                .unwrap();
            let (h, w, _) = g.subdivide_edge(spoke).unwrap();
            assert_eq!(h.degree(w), 2);
            g = h;
        }
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.face_count(), 5);
    }

    #[test]
    fn subdividing_a_loop_gives_a_bigon() {
        let g = PlaneGraph::from_rotation_system(
            crate::plane_graph::RotationSystem {
                vertex_count: 1,
                rotations: vec![vec![DartId(0), DartId(1)]],
                twins: vec![DartId(1), DartId(0)],
            },
            None,
        )
        .unwrap();
        let (h, _, _) = g.subdivide_edge(DartId(0)).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.face_count(), 2);
    }

    #[test]
    fn dual_of_subdivision_is_duplication_in_the_dual() {
        let (g, _) = build_wheel(5).unwrap();
        let e = g.edge_darts().next().unwrap();
        let (sub, _, _) = g.subdivide_edge(e).unwrap();
        let (dual_sub, _) = sub.dual();
        // In the dual, the same dart handle names the dual edge crossing e.
        let (dual_g, _) = g.dual();
        let (dup, _) = dual_g.duplicate_edge(e).unwrap();
        assert!(are_isomorphic(&dual_sub, &dup, IsoOptions::ignore_outer()));
    }

    #[test]
    fn stellating_a_cycle_gives_a_wheel() {
        for n in 4..=8 {
            let c = build_named(NamedGraph::Cycle(n - 1)).unwrap();
            let (g, w, _) = c.stellate_face(c.outer_face()).unwrap();
            assert_eq!(g.degree(w), n - 1);
            let (wheel, _) = build_wheel(n).unwrap();
            assert!(are_isomorphic(&g, &wheel, IsoOptions::ignore_outer()));
        }
    }

    #[test]
    fn stellating_an_inner_triangle_of_k4() {
        let (k4, lab) = build_wheel(4).unwrap();
        let inner = lab.inner_faces[0];
        let (g, _, map) = k4.stellate_face(inner).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.face_count(), 6);
        // The stellated face has no image; all others do.
        assert!(!map.faces.contains_key(&inner));
        assert_eq!(map.faces.len(), 3);
    }

    #[test]
    fn stellated_k4_minus_edge_is_dual_of_prism() {
        let h = build_named(NamedGraph::K4MinusEdge).unwrap();
        let quad = h.face_ids().find(|&f| h.face_walk(f).len() == 4).unwrap();
        let outerplanar = h.reroot_outer_face(quad).unwrap();
        let (st, _, _) = outerplanar.stellate_face(quad).unwrap();
        assert_eq!(st.edge_count(), 9);
        let prism = build_named(NamedGraph::HalinPrism).unwrap();
        let (dual_prism, _) = prism.dual();
        assert_eq!(dual_prism.edge_count(), 9);
        assert!(are_isomorphic(&st, &dual_prism, IsoOptions::ignore_outer()));
    }

    #[test]
    fn deleting_the_hub_leaves_the_rim_cycle() {
        let (g, lab) = build_wheel(9).unwrap();
        let (h, map) = g.delete_element(Deletion::Vertex(lab.hub)).unwrap();
        assert_eq!(h.vertex_count(), 8);
        assert_eq!(h.face_count(), 2);
        let c8 = build_named(NamedGraph::Cycle(8)).unwrap();
        assert!(are_isomorphic(&h, &c8, IsoOptions::ignore_outer()));
        assert!(!map.vertices.contains_key(&lab.hub));
    }

    #[test]
    fn deleting_a_rim_edge_gives_a_fan() {
        let (g, lab) = build_wheel(9).unwrap();
        let rim_dart = g
            .edge_darts()
            .find(|&d| g.origin(d) != lab.hub && g.head(d) != lab.hub)
            .unwrap();
        let (h, _) = g.delete_element(Deletion::Edge(rim_dart)).unwrap();
        assert_eq!(h.vertex_count(), 9);
        assert_eq!(h.face_count(), 8);
    }

    #[test]
    fn bridge_deletion_is_rejected() {
        // Path on two vertices: the single edge is a bridge.
        let g = PlaneGraph::from_rotation_system(
            crate::plane_graph::RotationSystem {
                vertex_count: 2,
                rotations: vec![vec![DartId(0)], vec![DartId(1)]],
                twins: vec![DartId(1), DartId(0)],
            },
            None,
        )
        .unwrap();
        let err = g.delete_element(Deletion::Edge(DartId(0))).unwrap_err();
        assert!(matches!(err, GraphError::WouldDisconnect(_)));
    }

    #[test]
    fn deleting_a_loop_from_the_loop_graph_leaves_one_vertex() {
        let g = PlaneGraph::from_rotation_system(
            crate::plane_graph::RotationSystem {
                vertex_count: 1,
                rotations: vec![vec![DartId(0), DartId(1)]],
                twins: vec![DartId(1), DartId(0)],
            },
            None,
        )
        .unwrap();
        let (h, _) = g.delete_element(Deletion::Edge(DartId(0))).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.face_count(), 1);
    }

    #[test]
    fn rerooting_a_thinned_wheel_witnesses_outerplanarity() {
        // Keep one spoke of W_9, then make the face incident to the hub the
        // outer face: every vertex lies on its boundary walk.
        let (mut g, lab) = build_wheel(9).unwrap();
        for _ in 0..7 {
            let spoke = g
                .edge_darts()
                .find(|&d| g.origin(d) == lab.hub || g.head(d) == lab.hub)
                .unwrap();
            g = g.delete_element(Deletion::Edge(spoke)).unwrap().0;
        }
        assert_eq!(g.degree(lab.hub), 1);
        let hub_face = g.face_of(g.darts_at(lab.hub)[0]);
        let rerooted = g.reroot_outer_face(hub_face).unwrap();
        let on_outer: std::collections::BTreeSet<_> =
            rerooted.face_vertices(rerooted.outer_face()).collect();
        assert_eq!(on_outer.len(), rerooted.vertex_count());
    }

    #[test]
    fn reroot_twice_is_identity() {
        let (g, lab) = build_wheel(5).unwrap();
        let f = lab.inner_faces[0];
        let r = g.reroot_outer_face(f).unwrap();
        assert_eq!(r.outer_face(), f);
        let back = r.reroot_outer_face(g.outer_face()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn map_composition() {
        let (g, _) = build_wheel(5).unwrap();
        let e = g.edge_darts().next().unwrap();
        let (h, _, m1) = g.subdivide_edge(e).unwrap();
        let e2 = h.edge_darts().last().unwrap();
        let (_k, _, m2) = h.subdivide_edge(e2).unwrap();
        let composed = m1.then(&m2);
        assert_eq!(composed.vertices.len(), g.vertex_count());
        assert_eq!(composed.faces.len(), g.face_count());
    }
}
