//! The vertex–face incidence graph `X(G)` and coupled colorings.
//!
//! `X(G)` has one node per vertex and per face of a plane graph `G`, and an
//! edge for every pair of adjacent vertices, every pair of faces sharing an
//! edge, and every incident vertex–face pair. A coupled coloring of `G` is
//! exactly a proper node coloring of `X(G)`, so one validator serves the
//! whole crate.
//!
//! Incidence multiplicity collapses: a vertex appearing twice on a face walk
//! yields a single constraint edge, and an element is never constrained
//! against itself (a face touching itself across a bridge, a loop's endpoint
//! appearing on both sides).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::plane_graph::{ElementRef, PlaneGraph, WheelLabeling};

/// A color. Lists are sets of colors, not multisets.
pub type Color = i32;

/// Node index inside an [`IncidenceGraph`].
pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum IncidenceError {
    #[error("X_n requires a wheel with n >= 5, got n = {0}")]
    WheelTooSmall(usize),
    #[error("labeling does not fit the graph: {0}")]
    BadLabeling(String),
}

/// A simple graph on vertex/face elements. Optionally carries the cyclic
/// node enumeration sigma = <f_1, x_1, f_2, x_2, ...> used by the wheel
/// pipeline (for `X_n` the node ids coincide with sigma positions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    nodes: Vec<ElementRef>,
    index: BTreeMap<ElementRef, NodeId>,
    adj: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    sigma: Option<Vec<NodeId>>,
}

impl IncidenceGraph {
    /// Build a simple graph from nodes and edges given as node-index pairs.
    /// Self-loops are dropped and parallel edges collapsed.
    pub fn from_parts(
        nodes: Vec<ElementRef>,
        edge_pairs: impl IntoIterator<Item = (NodeId, NodeId)>,
        sigma: Option<Vec<NodeId>>,
    ) -> Self {
        let mut edges: Vec<(NodeId, NodeId)> = edge_pairs
            .into_iter()
            .filter_map(|(a, b)| {
                assert!(a < nodes.len() && b < nodes.len(), "edge endpoint out of range");
                (a != b).then(|| (a.min(b), a.max(b)))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut degree = vec![0usize; nodes.len()];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut adj: Vec<Vec<NodeId>> = degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let index = nodes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        IncidenceGraph {
            nodes,
            index,
            adj,
            edges,
            sigma,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[ElementRef] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> ElementRef {
        self.nodes[id]
    }

    pub fn node_id(&self, e: ElementRef) -> Option<NodeId> {
        self.index.get(&e).copied()
    }

    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.adj[id]
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.adj[id].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as sorted (low, high) node-index pairs, lexicographic.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn sigma(&self) -> Option<&[NodeId]> {
        self.sigma.as_deref()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.nodes.len()
    }

    /// The subgraph obtained by removing the given elements. Sigma, if
    /// present, is filtered to the survivors (preserving cyclic order).
    pub fn delete_nodes(&self, drop: &[ElementRef]) -> IncidenceGraph {
        let dropped: BTreeSet<ElementRef> = drop.iter().copied().collect();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, &e) in self.nodes.iter().enumerate() {
            if !dropped.contains(&e) {
                remap[i] = nodes.len();
                nodes.push(e);
            }
        }
        let edges = self.edges.iter().filter_map(|&(a, b)| {
            if remap[a] != usize::MAX && remap[b] != usize::MAX {
                Some((remap[a], remap[b]))
            } else {
                None
            }
        });
        let sigma = self.sigma.as_ref().map(|s| {
            s.iter()
                .filter_map(|&i| (remap[i] != usize::MAX).then_some(remap[i]))
                .collect()
        });
        let collected: Vec<(NodeId, NodeId)> = edges.collect();
        IncidenceGraph::from_parts(nodes, collected, sigma)
    }
}

/// Build `X(G)`: nodes are all vertices (first, ascending) and all faces of
/// `g`; edges are vertex adjacency, face adjacency across a shared edge, and
/// vertex–face incidence.
pub fn build_incidence_graph(g: &PlaneGraph) -> IncidenceGraph {
    let nv = g.vertex_count();
    let nodes: Vec<ElementRef> = g.elements();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(4 * nodes.len());
    for d in g.edge_darts() {
        let (u, v) = g.edge_endpoints(d);
        edges.push((u.0, v.0));
        let f1 = g.face_of(d);
        let f2 = g.face_of(g.twin(d));
        edges.push((nv + f1.0, nv + f2.0));
    }
    for (i, dart) in g.darts().iter().enumerate() {
        let f = g.face_of(crate::plane_graph::DartId(i));
        edges.push((dart.origin.0, nv + f.0));
    }
    IncidenceGraph::from_parts(nodes, edges, None)
}

/// Build `X_n`: the incidence graph of the wheel `W_n` with the hub `x_0`
/// and the outer face `f_0` removed. Nodes are ordered along the cyclic
/// enumeration sigma = <f_1, x_1, f_2, x_2, ..., f_{n-1}, x_{n-1}>, so node
/// ids coincide with sigma positions. The edges are the three families of
/// the wheel structure: rim adjacency `x_i x_{i+1}`, inner-face adjacency
/// `f_i f_{i+1}` across the spokes, and the incidences `x_i f_i`, `x_i f_{i+1}`.
pub fn build_xn(w: &PlaneGraph, lab: &WheelLabeling) -> Result<IncidenceGraph, IncidenceError> {
    let n = lab.n();
    if n < 5 {
        return Err(IncidenceError::WheelTooSmall(n));
    }
    let r = n - 1;
    if lab.inner_faces.len() != r {
        return Err(IncidenceError::BadLabeling(format!(
            "expected {r} inner faces, got {}",
            lab.inner_faces.len()
        )));
    }

    // Node id 2i = f_{i+1}, node id 2i+1 = x_{i+1} for i in 0..r.
    let mut nodes = Vec::with_capacity(2 * r);
    for i in 0..r {
        nodes.push(ElementRef::Face(lab.inner_faces[i]));
        nodes.push(ElementRef::Vertex(lab.rim[i]));
    }

    // Positions by element id for the adjacency scans below.
    const ABSENT: usize = usize::MAX;
    let mut vertex_pos = vec![ABSENT; w.vertex_count()];
    let mut face_pos = vec![ABSENT; w.face_count()];
    for i in 0..r {
        face_pos[lab.inner_faces[i].0] = 2 * i;
        vertex_pos[lab.rim[i].0] = 2 * i + 1;
    }

    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(4 * r);
    // Vertex adjacency and face adjacency in the wheel, restricted to the
    // labeled elements.
    for d in w.edge_darts() {
        let (u, v) = w.edge_endpoints(d);
        let (a, b) = (vertex_pos[u.0], vertex_pos[v.0]);
        if a != ABSENT && b != ABSENT {
            edges.push((a, b));
        }
        let f1 = w.face_of(d);
        let f2 = w.face_of(w.twin(d));
        let (a, b) = (face_pos[f1.0], face_pos[f2.0]);
        if a != ABSENT && b != ABSENT {
            edges.push((a, b));
        }
    }
    // Vertex-face incidence.
    for &f in &lab.inner_faces {
        let fp = face_pos[f.0];
        for v in w.face_vertices(f) {
            let vp = vertex_pos[v.0];
            if vp != ABSENT {
                edges.push((vp, fp));
            }
        }
    }

    let sigma = (0..2 * r).collect();
    let x = IncidenceGraph::from_parts(nodes, edges, Some(sigma));
    debug_assert_eq!(x.node_count(), 2 * n - 2);
    Ok(x)
}

/// A list assignment: a finite set of allowed colors per element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<ElementRef, BTreeSet<Color>>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The same list of colors for every given element.
    pub fn uniform(elements: &[ElementRef], colors: &[Color]) -> Self {
        let set: BTreeSet<Color> = colors.iter().copied().collect();
        ListAssignment {
            lists: elements.iter().map(|&e| (e, set.clone())).collect(),
        }
    }

    pub fn insert(&mut self, e: ElementRef, colors: impl IntoIterator<Item = Color>) {
        self.lists.insert(e, colors.into_iter().collect());
    }

    pub fn get(&self, e: ElementRef) -> Option<&BTreeSet<Color>> {
        self.lists.get(&e)
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementRef, &BTreeSet<Color>)> {
        self.lists.iter()
    }

    /// Keep only the `k` smallest colors of each list.
    pub fn truncated(&self, k: usize) -> ListAssignment {
        ListAssignment {
            lists: self
                .lists
                .iter()
                .map(|(&e, set)| (e, set.iter().copied().take(k).collect()))
                .collect(),
        }
    }

    /// Shortest list length over the given elements; `None` if one is missing.
    pub fn min_len_over(&self, elements: &[ElementRef]) -> Option<usize> {
        elements
            .iter()
            .map(|e| self.lists.get(e).map(BTreeSet::len))
            .min()
            .flatten()
    }
}

impl FromIterator<(ElementRef, BTreeSet<Color>)> for ListAssignment {
    fn from_iter<T: IntoIterator<Item = (ElementRef, BTreeSet<Color>)>>(iter: T) -> Self {
        ListAssignment {
            lists: iter.into_iter().collect(),
        }
    }
}

/// A (total) coupled coloring: one color per element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoupledColoring {
    colors: BTreeMap<ElementRef, Color>,
}

impl CoupledColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, e: ElementRef, c: Color) {
        self.colors.insert(e, c);
    }

    pub fn get(&self, e: ElementRef) -> Option<Color> {
        self.colors.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementRef, &Color)> {
        self.colors.iter()
    }
}

impl FromIterator<(ElementRef, Color)> for CoupledColoring {
    fn from_iter<T: IntoIterator<Item = (ElementRef, Color)>>(iter: T) -> Self {
        CoupledColoring {
            colors: iter.into_iter().collect(),
        }
    }
}

/// Outcome of [`verify_coupled_coloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violation(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The element's color is not in its list.
    NotInList(ElementRef),
    /// Two constrained elements share a color.
    SameColor(ElementRef, ElementRef),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotInList(e) => write!(f, "color of {e} is not in its list"),
            Violation::SameColor(a, b) => write!(f, "{a} and {b} share a color"),
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("coloring is missing element {0}")]
    MissingNode(ElementRef),
    #[error("list assignment is missing element {0}")]
    MissingList(ElementRef),
}

/// Check a coloring against `X`: every node's color must come from its list
/// and every edge must be bichromatic. The first violation is reported
/// deterministically — list violations by ascending node id, then edge
/// violations in lexicographic (low, high) order.
pub fn verify_coupled_coloring(
    x: &IncidenceGraph,
    l: &ListAssignment,
    c: &CoupledColoring,
) -> Result<Verdict, VerifyError> {
    let mut colors = Vec::with_capacity(x.node_count());
    for id in 0..x.node_count() {
        let e = x.node(id);
        let color = c.get(e).ok_or(VerifyError::MissingNode(e))?;
        let list = l.get(e).ok_or(VerifyError::MissingList(e))?;
        colors.push((color, list.contains(&color)));
    }
    for (id, &(_, in_list)) in colors.iter().enumerate() {
        if !in_list {
            return Ok(Verdict::Violation(Violation::NotInList(x.node(id))));
        }
    }
    for &(a, b) in x.edges() {
        if colors[a].0 == colors[b].0 {
            return Ok(Verdict::Violation(Violation::SameColor(x.node(a), x.node(b))));
        }
    }
    Ok(Verdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{build_named, build_wheel, NamedGraph};

    #[test]
    fn x_of_k4_is_the_complete_multipartite_k_4x2() {
        let (k4, _) = build_wheel(4).unwrap();
        let x = build_incidence_graph(&k4);
        assert_eq!(x.node_count(), 8);
        // 4n - 8 edges at n = 8 nodes.
        assert_eq!(x.edge_count(), 24);
        // Every node has exactly one non-neighbor: its opposite element, of
        // the other kind.
        for id in 0..8 {
            assert_eq!(x.degree(id), 6);
            let non: Vec<NodeId> = (0..8)
                .filter(|&j| j != id && !x.has_edge(id, j))
                .collect();
            assert_eq!(non.len(), 1);
            assert_ne!(x.node(id).is_vertex(), x.node(non[0]).is_vertex());
        }
    }

    #[test]
    fn x_of_triangle_is_complete() {
        let c3 = build_named(NamedGraph::Cycle(3)).unwrap();
        let x = build_incidence_graph(&c3);
        assert_eq!(x.node_count(), 5);
        // K5: both faces touch every vertex and each other.
        assert_eq!(x.edge_count(), 10);
    }

    #[test]
    fn x_of_prism_is_optimal() {
        let prism = build_named(NamedGraph::HalinPrism).unwrap();
        let x = build_incidence_graph(&prism);
        assert_eq!(x.node_count(), 11);
        assert_eq!(x.edge_count(), 4 * 11 - 8);
    }

    #[test]
    fn loop_and_bridge_self_relations_are_dropped() {
        // Loop graph: the vertex sits on both faces; each face walk visits
        // the vertex once, and no self-edges appear.
        let g = crate::plane_graph::PlaneGraph::from_rotation_system(
            crate::plane_graph::RotationSystem {
                vertex_count: 1,
                rotations: vec![vec![crate::plane_graph::DartId(0), crate::plane_graph::DartId(1)]],
                twins: vec![crate::plane_graph::DartId(1), crate::plane_graph::DartId(0)],
            },
            None,
        )
        .unwrap();
        let x = build_incidence_graph(&g);
        assert_eq!(x.node_count(), 3);
        // v-f1, v-f2, f1-f2.
        assert_eq!(x.edge_count(), 3);

        // Bridge: both sides of the edge lie on the same face; the face is
        // not adjacent to itself.
        let (bridge, _) = g.dual();
        let xb = build_incidence_graph(&bridge);
        assert_eq!(xb.node_count(), 3);
        assert_eq!(xb.edge_count(), 3);
    }

    #[test]
    fn xn_is_4_regular_on_2n_minus_2_nodes() {
        for n in 5..=50 {
            let (w, lab) = build_wheel(n).unwrap();
            let x = build_xn(&w, &lab).unwrap();
            assert_eq!(x.node_count(), 2 * n - 2, "n={n}");
            assert!((0..x.node_count()).all(|i| x.degree(i) == 4), "n={n}");
            assert_eq!(x.edge_count(), 2 * (2 * n - 2), "n={n}");
            let sigma = x.sigma().unwrap();
            assert_eq!(sigma.len(), 2 * n - 2);
            // Sigma alternates f, x starting at f_1.
            assert!(sigma
                .iter()
                .enumerate()
                .all(|(i, &id)| x.node(id).is_vertex() == (i % 2 == 1)));
        }
    }

    #[test]
    fn xn_rejects_small_wheels() {
        let (w, lab) = build_wheel(4).unwrap();
        assert!(matches!(
            build_xn(&w, &lab),
            Err(IncidenceError::WheelTooSmall(4))
        ));
    }

    #[test]
    fn xn_equals_incidence_graph_with_hub_and_outer_removed() {
        for n in 5..=12 {
            let (w, lab) = build_wheel(n).unwrap();
            let xn = build_xn(&w, &lab).unwrap();
            let full = build_incidence_graph(&w);
            let reduced = full.delete_nodes(&[
                ElementRef::Vertex(lab.hub),
                ElementRef::Face(lab.outer),
            ]);
            // Same node set and same adjacency relation (node orders differ).
            let mut a: Vec<ElementRef> = xn.nodes().to_vec();
            let mut b: Vec<ElementRef> = reduced.nodes().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b, "n={n}");
            let to_elems = |g: &IncidenceGraph| -> BTreeSet<(ElementRef, ElementRef)> {
                g.edges()
                    .iter()
                    .map(|&(i, j)| {
                        let (x, y) = (g.node(i), g.node(j));
                        (x.min(y), x.max(y))
                    })
                    .collect()
            };
            assert_eq!(to_elems(&xn), to_elems(&reduced), "n={n}");
        }
    }

    #[test]
    fn incidence_graph_commutes_with_duality() {
        for g in [
            build_wheel(7).unwrap().0,
            build_named(NamedGraph::HalinPrism).unwrap(),
            build_named(NamedGraph::TripleEdge).unwrap(),
            build_named(NamedGraph::Cycle(5)).unwrap(),
        ] {
            let (d, bij) = g.dual();
            let xg = build_incidence_graph(&g);
            let xd = build_incidence_graph(&d);
            assert_eq!(xg.node_count(), xd.node_count());
            assert_eq!(xg.edge_count(), xd.edge_count());
            let map = |e: ElementRef| match e {
                ElementRef::Vertex(v) => ElementRef::Face(bij.vertex_to_face[v.0]),
                ElementRef::Face(f) => ElementRef::Vertex(bij.face_to_vertex[f.0]),
            };
            for &(a, b) in xg.edges() {
                let (ma, mb) = (map(xg.node(a)), map(xg.node(b)));
                let (ia, ib) = (xd.node_id(ma).unwrap(), xd.node_id(mb).unwrap());
                assert!(xd.has_edge(ia, ib), "edge {:?}-{:?} lost", xg.node(a), xg.node(b));
            }
        }
    }

    #[test]
    fn incidence_graph_ignores_outer_face_choice() {
        let (g, lab) = build_wheel(5).unwrap();
        let r = g.reroot_outer_face(lab.inner_faces[1]).unwrap();
        assert_eq!(build_incidence_graph(&g), build_incidence_graph(&r));
    }

    #[test]
    fn verifier_reports_first_violation_deterministically() {
        let c4 = build_named(NamedGraph::Cycle(4)).unwrap();
        let x = build_incidence_graph(&c4);
        let l = ListAssignment::uniform(&c4.elements(), &[1, 2, 3, 4]);
        let mut c = CoupledColoring::new();
        for (i, v) in c4.vertex_ids().enumerate() {
            c.set(ElementRef::Vertex(v), if i % 2 == 0 { 1 } else { 2 });
        }
        c.set(ElementRef::face(0), 3);
        c.set(ElementRef::face(1), 4);
        assert!(verify_coupled_coloring(&x, &l, &c).unwrap().is_valid());

        // Clash a vertex with an incident face.
        let mut bad = c.clone();
        bad.set(ElementRef::vertex(0), 3);
        let verdict = verify_coupled_coloring(&x, &l, &bad).unwrap();
        assert_eq!(
            verdict,
            Verdict::Violation(Violation::SameColor(
                ElementRef::vertex(0),
                ElementRef::face(0)
            ))
        );

        // Color outside the list wins over later edge clashes.
        let mut off = c;
        off.set(ElementRef::vertex(3), 99);
        let verdict = verify_coupled_coloring(&x, &l, &off).unwrap();
        assert_eq!(
            verdict,
            Verdict::Violation(Violation::NotInList(ElementRef::vertex(3)))
        );
    }

    #[test]
    fn verifier_requires_total_colorings() {
        let c4 = build_named(NamedGraph::Cycle(4)).unwrap();
        let x = build_incidence_graph(&c4);
        let l = ListAssignment::uniform(&c4.elements(), &[1, 2, 3, 4]);
        let c = CoupledColoring::new();
        assert!(matches!(
            verify_coupled_coloring(&x, &l, &c),
            Err(VerifyError::MissingNode(_))
        ));
    }
}
