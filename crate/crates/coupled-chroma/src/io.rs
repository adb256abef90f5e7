//! File formats: the JSON graph/list/coloring schemas, DOT export, and
//! graph6 import.
//!
//! The graph schema carries the rotation system verbatim so embeddings and
//! face identities survive round-trips bit for bit:
//!
//! ```json
//! {
//!   "vertices": 9,
//!   "darts": [ { "id": 0, "twin": 1, "next_at_vertex": 7, "origin": 1 }, ... ],
//!   "outer_face_dart": 0
//! }
//! ```
//!
//! Lists are keyed by element (`"v:3"`, `"f:0"`); colorings mirror them with
//! single integers. All identifiers are 0-based.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::incidence::{Color, CoupledColoring, IncidenceGraph, ListAssignment};
use crate::plane_graph::{
    DartId, DualBijection, ElementRef, GraphError, PlaneGraph, RotationSystem,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph6: {0}")]
    Graph6(String),
}

#[derive(Serialize, Deserialize)]
struct DartJson {
    id: usize,
    twin: usize,
    next_at_vertex: usize,
    origin: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    darts: Vec<DartJson>,
    outer_face_dart: usize,
}

/// Serialize a graph to the JSON schema (pretty-printed, trailing newline).
pub fn graph_to_json(g: &PlaneGraph) -> String {
    let darts: Vec<DartJson> = (0..g.dart_count())
        .map(|i| {
            let d = DartId(i);
            DartJson {
                id: i,
                twin: g.twin(d).0,
                next_at_vertex: g.next_at_vertex(d).0,
                origin: g.origin(d).0,
            }
        })
        .collect();
    let outer_face_dart = g
        .face_walk(g.outer_face())
        .first()
        .map(|d| d.0)
        .unwrap_or(0);
    let json = GraphJson {
        vertices: g.vertex_count(),
        darts,
        outer_face_dart,
    };
    let mut s = serde_json::to_string_pretty(&json).expect("schema serializes");
    s.push('\n');
    s
}

/// Parse a graph from the JSON schema, re-validating the rotation system.
pub fn graph_from_json(s: &str) -> Result<PlaneGraph, IoError> {
    let json: GraphJson = serde_json::from_str(s)?;
    let count = json.darts.len();
    let mut twins = vec![DartId(0); count];
    let mut origin = vec![usize::MAX; count];
    let mut next = vec![usize::MAX; count];
    for (pos, d) in json.darts.iter().enumerate() {
        if d.id != pos {
            return Err(IoError::Schema(format!(
                "dart ids must be dense and ascending; position {pos} has id {}",
                d.id
            )));
        }
        if d.twin >= count || d.next_at_vertex >= count || d.origin >= json.vertices {
            return Err(IoError::Schema(format!("dart {} references out of range", d.id)));
        }
        twins[pos] = DartId(d.twin);
        origin[pos] = d.origin;
        next[pos] = d.next_at_vertex;
    }
    // Rebuild per-vertex rotations by following next_at_vertex cycles.
    let mut rotations: Vec<Vec<DartId>> = vec![Vec::new(); json.vertices];
    let mut placed = vec![false; count];
    for start in 0..count {
        if placed[start] {
            continue;
        }
        let v = origin[start];
        let mut cycle = Vec::new();
        let mut d = start;
        loop {
            if placed[d] {
                return Err(IoError::Schema(format!(
                    "next_at_vertex does not partition the darts into cycles (dart {d})"
                )));
            }
            if origin[d] != v {
                return Err(IoError::Schema(format!(
                    "dart {d} in the rotation of vertex {v} has origin {}",
                    origin[d]
                )));
            }
            placed[d] = true;
            cycle.push(DartId(d));
            d = next[d];
            if d == start {
                break;
            }
        }
        if !rotations[v].is_empty() {
            return Err(IoError::Schema(format!(
                "vertex {v} has more than one rotation cycle"
            )));
        }
        rotations[v] = cycle;
    }
    let outer_hint = if count == 0 {
        None
    } else if json.outer_face_dart < count {
        Some(DartId(json.outer_face_dart))
    } else {
        return Err(IoError::Schema(format!(
            "outer_face_dart {} out of range",
            json.outer_face_dart
        )));
    };
    Ok(PlaneGraph::from_rotation_system(
        RotationSystem {
            vertex_count: json.vertices,
            rotations,
            twins,
        },
        outer_hint,
    )?)
}

#[derive(Serialize, Deserialize)]
struct ListsJson {
    lists: BTreeMap<ElementRef, BTreeSet<Color>>,
}

pub fn lists_to_json(l: &ListAssignment) -> String {
    let json = ListsJson {
        lists: l.iter().map(|(&e, s)| (e, s.clone())).collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("schema serializes");
    s.push('\n');
    s
}

pub fn lists_from_json(s: &str) -> Result<ListAssignment, IoError> {
    let json: ListsJson = serde_json::from_str(s)?;
    Ok(json.lists.into_iter().collect())
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    colors: BTreeMap<ElementRef, Color>,
}

pub fn coloring_to_json(c: &CoupledColoring) -> String {
    let json = ColoringJson {
        colors: c.iter().map(|(&e, &c)| (e, c)).collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("schema serializes");
    s.push('\n');
    s
}

pub fn coloring_from_json(s: &str) -> Result<CoupledColoring, IoError> {
    let json: ColoringJson = serde_json::from_str(s)?;
    Ok(json.colors.into_iter().collect())
}

/// DOT rendering of the primal graph.
pub fn dot_primal(g: &PlaneGraph) -> String {
    let mut out = String::from("graph primal {\n");
    for v in g.vertex_ids() {
        out.push_str(&format!("  v{};\n", v.0));
    }
    for d in g.edge_darts() {
        let (u, v) = g.edge_endpoints(d);
        out.push_str(&format!("  v{} -- v{};\n", u.0, v.0));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the primal graph overlaid with its dual: face nodes are
/// boxes and dual edges dashed.
pub fn dot_dual_overlay(g: &PlaneGraph) -> String {
    let (_, bij) = g.dual();
    let _ = bij;
    let mut out = String::from("graph dual_overlay {\n");
    for v in g.vertex_ids() {
        out.push_str(&format!("  v{};\n", v.0));
    }
    for f in g.face_ids() {
        let marker = if f == g.outer_face() { ", peripheries=2" } else { "" };
        out.push_str(&format!("  f{} [shape=box, style=dashed{}];\n", f.0, marker));
    }
    for d in g.edge_darts() {
        let (u, v) = g.edge_endpoints(d);
        out.push_str(&format!("  v{} -- v{};\n", u.0, v.0));
        let (f1, f2) = (g.face_of(d), g.face_of(g.twin(d)));
        out.push_str(&format!("  f{} -- f{} [style=dashed];\n", f1.0, f2.0));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the incidence graph, element kinds shape-coded.
pub fn dot_incidence(x: &IncidenceGraph) -> String {
    let mut out = String::from("graph incidence {\n");
    for id in 0..x.node_count() {
        let e = x.node(id);
        let shape = if e.is_vertex() { "ellipse" } else { "box" };
        out.push_str(&format!("  \"{e}\" [shape={shape}];\n"));
    }
    for &(a, b) in x.edges() {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", x.node(a), x.node(b)));
    }
    out.push_str("}\n");
    out
}

/// Parse one graph6 line into a vertex count and edge list.
pub fn parse_graph6(s: &str) -> Result<(usize, Vec<(usize, usize)>), IoError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(IoError::Graph6("empty input".into()));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(IoError::Graph6("truncated vertex count".into()));
        }
        if bytes[1] == 126 {
            return Err(IoError::Graph6("graphs beyond 2^18 vertices unsupported".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(IoError::Graph6(format!("invalid byte {b}")));
            }
            n = (n << 6) | (b as usize - 63);
        }
        (n, 4)
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(IoError::Graph6(format!("invalid byte {}", bytes[0])));
        }
        (bytes[0] as usize - 63, 1)
    };
    let bits_needed = n.saturating_sub(1) * n / 2;
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    let mut current = 0u8;
    let mut remaining = 0u8;
    for j in 1..n {
        for i in 0..j {
            if remaining == 0 {
                if pos >= bytes.len() {
                    return Err(IoError::Graph6("truncated adjacency bits".into()));
                }
                let b = bytes[pos];
                if !(63..=126).contains(&b) {
                    return Err(IoError::Graph6(format!("invalid byte {b}")));
                }
                current = b - 63;
                remaining = 6;
                pos += 1;
            }
            let bit = (current >> (remaining - 1)) & 1;
            remaining -= 1;
            bit_index += 1;
            if bit == 1 {
                edges.push((i, j));
            }
        }
    }
    debug_assert_eq!(bit_index, bits_needed);
    Ok((n, edges))
}

/// Combine a graph6 abstract graph with separately supplied per-vertex
/// counterclockwise neighbor orders into a plane graph.
pub fn plane_graph_from_graph6(
    g6: &str,
    rotations: &[Vec<usize>],
) -> Result<PlaneGraph, IoError> {
    let (n, edges) = parse_graph6(g6)?;
    if rotations.len() != n {
        return Err(IoError::Schema(format!(
            "graph6 graph has {n} vertices but {} rotations were supplied",
            rotations.len()
        )));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    for (v, rot) in rotations.iter().enumerate() {
        let listed: BTreeSet<usize> = rot.iter().copied().collect();
        if listed.len() != rot.len() || listed != adj[v] {
            return Err(IoError::Schema(format!(
                "rotation of vertex {v} does not list its graph6 neighbors exactly once"
            )));
        }
    }
    Ok(crate::plane_graph::simple_from_neighbor_orders(rotations)?)
}

/// Check that a dual bijection maps the incidence relation of `g` onto that
/// of its dual (used by tests and the examples).
pub fn incidence_respects_duality(
    g: &PlaneGraph,
    dual: &PlaneGraph,
    bij: &DualBijection,
) -> bool {
    let xg = crate::incidence::build_incidence_graph(g);
    let xd = crate::incidence::build_incidence_graph(dual);
    if xg.node_count() != xd.node_count() || xg.edge_count() != xd.edge_count() {
        return false;
    }
    let map = |e: ElementRef| match e {
        ElementRef::Vertex(v) => ElementRef::Face(bij.vertex_to_face[v.0]),
        ElementRef::Face(f) => ElementRef::Vertex(bij.face_to_vertex[f.0]),
    };
    xg.edges().iter().all(|&(a, b)| {
        match (xd.node_id(map(xg.node(a))), xd.node_id(map(xg.node(b)))) {
            (Some(ia), Some(ib)) => xd.has_edge(ia, ib),
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{build_named, build_wheel, NamedGraph};

    #[test]
    fn graph_json_round_trips_byte_identically() {
        for g in [
            build_wheel(9).unwrap().0,
            build_named(NamedGraph::TripleEdge).unwrap(),
            build_named(NamedGraph::HalinPrism).unwrap(),
        ] {
            let s = graph_to_json(&g);
            let g2 = graph_from_json(&s).unwrap();
            assert_eq!(graph_to_json(&g2), s);
            assert_eq!(g2.vertex_count(), g.vertex_count());
            assert_eq!(g2.face_count(), g.face_count());
            assert_eq!(g2.outer_face(), g.outer_face());
        }
    }

    #[test]
    fn malformed_graph_json_rejected() {
        assert!(graph_from_json("{}").is_err());
        // Twin that is its own fixed point.
        let bad = r#"{"vertices":1,"darts":[{"id":0,"twin":0,"next_at_vertex":0,"origin":0}],"outer_face_dart":0}"#;
        assert!(graph_from_json(bad).is_err());
    }

    #[test]
    fn lists_and_colorings_round_trip() {
        let mut l = ListAssignment::new();
        l.insert(ElementRef::vertex(3), [1, 2, 5, 6]);
        l.insert(ElementRef::face(0), [5, 6, 7, 8]);
        let s = lists_to_json(&l);
        assert!(s.contains("\"v:3\""));
        assert_eq!(lists_from_json(&s).unwrap(), l);

        let mut c = CoupledColoring::new();
        c.set(ElementRef::vertex(3), 2);
        c.set(ElementRef::face(0), 7);
        let s = coloring_to_json(&c);
        assert_eq!(coloring_from_json(&s).unwrap(), c);
    }

    #[test]
    fn dot_outputs_name_all_elements() {
        let (g, _) = build_wheel(5).unwrap();
        let primal = dot_primal(&g);
        assert!(primal.contains("v0 -- v1;"));
        let overlay = dot_dual_overlay(&g);
        assert!(overlay.contains("shape=box"));
        let x = crate::incidence::build_incidence_graph(&g);
        let dot = dot_incidence(&x);
        assert!(dot.contains("\"v:0\""));
        assert!(dot.contains("\"f:0\""));
    }

    #[test]
    fn graph6_parses_k4() {
        // K4 in graph6 is "C~".
        let (n, edges) = parse_graph6("C~").unwrap();
        assert_eq!(n, 4);
        assert_eq!(edges.len(), 6);
        // With the planar rotations this becomes the K4 plane graph.
        let rotations = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        let g = plane_graph_from_graph6("C~", &rotations).unwrap();
        assert_eq!(g.face_count(), 4);
    }

    #[test]
    fn graph6_rejects_mismatched_rotations() {
        let rotations = vec![vec![1], vec![0, 2], vec![1]];
        // Path on 3 vertices is "Bw"? build from edges 0-1, 1-2: bits 101 -> 'B' 'g'.
        let (n, edges) = parse_graph6("Bg").unwrap();
        assert_eq!(n, 3);
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
        assert!(plane_graph_from_graph6("Bg", &rotations).is_ok());
        let bad = vec![vec![1, 2], vec![0], vec![0]];
        assert!(plane_graph_from_graph6("Bg", &bad).is_err());
    }
}
