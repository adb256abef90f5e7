//! Constructors for the named graphs used throughout the crate.

use super::{
    DartId, FaceId, GraphError, PlaneGraph, RotationSystem, VertexId, WheelLabeling,
};

/// The named graph families exposed by the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    /// Cycle on `n >= 3` vertices (two faces).
    Cycle(usize),
    /// Two vertices joined by three parallel edges (three bigon faces).
    TripleEdge,
    /// The triangular prism: two triangles plus three quadrilaterals.
    HalinPrism,
    /// K4 minus one spoke, embedded with the remaining triangle outside and
    /// the merged quadrilateral face inside. Vertices 0,1,2 are the outer
    /// triangle, vertex 3 the inner one.
    K4MinusEdge,
}

/// Build the wheel `W_n` (`n >= 4`): a cycle on `n-1` rim vertices plus a hub
/// adjacent to all of them. Vertex 0 is the hub; rim vertices are `1..n-1`
/// counterclockwise. Returns the standard labeling with `f_i` the inner face
/// containing rim vertices `x_{i-1}` and `x_i`.
pub fn build_wheel(n: usize) -> Result<(PlaneGraph, WheelLabeling), GraphError> {
    if n < 4 {
        return Err(GraphError::InvalidParameter(format!(
            "wheel needs n >= 4, got {n}"
        )));
    }
    let r = n - 1; // rim length
    // Rim edge j (0-based) joins rim vertices j+1 and (j+1) % r + 1 with
    // darts 2j (forward) and 2j+1 (backward). Spoke to rim vertex j+1 has
    // darts 2r+2j (hub out) and 2r+2j+1 (back to hub).
    let mut rotations = Vec::with_capacity(n);
    rotations.push((0..r).map(|j| DartId(2 * r + 2 * j)).collect());
    for j in 1..=r {
        let next_rim = DartId(2 * (j - 1));
        let spoke_back = DartId(2 * r + 2 * (j - 1) + 1);
        let prev_edge = (j + r - 2) % r;
        let prev_rim = DartId(2 * prev_edge + 1);
        rotations.push(vec![next_rim, spoke_back, prev_rim]);
    }
    let mut twins = Vec::with_capacity(4 * r);
    for j in 0..2 * r {
        twins.push(DartId(2 * j + 1));
        twins.push(DartId(2 * j));
    }
    let g = PlaneGraph::from_rotation_system(
        RotationSystem {
            vertex_count: n,
            rotations,
            twins,
        },
        // The pure-rim face (traced from dart 0, the first rim dart).
        Some(DartId(0)),
    )?;
    debug_assert_eq!(g.face_count(), n);

    // f_i is the triangle containing the rim edge (x_{i-1}, x_i); for i = 1
    // that is the edge (x_{n-1}, x_1), i.e. rim edge index r-1.
    let inner_faces = (1..=r)
        .map(|i| g.face_of(DartId(2 * ((i + r - 2) % r) + 1)))
        .collect();
    let labeling = WheelLabeling {
        hub: VertexId(0),
        outer: g.outer_face(),
        rim: (1..=r).map(VertexId).collect(),
        inner_faces,
    };
    debug_assert!(wheel_labeling_consistent(&g, &labeling));
    Ok((g, labeling))
}

/// Build one of the named graphs.
pub fn build_named(kind: NamedGraph) -> Result<PlaneGraph, GraphError> {
    match kind {
        NamedGraph::Cycle(n) => build_cycle(n),
        NamedGraph::TripleEdge => build_triple_edge(),
        NamedGraph::HalinPrism => build_prism(),
        NamedGraph::K4MinusEdge => build_k4_minus_edge(),
    }
}

fn build_cycle(n: usize) -> Result<PlaneGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    // Edge j joins vertices j and (j+1) % n with darts 2j / 2j+1.
    let rotations = (0..n)
        .map(|j| vec![DartId(2 * j), DartId(2 * ((j + n - 1) % n) + 1)])
        .collect();
    let mut twins = Vec::with_capacity(2 * n);
    for j in 0..n {
        twins.push(DartId(2 * j + 1));
        twins.push(DartId(2 * j));
    }
    PlaneGraph::from_rotation_system(
        RotationSystem {
            vertex_count: n,
            rotations,
            twins,
        },
        // The face walked by the backward darts.
        Some(DartId(1)),
    )
}

fn build_triple_edge() -> Result<PlaneGraph, GraphError> {
    // Edges j = 0,1,2 with darts 2j (u -> v) and 2j+1 (v -> u). The rotation
    // at v runs opposite to the one at u so that the three faces are bigons.
    PlaneGraph::from_rotation_system(
        RotationSystem {
            vertex_count: 2,
            rotations: vec![
                vec![DartId(0), DartId(2), DartId(4)],
                vec![DartId(5), DartId(3), DartId(1)],
            ],
            twins: vec![
                DartId(1),
                DartId(0),
                DartId(3),
                DartId(2),
                DartId(5),
                DartId(4),
            ],
        },
        Some(DartId(0)),
    )
}

fn build_prism() -> Result<PlaneGraph, GraphError> {
    // Inner triangle 0,1,2; outer triangle 3,4,5; vertical edges i -- i+3.
    let g = simple_from_neighbor_orders(&[
        vec![3, 1, 2],
        vec![4, 2, 0],
        vec![5, 0, 1],
        vec![4, 0, 5],
        vec![5, 1, 3],
        vec![3, 2, 4],
    ])?;
    debug_assert_eq!(g.face_count(), 5);
    // Designate the all-outer-triangle face as the outer face.
    let outer = g
        .face_ids()
        .find(|&f| g.face_vertices(f).all(|v| v.0 >= 3))
        .expect("prism has a face bounded by the outer triangle");
    g.reroot_outer_face(outer)
}

fn build_k4_minus_edge() -> Result<PlaneGraph, GraphError> {
    // K4 on the outer triangle 0,1,2 with inner vertex 3, minus the spoke
    // 1 -- 3. The merged inner face is the quadrilateral through all four
    // vertices; the outer face is the triangle 0,1,2.
    let g = simple_from_neighbor_orders(&[
        vec![1, 3, 2],
        vec![2, 0],
        vec![0, 3, 1],
        vec![0, 2],
    ])?;
    debug_assert_eq!(g.face_count(), 3);
    let outer = g
        .face_ids()
        .find(|&f| {
            let walk = g.face_walk(f);
            walk.len() == 3 && g.face_vertices(f).all(|v| v.0 <= 2)
        })
        .expect("K4 - e has the outer triangle 0,1,2");
    g.reroot_outer_face(outer)
}

/// Build a simple plane graph from per-vertex counterclockwise neighbor
/// orders. Rejects loops and parallel edges; use `from_rotation_system`
/// directly for multigraphs.
pub(crate) fn simple_from_neighbor_orders(
    orders: &[Vec<usize>],
) -> Result<PlaneGraph, GraphError> {
    let n = orders.len();
    let mut dart_of = std::collections::BTreeMap::new();
    let mut twins = Vec::new();
    for (u, nbrs) in orders.iter().enumerate() {
        for &v in nbrs {
            if v == u {
                return Err(GraphError::MalformedRotation(format!(
                    "loop at v{u} not supported by the neighbor-order builder"
                )));
            }
            if v >= n {
                return Err(GraphError::MalformedRotation(format!(
                    "neighbor v{v} of v{u} out of range"
                )));
            }
            if u < v {
                if dart_of.insert((u, v), DartId(twins.len())).is_some() {
                    return Err(GraphError::MalformedRotation(format!(
                        "parallel edge v{u} -- v{v} not supported by the neighbor-order builder"
                    )));
                }
                twins.push(DartId(twins.len() + 1));
                twins.push(DartId(twins.len() - 1));
            }
        }
    }
    let mut rotations = Vec::with_capacity(n);
    for (u, nbrs) in orders.iter().enumerate() {
        let mut rot = Vec::with_capacity(nbrs.len());
        for &v in nbrs {
            let d = if u < v {
                *dart_of
                    .get(&(u, v))
                    .ok_or_else(|| GraphError::MalformedRotation(format!("missing edge v{u}--v{v}")))?
            } else {
                let d = *dart_of.get(&(v, u)).ok_or_else(|| {
                    GraphError::MalformedRotation(format!(
                        "edge v{u} -- v{v} is listed at v{u} but not at v{v}"
                    ))
                })?;
                DartId(d.0 + 1)
            };
            rot.push(d);
        }
        rotations.push(rot);
    }
    PlaneGraph::from_rotation_system(
        RotationSystem {
            vertex_count: n,
            rotations,
            twins,
        },
        None,
    )
}

#[cfg(test)]
pub(crate) fn k4_rotations() -> RotationSystem {
    build_wheel(4).unwrap().0.rotation_system()
}

pub(crate) fn wheel_labeling_consistent(g: &PlaneGraph, lab: &WheelLabeling) -> bool {
    let r = lab.rim.len();
    if lab.inner_faces.len() != r {
        return false;
    }
    let incident = |x: VertexId, f: FaceId| g.face_vertices(f).any(|v| v == x);
    (0..r).all(|i| {
        let x = lab.rim[i];
        let f_i = lab.inner_faces[i];
        let f_next = lab.inner_faces[(i + 1) % r];
        incident(x, f_i) && incident(x, f_next)
    })
}
