//! Extend a coupled coloring across subdivisions: color a small base graph,
//! subdivide its edges repeatedly, and push the coloring forward — each new
//! degree-2 vertex has at most four constraints against five list colors.
//!
//! ```bash
//! cargo run --example subdivide_and_extend
//! ```

use coupled_chroma::wheel::{extend_subdivision_coloring, SubdivisionMap};
use coupled_chroma::{
    build_incidence_graph, build_named, exact_color, verify_coupled_coloring, ElementRef,
    ListAssignment, NamedGraph,
};

fn main() {
    let base = build_named(NamedGraph::TripleEdge).unwrap();
    let mut h = base.clone();
    let mut map = SubdivisionMap {
        vertices: h.vertex_ids().map(|v| (v, v)).collect(),
        faces: h.face_ids().map(|f| (f, f)).collect(),
    };

    // Subdivide; three rounds over whatever edge comes first.
    for round in 0..6 {
        let e = h.edge_darts().nth(round % h.edge_count()).unwrap();
        let (h2, _, m) = h.subdivide_edge(e).unwrap();
        map = SubdivisionMap {
            vertices: map.vertices.iter().map(|(&b, &v)| (b, m.vertices[&v])).collect(),
            faces: map.faces.iter().map(|(&b, &f)| (b, m.faces[&f])).collect(),
        };
        h = h2;
    }
    println!(
        "subdivided the triple edge 6 times: |V|={} |E|={} |F|={}",
        h.vertex_count(),
        h.edge_count(),
        h.face_count()
    );

    let lists = ListAssignment::uniform(&h.elements(), &[1, 2, 3, 4, 5]);
    // Color the base through the pulled-back lists (exhaustively: it is a
    // five-element clique), then extend.
    let base_lists: ListAssignment = map
        .vertices
        .iter()
        .map(|(&b, &v)| (ElementRef::Vertex(b), ElementRef::Vertex(v)))
        .chain(map.faces.iter().map(|(&b, &f)| (ElementRef::Face(b), ElementRef::Face(f))))
        .map(|(be, he)| (be, lists.get(he).unwrap().clone()))
        .collect();
    let out = exact_color(&build_incidence_graph(&base), &base_lists, None).unwrap();
    let base_coloring = out.coloring().unwrap().clone();
    println!("base coloring found in {} search steps", out.stats.nodes_expanded);

    let extended = extend_subdivision_coloring(&h, &base, &map, &base_coloring, &lists).unwrap();
    let verdict =
        verify_coupled_coloring(&build_incidence_graph(&h), &lists, &extended).unwrap();
    println!("extended to all {} elements: {verdict:?}", extended.len());
}
