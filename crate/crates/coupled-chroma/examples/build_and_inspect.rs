//! Build the named plane graphs and inspect their combinatorial structure:
//! vertex/edge/face counts, face walks, and the Euler check.
//!
//! ```bash
//! cargo run --example build_and_inspect
//! ```

use coupled_chroma::{build_named, build_wheel, NamedGraph, PlaneGraph};

fn describe(name: &str, g: &PlaneGraph) {
    let euler = g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64;
    println!(
        "{name:<14} |V|={:<3} |E|={:<3} |F|={:<3} Euler={euler}",
        g.vertex_count(),
        g.edge_count(),
        g.face_count()
    );
    for f in g.face_ids() {
        let walk: Vec<String> = g.face_vertices(f).map(|v| v.to_string()).collect();
        let marker = if f == g.outer_face() { " (outer)" } else { "" };
        println!("    {f}: {}{marker}", walk.join(" -> "));
    }
}

fn main() {
    let (w9, lab) = build_wheel(9).unwrap();
    describe("wheel W_9", &w9);
    println!(
        "    labeling: hub={}, rim={:?}",
        lab.hub,
        lab.rim.iter().map(|v| v.0).collect::<Vec<_>>()
    );

    describe("cycle C_5", &build_named(NamedGraph::Cycle(5)).unwrap());
    describe("triple edge", &build_named(NamedGraph::TripleEdge).unwrap());
    describe("prism", &build_named(NamedGraph::HalinPrism).unwrap());
    describe("K4 - spoke", &build_named(NamedGraph::K4MinusEdge).unwrap());

    // Embedding-preserving edits.
    let (sub, new_vertex, _) = w9.subdivide_edge(coupled_chroma::DartId(0)).unwrap();
    println!(
        "\nsubdividing one rim edge of W_9 adds {new_vertex} and keeps {} faces",
        sub.face_count()
    );
    let (stellated, hub2, _) = w9.stellate_face(lab.outer).unwrap();
    println!(
        "stellating the outer face adds {hub2} and brings the face count to {}",
        stellated.face_count()
    );
}
