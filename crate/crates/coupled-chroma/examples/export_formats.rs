//! File formats: the JSON graph schema (byte-stable round trips), list and
//! coloring JSON, DOT rendering, and graph6 import with supplied rotations.
//!
//! ```bash
//! cargo run --example export_formats
//! ```

use coupled_chroma::io::{
    coloring_to_json, dot_dual_overlay, dot_incidence, dot_primal, graph_from_json,
    graph_to_json, lists_to_json, plane_graph_from_graph6,
};
use coupled_chroma::{build_incidence_graph, build_wheel, color_wheel, ListAssignment};

fn main() {
    let (w5, _) = build_wheel(5).unwrap();
    let json = graph_to_json(&w5);
    println!("graph JSON for W_5 ({} bytes):", json.len());
    for line in json.lines().take(10) {
        println!("    {line}");
    }
    println!("    ...");
    let back = graph_from_json(&json).unwrap();
    println!("round trip is byte-identical: {}", graph_to_json(&back) == json);

    let lists = ListAssignment::uniform(&w5.elements(), &[1, 2, 3, 4, 5]);
    let coloring = color_wheel(5, &lists).unwrap();
    println!("\nlists JSON starts with: {}", lists_to_json(&lists).lines().nth(2).unwrap());
    println!("coloring JSON starts with: {}", coloring_to_json(&coloring).lines().nth(2).unwrap());

    println!("\nDOT primal, first lines:");
    for line in dot_primal(&w5).lines().take(4) {
        println!("    {line}");
    }
    println!("DOT dual overlay includes dashed face nodes: {}", dot_dual_overlay(&w5).contains("style=dashed"));
    println!(
        "DOT incidence shape-codes elements: {}",
        dot_incidence(&build_incidence_graph(&w5)).contains("shape=box")
    );

    // graph6: K4 plus an explicit rotation system.
    let rotations = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
    let k4 = plane_graph_from_graph6("C~", &rotations).unwrap();
    println!(
        "\ngraph6 \"C~\" with rotations gives a plane K4: {} faces",
        k4.face_count()
    );
}
