//! The vertex-face incidence graph X(G): its optimal edge count for
//! 3-connected inputs and the 4-regular ring X_n behind the wheel pipeline.
//!
//! ```bash
//! cargo run --example incidence_graphs
//! ```

use coupled_chroma::{build_incidence_graph, build_named, build_wheel, build_xn, NamedGraph};

fn main() {
    let (k4, _) = build_wheel(4).unwrap();
    let x = build_incidence_graph(&k4);
    println!(
        "X(K4): {} nodes, {} edges (= 4N - 8; every element conflicts with all but its opposite)",
        x.node_count(),
        x.edge_count()
    );

    let prism = build_named(NamedGraph::HalinPrism).unwrap();
    let x = build_incidence_graph(&prism);
    println!(
        "X(prism): {} nodes, {} edges (4N - 8 = {})",
        x.node_count(),
        x.edge_count(),
        4 * x.node_count() - 8
    );

    // The ring X_n: drop the hub and the outer face from X(W_n).
    let (w9, lab) = build_wheel(9).unwrap();
    let xn = build_xn(&w9, &lab).unwrap();
    println!(
        "\nX_9: {} nodes, all of degree 4: {}",
        xn.node_count(),
        (0..xn.node_count()).all(|i| xn.degree(i) == 4)
    );
    let sigma: Vec<String> = xn
        .sigma()
        .unwrap()
        .iter()
        .map(|&i| xn.node(i).to_string())
        .collect();
    println!("cyclic enumeration sigma: {}", sigma.join(", "));

    // X(G) does not depend on which face is called outer.
    let rerooted = w9.reroot_outer_face(lab.inner_faces[0]).unwrap();
    println!(
        "\nX(W_9) unchanged after rerooting the outer face: {}",
        build_incidence_graph(&w9) == build_incidence_graph(&rerooted)
    );
}
