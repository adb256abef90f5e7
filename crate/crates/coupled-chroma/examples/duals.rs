//! Dual graphs: wheels are self-dual, the prism dualizes to a stellated
//! K4-minus-an-edge, and dualizing twice restores the original structure
//! through the element bijections.
//!
//! ```bash
//! cargo run --example duals
//! ```

use coupled_chroma::plane_graph::IsoOptions;
use coupled_chroma::{are_isomorphic, build_named, build_wheel, NamedGraph};

fn main() {
    for n in 5..=10 {
        let (w, _) = build_wheel(n).unwrap();
        let (dual, _) = w.dual();
        println!(
            "W_{n} is self-dual: {}",
            are_isomorphic(&w, &dual, IsoOptions::ignore_outer())
        );
    }

    let prism = build_named(NamedGraph::HalinPrism).unwrap();
    let (dual, _) = prism.dual();
    println!(
        "\ndual(prism): |V|={} |E|={} — one vertex pair stays non-adjacent (K5 minus an edge)",
        dual.vertex_count(),
        dual.edge_count()
    );
    let k4e = build_named(NamedGraph::K4MinusEdge).unwrap();
    let quad = k4e.face_ids().find(|&f| k4e.face_walk(f).len() == 4).unwrap();
    let outerplanar = k4e.reroot_outer_face(quad).unwrap();
    let (stellated, _, _) = outerplanar.stellate_face(quad).unwrap();
    println!(
        "stellate(K4 - e) is isomorphic to dual(prism): {}",
        are_isomorphic(&stellated, &dual, IsoOptions::ignore_outer())
    );

    // Dualizing twice: same darts, same structure; the bijections identify
    // the original outer face.
    let (w6, _) = build_wheel(6).unwrap();
    let (d1, b1) = w6.dual();
    let (d2, b2) = d1.dual();
    let outer_restored = b2.vertex_to_face[b1.face_to_vertex[w6.outer_face().0].0];
    let restored = d2.reroot_outer_face(outer_restored).unwrap();
    println!(
        "\ndual(dual(W_6)) with the bijection-restored outer face is strictly isomorphic: {}",
        are_isomorphic(&restored, &w6, IsoOptions::strict())
    );
}
