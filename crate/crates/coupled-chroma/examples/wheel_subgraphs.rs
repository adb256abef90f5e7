//! Classify and color connected subgraphs of a wheel: the full wheel, the
//! bare rim, outerplanar remainders, and spoke subdivisions.
//!
//! ```bash
//! cargo run --example wheel_subgraphs
//! ```

use coupled_chroma::wheel::{classify_wheel_subgraph, HostedSubgraph, WheelHost};
use coupled_chroma::{
    build_incidence_graph, color_wheel_subgraph, verify_coupled_coloring, Deletion,
    ListAssignment, VertexId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let host = WheelHost::new(9).unwrap();
    let full = HostedSubgraph::full(&host);

    // Four shapes: untouched, hub removed, a rim edge removed, spokes thinned.
    let hub_gone = full.delete(Deletion::Vertex(host.labeling.hub)).unwrap();
    let rim_dart = host
        .graph
        .edge_darts()
        .find(|&d| host.graph.origin(d) != host.labeling.hub && host.graph.head(d) != host.labeling.hub)
        .unwrap();
    let rim_gone = full.delete(Deletion::Edge(rim_dart)).unwrap();
    let mut spokes_thinned = full.clone();
    for _ in 0..5 {
        let hub = spokes_thinned
            .embedding
            .vertex_to_host
            .iter()
            .position(|&h| h == host.labeling.hub)
            .map(VertexId)
            .unwrap();
        let spoke = spokes_thinned
            .graph
            .edge_darts()
            .find(|&d| spokes_thinned.graph.origin(d) == hub || spokes_thinned.graph.head(d) == hub)
            .unwrap();
        spokes_thinned = spokes_thinned.delete(Deletion::Edge(spoke)).unwrap();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (label, sub) in [
        ("W_9 itself", &full),
        ("hub deleted", &hub_gone),
        ("one rim edge deleted", &rim_gone),
        ("three spokes left", &spokes_thinned),
    ] {
        let case = classify_wheel_subgraph(&sub.graph, &host, &sub.embedding).unwrap();
        let mut lists = ListAssignment::new();
        for &e in &sub.graph.elements() {
            let mut set = std::collections::BTreeSet::new();
            while set.len() < 5 {
                set.insert(rng.gen_range(1..=15));
            }
            lists.insert(e, set);
        }
        let coloring = color_wheel_subgraph(&sub.graph, &case, &lists).unwrap();
        let verdict =
            verify_coupled_coloring(&build_incidence_graph(&sub.graph), &lists, &coloring)
                .unwrap();
        println!(
            "{label:<22} -> case {:<22} |V|={:<2} |F|={:<2} verifier: {verdict:?}",
            case.name(),
            sub.graph.vertex_count(),
            sub.graph.face_count()
        );
    }
}
