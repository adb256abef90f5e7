//! The exact engines: complete search, exact counting, degree-list coloring,
//! and the fixed-end strip sweep.
//!
//! ```bash
//! cargo run --example solver_oracles
//! ```

use coupled_chroma::solver::{color_strip, degree_choosable_color};
use coupled_chroma::{
    build_incidence_graph, build_named, build_wheel, build_xn, count_colorings, exact_color,
    ElementRef, IncidenceGraph, ListAssignment, NamedGraph,
};

fn main() {
    // Complete search: X(W_5) is not colorable from four uniform colors.
    let (w5, _) = build_wheel(5).unwrap();
    let x = build_incidence_graph(&w5);
    let l4 = ListAssignment::uniform(&w5.elements(), &[1, 2, 3, 4]);
    let out = exact_color(&x, &l4, None).unwrap();
    println!(
        "X(W_5), uniform {{1,2,3,4}}: UNSAT = {} after {} search steps",
        out.is_unsat(),
        out.stats.nodes_expanded
    );
    println!(
        "  counting agrees: {} colorings",
        count_colorings(&x, &l4, u64::MAX).unwrap()
    );

    // Exact counting on a satisfiable instance.
    let c4 = build_named(NamedGraph::Cycle(4)).unwrap();
    let xc = build_incidence_graph(&c4);
    let lc = ListAssignment::uniform(&c4.elements(), &[1, 2, 3, 4]);
    println!(
        "\nX(C_4), uniform {{1,2,3,4}}: exactly {} colorings",
        count_colorings(&xc, &lc, u64::MAX).unwrap()
    );

    // Degree lists suffice away from cliques and odd cycles.
    let (w9, lab) = build_wheel(9).unwrap();
    let x9 = build_xn(&w9, &lab).unwrap();
    let l = ListAssignment::uniform(x9.nodes(), &[1, 2, 3, 4]);
    let out = degree_choosable_color(&x9, &l).unwrap();
    println!(
        "\nthe 4-regular ring X_9 colors from 4-color lists: {}",
        out.coloring().is_some()
    );

    // The strip sweep: square of a path, two fixed nodes at one end.
    let nodes: Vec<ElementRef> = (0..8).map(ElementRef::vertex).collect();
    let mut edges = Vec::new();
    for i in 0..8 {
        for j in [i + 1, i + 2] {
            if j < 8 {
                edges.push((i, j));
            }
        }
    }
    let strip = IncidenceGraph::from_parts(nodes.clone(), edges, Some((0..8).collect()));
    let l3 = ListAssignment::uniform(&nodes, &[1, 2, 3]);
    let fixed = [(nodes[7], 1), (nodes[6], 2)];
    let out = color_strip(&strip, &l3, fixed).unwrap();
    let colors: Vec<String> = (0..8)
        .map(|i| out.coloring().unwrap().get(nodes[i]).unwrap().to_string())
        .collect();
    println!("\nstrip sweep from the fixed end: colors {}", colors.join(" "));
}
