//! The adversarial 4-lists: a fixed size-4 list assignment that defeats
//! every wheel with at least 7 vertices, while size-5 lists always work.
//!
//! ```bash
//! cargo run --example adversarial_lists
//! ```

use coupled_chroma::certificates::build_adversarial_lists;
use coupled_chroma::{
    build_incidence_graph, build_wheel, color_wheel, exact_color, ListAssignment,
};

fn main() {
    let n = 7;
    let lists = build_adversarial_lists(n).unwrap();
    println!("the adversarial lists on W_{n}:");
    for (e, list) in lists.iter() {
        let colors: Vec<String> = list.iter().map(|c| c.to_string()).collect();
        println!("    {e:<5} {{{}}}", colors.join(","));
    }

    for n in 7..=9 {
        let (w, _) = build_wheel(n).unwrap();
        let x = build_incidence_graph(&w);
        let l = build_adversarial_lists(n).unwrap();
        let out = exact_color(&x, &l, None).unwrap();
        println!(
            "W_{n}: no coloring from the adversarial 4-lists (complete search, {} steps): {}",
            out.stats.nodes_expanded,
            out.is_unsat()
        );
    }

    // One extra color per list and the constructive pipeline never fails.
    let (w, _) = build_wheel(9).unwrap();
    let five = ListAssignment::uniform(&w.elements(), &[1, 2, 3, 4, 5]);
    println!(
        "\nW_9 with uniform 5-lists colors constructively: {}",
        color_wheel(9, &five).is_ok()
    );
}
