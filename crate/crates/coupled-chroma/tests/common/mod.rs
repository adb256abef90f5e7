//! Shared helpers for the integration suites: seeded random inputs and the
//! independent brute-force counting oracle.
//!
//! Each integration test binary compiles its own copy, so not every helper
//! is used everywhere.
#![allow(dead_code)]

use std::collections::BTreeSet;

use coupled_chroma::incidence::{Color, CoupledColoring};
use coupled_chroma::plane_graph::DartId;
use coupled_chroma::wheel::{HostedSubgraph, WheelHost};
use coupled_chroma::{
    verify_coupled_coloring, Deletion, ElementRef, IncidenceGraph, ListAssignment, PlaneGraph,
    VertexId,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng_for(label: &str, n: usize) -> ChaCha8Rng {
    let mut seed = 0xA11CEu64;
    for b in label.bytes() {
        seed = seed.wrapping_mul(131).wrapping_add(b as u64);
    }
    ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 24))
}

pub fn random_lists(
    elements: &[ElementRef],
    size: usize,
    palette: i32,
    rng: &mut ChaCha8Rng,
) -> ListAssignment {
    let mut l = ListAssignment::new();
    for &e in elements {
        let mut set = BTreeSet::new();
        while set.len() < size {
            set.insert(rng.gen_range(1..=palette));
        }
        l.insert(e, set);
    }
    l
}

/// A random connected subgraph of the host wheel, built by attempting a few
/// random vertex/edge deletions (deletions that would disconnect are
/// rejected by the library and simply skipped).
pub fn random_subgraph(host: &WheelHost, rng: &mut ChaCha8Rng) -> HostedSubgraph {
    let mut g = HostedSubgraph::full(host);
    let deletions = rng.gen_range(0..=5);
    for _ in 0..deletions {
        for _attempt in 0..8 {
            if g.graph.dart_count() == 0 {
                return g;
            }
            let target = if rng.gen_bool(0.3) && g.graph.vertex_count() > 3 {
                Deletion::Vertex(VertexId(rng.gen_range(0..g.graph.vertex_count())))
            } else {
                Deletion::Edge(DartId(rng.gen_range(0..g.graph.dart_count())))
            };
            if let Ok(next) = g.delete(target) {
                g = next;
                break;
            }
        }
    }
    g
}

/// Count all valid colorings by plain enumeration over the product of the
/// lists, checking each candidate with the verifier. Independent of the
/// solver's search path.
pub fn naive_count(x: &IncidenceGraph, l: &ListAssignment) -> u64 {
    let menus: Vec<Vec<Color>> = (0..x.node_count())
        .map(|id| l.get(x.node(id)).expect("list present").iter().copied().collect())
        .collect();
    if menus.iter().any(Vec::is_empty) {
        return 0;
    }
    let mut odometer = vec![0usize; menus.len()];
    let mut count = 0u64;
    loop {
        let candidate: CoupledColoring = (0..menus.len())
            .map(|id| (x.node(id), menus[id][odometer[id]]))
            .collect();
        if verify_coupled_coloring(x, l, &candidate).unwrap().is_valid() {
            count += 1;
        }
        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == menus.len() {
                return count;
            }
            odometer[pos] += 1;
            if odometer[pos] < menus[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

pub fn euler_holds(g: &PlaneGraph) -> bool {
    g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64 == 2
}
