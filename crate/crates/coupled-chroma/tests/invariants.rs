//! Property tests: structural invariants under random edit sequences, and
//! the verifier's behavior under corruption.

mod common;

use common::euler_holds;
use coupled_chroma::incidence::Violation;
use coupled_chroma::plane_graph::DartId;
use coupled_chroma::{
    build_incidence_graph, build_wheel, verify_coupled_coloring, Deletion, ListAssignment,
    PlaneGraph, Verdict,
};
use proptest::prelude::*;

#[derive(Clone, Copy, Debug)]
enum Edit {
    Subdivide,
    Duplicate,
    Stellate,
    DeleteEdge,
    DeleteVertex,
    Reroot,
}

fn edit_strategy() -> impl Strategy<Value = (Edit, usize)> {
    (
        prop_oneof![
            Just(Edit::Subdivide),
            Just(Edit::Duplicate),
            Just(Edit::Stellate),
            Just(Edit::DeleteEdge),
            Just(Edit::DeleteVertex),
            Just(Edit::Reroot),
        ],
        0usize..10_000,
    )
}

fn apply(g: &PlaneGraph, edit: Edit, pick: usize) -> Option<PlaneGraph> {
    match edit {
        Edit::Subdivide => {
            let darts: Vec<DartId> = g.edge_darts().collect();
            if darts.is_empty() {
                return None;
            }
            let e = darts[pick % darts.len()];
            let before_faces = g.face_count();
            let (h, w, _) = g.subdivide_edge(e).ok()?;
            assert_eq!(h.face_count(), before_faces, "subdivision keeps the face count");
            assert_eq!(h.degree(w), 2);
            Some(h)
        }
        Edit::Duplicate => {
            let darts: Vec<DartId> = g.edge_darts().collect();
            if darts.is_empty() {
                return None;
            }
            let e = darts[pick % darts.len()];
            let (h, _) = g.duplicate_edge(e).ok()?;
            assert_eq!(h.face_count(), g.face_count() + 1);
            Some(h)
        }
        Edit::Stellate => {
            let f = coupled_chroma::FaceId(pick % g.face_count());
            let boundary = g.face_walk(f).len();
            if boundary == 0 {
                return None;
            }
            let (h, _, _) = g.stellate_face(f).ok()?;
            assert_eq!(h.vertex_count(), g.vertex_count() + 1);
            assert_eq!(h.face_count(), g.face_count() + boundary - 1);
            Some(h)
        }
        Edit::DeleteEdge => {
            let darts: Vec<DartId> = g.edge_darts().collect();
            if darts.is_empty() {
                return None;
            }
            let e = darts[pick % darts.len()];
            g.delete_element(Deletion::Edge(e)).ok().map(|(h, _)| h)
        }
        Edit::DeleteVertex => {
            let v = coupled_chroma::VertexId(pick % g.vertex_count());
            g.delete_element(Deletion::Vertex(v)).ok().map(|(h, _)| h)
        }
        Edit::Reroot => {
            let f = coupled_chroma::FaceId(pick % g.face_count());
            g.reroot_outer_face(f).ok()
        }
    }
}

fn check_plane_invariants(g: &PlaneGraph) {
    assert!(euler_holds(g), "Euler formula");
    let mut on_face = vec![0usize; g.dart_count()];
    for f in g.face_ids() {
        for &d in g.face_walk(f) {
            on_face[d.0] += 1;
        }
    }
    assert!(on_face.iter().all(|&c| c == 1), "each dart on exactly one face");
    for i in 0..g.dart_count() {
        let d = DartId(i);
        assert_ne!(g.twin(d), d);
        assert_eq!(g.twin(g.twin(d)), d);
    }
    // The dual swaps the counts and is again a valid plane graph.
    let (dual, bij) = g.dual();
    assert!(euler_holds(&dual));
    assert_eq!(dual.vertex_count(), g.face_count());
    assert_eq!(dual.face_count(), g.vertex_count());
    assert_eq!(bij.vertex_to_face.len(), g.vertex_count());
    assert_eq!(bij.face_to_vertex.len(), g.face_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_edit_sequences_preserve_the_embedding_invariants(
        n in 4usize..12,
        edits in proptest::collection::vec(edit_strategy(), 0..8),
    ) {
        let (mut g, _) = build_wheel(n).unwrap();
        check_plane_invariants(&g);
        for (edit, pick) in edits {
            if let Some(next) = apply(&g, edit, pick) {
                g = next;
            }
            check_plane_invariants(&g);
        }
    }

    #[test]
    fn corrupting_a_coloring_is_always_caught(
        n in 5usize..20,
        seed in 0u64..1_000,
        node_pick in 0usize..10_000,
        scramble in proptest::collection::vec((0usize..10_000, 1i32..=15), 0..6),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (w, _) = build_wheel(n).unwrap();
        let x = build_incidence_graph(&w);
        let elements = w.elements();
        let mut l = ListAssignment::new();
        for &e in &elements {
            let mut set = std::collections::BTreeSet::new();
            while set.len() < 5 {
                set.insert(rng.gen_range(1..=15));
            }
            l.insert(e, set);
        }
        let c = coupled_chroma::color_wheel(n, &l).unwrap();
        prop_assert!(verify_coupled_coloring(&x, &l, &c).unwrap().is_valid());

        // Give some node the color of one of its neighbors.
        let mut bad = c.clone();
        let node = node_pick % x.node_count();
        let nb = x.neighbors(node)[0];
        bad.set(x.node(node), bad.get(x.node(nb)).unwrap());
        // Whatever else changes, a violation survives: the clash stays or a
        // list violation precedes it.
        for (pick, color) in scramble {
            let other = pick % x.node_count();
            if other != node && other != nb && !x.has_edge(node, other) && !x.has_edge(nb, other) {
                bad.set(x.node(other), color);
            }
        }
        match verify_coupled_coloring(&x, &l, &bad).unwrap() {
            Verdict::Valid => prop_assert!(false, "corruption must be caught"),
            Verdict::Violation(Violation::SameColor(_, _) | Violation::NotInList(_)) => {}
        }
    }
}
