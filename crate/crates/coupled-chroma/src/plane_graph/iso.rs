//! Isomorphism of plane graphs (rotation-system isomorphism).
//!
//! For connected combinatorial maps the image of a single dart determines the
//! whole correspondence, so the search tries each anchor dart of the target
//! and propagates through `twin` and `next_at_vertex`.

use super::{DartId, PlaneGraph};

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    /// Require the outer faces to correspond.
    pub respect_outer: bool,
    /// Also accept orientation-reversing (mirror) isomorphisms.
    pub allow_reflection: bool,
}

impl IsoOptions {
    pub fn strict() -> Self {
        IsoOptions {
            respect_outer: true,
            allow_reflection: false,
        }
    }

    pub fn ignore_outer() -> Self {
        IsoOptions {
            respect_outer: false,
            allow_reflection: true,
        }
    }
}

/// A witness isomorphism from one plane graph onto another.
#[derive(Clone, Debug)]
pub struct PlaneIso {
    /// Image of each dart of the source graph.
    pub dart_map: Vec<DartId>,
    /// Whether the witness reverses orientation.
    pub reflected: bool,
}

pub fn are_isomorphic(a: &PlaneGraph, b: &PlaneGraph, opts: IsoOptions) -> bool {
    find_isomorphism(a, b, opts).is_some()
}

pub fn find_isomorphism(a: &PlaneGraph, b: &PlaneGraph, opts: IsoOptions) -> Option<PlaneIso> {
    if a.dart_count() != b.dart_count()
        || a.vertex_count() != b.vertex_count()
        || a.face_count() != b.face_count()
        || sorted_degrees(a) != sorted_degrees(b)
        || sorted_face_lengths(a) != sorted_face_lengths(b)
    {
        return None;
    }
    if a.dart_count() == 0 {
        // Single-vertex graphs.
        return Some(PlaneIso {
            dart_map: Vec::new(),
            reflected: false,
        });
    }
    if let Some(dart_map) = oriented_match(a, b, opts.respect_outer) {
        return Some(PlaneIso {
            dart_map,
            reflected: false,
        });
    }
    if opts.allow_reflection {
        let rb = b.reflected();
        if let Some(dart_map) = oriented_match(a, &rb, opts.respect_outer) {
            return Some(PlaneIso {
                dart_map,
                reflected: true,
            });
        }
    }
    None
}

fn oriented_match(a: &PlaneGraph, b: &PlaneGraph, respect_outer: bool) -> Option<Vec<DartId>> {
    let n = a.dart_count();
    for anchor in 0..n {
        let mut map = vec![usize::MAX; n];
        map[0] = anchor;
        let mut stack = vec![0usize];
        let mut ok = true;
        while let Some(d) = stack.pop() {
            let img = DartId(map[d]);
            let pairs = [
                (a.twin(DartId(d)).0, b.twin(img).0),
                (a.next_at_vertex(DartId(d)).0, b.next_at_vertex(img).0),
            ];
            for (src, dst) in pairs {
                if map[src] == usize::MAX {
                    map[src] = dst;
                    stack.push(src);
                } else if map[src] != dst {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if !ok || map.contains(&usize::MAX) {
            continue;
        }
        let mut hit = vec![false; n];
        if map.iter().any(|&m| std::mem::replace(&mut hit[m], true)) {
            continue;
        }
        if respect_outer {
            let d0 = a.face_walk(a.outer_face())[0];
            if b.face_of(DartId(map[d0.0])) != b.outer_face() {
                continue;
            }
        }
        return Some(map.into_iter().map(DartId).collect());
    }
    None
}

fn sorted_degrees(g: &PlaneGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g.vertex_ids().map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

fn sorted_face_lengths(g: &PlaneGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g.face_ids().map(|f| g.face_walk(f).len()).collect();
    d.sort_unstable();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{build_named, build_wheel, NamedGraph};

    #[test]
    fn wheel_is_isomorphic_to_itself_strictly() {
        let (g, _) = build_wheel(6).unwrap();
        assert!(are_isomorphic(&g, &g, IsoOptions::strict()));
    }

    #[test]
    fn wheels_of_different_size_differ() {
        let (a, _) = build_wheel(5).unwrap();
        let (b, _) = build_wheel(6).unwrap();
        assert!(!are_isomorphic(&a, &b, IsoOptions::ignore_outer()));
    }

    #[test]
    fn wheels_are_self_dual() {
        for n in 5..=10 {
            let (g, _) = build_wheel(n).unwrap();
            let (d, _) = g.dual();
            assert!(
                are_isomorphic(&g, &d, IsoOptions::ignore_outer()),
                "W_{n} should be self-dual"
            );
        }
    }

    #[test]
    fn prism_dual_is_stellated_k4_minus_edge() {
        let prism = build_named(NamedGraph::HalinPrism).unwrap();
        let (d, _) = prism.dual();
        // K5 minus an edge: 5 vertices, 9 edges.
        assert_eq!(d.vertex_count(), 5);
        assert_eq!(d.edge_count(), 9);
        // Exactly one non-adjacent vertex pair.
        let mut missing = 0;
        for u in 0..5 {
            for v in (u + 1)..5 {
                if !d.has_edge(super::super::VertexId(u), super::super::VertexId(v)) {
                    missing += 1;
                }
            }
        }
        assert_eq!(missing, 1);
    }

    #[test]
    fn respect_outer_distinguishes_rerooted_graphs() {
        let (g, lab) = build_wheel(5).unwrap();
        let r = g.reroot_outer_face(lab.inner_faces[0]).unwrap();
        assert!(are_isomorphic(&g, &r, IsoOptions::ignore_outer()));
        // An inner triangle cannot play the role of the rim face under a
        // strict isomorphism.
        assert!(!are_isomorphic(&g, &r, IsoOptions::strict()));
    }
}
