//! The constructive 5-list coloring pipeline for wheels and their connected
//! subgraphs.
//!
//! Given size-5 lists on every vertex and face of a wheel `W_n`, a coupled
//! coloring always exists and is found here without search (the exact solver
//! only appears as a guarded fallback and on the tiny `W_4`). The two hub
//! elements `x_0`, `f_0` are colored first:
//!
//! * **Case 1** — their lists share a color `a`. Both take `a`; the
//!   remaining ring graph `X_n` is 4-regular and every list keeps at least
//!   4 colors, so the degree-choosability procedure finishes.
//! * **Case 2** — their lists are disjoint. Of the 25 hub color pairs one
//!   occurs in fewer than `(n-1)/2` of the ring lists; choosing it leaves at
//!   most a quarter of the ring nodes with 3 colors, so four consecutive
//!   nodes with 4 colors exist. After rotating the cyclic enumeration to
//!   such a window, three ring nodes are colored by hand and the rest is an
//!   outerplanar strip swept from a fixed end.
//!
//! Connected subgraphs of wheels are classified into the full wheel, an
//! outerplanar remainder, the bare rim cycle, or a subdivision of a smaller
//! wheel / triple edge, and colored accordingly.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::incidence::{
    build_incidence_graph, build_xn, verify_coupled_coloring, Color, CoupledColoring,
    IncidenceError, IncidenceGraph, ListAssignment, NodeId, Verdict,
};
use crate::plane_graph::{
    build_named, build_wheel, ElementRef, FaceId, GraphError, NamedGraph, PlaneGraph,
    VertexId, WheelLabeling,
};
use crate::solver::{color_strip, degree_choosable_color, exact_color, SolveStatus, SolverError};

#[derive(Debug, Error)]
pub enum WheelError {
    #[error("list of {0} has fewer than 5 colors")]
    ListTooShort(ElementRef),
    #[error("list assignment is missing element {0}")]
    MissingList(ElementRef),
    #[error("hub lists must be disjoint to choose a hub pair")]
    NonDisjointHubLists,
    #[error("hub lists must have exactly 5 colors, got {0} and {1}")]
    HubListSize(usize, usize),
    #[error("not a subdivision: {0}")]
    NotASubdivision(String),
    #[error("base coloring is invalid: {0}")]
    BaseColoringInvalid(String),
    #[error("not a subgraph of the host wheel: {0}")]
    NotASubgraphOfWheel(String),
    #[error("classification does not match the graph: {0}")]
    CaseMismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// The hub color pair chosen in Case 2, with the counting evidence.
#[derive(Clone, Debug, Serialize)]
pub struct HubPairChoice {
    /// Color for `x_0`.
    pub a_prime: Color,
    /// Color for `f_0`.
    pub b_prime: Color,
    /// Number of ring nodes whose list contains both chosen colors.
    pub occurrence_count: usize,
    /// Exactly those nodes; they are the ones left with 3 colors.
    pub three_vertices: Vec<ElementRef>,
}

/// One color decision in the pipeline, for the trace.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub element: ElementRef,
    pub color: Color,
    pub rule: &'static str,
}

/// Machine-readable record of how a coloring was produced.
#[derive(Clone, Debug, Default, Serialize)]
pub struct WheelTrace {
    pub case: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hub_pair: Option<HubPairChoice>,
    /// Rotation applied to the cyclic enumeration in Case 2 (the sigma
    /// position that becomes position 0).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<usize>,
    /// Remaining list lengths at the five pinch points `f_1`, `f_2`, `x_2`,
    /// `x_{n-2}`, `f_{n-2}` after the hand-colored nodes (Case 2 only);
    /// guaranteed lower bounds are 2, 3, 3, 1, 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_list_lengths: Option<[usize; 5]>,
    pub steps: Vec<TraceStep>,
}

/// Color the wheel `W_n` from lists of size at least 5 on every vertex and
/// face (keyed by the elements of [`build_wheel`]`(n)`). Lists longer than 5
/// are truncated to their 5 smallest colors first; any coloring found for
/// the truncated lists is valid for the originals.
pub fn color_wheel(n: usize, l: &ListAssignment) -> Result<CoupledColoring, WheelError> {
    color_wheel_traced(n, l).map(|(c, _)| c)
}

/// Like [`color_wheel`], also returning the decision trace.
pub fn color_wheel_traced(
    n: usize,
    l: &ListAssignment,
) -> Result<(CoupledColoring, WheelTrace), WheelError> {
    let (w, lab) = build_wheel(n)?;
    color_labeled_wheel(&w, &lab, l)
}

/// The worker behind [`color_wheel`]: colors any concrete wheel graph with
/// its labeling. Also used for the wheel bases of subdivided subgraphs.
pub fn color_labeled_wheel(
    w: &PlaneGraph,
    lab: &WheelLabeling,
    l: &ListAssignment,
) -> Result<(CoupledColoring, WheelTrace), WheelError> {
    let elements = w.elements();
    check_lists(&elements, l)?;
    let l5 = if l.iter().any(|(_, s)| s.len() > 5) {
        std::borrow::Cow::Owned(l.truncated(5))
    } else {
        std::borrow::Cow::Borrowed(l)
    };
    let l5 = l5.as_ref();
    let n = lab.n();

    if n == 4 {
        // W_4 = K_4: the eight-element incidence graph is searched directly.
        let x = build_incidence_graph(w);
        let out = exact_color(&x, l5, None)?;
        let coloring = match out.status {
            SolveStatus::Colored(c) => c,
            _ => unreachable!("X(K4) is 4-list-colorable, 5 colors always suffice"),
        };
        let steps = trace_all(&coloring, "k4-exhaustive");
        return Ok((
            coloring,
            WheelTrace {
                case: "k4-exhaustive",
                steps,
                ..WheelTrace::default()
            },
        ));
    }

    let hub = ElementRef::Vertex(lab.hub);
    let outer = ElementRef::Face(lab.outer);
    let hub_list = l5.get(hub).unwrap().clone();
    let outer_list = l5.get(outer).unwrap().clone();
    let xn = build_xn(w, lab)?;

    if let Some(&a) = hub_list.intersection(&outer_list).next() {
        // Case 1: a shared hub color. Every ring list keeps >= 4 colors and
        // X_n has maximum degree 4, is even and not complete.
        let mut ring_lists = ListAssignment::new();
        for id in 0..xn.node_count() {
            let e = xn.node(id);
            let list = l5.get(e).unwrap();
            ring_lists.insert(e, list.iter().copied().filter(|&c| c != a));
        }
        let out = degree_choosable_color(&xn, &ring_lists)?;
        let mut coloring = match out.status {
            SolveStatus::Colored(c) => c,
            _ => unreachable!("degree_choosable_color returns an error or a coloring"),
        };
        coloring.set(hub, a);
        coloring.set(outer, a);
        let mut steps = vec![
            TraceStep { element: hub, color: a, rule: "hub-common-color" },
            TraceStep { element: outer, color: a, rule: "hub-common-color" },
        ];
        steps.extend(trace_all(&coloring, "degree-choosable").into_iter().filter(
            |s| s.element != hub && s.element != outer,
        ));
        return Ok((
            coloring,
            WheelTrace {
                case: "case1-shared-hub-color",
                steps,
                ..WheelTrace::default()
            },
        ));
    }

    // Case 2: disjoint hub lists.
    let choice = choose_hub_pair(&xn, l5, &hub_list, &outer_list)?;
    let m = xn.node_count(); // 2n - 2
    assert!(
        2 * choice.occurrence_count < n - 1,
        "chosen hub pair occurs {} times, bound is (n-1)/2 with n = {n}",
        choice.occurrence_count
    );

    // L': ring lists with the hub pair removed. 3-vertices keep 3 colors.
    let reduced: Vec<BTreeSet<Color>> = (0..m)
        .map(|id| {
            l5.get(xn.node(id))
                .unwrap()
                .iter()
                .copied()
                .filter(|&c| c != choice.a_prime && c != choice.b_prime)
                .collect()
        })
        .collect();
    assert!(
        4 * choice.three_vertices.len() < 2 * n - 2,
        "more than a quarter of the ring nodes kept only 3 colors"
    );

    // Four consecutive positions with >= 4 remaining colors exist; take the
    // first window in sigma order. Node ids equal sigma positions here.
    let is4 = |t: usize| reduced[t % m].len() >= 4;
    let window = (0..m)
        .find(|&s| (0..4).all(|k| is4(s + k)))
        .expect("fewer than a quarter 3-vertices leaves a window of four 4-vertices");
    let rho = |t: usize| -> NodeId { (window + t) % m };

    // Renamed positions after rotation: position 0 plays f_1, 1 plays x_1,
    // position m-2 plays f_{n-1}, m-1 plays x_{n-1}, and so on.
    let p_f1 = rho(0);
    let p_x1 = rho(1);
    let p_f2 = rho(2);
    let p_x2 = rho(3);
    let p_fn2 = rho(m - 4);
    let p_xn2 = rho(m - 3);
    let p_fn1 = rho(m - 2);
    let p_xn1 = rho(m - 1);

    let f1_full = l5.get(xn.node(p_f1)).unwrap();

    // Color f_{n-1} and x_1: with a shared color when possible, otherwise so
    // that at most one of the two colors lies in f_1's list.
    let (p_color, q_color, pq_rule) =
        match reduced[p_fn1].intersection(&reduced[p_x1]).next() {
            Some(&c) => (c, c, "tail-pair-shared"),
            None => {
                if let Some(&p) = reduced[p_fn1].iter().find(|c| !f1_full.contains(c)) {
                    (p, *reduced[p_x1].iter().next().unwrap(), "tail-pair-avoid-f1")
                } else {
                    let q = *reduced[p_x1]
                        .iter()
                        .find(|c| !f1_full.contains(c))
                        .expect("the union of the two lists has more than 5 colors");
                    (*reduced[p_fn1].iter().next().unwrap(), q, "tail-pair-avoid-f1")
                }
            }
        };
    // x_{n-1} is adjacent to both; its 3 remaining colors leave room.
    let r_color = *reduced[p_xn1]
        .iter()
        .find(|&&c| c != p_color && c != q_color)
        .expect("x_{n-1} keeps a color after its two colored neighbors");

    // L'': remove the three placed colors from their uncolored neighbors.
    let mut l2 = reduced.clone();
    for (node, color) in [(p_fn1, p_color), (p_x1, q_color), (p_xn1, r_color)] {
        for &nb in xn.neighbors(node) {
            if nb != p_fn1 && nb != p_x1 && nb != p_xn1 {
                l2[nb].remove(&color);
            }
        }
    }

    let bounds = [
        (p_f1, 2usize),
        (p_f2, 3),
        (p_x2, 3),
        (p_xn2, 1),
        (p_fn2, 2),
    ];
    for (node, lower) in bounds {
        assert!(
            l2[node].len() >= lower,
            "node {} kept {} colors, proof guarantees {lower}",
            xn.node(node),
            l2[node].len()
        );
    }
    // Interior strip nodes keep at least 3 colors.
    for t in 4..=(m - 5) {
        debug_assert!(l2[rho(t)].len() >= 3);
    }
    let reduced_list_lengths = Some([
        l2[p_f1].len(),
        l2[p_f2].len(),
        l2[p_x2].len(),
        l2[p_xn2].len(),
        l2[p_fn2].len(),
    ]);

    // Fix the far end of the strip: x_{n-2}, then f_{n-2} avoiding it.
    let xn2_color = *l2[p_xn2].iter().next().unwrap();
    let fn2_color = *l2[p_fn2]
        .iter()
        .find(|&&c| c != xn2_color)
        .expect("f_{n-2} keeps 2 colors");

    // The strip X'_n: positions 2 .. m-3 in rotated order.
    let strip_positions: Vec<NodeId> = (2..=(m - 3)).map(rho).collect();
    let pos_in_strip: BTreeMap<NodeId, usize> = strip_positions
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i))
        .collect();
    let strip_nodes: Vec<ElementRef> =
        strip_positions.iter().map(|&id| xn.node(id)).collect();
    let mut strip_edges = Vec::new();
    for (i, &id) in strip_positions.iter().enumerate() {
        for &nb in xn.neighbors(id) {
            if let Some(&j) = pos_in_strip.get(&nb) {
                if i < j {
                    strip_edges.push((i, j));
                }
            }
        }
    }
    let strip = IncidenceGraph::from_parts(
        strip_nodes,
        strip_edges,
        Some((0..strip_positions.len()).collect()),
    );
    let mut strip_lists = ListAssignment::new();
    for &id in &strip_positions {
        strip_lists.insert(xn.node(id), l2[id].iter().copied());
    }
    let fixed = [
        (xn.node(p_xn2), xn2_color),
        (xn.node(p_fn2), fn2_color),
    ];
    let out = color_strip(&strip, &strip_lists, fixed)?;
    let strip_coloring = match out.status {
        SolveStatus::Colored(c) => c,
        _ => unreachable!("color_strip returns an error or a coloring"),
    };

    // Finally f_1: one uncolored neighbor remains (f_2).
    let f2_color = strip_coloring.get(xn.node(p_f2)).unwrap();
    let f1_color = *l2[p_f1]
        .iter()
        .find(|&&c| c != f2_color)
        .expect("f_1 keeps 2 colors and has one remaining neighbor");

    let mut coloring = CoupledColoring::new();
    coloring.set(hub, choice.a_prime);
    coloring.set(outer, choice.b_prime);
    coloring.set(xn.node(p_fn1), p_color);
    coloring.set(xn.node(p_x1), q_color);
    coloring.set(xn.node(p_xn1), r_color);
    for (&e, &c) in strip_coloring.iter() {
        coloring.set(e, c);
    }
    coloring.set(xn.node(p_f1), f1_color);

    let mut steps = vec![
        TraceStep { element: hub, color: choice.a_prime, rule: "hub-pair" },
        TraceStep { element: outer, color: choice.b_prime, rule: "hub-pair" },
        TraceStep { element: xn.node(p_fn1), color: p_color, rule: pq_rule },
        TraceStep { element: xn.node(p_x1), color: q_color, rule: pq_rule },
        TraceStep { element: xn.node(p_xn1), color: r_color, rule: "tail-third" },
        TraceStep { element: xn.node(p_xn2), color: xn2_color, rule: "strip-anchor" },
        TraceStep { element: xn.node(p_fn2), color: fn2_color, rule: "strip-anchor" },
    ];
    for &id in strip_positions.iter().rev().skip(2) {
        let e = xn.node(id);
        steps.push(TraceStep { element: e, color: strip_coloring.get(e).unwrap(), rule: "strip-sweep" });
    }
    steps.push(TraceStep { element: xn.node(p_f1), color: f1_color, rule: "close-f1" });

    Ok((
        coloring,
        WheelTrace {
            case: "case2-disjoint-hub-lists",
            hub_pair: Some(choice),
            rotation: Some(window),
            reduced_list_lengths,
            steps,
        },
    ))
}

/// Pick colors `a'` in `L(x_0)` and `b'` in `L(f_0)` minimizing the number of
/// ring lists containing both (ties: lexicographically smallest pair). Both
/// hub lists must have exactly 5 colors and be disjoint; the minimizing pair
/// then occurs fewer than `(n-1)/2` times.
pub fn choose_hub_pair(
    xn: &IncidenceGraph,
    l: &ListAssignment,
    hub_list: &BTreeSet<Color>,
    outer_list: &BTreeSet<Color>,
) -> Result<HubPairChoice, WheelError> {
    if hub_list.len() != 5 || outer_list.len() != 5 {
        return Err(WheelError::HubListSize(hub_list.len(), outer_list.len()));
    }
    if hub_list.intersection(outer_list).next().is_some() {
        return Err(WheelError::NonDisjointHubLists);
    }
    let a_colors: Vec<Color> = hub_list.iter().copied().collect();
    let b_colors: Vec<Color> = outer_list.iter().copied().collect();
    let mut counts = [[0usize; 5]; 5];
    for id in 0..xn.node_count() {
        let e = xn.node(id);
        let list = l.get(e).ok_or(WheelError::MissingList(e))?;
        let in_a: Vec<usize> = (0..5).filter(|&i| list.contains(&a_colors[i])).collect();
        let in_b: Vec<usize> = (0..5).filter(|&j| list.contains(&b_colors[j])).collect();
        debug_assert!(in_a.len() * in_b.len() <= 6, "|L1| * |L2| <= 6 for 5-lists");
        for &i in &in_a {
            for &j in &in_b {
                counts[i][j] += 1;
            }
        }
    }
    let (mut bi, mut bj) = (0, 0);
    for i in 0..5 {
        for j in 0..5 {
            if counts[i][j] < counts[bi][bj] {
                (bi, bj) = (i, j);
            }
        }
    }
    let (a_prime, b_prime) = (a_colors[bi], b_colors[bj]);
    let three_vertices: Vec<ElementRef> = (0..xn.node_count())
        .filter(|&id| {
            let list = l.get(xn.node(id)).unwrap();
            list.contains(&a_prime) && list.contains(&b_prime)
        })
        .map(|id| xn.node(id))
        .collect();
    debug_assert_eq!(three_vertices.len(), counts[bi][bj]);
    Ok(HubPairChoice {
        a_prime,
        b_prime,
        occurrence_count: counts[bi][bj],
        three_vertices,
    })
}

/// How the elements of a base graph reappear in a subdivision of it.
/// Vertices of the subdivision that are not in the image are the subdivision
/// vertices; they must all have degree 2.
#[derive(Clone, Debug, Default)]
pub struct SubdivisionMap {
    /// Base vertex -> subdivision vertex.
    pub vertices: BTreeMap<VertexId, VertexId>,
    /// Base face -> subdivision face (a bijection).
    pub faces: BTreeMap<FaceId, FaceId>,
}

/// Extend a valid coupled coloring of `base` to its subdivision `h`: mapped
/// elements keep their colors and each subdivision vertex takes any color
/// left by its at most four constraints (two path neighbors, two incident
/// faces) — lists of size 5 always leave one.
pub fn extend_subdivision_coloring(
    h: &PlaneGraph,
    base: &PlaneGraph,
    map: &SubdivisionMap,
    base_coloring: &CoupledColoring,
    l: &ListAssignment,
) -> Result<CoupledColoring, WheelError> {
    check_lists(&h.elements(), l)?;
    validate_subdivision(h, base, map)?;

    // The base coloring must be valid for the pulled-back lists.
    let base_lists: ListAssignment = map
        .vertices
        .iter()
        .map(|(&bv, &hv)| (ElementRef::Vertex(bv), ElementRef::Vertex(hv)))
        .chain(
            map.faces
                .iter()
                .map(|(&bf, &hf)| (ElementRef::Face(bf), ElementRef::Face(hf))),
        )
        .map(|(be, he)| (be, l.get(he).unwrap().clone()))
        .collect();
    let xb = build_incidence_graph(base);
    match verify_coupled_coloring(&xb, &base_lists, base_coloring) {
        Ok(Verdict::Valid) => {}
        Ok(Verdict::Violation(v)) => {
            return Err(WheelError::BaseColoringInvalid(v.to_string()))
        }
        Err(e) => return Err(WheelError::BaseColoringInvalid(e.to_string())),
    }

    let xh = build_incidence_graph(h);
    let mut coloring = CoupledColoring::new();
    for (&bv, &hv) in &map.vertices {
        coloring.set(ElementRef::Vertex(hv), base_coloring.get(ElementRef::Vertex(bv)).unwrap());
    }
    for (&bf, &hf) in &map.faces {
        coloring.set(ElementRef::Face(hf), base_coloring.get(ElementRef::Face(bf)).unwrap());
    }
    let mapped: BTreeSet<VertexId> = map.vertices.values().copied().collect();
    for v in h.vertex_ids() {
        if mapped.contains(&v) {
            continue;
        }
        let e = ElementRef::Vertex(v);
        let node = xh.node_id(e).unwrap();
        let color = l
            .get(e)
            .unwrap()
            .iter()
            .copied()
            .find(|&c| {
                xh.neighbors(node)
                    .iter()
                    .all(|&nb| coloring.get(xh.node(nb)) != Some(c))
            })
            .expect("a subdivision vertex has at most 4 constraints and 5 colors");
        coloring.set(e, color);
    }
    debug_assert!(matches!(
        verify_coupled_coloring(&xh, l, &coloring),
        Ok(Verdict::Valid)
    ));
    Ok(coloring)
}

fn validate_subdivision(
    h: &PlaneGraph,
    base: &PlaneGraph,
    map: &SubdivisionMap,
) -> Result<(), WheelError> {
    let bad = |msg: String| Err(WheelError::NotASubdivision(msg));
    if map.vertices.len() != base.vertex_count() {
        return bad(format!(
            "vertex map covers {} of {} base vertices",
            map.vertices.len(),
            base.vertex_count()
        ));
    }
    let mut image = BTreeSet::new();
    for (&bv, &hv) in &map.vertices {
        if bv.0 >= base.vertex_count() || hv.0 >= h.vertex_count() {
            return bad(format!("vertex map entry {bv} -> {hv} out of range"));
        }
        if !image.insert(hv) {
            return bad(format!("vertex map is not injective at {hv}"));
        }
    }
    for v in h.vertex_ids() {
        if !image.contains(&v) && h.degree(v) != 2 {
            return bad(format!("unmapped vertex {v} has degree {}", h.degree(v)));
        }
    }
    let extra = h.vertex_count() - base.vertex_count();
    if h.edge_count() != base.edge_count() + extra {
        return bad(format!(
            "edge count {} does not match base {} plus {} subdivision vertices",
            h.edge_count(),
            base.edge_count(),
            extra
        ));
    }
    if map.faces.len() != base.face_count() || h.face_count() != base.face_count() {
        return bad("faces do not correspond one-to-one".into());
    }
    let mut face_image = BTreeSet::new();
    for (&bf, &hf) in &map.faces {
        if bf.0 >= base.face_count() || hf.0 >= h.face_count() || !face_image.insert(hf) {
            return bad(format!("face map entry {bf} -> {hf} invalid"));
        }
        // The boundary of hf, restricted to mapped vertices and translated
        // back, must be the boundary of bf up to rotation.
        let base_walk: Vec<VertexId> = base.face_vertices(bf).collect();
        let back: BTreeMap<VertexId, VertexId> =
            map.vertices.iter().map(|(&b, &h)| (h, b)).collect();
        let mapped_walk: Vec<VertexId> = h
            .face_vertices(hf)
            .filter_map(|v| back.get(&v).copied())
            .collect();
        if !cyclic_eq(&base_walk, &mapped_walk) {
            return bad(format!(
                "boundary of {hf} does not collapse to the boundary of {bf}"
            ));
        }
    }
    Ok(())
}

fn cyclic_eq(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| (0..a.len()).all(|i| a[i] == b[(i + k) % b.len()]))
}

/// A wheel `W_n` together with its labeling, used as the host for subgraph
/// classification.
#[derive(Clone, Debug)]
pub struct WheelHost {
    pub graph: PlaneGraph,
    pub labeling: WheelLabeling,
}

impl WheelHost {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        let (graph, labeling) = build_wheel(n)?;
        Ok(WheelHost { graph, labeling })
    }

    pub fn n(&self) -> usize {
        self.labeling.n()
    }
}

/// How a subgraph sits inside its host wheel: `vertex_to_host[v]` is the
/// host vertex that subgraph vertex `v` came from.
#[derive(Clone, Debug)]
pub struct WheelEmbedding {
    pub vertex_to_host: Vec<VertexId>,
}

/// The four mutually exclusive shapes a connected subgraph of a wheel can
/// take, with the data each coloring route needs.
#[derive(Clone, Debug)]
pub enum SubgraphCase {
    /// The whole wheel, relabeled on the subgraph's own ids.
    FullWheel { labeling: WheelLabeling },
    /// Something on the outer cycle (or all but at most one spoke) is gone;
    /// the graph is outerplanar and the exact solver stands in for the
    /// published outerplanar bound.
    OuterplanarDeletion,
    /// Exactly the hub was removed: the rim cycle with its two faces.
    HubDeleted {
        faces: (FaceId, FaceId),
        cycle: Vec<VertexId>,
    },
    /// All rim vertices and edges present, `2 <= spokes < n-1`: a subdivision
    /// of a triple edge (two spokes) or of a smaller wheel.
    SpokeCase {
        spokes_remaining: usize,
        base: PlaneGraph,
        base_labeling: Option<WheelLabeling>,
        map: SubdivisionMap,
    },
}

impl SubgraphCase {
    pub fn name(&self) -> &'static str {
        match self {
            SubgraphCase::FullWheel { .. } => "full-wheel",
            SubgraphCase::OuterplanarDeletion => "outerplanar-deletion",
            SubgraphCase::HubDeleted { .. } => "hub-deleted",
            SubgraphCase::SpokeCase { .. } => "spoke-subdivision",
        }
    }
}

/// Classify a connected subgraph of the host wheel, given with its inherited
/// embedding. Exactly one case accepts any valid input.
pub fn classify_wheel_subgraph(
    g: &PlaneGraph,
    host: &WheelHost,
    emb: &WheelEmbedding,
) -> Result<SubgraphCase, WheelError> {
    let n = host.n();
    let r = n - 1;
    validate_embedding(g, host, emb)?;

    let mut host_to_g: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (gv, &hv) in emb.vertex_to_host.iter().enumerate() {
        host_to_g.insert(hv, VertexId(gv));
    }
    let hub_g = host_to_g.get(&host.labeling.hub).copied();

    // Which host rim edges and spokes survive in g.
    let g_edges: BTreeSet<(VertexId, VertexId)> = g
        .edge_darts()
        .map(|d| {
            let (u, v) = g.edge_endpoints(d);
            let (hu, hv) = (emb.vertex_to_host[u.0], emb.vertex_to_host[v.0]);
            (hu.min(hv), hu.max(hv))
        })
        .collect();
    let host_edge = |a: VertexId, b: VertexId| (a.min(b), a.max(b));
    let rim = &host.labeling.rim;
    let all_rim_vertices = rim.iter().all(|x| host_to_g.contains_key(x));
    let all_rim_edges = (0..r).all(|i| {
        g_edges.contains(&host_edge(rim[i], rim[(i + 1) % r]))
    });
    let spokes: Vec<usize> = (0..r)
        .filter(|&i| g_edges.contains(&host_edge(host.labeling.hub, rim[i])))
        .collect();

    if hub_g.is_some()
        && all_rim_vertices
        && all_rim_edges
        && g.vertex_count() == n
        && g.edge_count() == host.graph.edge_count()
    {
        return Ok(SubgraphCase::FullWheel {
            labeling: derive_labeling(g, host, &host_to_g)?,
        });
    }
    if hub_g.is_none() && all_rim_vertices && all_rim_edges && g.edge_count() == r {
        if g.face_count() != 2 {
            return Err(WheelError::CaseMismatch(
                "rim cycle should have exactly two faces".into(),
            ));
        }
        let cycle = rim.iter().map(|x| host_to_g[x]).collect();
        return Ok(SubgraphCase::HubDeleted {
            faces: (FaceId(0), FaceId(1)),
            cycle,
        });
    }
    if !all_rim_vertices || !all_rim_edges {
        return Ok(SubgraphCase::OuterplanarDeletion);
    }
    // All rim vertices and rim edges present, hub present, spokes partial.
    if spokes.len() <= 1 {
        return Ok(SubgraphCase::OuterplanarDeletion);
    }
    let hub_g = hub_g.expect("hub present in the spoke case");
    let spoke_endpoints_g: Vec<VertexId> = spokes.iter().map(|&i| host_to_g[&rim[i]]).collect();

    if spokes.len() == 2 {
        // Subdivision of a triple edge: the three parallel paths are the two
        // rim arcs and the path through the hub.
        let base = build_named(NamedGraph::TripleEdge)?;
        let mut map = SubdivisionMap::default();
        map.vertices.insert(VertexId(0), spoke_endpoints_g[0]);
        map.vertices.insert(VertexId(1), spoke_endpoints_g[1]);
        for (bf, gf) in base.face_ids().zip(g.face_ids()) {
            map.faces.insert(bf, gf);
        }
        return Ok(SubgraphCase::SpokeCase {
            spokes_remaining: 2,
            base,
            base_labeling: None,
            map,
        });
    }

    // Subdivision of W_{s+1}: spoke endpoints become the base rim in host
    // order; spokeless rim stretches become subdivided base rim edges.
    let s = spokes.len();
    let (base, base_lab) = build_wheel(s + 1)?;
    let mut map = SubdivisionMap::default();
    map.vertices.insert(base_lab.hub, hub_g);
    for (j, &gv) in spoke_endpoints_g.iter().enumerate() {
        map.vertices.insert(base_lab.rim[j], gv);
    }
    // g's inner faces, identified by the pair of spokes on their boundary.
    let mut sector_of: BTreeMap<(VertexId, VertexId), FaceId> = BTreeMap::new();
    let mut rim_face = None;
    for f in g.face_ids() {
        let mut spoke_ends = BTreeSet::new();
        for &d in g.face_walk(f) {
            let (u, v) = g.edge_endpoints(d);
            if u == hub_g {
                spoke_ends.insert(v);
            } else if v == hub_g {
                spoke_ends.insert(u);
            }
        }
        match spoke_ends.len() {
            0 => rim_face = Some(f),
            2 => {
                let mut it = spoke_ends.into_iter();
                let a = it.next().unwrap();
                let b = it.next().unwrap();
                sector_of.insert((a.min(b), a.max(b)), f);
            }
            k => {
                return Err(WheelError::CaseMismatch(format!(
                    "face {f} touches {k} spokes"
                )))
            }
        }
    }
    let rim_face = rim_face.ok_or_else(|| {
        WheelError::CaseMismatch("no spoke-free face found in the spoke case".into())
    })?;
    map.faces.insert(base_lab.outer, rim_face);
    for j in 1..=s {
        let a = spoke_endpoints_g[(j + s - 2) % s];
        let b = spoke_endpoints_g[j - 1];
        let f = sector_of
            .get(&(a.min(b), a.max(b)))
            .copied()
            .ok_or_else(|| {
                WheelError::CaseMismatch(format!(
                    "no sector face between spokes {a} and {b}"
                ))
            })?;
        map.faces.insert(base_lab.inner_faces[j - 1], f);
    }
    Ok(SubgraphCase::SpokeCase {
        spokes_remaining: s,
        base,
        base_labeling: Some(base_lab),
        map,
    })
}

fn validate_embedding(
    g: &PlaneGraph,
    host: &WheelHost,
    emb: &WheelEmbedding,
) -> Result<(), WheelError> {
    let bad = |msg: String| Err(WheelError::NotASubgraphOfWheel(msg));
    if emb.vertex_to_host.len() != g.vertex_count() {
        return bad(format!(
            "embedding maps {} vertices, graph has {}",
            emb.vertex_to_host.len(),
            g.vertex_count()
        ));
    }
    let mut seen = BTreeSet::new();
    for &hv in &emb.vertex_to_host {
        if hv.0 >= host.n() {
            return bad(format!("host vertex {hv} out of range"));
        }
        if !seen.insert(hv) {
            return bad(format!("two subgraph vertices map to host vertex {hv}"));
        }
    }
    let mut used = BTreeSet::new();
    for d in g.edge_darts() {
        let (u, v) = g.edge_endpoints(d);
        if u == v {
            return bad("subgraphs of a wheel have no loops".into());
        }
        let (hu, hv) = (emb.vertex_to_host[u.0], emb.vertex_to_host[v.0]);
        if !host.graph.has_edge(hu, hv) {
            return bad(format!("edge {hu} -- {hv} does not exist in the host"));
        }
        if !used.insert((hu.min(hv), hu.max(hv))) {
            return bad(format!("edge {hu} -- {hv} is used twice"));
        }
    }
    // Rotations must be inherited: each vertex's neighbor cycle must appear
    // in host cyclic order.
    for v in g.vertex_ids() {
        let hv = emb.vertex_to_host[v.0];
        let host_cycle: Vec<VertexId> = host.graph.neighbors(hv);
        let g_cycle: Vec<VertexId> = g
            .neighbors(v)
            .into_iter()
            .map(|u| emb.vertex_to_host[u.0])
            .collect();
        if g_cycle.len() <= 2 {
            continue; // any order of two darts is cyclically consistent
        }
        let pos: Vec<usize> = g_cycle
            .iter()
            .map(|x| host_cycle.iter().position(|y| y == x).unwrap())
            .collect();
        let descents = (0..pos.len())
            .filter(|&i| pos[i] > pos[(i + 1) % pos.len()])
            .count();
        if descents != 1 {
            return bad(format!("rotation at {v} is not inherited from the host"));
        }
    }
    Ok(())
}

/// For a subgraph that is the whole wheel, rebuild the labeling on the
/// subgraph's own vertex and face ids.
fn derive_labeling(
    g: &PlaneGraph,
    host: &WheelHost,
    host_to_g: &BTreeMap<VertexId, VertexId>,
) -> Result<WheelLabeling, WheelError> {
    let r = host.n() - 1;
    let hub = host_to_g[&host.labeling.hub];
    let rim: Vec<VertexId> = host.labeling.rim.iter().map(|x| host_to_g[x]).collect();
    let face_sets: Vec<BTreeSet<VertexId>> = g
        .face_ids()
        .map(|f| g.face_vertices(f).collect())
        .collect();
    let find_face = |want: BTreeSet<VertexId>| -> Result<FaceId, WheelError> {
        let hits: Vec<FaceId> = face_sets
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == want)
            .map(|(i, _)| FaceId(i))
            .collect();
        match hits.as_slice() {
            [f] => Ok(*f),
            _ => Err(WheelError::CaseMismatch(
                "wheel faces are not uniquely determined by their vertex sets".into(),
            )),
        }
    };
    let outer = find_face(rim.iter().copied().collect())?;
    let mut inner_faces = Vec::with_capacity(r);
    for i in 1..=r {
        let prev = rim[(i + r - 2) % r];
        let here = rim[i - 1];
        inner_faces.push(find_face([hub, prev, here].into_iter().collect())?);
    }
    Ok(WheelLabeling {
        hub,
        outer,
        rim,
        inner_faces,
    })
}

/// Color a connected subgraph of a wheel from size-5 lists, routing through
/// the classified case.
pub fn color_wheel_subgraph(
    g: &PlaneGraph,
    case: &SubgraphCase,
    l: &ListAssignment,
) -> Result<CoupledColoring, WheelError> {
    color_wheel_subgraph_traced(g, case, l).map(|(c, _)| c)
}

pub fn color_wheel_subgraph_traced(
    g: &PlaneGraph,
    case: &SubgraphCase,
    l: &ListAssignment,
) -> Result<(CoupledColoring, WheelTrace), WheelError> {
    check_lists(&g.elements(), l)?;
    let l5 = l.truncated(5);
    match case {
        SubgraphCase::FullWheel { labeling } => color_labeled_wheel(g, labeling, &l5),
        SubgraphCase::OuterplanarDeletion => {
            let x = build_incidence_graph(g);
            let out = exact_color(&x, &l5, None)?;
            match out.status {
                SolveStatus::Colored(coloring) => {
                    let steps = trace_all(&coloring, "outerplanar-exact");
                    Ok((
                        coloring,
                        WheelTrace {
                            case: "outerplanar-exact",
                            steps,
                            ..WheelTrace::default()
                        },
                    ))
                }
                _ => Err(WheelError::CaseMismatch(
                    "outerplanar subgraph was not 5-list-colorable; wrong classification".into(),
                )),
            }
        }
        SubgraphCase::HubDeleted { faces, cycle } => {
            let (fa, fb) = (ElementRef::Face(faces.0), ElementRef::Face(faces.1));
            let ca = *l5.get(fa).ok_or(WheelError::MissingList(fa))?.iter().next().unwrap();
            let cb = *l5
                .get(fb)
                .ok_or(WheelError::MissingList(fb))?
                .iter()
                .find(|&&c| c != ca)
                .expect("face lists have 5 colors");
            let cycle_lists: Vec<BTreeSet<Color>> = cycle
                .iter()
                .map(|&v| {
                    l5.get(ElementRef::Vertex(v))
                        .unwrap()
                        .iter()
                        .copied()
                        .filter(|&c| c != ca && c != cb)
                        .collect()
                })
                .collect();
            let colors = color_cycle(&cycle_lists);
            let mut coloring = CoupledColoring::new();
            coloring.set(fa, ca);
            coloring.set(fb, cb);
            let mut steps = vec![
                TraceStep { element: fa, color: ca, rule: "face-pair" },
                TraceStep { element: fb, color: cb, rule: "face-pair" },
            ];
            for (&v, &c) in cycle.iter().zip(colors.iter()) {
                coloring.set(ElementRef::Vertex(v), c);
                steps.push(TraceStep { element: ElementRef::Vertex(v), color: c, rule: "cycle-3-choosable" });
            }
            debug_assert!(coloring_is_valid(g, &l5, &coloring));
            Ok((
                coloring,
                WheelTrace {
                    case: "hub-deleted-cycle",
                    steps,
                    ..WheelTrace::default()
                },
            ))
        }
        SubgraphCase::SpokeCase {
            base,
            base_labeling,
            map,
            ..
        } => {
            let base_lists: ListAssignment = map
                .vertices
                .iter()
                .map(|(&bv, &hv)| (ElementRef::Vertex(bv), ElementRef::Vertex(hv)))
                .chain(
                    map.faces
                        .iter()
                        .map(|(&bf, &hf)| (ElementRef::Face(bf), ElementRef::Face(hf))),
                )
                .map(|(be, he)| {
                    l5.get(he)
                        .cloned()
                        .map(|list| (be, list))
                        .ok_or(WheelError::MissingList(he))
                })
                .collect::<Result<_, _>>()?;
            let (base_coloring, mut trace) = match base_labeling {
                Some(lab) => color_labeled_wheel(base, lab, &base_lists)?,
                None => {
                    // Triple edge: five pairwise-constrained elements,
                    // searched exhaustively.
                    let xb = build_incidence_graph(base);
                    let out = exact_color(&xb, &base_lists, None)?;
                    match out.status {
                        SolveStatus::Colored(c) => {
                            let steps = trace_all(&c, "triple-edge-exhaustive");
                            (
                                c,
                                WheelTrace {
                                    case: "triple-edge-exhaustive",
                                    steps,
                                    ..WheelTrace::default()
                                },
                            )
                        }
                        _ => unreachable!("K5 is 5-list-colorable"),
                    }
                }
            };
            let coloring = extend_subdivision_coloring(g, base, map, &base_coloring, &l5)?;
            trace.case = "spoke-subdivision";
            for (&e, &c) in coloring.iter() {
                if trace.steps.iter().all(|s| s.element != e) {
                    trace.steps.push(TraceStep { element: e, color: c, rule: "subdivision-greedy" });
                }
            }
            Ok((coloring, trace))
        }
    }
}

/// Color a cycle whose lists (given in cycle order) all have at least 3
/// colors.
fn color_cycle(lists: &[BTreeSet<Color>]) -> Vec<Color> {
    let k = lists.len();
    assert!(k >= 3);
    debug_assert!(lists.iter().all(|l| l.len() >= 3));
    // A color that some vertex has and its successor lacks lets us anchor
    // there and sweep backwards around the cycle.
    for i in 0..k {
        let next = (i + 1) % k;
        if let Some(&c) = lists[i].iter().find(|c| !lists[next].contains(c)) {
            let mut colors = vec![None; k];
            colors[i] = Some(c);
            for step in 1..k {
                let v = (i + k - step) % k;
                let succ = (v + 1) % k;
                let pred = (v + k - 1) % k;
                let pick = lists[v]
                    .iter()
                    .copied()
                    .find(|&x| colors[succ] != Some(x) && colors[pred] != Some(x))
                    .expect("anchored cycle sweep always has a color left");
                colors[v] = Some(pick);
            }
            return colors.into_iter().map(Option::unwrap).collect();
        }
    }
    // All lists are equal: alternate two colors, with a third color patching
    // the odd closing vertex.
    let mut it = lists[0].iter().copied();
    let a = it.next().unwrap();
    let b = it.next().unwrap();
    let c3 = it.next().unwrap();
    (0..k)
        .map(|i| {
            if i == k - 1 && k % 2 == 1 {
                c3
            } else if i % 2 == 0 {
                a
            } else {
                b
            }
        })
        .collect()
}

fn check_lists(elements: &[ElementRef], l: &ListAssignment) -> Result<(), WheelError> {
    for &e in elements {
        match l.get(e) {
            None => return Err(WheelError::MissingList(e)),
            Some(list) if list.len() < 5 => return Err(WheelError::ListTooShort(e)),
            Some(_) => {}
        }
    }
    Ok(())
}

fn trace_all(coloring: &CoupledColoring, rule: &'static str) -> Vec<TraceStep> {
    coloring
        .iter()
        .map(|(&element, &color)| TraceStep { element, color, rule })
        .collect()
}

fn coloring_is_valid(g: &PlaneGraph, l: &ListAssignment, c: &CoupledColoring) -> bool {
    matches!(
        verify_coupled_coloring(&build_incidence_graph(g), l, c),
        Ok(Verdict::Valid)
    )
}

/// Try to see `g` as a wheel, a wheel minus its hub, or a wheel with some
/// spokes missing, and return the host wheel and embedding. Outerplanar
/// remainders (missing rim pieces) are not recognized here; callers fall
/// back to the exact solver for those.
pub fn recognize_host(g: &PlaneGraph) -> Option<(WheelHost, WheelEmbedding)> {
    // Bare cycle: the host is the wheel with the hub deleted.
    if g.vertex_count() >= 3
        && g.edge_count() == g.vertex_count()
        && g.vertex_ids().all(|v| g.degree(v) == 2 && !g.has_edge(v, v))
    {
        let order = cycle_order(g, VertexId(0))?;
        let host = WheelHost::new(g.vertex_count() + 1).ok()?;
        return embed_with_rim_order(g, host, None, &order);
    }
    // Hub candidate: removing it leaves a single cycle through all others.
    for hub in g.vertex_ids() {
        let deg_ok = g
            .vertex_ids()
            .all(|v| v == hub || (2..=3).contains(&g.degree(v)));
        if !deg_ok || g.degree(hub) < 2 {
            continue;
        }
        let rim_len = g.vertex_count() - 1;
        let rim_degrees_ok = g.vertex_ids().all(|v| {
            v == hub
                || g.neighbors(v).iter().filter(|&&u| u != hub).count() == 2
        });
        if !rim_degrees_ok || g.edge_count() != rim_len + g.degree(hub) {
            continue;
        }
        let start = g.vertex_ids().find(|&v| v != hub)?;
        let order = cycle_order_avoiding(g, start, hub)?;
        if order.len() != rim_len {
            continue;
        }
        let host = WheelHost::new(g.vertex_count()).ok()?;
        if let Some(found) = embed_with_rim_order(g, host, Some(hub), &order) {
            return Some(found);
        }
    }
    None
}

/// Walk the cycle through all vertices of a 2-regular graph.
fn cycle_order(g: &PlaneGraph, start: VertexId) -> Option<Vec<VertexId>> {
    cycle_walk(g, start, |_| true)
}

/// Walk the rim cycle, never stepping on the hub.
fn cycle_order_avoiding(g: &PlaneGraph, start: VertexId, hub: VertexId) -> Option<Vec<VertexId>> {
    cycle_walk(g, start, |v| v != hub)
}

fn cycle_walk(
    g: &PlaneGraph,
    start: VertexId,
    allowed: impl Fn(VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let mut order = vec![start];
    let mut prev = start;
    let mut here = *g
        .neighbors(start)
        .iter()
        .find(|&&u| allowed(u) && u != start)?;
    while here != start {
        order.push(here);
        let next = g
            .neighbors(here)
            .into_iter()
            .find(|&u| allowed(u) && u != prev && u != here)?;
        prev = here;
        here = next;
        if order.len() > g.vertex_count() {
            return None;
        }
    }
    Some(order)
}

/// Build the embedding that sends the walked rim order onto the host rim,
/// trying both orientations (the drawing may be mirrored).
fn embed_with_rim_order(
    g: &PlaneGraph,
    host: WheelHost,
    hub: Option<VertexId>,
    rim_order: &[VertexId],
) -> Option<(WheelHost, WheelEmbedding)> {
    let r = rim_order.len();
    let mut reversed = rim_order.to_vec();
    reversed[1..].reverse();
    for order in [rim_order.to_vec(), reversed] {
        let mut vertex_to_host = vec![VertexId(usize::MAX); g.vertex_count()];
        if let Some(h) = hub {
            vertex_to_host[h.0] = host.labeling.hub;
        }
        for (i, &v) in order.iter().enumerate() {
            vertex_to_host[v.0] = host.labeling.rim[i % r];
        }
        let emb = WheelEmbedding { vertex_to_host };
        if validate_embedding(g, &host, &emb).is_ok() {
            return Some((host, emb));
        }
    }
    None
}

/// Outcome of [`auto_color`]: the exact-search route can fail or abort,
/// unlike the constructive one.
#[derive(Clone, Debug)]
pub enum AutoOutcome {
    Colored {
        coloring: CoupledColoring,
        trace: WheelTrace,
    },
    Unsat,
    Aborted {
        budget: u64,
    },
}

/// Color an arbitrary plane graph: recognized wheels and wheel subgraphs go
/// through the constructive pipeline (when every list has 5 colors),
/// everything else through the exact solver under the given budget.
pub fn auto_color(
    g: &PlaneGraph,
    l: &ListAssignment,
    force_exact: bool,
    budget: Option<u64>,
) -> Result<AutoOutcome, WheelError> {
    let lists_fit = g
        .elements()
        .iter()
        .all(|&e| l.get(e).map(|s| s.len() >= 5).unwrap_or(false));
    if !force_exact && lists_fit {
        if let Some((host, emb)) = recognize_host(g) {
            let case = classify_wheel_subgraph(g, &host, &emb)?;
            if !matches!(case, SubgraphCase::OuterplanarDeletion) {
                let (coloring, trace) = color_wheel_subgraph_traced(g, &case, l)?;
                return Ok(AutoOutcome::Colored { coloring, trace });
            }
        }
    }
    let x = build_incidence_graph(g);
    let out = exact_color(&x, l, budget)?;
    Ok(match out.status {
        SolveStatus::Colored(coloring) => {
            let steps = trace_all(&coloring, "exact-search");
            AutoOutcome::Colored {
                coloring,
                trace: WheelTrace {
                    case: "exact-search",
                    steps,
                    ..WheelTrace::default()
                },
            }
        }
        SolveStatus::ExhaustedUnsat => AutoOutcome::Unsat,
        SolveStatus::Aborted { budget } => AutoOutcome::Aborted { budget },
    })
}

/// A subgraph of a wheel carried together with its embedding, supporting
/// tracked deletions. Useful for building classification inputs.
#[derive(Clone, Debug)]
pub struct HostedSubgraph {
    pub graph: PlaneGraph,
    pub embedding: WheelEmbedding,
}

impl HostedSubgraph {
    /// The full host wheel with the identity embedding.
    pub fn full(host: &WheelHost) -> Self {
        HostedSubgraph {
            graph: host.graph.clone(),
            embedding: WheelEmbedding {
                vertex_to_host: host.graph.vertex_ids().collect(),
            },
        }
    }

    pub fn delete(&self, target: crate::plane_graph::Deletion) -> Result<Self, GraphError> {
        let (graph, map) = self.graph.delete_element(target)?;
        let mut vertex_to_host = vec![VertexId(usize::MAX); graph.vertex_count()];
        for (old, new) in map.vertices {
            vertex_to_host[new.0] = self.embedding.vertex_to_host[old.0];
        }
        Ok(HostedSubgraph {
            graph,
            embedding: WheelEmbedding { vertex_to_host },
        })
    }
}
