//! Coupled list coloring of plane graphs.
//!
//! A *coupled coloring* assigns a color to every vertex **and** every face of
//! a plane graph so that adjacent vertices, faces sharing an edge, and
//! incident vertex–face pairs all receive distinct colors. Equivalently it is
//! a proper vertex coloring of the vertex–face incidence graph `X(G)`.
//!
//! The crate provides:
//!
//! * [`plane_graph`] — connected plane multigraphs as rotation systems, with
//!   face tracing, duals, and embedding-preserving edits;
//! * [`incidence`] — the incidence graph `X(G)`, list assignments, colorings,
//!   and the validity checker;
//! * [`solver`] — exact backtracking list-coloring (search and counting), a
//!   degree-choosability procedure, and the fixed-endpoint strip coloring;
//! * [`wheel`] — the constructive pipeline that 5-list-colors any wheel and
//!   any connected subgraph of a wheel;
//! * [`certificates`] — exhaustive machine checks of the lower-bound and
//!   structural claims (W5/W6, adversarial lists, K4 minus an edge, the
//!   triangular prism, Halin duality, 3-colorability of the rim graphs);
//! * [`io`] — JSON graph/list/coloring formats, DOT export, graph6 import;
//! * [`cli`] — the `coupled-chroma` command-line interface.
//!
//! Start with the runnable examples in `examples/` — there is one per major
//! capability.

pub mod certificates;
pub mod cli;
pub mod incidence;
pub mod io;
pub mod plane_graph;
pub mod solver;
pub mod wheel;

pub use certificates::{run_all, run_certificate, Certificate, CertificateReport};
pub use incidence::{
    build_incidence_graph, build_xn, verify_coupled_coloring, CoupledColoring, IncidenceGraph,
    ListAssignment, Verdict,
};
pub use plane_graph::{
    are_isomorphic, build_named, build_wheel, DartId, Deletion, ElementRef, FaceId, NamedGraph,
    PlaneGraph, VertexId, WheelLabeling,
};
pub use solver::{count_colorings, exact_color, SolveOutcome, SolveStatus};
pub use wheel::{
    auto_color, classify_wheel_subgraph, color_wheel, color_wheel_subgraph, HostedSubgraph,
    SubgraphCase, WheelHost,
};

