//! Exact list-coloring engines.
//!
//! `exact_color` / `count_colorings` run complete backtracking with forward
//! checking, so an `ExhaustedUnsat` outcome is a proof of non-colorability
//! and the counter is exact. The search is deterministic: the next variable
//! is the node with the smallest remaining list (ties by node id) and colors
//! are tried in ascending order.
//!
//! `degree_choosable_color` realizes the classical guarantee that a connected
//! graph other than a complete graph or an odd cycle can be colored from
//! lists of length at least its maximum degree. Two constructive branches
//! cover the common shapes; everything else falls back to the exact solver,
//! which the guarantee keeps from failing.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::incidence::{Color, CoupledColoring, IncidenceGraph, NodeId};
use crate::incidence::ListAssignment;
use crate::plane_graph::ElementRef;

/// Default node budget for plain coloring runs. Certificates always search
/// to completion instead.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("list assignment is missing element {0}")]
    MissingList(ElementRef),
    #[error("element {0} has an empty list")]
    EmptyList(ElementRef),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("list of {0} is below its strip bound")]
    BoundViolated(ElementRef),
    #[error("bad fixed nodes: {0}")]
    InvalidFixed(String),
}

/// Search statistics attached to every outcome.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveStats {
    /// Number of color assignments attempted.
    pub nodes_expanded: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub enum SolveStatus {
    Colored(CoupledColoring),
    /// The search space was exhausted without a solution.
    ExhaustedUnsat,
    /// The node budget ran out before the search completed.
    Aborted { budget: u64 },
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn coloring(&self) -> Option<&CoupledColoring> {
        match &self.status {
            SolveStatus::Colored(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.status, SolveStatus::ExhaustedUnsat)
    }
}

/// Find one list coloring of `x`, or prove there is none. `budget` limits the
/// number of assignments attempted; `None` runs to completion.
pub fn exact_color(
    x: &IncidenceGraph,
    l: &ListAssignment,
    budget: Option<u64>,
) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let mut search = Search::new(x, l, budget)?;
    let status = match search.run(&mut FirstSolution) {
        Ok(()) => match search.sink_solution.take() {
            Some(c) => SolveStatus::Colored(c),
            None => SolveStatus::ExhaustedUnsat,
        },
        Err(BudgetExceeded) => SolveStatus::Aborted {
            budget: budget.unwrap_or(0),
        },
    };
    Ok(SolveOutcome {
        status,
        stats: SolveStats {
            nodes_expanded: search.expanded,
            elapsed: start.elapsed(),
        },
    })
}

/// Count all list colorings of `x`, saturating at `cap`. A complete run with
/// result 0 is an unsatisfiability proof.
pub fn count_colorings(
    x: &IncidenceGraph,
    l: &ListAssignment,
    cap: u64,
) -> Result<u64, SolverError> {
    let mut search = Search::new(x, l, None)?;
    let mut sink = CountSolutions { count: 0, cap };
    // Counting is never budgeted, so the only early exit is the cap.
    let _ = search.run(&mut sink);
    Ok(sink.count)
}

struct BudgetExceeded;

trait SolutionSink {
    /// Returns `true` to keep searching for more solutions.
    fn found(&mut self, search: &mut Search) -> bool;
}

struct FirstSolution;

impl SolutionSink for FirstSolution {
    fn found(&mut self, search: &mut Search) -> bool {
        search.sink_solution = Some(search.current_coloring());
        false
    }
}

struct CountSolutions {
    count: u64,
    cap: u64,
}

impl SolutionSink for CountSolutions {
    fn found(&mut self, _search: &mut Search) -> bool {
        self.count += 1;
        self.count < self.cap
    }
}

struct Search<'a> {
    x: &'a IncidenceGraph,
    /// Static per-node color menus, ascending.
    menu: Vec<Vec<Color>>,
    alive: Vec<Vec<bool>>,
    alive_count: Vec<usize>,
    assigned: Vec<Option<Color>>,
    unassigned: usize,
    expanded: u64,
    budget: Option<u64>,
    sink_solution: Option<CoupledColoring>,
}

impl<'a> Search<'a> {
    fn new(
        x: &'a IncidenceGraph,
        l: &ListAssignment,
        budget: Option<u64>,
    ) -> Result<Self, SolverError> {
        let mut menu = Vec::with_capacity(x.node_count());
        for id in 0..x.node_count() {
            let e = x.node(id);
            let list = l.get(e).ok_or(SolverError::MissingList(e))?;
            if list.is_empty() {
                return Err(SolverError::EmptyList(e));
            }
            menu.push(list.iter().copied().collect::<Vec<_>>());
        }
        let alive: Vec<Vec<bool>> = menu.iter().map(|m| vec![true; m.len()]).collect();
        let alive_count = menu.iter().map(Vec::len).collect();
        Ok(Search {
            x,
            menu,
            alive,
            alive_count,
            assigned: vec![None; x.node_count()],
            unassigned: x.node_count(),
            expanded: 0,
            budget,
            sink_solution: None,
        })
    }

    fn current_coloring(&self) -> CoupledColoring {
        self.assigned
            .iter()
            .enumerate()
            .map(|(id, c)| (self.x.node(id), c.expect("complete assignment")))
            .collect()
    }

    /// Smallest remaining list, ties by node id.
    fn pick_node(&self) -> NodeId {
        let mut best = usize::MAX;
        let mut best_len = usize::MAX;
        for id in 0..self.assigned.len() {
            if self.assigned[id].is_none() && self.alive_count[id] < best_len {
                best_len = self.alive_count[id];
                best = id;
            }
        }
        best
    }

    /// Remove `color` from the live menus of the unassigned neighbors of
    /// `node`. Returns the performed removals and whether some neighbor ran
    /// out of colors.
    fn forward_check(&mut self, node: NodeId, color: Color) -> (Vec<(NodeId, usize)>, bool) {
        let mut removals = Vec::new();
        let mut wiped = false;
        for &nb in self.x.neighbors(node) {
            if self.assigned[nb].is_some() {
                continue;
            }
            if let Ok(idx) = self.menu[nb].binary_search(&color) {
                if self.alive[nb][idx] {
                    self.alive[nb][idx] = false;
                    self.alive_count[nb] -= 1;
                    removals.push((nb, idx));
                    if self.alive_count[nb] == 0 {
                        wiped = true;
                    }
                }
            }
        }
        (removals, wiped)
    }

    fn undo(&mut self, removals: Vec<(NodeId, usize)>) {
        for (nb, idx) in removals {
            self.alive[nb][idx] = true;
            self.alive_count[nb] += 1;
        }
    }

    /// Depth-first search; `Ok(())` when the space (or the sink's appetite)
    /// is exhausted.
    fn run(&mut self, sink: &mut dyn SolutionSink) -> Result<(), BudgetExceeded> {
        if self.unassigned == 0 {
            sink.found(self);
            return Ok(());
        }
        self.dfs(sink).map(|_| ())
    }

    /// Returns `Ok(true)` to continue exploring siblings, `Ok(false)` to stop.
    fn dfs(&mut self, sink: &mut dyn SolutionSink) -> Result<bool, BudgetExceeded> {
        let node = self.pick_node();
        for idx in 0..self.menu[node].len() {
            if !self.alive[node][idx] {
                continue;
            }
            if let Some(b) = self.budget {
                if self.expanded >= b {
                    return Err(BudgetExceeded);
                }
            }
            self.expanded += 1;
            let color = self.menu[node][idx];
            self.assigned[node] = Some(color);
            self.unassigned -= 1;
            let (removals, wiped) = self.forward_check(node, color);
            let keep_going = if wiped {
                true
            } else if self.unassigned == 0 {
                sink.found(self)
            } else {
                self.dfs(sink)?
            };
            self.undo(removals);
            self.assigned[node] = None;
            self.unassigned += 1;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Color a connected graph from lists of length at least its maximum degree.
///
/// Preconditions (checked): `x` connected, not complete, not an odd cycle,
/// every list at least `max_degree(x)` long. Under these the coloring always
/// exists. Branch (a) colors greedily in reverse-BFS order from a node whose
/// list is longer than its degree; branch (b) pre-colors two non-adjacent
/// neighbors of some node with a shared color and does the same; when
/// neither applies the exact solver finishes the job.
pub fn degree_choosable_color(
    x: &IncidenceGraph,
    l: &ListAssignment,
) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let n = x.node_count();
    if n == 0 || !x.is_connected() {
        return Err(SolverError::PreconditionViolated("graph must be connected".into()));
    }
    if n * (n - 1) / 2 == x.edge_count() {
        return Err(SolverError::PreconditionViolated(
            "complete graphs are excluded".into(),
        ));
    }
    if n % 2 == 1 && (0..n).all(|v| x.degree(v) == 2) {
        return Err(SolverError::PreconditionViolated("odd cycles are excluded".into()));
    }
    let delta = x.max_degree();
    let mut menu: Vec<Vec<Color>> = Vec::with_capacity(n);
    for id in 0..n {
        let e = x.node(id);
        let list = l.get(e).ok_or(SolverError::MissingList(e))?;
        if list.len() < delta {
            return Err(SolverError::PreconditionViolated(format!(
                "list of {e} has {} colors, need at least the maximum degree {delta}",
                list.len()
            )));
        }
        menu.push(list.iter().copied().collect());
    }

    // Branch (a): some list is longer than its node's degree.
    if let Some(v) = (0..n).find(|&v| menu[v].len() > x.degree(v)) {
        let order = reverse_bfs_order(x, v, &[]);
        if let Some(colors) = greedy_color(x, &menu, &order, &[]) {
            return Ok(colored_outcome(x, colors, start, 0));
        }
    } else {
        // Branch (b): all lists equal their degrees, so the graph is regular.
        // Find v with non-adjacent neighbors u, w sharing a color such that
        // removing u and w keeps the graph connected.
        for v in 0..n {
            let nbs = x.neighbors(v);
            for (i, &u) in nbs.iter().enumerate() {
                for &w in &nbs[i + 1..] {
                    if x.has_edge(u, w) {
                        continue;
                    }
                    let Some(&alpha) = menu[u].iter().find(|c| menu[w].binary_search(c).is_ok())
                    else {
                        continue;
                    };
                    if !connected_without(x, u, w) {
                        continue;
                    }
                    let order = reverse_bfs_order(x, v, &[u, w]);
                    let pre = [(u, alpha), (w, alpha)];
                    if let Some(colors) = greedy_color(x, &menu, &order, &pre) {
                        return Ok(colored_outcome(x, colors, start, 0));
                    }
                }
            }
        }
    }

    // Branch (c): complete search, guaranteed to succeed under the
    // precondition.
    let out = exact_color(x, l, None)?;
    match out.status {
        SolveStatus::Colored(c) => Ok(SolveOutcome {
            status: SolveStatus::Colored(c),
            stats: SolveStats {
                nodes_expanded: out.stats.nodes_expanded,
                elapsed: start.elapsed(),
            },
        }),
        _ => Err(SolverError::PreconditionViolated(
            "graph reported as degree-choosable has no coloring; preconditions must not hold"
                .into(),
        )),
    }
}

fn colored_outcome(
    x: &IncidenceGraph,
    colors: Vec<Color>,
    start: Instant,
    expanded: u64,
) -> SolveOutcome {
    let coloring = colors
        .into_iter()
        .enumerate()
        .map(|(id, c)| (x.node(id), c))
        .collect();
    SolveOutcome {
        status: SolveStatus::Colored(coloring),
        stats: SolveStats {
            nodes_expanded: expanded,
            elapsed: start.elapsed(),
        },
    }
}

/// BFS order from `root` (skipping `excluded`), reversed, so the root comes
/// last and every earlier node still has an uncolored neighbor on its level
/// path toward the root.
fn reverse_bfs_order(x: &IncidenceGraph, root: NodeId, excluded: &[NodeId]) -> Vec<NodeId> {
    let mut seen = vec![false; x.node_count()];
    for &e in excluded {
        seen[e] = true;
    }
    let mut order = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in x.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order.reverse();
    order
}

/// Color `order` greedily (smallest available color), starting from the
/// pre-assigned nodes. Returns `None` if some node runs dry.
fn greedy_color(
    x: &IncidenceGraph,
    menu: &[Vec<Color>],
    order: &[NodeId],
    pre: &[(NodeId, Color)],
) -> Option<Vec<Color>> {
    let mut colors: Vec<Option<Color>> = vec![None; x.node_count()];
    for &(v, c) in pre {
        colors[v] = Some(c);
    }
    for &v in order {
        if colors[v].is_some() {
            continue;
        }
        let c = menu[v]
            .iter()
            .copied()
            .find(|c| x.neighbors(v).iter().all(|&u| colors[u] != Some(*c)))?;
        colors[v] = Some(c);
    }
    colors.into_iter().collect()
}

fn connected_without(x: &IncidenceGraph, a: NodeId, b: NodeId) -> bool {
    let n = x.node_count();
    if n <= 3 {
        return n == 3; // removing two of three nodes leaves a single node
    }
    let mut seen = vec![false; n];
    seen[a] = true;
    seen[b] = true;
    let start = (0..n).find(|&v| !seen[v]).unwrap();
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in x.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n - 2
}

/// Color an outerplanar strip (the square of a path, ordered by its sigma)
/// given the colors of the two nodes at one end. Every other node needs a
/// list of length at least 3; the sweep moves away from the fixed end and
/// each node sees at most two colored neighbors when its turn comes.
pub fn color_strip(
    strip: &IncidenceGraph,
    l: &ListAssignment,
    fixed: [(ElementRef, Color); 2],
) -> Result<SolveOutcome, SolverError> {
    let start = Instant::now();
    let sigma = strip
        .sigma()
        .ok_or_else(|| SolverError::InvalidFixed("strip carries no sigma order".into()))?;
    let len = sigma.len();
    if len < 2 {
        return Err(SolverError::InvalidFixed("strip has fewer than two nodes".into()));
    }
    let pos_of = |e: ElementRef| -> Result<usize, SolverError> {
        let id = strip
            .node_id(e)
            .ok_or_else(|| SolverError::InvalidFixed(format!("{e} is not a strip node")))?;
        Ok(sigma.iter().position(|&s| s == id).expect("sigma covers all nodes"))
    };
    let p0 = pos_of(fixed[0].0)?;
    let p1 = pos_of(fixed[1].0)?;
    let mut positions = [p0, p1];
    positions.sort_unstable();

    // The fixed pair sits at one end of the sweep order.
    let sweep: Vec<NodeId> = if positions == [len - 2, len - 1] {
        (0..len - 2).rev().map(|i| sigma[i]).collect()
    } else if positions == [0, 1] {
        (2..len).map(|i| sigma[i]).collect()
    } else {
        return Err(SolverError::InvalidFixed(
            "fixed nodes must be the two sigma-consecutive nodes at one end of the strip".into(),
        ));
    };

    let a = strip.node_id(fixed[0].0).unwrap();
    let b = strip.node_id(fixed[1].0).unwrap();
    if !strip.has_edge(a, b) {
        return Err(SolverError::InvalidFixed("fixed nodes must be adjacent".into()));
    }
    if fixed[0].1 == fixed[1].1 {
        return Err(SolverError::InvalidFixed(
            "adjacent fixed nodes carry the same color".into(),
        ));
    }

    let mut colors: Vec<Option<Color>> = vec![None; strip.node_count()];
    for &(e, c) in &fixed {
        let id = strip.node_id(e).unwrap();
        if let Some(list) = l.get(e) {
            if !list.contains(&c) {
                return Err(SolverError::InvalidFixed(format!(
                    "fixed color {c} of {e} is not in its list"
                )));
            }
        }
        colors[id] = Some(c);
    }

    // Bound check before sweeping.
    for &id in &sweep {
        let e = strip.node(id);
        let list = l.get(e).ok_or(SolverError::MissingList(e))?;
        if list.len() < 3 {
            return Err(SolverError::BoundViolated(e));
        }
    }

    for &id in &sweep {
        let e = strip.node(id);
        let list = l.get(e).unwrap();
        let c = list
            .iter()
            .copied()
            .find(|c| strip.neighbors(id).iter().all(|&u| colors[u] != Some(*c)))
            .ok_or_else(|| {
                SolverError::PreconditionViolated(format!(
                    "strip sweep ran out of colors at {e}; the graph is not a strip"
                ))
            })?;
        colors[id] = Some(c);
    }

    let coloring: CoupledColoring = colors
        .into_iter()
        .enumerate()
        .map(|(id, c)| (strip.node(id), c.expect("sweep is total")))
        .collect();
    Ok(SolveOutcome {
        status: SolveStatus::Colored(coloring),
        stats: SolveStats {
            nodes_expanded: 0,
            elapsed: start.elapsed(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{build_incidence_graph, verify_coupled_coloring, Verdict};
    use crate::plane_graph::{build_named, build_wheel, NamedGraph};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path2() -> IncidenceGraph {
        IncidenceGraph::from_parts(
            vec![ElementRef::vertex(0), ElementRef::vertex(1)],
            [(0usize, 1usize)],
            None,
        )
    }

    #[test]
    fn single_edge_with_two_colors_has_two_colorings() {
        let x = path2();
        let l = ListAssignment::uniform(&[ElementRef::vertex(0), ElementRef::vertex(1)], &[1, 2]);
        assert_eq!(count_colorings(&x, &l, u64::MAX).unwrap(), 2);
    }

    #[test]
    fn x_of_k4_is_4_list_colorable() {
        let (k4, _) = build_wheel(4).unwrap();
        let x = build_incidence_graph(&k4);
        let l = ListAssignment::uniform(&k4.elements(), &[1, 2, 3, 4]);
        let out = exact_color(&x, &l, None).unwrap();
        let c = out.coloring().expect("X(K4) is 4-colorable");
        assert!(verify_coupled_coloring(&x, &l, c).unwrap().is_valid());
    }

    #[test]
    fn x_of_w5_is_not_4_list_colorable() {
        let (w5, _) = build_wheel(5).unwrap();
        let x = build_incidence_graph(&w5);
        let l = ListAssignment::uniform(&w5.elements(), &[1, 2, 3, 4]);
        let out = exact_color(&x, &l, None).unwrap();
        assert!(out.is_unsat());
        assert_eq!(count_colorings(&x, &l, u64::MAX).unwrap(), 0);
    }

    #[test]
    fn prism_needs_six_colors() {
        let prism = build_named(NamedGraph::HalinPrism).unwrap();
        let x = build_incidence_graph(&prism);
        let l5 = ListAssignment::uniform(&prism.elements(), &[1, 2, 3, 4, 5]);
        assert!(exact_color(&x, &l5, None).unwrap().is_unsat());
        let l6 = ListAssignment::uniform(&prism.elements(), &[1, 2, 3, 4, 5, 6]);
        let out = exact_color(&x, &l6, None).unwrap();
        assert!(verify_coupled_coloring(&x, &l6, out.coloring().unwrap())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn budget_aborts_search() {
        let (w5, _) = build_wheel(5).unwrap();
        let x = build_incidence_graph(&w5);
        let l = ListAssignment::uniform(&w5.elements(), &[1, 2, 3, 4]);
        let out = exact_color(&x, &l, Some(3)).unwrap();
        assert!(matches!(out.status, SolveStatus::Aborted { budget: 3 }));
    }

    #[test]
    fn empty_list_rejected() {
        let x = path2();
        let mut l = ListAssignment::new();
        l.insert(ElementRef::vertex(0), [1]);
        l.insert(ElementRef::vertex(1), []);
        assert!(matches!(
            exact_color(&x, &l, None),
            Err(SolverError::EmptyList(_))
        ));
    }

    #[test]
    fn deterministic_stats() {
        let (w5, _) = build_wheel(5).unwrap();
        let x = build_incidence_graph(&w5);
        let l = ListAssignment::uniform(&w5.elements(), &[1, 2, 3, 4]);
        let a = exact_color(&x, &l, None).unwrap();
        let b = exact_color(&x, &l, None).unwrap();
        assert_eq!(a.stats.nodes_expanded, b.stats.nodes_expanded);
    }

    fn square_cycle() -> IncidenceGraph {
        IncidenceGraph::from_parts(
            (0..4).map(ElementRef::vertex).collect(),
            [(0usize, 1usize), (1, 2), (2, 3), (3, 0)],
            None,
        )
    }

    #[test]
    fn even_cycle_colors_from_degree_lists() {
        let x = square_cycle();
        let l = ListAssignment::uniform(
            &(0..4).map(ElementRef::vertex).collect::<Vec<_>>(),
            &[1, 2],
        );
        let out = degree_choosable_color(&x, &l).unwrap();
        let c = out.coloring().unwrap();
        assert_ne!(c.get(ElementRef::vertex(0)), c.get(ElementRef::vertex(1)));
        assert_eq!(c.get(ElementRef::vertex(0)), c.get(ElementRef::vertex(2)));
    }

    #[test]
    fn complete_graph_rejected() {
        let nodes: Vec<ElementRef> = (0..5).map(ElementRef::vertex).collect();
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                edges.push((i, j));
            }
        }
        let x = IncidenceGraph::from_parts(nodes.clone(), edges, None);
        let l = ListAssignment::uniform(&nodes, &[1, 2, 3, 4]);
        assert!(matches!(
            degree_choosable_color(&x, &l),
            Err(SolverError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn odd_cycle_rejected() {
        let nodes: Vec<ElementRef> = (0..5).map(ElementRef::vertex).collect();
        let x = IncidenceGraph::from_parts(
            nodes.clone(),
            [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (4, 0)],
            None,
        );
        let l = ListAssignment::uniform(&nodes, &[1, 2]);
        assert!(matches!(
            degree_choosable_color(&x, &l),
            Err(SolverError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn xn_with_degree_lists_is_colorable() {
        // The Case-1 reduction: X_9 with uniform 4-lists.
        let (w9, lab) = build_wheel(9).unwrap();
        let x = crate::incidence::build_xn(&w9, &lab).unwrap();
        let l = ListAssignment::uniform(x.nodes(), &[1, 2, 3, 4]);
        let out = degree_choosable_color(&x, &l).unwrap();
        assert!(verify_coupled_coloring(&x, &l, out.coloring().unwrap())
            .unwrap()
            .is_valid());
    }

    /// Random connected graph on `n` nodes that is neither complete nor an
    /// odd cycle.
    fn random_degree_instance(
        rng: &mut ChaCha8Rng,
    ) -> (IncidenceGraph, ListAssignment) {
        loop {
            let n = rng.gen_range(3..=14);
            let mut edges = Vec::new();
            // Random spanning tree, then extra edges.
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            for i in 1..n {
                let j = rng.gen_range(0..i);
                edges.push((perm[i], perm[j]));
            }
            let extra = rng.gen_range(0..=n);
            for _ in 0..extra {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                if a != b {
                    edges.push((a.min(b), a.max(b)));
                }
            }
            let nodes: Vec<ElementRef> = (0..n).map(ElementRef::vertex).collect();
            let x = IncidenceGraph::from_parts(nodes.clone(), edges, None);
            if x.edge_count() == n * (n - 1) / 2 {
                continue;
            }
            if n % 2 == 1 && (0..n).all(|v| x.degree(v) == 2) {
                continue;
            }
            let delta = x.max_degree();
            let mut l = ListAssignment::new();
            for &e in &nodes {
                let mut list = std::collections::BTreeSet::new();
                while list.len() < delta {
                    list.insert(rng.gen_range(1..=(delta as i32 + 4)));
                }
                l.insert(e, list);
            }
            return (x, l);
        }
    }

    #[test]
    fn degree_choosable_succeeds_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for trial in 0..10_000 {
            let (x, l) = random_degree_instance(&mut rng);
            let out = degree_choosable_color(&x, &l)
                .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
            let c = out.coloring().expect("degree lists guarantee a coloring here");
            assert_eq!(
                verify_coupled_coloring(&x, &l, c).unwrap(),
                Verdict::Valid,
                "trial {trial}"
            );
        }
    }

    /// Square of a path on `k` nodes, sigma in path order, as the wheel strip.
    fn strip(k: usize) -> IncidenceGraph {
        let nodes: Vec<ElementRef> = (0..k).map(ElementRef::vertex).collect();
        let mut edges = Vec::new();
        for i in 0..k {
            if i + 1 < k {
                edges.push((i, i + 1));
            }
            if i + 2 < k {
                edges.push((i, i + 2));
            }
        }
        IncidenceGraph::from_parts(nodes, edges, Some((0..k).collect()))
    }

    #[test]
    fn strip_sweep_colors_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let k = rng.gen_range(4..=10);
            let x = strip(k);
            let mut l = ListAssignment::new();
            for id in 0..k {
                let mut list = std::collections::BTreeSet::new();
                while list.len() < 3 {
                    list.insert(rng.gen_range(1..=9));
                }
                l.insert(x.node(id), list);
            }
            // Random valid fixed colors at the tail end.
            let e_last = x.node(k - 1);
            let e_prev = x.node(k - 2);
            let c_last = *l.get(e_last).unwrap().iter().next().unwrap();
            let c_prev = *l
                .get(e_prev)
                .unwrap()
                .iter()
                .find(|&&c| c != c_last)
                .unwrap();
            let out = color_strip(&x, &l, [(e_last, c_last), (e_prev, c_prev)]).unwrap();
            let c = out.coloring().unwrap();
            assert!(verify_coupled_coloring(&x, &l, c).unwrap().is_valid());
        }
    }

    #[test]
    fn minimal_strip_agrees_with_exact_search() {
        let x = strip(4);
        let l = ListAssignment::uniform(
            &(0..4).map(ElementRef::vertex).collect::<Vec<_>>(),
            &[1, 2, 3],
        );
        let fixed = [(x.node(3), 1), (x.node(2), 2)];
        let swept = color_strip(&x, &l, fixed).unwrap();
        assert!(verify_coupled_coloring(&x, &l, swept.coloring().unwrap())
            .unwrap()
            .is_valid());
        // The exact solver agrees the instance is satisfiable.
        assert!(exact_color(&x, &l, None).unwrap().coloring().is_some());
    }

    #[test]
    fn interior_short_list_violates_bound() {
        let x = strip(5);
        let mut l = ListAssignment::uniform(
            &(0..5).map(ElementRef::vertex).collect::<Vec<_>>(),
            &[1, 2, 3],
        );
        l.insert(ElementRef::vertex(1), [1, 2]);
        let fixed = [(x.node(4), 1), (x.node(3), 2)];
        assert!(matches!(
            color_strip(&x, &l, fixed),
            Err(SolverError::BoundViolated(_))
        ));
    }
}
