//! The two-coloured multigraph over agents: status-quo edges on one side,
//! current-match and improving edges on the other.
//!
//! A *blocking path* is a complete, alternating path that uses at least one
//! improving edge. An individually rational match is in the agreeable core
//! exactly when no blocking path exists, and the path's current-class edges
//! spell out the deviation the coalition on it can agree to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{is_individually_rational, AgentId, Market, Match};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// Edges of the status quo match.
    StatusQuo,
    /// Edges of the current match together with its improving edges.
    Current,
}

impl EdgeClass {
    pub fn other(self) -> EdgeClass {
        match self {
            EdgeClass::StatusQuo => EdgeClass::Current,
            EdgeClass::Current => EdgeClass::StatusQuo,
        }
    }
}

/// An unordered pair (or loop) tagged with its class. Endpoints are stored
/// in canonical order, so `Edge::new(a, b, c) == Edge::new(b, a, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub class: EdgeClass,
    a: AgentId,
    b: AgentId,
}

impl Edge {
    pub fn new(x: AgentId, y: AgentId, class: EdgeClass) -> Self {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        Edge { class, a, b }
    }

    pub fn looped(x: AgentId, class: EdgeClass) -> Self {
        Edge { class, a: x, b: x }
    }

    pub fn endpoints(&self) -> (AgentId, AgentId) {
        (self.a, self.b)
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }

    pub fn contains(&self, v: AgentId) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`; `v` itself on a loop.
    pub fn other(&self, v: AgentId) -> AgentId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    fn vertices(&self) -> impl Iterator<Item = AgentId> {
        let b = (!self.is_loop()).then_some(self.b);
        std::iter::once(self.a).chain(b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.class {
            EdgeClass::StatusQuo => "sq",
            EdgeClass::Current => "mi",
        };
        if self.is_loop() {
            write!(f, "{{{}}}_{tag}", self.a)
        } else {
            write!(f, "{{{},{}}}_{tag}", self.a, self.b)
        }
    }
}

/// Graph on all agents with one status-quo edge per agent and at least one
/// current-class edge per agent.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n_workers: usize,
    n_firms: usize,
    sq_edges: Vec<Edge>,
    mi_edges: Vec<Edge>,
    improving: BTreeSet<Edge>,
    sq_at: Vec<usize>,
    mi_at: Vec<Vec<usize>>,
}

impl ColoredGraph {
    pub fn n_vertices(&self) -> usize {
        self.n_workers + self.n_firms
    }

    pub fn sq_edges(&self) -> &[Edge] {
        &self.sq_edges
    }

    pub fn mi_edges(&self) -> &[Edge] {
        &self.mi_edges
    }

    /// The improving edges, a subset of [`ColoredGraph::mi_edges`].
    pub fn improving_edges(&self) -> &BTreeSet<Edge> {
        &self.improving
    }

    pub fn is_improving(&self, e: &Edge) -> bool {
        self.improving.contains(e)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        match e.class {
            EdgeClass::StatusQuo => self.sq_edges.binary_search(e).is_ok(),
            EdgeClass::Current => self.mi_edges.binary_search(e).is_ok(),
        }
    }

    fn slot(&self, a: AgentId) -> usize {
        if a.is_worker() {
            a.index
        } else {
            self.n_workers + a.index
        }
    }

    pub fn sq_edge_at(&self, a: AgentId) -> Edge {
        self.sq_edges[self.sq_at[self.slot(a)]]
    }

    /// Current-class edges at `a`, sorted.
    pub fn mi_edges_at(&self, a: AgentId) -> impl Iterator<Item = Edge> + '_ {
        self.mi_at[self.slot(a)].iter().map(|&i| self.mi_edges[i])
    }
}

/// Pairs (and loops) whose members strictly prefer each other to their
/// partners under `mu`.
pub fn improving_edges(market: &Market, mu: &Match) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for a in market.agents() {
        if market.strictly_prefers(a, a, mu.partner(a)) {
            out.insert(Edge::looped(a, EdgeClass::Current));
        }
    }
    for w in market.workers() {
        for f in market.firms() {
            if market.strictly_prefers(w, f, mu.partner(w)) && market.strictly_prefers(f, w, mu.partner(f)) {
                out.insert(Edge::new(w, f, EdgeClass::Current));
            }
        }
    }
    out
}

fn match_edges(mu: &Match, class: EdgeClass) -> Vec<Edge> {
    mu.agents()
        .filter(|&a| mu.partner(a) >= a)
        .map(|a| Edge::new(a, mu.partner(a), class))
        .collect()
}

pub fn build_blocking_graph(market: &Market, mu: &Match) -> ColoredGraph {
    let n = market.n_agents();
    let mut sq_edges = match_edges(market.status_quo(), EdgeClass::StatusQuo);
    sq_edges.sort();
    let improving = improving_edges(market, mu);
    let mut mi_edges = match_edges(mu, EdgeClass::Current);
    mi_edges.extend(improving.iter().copied());
    mi_edges.sort();
    mi_edges.dedup();

    let mut graph = ColoredGraph {
        n_workers: market.n_workers(),
        n_firms: market.n_firms(),
        sq_edges,
        mi_edges,
        improving,
        sq_at: vec![usize::MAX; n],
        mi_at: vec![Vec::new(); n],
    };
    for i in 0..graph.sq_edges.len() {
        for v in graph.sq_edges[i].vertices() {
            let s = graph.slot(v);
            graph.sq_at[s] = i;
        }
    }
    for i in 0..graph.mi_edges.len() {
        for v in graph.mi_edges[i].vertices() {
            let s = graph.slot(v);
            graph.mi_at[s].push(i);
        }
    }
    graph
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    /// Terminated by loops at both ends.
    Linear,
    /// Loop-free and closed.
    Cyclic,
}

/// An ordered edge sequence. Constructing a `Path` does not validate it;
/// use the predicates below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub edges: Vec<Edge>,
}

impl Path {
    pub fn new(edges: Vec<Edge>) -> Self {
        Path { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Nonempty, consecutive edges share a vertex, no edge repeated.
    pub fn is_simple(&self) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        let distinct: BTreeSet<&Edge> = self.edges.iter().collect();
        distinct.len() == self.edges.len()
            && self
                .edges
                .windows(2)
                .all(|w| w[0].vertices().any(|v| w[1].contains(v)))
    }

    pub fn vertices(&self) -> BTreeSet<AgentId> {
        self.edges.iter().flat_map(|e| e.vertices()).collect()
    }

    /// Every vertex on the path lies in exactly two of its edges.
    pub fn is_complete(&self) -> bool {
        let mut degree: BTreeMap<AgentId, usize> = BTreeMap::new();
        for e in &self.edges {
            for v in e.vertices() {
                *degree.entry(v).or_default() += 1;
            }
        }
        !degree.is_empty() && degree.values().all(|&d| d == 2)
    }

    pub fn is_alternating(&self) -> bool {
        self.edges.windows(2).all(|w| w[0].class != w[1].class)
    }

    pub fn is_complete_alternating(&self) -> bool {
        self.is_simple() && self.is_complete() && self.is_alternating()
    }

    pub fn contains_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(Edge::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Loop-bearing paths are linear; closed loop-free paths are cyclic.
pub fn classify_path(path: &Path) -> Result<PathKind> {
    if !path.is_complete_alternating() {
        return Err(Error::NotCompleteAlternating);
    }
    Ok(if path.contains_loop() {
        PathKind::Linear
    } else {
        PathKind::Cyclic
    })
}

/// The deviation encoded by a complete alternating path: each vertex goes to
/// its partner along the path's current-class edge.
pub fn path_match(path: &Path) -> Result<BTreeMap<AgentId, AgentId>> {
    if !path.is_complete_alternating() {
        return Err(Error::NotCompleteAlternating);
    }
    let mut out = BTreeMap::new();
    for e in path.edges.iter().filter(|e| e.class == EdgeClass::Current) {
        let (a, b) = e.endpoints();
        if out.insert(a, b).is_some() || (a != b && out.insert(b, a).is_some()) {
            return Err(Error::NotCompleteAlternating);
        }
    }
    if out.len() != path.vertices().len() {
        return Err(Error::NotCompleteAlternating);
    }
    Ok(out)
}

/// Extends a path deviation to a full match, leaving everyone off the path
/// unmatched.
pub fn extend_path_match(market: &Market, deviation: &BTreeMap<AgentId, AgentId>) -> Result<Match> {
    let pairs: Vec<(AgentId, AgentId)> = deviation
        .iter()
        .filter(|(a, b)| a.is_worker() && a != b)
        .map(|(&a, &b)| (a, b))
        .collect();
    market.match_from_pairs(&pairs)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    Forward,
    Backward,
}

/// Depth-first search from every improving edge. Status-quo steps are
/// forced (each agent has one), current-class steps branch. The walk leaves
/// the start edge's second endpoint first; when it ends on a loop the walk
/// restarts from the first endpoint. Reaching the first endpoint through its
/// status-quo edge closes a cycle.
struct PathSearch<'g> {
    graph: &'g ColoredGraph,
    want: Option<PathKind>,
    on_path: Vec<bool>,
    open_end: Option<AgentId>,
    forward: Vec<Edge>,
    backward: Vec<Edge>,
}

impl<'g> PathSearch<'g> {
    fn new(graph: &'g ColoredGraph, want: Option<PathKind>) -> Self {
        PathSearch {
            graph,
            want,
            on_path: vec![false; graph.n_vertices()],
            open_end: None,
            forward: Vec::new(),
            backward: Vec::new(),
        }
    }

    fn run(&mut self) -> Option<Path> {
        let starts: Vec<Edge> = self.graph.improving.iter().copied().collect();
        for start in starts {
            if let Some(path) = self.search_from(start) {
                return Some(path);
            }
        }
        None
    }

    fn search_from(&mut self, start: Edge) -> Option<Path> {
        let (u, v) = start.endpoints();
        self.forward.clear();
        self.backward.clear();
        self.on_path.iter_mut().for_each(|b| *b = false);
        self.mark(u, true);
        self.mark(v, true);
        self.open_end = (!start.is_loop()).then_some(u);
        if !self.take_sq(v, Phase::Forward) {
            return None;
        }
        let mut edges: Vec<Edge> = self.backward.iter().rev().copied().collect();
        edges.push(start);
        edges.extend(self.forward.iter().copied());
        Some(Path::new(edges))
    }

    fn mark(&mut self, a: AgentId, on: bool) {
        let s = self.graph.slot(a);
        self.on_path[s] = on;
    }

    fn visited(&self, a: AgentId) -> bool {
        self.on_path[self.graph.slot(a)]
    }

    fn trail(&mut self, phase: Phase) -> &mut Vec<Edge> {
        match phase {
            Phase::Forward => &mut self.forward,
            Phase::Backward => &mut self.backward,
        }
    }

    /// `x` has its current-class edge on the path and needs its status-quo edge.
    fn take_sq(&mut self, x: AgentId, phase: Phase) -> bool {
        let e = self.graph.sq_edge_at(x);
        self.trail(phase).push(e);
        let found = if e.is_loop() {
            self.end_reached(phase)
        } else {
            let y = e.other(x);
            if phase == Phase::Forward && Some(y) == self.open_end {
                self.want != Some(PathKind::Linear)
            } else if self.visited(y) {
                false
            } else {
                self.mark(y, true);
                let ok = self.take_mi(y, phase);
                if !ok {
                    self.mark(y, false);
                }
                ok
            }
        };
        if !found {
            self.trail(phase).pop();
        }
        found
    }

    /// `y` has its status-quo edge on the path and needs a current-class edge.
    fn take_mi(&mut self, y: AgentId, phase: Phase) -> bool {
        let options: Vec<Edge> = self.graph.mi_edges_at(y).collect();
        for f in options {
            self.trail(phase).push(f);
            let found = if f.is_loop() {
                self.end_reached(phase)
            } else {
                let z = f.other(y);
                if self.visited(z) {
                    false
                } else {
                    self.mark(z, true);
                    let ok = self.take_sq(z, phase);
                    if !ok {
                        self.mark(z, false);
                    }
                    ok
                }
            };
            if found {
                return true;
            }
            self.trail(phase).pop();
        }
        false
    }

    /// The walk in `phase` just ended on a loop.
    fn end_reached(&mut self, phase: Phase) -> bool {
        if self.want == Some(PathKind::Cyclic) {
            return false;
        }
        match (phase, self.open_end) {
            (Phase::Forward, Some(u)) => self.take_sq(u, Phase::Backward),
            _ => true,
        }
    }
}

/// A blocking path of `mu`, if one exists.
pub fn find_blocking_path(market: &Market, mu: &Match) -> Option<Path> {
    find_blocking_path_of_kind(market, mu, None)
}

/// A blocking path of `mu` of the requested kind (any kind for `None`).
pub fn find_blocking_path_of_kind(market: &Market, mu: &Match, kind: Option<PathKind>) -> Option<Path> {
    let graph = build_blocking_graph(market, mu);
    PathSearch::new(&graph, kind).run()
}

/// All blocking paths with exactly two edges: a status-quo edge doubled by a
/// parallel improving edge.
pub fn length_two_blocking_paths(market: &Market, mu: &Match) -> Vec<Path> {
    let graph = build_blocking_graph(market, mu);
    graph
        .sq_edges
        .iter()
        .filter_map(|&sq| {
            let (a, b) = sq.endpoints();
            let twin = Edge::new(a, b, EdgeClass::Current);
            graph.is_improving(&twin).then(|| Path::new(vec![sq, twin]))
        })
        .collect()
}

/// Individually rational and free of blocking paths.
pub fn is_in_agreeable_core(market: &Market, mu: &Match) -> bool {
    let ir = is_individually_rational(market, mu);
    debug_assert!(
        !ir || length_two_blocking_paths(market, mu).is_empty(),
        "a two-edge blocking path implies a status-quo partner is preferred"
    );
    ir && find_blocking_path(market, mu).is_none()
}

/// Agents whose component in the union of the status quo and `mu` contains a
/// loop, i.e. lies on a linear complete alternating path.
pub fn free_agents(market: &Market, mu: &Match) -> BTreeSet<AgentId> {
    let n = market.n_agents();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let sq = market.status_quo();
    for a in market.agents() {
        for b in [sq.partner(a), mu.partner(a)] {
            let (ra, rb) = (root(&mut parent, market.slot(a)), root(&mut parent, market.slot(b)));
            parent[ra] = rb;
        }
    }
    let mut looped = vec![false; n];
    for a in market.agents() {
        if !sq.is_matched(a) || !mu.is_matched(a) {
            let r = root(&mut parent, market.slot(a));
            looped[r] = true;
        }
    }
    market
        .agents()
        .filter(|&a| looped[root(&mut parent, market.slot(a))])
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProposalRole {
    Source,
    Sink,
}

/// Which end of a linear path initiates proposals: a status-quo-matched
/// worker's loop or a status-quo-unmatched firm's loop is a source.
pub fn proposal_role(edge: &Edge, market: &Market) -> Result<ProposalRole> {
    if !edge.is_loop() {
        return Err(Error::NotALoop);
    }
    let (a, _) = edge.endpoints();
    let sq_matched = market.status_quo().is_matched(a);
    Ok(if sq_matched == a.is_worker() {
        ProposalRole::Source
    } else {
        ProposalRole::Sink
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(i: usize) -> AgentId {
        AgentId::worker(i)
    }
    fn f(i: usize) -> AgentId {
        AgentId::firm(i)
    }
    fn sq(a: AgentId, b: AgentId) -> Edge {
        Edge::new(a, b, EdgeClass::StatusQuo)
    }
    fn mi(a: AgentId, b: AgentId) -> Edge {
        Edge::new(a, b, EdgeClass::Current)
    }

    #[test]
    fn improving_edges_at_fig1_star() {
        let m = fixtures::regretted_contracts();
        let star = fixtures::regretted_contracts_star(&m);
        // 1 would rather be alone than with A; no pair and no other loop improves
        let got: Vec<Edge> = improving_edges(&m, &star).into_iter().collect();
        assert_eq!(got, vec![Edge::looped(w(0), EdgeClass::Current)]);
    }

    #[test]
    fn improving_edges_at_fig1_tilde_is_worker_two_loop() {
        let m = fixtures::regretted_contracts();
        let tilde = fixtures::regretted_contracts_tilde(&m);
        let got: Vec<Edge> = improving_edges(&m, &tilde).into_iter().collect();
        assert_eq!(got, vec![Edge::looped(w(1), EdgeClass::Current)]);
    }

    #[test]
    fn nothing_improves_a_top_choice_match() {
        let m = fixtures::mutual_top_pairs(3);
        let top = m.match_from_pairs(&[(w(0), f(0)), (w(1), f(1)), (w(2), f(2))]).unwrap();
        assert!(improving_edges(&m, &top).is_empty());
    }

    #[test]
    fn blocking_graph_at_status_quo() {
        let m = fixtures::regretted_contracts();
        let g = build_blocking_graph(&m, m.status_quo());
        let imp: Vec<Edge> = g.improving_edges().iter().copied().collect();
        let mut expected = vec![
            Edge::looped(w(0), EdgeClass::Current),
            Edge::looped(w(1), EdgeClass::Current),
            Edge::looped(f(1), EdgeClass::Current),
            mi(w(1), f(0)),
        ];
        expected.sort();
        assert_eq!(imp, expected);
        for e in [sq(w(0), f(0)), sq(w(1), f(1))] {
            assert!(g.contains_edge(&e));
            assert!(g.contains_edge(&Edge::new(e.a, e.b, EdgeClass::Current)));
        }
        for a in m.agents() {
            assert_eq!(g.sq_edges().iter().filter(|e| e.contains(a)).count(), 1);
            assert!(g.mi_edges_at(a).count() >= 1);
        }
    }

    #[test]
    fn empty_market_graph() {
        let m = crate::model::validate_market(&Default::default()).unwrap();
        let g = build_blocking_graph(&m, m.status_quo());
        assert_eq!(g.n_vertices(), 0);
        assert!(g.sq_edges().is_empty());
    }

    #[test]
    fn classify_examples() {
        let (a, b) = (w(0), f(0));
        let line = Path::new(vec![Edge::looped(a, EdgeClass::StatusQuo), mi(a, b), Edge::looped(b, EdgeClass::StatusQuo)]);
        assert_eq!(classify_path(&line), Ok(PathKind::Linear));

        let cycle = Path::new(vec![sq(w(0), f(0)), mi(f(0), w(1)), sq(w(1), f(1)), mi(f(1), w(0))]);
        assert_eq!(classify_path(&cycle), Ok(PathKind::Cyclic));

        let doubled = Path::new(vec![Edge::looped(a, EdgeClass::StatusQuo), Edge::looped(a, EdgeClass::Current)]);
        assert_eq!(classify_path(&doubled), Ok(PathKind::Linear));

        let broken = Path::new(vec![sq(w(0), f(0)), sq(w(0), f(0))]);
        assert_eq!(classify_path(&broken), Err(Error::NotCompleteAlternating));
        let open = Path::new(vec![sq(w(0), f(0)), mi(f(0), w(1))]);
        assert_eq!(classify_path(&open), Err(Error::NotCompleteAlternating));
    }

    #[test]
    fn path_match_examples() {
        let p = Path::new(vec![sq(w(0), f(0)), mi(w(0), f(0))]);
        let pm = path_match(&p).unwrap();
        assert_eq!(pm[&w(0)], f(0));
        assert_eq!(pm[&f(0)], w(0));

        let cycle = Path::new(vec![sq(w(0), f(0)), mi(f(0), w(1)), sq(w(1), f(1)), mi(f(1), w(0))]);
        let pm = path_match(&cycle).unwrap();
        assert_eq!(pm[&w(0)], f(1));
        assert_eq!(pm[&w(1)], f(0));

        assert_eq!(path_match(&Path::new(vec![sq(w(0), f(0))])), Err(Error::NotCompleteAlternating));
    }

    #[test]
    fn fig1_tilde_is_blocked_through_two_and_b() {
        let m = fixtures::regretted_contracts();
        let tilde = fixtures::regretted_contracts_tilde(&m);
        let p = find_blocking_path(&m, &tilde).expect("tilde is blocked");
        assert!(p.is_complete_alternating());
        assert_eq!(p.vertices(), BTreeSet::from([w(1), f(1)]));
        let pm = path_match(&p).unwrap();
        assert_eq!(pm[&w(1)], w(1));
        assert_eq!(pm[&f(1)], f(1));
        assert!(!is_in_agreeable_core(&m, &tilde));
    }

    #[test]
    fn fig1_star_has_no_blocking_path() {
        let m = fixtures::regretted_contracts();
        let star = fixtures::regretted_contracts_star(&m);
        assert!(find_blocking_path(&m, &star).is_none());
        assert!(is_in_agreeable_core(&m, &star));
    }

    #[test]
    fn fig2_core_membership() {
        let m = fixtures::no_lattice();
        let (star, tilde) = fixtures::no_lattice_matches(&m);
        assert!(is_in_agreeable_core(&m, &star));
        assert!(is_in_agreeable_core(&m, &tilde));
        let p = find_blocking_path(&m, m.status_quo()).expect("status quo is blocked");
        assert!(p.is_complete_alternating());
    }

    #[test]
    fn free_agent_examples() {
        let m = fixtures::no_lattice();
        let (star, _) = fixtures::no_lattice_matches(&m);
        assert!(free_agents(&m, &star).is_empty());

        let classic = m.without_status_quo();
        assert_eq!(free_agents(&classic, &star).len(), classic.n_agents());

        let fig1 = fixtures::regretted_contracts();
        let star1 = fixtures::regretted_contracts_star(&fig1);
        // 2 and B: component {2,B} has loops at 2 and B under star
        let free = free_agents(&fig1, &star1);
        assert!(free.contains(&w(1)) && free.contains(&f(1)));
        assert!(!free.contains(&w(0)));
    }

    #[test]
    fn proposal_roles() {
        let m = fixtures::regretted_contracts();
        assert_eq!(proposal_role(&Edge::looped(w(0), EdgeClass::StatusQuo), &m), Ok(ProposalRole::Source));
        assert_eq!(proposal_role(&Edge::looped(f(0), EdgeClass::Current), &m), Ok(ProposalRole::Sink));
        let classic = m.without_status_quo();
        assert_eq!(proposal_role(&Edge::looped(w(0), EdgeClass::StatusQuo), &classic), Ok(ProposalRole::Sink));
        assert_eq!(proposal_role(&Edge::looped(f(0), EdgeClass::StatusQuo), &classic), Ok(ProposalRole::Source));
        assert_eq!(proposal_role(&sq(w(0), f(0)), &m), Err(Error::NotALoop));
    }
}
