//! Cycle-level structure: simple cycles, exits, Conditions (L) and (K),
//! downward-directed sets and maximal tails.
//!
//! Condition checks do not enumerate cycles. An exitless cycle is a cycle
//! of vertices that each emit exactly one named edge and no bundle. A cycle
//! is without (K) exactly when its strongly connected component consists of
//! the cycle's vertices and edges and nothing else: any further edge between
//! members of the component closes a second cycle through one of them.
//! Bundles count as infinitely many parallel edges in both tests, so a bundle
//! inside a component always supplies extra cycles and exits.

use std::collections::HashMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, VertexId, VertexSet};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A cycle over named edges: a closed path that passes through no vertex
/// twice. Stored rotated so that the base is the least vertex on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn new(g: &DirectedGraph, edges: Vec<EdgeId>) -> Result<Self> {
        let cycle = Cycle { edges };
        cycle.validate(g)?;
        Ok(cycle.canonical(g))
    }

    pub fn from_names<S: AsRef<str>>(g: &DirectedGraph, names: &[S]) -> Result<Self> {
        let edges = names
            .iter()
            .map(|n| g.edge_by_name(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Cycle::new(g, edges)
    }

    /// Checks that the edges belong to `g`, compose, close up, and visit
    /// each vertex once.
    pub fn validate(&self, g: &DirectedGraph) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::InvalidCycle("a cycle needs at least one edge".into()));
        }
        if let Some(e) = self.edges.iter().find(|e| !g.has_edge(**e)) {
            return Err(Error::InvalidCycle(format!("edge index {} is not in the graph", e.0)));
        }
        let n = self.edges.len();
        let mut seen = VertexSet::new();
        for i in 0..n {
            let e = g.edge(self.edges[i]);
            let next = g.edge(self.edges[(i + 1) % n]);
            if e.dst != next.src {
                return Err(Error::InvalidCycle(format!(
                    "`{}` does not end where `{}` starts",
                    e.id, next.id
                )));
            }
            if !seen.insert(e.src) {
                return Err(Error::InvalidCycle(format!(
                    "vertex `{}` is visited twice",
                    g.vertex_name(e.src)
                )));
            }
        }
        Ok(())
    }

    fn canonical(mut self, g: &DirectedGraph) -> Self {
        let start = (0..self.edges.len())
            .min_by_key(|&i| g.edge(self.edges[i]).src)
            .unwrap_or(0);
        self.edges.rotate_left(start);
        self
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn base(&self, g: &DirectedGraph) -> VertexId {
        g.edge(self.edges[0]).src
    }

    /// Vertices in traversal order starting at the base.
    pub fn vertices(&self, g: &DirectedGraph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.edge(e).src).collect()
    }

    pub fn vertex_set(&self, g: &DirectedGraph) -> VertexSet {
        self.vertices(g).into_iter().collect()
    }

    pub fn edge_names(&self, g: &DirectedGraph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge(e).id.clone()).collect()
    }

    /// The same cycle expressed in another graph that shares its edge ids.
    pub fn translate(&self, from: &DirectedGraph, to: &DirectedGraph) -> Result<Cycle> {
        Cycle::from_names(to, &self.edge_names(from))
    }
}

/// Outcome of a graph condition check; `witness` is a violating cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    pub witness: Option<Cycle>,
}

#[derive(Debug, Serialize)]
pub struct ConditionReportJson {
    pub holds: bool,
    pub witness: Option<Vec<String>>,
}

impl ConditionReport {
    fn from_violations(mut violations: Vec<Cycle>) -> Self {
        if violations.is_empty() {
            ConditionReport {
                holds: true,
                witness: None,
            }
        } else {
            ConditionReport {
                holds: false,
                witness: Some(violations.swap_remove(0)),
            }
        }
    }

    pub fn to_json(&self, g: &DirectedGraph) -> ConditionReportJson {
        ConditionReportJson {
            holds: self.holds,
            witness: self.witness.as_ref().map(|c| c.edge_names(g)),
        }
    }
}

/// All simple cycles over named edges, deduplicated up to rotation and
/// sorted. Parallel edges give distinct cycles. Fails once more than `cap`
/// cycles have been found.
pub fn simple_cycles(g: &DirectedGraph, cap: usize) -> Result<Vec<Cycle>> {
    let n = g.vertex_count();
    let mut parallel: HashMap<(usize, usize), Vec<EdgeId>> = HashMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        parallel.entry((e.src.0, e.dst.0)).or_default().push(EdgeId(i));
        adj[e.src.0].push(e.dst.0);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }

    let mut found = Vec::new();
    for s in 0..n {
        let allowed = component_above(&adj, s);
        let mut search = Johnson {
            adj: &adj,
            allowed: &allowed,
            start: s,
            blocked: vec![false; n],
            blocked_by: vec![Vec::new(); n],
            stack: Vec::new(),
            parallel: &parallel,
            found: &mut found,
            cap,
        };
        search.circuit(s)?;
    }
    found.sort();
    Ok(found)
}

/// Strongly connected component of `s` in the subgraph on vertices `>= s`.
fn component_above(adj: &[Vec<usize>], s: usize) -> Vec<bool> {
    let n = adj.len();
    let mut radj = vec![Vec::new(); n];
    for (u, targets) in adj.iter().enumerate().skip(s) {
        for &w in targets {
            if w >= s {
                radj[w].push(u);
            }
        }
    }
    let sweep = |edges: &dyn Fn(usize) -> Vec<usize>| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for w in edges(u) {
                if w >= s && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let fwd = sweep(&|u| adj[u].clone());
    let bwd = sweep(&|u| radj[u].clone());
    fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
}

// Johnson's elementary circuit search rooted at `start`.
struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    allowed: &'a [bool],
    start: usize,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    parallel: &'a HashMap<(usize, usize), Vec<EdgeId>>,
    found: &'a mut Vec<Cycle>,
    cap: usize,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let adj = self.adj;
        for &w in adj[v].iter().filter(|&&w| self.allowed[w]) {
            if w == self.start {
                self.emit()?;
                closed = true;
            } else if !self.blocked[w] && self.circuit(w)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in adj[v].iter().filter(|&&w| self.allowed[w]) {
                if !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        Ok(closed)
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        while let Some(w) = self.blocked_by[u].pop() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    /// Expands the vertex circuit on the stack over all parallel edge choices.
    fn emit(&mut self) -> Result<()> {
        let k = self.stack.len();
        let choices: Vec<&Vec<EdgeId>> = (0..k)
            .map(|i| &self.parallel[&(self.stack[i], self.stack[(i + 1) % k])])
            .collect();
        let mut pick = vec![0usize; k];
        loop {
            if self.found.len() >= self.cap {
                return Err(Error::CycleCapExceeded { cap: self.cap });
            }
            self.found.push(Cycle {
                edges: (0..k).map(|i| choices[i][pick[i]]).collect(),
            });
            // odometer over the choice vector
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
}

/// An exit of `c` is an edge leaving a vertex of `c` other than the cycle's
/// own edge there; any omega bundle at a vertex of `c` is an exit.
pub fn has_exit(g: &DirectedGraph, c: &Cycle) -> Result<bool> {
    c.validate(g)?;
    Ok(c.vertices(g)
        .into_iter()
        .any(|v| g.out_edges(v).len() > 1 || !g.bundle_targets(v).is_empty()))
}

/// Cycles without exits, sorted.
pub fn exitless_cycles(g: &DirectedGraph) -> Vec<Cycle> {
    let n = g.vertex_count();
    let sole_edge: Vec<Option<EdgeId>> = g
        .vertex_ids()
        .map(|v| match (g.out_edges(v), g.bundle_targets(v)) {
            ([e], []) => Some(*e),
            _ => None,
        })
        .collect();
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut edges = Vec::new();
        let mut at = start;
        while let Some(e) = sole_edge[at] {
            edges.push(e);
            at = g.edge(e).dst.0;
            if at <= start || edges.len() > n {
                break;
            }
        }
        // keep each cycle once, from its least vertex
        if at == start && !edges.is_empty() {
            cycles.push(Cycle { edges });
        }
    }
    cycles.sort();
    cycles
}

pub fn condition_l(g: &DirectedGraph) -> ConditionReport {
    ConditionReport::from_violations(exitless_cycles(g))
}

/// Cycles none of whose vertices lies on a second, distinct cycle.
pub fn cycles_without_k(g: &DirectedGraph) -> Vec<Cycle> {
    let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(g.vertex_count(), 0);
    for _ in g.vertex_ids() {
        pg.add_node(());
    }
    for u in g.vertex_ids() {
        for &w in g.successors(u) {
            pg.add_edge(NodeIndex::new(u.0), NodeIndex::new(w.0), ());
        }
    }

    let mut cycles = Vec::new();
    for component in tarjan_scc(&pg) {
        let members: VertexSet = component.iter().map(|ix| VertexId(ix.index())).collect();
        let mut next: HashMap<VertexId, EdgeId> = HashMap::new();
        let isolated = members.iter().all(|v| {
            if g.bundle_targets(v).iter().any(|&t| members.contains(t)) {
                return false;
            }
            let mut inside = g.out_edges(v).iter().filter(|&&e| members.contains(g.edge(e).dst));
            match (inside.next(), inside.next()) {
                (Some(&e), None) => {
                    next.insert(v, e);
                    true
                }
                _ => false,
            }
        });
        if !isolated {
            continue;
        }
        let first = members.iter().next().expect("components are non-empty");
        let mut edges = Vec::with_capacity(members.len());
        let mut at = first;
        loop {
            let e = next[&at];
            edges.push(e);
            at = g.edge(e).dst;
            if at == first {
                break;
            }
        }
        cycles.push(Cycle { edges });
    }
    cycles.sort();
    cycles
}

/// Condition (K), decided through cycles without (K).
pub fn condition_k(g: &DirectedGraph) -> ConditionReport {
    ConditionReport::from_violations(cycles_without_k(g))
}

/// MT-3: any two members have a common descendant inside the set.
pub fn is_downward_directed(g: &DirectedGraph, set: &VertexSet) -> Result<bool> {
    g.check_set(set)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let below: Vec<VertexSet> = set.iter().map(|v| g.descendants(v).intersection(set)).collect();
    for (i, a) in below.iter().enumerate() {
        for b in &below[i + 1..] {
            if a.iter().all(|w| !b.contains(w)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// MT-1, MT-2 and MT-3.
pub fn is_maximal_tail(g: &DirectedGraph, set: &VertexSet) -> Result<bool> {
    g.check_set(set)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mt1 = set.iter().all(|v| g.m_of(v).is_subset(set));
    let mt2 = set.iter().filter(|&v| g.is_regular(v)).all(|v| {
        g.out_edges(v).iter().any(|&e| set.contains(g.edge(e).dst))
            || g.bundle_targets(v).iter().any(|&t| set.contains(t))
    });
    Ok(mt1 && mt2 && is_downward_directed(g, set)?)
}
