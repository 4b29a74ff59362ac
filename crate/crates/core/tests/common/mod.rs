//! Random graphs and brute-force oracles shared by the integration tests.
//!
//! The oracles work on [`Raw`], a plain edge-list copy of a graph, and never
//! call the library's own analysis code.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use lpa_ideals::arith::{AlgebraElement, Monomial, Path};
use lpa_ideals::graph::{DirectedGraph, EdgeId, VertexId, VertexSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_VERTICES: usize = 7;
pub const MAX_EDGES: usize = 14;

/// A random graph with 1..=7 vertices, 0..=14 named edges and, now and then,
/// one or two omega bundles.
pub fn random_graph(seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=MAX_VERTICES);
    let m = rng.gen_range(0..=MAX_EDGES);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..m)
        .map(|i| {
            let s = rng.gen_range(0..n);
            let d = rng.gen_range(0..n);
            (format!("e{i}"), vertices[s].clone(), vertices[d].clone())
        })
        .collect();
    let mut bundles = BTreeSet::new();
    if rng.gen_bool(0.3) {
        for _ in 0..rng.gen_range(1..=2) {
            bundles.insert((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    let bundles: Vec<(String, String)> = bundles
        .into_iter()
        .map(|(s, d)| (vertices[s].clone(), vertices[d].clone()))
        .collect();
    DirectedGraph::new(vertices.clone(), edges, bundles).expect("random graph is valid")
}

/// Edge-list copy of a graph. Every bundle becomes two anonymous parallel
/// edges, which is enough to witness exits and second closed paths.
#[derive(Clone, Debug)]
pub struct Raw {
    pub n: usize,
    pub named: Vec<(usize, usize)>,
    pub bundles: Vec<(usize, usize)>,
    pub expanded: Vec<(usize, usize)>,
}

impl Raw {
    pub fn of(g: &DirectedGraph) -> Raw {
        let named: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.src.0, e.dst.0)).collect();
        let bundles: Vec<(usize, usize)> = g.bundles().iter().map(|b| (b.src.0, b.dst.0)).collect();
        let mut expanded = named.clone();
        for &b in &bundles {
            expanded.push(b);
            expanded.push(b);
        }
        Raw {
            n: g.vertex_count(),
            named,
            bundles,
            expanded,
        }
    }

    fn out(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.expanded
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.0 == v)
            .map(|(i, e)| (i, e.1))
    }

    fn is_regular(&self, v: usize) -> bool {
        self.bundles.iter().all(|b| b.0 != v) && self.named.iter().any(|e| e.0 == v)
    }

    pub fn is_hereditary(&self, mask: u64) -> bool {
        self.expanded
            .iter()
            .all(|&(s, d)| mask & (1 << s) == 0 || mask & (1 << d) != 0)
    }

    pub fn is_saturated(&self, mask: u64) -> bool {
        (0..self.n).all(|v| {
            mask & (1 << v) != 0
                || !self.is_regular(v)
                || self.named.iter().any(|&(s, d)| s == v && mask & (1 << d) == 0)
        })
    }

    /// `H_E` by filtering every subset.
    pub fn brute_he(&self) -> BTreeSet<u64> {
        (0..1u64 << self.n)
            .filter(|&m| self.is_hereditary(m) && self.is_saturated(m))
            .collect()
    }

    pub fn reach(&self, from: usize) -> u64 {
        let mut seen = 1u64 << from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (_, d) in self.out(v) {
                if seen & (1 << d) == 0 {
                    seen |= 1 << d;
                    queue.push_back(d);
                }
            }
        }
        seen
    }

    /// All vertex-simple cycles of the expanded multigraph, as edge-index
    /// lists starting at their least vertex.
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for start in 0..self.n {
            let mut path = Vec::new();
            self.extend_cycle(start, start, 1 << start, &mut path, &mut out);
        }
        out
    }

    fn extend_cycle(&self, start: usize, at: usize, used: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (i, d) in self.out(at) {
            if d == start {
                path.push(i);
                out.push(path.clone());
                path.pop();
            } else if d > start && used & (1 << d) == 0 {
                path.push(i);
                self.extend_cycle(start, d, used | 1 << d, path, out);
                path.pop();
            }
        }
    }

    /// Some edge leaves a vertex of the cycle without being the cycle's own
    /// edge at that vertex.
    pub fn cycle_has_exit(&self, cycle: &[usize]) -> bool {
        cycle.iter().any(|&ci| {
            let v = self.expanded[ci].0;
            self.out(v).any(|(i, _)| i != ci)
        })
    }

    pub fn condition_l(&self) -> bool {
        self.simple_cycles().iter().all(|c| self.cycle_has_exit(c))
    }

    /// Number of closed simple paths based at `v` (paths from `v` back to
    /// `v` that do not pass through `v` in between), counted up to 2.
    ///
    /// If two exist, two exist of length at most `3n`: the shortest one is
    /// vertex-simple, and any other either is vertex-simple too or detours
    /// around a cycle away from `v`, which can be shortcut to `3n` edges.
    pub fn closed_paths_at(&self, v: usize) -> usize {
        // distance to v using only intermediate vertices other than v
        let mut dist = vec![usize::MAX; self.n];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &(s, d) in &self.expanded {
                if d == x && s != v && dist[s] == usize::MAX {
                    dist[s] = dist[x] + 1;
                    queue.push_back(s);
                }
            }
        }
        let mut count = 0;
        self.walk(v, v, 3 * self.n, &dist, &mut count);
        count
    }

    fn walk(&self, v: usize, at: usize, budget: usize, dist: &[usize], count: &mut usize) {
        for (_, d) in self.out(at) {
            if *count >= 2 {
                return;
            }
            if d == v {
                *count += 1;
            } else if dist[d] != usize::MAX && dist[d] < budget {
                self.walk(v, d, budget - 1, dist, count);
            }
        }
    }

    /// Condition (K): no vertex is the base of exactly one closed simple path.
    pub fn condition_k(&self) -> bool {
        (0..self.n).all(|v| self.closed_paths_at(v) != 1)
    }

    /// Every pair of members has a common lower bound in the set: something
    /// in the set that both reach.
    pub fn downward_directed(&self, set: u64) -> bool {
        let members: Vec<usize> = (0..self.n).filter(|v| set & (1 << v) != 0).collect();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| self.reach(a) & self.reach(b) & set != 0))
    }
}

pub fn mask_of(set: &VertexSet) -> u64 {
    set.iter().fold(0, |m, v| m | 1 << v.0)
}

pub fn set_of(mask: u64) -> VertexSet {
    (0..64).filter(|i| mask & (1 << i) != 0).map(VertexId).collect()
}

/// Random path over named edges from `start`, at most `max_len` long.
pub fn random_forward_path(g: &DirectedGraph, rng: &mut ChaCha8Rng, start: VertexId, max_len: usize) -> Path {
    let mut edges = Vec::new();
    let mut at = start;
    for _ in 0..rng.gen_range(0..=max_len) {
        let out = g.out_edges(at);
        if out.is_empty() {
            break;
        }
        let e = out[rng.gen_range(0..out.len())];
        edges.push(e);
        at = g.edge(e).dst;
    }
    if edges.is_empty() {
        Path::vertex(start)
    } else {
        Path::from_edges(g, edges).expect("walk is a path")
    }
}

/// Random path over named edges ending at `end`, at most `max_len` long.
pub fn random_backward_path(g: &DirectedGraph, rng: &mut ChaCha8Rng, end: VertexId, max_len: usize) -> Path {
    let mut rev: Vec<EdgeId> = Vec::new();
    let mut at = end;
    for _ in 0..rng.gen_range(0..=max_len) {
        let into: Vec<EdgeId> = (0..g.edges().len())
            .map(EdgeId)
            .filter(|&e| g.edge(e).dst == at)
            .collect();
        if into.is_empty() {
            break;
        }
        let e = into[rng.gen_range(0..into.len())];
        rev.push(e);
        at = g.edge(e).src;
    }
    if rev.is_empty() {
        Path::vertex(end)
    } else {
        rev.reverse();
        Path::from_edges(g, rev).expect("backward walk is a path")
    }
}

pub fn random_monomial(g: &DirectedGraph, rng: &mut ChaCha8Rng) -> Monomial {
    let start = VertexId(rng.gen_range(0..g.vertex_count()));
    let alpha = random_forward_path(g, rng, start, 3);
    let beta = random_backward_path(g, rng, alpha.range(g), 3);
    let num = rng.gen_range(-4i64..=4);
    let num = if num == 0 { 1 } else { num };
    let den = rng.gen_range(1i64..=3);
    let c = BigRational::new(BigInt::from(num), BigInt::from(den));
    Monomial::new(g, c, alpha, beta).expect("r(alpha) = r(beta)")
}

/// Sum of up to three random monomials.
pub fn random_element(g: &DirectedGraph, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let mut x = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        x = &x + &AlgebraElement::from_monomial(random_monomial(g, rng));
    }
    x
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
