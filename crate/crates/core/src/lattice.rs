//! Hereditary saturated vertex sets, the lattice `H_E`, breaking vertices,
//! admissible pairs and quotient graphs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId, VertexKind, VertexSet};

/// A vertex set that is closed under reachability (hereditary) and contains
/// every regular vertex whose edges all land inside it (saturated).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HereditarySaturatedSet(VertexSet);

impl HereditarySaturatedSet {
    pub fn new(g: &DirectedGraph, set: VertexSet) -> Result<Self> {
        g.check_set(&set)?;
        if is_hereditary(g, &set) && is_saturated(g, &set) {
            Ok(HereditarySaturatedSet(set))
        } else {
            Err(Error::NotHereditarySaturated)
        }
    }

    pub fn from_names<S: AsRef<str>>(g: &DirectedGraph, names: &[S]) -> Result<Self> {
        Self::new(g, VertexSet::from_names(g, names)?)
    }

    pub fn as_set(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_set(self) -> VertexSet {
        self.0
    }

    fn recheck(&self, g: &DirectedGraph) -> Result<()> {
        Self::new(g, self.0.clone()).map(|_| ())
    }
}

pub fn is_hereditary(g: &DirectedGraph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.successors(v).iter().all(|&w| set.contains(w)))
}

/// Only regular vertices are ever forced in; sinks and infinite emitters
/// are not.
pub fn is_saturated(g: &DirectedGraph, set: &VertexSet) -> bool {
    g.vertex_ids()
        .filter(|&v| g.is_regular(v) && !set.contains(v))
        .all(|v| g.out_edges(v).iter().any(|&e| !set.contains(g.edge(e).dst)))
}

/// Least hereditary superset of `set`.
pub fn hereditary_closure(g: &DirectedGraph, set: &VertexSet) -> Result<VertexSet> {
    g.check_set(set)?;
    Ok(g.forward_closure(set))
}

/// Least hereditary saturated superset of `set`.
pub fn hs_closure(g: &DirectedGraph, set: &VertexSet) -> Result<HereditarySaturatedSet> {
    let mut current = hereditary_closure(g, set)?;
    loop {
        let forced: Vec<VertexId> = g
            .vertex_ids()
            .filter(|&v| {
                g.is_regular(v)
                    && !current.contains(v)
                    && g.out_edges(v).iter().all(|&e| current.contains(g.edge(e).dst))
            })
            .collect();
        if forced.is_empty() {
            return Ok(HereditarySaturatedSet(current));
        }
        for v in forced {
            current.insert(v);
        }
        current = g.forward_closure(&current);
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest admissible `|H_E|`.
    pub max_sets: usize,
    /// Largest vertex count for exact enumeration (at most 64).
    pub max_vertices: usize,
}

pub const MASK_BITS: usize = 64;

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_sets: 1 << 20,
            max_vertices: 20,
        }
    }
}

/// The complete lattice `H_E` of one graph, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct HsLattice {
    fingerprint: u64,
    vertex_count: usize,
    sets: Vec<HereditarySaturatedSet>,
    maximal_proper: Vec<HereditarySaturatedSet>,
}

#[derive(Debug, Serialize)]
pub struct HsLatticeJson {
    pub sets: Vec<Vec<String>>,
    pub maximal_proper: Vec<Vec<String>>,
}

impl HsLattice {
    /// All members, from `∅` up to `E^0`.
    pub fn sets(&self) -> &[HereditarySaturatedSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &VertexSet) -> bool {
        self.sets.binary_search_by(|h| h.as_set().cmp(set)).is_ok()
    }

    pub fn is_top(&self, h: &HereditarySaturatedSet) -> bool {
        h.as_set().len() == self.vertex_count
    }

    /// Members other than `E^0`.
    pub fn proper(&self) -> impl Iterator<Item = &HereditarySaturatedSet> {
        self.sets.iter().filter(|h| !self.is_top(h))
    }

    pub fn meet(&self, a: &HereditarySaturatedSet, b: &HereditarySaturatedSet) -> HereditarySaturatedSet {
        HereditarySaturatedSet(a.as_set().intersection(b.as_set()))
    }

    pub fn join(
        &self,
        g: &DirectedGraph,
        a: &HereditarySaturatedSet,
        b: &HereditarySaturatedSet,
    ) -> Result<HereditarySaturatedSet> {
        self.check_graph(g)?;
        hs_closure(g, &a.as_set().union(b.as_set()))
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub(crate) fn check_graph(&self, g: &DirectedGraph) -> Result<()> {
        if g.fingerprint() == self.fingerprint {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub fn to_json(&self, g: &DirectedGraph) -> HsLatticeJson {
        HsLatticeJson {
            sets: self.sets.iter().map(|h| h.as_set().names(g)).collect(),
            maximal_proper: self.maximal_proper.iter().map(|h| h.as_set().names(g)).collect(),
        }
    }
}

// Bitmask view of a graph for enumeration.
struct MaskGraph {
    below: Vec<u64>,
    regular_targets: Vec<Option<u64>>,
    full: u64,
}

impl MaskGraph {
    fn new(g: &DirectedGraph) -> Self {
        let bits = |s: &VertexSet| s.iter().fold(0u64, |m, v| m | 1 << v.0);
        let n = g.vertex_count();
        MaskGraph {
            below: g.vertex_ids().map(|v| bits(&g.descendants(v))).collect(),
            regular_targets: g
                .vertex_ids()
                .map(|v| {
                    g.is_regular(v)
                        .then(|| g.out_edges(v).iter().fold(0u64, |m, &e| m | 1 << g.edge(e).dst.0))
                })
                .collect(),
            full: if n == MASK_BITS { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    fn hereditary(&self, mut set: u64) -> u64 {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            set |= self.below[v];
        }
        set
    }

    fn closure(&self, set: u64) -> u64 {
        let mut set = self.hereditary(set);
        loop {
            let mut grown = set;
            for (v, targets) in self.regular_targets.iter().enumerate() {
                if let Some(t) = targets {
                    if grown & (1 << v) == 0 && t & !grown == 0 {
                        grown |= 1 << v;
                    }
                }
            }
            if grown == set {
                return set;
            }
            set = self.hereditary(grown);
        }
    }

    fn to_set(&self, mask: u64) -> VertexSet {
        (0..MASK_BITS).filter(|i| mask & (1 << i) != 0).map(VertexId).collect()
    }
}

/// Enumerates every hereditary saturated set exactly.
///
/// Starting from the closure of `∅`, each member `H` spawns the closures of
/// `H ∪ {v}`; every member is reached this way because adding its own
/// vertices one at a time never leaves it. The result coincides with the
/// set of closures of all vertex subsets.
pub fn enumerate_he(g: &DirectedGraph, limits: EnumerationLimits) -> Result<HsLattice> {
    let n = g.vertex_count();
    let limit = limits.max_vertices.min(MASK_BITS);
    if n > limit {
        return Err(Error::TooManyVertices { count: n, limit });
    }
    let masks = MaskGraph::new(g);
    let bottom = masks.closure(0);
    let mut seen: HashSet<u64> = HashSet::from([bottom]);
    let mut queue = VecDeque::from([bottom]);
    let mut maximal = Vec::new();
    while let Some(h) = queue.pop_front() {
        let mut only_top_above = h != masks.full;
        for v in 0..n {
            if h & (1 << v) != 0 {
                continue;
            }
            let k = masks.closure(h | 1 << v);
            if k != masks.full {
                only_top_above = false;
            }
            if seen.insert(k) {
                if seen.len() > limits.max_sets {
                    return Err(Error::LatticeCapExceeded { cap: limits.max_sets });
                }
                queue.push_back(k);
            }
        }
        if only_top_above {
            maximal.push(h);
        }
    }

    let to_sorted = |masks_in: Vec<u64>| {
        let sorted: BTreeSet<VertexSet> = masks_in.into_iter().map(|m| masks.to_set(m)).collect();
        sorted.into_iter().map(HereditarySaturatedSet).collect::<Vec<_>>()
    };
    Ok(HsLattice {
        fingerprint: g.fingerprint(),
        vertex_count: n,
        sets: to_sorted(seen.into_iter().collect()),
        maximal_proper: to_sorted(maximal),
    })
}

/// Members `H ≠ E^0` with nothing strictly between `H` and `E^0`.
pub fn maximal_proper_elements(lat: &HsLattice) -> Vec<HereditarySaturatedSet> {
    lat.maximal_proper.clone()
}

/// `B_H`: infinite emitters outside `H` that send at least one, and finitely
/// many, edges outside `H`. A bundle counts as infinitely many edges, so
/// every bundle of a breaking vertex must land in `H`.
pub fn breaking_vertices(g: &DirectedGraph, h: &HereditarySaturatedSet) -> Result<VertexSet> {
    h.recheck(g)?;
    let inside = h.as_set();
    Ok(g.vertex_ids()
        .filter(|&w| {
            g.vertex_kind(w) == VertexKind::InfiniteEmitter
                && !inside.contains(w)
                && g.bundle_targets(w).iter().all(|&t| inside.contains(t))
                && g.out_edges(w).iter().any(|&e| !inside.contains(g.edge(e).dst))
        })
        .collect())
}

/// `(H, S)` with `S ⊆ B_H`; indexes the graded ideal `I(H, S)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissiblePair {
    h: HereditarySaturatedSet,
    s: VertexSet,
    fingerprint: u64,
}

#[derive(Debug, Serialize)]
pub struct AdmissiblePairJson {
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

impl AdmissiblePair {
    pub fn new(g: &DirectedGraph, h: HereditarySaturatedSet, s: VertexSet) -> Result<Self> {
        g.check_set(&s)?;
        let breaking = breaking_vertices(g, &h)?;
        if let Some(v) = s.iter().find(|&v| !breaking.contains(v)) {
            return Err(Error::NotAdmissible(g.vertex_name(v).to_string()));
        }
        Ok(AdmissiblePair {
            h,
            s,
            fingerprint: g.fingerprint(),
        })
    }

    /// `(H, B_H)`.
    pub fn with_all_breaking(g: &DirectedGraph, h: HereditarySaturatedSet) -> Result<Self> {
        let s = breaking_vertices(g, &h)?;
        Ok(AdmissiblePair {
            h,
            s,
            fingerprint: g.fingerprint(),
        })
    }

    pub fn h(&self) -> &HereditarySaturatedSet {
        &self.h
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn belongs_to(&self, g: &DirectedGraph) -> bool {
        self.fingerprint == g.fingerprint()
    }

    pub fn to_json(&self, g: &DirectedGraph) -> AdmissiblePairJson {
        AdmissiblePairJson {
            h: self.h.as_set().names(g),
            s: self.s.names(g),
        }
    }

    pub fn display(&self, g: &DirectedGraph) -> String {
        format!("({}, {})", self.h.as_set().display(g), self.s.display(g))
    }
}

/// `(H1, S1) ≤′ (H2, S2)` iff `H1 ⊆ H2` and `S1 ⊆ H2 ∪ S2`.
pub fn leq_prime(p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<bool> {
    if p1.fingerprint != p2.fingerprint {
        return Err(Error::GraphMismatch);
    }
    let h2 = p2.h.as_set();
    Ok(p1.h.as_set().is_subset(h2) && p1.s.iter().all(|v| h2.contains(v) || p2.s.contains(v)))
}

/// Every admissible pair of the lattice's graph, ordered by `(H, S)`.
pub fn admissible_pairs(g: &DirectedGraph, lat: &HsLattice) -> Result<Vec<AdmissiblePair>> {
    lat.check_graph(g)?;
    let mut pairs = Vec::new();
    for h in lat.sets() {
        let breaking: Vec<VertexId> = breaking_vertices(g, h)?.iter().collect();
        let k = breaking.len();
        let mut subsets: Vec<VertexSet> = (0..1u64 << k)
            .map(|bits| (0..k).filter(|i| bits & (1 << i) != 0).map(|i| breaking[i]).collect())
            .collect();
        subsets.sort();
        for s in subsets {
            pairs.push(AdmissiblePair {
                h: h.clone(),
                s,
                fingerprint: g.fingerprint(),
            });
        }
    }
    Ok(pairs)
}

fn fresh_prime(base: &str, taken: &HashSet<String>) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// The quotient graph `E \ (H, S)`.
///
/// Vertices are `E^0 \ H` plus a sink `v'` for each `v ∈ B_H \ S`. Edges are
/// those landing outside `H`, plus a copy `e'` from `s(e)` to `r(e)'` for
/// each edge landing in `B_H \ S`. Bundles landing outside `H` are kept, and
/// a bundle landing on `v ∈ B_H \ S` is copied as a bundle into `v'`.
pub fn quotient_graph(g: &DirectedGraph, p: &AdmissiblePair) -> Result<DirectedGraph> {
    if !p.belongs_to(g) {
        return Err(Error::GraphMismatch);
    }
    let h = p.h.as_set();
    let unbroken = breaking_vertices(g, &p.h)?.difference(&p.s);

    let mut vertex_names: HashSet<String> = h.complement(g).iter().map(|v| g.vertex_name(v).to_string()).collect();
    let mut edge_names: HashSet<String> = g
        .edges()
        .iter()
        .filter(|e| !h.contains(e.dst))
        .map(|e| e.id.clone())
        .collect();

    let mut primed_vertex = std::collections::HashMap::new();
    for v in unbroken.iter() {
        let name = fresh_prime(g.vertex_name(v), &vertex_names);
        vertex_names.insert(name.clone());
        primed_vertex.insert(v, name);
    }

    let mut edges: Vec<(String, String, String)> = Vec::new();
    for e in g.edges() {
        if h.contains(e.dst) {
            continue;
        }
        let src = g.vertex_name(e.src).to_string();
        edges.push((e.id.clone(), src.clone(), g.vertex_name(e.dst).to_string()));
        if let Some(target) = primed_vertex.get(&e.dst) {
            let id = fresh_prime(&e.id, &edge_names);
            edge_names.insert(id.clone());
            edges.push((id, src, target.clone()));
        }
    }
    let mut bundles = Vec::new();
    for b in g.bundles().iter().filter(|b| !h.contains(b.dst)) {
        let src = g.vertex_name(b.src).to_string();
        bundles.push((src.clone(), g.vertex_name(b.dst).to_string()));
        if let Some(target) = primed_vertex.get(&b.dst) {
            bundles.push((src, target.clone()));
        }
    }

    DirectedGraph::new(vertex_names, edges, bundles)
}
