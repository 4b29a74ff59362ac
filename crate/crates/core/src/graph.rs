//! Finitely presented directed graphs.
//!
//! A [`DirectedGraph`] has a finite vertex set, finitely many named edges and
//! finitely many omega bundles. An omega bundle `(src, dst)` stands for
//! countably many anonymous parallel edges from `src` to `dst`; it is how
//! infinite emitters are written down. Bundle edges take part in
//! reachability but never in paths, cycles or algebra monomials.
//!
//! Vertices and edges are kept in lexicographic order of their ids, and
//! [`VertexId`] / [`EdgeId`] index into that order. Every output derived
//! from a graph follows the same ordering.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: VertexId,
    pub dst: VertexId,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaBundle {
    pub src: VertexId,
    pub dst: VertexId,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexKind {
    Sink,
    Regular,
    InfiniteEmitter,
}

/// A set of vertices of one graph.
///
/// Sets are ordered by cardinality first and then lexicographically by
/// vertex order, so lattice listings run from `∅` up to `E^0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn full(g: &DirectedGraph) -> Self {
        (0..g.vertex_count()).map(VertexId).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    /// `E^0 \ self`.
    pub fn complement(&self, g: &DirectedGraph) -> VertexSet {
        VertexSet::full(g).difference(self)
    }

    pub fn names(&self, g: &DirectedGraph) -> Vec<String> {
        self.iter().map(|v| g.vertex_name(v).to_string()).collect()
    }

    pub fn from_names<S: AsRef<str>>(g: &DirectedGraph, names: &[S]) -> Result<Self> {
        names.iter().map(|n| g.vertex(n.as_ref())).collect()
    }

    pub fn display(&self, g: &DirectedGraph) -> String {
        format!("{{{}}}", self.names(g).join(","))
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Wire form of the graph document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: Vec<String>,
    edges: Vec<EdgeDocument>,
    #[serde(default)]
    omega_bundles: Vec<BundleDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDocument {
    id: String,
    src: String,
    dst: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDocument {
    src: String,
    dst: String,
}

/// An immutable, validated directed graph.
#[derive(Clone, Debug)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, EdgeId>,
    bundles: Vec<OmegaBundle>,
    out_edges: Vec<Vec<EdgeId>>,
    out_bundles: Vec<Vec<VertexId>>,
    // successors / predecessors over edges and bundles, deduplicated
    succ: Vec<Vec<VertexId>>,
    pred: Vec<Vec<VertexId>>,
    fingerprint: u64,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.bundles == other.bundles
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    /// Builds a graph from vertex ids, `(edge id, src, dst)` triples and
    /// `(src, dst)` bundle pairs. Input order does not matter.
    pub fn new<V, E, B>(vertices: V, edges: E, bundles: B) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
        B: IntoIterator<Item = (String, String)>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if names.iter().any(|v| v.is_empty()) {
            return Err(Error::EmptyVertexId);
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].clone()));
        }
        let vertex_index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i)))
            .collect();
        let lookup = |item: &str, v: &str| {
            vertex_index.get(v).copied().ok_or_else(|| Error::UnknownEndpoint {
                item: item.to_string(),
                vertex: v.to_string(),
            })
        };

        let mut edge_list = Vec::new();
        for (id, src, dst) in edges {
            if id.is_empty() {
                return Err(Error::EmptyEdgeId);
            }
            let item = format!("edge `{id}`");
            let src = lookup(&item, &src)?;
            let dst = lookup(&item, &dst)?;
            edge_list.push(Edge { id, src, dst });
        }
        edge_list.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = edge_list.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateEdge(w[0].id.clone()));
        }

        let mut bundle_list = Vec::new();
        for (src, dst) in bundles {
            let item = format!("omega bundle {src} -> {dst}");
            let s = lookup(&item, &src)?;
            let d = lookup(&item, &dst)?;
            bundle_list.push(OmegaBundle { src: s, dst: d });
        }
        bundle_list.sort();
        if let Some(w) = bundle_list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateBundle {
                src: names[w[0].src.0].clone(),
                dst: names[w[0].dst.0].clone(),
            });
        }

        let n = names.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut out_bundles = vec![Vec::new(); n];
        let mut succ: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        let mut pred: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
        for (i, e) in edge_list.iter().enumerate() {
            out_edges[e.src.0].push(EdgeId(i));
            succ[e.src.0].insert(e.dst);
            pred[e.dst.0].insert(e.src);
        }
        for b in &bundle_list {
            out_bundles[b.src.0].push(b.dst);
            succ[b.src.0].insert(b.dst);
            pred[b.dst.0].insert(b.src);
        }
        let edge_index = edge_list
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), EdgeId(i)))
            .collect();

        let mut hasher = DefaultHasher::new();
        names.hash(&mut hasher);
        for e in &edge_list {
            (&e.id, e.src, e.dst).hash(&mut hasher);
        }
        bundle_list.hash(&mut hasher);

        Ok(DirectedGraph {
            vertices: names,
            vertex_index,
            edges: edge_list,
            edge_index,
            bundles: bundle_list,
            out_edges,
            out_bundles,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            pred: pred.into_iter().map(|s| s.into_iter().collect()).collect(),
            fingerprint: hasher.finish(),
        })
    }

    /// Parses the JSON graph document. Unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        DirectedGraph::new(
            doc.vertices,
            doc.edges.into_iter().map(|e| (e.id, e.src, e.dst)),
            doc.omega_bundles.into_iter().map(|b| (b.src, b.dst)),
        )
    }

    /// Canonical JSON document; `parse(to_json(g)) == g`.
    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    src: self.vertex_name(e.src).to_string(),
                    dst: self.vertex_name(e.dst).to_string(),
                })
                .collect(),
            omega_bundles: self
                .bundles
                .iter()
                .map(|b| BundleDocument {
                    src: self.vertex_name(b.src).to_string(),
                    dst: self.vertex_name(b.dst).to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph document serializes")
    }

    /// Identifies the graph structure; values tied to a graph carry it.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edges.len()
    }

    pub fn bundles(&self) -> &[OmegaBundle] {
        &self.bundles
    }

    /// Named edges leaving `v`, in edge-id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// Targets of the omega bundles leaving `v`.
    pub fn bundle_targets(&self, v: VertexId) -> &[VertexId] {
        &self.out_bundles[v.0]
    }

    /// Distinct successors over named edges and bundles.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.succ[v.0]
    }

    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.pred[v.0]
    }

    pub fn vertex_kind(&self, v: VertexId) -> VertexKind {
        if !self.out_bundles[v.0].is_empty() {
            VertexKind::InfiniteEmitter
        } else if self.out_edges[v.0].is_empty() {
            VertexKind::Sink
        } else {
            VertexKind::Regular
        }
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.vertex_kind(v) == VertexKind::Regular
    }

    /// `u ≥ v`: a directed path of length ≥ 0 leads from `u` to `v`.
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        u == v || self.descendants(u).contains(v)
    }

    /// Everything reachable from `v`, including `v`.
    pub fn descendants(&self, v: VertexId) -> VertexSet {
        self.closure_from(std::iter::once(v), &self.succ)
    }

    /// `M(v)`: every vertex that reaches `v`.
    pub fn m_of(&self, v: VertexId) -> VertexSet {
        self.closure_from(std::iter::once(v), &self.pred)
    }

    /// Forward closure of a set.
    pub fn forward_closure(&self, start: &VertexSet) -> VertexSet {
        self.closure_from(start.iter(), &self.succ)
    }

    fn closure_from(&self, start: impl Iterator<Item = VertexId>, adj: &[Vec<VertexId>]) -> VertexSet {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        for v in start {
            if !seen[v.0] {
                seen[v.0] = true;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u.0] {
                if !seen[w.0] {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, s)| **s)
            .map(|(i, _)| VertexId(i))
            .collect()
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.iter().all(|v| self.has_vertex(v)) {
            Ok(())
        } else {
            Err(Error::ForeignVertexSet)
        }
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} edges, {} omega bundles",
            self.vertices.len(),
            self.edges.len(),
            self.bundles.len()
        )
    }
}
