//! Exact arithmetic on linear combinations of monomials `αβ*`.
//!
//! Products are reduced with the CK-1 relations only (`e*e = r(e)`,
//! `e*f = 0` for `e ≠ f`), which amounts to the prefix rule for `β*γ`. CK-2
//! is never applied, so two elements equal in the Leavitt path algebra can
//! have different normal forms here: equality of normal forms is sound but
//! not complete. Bundle edges cannot occur in paths.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId, VertexId, VertexSet};
use crate::lattice::{breaking_vertices, HereditarySaturatedSet};

/// A path of named edges; an empty edge list is the vertex `source`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    source: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            source: v,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(g: &DirectedGraph, edges: Vec<EdgeId>) -> Result<Self> {
        let first = edges
            .first()
            .ok_or_else(|| Error::InvalidPath("empty edge list has no source".into()))?;
        if !g.has_edge(*first) {
            return Err(Error::InvalidPath(format!(
                "edge index {} is not in the graph",
                first.0
            )));
        }
        let path = Path {
            source: g.edge(*first).src,
            edges,
        };
        path.validate(g)?;
        Ok(path)
    }

    pub fn from_names<S: AsRef<str>>(g: &DirectedGraph, names: &[S]) -> Result<Self> {
        let edges = names
            .iter()
            .map(|n| g.edge_by_name(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Path::from_edges(g, edges)
    }

    pub fn validate(&self, g: &DirectedGraph) -> Result<()> {
        if !g.has_vertex(self.source) {
            return Err(Error::InvalidPath("source vertex is not in the graph".into()));
        }
        let mut at = self.source;
        for &e in &self.edges {
            if !g.has_edge(e) {
                return Err(Error::InvalidPath(format!("edge index {} is not in the graph", e.0)));
            }
            let edge = g.edge(e);
            if edge.src != at {
                return Err(Error::InvalidPath(format!(
                    "edge `{}` does not start at `{}`",
                    edge.id,
                    g.vertex_name(at)
                )));
            }
            at = edge.dst;
        }
        Ok(())
    }

    pub fn source(&self) -> VertexId {
        self.source
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

    pub fn range(&self, g: &DirectedGraph) -> VertexId {
        self.edges.last().map_or(self.source, |&e| g.edge(e).dst)
    }

    // Caller guarantees r(self) = s(tail).
    fn concat(&self, tail: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&tail.edges);
        Path {
            source: self.source,
            edges,
        }
    }

    /// `self = prefix · rest`, returning `rest`.
    fn strip_prefix(&self, g: &DirectedGraph, prefix: &Path) -> Option<Path> {
        if self.source != prefix.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            source: prefix.range(g),
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }
}

/// `coefficient · α β*` with `r(α) = r(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigRational,
    pub alpha: Path,
    pub beta: Path,
}

impl Monomial {
    pub fn new(g: &DirectedGraph, coefficient: BigRational, alpha: Path, beta: Path) -> Result<Self> {
        alpha.validate(g)?;
        beta.validate(g)?;
        if alpha.range(g) != beta.range(g) {
            return Err(Error::InvalidPath(format!(
                "α ends at `{}` but β ends at `{}`",
                g.vertex_name(alpha.range(g)),
                g.vertex_name(beta.range(g))
            )));
        }
        Ok(Monomial {
            coefficient,
            alpha,
            beta,
        })
    }

    /// `|α| - |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }
}

/// Finite linear combination of monomials in normal form: like terms merged,
/// zero terms dropped, ordered by `(α, β)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<(Path, Path), BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vertex(v: VertexId) -> Self {
        Self::from_parts(BigRational::one(), Path::vertex(v), Path::vertex(v))
    }

    pub fn edge(g: &DirectedGraph, e: EdgeId) -> Result<Self> {
        let path = Path::from_edges(g, vec![e])?;
        let end = Path::vertex(path.range(g));
        Ok(Self::from_parts(BigRational::one(), path, end))
    }

    pub fn ghost(g: &DirectedGraph, e: EdgeId) -> Result<Self> {
        let path = Path::from_edges(g, vec![e])?;
        let end = Path::vertex(path.range(g));
        Ok(Self::from_parts(BigRational::one(), end, path))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_parts(m.coefficient, m.alpha, m.beta)
    }

    fn from_parts(c: BigRational, alpha: Path, beta: Path) -> Self {
        let mut x = Self::zero();
        x.add_term(alpha, beta, c);
        x
    }

    fn add_term(&mut self, alpha: Path, beta: Path, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, beta);
        let sum = self.terms.remove(&key).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for ((a, b), k) in &self.terms {
            out.add_term(a.clone(), b.clone(), k * c);
        }
        out
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|((a, b), c)| Monomial {
            coefficient: c.clone(),
            alpha: a.clone(),
            beta: b.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if there is one. Zero has none.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.monomials().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Sources of all `α` and `β`; the sum of these vertices is a local unit
    /// for the element.
    pub fn support_vertices(&self) -> VertexSet {
        self.terms.keys().flat_map(|(a, b)| [a.source, b.source]).collect()
    }

    pub fn validate(&self, g: &DirectedGraph) -> Result<()> {
        for (a, b) in self.terms.keys() {
            Monomial::new(g, BigRational::one(), a.clone(), b.clone())?;
        }
        Ok(())
    }

    pub fn display(&self, g: &DirectedGraph) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    let _ = write!(out, "-{magnitude} ");
                } else if !magnitude.is_one() {
                    let _ = write!(out, "{magnitude} ");
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                if !magnitude.is_one() {
                    let _ = write!(out, "{magnitude} ");
                }
            }
            out.push_str(&monomial_word(g, a, b));
        }
        out
    }
}

fn monomial_word(g: &DirectedGraph, alpha: &Path, beta: &Path) -> String {
    if alpha.is_empty() && beta.is_empty() {
        return g.vertex_name(alpha.source).to_string();
    }
    let real = alpha.edges.iter().map(|&e| g.edge(e).id.clone());
    let ghost = beta.edges.iter().rev().map(|&e| format!("{}*", g.edge(e).id));
    real.chain(ghost).collect::<Vec<_>>().join(" ")
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

/// `(αβ*)(γδ*)`: `β*γ` survives only when one of `β`, `γ` extends the other.
fn multiply_monomials(
    g: &DirectedGraph,
    (alpha, beta): (&Path, &Path),
    (gamma, delta): (&Path, &Path),
) -> Option<(Path, Path)> {
    if let Some(sigma) = gamma.strip_prefix(g, beta) {
        // β*βσ = σ
        Some((alpha.concat(&sigma), delta.clone()))
    } else {
        // β*γ = (γτ)*γ = τ*
        beta.strip_prefix(g, gamma)
            .map(|tau| (alpha.clone(), delta.concat(&tau)))
    }
}

pub fn mul(g: &DirectedGraph, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.validate(g)?;
    y.validate(g)?;
    let mut out = AlgebraElement::zero();
    for ((a, b), c) in &x.terms {
        for ((gm, d), k) in &y.terms {
            if let Some((alpha, beta)) = multiply_monomials(g, (a, b), (gm, d)) {
                out.add_term(alpha, beta, c * k);
            }
        }
    }
    Ok(out)
}

pub fn degree(m: &Monomial) -> i64 {
    m.degree()
}

/// `v^H = v - Σ e e*` over edges `e` from `v` landing outside `H`.
pub fn v_h_element(g: &DirectedGraph, h: &HereditarySaturatedSet, v: VertexId) -> Result<AlgebraElement> {
    if !g.has_vertex(v) || !breaking_vertices(g, h)?.contains(v) {
        let name = if g.has_vertex(v) {
            g.vertex_name(v).to_string()
        } else {
            format!("#{}", v.0)
        };
        return Err(Error::NotBreakingVertex(name));
    }
    let mut x = AlgebraElement::vertex(v);
    for &e in g.out_edges(v) {
        if !h.as_set().contains(g.edge(e).dst) {
            let path = Path::from_edges(g, vec![e])?;
            x.add_term(path.clone(), path, -BigRational::one());
        }
    }
    Ok(x)
}

pub fn is_idempotent(g: &DirectedGraph, x: &AlgebraElement) -> Result<bool> {
    Ok(&mul(g, x, x)? == x)
}

/// Parses an element written as a sum of words.
///
/// Terms are separated by standalone `+` / `-` tokens. A term is an optional
/// rational coefficient (`3`, `-1/2`) followed by whitespace-separated
/// factors multiplied left to right: a vertex id, an edge id `e`, or a ghost
/// edge `e*`. A `|` token may separate the real and ghost parts and is
/// otherwise ignored, so `a b | c*` is `(ab)(c)*`. The word `0` is zero.
pub fn parse_element(g: &DirectedGraph, text: &str) -> Result<AlgebraElement> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::ElementSyntax("empty expression".into()));
    }
    let mut total = AlgebraElement::zero();
    let mut sign = BigRational::one();
    let mut term: Vec<&str> = Vec::new();
    let mut flush = |term: &mut Vec<&str>, sign: &BigRational| -> Result<()> {
        let value = parse_term(g, term)?;
        total = &total + &value.scale(sign);
        term.clear();
        Ok(())
    };
    for (i, tok) in tokens.iter().enumerate() {
        match *tok {
            "+" | "-" => {
                if i > 0 {
                    flush(&mut term, &sign)?;
                }
                sign = if *tok == "-" {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
            }
            _ => term.push(tok),
        }
    }
    flush(&mut term, &sign)?;
    Ok(total)
}

fn parse_term(g: &DirectedGraph, tokens: &[&str]) -> Result<AlgebraElement> {
    let mut factors = tokens.iter().filter(|t| **t != "|").peekable();
    let mut coefficient = BigRational::one();
    if let Some(first) = factors.peek() {
        if g.vertex(first).is_err() && g.edge_by_name(first).is_err() {
            if let Ok(c) = parse_rational(first) {
                coefficient = c;
                factors.next();
            }
        }
    }
    let mut value: Option<AlgebraElement> = None;
    for tok in factors {
        let factor = parse_factor(g, tok)?;
        value = Some(match value {
            None => factor,
            Some(acc) => mul(g, &acc, &factor)?,
        });
    }
    match value {
        Some(v) => Ok(v.scale(&coefficient)),
        None if coefficient.is_zero() => Ok(AlgebraElement::zero()),
        None => Err(Error::ElementSyntax(format!(
            "term `{}` has no vertex or edge",
            tokens.join(" ")
        ))),
    }
}

fn parse_rational(tok: &str) -> Result<BigRational> {
    let parsed = match tok.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok();
            let d = BigInt::from_str(d).ok().filter(|d| !d.is_zero());
            n.zip(d).map(|(n, d)| BigRational::new(n, d))
        }
        None => BigInt::from_str(tok).ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| Error::ElementSyntax(format!("`{tok}` is not a coefficient")))
}

fn parse_factor(g: &DirectedGraph, tok: &str) -> Result<AlgebraElement> {
    if let Some(name) = tok.strip_suffix('*') {
        let e = g
            .edge_by_name(name)
            .map_err(|_| Error::ElementSyntax(format!("`{name}` is not an edge")))?;
        return AlgebraElement::ghost(g, e);
    }
    match (g.vertex(tok), g.edge_by_name(tok)) {
        (Ok(_), Ok(_)) => Err(Error::ElementSyntax(format!("`{tok}` names both a vertex and an edge"))),
        (Ok(v), Err(_)) => Ok(AlgebraElement::vertex(v)),
        (Err(_), Ok(e)) => AlgebraElement::edge(g, e),
        (Err(_), Err(_)) => Err(Error::ElementSyntax(format!("unknown vertex or edge `{tok}`"))),
    }
}
