//! Prime and maximal ideals, described through the graph.
//!
//! Graded ideals are indexed by admissible pairs. Non-graded prime ideals
//! come in families `I(H, B_H) + <f(c)>` with `c` a cycle without (K) and
//! `f` ranging over irreducible Laurent polynomials; a family is reported
//! once, with the polynomial left symbolic.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::lattice::{
    breaking_vertices, enumerate_he, maximal_proper_elements, quotient_graph, AdmissiblePair, AdmissiblePairJson,
    EnumerationLimits, HereditarySaturatedSet, HsLattice,
};
use crate::structure::{condition_l, cycles_without_k, exitless_cycles, is_downward_directed, Cycle};

/// Placeholder for the irreducible polynomial parametrizing a family.
pub const POLYNOMIAL_TOKEN: &str = "irreducible f in K[x,x^-1]";

/// The ideals `I(H, B_H) + <f(c)>` for irreducible `f`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonGradedFamily {
    h: HereditarySaturatedSet,
    cycle: Cycle,
}

impl NonGradedFamily {
    /// `cycle` must be a cycle without (K) in `g` lying entirely outside `h`.
    pub fn new(g: &DirectedGraph, h: HereditarySaturatedSet, cycle: Cycle) -> Result<Self> {
        let h = HereditarySaturatedSet::new(g, h.into_set()).map_err(|e| Error::MalformedDescriptor(e.to_string()))?;
        cycle
            .validate(g)
            .map_err(|e| Error::MalformedDescriptor(e.to_string()))?;
        if !cycles_without_k(g).contains(&cycle) {
            return Err(Error::MalformedDescriptor(format!(
                "cycle [{}] is not a cycle without K",
                cycle.edge_names(g).join(" ")
            )));
        }
        if cycle.vertices(g).iter().any(|&v| h.as_set().contains(v)) {
            return Err(Error::MalformedDescriptor("cycle meets H".into()));
        }
        Ok(NonGradedFamily { h, cycle })
    }

    pub fn h(&self) -> &HereditarySaturatedSet {
        &self.h
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn to_json(&self, g: &DirectedGraph) -> FamilyJson {
        FamilyJson {
            h: self.h.as_set().names(g),
            cycle: self.cycle.edge_names(g),
        }
    }

    pub fn display(&self, g: &DirectedGraph) -> String {
        format!(
            "NonGraded({}, [{}], {POLYNOMIAL_TOKEN})",
            self.h.as_set().display(g),
            self.cycle.edge_names(g).join(" ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealDescriptor {
    Graded(AdmissiblePair),
    NonGraded(NonGradedFamily),
}

impl IdealDescriptor {
    pub fn h(&self) -> &HereditarySaturatedSet {
        match self {
            IdealDescriptor::Graded(p) => p.h(),
            IdealDescriptor::NonGraded(f) => f.h(),
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, IdealDescriptor::Graded(_))
    }

    pub fn to_json(&self, g: &DirectedGraph) -> DescriptorJson {
        match self {
            IdealDescriptor::Graded(p) => {
                let AdmissiblePairJson { h, s } = p.to_json(g);
                DescriptorJson {
                    kind: "graded",
                    h,
                    s: Some(s),
                    cycle: None,
                    poly: None,
                }
            }
            IdealDescriptor::NonGraded(f) => DescriptorJson {
                kind: "nongraded",
                h: f.h.as_set().names(g),
                s: None,
                cycle: Some(f.cycle.edge_names(g)),
                poly: Some(POLYNOMIAL_TOKEN),
            },
        }
    }

    pub fn display(&self, g: &DirectedGraph) -> String {
        match self {
            IdealDescriptor::Graded(p) => {
                format!("Graded({}, {})", p.h().as_set().display(g), p.s().display(g))
            }
            IdealDescriptor::NonGraded(f) => f.display(g),
        }
    }
}

impl Ord for IdealDescriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        use IdealDescriptor::*;
        self.h().cmp(other.h()).then_with(|| match (self, other) {
            (Graded(a), Graded(b)) => a.s().cmp(b.s()),
            (NonGraded(a), NonGraded(b)) => a.cycle.cmp(&b.cycle),
            (Graded(_), NonGraded(_)) => Ordering::Less,
            (NonGraded(_), Graded(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for IdealDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Serialize)]
pub struct DescriptorJson {
    pub kind: &'static str,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct FamilyJson {
    #[serde(rename = "H")]
    pub h: Vec<String>,
    pub cycle: Vec<String>,
}

/// Prime test by the three-clause classification:
/// (i) `I(H, B_H)` with `E^0 \ H` downward directed;
/// (ii) `I(H, B_H - {u})` with `E^0 \ H = M(u)`;
/// (iii) `I(H, B_H) + <f(c)>`, `c` a cycle without (K) based at `u`, with
/// `E^0 \ H = M(u)`.
///
/// Graded pairs whose `S` is neither `B_H` nor `B_H` minus one vertex are
/// not prime.
pub fn classify_prime(g: &DirectedGraph, d: &IdealDescriptor) -> Result<bool> {
    check_descriptor(g, d)?;
    let h = d.h().as_set();
    if h.len() == g.vertex_count() {
        // E^0 gives the whole algebra
        return Ok(false);
    }
    let rest = h.complement(g);
    match d {
        IdealDescriptor::Graded(p) => {
            let breaking = breaking_vertices(g, p.h())?;
            if p.s() == &breaking {
                return is_downward_directed(g, &rest);
            }
            let missing = breaking.difference(p.s());
            let only = missing.iter().next();
            match (missing.len(), only) {
                (1, Some(u)) if p.s().is_subset(&breaking) => Ok(rest == g.m_of(u)),
                _ => Ok(false),
            }
        }
        IdealDescriptor::NonGraded(f) => Ok(rest == g.m_of(f.cycle.base(g))),
    }
}

fn check_descriptor(g: &DirectedGraph, d: &IdealDescriptor) -> Result<()> {
    match d {
        IdealDescriptor::Graded(p) if !p.belongs_to(g) => Err(Error::MalformedDescriptor(
            "admissible pair belongs to another graph".into(),
        )),
        IdealDescriptor::Graded(_) => Ok(()),
        IdealDescriptor::NonGraded(f) => NonGradedFamily::new(g, f.h.clone(), f.cycle.clone()).map(|_| ()),
    }
}

/// All prime ideals, graded ones individually and non-graded ones per family.
pub fn enumerate_primes(g: &DirectedGraph, lat: &HsLattice) -> Result<Vec<IdealDescriptor>> {
    lat.check_graph(g)?;
    let without_k = cycles_without_k(g);
    let mut primes = Vec::new();
    for h in lat.proper() {
        let rest = h.as_set().complement(g);
        let breaking = breaking_vertices(g, h)?;
        if is_downward_directed(g, &rest)? {
            primes.push(IdealDescriptor::Graded(AdmissiblePair::new(
                g,
                h.clone(),
                breaking.clone(),
            )?));
        }
        for u in breaking.iter() {
            if rest == g.m_of(u) {
                let mut s = breaking.clone();
                s.remove(u);
                primes.push(IdealDescriptor::Graded(AdmissiblePair::new(g, h.clone(), s)?));
            }
        }
        for c in &without_k {
            let outside = c.vertices(g).iter().all(|&v| !h.as_set().contains(v));
            if outside && rest == g.m_of(c.base(g)) {
                primes.push(IdealDescriptor::NonGraded(NonGradedFamily {
                    h: h.clone(),
                    cycle: c.clone(),
                }));
            }
        }
    }
    primes.sort();
    Ok(primes)
}

/// `gr`: the largest graded ideal inside the described ideal.
pub fn gr_of(g: &DirectedGraph, d: &IdealDescriptor) -> Result<AdmissiblePair> {
    check_descriptor(g, d)?;
    match d {
        IdealDescriptor::Graded(p) => Ok(p.clone()),
        IdealDescriptor::NonGraded(f) => {
            if !classify_prime(g, d)? {
                return Err(Error::MalformedDescriptor(
                    "family does not describe prime ideals".into(),
                ));
            }
            AdmissiblePair::with_all_breaking(g, f.h.clone())
        }
    }
}

fn maximal_quotients(g: &DirectedGraph, lat: &HsLattice) -> Result<Vec<(AdmissiblePair, DirectedGraph)>> {
    lat.check_graph(g)?;
    maximal_proper_elements(lat)
        .into_iter()
        .map(|h| {
            let pair = AdmissiblePair::with_all_breaking(g, h)?;
            let quotient = quotient_graph(g, &pair)?;
            Ok((pair, quotient))
        })
        .collect()
}

/// `I(H, B_H)` is maximal exactly when `H` is maximal in `H_E` and the
/// quotient graph satisfies Condition (L).
pub fn maximal_graded_ideals(g: &DirectedGraph, lat: &HsLattice) -> Result<Vec<AdmissiblePair>> {
    Ok(maximal_quotients(g, lat)?
        .into_iter()
        .filter(|(_, q)| condition_l(q).holds)
        .map(|(p, _)| p)
        .collect())
}

/// One family per maximal `H` and exitless cycle of `E \ (H, B_H)`.
pub fn maximal_nongraded_families(g: &DirectedGraph, lat: &HsLattice) -> Result<Vec<NonGradedFamily>> {
    let mut families = Vec::new();
    for (pair, quotient) in maximal_quotients(g, lat)? {
        for c in exitless_cycles(&quotient) {
            let cycle = c.translate(&quotient, g)?;
            families.push(NonGradedFamily::new(g, pair.h().clone(), cycle)?);
        }
    }
    families.sort();
    Ok(families)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub graded_maximals: Vec<AdmissiblePair>,
    pub nongraded_maximal_families: Vec<NonGradedFamily>,
    /// `H_E` has a maximal element.
    pub exists_maximal: bool,
    /// Every proper member of `H_E` lies below a maximal one.
    pub every_ideal_below_maximal: bool,
    /// Every maximal `H` has a quotient satisfying Condition (L).
    pub every_maximal_graded: bool,
    /// Set only for exactly one graded maximal ideal and no non-graded family.
    pub unique_maximal: Option<IdealDescriptor>,
}

#[derive(Debug, Serialize)]
pub struct MaximalityReportJson {
    pub graded_maximals: Vec<AdmissiblePairJson>,
    pub nongraded_maximal_families: Vec<FamilyJson>,
    pub exists_maximal: bool,
    pub every_ideal_below_maximal: bool,
    pub every_maximal_graded: bool,
    pub unique_maximal: Option<DescriptorJson>,
}

impl MaximalityReport {
    pub fn to_json(&self, g: &DirectedGraph) -> MaximalityReportJson {
        MaximalityReportJson {
            graded_maximals: self.graded_maximals.iter().map(|p| p.to_json(g)).collect(),
            nongraded_maximal_families: self.nongraded_maximal_families.iter().map(|f| f.to_json(g)).collect(),
            exists_maximal: self.exists_maximal,
            every_ideal_below_maximal: self.every_ideal_below_maximal,
            every_maximal_graded: self.every_maximal_graded,
            unique_maximal: self.unique_maximal.as_ref().map(|d| d.to_json(g)),
        }
    }
}

pub fn existence_report(g: &DirectedGraph, limits: EnumerationLimits) -> Result<MaximalityReport> {
    let lat = enumerate_he(g, limits)?;
    report_for_lattice(g, &lat)
}

pub fn report_for_lattice(g: &DirectedGraph, lat: &HsLattice) -> Result<MaximalityReport> {
    let maximal = maximal_proper_elements(lat);
    let quotients = maximal_quotients(g, lat)?;
    let graded_maximals = maximal_graded_ideals(g, lat)?;
    let nongraded_maximal_families = maximal_nongraded_families(g, lat)?;

    let exists_maximal = !maximal.is_empty();
    let every_ideal_below_maximal = lat
        .proper()
        .all(|x| maximal.iter().any(|z| x.as_set().is_subset(z.as_set())));
    let every_maximal_graded = quotients.iter().all(|(_, q)| condition_l(q).holds);
    let unique_maximal = match (graded_maximals.as_slice(), nongraded_maximal_families.is_empty()) {
        ([only], true) => Some(IdealDescriptor::Graded(only.clone())),
        _ => None,
    };
    Ok(MaximalityReport {
        graded_maximals,
        nongraded_maximal_families,
        exists_maximal,
        every_ideal_below_maximal,
        every_maximal_graded,
        unique_maximal,
    })
}
