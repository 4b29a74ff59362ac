//! Ideal structure of Leavitt path algebras of finite directed graphs.
//!
//! Given a finitely presented graph ([`graph`]), this crate computes the
//! lattice of hereditary saturated vertex sets and admissible pairs
//! ([`lattice`]), cycle conditions ([`structure`]), the prime spectrum and
//! the maximal ideals ([`ideals`]), and offers exact monomial arithmetic
//! modulo the CK-1 relations ([`arith`]) as an algebraic cross-check.

pub mod arith;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideals;
pub mod lattice;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, EdgeId, VertexId, VertexKind, VertexSet};
