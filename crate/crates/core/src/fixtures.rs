//! Named example graphs.
//!
//! `three_vertex_a` is `u` with two loops, `u -> v -> w`, and a loop `c` at `w`;
//! `three_vertex_b` reverses the first edge so that `v` feeds both `u` and `w`.
//! The two-loop chains are finite truncations of the infinite chains with two
//! loops `f_i, g_i` at every vertex `v_i`.

use crate::graph::DirectedGraph;

pub const THREE_VERTEX_A_JSON: &str = include_str!("../fixtures/paper-3v-A.json");
pub const THREE_VERTEX_B_JSON: &str = include_str!("../fixtures/paper-3v-B.json");
pub const OMEGA_JSON: &str = include_str!("../fixtures/omega.json");

pub fn three_vertex_a() -> DirectedGraph {
    DirectedGraph::parse(THREE_VERTEX_A_JSON).expect("fixture parses")
}

pub fn three_vertex_b() -> DirectedGraph {
    DirectedGraph::parse(THREE_VERTEX_B_JSON).expect("fixture parses")
}

/// `v` with a loop `f` and an omega bundle `v => w`.
pub fn omega_example() -> DirectedGraph {
    DirectedGraph::parse(OMEGA_JSON).expect("fixture parses")
}

pub fn single_sink() -> DirectedGraph {
    graph(&["v"], &[], &[])
}

/// One vertex `v` with one loop `l`.
pub fn single_loop() -> DirectedGraph {
    graph(&["v"], &[("l", "v", "v")], &[])
}

/// `u -> v` via edge `e`.
pub fn path2() -> DirectedGraph {
    graph(&["u", "v"], &[("e", "u", "v")], &[])
}

/// Vertices `v1..vn`, loops `f_i`, `g_i` at each `v_i`, and connecting
/// edges `e_i : v_{i+1} -> v_i`, or `e_i : v_i -> v_{i+1}` when `reversed`.
pub fn two_loop_chain(n: usize, reversed: bool) -> DirectedGraph {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((format!("f{i}"), format!("v{i}"), format!("v{i}")));
        edges.push((format!("g{i}"), format!("v{i}"), format!("v{i}")));
        if i < n {
            let (src, dst) = if reversed { (i, i + 1) } else { (i + 1, i) };
            edges.push((format!("e{i}"), format!("v{src}"), format!("v{dst}")));
        }
    }
    DirectedGraph::new(vertices, edges, []).expect("chain is valid")
}

pub fn graph(vertices: &[&str], edges: &[(&str, &str, &str)], bundles: &[(&str, &str)]) -> DirectedGraph {
    DirectedGraph::new(
        vertices.iter().map(|v| v.to_string()),
        edges
            .iter()
            .map(|(i, s, d)| (i.to_string(), s.to_string(), d.to_string())),
        bundles.iter().map(|(s, d)| (s.to_string(), d.to_string())),
    )
    .expect("fixture graph is valid")
}
