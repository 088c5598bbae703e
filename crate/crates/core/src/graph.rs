//! Small directed-graph utilities over vertex indices `0..n`.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use std::collections::BTreeSet;

/// Strongly connected components, each sorted, ordered by smallest member.
pub fn strongly_connected_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, edges.len());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for &(a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| v.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort();
    comps
}

/// All simple directed cycles, each rotated to start at its smallest vertex,
/// sorted lexicographically. Parallel edges do not produce duplicate cycles.
///
/// Cycles are grown from each start vertex `s` through vertices larger than
/// `s` only, so every cycle is found exactly once from its minimum. The blocked
/// sets of Johnson's algorithm are omitted; the graphs handled here are small.
pub fn simple_cycles(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        adj[a].insert(b);
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend(s, s, &adj, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    out.sort();
    out
}

fn extend(
    start: usize,
    v: usize,
    adj: &[BTreeSet<usize>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    for &w in &adj[v] {
        if w == start {
            out.push(path.clone());
        } else if w > start && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            extend(start, w, adj, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}
