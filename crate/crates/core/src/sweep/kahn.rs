use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::DirectedDual;

/// Nodes that never reached in-degree zero: the cyclic core and everything
/// downstream of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Toposort {
    Order(Vec<usize>),
    Cycle(CycleWitness),
}

impl Toposort {
    pub fn order(&self) -> Option<&[usize]> {
        match self {
            Toposort::Order(o) => Some(o),
            Toposort::Cycle(_) => None,
        }
    }
}

/// Kahn's algorithm, always dequeuing the smallest ready id.
pub fn kahn_toposort(dual: &DirectedDual) -> Toposort {
    let n = dual.n_nodes;
    let mut indeg = vec![0usize; n];
    let mut start = vec![0usize; n + 1];
    for &(a, b) in &dual.edges {
        start[a + 1] += 1;
        indeg[b] += 1;
    }
    for k in 0..n {
        start[k + 1] += start[k];
    }
    let mut fill = start.clone();
    let mut succ = vec![0usize; dual.edges.len()];
    for &(a, b) in &dual.edges {
        succ[fill[a]] = b;
        fill[a] += 1;
    }

    let mut ready: BinaryHeap<Reverse<usize>> = dual
        .nodes
        .iter()
        .filter(|&&v| indeg[v] == 0)
        .map(|&v| Reverse(v))
        .collect();
    let mut order = Vec::with_capacity(dual.nodes.len());
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &succ[start[v]..start[v + 1]] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() == dual.nodes.len() {
        Toposort::Order(order)
    } else {
        let nodes = dual.nodes.iter().copied().filter(|&v| indeg[v] > 0).collect();
        Toposort::Cycle(CycleWitness { nodes })
    }
}
