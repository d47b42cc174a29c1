#![allow(dead_code)]

pub mod brute;
pub mod kuratowski;

use apk::Graph;

/// Graph on `n` vertices whose edges are picked by `bits` in lexicographic
/// pair order.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
