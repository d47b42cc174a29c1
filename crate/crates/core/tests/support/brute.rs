//! Naive exhaustive searches, written independently of the library oracle
//! so the two can be compared. Only suitable for small graphs.

use std::collections::BTreeSet;

use apk::Graph;

/// Every cycle length, by enumerating simple paths from each vertex that
/// only visit larger vertices and closing back to the start.
pub fn spectrum(g: &Graph) -> BTreeSet<usize> {
    let n = g.n();
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; n + 1];
    for start in 1..=n {
        on_path[start] = true;
        walk(g, start, start, 1, &mut on_path, &mut found);
        on_path[start] = false;
    }
    found
}

fn walk(g: &Graph, start: usize, cur: usize, len: usize, on_path: &mut [bool], found: &mut BTreeSet<usize>) {
    for &w in g.neighbors(cur) {
        if w == start && len >= 3 {
            found.insert(len);
        }
        if w > start && !on_path[w] {
            on_path[w] = true;
            walk(g, start, w, len + 1, on_path, found);
            on_path[w] = false;
        }
    }
}

/// Whether a Hamiltonian path joins `u` and `v`.
pub fn has_hamiltonian_path(g: &Graph, u: usize, v: usize) -> bool {
    let n = g.n();
    let mut seen = vec![false; n + 1];
    seen[u] = true;
    path_from(g, u, v, 1, &mut seen)
}

fn path_from(g: &Graph, cur: usize, target: usize, count: usize, seen: &mut [bool]) -> bool {
    if cur == target {
        return count == g.n();
    }
    for &w in g.neighbors(cur) {
        if !seen[w] {
            seen[w] = true;
            if path_from(g, w, target, count + 1, seen) {
                return true;
            }
            seen[w] = false;
        }
    }
    false
}
