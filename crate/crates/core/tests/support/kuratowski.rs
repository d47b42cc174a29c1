//! Exhaustive search for a subdivision of K5 or K3,3. Exponential; only for
//! cross-checking the planarity test on small graphs.

use apk::{Graph, Vertex};

pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let n = g.n();
    let rich: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 4).collect();
    for set in subsets(&rich, 5) {
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((set[i], set[j]));
            }
        }
        if connect_all(g, &set, &pairs) {
            return true;
        }
    }
    let cubic: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    for set in subsets(&cubic, 6) {
        // side containing set[0]
        for others in subsets(&set[1..], 2) {
            let left: Vec<Vertex> = std::iter::once(set[0]).chain(others.iter().copied()).collect();
            let right: Vec<Vertex> = set.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(Vertex, Vertex)> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                .collect();
            if connect_all(g, &set, &pairs) {
                return true;
            }
        }
    }
    let _ = n;
    false
}

fn subsets(items: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[Vertex], k: usize, start: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn connect_all(g: &Graph, branch: &[Vertex], pairs: &[(Vertex, Vertex)]) -> bool {
    let mut used = vec![false; g.n() + 1];
    for &b in branch {
        used[b] = true;
    }
    route(g, pairs, 0, &mut used)
}

fn route(g: &Graph, pairs: &[(Vertex, Vertex)], idx: usize, used: &mut Vec<bool>) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (a, b) = pairs[idx];
    let mut path = Vec::new();
    paths_from(g, a, b, used, &mut path, &mut |used| route(g, pairs, idx + 1, used))
}

/// Enumerates a–b paths whose interior avoids `used`, calling `k` with the
/// interior marked; stops at the first success.
fn paths_from(
    g: &Graph,
    cur: Vertex,
    target: Vertex,
    used: &mut Vec<bool>,
    interior: &mut Vec<Vertex>,
    k: &mut dyn FnMut(&mut Vec<bool>) -> bool,
) -> bool {
    for &w in g.neighbors(cur) {
        if w == target {
            if k(used) {
                return true;
            }
        } else if !used[w] {
            used[w] = true;
            interior.push(w);
            if paths_from(g, w, target, used, interior, k) {
                return true;
            }
            interior.pop();
            used[w] = false;
        }
    }
    false
}
