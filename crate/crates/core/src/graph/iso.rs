//! Isomorphism testing for small graphs: colour refinement on the disjoint
//! union, then backtracking over refined classes with adjacency checks.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use super::{Graph, Vertex};

/// Stable colours for the vertices of `graphs`, computed jointly so that
/// equal colours mean the same thing across graphs.
fn refine(graphs: &[&Graph]) -> Vec<Vec<usize>> {
    let mut colours: Vec<Vec<usize>> = graphs
        .iter()
        .map(|g| g.vertices().map(|v| g.degree(v)).collect())
        .collect();
    loop {
        let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut sigs = Vec::with_capacity(graphs.len());
        for (g, col) in graphs.iter().zip(&colours) {
            let s: Vec<(usize, Vec<usize>)> = g
                .vertices()
                .map(|v| {
                    let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| col[w - 1]).collect();
                    nb.sort_unstable();
                    (col[v - 1], nb)
                })
                .collect();
            for sig in &s {
                palette.entry(sig.clone()).or_insert(0);
            }
            sigs.push(s);
        }
        for (i, val) in palette.values_mut().enumerate() {
            *val = i;
        }
        let next: Vec<Vec<usize>> = sigs
            .iter()
            .map(|s| s.iter().map(|sig| palette[sig]).collect())
            .collect();
        let classes_before = distinct(&colours);
        let classes_after = distinct(&next);
        colours = next;
        if classes_after == classes_before {
            return colours;
        }
    }
}

fn distinct(colours: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colours.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Weisfeiler–Leman style invariant: equal for isomorphic graphs, used to
/// bucket candidates before exact testing.
pub fn wl_hash(g: &Graph) -> u64 {
    let mut col: Vec<u64> = g.vertices().map(|v| g.degree(v) as u64).collect();
    for _ in 0..4 {
        col = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<u64> = g.neighbors(v).iter().map(|&w| col[w - 1]).collect();
                nb.sort_unstable();
                let mut h = DefaultHasher::new();
                (col[v - 1], nb).hash(&mut h);
                h.finish()
            })
            .collect();
    }
    col.sort_unstable();
    let mut h = DefaultHasher::new();
    (g.n(), g.m(), col).hash(&mut h);
    h.finish()
}

/// A bijection `f` with `f[v - 1]` the image of `v` in `h`, mapping edges of
/// `g` onto edges of `h`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let colours = refine(&[g, h]);
    let (cg, ch) = (&colours[0], &colours[1]);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return None;
    }

    let order = search_order(g, cg);
    let mut state = Search {
        g,
        h,
        cg,
        ch,
        order: &order,
        map: vec![0; n + 1],
        used: vec![false; n + 1],
    };
    if state.extend(0) {
        Some(state.map[1..].to_vec())
    } else {
        None
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Start from the rarest colour class, then grow by BFS preferring vertices
/// with many already-placed neighbours.
fn search_order(g: &Graph, colour: &[usize]) -> Vec<Vertex> {
    let n = g.n();
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colour {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; n + 1];
    let mut links = vec![0usize; n + 1];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = g
            .vertices()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                (
                    links[v],
                    std::cmp::Reverse(class_size[&colour[v - 1]]),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    cg: &'a [usize],
    ch: &'a [usize],
    order: &'a [Vertex],
    map: Vec<Vertex>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        // candidates: if u has a mapped neighbour, restrict to its image's neighbours
        let anchor = self.g.neighbors(u).iter().copied().find(|&w| self.map[w] != 0);
        let candidates: Vec<Vertex> = match anchor {
            Some(w) => self.h.neighbors(self.map[w]).to_vec(),
            None => self.h.vertices().collect(),
        };
        for x in candidates {
            if self.used[x] || self.cg[u - 1] != self.ch[x - 1] || !self.consistent(depth, u, x) {
                continue;
            }
            self.map[u] = x;
            self.used[x] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[u] = 0;
            self.used[x] = false;
        }
        false
    }

    fn consistent(&self, depth: usize, u: Vertex, x: Vertex) -> bool {
        self.order[..depth].iter().all(|&w| {
            let y = self.map[w];
            self.g.has_edge(u, w) == self.h.has_edge(x, y)
        })
    }
}
