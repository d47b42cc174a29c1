use super::{Edge, Graph, Vertex};

/// Number of internally vertex-disjoint `s`–`t` paths, capped at `limit`.
///
/// Unit-capacity max-flow on the split graph: each vertex `v` becomes
/// `v_in -> v_out` with capacity 1, except `s` and `t`. The search stops
/// once `limit` augmenting paths are found.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    assert_ne!(s, t);
    let n = g.n();
    // node ids: v_in = 2(v-1), v_out = 2(v-1)+1
    let vin = |v: Vertex| 2 * (v - 1);
    let vout = |v: Vertex| 2 * (v - 1) + 1;
    let mut net = FlowNet::new(2 * n);
    for v in g.vertices() {
        let cap = if v == s || v == t { limit } else { 1 };
        net.add_arc(vin(v), vout(v), cap);
    }
    for e in g.edges() {
        net.add_arc(vout(e.u), vin(e.v), 1);
        net.add_arc(vout(e.v), vin(e.u), 1);
    }
    let (source, sink) = (vout(s), vin(t));
    let mut flow = 0;
    while flow < limit && net.augment(source, sink) {
        flow += 1;
    }
    flow
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, a: usize, b: usize, c: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// One BFS augmentation of a single unit.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut queue = std::collections::VecDeque::from([s]);
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &arc in &self.head[x] {
                let y = self.to[arc];
                if self.cap[arc] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = arc;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut x = t;
        while x != s {
            let arc = via[x];
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            x = self.to[arc ^ 1];
        }
        true
    }
}

/// Exact k-connectivity: at least `k + 1` vertices and, by Menger, at least
/// `k` internally disjoint paths between every nonadjacent pair.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    assert!(k >= 1, "k must be positive");
    let n = g.n();
    if n < k + 1 {
        return false;
    }
    if g.min_degree() < k || !g.is_connected() {
        return false;
    }
    for s in g.vertices() {
        for t in s + 1..=n {
            if !g.has_edge(s, t) && local_connectivity(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}

/// Edge sets of the biconnected components (blocks), via Tarjan's
/// lowpoint recursion made iterative. Isolated vertices yield no block.
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<Edge>> {
    let n = g.n();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<Edge> = Vec::new();

    for root in g.vertices() {
        if disc[root] != 0 {
            continue;
        }
        time += 1;
        disc[root] = time;
        low[root] = time;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, 0, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.neighbors(v).len() {
                top.2 += 1;
                let w = g.neighbors(v)[idx];
                if disc[w] == 0 {
                    edge_stack.push(Edge::new(v, w));
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push(Edge::new(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != 0 {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let split = Edge::new(parent, v);
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == split {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}
