//! Directed arc graphs layered over an undirected host graph: acyclic
//! orientations with bounded indegree, plus the transitive/fraternal
//! augmentation step that densifies them between coloring rounds.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use crate::graph::Graph;

/// Augmentation flavor: unrestricted transitive/fraternal completion, or the
/// distance-truncated variant that delays arcs until the iteration matching
/// the sum of their witness weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Augmentation {
    Tfa,
    Dtfa,
}

/// Orientation used to seed the arc graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Degeneracy,
    Sandpile,
}

/// Acyclic orientation of (a supergraph of) the host graph's edges.
///
/// Invariants: at most one arc per unordered pair, no self-arcs, the arc set
/// stays acyclic, and each arc records the augmentation iteration that added
/// it (original edges carry weight 1).
#[derive(Debug, Clone)]
pub struct ArcGraph {
    out: Vec<Vec<(u32, u32)>>, // (target, weight), sorted by target
    inn: Vec<Vec<(u32, u32)>>, // (source, weight), sorted by source
    n_arcs: usize,
}

impl ArcGraph {
    pub fn new(n: usize) -> Self {
        ArcGraph {
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            n_arcs: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.n_arcs
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search_by_key(&v, |&(t, _)| t).is_ok()
    }

    pub fn has_arc_either(&self, u: u32, v: u32) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Inserts `u -> v` with the given weight. Returns false if either
    /// direction already exists.
    pub fn add_arc(&mut self, u: u32, v: u32, weight: u32) -> bool {
        debug_assert_ne!(u, v);
        if self.has_arc_either(u, v) {
            return false;
        }
        let pos = self.out[u as usize]
            .binary_search_by_key(&v, |&(t, _)| t)
            .unwrap_err();
        self.out[u as usize].insert(pos, (v, weight));
        let pos = self.inn[v as usize]
            .binary_search_by_key(&u, |&(s, _)| s)
            .unwrap_err();
        self.inn[v as usize].insert(pos, (u, weight));
        self.n_arcs += 1;
        true
    }

    pub fn out_arcs(&self, v: u32) -> &[(u32, u32)] {
        &self.out[v as usize]
    }

    pub fn in_arcs(&self, v: u32) -> &[(u32, u32)] {
        &self.inn[v as usize]
    }

    pub fn indegree(&self, v: u32) -> usize {
        self.inn[v as usize].len()
    }

    pub fn max_indegree(&self) -> usize {
        (0..self.n() as u32).map(|v| self.indegree(v)).max().unwrap_or(0)
    }

    /// Degree in the underlying undirected graph of the arcs.
    pub fn underlying_degree(&self, v: u32) -> usize {
        self.out[v as usize].len() + self.inn[v as usize].len()
    }

    /// Neighbors in the underlying undirected graph, sorted ascending.
    pub fn underlying_neighbors(&self, v: u32) -> Vec<u32> {
        let o = &self.out[v as usize];
        let i = &self.inn[v as usize];
        let mut merged = Vec::with_capacity(o.len() + i.len());
        let (mut a, mut b) = (0, 0);
        while a < o.len() && b < i.len() {
            if o[a].0 < i[b].0 {
                merged.push(o[a].0);
                a += 1;
            } else {
                merged.push(i[b].0);
                b += 1;
            }
        }
        merged.extend(o[a..].iter().map(|&(t, _)| t));
        merged.extend(i[b..].iter().map(|&(s, _)| s));
        merged
    }

    /// Topological order, smallest id first among ready vertices.
    /// The arc set is acyclic by construction, so this always succeeds.
    pub fn topological_order(&self) -> Vec<u32> {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n as u32).map(|v| self.indegree(v)).collect();
        let mut heap: BinaryHeap<Reverse<u32>> = (0..n as u32)
            .filter(|&v| indeg[v as usize] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &(t, _) in &self.out[v as usize] {
                indeg[t as usize] -= 1;
                if indeg[t as usize] == 0 {
                    heap.push(Reverse(t));
                }
            }
        }
        debug_assert_eq!(order.len(), n, "arc graph must stay acyclic");
        order
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().len() == self.n()
    }
}

/// Smallest-last (minimum residual degree, ties by smallest id) removal
/// order; returns `(order, degeneracy)` where order[i] is the i-th removed
/// vertex and degeneracy is the largest residual degree seen at removal.
pub fn smallest_last_order(g: &Graph) -> (Vec<u32>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: std::collections::BTreeSet<(usize, u32)> =
        (0..n as u32).map(|v| (deg[v as usize], v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some(&(d, v)) = queue.iter().next() {
        queue.remove(&(d, v));
        removed[v as usize] = true;
        degeneracy = degeneracy.max(d);
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                queue.remove(&(deg[w as usize], w));
                deg[w as usize] -= 1;
                queue.insert((deg[w as usize], w));
            }
        }
    }
    (order, degeneracy)
}

/// The degeneracy of `g` (max over the smallest-last order of the residual
/// degree at removal).
pub fn degeneracy(g: &Graph) -> usize {
    smallest_last_order(g).1
}

/// Orients every edge from its later-removed endpoint to its earlier-removed
/// endpoint under the smallest-last order. The max indegree of the result
/// equals the degeneracy of `g`.
pub fn orient_degeneracy(g: &Graph) -> ArcGraph {
    let (order, _) = smallest_last_order(g);
    let mut time = vec![0u32; g.n()];
    for (i, &v) in order.iter().enumerate() {
        time[v as usize] = i as u32;
    }
    let mut a = ArcGraph::new(g.n());
    for (u, v) in g.edges() {
        if time[u as usize] > time[v as usize] {
            a.add_arc(u, v, 1);
        } else {
            a.add_arc(v, u, 1);
        }
    }
    a
}

/// Chip-firing flavored orientation: starting from a fixed initial
/// orientation, any vertex whose indegree exceeds a threshold fires and
/// reverses its in-arcs; the threshold starts at half the average degree and
/// doubles whenever n consecutive firings fail to shrink the over-threshold
/// set. The stable state is then flattened into an acyclic orientation by
/// ordering vertices by stable indegree. If that ordering misses the
/// guaranteed bound of twice the degeneracy, a bounded-degree peeling pass
/// in the same priority order repairs it.
pub fn orient_sandpile(g: &Graph) -> ArcGraph {
    let n = g.n();
    let edges = g.edges();
    let m = edges.len();
    if m == 0 {
        return ArcGraph::new(n);
    }

    // heads[e] is the endpoint the arc currently points at.
    let mut heads: Vec<u32> = edges.iter().map(|&(u, _)| u).collect();
    let mut indeg = vec![0usize; n];
    let mut inc: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        indeg[u as usize] += 1;
        inc[u as usize].push(e as u32);
        inc[v as usize].push(e as u32);
    }

    let avg = 2.0 * m as f64 / n as f64;
    let mut threshold = (avg / 2.0).ceil().max(1.0) as usize;
    let mut over: std::collections::BTreeSet<u32> = (0..n as u32)
        .filter(|&v| indeg[v as usize] > threshold)
        .collect();
    let mut best_over = over.len();
    let mut stall = 0usize;
    let fire_cap = 200 * n + 10 * m;
    let mut fires = 0usize;

    while let Some(&v) = over.iter().next() {
        fires += 1;
        if fires > fire_cap {
            break;
        }
        for &e in &inc[v as usize] {
            if heads[e as usize] == v {
                let (a, b) = edges[e as usize];
                let u = if a == v { b } else { a };
                heads[e as usize] = u;
                indeg[u as usize] += 1;
                if indeg[u as usize] > threshold {
                    over.insert(u);
                }
            }
        }
        indeg[v as usize] = 0;
        over.remove(&v);
        if over.len() < best_over {
            best_over = over.len();
            stall = 0;
        } else {
            stall += 1;
            if stall >= n {
                threshold *= 2;
                over.retain(|&w| indeg[w as usize] > threshold);
                best_over = over.len();
                stall = 0;
            }
        }
    }

    // Flatten: low stable indegree first, arcs point from earlier to later.
    let build_from_rank = |rank: &[u32]| -> ArcGraph {
        let mut a = ArcGraph::new(n);
        for &(u, v) in &edges {
            if rank[u as usize] < rank[v as usize] {
                a.add_arc(u, v, 1);
            } else {
                a.add_arc(v, u, 1);
            }
        }
        a
    };
    let mut sigma: Vec<u32> = (0..n as u32).collect();
    sigma.sort_by_key(|&v| (indeg[v as usize], v));
    let mut rank = vec![0u32; n];
    for (i, &v) in sigma.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    let a = build_from_rank(&rank);

    let bound = 2 * degeneracy(g);
    if a.max_indegree() <= bound {
        return a;
    }

    // Repair: peel vertices whose residual degree fits the bound, preferring
    // the firing priority, and orient from later-peeled to earlier-peeled.
    let mut deg: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: std::collections::BTreeSet<(usize, u32)> = (0..n as u32)
        .map(|v| (indeg[v as usize], v))
        .collect();
    let mut peel_rank = vec![0u32; n];
    let mut t = 0u32;
    while !queue.is_empty() {
        let pick = queue
            .iter()
            .copied()
            .find(|&(_, v)| deg[v as usize] <= bound)
            .expect("a vertex within twice the degeneracy always exists");
        queue.remove(&pick);
        let v = pick.1;
        removed[v as usize] = true;
        peel_rank[v as usize] = t;
        t += 1;
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
            }
        }
    }
    // Later-peeled before earlier-peeled: reverse the peel order.
    let mut rank = vec![0u32; n];
    for v in 0..n {
        rank[v] = (n as u32 - 1) - peel_rank[v];
    }
    build_from_rank(&rank)
}

/// One augmentation round at iteration `k`: adds an arc `a -> b` for every
/// transitive pair (`a -> c`, `c -> b`) and exactly one arc per fraternal
/// pair (`x -> c`, `y -> c`), oriented along a topological order computed at
/// entry. Under [`Augmentation::Dtfa`] a pair only qualifies if some witness
/// has weight sum at most `k`. New arcs carry weight `k`. Returns the number
/// of arcs added.
pub fn augment_step(a: &mut ArcGraph, mode: Augmentation, k: u32) -> usize {
    let n = a.n();
    let order = a.topological_order();
    let mut pos = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }

    // Transitive candidates, deduplicated by keeping the cheapest witness.
    let mut transitive: std::collections::BTreeMap<(u32, u32), u32> = Default::default();
    for c in 0..n as u32 {
        for &(s, w1) in a.in_arcs(c) {
            for &(t, w2) in a.out_arcs(c) {
                if s == t {
                    continue;
                }
                let cost = w1 + w2;
                transitive
                    .entry((s, t))
                    .and_modify(|best| *best = (*best).min(cost))
                    .or_insert(cost);
            }
        }
    }
    // Fraternal candidates keyed by the unordered pair.
    let mut fraternal: std::collections::BTreeMap<(u32, u32), u32> = Default::default();
    for c in 0..n as u32 {
        let ins = a.in_arcs(c);
        for i in 0..ins.len() {
            for j in i + 1..ins.len() {
                let (x, w1) = ins[i];
                let (y, w2) = ins[j];
                let key = (x.min(y), x.max(y));
                let cost = w1 + w2;
                fraternal
                    .entry(key)
                    .and_modify(|best| *best = (*best).min(cost))
                    .or_insert(cost);
            }
        }
    }

    let mut added = 0;
    for (&(s, t), &cost) in &transitive {
        if mode == Augmentation::Dtfa && cost > k {
            continue;
        }
        if a.add_arc(s, t, k) {
            added += 1;
        }
    }
    for (&(x, y), &cost) in &fraternal {
        if mode == Augmentation::Dtfa && cost > k {
            continue;
        }
        if a.has_arc_either(x, y) {
            continue;
        }
        let (src, dst) = if pos[x as usize] < pos[y as usize] {
            (x, y)
        } else {
            (y, x)
        };
        if a.add_arc(src, dst, k) {
            added += 1;
        }
    }
    debug_assert!(a.is_acyclic());
    added
}

/// Seeds an arc graph from the requested orientation.
pub fn orient(g: &Graph, kind: Orientation) -> ArcGraph {
    match kind {
        Orientation::Degeneracy => orient_degeneracy(g),
        Orientation::Sandpile => orient_sandpile(g),
    }
}
