//! Independent oracles shared by the oracle and acceptance suites.
//!
//! Everything here recomputes properties from definitions, without reusing
//! the library's incremental data structures, so agreement is meaningful.
// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use std::collections::BTreeMap;

use isocount::baseline::for_each_embedding;
use isocount::color::Coloring;
use isocount::decompose::TreedepthDecomposition;
use isocount::graph::Graph;
use rand::Rng;

/// Uniform random graph with each edge present independently.
pub fn er_graph<R: Rng>(n: usize, avg_degree: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let prob = (avg_degree / (n as f64 - 1.0)).clamp(0.0, 1.0);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(prob) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random coloring with at most `k` classes, compacted to contiguous ids.
pub fn random_coloring<R: Rng>(n: usize, k: usize, rng: &mut R) -> Coloring {
    let colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..k as u32)).collect();
    Coloring::compacted(colors)
}

fn mask_is_connected(g: &Graph, mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros();
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            let bit = 1u32 << w;
            if mask & bit != 0 && seen & bit == 0 {
                seen |= bit;
                stack.push(w);
            }
        }
    }
    seen == mask
}

/// Definition-level check: every connected vertex subset has a uniquely
/// colored vertex or uses at least p distinct colors. Exponential in n.
pub fn exhaustive_p_centered(g: &Graph, coloring: &Coloring, p: usize) -> bool {
    let n = g.n();
    assert!(n <= 20, "exhaustive oracle is exponential in n");
    for mask in 1u32..1 << n {
        if !mask_is_connected(g, mask) {
            continue;
        }
        let mut counts = BTreeMap::new();
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            *counts.entry(coloring.color(v)).or_insert(0u32) += 1;
        }
        let has_center = counts.values().any(|&c| c == 1);
        if !has_center && counts.len() < p {
            return false;
        }
    }
    true
}

/// Definition-level centered check: every connected subset has a center.
pub fn exhaustive_centered(g: &Graph, coloring: &Coloring) -> bool {
    let n = g.n();
    assert!(n <= 20, "exhaustive oracle is exponential in n");
    for mask in 1u32..1 << n {
        if !mask_is_connected(g, mask) {
            continue;
        }
        let mut counts = BTreeMap::new();
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            *counts.entry(coloring.color(v)).or_insert(0u32) += 1;
        }
        if !counts.values().any(|&c| c == 1) {
            return false;
        }
    }
    true
}

/// Degeneracy by literal peeling: repeatedly delete a minimum-degree
/// vertex, recomputing degrees from scratch each round.
pub fn naive_degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let mut min_deg = usize::MAX;
        let mut min_v = 0;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let deg = g
                .neighbors(v as u32)
                .iter()
                .filter(|&&w| alive[w as usize])
                .count();
            if deg < min_deg {
                min_deg = deg;
                min_v = v;
            }
        }
        best = best.max(min_deg);
        alive[min_v] = false;
    }
    best
}

/// Connected components of the subgraph induced by `verts`, each sorted,
/// ordered by smallest member.
pub fn bfs_components(g: &Graph, verts: &[u32]) -> Vec<Vec<u32>> {
    let mut in_set = vec![false; g.n()];
    for &v in verts {
        in_set[v as usize] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut comps = Vec::new();
    let mut sorted = verts.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        seen[start as usize] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if in_set[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Embedding counts grouped by the exact color set of the image, from one
/// full backtracking enumeration.
pub fn embeddings_by_exact_colors(
    g: &Graph,
    coloring: &Coloring,
    h: &Graph,
) -> BTreeMap<Vec<u32>, u64> {
    let mut by_set = BTreeMap::new();
    let mut record = |image: &[u32]| {
        let mut set: Vec<u32> = image.iter().map(|&v| coloring.color(v)).collect();
        set.sort_unstable();
        set.dedup();
        *by_set.entry(set).or_insert(0u64) += 1;
    };
    for_each_embedding(g, h, &mut record).unwrap();
    by_set
}

/// Independent verticality and height check of one decomposition: walks
/// parent chains explicitly instead of trusting recorded depths.
pub fn check_decomposition(
    g: &Graph,
    tdd: &TreedepthDecomposition,
    max_height: usize,
) -> Result<(), String> {
    let verts = tdd.vertices();
    if tdd.height() as usize > max_height {
        return Err(format!(
            "height {} exceeds bound {max_height}",
            tdd.height()
        ));
    }
    let ancestors = |v: u32| -> Vec<u32> {
        let mut chain = vec![v];
        let mut cur = v;
        while let Some(p) = tdd.parent_of(cur) {
            chain.push(p);
            cur = p;
            assert!(chain.len() <= verts.len() + 1, "parent cycle at {v}");
        }
        chain
    };
    for &u in verts {
        for &w in g.neighbors(u) {
            if u < w && verts.binary_search(&w).is_ok() {
                let au = ancestors(u);
                let aw = ancestors(w);
                if !au.contains(&w) && !aw.contains(&u) {
                    return Err(format!("edge {u}-{w} is not vertical"));
                }
            }
        }
    }
    Ok(())
}
