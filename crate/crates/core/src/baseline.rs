//! Backtracking induced-isomorphism counter.
//!
//! Counts injective maps from the motif into the host under which motif
//! edges correspond exactly to host edges. Serves as the independent
//! correctness oracle for the decomposition pipeline and as the speed
//! comparator. [`exhaustive_count`] is the oracle's oracle: it enumerates
//! every injective map without pruning and is limited to tiny hosts.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn validate_motif(h: &Graph) -> Result<()> {
    if h.n() < 2 {
        return Err(Error::InvalidMotif(format!(
            "motif must have at least 2 vertices, got {}",
            h.n()
        )));
    }
    if !h.is_connected() {
        return Err(Error::InvalidMotif("motif must be connected".into()));
    }
    Ok(())
}

/// Static matching order: start at the motif vertex of maximum degree, then
/// repeatedly take the vertex with the most already-ordered neighbors,
/// breaking ties toward higher degree and then smaller id. Connectivity of
/// the motif guarantees every later vertex has an ordered neighbor.
fn matching_order(h: &Graph) -> Vec<u32> {
    let k = h.n();
    let first = (0..k as u32)
        .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut order = vec![first];
    let mut placed = vec![false; k];
    placed[first as usize] = true;
    while order.len() < k {
        let next = (0..k as u32)
            .filter(|&v| !placed[v as usize])
            .max_by_key(|&v| {
                let anchored = h
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| placed[u as usize])
                    .count();
                (anchored, h.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next as usize] = true;
        order.push(next);
    }
    order
}

/// Runs the backtracking search, invoking `found` once per mapping with the
/// host image of each motif vertex: `found[v]` is the host vertex motif
/// vertex `v` maps to.
pub fn for_each_embedding<F: FnMut(&[u32])>(g: &Graph, h: &Graph, found: &mut F) -> Result<()> {
    validate_motif(h)?;
    let k = h.n();
    if k > g.n() {
        return Ok(());
    }
    let order = matching_order(h);
    // anchor[i] = position of some earlier-ordered neighbor of order[i].
    let anchor: Vec<usize> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == 0 {
                return 0;
            }
            order[..i]
                .iter()
                .position(|&u| h.adjacent(u, v))
                .expect("connected motif always has an ordered neighbor")
        })
        .collect();

    let mut image = vec![u32::MAX; k];
    let mut by_motif = vec![u32::MAX; k];
    let mut used = vec![false; g.n()];

    #[allow(clippy::too_many_arguments)]
    fn extend<F: FnMut(&[u32])>(
        g: &Graph,
        h: &Graph,
        order: &[u32],
        anchor: &[usize],
        image: &mut Vec<u32>,
        by_motif: &mut Vec<u32>,
        used: &mut Vec<bool>,
        depth: usize,
        found: &mut F,
    ) {
        if depth == order.len() {
            found(by_motif);
            return;
        }
        let hv = order[depth];
        let candidates: Vec<u32> = if depth == 0 {
            (0..g.n() as u32).collect()
        } else {
            g.neighbors(image[anchor[depth]]).to_vec()
        };
        'cand: for cand in candidates {
            if used[cand as usize] || g.degree(cand) < h.degree(hv) {
                continue;
            }
            for prev in 0..depth {
                let adj_h = h.adjacent(order[prev], hv);
                let adj_g = g.adjacent(image[prev], cand);
                if adj_h != adj_g {
                    continue 'cand;
                }
            }
            image[depth] = cand;
            by_motif[hv as usize] = cand;
            used[cand as usize] = true;
            extend(g, h, order, anchor, image, by_motif, used, depth + 1, found);
            used[cand as usize] = false;
            by_motif[hv as usize] = u32::MAX;
            image[depth] = u32::MAX;
        }
    }

    extend(
        g, h, &order, &anchor, &mut image, &mut by_motif, &mut used, 0, found,
    );
    Ok(())
}

/// Exact number of induced-isomorphism mappings of `h` into `g`: injective
/// maps under which motif adjacency and host adjacency agree on every
/// vertex pair. Each mapping counts, so a motif with automorphisms
/// contributes several mappings per placement.
pub fn baseline_count(g: &Graph, h: &Graph) -> Result<u64> {
    let mut count = 0u64;
    for_each_embedding(g, h, &mut |_| count += 1)?;
    Ok(count)
}

/// Counts by enumerating every injective map and testing the induced
/// condition on all pairs, with no pruning at all. Validation use only.
pub fn exhaustive_count(g: &Graph, h: &Graph) -> Result<u64> {
    validate_motif(h)?;
    if g.n() > 12 {
        return Err(Error::HostTooLarge { n: g.n() });
    }
    let k = h.n();
    if k > g.n() {
        return Ok(0);
    }
    let mut image = vec![u32::MAX; k];
    let mut used = vec![false; g.n()];
    let mut count = 0u64;

    fn assign(
        g: &Graph,
        h: &Graph,
        image: &mut Vec<u32>,
        used: &mut Vec<bool>,
        pos: usize,
        count: &mut u64,
    ) {
        if pos == image.len() {
            let k = image.len();
            for a in 0..k {
                for b in (a + 1)..k {
                    if h.adjacent(a as u32, b as u32) != g.adjacent(image[a], image[b]) {
                        return;
                    }
                }
            }
            *count += 1;
            return;
        }
        for v in 0..g.n() as u32 {
            if !used[v as usize] {
                image[pos] = v;
                used[v as usize] = true;
                assign(g, h, image, used, pos + 1, count);
                used[v as usize] = false;
            }
        }
    }

    assign(g, h, &mut image, &mut used, 0, &mut count);
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_motif, MotifKind, MotifSpec};

    fn motif(kind: MotifKind, order: usize) -> Graph {
        build_motif(&MotifSpec::Family { kind, order }).unwrap()
    }

    #[test]
    fn single_edge_counts_ordered_edges() {
        let g = crate::gen::gen_chung_lu(30, 4.0, 3).unwrap();
        let h = motif(MotifKind::Path, 2);
        assert_eq!(
            baseline_count(&g, &h).unwrap(),
            2 * g.num_edges() as u64
        );
    }

    #[test]
    fn induced_path_absent_from_clique() {
        let k3 = motif(MotifKind::Clique, 3);
        let p3 = motif(MotifKind::Path, 3);
        assert_eq!(baseline_count(&k3, &p3).unwrap(), 0);
    }

    #[test]
    fn claw_in_claw_counts_automorphisms() {
        let claw = motif(MotifKind::Star, 4);
        assert_eq!(baseline_count(&claw, &claw).unwrap(), 6);
    }

    #[test]
    fn triangle_in_k4() {
        let k3 = motif(MotifKind::Clique, 3);
        let k4 = motif(MotifKind::Clique, 4);
        assert_eq!(baseline_count(&k4, &k3).unwrap(), 24);
        assert_eq!(exhaustive_count(&k4, &k3).unwrap(), 24);
    }

    #[test]
    fn induced_p4_absent_from_c4() {
        let c4 = motif(MotifKind::Cycle, 4);
        let p4 = motif(MotifKind::Path, 4);
        assert_eq!(baseline_count(&c4, &p4).unwrap(), 0);
    }

    #[test]
    fn motif_larger_than_host_counts_zero() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p3 = motif(MotifKind::Path, 3);
        assert_eq!(baseline_count(&g, &p3).unwrap(), 0);
        assert_eq!(exhaustive_count(&g, &p3).unwrap(), 0);
    }

    #[test]
    fn rejects_degenerate_motifs() {
        let g = motif(MotifKind::Clique, 3);
        assert!(baseline_count(&g, &Graph::new(1)).is_err());
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(baseline_count(&g, &disconnected).is_err());
    }

    #[test]
    fn exhaustive_rejects_large_hosts() {
        let g = Graph::new(13);
        let h = motif(MotifKind::Path, 3);
        assert!(matches!(
            exhaustive_count(&g, &h),
            Err(Error::HostTooLarge { n: 13 })
        ));
    }

    #[test]
    fn backtracking_agrees_with_exhaustive_on_random_hosts() {
        for seed in 0..12 {
            let g = crate::gen::gen_chung_lu(8, 3.0, seed).unwrap();
            for h in [
                motif(MotifKind::Path, 3),
                motif(MotifKind::Path, 4),
                motif(MotifKind::Star, 4),
                motif(MotifKind::Cycle, 4),
            ] {
                assert_eq!(
                    baseline_count(&g, &h).unwrap(),
                    exhaustive_count(&g, &h).unwrap(),
                    "disagreement at seed {}",
                    seed
                );
            }
        }
    }

    #[test]
    fn count_invariant_under_host_relabeling() {
        use rand::seq::SliceRandom;
        let g = crate::gen::gen_chung_lu(10, 3.0, 9).unwrap();
        let h = motif(MotifKind::Path, 4);
        let base = baseline_count(&g, &h).unwrap();
        let mut rng = crate::gen::rng_for(17);
        for _ in 0..5 {
            let mut perm: Vec<u32> = (0..g.n() as u32).collect();
            perm.shuffle(&mut rng);
            let edges: Vec<(u32, u32)> = g
                .edges()
                .iter()
                .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
                .collect();
            let relabeled = Graph::from_edges(g.n(), &edges).unwrap();
            assert_eq!(baseline_count(&relabeled, &h).unwrap(), base);
        }
    }
}
