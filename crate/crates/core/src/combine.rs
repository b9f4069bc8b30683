//! Combining per-color-set counts into the exact total.
//!
//! An embedding whose image uses the exact color set T is found again in
//! every enumerated color set containing T, so the per-set counts f(S)
//! overcount. Inclusion-exclusion recovers e(T), the number of embeddings
//! using every color of T, and the total is the sum of e(T) over all sets
//! up to the motif size. The hybrid variant dedups during counting instead:
//! the dynamic program tracks exact color usage and an embedding is
//! credited only inside the first enumerated full-size superset of its
//! exact color set.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::baseline::for_each_embedding;
use crate::color::Coloring;
use crate::decompose::{enumerate_color_sets, treedepth_decomposition, ColorSetCursor};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{
    count_in_decomposition, count_in_decomposition_colored, DpStats,
};

/// Per-color-set embedding counts: f(S) = embeddings inside the subgraph
/// induced by the classes of S. Keys are sorted color sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColorSetCounts {
    counts: BTreeMap<Vec<u32>, u64>,
}

impl ColorSetCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, set: Vec<u32>, count: u64) {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]), "sets are sorted");
        self.counts.insert(set, count);
    }

    pub fn get(&self, set: &[u32]) -> Option<u64> {
        if set.is_empty() {
            return Some(0);
        }
        self.counts.get(set).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, u64)> {
        self.counts.iter().map(|(s, &c)| (s, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Checks f(S) <= f(T) for S inside T over all stored pairs.
    pub fn is_monotone(&self) -> bool {
        self.counts.iter().all(|(s, &fs)| {
            self.counts
                .iter()
                .filter(|(t, _)| t.len() > s.len() && s.iter().all(|c| t.contains(c)))
                .all(|(_, &ft)| fs <= ft)
        })
    }
}

/// Instrumentation for one whole counting run over all color sets.
#[derive(Debug, Clone, Default)]
pub struct CountStats {
    pub sets: usize,
    pub components_counted: usize,
    pub components_skipped: usize,
    pub dp: DpStats,
    pub decompose_ns: u128,
    pub dp_ns: u128,
    pub combine_ns: u128,
}

/// Total embeddings from per-set counts by inclusion-exclusion:
/// sum over |T| <= h of e(T), with e(T) = sum over U inside T of
/// (-1)^{|T|-|U|} f(U). Every set of size up to min(h, k) must be present.
pub fn combine_inclusion_exclusion(counts: &ColorSetCounts, k: usize, h: usize) -> Result<u64> {
    let mut total: i128 = 0;
    for t in enumerate_color_sets(k, h) {
        let mut exact: i128 = 0;
        for sub in 0u32..(1 << t.len()) {
            let u: Vec<u32> = t
                .iter()
                .enumerate()
                .filter(|(i, _)| sub & (1 << i) != 0)
                .map(|(_, &c)| c)
                .collect();
            let f = counts.get(&u).ok_or(Error::MissingSubsetCount)? as i128;
            let sign = if (t.len() - u.len()) % 2 == 0 { 1 } else { -1 };
            exact += sign * f;
        }
        if exact < 0 {
            return Err(Error::NegativeExactCount);
        }
        total += exact;
    }
    u64::try_from(total).map_err(|_| Error::CountOverflow)
}

/// Computes f(S) for every color set of size up to min(|H|, k) by running
/// decompose and the counting DP on each component large enough to host
/// the motif.
pub fn color_set_counts(
    g: &Graph,
    coloring: &Coloring,
    h: &Graph,
) -> Result<(ColorSetCounts, CountStats)> {
    if coloring.n() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices but the graph has {}",
            coloring.n(),
            g.n()
        )));
    }
    let h_eff = h.n().min(coloring.size());
    let mut counts = ColorSetCounts::new();
    let mut stats = CountStats::default();
    let mut cursor = ColorSetCursor::new(g, coloring, h_eff);
    while cursor.advance() {
        stats.sets += 1;
        let mut f = 0u64;
        for comp in cursor.components() {
            if comp.len() < h.n() {
                stats.components_skipped += 1;
                continue;
            }
            let started = Instant::now();
            let tdd = treedepth_decomposition(g, &comp, coloring)?;
            stats.decompose_ns += started.elapsed().as_nanos();
            let started = Instant::now();
            let (c, dp) = count_in_decomposition(g, &tdd, h)?;
            stats.dp_ns += started.elapsed().as_nanos();
            stats.dp.merge(&dp);
            stats.components_counted += 1;
            f = f.checked_add(c).ok_or(Error::CountOverflow)?;
        }
        counts.insert(cursor.current().to_vec(), f);
    }
    Ok((counts, stats))
}

/// Exact total by the inclusion-exclusion path: per-set counts, then the
/// alternating-sum combination.
pub fn count_inclusion_exclusion(
    g: &Graph,
    coloring: &Coloring,
    h: &Graph,
) -> Result<(u64, CountStats)> {
    let (counts, mut stats) = color_set_counts(g, coloring, h)?;
    let started = Instant::now();
    let total = combine_inclusion_exclusion(&counts, coloring.size(), h.n())?;
    stats.combine_ns = started.elapsed().as_nanos();
    Ok((total, stats))
}

/// First set of size `target_len` containing `t` in the enumeration order:
/// extend `t` with the smallest colors not already present.
fn first_full_superset(t: &[u32], k: usize, target_len: usize) -> Vec<u32> {
    let mut out = t.to_vec();
    let mut next = 0u32;
    while out.len() < target_len && (next as usize) < k {
        if !t.contains(&next) {
            out.push(next);
        }
        next += 1;
    }
    out.sort_unstable();
    out
}

/// Exact total by the hybrid path: only full-size color sets run the DP,
/// which splits counts by the exact colors each embedding uses; a count is
/// credited when the current set is the first full-size superset of that
/// exact color set.
pub fn count_hybrid(g: &Graph, coloring: &Coloring, h: &Graph) -> Result<(u64, CountStats)> {
    if coloring.n() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices but the graph has {}",
            coloring.n(),
            g.n()
        )));
    }
    let k = coloring.size();
    let h_eff = h.n().min(k);
    let mut stats = CountStats::default();
    let mut total = 0u64;
    if k == 0 {
        return Ok((0, stats));
    }
    let mut color_bit = vec![0u8; g.n()];
    let mut cursor = ColorSetCursor::new(g, coloring, h_eff);
    while cursor.advance() {
        let set = cursor.current();
        if set.len() < h_eff {
            continue;
        }
        stats.sets += 1;
        for (i, &c) in set.iter().enumerate() {
            for &v in coloring.class(c) {
                color_bit[v as usize] = i as u8;
            }
        }
        for comp in cursor.components() {
            if comp.len() < h.n() {
                stats.components_skipped += 1;
                continue;
            }
            let started = Instant::now();
            let tdd = treedepth_decomposition(g, &comp, coloring)?;
            stats.decompose_ns += started.elapsed().as_nanos();
            let started = Instant::now();
            let (by_colors, dp) =
                count_in_decomposition_colored(g, &tdd, h, Some(&color_bit))?;
            stats.dp_ns += started.elapsed().as_nanos();
            stats.dp.merge(&dp);
            stats.components_counted += 1;
            let started = Instant::now();
            for (mask, count) in by_colors {
                let exact: Vec<u32> = set
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &c)| c)
                    .collect();
                if first_full_superset(&exact, k, h_eff) == set {
                    total = total.checked_add(count).ok_or(Error::CountOverflow)?;
                }
            }
            stats.combine_ns += started.elapsed().as_nanos();
        }
    }
    Ok((total, stats))
}

/// Brute-force count of embeddings whose image uses every color of `t` and
/// no others. Test helper realizing the inclusion-exclusion target
/// directly; intended for small instances only.
pub fn exact_color_count(g: &Graph, coloring: &Coloring, h: &Graph, t: &[u32]) -> Result<u64> {
    let tset: std::collections::BTreeSet<u32> = t.iter().copied().collect();
    if tset.is_empty() || tset.len() > h.n() {
        return Ok(0);
    }
    let mut count = 0u64;
    for_each_embedding(g, h, &mut |image| {
        let used: std::collections::BTreeSet<u32> =
            image.iter().map(|&v| coloring.color(v)).collect();
        if used == tset {
            count += 1;
        }
    })?;
    Ok(count)
}
