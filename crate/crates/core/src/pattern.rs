//! Motif counting over one treedepth decomposition.
//!
//! The dynamic program walks the decomposition forest depth-first. At depth
//! d the root path r_1..r_d is fixed, and a table entry is a k-pattern: the
//! set of motif vertices already accounted for, plus boundary labels that
//! hypothesize which of them sit on the root path and at which depths. The
//! table maps each pattern to the number of ways its interior (the
//! non-boundary part) embeds into the already-processed subtrees under that
//! hypothesis. Leaf tables hold the path hypotheses themselves; sibling
//! tables combine with [`join`]; moving to the parent drops the deepest
//! label with [`forget`]. Embeddings are induced: a motif edge corresponds
//! to a host edge and a motif non-edge to a host non-edge, so every counted
//! map is exact and symmetric motifs contribute one count per automorphism.
//!
//! Correctness leans on verticality: a host edge inside a component never
//! joins different branches, so interiors merged by a join can never be
//! host-adjacent, and the forget drop rule removes any pattern whose
//! forgotten vertex still needs a neighbor.

use std::collections::HashMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::Graph;

use crate::decompose::TreedepthDecomposition;

/// Largest supported motif order: subset masks fit a byte and eight 8-bit
/// label fields fit one word.
pub const MAX_MOTIF: usize = 8;

/// Largest supported decomposition height; depth labels must stay small
/// enough to index label fields comfortably.
pub const MAX_HEIGHT: u32 = 63;

/// Bit-encoded partial embedding state: `subset` marks motif vertices
/// already accounted for, and each nonzero 8-bit field of `labels` gives
/// the root-path depth hypothesized for one subset vertex (the boundary).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPattern {
    subset: u8,
    labels: u64,
}

/// Boundary mask of a label word: bit i set iff field i is nonzero.
fn labels_to_boundary(labels: u64) -> u8 {
    let mut m = labels;
    m |= m >> 4;
    m |= m >> 2;
    m |= m >> 1;
    let low_bits = m & 0x0101_0101_0101_0101;
    ((low_bits.wrapping_mul(0x0102_0408_1020_4080)) >> 56) as u8
}

impl KPattern {
    pub const EMPTY: KPattern = KPattern {
        subset: 0,
        labels: 0,
    };

    pub fn subset(&self) -> u8 {
        self.subset
    }

    /// Motif vertices currently on the boundary.
    pub fn boundary(&self) -> u8 {
        labels_to_boundary(self.labels)
    }

    /// Depth label of vertex `v`, 0 when `v` is not on the boundary.
    pub fn label_of(&self, v: usize) -> u8 {
        ((self.labels >> (8 * v)) & 0xff) as u8
    }

    /// Adds `v` to the subset with boundary label `label`.
    pub fn with_label(&self, v: usize, label: u8) -> KPattern {
        debug_assert!(v < MAX_MOTIF && label > 0);
        KPattern {
            subset: self.subset | (1 << v),
            labels: self.labels | ((label as u64) << (8 * v)),
        }
    }

    /// Moves `v` off the boundary into the interior.
    pub fn clear_label(&self, v: usize) -> KPattern {
        KPattern {
            subset: self.subset,
            labels: self.labels & !(0xffu64 << (8 * v)),
        }
    }

    /// The boundary vertex carrying `label`, if any.
    pub fn vertex_at_label(&self, label: u8) -> Option<usize> {
        (0..MAX_MOTIF).find(|&v| self.label_of(v) == label)
    }

    /// Structural validity at context depth `depth` for motif `h`: labels
    /// distinct and within 1..=depth, and every motif edge leaving the
    /// subset leaves from a boundary vertex.
    pub fn valid_for(&self, h: &Graph, depth: usize) -> bool {
        let mut seen = 0u64;
        for v in 0..h.n().min(MAX_MOTIF) {
            let l = self.label_of(v);
            if l > 0 {
                if self.subset & (1 << v) == 0 || l as usize > depth || seen & (1 << l) != 0 {
                    return false;
                }
                seen |= 1 << l;
            }
        }
        if self.labels >> (8 * h.n().min(MAX_MOTIF)) != 0 {
            return false;
        }
        let boundary = self.boundary();
        for v in 0..h.n() {
            if self.subset & (1 << v) != 0 && boundary & (1 << v) == 0 {
                for &u in h.neighbors(v as u32) {
                    if self.subset & (1 << u) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Table key: the pattern plus the set of host colors its embedded
/// vertices use. The color mask stays 0 outside color-tracking runs, so
/// the table then has exactly one entry per pattern.
type DpKey = (KPattern, u8);

/// Pattern-to-count table tied to a root-path context of a given depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTable {
    depth: usize,
    entries: HashMap<DpKey, u64>,
}

impl PatternTable {
    /// The identity table: only the empty pattern, count 1.
    pub fn identity(depth: usize) -> PatternTable {
        let mut entries = HashMap::new();
        entries.insert((KPattern::EMPTY, 0u8), 1);
        PatternTable { depth, entries }
    }

    /// Builds a table from explicit entries; counts must be positive and
    /// patterns must fit the context depth.
    pub fn from_entries(depth: usize, entries: &[(KPattern, u64)]) -> Result<PatternTable> {
        let mut map = HashMap::new();
        for &(pat, count) in entries {
            if count == 0 {
                return Err(Error::InvalidParams(
                    "pattern table entries must have positive counts".into(),
                ));
            }
            let mut seen = 0u64;
            for v in 0..MAX_MOTIF {
                let l = pat.label_of(v);
                if l as usize > depth {
                    return Err(Error::InvalidParams(format!(
                        "label {} exceeds context depth {}",
                        l, depth
                    )));
                }
                if l > 0 {
                    if seen & (1 << l) != 0 {
                        return Err(Error::InvalidParams("duplicate boundary label".into()));
                    }
                    seen |= 1 << l;
                }
            }
            let slot = map.entry((pat, 0u8)).or_insert(0u64);
            *slot = slot.checked_add(count).ok_or(Error::CountOverflow)?;
        }
        Ok(PatternTable { depth, entries: map })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count stored for a pattern, summed over color masks.
    pub fn count_of(&self, pat: &KPattern) -> u64 {
        self.entries
            .iter()
            .filter(|((p, _), _)| p == pat)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Entries aggregated over color masks, sorted for deterministic output.
    pub fn sorted_entries(&self) -> Vec<(KPattern, u64)> {
        let mut agg: HashMap<KPattern, u64> = HashMap::new();
        for (&(pat, _), &c) in &self.entries {
            *agg.entry(pat).or_insert(0) += c;
        }
        let mut out: Vec<(KPattern, u64)> = agg.into_iter().collect();
        out.sort_unstable();
        out
    }
}

/// Join and forget instrumentation plus table-size and per-depth timing.
#[derive(Debug, Clone, Default)]
pub struct DpStats {
    pub joins: u64,
    pub forgets: u64,
    pub table_peak: usize,
    /// Nanoseconds of node-local work per decomposition depth, index 0
    /// covering the root-forest fold.
    pub per_depth_ns: Vec<u128>,
}

impl DpStats {
    fn note_table(&mut self, len: usize) {
        self.table_peak = self.table_peak.max(len);
    }

    fn note_depth(&mut self, depth: usize, ns: u128) {
        if self.per_depth_ns.len() <= depth {
            self.per_depth_ns.resize(depth + 1, 0);
        }
        self.per_depth_ns[depth] += ns;
    }

    /// Accumulates another run's stats into this one.
    pub fn merge(&mut self, other: &DpStats) {
        self.joins += other.joins;
        self.forgets += other.forgets;
        self.table_peak = self.table_peak.max(other.table_peak);
        if self.per_depth_ns.len() < other.per_depth_ns.len() {
            self.per_depth_ns.resize(other.per_depth_ns.len(), 0);
        }
        for (i, &ns) in other.per_depth_ns.iter().enumerate() {
            self.per_depth_ns[i] += ns;
        }
    }
}

/// Combines two sibling tables over the same root-path context. A pair is
/// compatible when it shares the identical boundary hypothesis (equal label
/// words) and the subsets overlap exactly on that boundary; the union
/// pattern then gets the product of the counts. Increments the joins
/// counter once per emitted combination.
pub fn join(a: &PatternTable, b: &PatternTable, stats: &mut DpStats) -> Result<PatternTable> {
    if a.depth != b.depth {
        return Err(Error::ContextMismatch {
            left: a.depth,
            right: b.depth,
        });
    }
    let mut by_labels: HashMap<u64, Vec<(&DpKey, &u64)>> = HashMap::new();
    for (k, c) in &b.entries {
        by_labels.entry(k.0.labels).or_default().push((k, c));
    }
    let mut entries: HashMap<DpKey, u64> = HashMap::new();
    for (&(pa, ca_mask), &count_a) in &a.entries {
        let Some(bucket) = by_labels.get(&pa.labels) else {
            continue;
        };
        let boundary = pa.boundary();
        for &(&(pb, cb_mask), &count_b) in bucket {
            if pa.subset & pb.subset != boundary {
                continue;
            }
            let merged = KPattern {
                subset: pa.subset | pb.subset,
                labels: pa.labels,
            };
            let product = count_a.checked_mul(count_b).ok_or(Error::CountOverflow)?;
            let slot = entries.entry((merged, ca_mask | cb_mask)).or_insert(0);
            *slot = slot.checked_add(product).ok_or(Error::CountOverflow)?;
            stats.joins += 1;
        }
    }
    stats.note_table(entries.len());
    Ok(PatternTable {
        depth: a.depth,
        entries,
    })
}

fn neighbor_mask(h: &Graph, v: usize) -> u8 {
    h.neighbors(v as u32)
        .iter()
        .fold(0u8, |m, &u| m | (1 << u))
}

/// Moves a table from its node to the parent: the motif vertex labeled
/// `depth_label` (the deepest label of the context) leaves the boundary.
/// Patterns whose leaving vertex still has motif neighbors outside the
/// subset are dropped, because no later embedding can reach the sealed
/// subtree. Increments the forgets counter once per input entry.
pub fn forget(
    t: &PatternTable,
    h: &Graph,
    depth_label: usize,
    stats: &mut DpStats,
) -> Result<PatternTable> {
    if depth_label == 0 || t.depth != depth_label {
        return Err(Error::ForgetDepth {
            expected: t.depth,
            got: depth_label,
        });
    }
    let mut entries: HashMap<DpKey, u64> = HashMap::new();
    for (&(pat, colors), &count) in &t.entries {
        stats.forgets += 1;
        let residual = match pat.vertex_at_label(depth_label as u8) {
            None => pat,
            Some(v) => {
                if neighbor_mask(h, v) & !pat.subset != 0 {
                    continue;
                }
                pat.clear_label(v)
            }
        };
        let slot = entries.entry((residual, colors)).or_insert(0);
        *slot = slot.checked_add(count).ok_or(Error::CountOverflow)?;
    }
    stats.note_table(entries.len());
    Ok(PatternTable {
        depth: depth_label - 1,
        entries,
    })
}

pub(crate) fn validate_motif(h: &Graph) -> Result<()> {
    if h.n() < 2 {
        return Err(Error::InvalidMotif(format!(
            "motif must have at least 2 vertices, got {}",
            h.n()
        )));
    }
    if h.n() > MAX_MOTIF {
        return Err(Error::MotifTooLarge { order: h.n() });
    }
    if !h.is_connected() {
        return Err(Error::InvalidMotif("motif must be connected".into()));
    }
    Ok(())
}

struct Dp<'a> {
    g: &'a Graph,
    h: &'a Graph,
    verts: &'a [u32],
    children: Vec<Vec<usize>>,
    /// Host vertices of the current root path, r_1 first.
    path: Vec<u32>,
    /// path_tables[d] = all consistent boundary hypotheses about r_1..r_d,
    /// paired with the color mask their path vertices occupy.
    path_tables: Vec<Vec<(KPattern, u8)>>,
    color_bit: Option<&'a [u8]>,
    stats: DpStats,
}

impl<'a> Dp<'a> {
    fn color_mask(&self, host: u32) -> u8 {
        self.color_bit.map_or(0, |bits| 1 << bits[host as usize])
    }

    /// Extends the path hypotheses one level deeper with every consistent
    /// placement of an unused motif vertex at `host`.
    fn push_path(&mut self, host: u32, depth: usize) {
        let prev = &self.path_tables[depth - 1];
        let mut next = prev.clone();
        let mask = self.color_mask(host);
        for &(pat, colors) in prev.iter() {
            for u in 0..self.h.n() {
                if pat.subset & (1 << u) != 0 {
                    continue;
                }
                let consistent = (0..self.h.n()).all(|w| {
                    let l = pat.label_of(w);
                    if l == 0 {
                        return true;
                    }
                    let host_w = self.path[l as usize - 1];
                    self.h.adjacent(u as u32, w as u32) == self.g.adjacent(host, host_w)
                });
                if consistent {
                    next.push((pat.with_label(u, depth as u8), colors | mask));
                }
            }
        }
        self.path.push(host);
        self.path_tables.push(next);
    }

    fn pop_path(&mut self) {
        self.path.pop();
        self.path_tables.pop();
    }

    /// Table of the subtree rooted at `idx`, counting interior embeddings
    /// below the node under every path hypothesis. Returns the table and
    /// the total elapsed nanoseconds including children.
    fn node(&mut self, idx: usize, depth: usize) -> Result<(PatternTable, u128)> {
        let started = Instant::now();
        self.push_path(self.verts[idx], depth);
        let mut child_ns = 0u128;
        let kids = self.children[idx].clone();
        let table = if kids.is_empty() {
            let mut entries: HashMap<DpKey, u64> = HashMap::new();
            for &(pat, colors) in &self.path_tables[depth] {
                *entries.entry((pat, colors)).or_insert(0) += 1;
            }
            self.stats.note_table(entries.len());
            PatternTable { depth, entries }
        } else {
            let mut acc: Option<PatternTable> = None;
            for child in kids {
                let (tc, ns) = self.node(child, depth + 1)?;
                child_ns += ns;
                let fc = forget(&tc, self.h, depth + 1, &mut self.stats)?;
                acc = Some(match acc {
                    None => fc,
                    Some(prev) => join(&prev, &fc, &mut self.stats)?,
                });
            }
            acc.expect("non-leaf node has at least one child")
        };
        self.pop_path();
        #[cfg(debug_assertions)]
        for (key, _) in table.entries.iter() {
            debug_assert!(key.0.valid_for(self.h, depth), "invalid stored pattern");
        }
        let total = started.elapsed().as_nanos();
        self.stats.note_depth(depth, total.saturating_sub(child_ns));
        Ok((table, total))
    }
}

/// Counts induced motif embeddings in the component covered by `tdd`,
/// split by the exact set of host colors each embedding's image occupies.
/// `color_bit` maps each host vertex to its color's bit position; pass
/// `None` to track nothing (all counts land on mask 0).
pub fn count_in_decomposition_colored(
    g: &Graph,
    tdd: &TreedepthDecomposition,
    h: &Graph,
    color_bit: Option<&[u8]>,
) -> Result<(std::collections::BTreeMap<u8, u64>, DpStats)> {
    validate_motif(h)?;
    tdd.validate(g)?;
    if tdd.height() > MAX_HEIGHT {
        return Err(Error::InvalidDecomposition(format!(
            "decomposition height {} exceeds the supported {}",
            tdd.height(),
            MAX_HEIGHT
        )));
    }
    let verts = tdd.vertices();
    let n = verts.len();
    let index_of = |v: u32| verts.binary_search(&v).expect("vertex in decomposition");

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut roots: Vec<usize> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        match tdd.parent_of(v) {
            None => roots.push(i),
            Some(p) => children[index_of(p)].push(i),
        }
    }
    // Order children by the smallest vertex in their subtree: process
    // vertices deepest-first so minima propagate upward.
    let mut subtree_min: Vec<u32> = verts.to_vec();
    let mut by_depth: Vec<usize> = (0..n).collect();
    by_depth.sort_unstable_by_key(|&i| std::cmp::Reverse(tdd.depth_of(verts[i]).unwrap()));
    for &i in &by_depth {
        if let Some(p) = tdd.parent_of(verts[i]) {
            let pi = index_of(p);
            subtree_min[pi] = subtree_min[pi].min(subtree_min[i]);
        }
    }
    for kids in &mut children {
        kids.sort_unstable_by_key(|&i| subtree_min[i]);
    }
    roots.sort_unstable_by_key(|&i| subtree_min[i]);

    let mut dp = Dp {
        g,
        h,
        verts,
        children,
        path: Vec::new(),
        path_tables: vec![vec![(KPattern::EMPTY, 0u8)]],
        color_bit,
        stats: DpStats::default(),
    };

    let fold_started = Instant::now();
    let mut root_ns = 0u128;
    let mut acc: Option<PatternTable> = None;
    for r in roots {
        let (tr, ns) = dp.node(r, 1)?;
        root_ns += ns;
        let fr = forget(&tr, h, 1, &mut dp.stats)?;
        acc = Some(match acc {
            None => fr,
            Some(prev) => join(&prev, &fr, &mut dp.stats)?,
        });
    }
    let mut stats = dp.stats;
    stats.note_depth(0, fold_started.elapsed().as_nanos().saturating_sub(root_ns));

    let full: u8 = if h.n() == MAX_MOTIF {
        u8::MAX
    } else {
        (1u8 << h.n()) - 1
    };
    let mut by_colors = std::collections::BTreeMap::new();
    if let Some(table) = acc {
        for (&(pat, colors), &count) in &table.entries {
            if pat.subset == full && pat.labels == 0 {
                let slot = by_colors.entry(colors).or_insert(0u64);
                *slot = slot.checked_add(count).ok_or(Error::CountOverflow)?;
            }
        }
    }
    Ok((by_colors, stats))
}

/// Exact number of induced motif embeddings in the component covered by
/// `tdd`, with join/forget instrumentation.
pub fn count_in_decomposition(
    g: &Graph,
    tdd: &TreedepthDecomposition,
    h: &Graph,
) -> Result<(u64, DpStats)> {
    let (by_colors, stats) = count_in_decomposition_colored(g, tdd, h, None)?;
    let mut total = 0u64;
    for &c in by_colors.values() {
        total = total.checked_add(c).ok_or(Error::CountOverflow)?;
    }
    Ok((total, stats))
}

/// Number of distinct k-patterns the DP can form for motif `h` with
/// boundary labels drawn from `1..=t`: subsets of at least two motif
/// vertices with a nonempty boundary that absorbs every leaving edge,
/// counted over all injective labelings.
pub fn pattern_labeling_count(h: &Graph, t: usize) -> Result<u64> {
    validate_motif(h)?;
    let k = h.n();
    let falling = |len: u32| -> u64 {
        (0..len as u64).map(|i| (t as u64).saturating_sub(i)).product()
    };
    let mut total = 0u64;
    for subset in 1u32..(1 << k) {
        if subset.count_ones() < 2 {
            continue;
        }
        // Vertices with a neighbor outside the subset must sit on the
        // boundary of every valid pattern.
        let mut required = 0u32;
        for v in 0..k {
            if subset & (1 << v) != 0
                && h.neighbors(v as u32).iter().any(|&u| subset & (1 << u) == 0)
            {
                required |= 1 << v;
            }
        }
        let optional = subset & !required;
        // Walk all supersets of `required` inside `subset`.
        let mut extra = optional;
        loop {
            let boundary = required | extra;
            if boundary != 0 {
                total = total
                    .checked_add(falling(boundary.count_ones()))
                    .ok_or(Error::CountOverflow)?;
            }
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & optional;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::baseline_count;
    use crate::color::Coloring;
    use crate::decompose::treedepth_decomposition;
    use crate::graph::{build_motif, MotifKind, MotifSpec};

    fn motif(kind: MotifKind, order: usize) -> Graph {
        build_motif(&MotifSpec::Family { kind, order }).unwrap()
    }

    /// Decomposition from a coloring giving every vertex a unique color:
    /// centers are always the smallest remaining vertex.
    fn chain_tdd(g: &Graph) -> TreedepthDecomposition {
        let coloring = Coloring::from_colors((0..g.n() as u32).collect()).unwrap();
        let comp: Vec<u32> = (0..g.n() as u32).collect();
        treedepth_decomposition(g, &comp, &coloring).unwrap()
    }

    #[test]
    fn kpattern_bit_encoding() {
        let p = KPattern::EMPTY.with_label(2, 3).with_label(0, 1);
        assert_eq!(p.subset(), 0b101);
        assert_eq!(p.boundary(), 0b101);
        assert_eq!(p.label_of(0), 1);
        assert_eq!(p.label_of(2), 3);
        assert_eq!(p.vertex_at_label(3), Some(2));
        assert_eq!(p.vertex_at_label(2), None);
        let q = p.clear_label(2);
        assert_eq!(q.subset(), 0b101);
        assert_eq!(q.boundary(), 0b001);
    }

    #[test]
    fn path_in_path_counts_two_automorphisms() {
        let p4 = motif(MotifKind::Path, 4);
        let tdd = chain_tdd(&p4);
        let (count, _) = count_in_decomposition(&p4, &tdd, &p4).unwrap();
        assert_eq!(count, 2);
    }

    #[test]
    fn star_in_star_counts_leaf_permutations() {
        let s5 = motif(MotifKind::Star, 5);
        let tdd = chain_tdd(&s5);
        let (count, _) = count_in_decomposition(&s5, &tdd, &s5).unwrap();
        assert_eq!(count, 24);
    }

    #[test]
    fn induced_path_absent_from_triangle() {
        let k3 = motif(MotifKind::Clique, 3);
        let p3 = motif(MotifKind::Path, 3);
        let tdd = chain_tdd(&k3);
        let (count, _) = count_in_decomposition(&k3, &tdd, &p3).unwrap();
        assert_eq!(count, 0);
    }

    #[test]
    fn agrees_with_baseline_on_random_components() {
        for seed in 0..15 {
            let g = crate::gen::gen_chung_lu(11, 3.2, seed).unwrap();
            for comp in g.components() {
                if comp.len() < 2 {
                    continue;
                }
                let (sub, _) = g.induced(&comp);
                let tdd = chain_tdd(&sub);
                for h in [
                    motif(MotifKind::Path, 3),
                    motif(MotifKind::Path, 4),
                    motif(MotifKind::Star, 4),
                ] {
                    let (count, _) = count_in_decomposition(&sub, &tdd, &h).unwrap();
                    assert_eq!(
                        count,
                        baseline_count(&sub, &h).unwrap(),
                        "seed {} component {:?}",
                        seed,
                        comp
                    );
                }
            }
        }
    }

    #[test]
    fn count_is_decomposition_independent() {
        // Path 0-1-2-3 decomposed two ways: chain rooted at 0, and rooted
        // at an interior centered coloring.
        let p4 = motif(MotifKind::Path, 4);
        let chain = chain_tdd(&p4);
        let balanced_coloring = Coloring::from_colors(vec![0, 1, 0, 2]).unwrap();
        let balanced =
            treedepth_decomposition(&p4, &[0, 1, 2, 3], &balanced_coloring).unwrap();
        assert_ne!(chain.height(), balanced.height());
        let h = motif(MotifKind::Path, 3);
        let (a, _) = count_in_decomposition(&p4, &chain, &h).unwrap();
        let (b, _) = count_in_decomposition(&p4, &balanced, &h).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn stats_are_deterministic() {
        let g = crate::gen::gen_chung_lu(12, 3.0, 5).unwrap();
        let comp = g.components().into_iter().max_by_key(|c| c.len()).unwrap();
        let (sub, _) = g.induced(&comp);
        let tdd = chain_tdd(&sub);
        let h = motif(MotifKind::Path, 4);
        let (c1, s1) = count_in_decomposition(&sub, &tdd, &h).unwrap();
        let (c2, s2) = count_in_decomposition(&sub, &tdd, &h).unwrap();
        assert_eq!(c1, c2);
        assert_eq!((s1.joins, s1.forgets), (s2.joins, s2.forgets));
        assert!(s1.table_peak >= 1);
    }

    #[test]
    fn join_identity_on_label_free_tables() {
        let a = PatternTable::from_entries(
            0,
            &[
                (KPattern::EMPTY, 1),
                (KPattern { subset: 0b011, labels: 0 }, 4),
                (KPattern { subset: 0b111, labels: 0 }, 2),
            ],
        )
        .unwrap();
        let identity = PatternTable::identity(0);
        let mut stats = DpStats::default();
        let joined = join(&a, &identity, &mut stats).unwrap();
        assert_eq!(joined, a);
    }

    #[test]
    fn join_rejects_context_mismatch() {
        let a = PatternTable::identity(1);
        let b = PatternTable::identity(2);
        let mut stats = DpStats::default();
        assert!(matches!(
            join(&a, &b, &mut stats),
            Err(Error::ContextMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn join_multiplies_disjoint_interiors_with_equal_boundaries() {
        // Both tables hypothesize motif vertex 2 at depth 1; interiors
        // {0} and {1} are disjoint.
        let boundary = KPattern::EMPTY.with_label(2, 1);
        let pa = KPattern {
            subset: boundary.subset() | 0b001,
            labels: boundary.labels,
        };
        let pb = KPattern {
            subset: boundary.subset() | 0b010,
            labels: boundary.labels,
        };
        let a = PatternTable::from_entries(1, &[(pa, 3)]).unwrap();
        let b = PatternTable::from_entries(1, &[(pb, 5)]).unwrap();
        let mut stats = DpStats::default();
        let joined = join(&a, &b, &mut stats).unwrap();
        assert_eq!(joined.len(), 1);
        let merged = KPattern {
            subset: 0b111,
            labels: boundary.labels,
        };
        assert_eq!(joined.count_of(&merged), 15);
        assert_eq!(stats.joins, 1);
    }

    #[test]
    fn join_commutes() {
        use rand::Rng;
        let mut rng = crate::gen::rng_for(23);
        for _ in 0..200 {
            let depth = rng.gen_range(0..4usize);
            let build = |rng: &mut rand_chacha::ChaCha12Rng| {
                let mut entries = Vec::new();
                for _ in 0..rng.gen_range(1..6) {
                    let subset = rng.gen_range(1u8..16);
                    let mut pat = KPattern {
                        subset,
                        labels: 0,
                    };
                    // Give a random subset vertex each label up to depth.
                    for l in 1..=depth {
                        if rng.gen_bool(0.5) {
                            let candidates: Vec<usize> = (0..4)
                                .filter(|&v| subset & (1 << v) != 0 && pat.label_of(v) == 0)
                                .collect();
                            if let Some(&v) =
                                candidates.get(rng.gen_range(0..candidates.len().max(1)))
                            {
                                pat = pat.with_label(v, l as u8);
                            }
                        }
                    }
                    entries.push((pat, rng.gen_range(1u64..10)));
                }
                PatternTable::from_entries(depth, &entries).unwrap()
            };
            let a = build(&mut rng);
            let b = build(&mut rng);
            let mut s1 = DpStats::default();
            let mut s2 = DpStats::default();
            let ab = join(&a, &b, &mut s1).unwrap();
            let ba = join(&b, &a, &mut s2).unwrap();
            assert_eq!(ab, ba);
            assert_eq!(s1.joins, s2.joins);
        }
    }

    #[test]
    fn forget_without_labeled_vertex_only_shifts_context() {
        let h = motif(MotifKind::Path, 3);
        let pat = KPattern::EMPTY.with_label(0, 1);
        let t = PatternTable::from_entries(2, &[(pat, 7)]).unwrap();
        let mut stats = DpStats::default();
        let out = forget(&t, &h, 2, &mut stats).unwrap();
        assert_eq!(out.depth(), 1);
        assert_eq!(out.count_of(&pat), 7);
        assert_eq!(stats.forgets, 1);
    }

    #[test]
    fn forget_drops_separator_violations() {
        // P_3 center (vertex 1) at label 2 with endpoint 2 unembedded:
        // forgetting the center seals the subtree with edge 1-2 dangling.
        let h = motif(MotifKind::Path, 3);
        let pat = KPattern::EMPTY.with_label(1, 2).with_label(0, 1);
        let t = PatternTable::from_entries(2, &[(pat, 3)]).unwrap();
        let mut stats = DpStats::default();
        let out = forget(&t, &h, 2, &mut stats).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn forget_preserves_sums_without_drops() {
        let h = motif(MotifKind::Path, 3);
        // Complete subsets with a vertex at the deepest label never drop.
        let full = KPattern {
            subset: 0b111,
            labels: 0,
        };
        let t = PatternTable::from_entries(
            1,
            &[(full.with_label(2, 1), 4), (full, 9)],
        )
        .unwrap();
        let mut stats = DpStats::default();
        let out = forget(&t, &h, 1, &mut stats).unwrap();
        let total: u64 = out.sorted_entries().iter().map(|&(_, c)| c).sum();
        assert_eq!(total, 13);
        // Both inputs collapse to the same label-free pattern.
        assert_eq!(out.len(), 1);
        assert_eq!(out.count_of(&full), 13);
    }

    #[test]
    fn forget_requires_deepest_label() {
        let h = motif(MotifKind::Path, 3);
        let t = PatternTable::identity(3);
        let mut stats = DpStats::default();
        assert!(matches!(
            forget(&t, &h, 2, &mut stats),
            Err(Error::ForgetDepth { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn labeling_count_matches_cubic_formula_for_p3() {
        let p3 = motif(MotifKind::Path, 3);
        let cubic = |t: u64| t * t * t + 3 * t * t + t;
        for t in 1..=6u64 {
            assert_eq!(
                pattern_labeling_count(&p3, t as usize).unwrap(),
                cubic(t),
                "at t = {}",
                t
            );
        }
        assert_eq!(pattern_labeling_count(&p3, 3).unwrap(), 57);
        assert_eq!(pattern_labeling_count(&p3, 4).unwrap(), 116);
        assert_eq!(pattern_labeling_count(&p3, 5).unwrap(), 205);
    }

    #[test]
    fn labeling_count_is_monotone() {
        for h in [
            motif(MotifKind::Path, 3),
            motif(MotifKind::Path, 4),
            motif(MotifKind::Star, 4),
        ] {
            let mut prev = 0;
            for t in 1..=6 {
                let c = pattern_labeling_count(&h, t).unwrap();
                assert!(c > prev);
                prev = c;
            }
        }
    }

    #[test]
    fn rejects_oversized_motif() {
        let h = motif(MotifKind::Path, 4);
        let nine = build_motif(&MotifSpec::Family {
            kind: MotifKind::Path,
            order: 9,
        });
        // The builder itself may cap the order; count must too.
        if let Ok(nine) = nine {
            let tdd = chain_tdd(&h);
            assert!(count_in_decomposition(&h, &tdd, &nine).is_err());
        }
    }
}
