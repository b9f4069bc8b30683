//! Centered and p-centered coloring validation.
//!
//! A coloring is centered when every connected subgraph has a vertex whose
//! color appears in it exactly once. It is p-centered when every connected
//! subgraph either uses at least p colors or has such a uniquely colored
//! vertex. Checking the p-centered condition directly over all connected
//! subgraphs is hopeless; instead we use an equivalent criterion over color
//! sets: the coloring is p-centered exactly when, for every set S of at most
//! p-1 colors, every connected component of the subgraph induced by S
//! contains a color of multiplicity one.
//!
//! Equivalence: any connected subgraph D using fewer than p colors lies
//! inside one component C of the subgraph induced by its own color set, and
//! the color occurring once in C is a color of D (C and D span the same
//! color set restricted to C's colors, and D is connected inside C), so it
//! occurs in D at most once but at least once, hence exactly once.
//! Conversely a component violating the criterion is itself a connected
//! subgraph on fewer than p colors with no unique color.
//!
//! Two refinements keep the walk cheap. A component of G[S] spanning a color
//! set C is also a maximal connected piece of G[C] (dropping the classes of
//! S \ C cannot let it grow), so each component only needs testing at the set
//! it spans exactly. The walk therefore visits sets in passes of increasing
//! size, testing a set only at the pass matching its size, and within a set
//! only the components that reach the largest color: a component missing
//! that color spans a smaller set already covered by an earlier pass or an
//! earlier set of this pass. Violations sit at the set a bad component
//! spans, so failing colorings are rejected after the small passes.

use std::collections::HashMap;

use crate::color::Coloring;
use crate::decompose::ColorSetCursor;
use crate::graph::Graph;

/// Scratch for [`components_through_class_have_unique_color`], reused across
/// the whole walk to keep the per-set test allocation-free.
#[derive(Default)]
struct CheckScratch {
    roots: Vec<u32>,
    pairs: Vec<(u32, u32)>,
}

/// True when every component of the current set that contains a vertex of
/// `class` has a color of multiplicity one. Components of size one pass
/// trivially and are skipped up front.
fn components_through_class_have_unique_color(
    cursor: &ColorSetCursor,
    coloring: &Coloring,
    class: u32,
    scratch: &mut CheckScratch,
) -> bool {
    scratch.roots.clear();
    for &v in coloring.class(class) {
        if cursor.component_size_of(v) >= 2 {
            scratch.roots.push(cursor.root_of(v));
        }
    }
    if scratch.roots.is_empty() {
        return true;
    }
    scratch.roots.sort_unstable();
    scratch.roots.dedup();
    scratch.pairs.clear();
    for &v in cursor.active_vertices() {
        let root = cursor.root_of(v);
        if scratch.roots.binary_search(&root).is_ok() {
            scratch.pairs.push((root, coloring.color(v)));
        }
    }
    scratch.pairs.sort_unstable();
    let mut i = 0;
    while i < scratch.pairs.len() {
        let root = scratch.pairs[i].0;
        let mut unique = false;
        let mut j = i;
        while j < scratch.pairs.len() && scratch.pairs[j].0 == root {
            let mut run = j + 1;
            while run < scratch.pairs.len() && scratch.pairs[run] == scratch.pairs[j] {
                run += 1;
            }
            if run - j == 1 {
                unique = true;
            }
            j = run;
        }
        if !unique {
            return false;
        }
        i = j;
    }
    true
}

/// One size pass: walks sets of size up to `depth` (through `pin` when
/// given) and tests exactly the size-`depth` sets, each against the
/// components reaching its largest color.
fn pass_is_clean(
    g: &Graph,
    coloring: &Coloring,
    depth: usize,
    pin: Option<u32>,
    scratch: &mut CheckScratch,
) -> bool {
    let mut cursor = match pin {
        None => ColorSetCursor::new(g, coloring, depth),
        Some(pin) => ColorSetCursor::with_pinned(g, coloring, depth, pin),
    };
    while cursor.advance() {
        if cursor.current().len() < depth {
            continue;
        }
        let last = cursor.last_class().expect("nonempty set has a last class");
        if !components_through_class_have_unique_color(&cursor, coloring, last, scratch) {
            return false;
        }
    }
    true
}

/// Checks the p-centered condition by walking all color sets of size at most
/// p-1 and testing each component for a uniquely occurring color.
pub fn is_p_centered(g: &Graph, coloring: &Coloring, p: usize) -> bool {
    if coloring.n() != g.n() {
        return false;
    }
    if p <= 1 {
        // Every nonempty subgraph would need >= p colors or a center; with
        // p <= 1 only the empty graph complies.
        return g.n() == 0;
    }
    let mut scratch = CheckScratch::default();
    for depth in 1..=p - 1 {
        if !pass_is_clean(g, coloring, depth, None, &mut scratch) {
            return false;
        }
        if depth >= coloring.size() {
            break;
        }
    }
    true
}

/// Like [`is_p_centered`] but only re-examines color sets containing `pin`.
/// Sound after a change that touched only the classes merged into `pin`:
/// any newly violating component contains a recolored vertex, so its span
/// includes the changed color.
pub(crate) fn is_p_centered_touching(
    g: &Graph,
    coloring: &Coloring,
    p: usize,
    pin: u32,
) -> bool {
    if p <= 1 {
        return g.n() == 0;
    }
    let mut scratch = CheckScratch::default();
    for depth in 1..=p - 1 {
        if !pass_is_clean(g, coloring, depth, Some(pin), &mut scratch) {
            return false;
        }
        if depth >= coloring.size() {
            break;
        }
    }
    true
}

/// Checks the centered condition by recursive center elimination on every
/// component: some vertex must have a unique color, and after removing it
/// every remaining component must again have one.
///
/// The choice of center never matters: if the coloring is centered, every
/// connected subgraph keeps a uniquely colored vertex no matter which
/// centers were removed above it, and if elimination succeeds then every
/// connected subgraph contains a first-eliminated vertex, whose color was
/// unique in the enclosing eliminated set and so is unique in the subgraph.
pub fn is_centered(g: &Graph, coloring: &Coloring) -> bool {
    if coloring.n() != g.n() {
        return false;
    }
    for component in g.components() {
        if !eliminates(g, coloring, component) {
            return false;
        }
    }
    true
}

fn eliminates(g: &Graph, coloring: &Coloring, component: Vec<u32>) -> bool {
    let mut work = vec![component];
    while let Some(sub) = work.pop() {
        let mut counts: HashMap<u32, (u32, u32)> = HashMap::new();
        for &v in &sub {
            let e = counts.entry(coloring.color(v)).or_insert((0, v));
            e.0 += 1;
        }
        let Some(center) = counts.values().find(|&&(n, _)| n == 1).map(|&(_, v)| v) else {
            return false;
        };
        let mut visited: HashMap<u32, bool> = sub.iter().map(|&v| (v, false)).collect();
        visited.remove(&center);
        for &s in &sub {
            if s == center || visited[&s] {
                continue;
            }
            let mut comp = vec![s];
            *visited.get_mut(&s).unwrap() = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in g.neighbors(v) {
                    if let Some(seen) = visited.get_mut(&u) {
                        if !*seen {
                            *seen = true;
                            comp.push(u);
                            stack.push(u);
                        }
                    }
                }
            }
            work.push(comp);
        }
    }
    true
}
