//! Color-set enumeration and treedepth decompositions.
//!
//! Color sets of size up to `h` are walked in depth-first prefix order, so
//! each set is emitted immediately before its extensions. A cursor keeps the
//! connected components of the current set's induced subgraph up to date
//! through union-find with rollback: pushing a color class merges its
//! vertices into the cached parent-prefix partition, popping undoes it.

use std::collections::HashMap;

use crate::color::Coloring;
use crate::dsu::RollbackDsu;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// All color sets over `0..k` of size `1..=h`, in depth-first prefix order:
/// every set appears immediately before the sets that extend it.
pub fn enumerate_color_sets(k: usize, h: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn visit(cur: &mut Vec<u32>, k: usize, h: usize, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if cur.len() == h {
            return;
        }
        let lo = cur.last().map_or(0, |&c| c + 1);
        for c in lo..k as u32 {
            cur.push(c);
            visit(cur, k, h, out);
            cur.pop();
        }
    }
    if h >= 1 {
        for c in 0..k as u32 {
            cur.push(c);
            visit(&mut cur, k, h, &mut out);
            cur.pop();
        }
    }
    out
}

struct Frame {
    alpha_idx: usize,
    dsu_cp: usize,
    active_len: usize,
}

/// Lazy color-set walker that owns the incremental component state.
///
/// `advance` moves to the next set in the same depth-first order as
/// [`enumerate_color_sets`]; `current` and `components` expose the set and
/// the components of its induced subgraph. An optional pinned color
/// restricts the walk to sets containing that color.
pub struct ColorSetCursor<'a> {
    g: &'a Graph,
    coloring: &'a Coloring,
    alphabet: Vec<u32>,
    pinned: Option<u32>,
    max_size: usize,
    frames: Vec<Frame>,
    current_set: Vec<u32>,
    dsu: RollbackDsu,
    active: Vec<bool>,
    active_stack: Vec<u32>,
    started: bool,
    done: bool,
}

impl<'a> ColorSetCursor<'a> {
    pub fn new(g: &'a Graph, coloring: &'a Coloring, max_size: usize) -> Self {
        Self::build(g, coloring, max_size, None)
    }

    /// A cursor over exactly the sets containing `pin`.
    pub fn with_pinned(g: &'a Graph, coloring: &'a Coloring, max_size: usize, pin: u32) -> Self {
        Self::build(g, coloring, max_size, Some(pin))
    }

    fn build(g: &'a Graph, coloring: &'a Coloring, max_size: usize, pinned: Option<u32>) -> Self {
        let alphabet: Vec<u32> = (0..coloring.size() as u32)
            .filter(|&c| Some(c) != pinned)
            .collect();
        let mut cursor = ColorSetCursor {
            g,
            coloring,
            alphabet,
            pinned,
            max_size,
            frames: Vec::new(),
            current_set: Vec::new(),
            dsu: RollbackDsu::new(g.n()),
            active: vec![false; g.n()],
            active_stack: Vec::new(),
            started: false,
            done: false,
        };
        if let Some(pin) = pinned {
            cursor.activate_class(pin);
            cursor.current_set.push(pin);
        }
        cursor
    }

    fn activate_class(&mut self, color: u32) {
        for &v in self.coloring.class(color) {
            self.active[v as usize] = true;
            self.active_stack.push(v);
        }
        for &v in self.coloring.class(color) {
            for &u in self.g.neighbors(v) {
                if self.active[u as usize] {
                    self.dsu.union(v, u);
                }
            }
        }
    }

    fn push_frame(&mut self, alpha_idx: usize) {
        let color = self.alphabet[alpha_idx];
        let frame = Frame {
            alpha_idx,
            dsu_cp: self.dsu.checkpoint(),
            active_len: self.active_stack.len(),
        };
        self.activate_class(color);
        self.current_set.push(color);
        self.frames.push(frame);
    }

    fn pop_frame(&mut self) -> usize {
        let frame = self.frames.pop().expect("pop on empty frame stack");
        self.dsu.rollback(frame.dsu_cp);
        for &v in &self.active_stack[frame.active_len..] {
            self.active[v as usize] = false;
        }
        self.active_stack.truncate(frame.active_len);
        self.current_set.pop();
        frame.alpha_idx
    }

    fn rest_capacity(&self) -> usize {
        self.max_size - usize::from(self.pinned.is_some())
    }

    /// Steps to the next color set; false once the walk is exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            if self.max_size == 0 {
                self.done = true;
                return false;
            }
            if self.pinned.is_some() {
                return true; // emit the pinned singleton first
            }
            if self.rest_capacity() >= 1 && !self.alphabet.is_empty() {
                self.push_frame(0);
                return true;
            }
            self.done = true;
            return false;
        }
        let next_idx = self.frames.last().map_or(0, |f| f.alpha_idx + 1);
        if self.frames.len() < self.rest_capacity() && next_idx < self.alphabet.len() {
            self.push_frame(next_idx);
            return true;
        }
        loop {
            if self.frames.is_empty() {
                self.done = true;
                return false;
            }
            let idx = self.pop_frame();
            if idx + 1 < self.alphabet.len() {
                self.push_frame(idx + 1);
                return true;
            }
        }
    }

    pub fn current(&self) -> &[u32] {
        &self.current_set
    }

    /// Vertices of the current induced subgraph, in activation order.
    pub fn active_vertices(&self) -> &[u32] {
        &self.active_stack
    }

    pub fn root_of(&self, v: u32) -> u32 {
        self.dsu.find(v)
    }

    /// Number of active vertices in `v`'s component.
    pub fn component_size_of(&self, v: u32) -> u32 {
        self.dsu.set_size(v)
    }

    /// The most recently added color of the current set: the top pushed
    /// class, or the pinned color when only that is active.
    pub fn last_class(&self) -> Option<u32> {
        self.frames
            .last()
            .map(|f| self.alphabet[f.alpha_idx])
            .or(self.pinned)
    }

    /// Components of the current induced subgraph: each sorted ascending,
    /// ordered by smallest contained vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut by_root: HashMap<u32, Vec<u32>> = HashMap::new();
        for &v in &self.active_stack {
            by_root.entry(self.dsu.find(v)).or_default().push(v);
        }
        let mut comps: Vec<Vec<u32>> = by_root.into_values().collect();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }
}

/// Connected components of the subgraph induced by the vertices whose color
/// lies in `set`. Components are sorted ascending and ordered by smallest
/// contained vertex.
pub fn induced_components(g: &Graph, coloring: &Coloring, set: &[u32]) -> Result<Vec<Vec<u32>>> {
    let k = coloring.size() as u32;
    let mut seen = vec![false; k as usize];
    for &c in set {
        if c >= k {
            return Err(Error::InvalidColoring(format!(
                "color {} out of range for a coloring of size {}",
                c, k
            )));
        }
        if seen[c as usize] {
            return Err(Error::InvalidColoring(format!("duplicate color {} in set", c)));
        }
        seen[c as usize] = true;
    }
    let mut cursor = ColorSetCursor::new(g, coloring, set.len());
    for &c in set {
        let idx = cursor.alphabet.binary_search(&c).expect("validated above");
        cursor.push_frame(idx);
    }
    Ok(cursor.components())
}

/// Rooted forest over a vertex subset in which every edge of the induced
/// subgraph joins an ancestor-descendant pair.
#[derive(Debug, Clone)]
pub struct TreedepthDecomposition {
    verts: Vec<u32>,            // sorted ascending
    parent: Vec<Option<u32>>,   // parallel to verts, host vertex ids
    depth: Vec<u32>,            // parallel to verts, roots at depth 1
    height: u32,
}

impl TreedepthDecomposition {
    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    fn index_of(&self, v: u32) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    pub fn parent_of(&self, v: u32) -> Option<u32> {
        self.index_of(v).and_then(|i| self.parent[i])
    }

    pub fn depth_of(&self, v: u32) -> Option<u32> {
        self.index_of(v).map(|i| self.depth[i])
    }

    /// True if `a` is an ancestor of `b` or vice versa.
    pub fn vertical(&self, a: u32, b: u32) -> bool {
        let walk_up = |mut v: u32, target: u32| -> bool {
            loop {
                if v == target {
                    return true;
                }
                match self.parent_of(v) {
                    Some(p) => v = p,
                    None => return false,
                }
            }
        };
        walk_up(a, b) || walk_up(b, a)
    }

    /// Checks structural validity against the host graph: parent links form a
    /// forest with consistent depths and every induced edge is vertical.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (i, &v) in self.verts.iter().enumerate() {
            match self.parent[i] {
                None => {
                    if self.depth[i] != 1 {
                        return Err(Error::InvalidDecomposition(format!(
                            "root {} has depth {}",
                            v, self.depth[i]
                        )));
                    }
                }
                Some(p) => {
                    let pi = self.index_of(p).ok_or_else(|| {
                        Error::InvalidDecomposition(format!(
                            "parent {} of {} is outside the decomposition",
                            p, v
                        ))
                    })?;
                    if self.depth[i] != self.depth[pi] + 1 {
                        return Err(Error::InvalidDecomposition(format!(
                            "vertex {} at depth {} under parent at depth {}",
                            v, self.depth[i], self.depth[pi]
                        )));
                    }
                }
            }
        }
        for (i, &v) in self.verts.iter().enumerate() {
            if self.depth[i] > self.height {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex {} deeper than recorded height",
                    v
                )));
            }
            for &w in g.neighbors(v) {
                if w > v && self.index_of(w).is_some() && !self.vertical(v, w) {
                    return Err(Error::InvalidDecomposition(format!(
                        "edge {} {} is not vertical",
                        v, w
                    )));
                }
            }
        }
        Ok(())
    }

    /// Writes `vertex parent depth` triples, one per vertex, parent `-1` for
    /// roots.
    pub fn dump<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        for (i, &v) in self.verts.iter().enumerate() {
            let p = self.parent[i].map_or(-1i64, |p| p as i64);
            writeln!(w, "{} {} {}", v, p, self.depth[i])?;
        }
        Ok(())
    }
}

/// Builds a treedepth decomposition of a connected `component` by recursive
/// center elimination: the vertex of the smallest uniquely occurring color
/// becomes the root, and the components of the remainder are decomposed
/// below it, visited in ascending order of their smallest vertex.
///
/// Fails if some recursion level has no uniquely colored vertex, which means
/// the coloring restricted to the component is not centered.
pub fn treedepth_decomposition(
    g: &Graph,
    component: &[u32],
    coloring: &Coloring,
) -> Result<TreedepthDecomposition> {
    let mut verts = component.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != component.len() {
        return Err(Error::InvalidDecomposition(
            "component contains duplicate vertices".into(),
        ));
    }
    let mut parent_map: HashMap<u32, Option<u32>> = HashMap::with_capacity(verts.len());
    let mut depth_map: HashMap<u32, u32> = HashMap::with_capacity(verts.len());
    let mut height = 0;

    // Iterative elimination: each work item is a connected vertex set plus
    // the tree position it hangs from.
    let mut work: Vec<(Vec<u32>, Option<u32>, u32)> = vec![(verts.clone(), None, 1)];
    while let Some((sub, par, depth)) = work.pop() {
        // Smallest color with multiplicity one.
        let mut counts: std::collections::BTreeMap<u32, (u32, u32)> = Default::default();
        for &v in &sub {
            let c = coloring.color(v);
            let e = counts.entry(c).or_insert((0, v));
            e.0 += 1;
        }
        let center = counts
            .iter()
            .find(|(_, &(count, _))| count == 1)
            .map(|(_, &(_, v))| v)
            .ok_or_else(|| {
                Error::InvalidColoring(format!(
                    "no uniquely colored vertex in a component of {} vertices",
                    sub.len()
                ))
            })?;
        parent_map.insert(center, par);
        depth_map.insert(center, depth);
        height = height.max(depth);

        // Components of the remainder, ascending by smallest vertex.
        let mut in_sub: HashMap<u32, bool> = sub.iter().map(|&v| (v, false)).collect();
        in_sub.remove(&center);
        let mut comps: Vec<Vec<u32>> = Vec::new();
        for &s in &sub {
            if s == center || in_sub[&s] {
                continue;
            }
            let mut comp = vec![s];
            *in_sub.get_mut(&s).unwrap() = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in g.neighbors(v) {
                    if let Some(visited) = in_sub.get_mut(&u) {
                        if !*visited {
                            *visited = true;
                            comp.push(u);
                            stack.push(u);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        // Reverse push keeps pop order ascending by smallest vertex.
        for comp in comps.into_iter().rev() {
            work.push((comp, Some(center), depth + 1));
        }
    }

    if parent_map.len() != verts.len() {
        return Err(Error::InvalidDecomposition(
            "component is not connected".into(),
        ));
    }
    let parent: Vec<Option<u32>> = verts.iter().map(|v| parent_map[v]).collect();
    let depth: Vec<u32> = verts.iter().map(|v| depth_map[v]).collect();
    let tdd = TreedepthDecomposition {
        verts,
        parent,
        depth,
        height,
    };
    Ok(tdd)
}
