//! p-centered coloring construction.
//!
//! The entry point is [`compute_p_centered_coloring`]: orient the graph,
//! then alternately augment the orientation and greedily color its
//! underlying graph until the coloring is p-centered. Optional phases
//! shrink the result afterwards: a shared color for degree-one vertices,
//! randomized recoloring attempts, and greedy class merging. All phases
//! preserve p-centeredness and the final coloring is always re-validated.

pub mod arc;
pub mod check;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

pub use arc::{
    augment_step, degeneracy, orient, orient_degeneracy, orient_sandpile, smallest_last_order,
    ArcGraph, Augmentation, Orientation,
};
pub use check::{is_centered, is_p_centered};

use crate::error::{Error, Result};
use crate::gen::rng_for;
use crate::graph::Graph;

/// Partition of the vertices into contiguous 0-based color classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    color: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

impl Coloring {
    /// Builds a coloring from per-vertex colors, which must use every id in
    /// `0..max+1`.
    pub fn from_colors(color: Vec<u32>) -> Result<Self> {
        let size = color.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut classes = vec![Vec::new(); size];
        for (v, &c) in color.iter().enumerate() {
            classes[c as usize].push(v as u32);
        }
        if let Some(empty) = classes.iter().position(|cl| cl.is_empty()) {
            return Err(Error::InvalidColoring(format!(
                "color ids are not contiguous: color {} is unused",
                empty
            )));
        }
        Ok(Coloring { color, classes })
    }

    /// Builds a coloring from arbitrary color ids by compacting them to
    /// contiguous ids in ascending order of the original ids.
    pub fn compacted(color: Vec<u32>) -> Self {
        let mut ids: Vec<u32> = color.clone();
        ids.sort_unstable();
        ids.dedup();
        let remap: HashMap<u32, u32> = ids
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let color: Vec<u32> = color.into_iter().map(|c| remap[&c]).collect();
        Self::from_colors(color).expect("compacted ids are contiguous")
    }

    pub fn n(&self) -> usize {
        self.color.len()
    }

    /// Number of distinct colors.
    pub fn size(&self) -> usize {
        self.classes.len()
    }

    pub fn color(&self, v: u32) -> u32 {
        self.color[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.color
    }

    /// Vertices of one class, ascending.
    pub fn class(&self, c: u32) -> &[u32] {
        &self.classes[c as usize]
    }

    /// Class sizes indexed by color id.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// True if no edge of `g` joins two vertices of the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.color[u as usize] != self.color[v as usize])
    }
}

/// Reads `vertex color` pairs, one per line, `#` starting a comment. Every
/// vertex in `0..n` must be assigned exactly once, where n is one more than
/// the largest vertex id; color ids must be contiguous from 0.
pub fn load_coloring<R: Read>(reader: R) -> Result<Coloring> {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'vertex color', got {} fields", fields.len()),
            });
        }
        let v: u32 = fields[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad vertex id '{}'", fields[0]),
        })?;
        let c: u32 = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad color id '{}'", fields[1]),
        })?;
        pairs.push((v, c));
    }
    let n = pairs.iter().map(|&(v, _)| v as usize + 1).max().unwrap_or(0);
    let mut color = vec![u32::MAX; n];
    for (v, c) in pairs {
        if color[v as usize] != u32::MAX {
            return Err(Error::InvalidColoring(format!(
                "vertex {} is assigned more than one color",
                v
            )));
        }
        color[v as usize] = c;
    }
    if let Some(v) = color.iter().position(|&c| c == u32::MAX) {
        return Err(Error::InvalidColoring(format!(
            "vertex {} has no color assignment",
            v
        )));
    }
    Coloring::from_colors(color)
}

pub fn load_coloring_path<P: AsRef<Path>>(path: P) -> Result<Coloring> {
    load_coloring(std::fs::File::open(path)?)
}

/// Writes `vertex color` pairs in ascending vertex order.
pub fn write_coloring<W: Write>(coloring: &Coloring, mut w: W) -> Result<()> {
    for (v, &c) in coloring.colors().iter().enumerate() {
        writeln!(w, "{} {}", v, c)?;
    }
    Ok(())
}

/// Vertex ordering rule for the greedy coloring pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prioritization {
    LowDegree,
    HighDegree,
    Dsatur,
}

impl FromStr for Prioritization {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "low-degree" => Ok(Prioritization::LowDegree),
            "high-degree" => Ok(Prioritization::HighDegree),
            "dsatur" => Ok(Prioritization::Dsatur),
            other => Err(format!(
                "unknown prioritization '{}' (expected low-degree, high-degree, or dsatur)",
                other
            )),
        }
    }
}

impl fmt::Display for Prioritization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prioritization::LowDegree => "low-degree",
            Prioritization::HighDegree => "high-degree",
            Prioritization::Dsatur => "dsatur",
        })
    }
}

impl FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "degeneracy" => Ok(Orientation::Degeneracy),
            "sandpile" => Ok(Orientation::Sandpile),
            other => Err(format!(
                "unknown orientation '{}' (expected degeneracy or sandpile)",
                other
            )),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Degeneracy => "degeneracy",
            Orientation::Sandpile => "sandpile",
        })
    }
}

impl FromStr for Augmentation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tfa" => Ok(Augmentation::Tfa),
            "dtfa" => Ok(Augmentation::Dtfa),
            other => Err(format!(
                "unknown augmentation '{}' (expected tfa or dtfa)",
                other
            )),
        }
    }
}

impl fmt::Display for Augmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Augmentation::Tfa => "tfa",
            Augmentation::Dtfa => "dtfa",
        })
    }
}

/// Class-selection rule for [`split_color_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitHeuristic {
    Min,
    Med,
    Max,
}

impl FromStr for SplitHeuristic {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min" => Ok(SplitHeuristic::Min),
            "med" => Ok(SplitHeuristic::Med),
            "max" => Ok(SplitHeuristic::Max),
            other => Err(format!(
                "unknown split heuristic '{}' (expected min, med, or max)",
                other
            )),
        }
    }
}

impl fmt::Display for SplitHeuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitHeuristic::Min => "min",
            SplitHeuristic::Med => "med",
            SplitHeuristic::Max => "max",
        })
    }
}

/// Knobs for [`compute_p_centered_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorConfig {
    pub orientation: Orientation,
    pub augmentation: Augmentation,
    pub prioritization: Prioritization,
    pub preprocess_high_degree: bool,
    pub postprocess_degree_one: bool,
    pub recolor_attempts: u32,
    pub merge_classes: bool,
    pub max_iterations: u32,
}

impl Default for ColorConfig {
    fn default() -> Self {
        ColorConfig {
            orientation: Orientation::Degeneracy,
            augmentation: Augmentation::Tfa,
            prioritization: Prioritization::LowDegree,
            preprocess_high_degree: false,
            postprocess_degree_one: false,
            recolor_attempts: 3,
            merge_classes: true,
            max_iterations: 20,
        }
    }
}

/// Instrumentation from one coloring run: loop effort, colors after each
/// phase, and per-phase wall time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColorStats {
    pub iterations: u32,
    pub augmentation_steps: u32,
    pub arcs: usize,
    pub high_degree_isolated: usize,
    pub colors_after_loop: usize,
    pub colors_after_degree_one: Option<usize>,
    pub colors_after_recolor: Option<usize>,
    pub colors_after_merge: Option<usize>,
    pub colors_final: usize,
    pub loop_ns: u128,
    pub degree_one_ns: u128,
    pub recolor_ns: u128,
    pub merge_ns: u128,
    pub validate_ns: u128,
}

/// Colors the underlying undirected graph of `a` greedily in the order
/// chosen by `prioritization`, assigning each vertex the smallest color
/// absent from its already-colored neighbors. Ties in every ordering rule
/// break toward the smaller vertex id.
pub fn greedy_color(a: &ArcGraph, prioritization: Prioritization) -> Coloring {
    let n = a.n();
    let neighbors: Vec<Vec<u32>> = (0..n as u32).map(|v| a.underlying_neighbors(v)).collect();
    let mut color = vec![u32::MAX; n];

    let assign_smallest = |v: u32, color: &mut Vec<u32>, scratch: &mut Vec<bool>| {
        scratch.clear();
        scratch.resize(neighbors[v as usize].len() + 1, false);
        for &u in &neighbors[v as usize] {
            let c = color[u as usize];
            if c != u32::MAX && (c as usize) < scratch.len() {
                scratch[c as usize] = true;
            }
        }
        let c = scratch.iter().position(|&used| !used).unwrap() as u32;
        color[v as usize] = c;
        c
    };

    let mut scratch = Vec::new();
    match prioritization {
        Prioritization::LowDegree | Prioritization::HighDegree => {
            let mut order: Vec<u32> = (0..n as u32).collect();
            match prioritization {
                Prioritization::LowDegree => {
                    order.sort_by_key(|&v| (neighbors[v as usize].len(), v));
                }
                _ => {
                    order.sort_by_key(|&v| (std::cmp::Reverse(neighbors[v as usize].len()), v));
                }
            }
            for v in order {
                assign_smallest(v, &mut color, &mut scratch);
            }
        }
        Prioritization::Dsatur => {
            // Saturation = number of distinct colors among colored
            // neighbors; highest saturation first, ties by smallest id.
            let mut sat: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
            let mut queue: BTreeSet<(std::cmp::Reverse<usize>, u32)> =
                (0..n as u32).map(|v| (std::cmp::Reverse(0), v)).collect();
            while let Some((_, v)) = queue.pop_first() {
                let c = assign_smallest(v, &mut color, &mut scratch);
                for &u in &neighbors[v as usize] {
                    if color[u as usize] == u32::MAX && !sat[u as usize].contains(&c) {
                        queue.remove(&(std::cmp::Reverse(sat[u as usize].len()), u));
                        sat[u as usize].insert(c);
                        queue.insert((std::cmp::Reverse(sat[u as usize].len()), u));
                    }
                }
            }
        }
    }

    if n == 0 {
        return Coloring::from_colors(Vec::new()).unwrap();
    }
    Coloring::from_colors(color).expect("greedy assignment uses contiguous colors")
}

/// Smallest t >= 1 with t^4 >= n.
fn fourth_root_ceil(n: usize) -> usize {
    let mut t = ((n as f64).powf(0.25).ceil() as usize).max(1);
    while t > 1 && (t - 1).pow(4) >= n as u32 as usize {
        t -= 1;
    }
    while t.pow(4) < n {
        t += 1;
    }
    t
}

/// Degree-one consolidation: in every component larger than two vertices,
/// all degree-one vertices move into one shared fresh color. Preserves
/// p-centeredness (each such vertex is a leaf of any connected subgraph it
/// joins, and a subgraph with two of them keeps a unique color among the
/// rest). Returns the compacted candidate when any vertex moved.
fn degree_one_candidate(g: &Graph, coloring: &Coloring) -> Option<Coloring> {
    let mut comp_size = vec![0usize; g.n()];
    for comp in g.components() {
        for &v in &comp {
            comp_size[v as usize] = comp.len();
        }
    }
    let fresh = coloring.size() as u32;
    let mut color = coloring.colors().to_vec();
    let mut moved = false;
    for v in 0..g.n() {
        if g.degree(v as u32) == 1 && comp_size[v] > 2 {
            color[v] = fresh;
            moved = true;
        }
    }
    moved.then(|| Coloring::compacted(color))
}

/// Adds up to `target` random transitive or fraternal arcs to `a`, each
/// witnessed by an existing arc pair at a randomly chosen center vertex.
/// New arcs follow a topological order fixed before any addition, so the
/// result stays acyclic.
fn add_random_augment_arcs<R: Rng>(a: &mut ArcGraph, target: usize, weight: u32, rng: &mut R) {
    let n = a.n();
    if n == 0 || a.num_arcs() == 0 {
        return;
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in a.topological_order().iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut added = 0;
    let mut tries = 0;
    let try_cap = 60 * target + 120;
    while added < target && tries < try_cap {
        tries += 1;
        let v = rng.gen_range(0..n as u32);
        let ins = a.in_arcs(v);
        let outs = a.out_arcs(v);
        let transitive_ok = !ins.is_empty() && !outs.is_empty();
        let fraternal_ok = ins.len() >= 2;
        let (s, t) = if transitive_ok && (!fraternal_ok || rng.gen_bool(0.5)) {
            let x = ins[rng.gen_range(0..ins.len())].0;
            let y = outs[rng.gen_range(0..outs.len())].0;
            (x, y)
        } else if fraternal_ok {
            let i = rng.gen_range(0..ins.len());
            let j = rng.gen_range(0..ins.len());
            if i == j {
                continue;
            }
            let (x, y) = (ins[i].0, ins[j].0);
            if pos[x as usize] < pos[y as usize] {
                (x, y)
            } else {
                (y, x)
            }
        } else {
            continue;
        };
        if a.add_arc(s, t, weight) {
            added += 1;
        }
    }
}

/// Runs the orient/augment/color/check loop on `g` until the coloring is
/// p-centered. Returns the coloring, the loop stats, and the final arcs.
fn color_loop(
    g: &Graph,
    p: usize,
    cfg: &ColorConfig,
) -> Result<(Coloring, ArcGraph, u32)> {
    let mut arcs = orient(g, cfg.orientation);
    for iter in 1..=cfg.max_iterations {
        let mut added = usize::MAX;
        if iter >= 2 {
            added = augment_step(&mut arcs, cfg.augmentation, iter);
        }
        let coloring = greedy_color(&arcs, cfg.prioritization);
        if is_p_centered(g, &coloring, p) {
            return Ok((coloring, arcs, iter));
        }
        // A saturated tfa augmentation cannot change anything on later
        // iterations; dtfa arcs deferred by weight may still qualify later.
        if added == 0 && cfg.augmentation == Augmentation::Tfa {
            return Err(Error::IterationCap {
                max_iterations: cfg.max_iterations,
            });
        }
    }
    Err(Error::IterationCap {
        max_iterations: cfg.max_iterations,
    })
}

/// Computes a p-centered coloring of `g`.
///
/// Pipeline: optional isolation of vertices with degree at least the fourth
/// root of n (each gets a fresh unique color and is kept out of the loop),
/// the orient/augment/color/check loop, then the optional shrinking phases
/// from the config: degree-one consolidation, randomized recolor attempts,
/// and class merging. The returned coloring is validated p-centered.
pub fn compute_p_centered_coloring(
    g: &Graph,
    p: usize,
    cfg: &ColorConfig,
    seed: u64,
) -> Result<(Coloring, ColorStats)> {
    if p < 2 {
        return Err(Error::InvalidParams(format!(
            "p must be at least 2, got {}",
            p
        )));
    }
    if cfg.max_iterations < 1 {
        return Err(Error::InvalidParams("max_iterations must be positive".into()));
    }
    let n = g.n();
    let mut stats = ColorStats::default();
    if n <= 1 {
        let coloring = Coloring::from_colors(vec![0; n]).unwrap();
        stats.colors_after_loop = coloring.size();
        stats.colors_final = coloring.size();
        return Ok((coloring, stats));
    }

    // Optional high-degree isolation: those vertices never enter the loop
    // and keep globally unique colors, which any subgraph containing them
    // sees exactly once.
    let loop_started = Instant::now();
    let threshold = fourth_root_ceil(n);
    let mut high: Vec<u32> = Vec::new();
    let mut low: Vec<u32> = Vec::new();
    if cfg.preprocess_high_degree {
        for v in 0..n as u32 {
            if g.degree(v) >= threshold {
                high.push(v);
            } else {
                low.push(v);
            }
        }
    } else {
        low = (0..n as u32).collect();
    }
    stats.high_degree_isolated = high.len();

    let induced_storage;
    let (g_loop, loop_to_host): (&Graph, Option<&[u32]>) = if high.is_empty() {
        (g, None)
    } else {
        induced_storage = g.induced(&low);
        (&induced_storage.0, Some(&induced_storage.1))
    };

    let (loop_coloring, arcs, iterations) = color_loop(g_loop, p, cfg)?;
    stats.iterations = iterations;
    stats.augmentation_steps = iterations.saturating_sub(1);
    stats.arcs = arcs.num_arcs();

    // Reassembles a full-graph coloring from a loop-graph coloring.
    let assemble = |loop_col: &Coloring| -> Coloring {
        match loop_to_host {
            None => loop_col.clone(),
            Some(map) => {
                let k_low = loop_col.size() as u32;
                let mut color = vec![u32::MAX; n];
                for (i, &host) in map.iter().enumerate() {
                    color[host as usize] = loop_col.color(i as u32);
                }
                for (idx, &h) in high.iter().enumerate() {
                    color[h as usize] = k_low + idx as u32;
                }
                Coloring::from_colors(color).expect("assembled colors are contiguous")
            }
        }
    };

    let mut coloring = assemble(&loop_coloring);
    debug_assert!(is_p_centered(g, &coloring, p));
    stats.colors_after_loop = coloring.size();
    stats.loop_ns = loop_started.elapsed().as_nanos();

    if cfg.postprocess_degree_one {
        let started = Instant::now();
        if let Some(cand) = degree_one_candidate(g, &coloring) {
            if cand.size() <= coloring.size() {
                coloring = cand;
            }
        }
        stats.degree_one_ns = started.elapsed().as_nanos();
        stats.colors_after_degree_one = Some(coloring.size());
    }

    if cfg.recolor_attempts > 0 {
        let started = Instant::now();
        let mut rng = rng_for(seed);
        let extra = arcs.num_arcs().div_ceil(20);
        for _ in 0..cfg.recolor_attempts {
            let mut scratch = arcs.clone();
            add_random_augment_arcs(&mut scratch, extra, iterations + 1, &mut rng);
            let mut cand = assemble(&greedy_color(&scratch, cfg.prioritization));
            if cfg.postprocess_degree_one {
                if let Some(c) = degree_one_candidate(g, &cand) {
                    if c.size() <= cand.size() {
                        cand = c;
                    }
                }
            }
            if cand.size() < coloring.size() && is_p_centered(g, &cand, p) {
                coloring = cand;
            }
        }
        stats.recolor_ns = started.elapsed().as_nanos();
        stats.colors_after_recolor = Some(coloring.size());
    }

    if cfg.merge_classes {
        let started = Instant::now();
        coloring = merge_color_classes(g, &coloring, p)?;
        stats.merge_ns = started.elapsed().as_nanos();
        stats.colors_after_merge = Some(coloring.size());
    }

    let started = Instant::now();
    if !is_p_centered(g, &coloring, p) {
        return Err(Error::InvalidColoring(
            "internal error: final coloring failed the p-centered check".into(),
        ));
    }
    stats.validate_ns = started.elapsed().as_nanos();
    stats.colors_final = coloring.size();
    Ok((coloring, stats))
}

/// Greedily merges color classes pairwise, keeping a merge exactly when the
/// coloring stays p-centered. Pairs are attempted in ascending order of
/// combined size at entry, ties toward smaller ids; the smaller id survives
/// a merge. The output is compacted and p-centered.
pub fn merge_color_classes(g: &Graph, coloring: &Coloring, p: usize) -> Result<Coloring> {
    if !is_p_centered(g, coloring, p) {
        return Err(Error::InvalidColoring(
            "merge requires a p-centered input coloring".into(),
        ));
    }
    let k = coloring.size();
    let mut color = coloring.colors().to_vec();
    let mut members: Vec<Vec<u32>> = (0..k as u32).map(|c| coloring.class(c).to_vec()).collect();
    let mut alive = vec![true; k];

    let mut pairs: Vec<(usize, u32, u32)> = Vec::new();
    for i in 0..k as u32 {
        for j in (i + 1)..k as u32 {
            pairs.push((members[i as usize].len() + members[j as usize].len(), i, j));
        }
    }
    pairs.sort_unstable();

    for (_, i, j) in pairs {
        if !alive[i as usize] || !alive[j as usize] {
            continue;
        }
        for &v in &members[j as usize] {
            color[v as usize] = i;
        }
        // Renumber against the classes alive under this attempt; only sets
        // through the merged class can newly violate p-centeredness.
        let mut remap = vec![u32::MAX; k];
        let mut next = 0;
        for (c, slot) in remap.iter_mut().enumerate() {
            if alive[c] && c != j as usize {
                *slot = next;
                next += 1;
            }
        }
        let cand =
            Coloring::from_colors(color.iter().map(|&c| remap[c as usize]).collect())
                .expect("remapped ids are contiguous");
        if check::is_p_centered_touching(g, &cand, p, remap[i as usize]) {
            alive[j as usize] = false;
            let moved = std::mem::take(&mut members[j as usize]);
            members[i as usize].extend(moved);
        } else {
            for &v in &members[j as usize] {
                color[v as usize] = j;
            }
        }
    }
    Ok(Coloring::compacted(color))
}

/// Splits one class in half into a fresh color. The class is picked by the
/// heuristic over classes with at least two vertices (ties toward the
/// smaller color id; med takes the middle of the size-sorted list), and the
/// vertices to move are a uniformly random subset of exactly half the class,
/// rounded down.
pub fn split_color_class<R: Rng>(
    coloring: &Coloring,
    heuristic: SplitHeuristic,
    rng: &mut R,
) -> Result<Coloring> {
    let mut splittable: Vec<(usize, u32)> = (0..coloring.size() as u32)
        .map(|c| (coloring.class(c).len(), c))
        .filter(|&(len, _)| len >= 2)
        .collect();
    if splittable.is_empty() {
        return Err(Error::NoSplittableClass);
    }
    splittable.sort_unstable();
    let (_, chosen) = match heuristic {
        SplitHeuristic::Min => splittable[0],
        SplitHeuristic::Med => splittable[splittable.len() / 2],
        SplitHeuristic::Max => {
            let max_size = splittable.last().unwrap().0;
            *splittable.iter().find(|&&(len, _)| len == max_size).unwrap()
        }
    };
    let mut class: Vec<u32> = coloring.class(chosen).to_vec();
    let take = class.len() / 2;
    let (moved, _) = class.partial_shuffle(rng, take);
    let fresh = coloring.size() as u32;
    let mut color = coloring.colors().to_vec();
    for &v in moved.iter() {
        color[v as usize] = fresh;
    }
    Coloring::from_colors(color)
}
