//! Simple undirected graphs with sorted adjacency lists, edge-list file I/O,
//! and construction of the small motif graphs used as count targets.

use std::collections::HashSet;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Undirected simple graph over vertex ids `0..n`.
///
/// Invariants: no self-loops, no parallel edges, every adjacency list is
/// sorted ascending, and `u ∈ adj[v]` iff `v ∈ adj[u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// Creates an edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the edge `{u, v}`, keeping adjacency lists sorted.
    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop {
                line: 0,
                v: u as usize,
            });
        }
        let n = self.adj.len();
        if (u as usize) >= n || (v as usize) >= n {
            return Err(Error::Parse {
                line: 0,
                msg: format!("vertex id out of range: edge {} {} in graph of order {}", u, v, n),
            });
        }
        let pos = match self.adj[u as usize].binary_search(&v) {
            Ok(_) => {
                return Err(Error::DuplicateEdge {
                    line: 0,
                    u: u as usize,
                    v: v as usize,
                })
            }
            Err(pos) => pos,
        };
        self.adj[u as usize].insert(pos, v);
        let pos = self.adj[v as usize].binary_search(&u).unwrap_err();
        self.adj[v as usize].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn avg_degree(&self) -> f64 {
        if self.adj.is_empty() {
            0.0
        } else {
            2.0 * self.m as f64 / self.adj.len() as f64
        }
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.adj.len() as u32 {
            for &v in &self.adj[u as usize] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components of the whole graph, each sorted ascending,
    /// ordered by smallest contained vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n as u32 {
            if seen[s as usize] {
                continue;
            }
            let mut comp = vec![s];
            seen[s as usize] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `verts` (must be sorted, deduplicated, in range).
    /// Returns the compacted graph plus the map from new ids to original ids.
    pub fn induced(&self, verts: &[u32]) -> (Graph, Vec<u32>) {
        let mut new_id = vec![u32::MAX; self.adj.len()];
        for (i, &v) in verts.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let mut g = Graph::new(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v as usize] {
                let j = new_id[w as usize];
                if j != u32::MAX && (i as u32) < j {
                    g.adj[i].push(j);
                    g.adj[j as usize].push(i as u32);
                    g.m += 1;
                }
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        (g, verts.to_vec())
    }

    /// Checks internal invariants; used by tests.
    pub fn check_invariants(&self) -> bool {
        let n = self.adj.len() as u32;
        let mut half_edges = 0usize;
        for u in 0..n {
            let list = &self.adj[u as usize];
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v == u || v >= n || !self.adjacent(v, u) {
                    return false;
                }
            }
            half_edges += list.len();
        }
        half_edges == 2 * self.m
    }
}

/// Reads a graph from edge-list text: one edge per line as two integers, a
/// bare integer declares an isolated vertex, `#` starts a comment. The order
/// of the graph is one plus the largest id mentioned.
pub fn load_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut max_id: Option<u32> = None;
    let mut edges: Vec<(u32, u32, usize)> = Vec::new();
    let mut singles: Vec<u32> = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |s: &str| -> Result<u32> {
            s.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected a vertex id, got {:?}", s),
            })
        };
        match fields.len() {
            0 => {}
            1 => {
                let v = parse(fields[0])?;
                max_id = Some(max_id.map_or(v, |m| m.max(v)));
                singles.push(v);
            }
            2 => {
                let u = parse(fields[0])?;
                let v = parse(fields[1])?;
                if u == v {
                    return Err(Error::SelfLoop {
                        line: line_no,
                        v: u as usize,
                    });
                }
                max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
                edges.push((u, v, line_no));
            }
            k => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected 1 or 2 fields, got {}", k),
                })
            }
        }
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    let mut g = Graph::new(n);
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(edges.len());
    for (u, v, line_no) in edges {
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge {
                line: line_no,
                u: u as usize,
                v: v as usize,
            });
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Loads an edge-list file from disk.
pub fn load_edge_list_path<P: AsRef<Path>>(path: P) -> Result<Graph> {
    load_edge_list(std::fs::File::open(path)?)
}

/// Writes a graph in the edge-list format accepted by [`load_edge_list`].
/// Isolated vertices are emitted as bare ids so the order round-trips.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", u, v)?;
    }
    for v in 0..g.n() as u32 {
        if g.degree(v) == 0 {
            writeln!(w, "{}", v)?;
        }
    }
    Ok(())
}

/// Shape of a motif graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotifKind {
    Path,
    Star,
    Clique,
    Cycle,
}

/// A motif selection: either a named family member or a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MotifSpec {
    Family { kind: MotifKind, order: usize },
    File(String),
}

impl MotifSpec {
    /// Parses the `kind:order` form (`path:4`, `star:5`, `clique:3`,
    /// `cycle:5`) or `file:PATH`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| {
            Error::InvalidMotif(format!("expected kind:order or file:path, got {:?}", s))
        })?;
        if kind == "file" {
            return Ok(MotifSpec::File(rest.to_string()));
        }
        let k = match kind {
            "path" => MotifKind::Path,
            "star" => MotifKind::Star,
            "clique" => MotifKind::Clique,
            "cycle" => MotifKind::Cycle,
            other => {
                return Err(Error::InvalidMotif(format!("unknown motif kind {:?}", other)))
            }
        };
        let order: usize = rest
            .parse()
            .map_err(|_| Error::InvalidMotif(format!("bad motif order {:?}", rest)))?;
        let spec = MotifSpec::Family { kind: k, order };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if let MotifSpec::Family { kind, order } = self {
            let min = if *kind == MotifKind::Cycle { 3 } else { 2 };
            if *order < min {
                return Err(Error::InvalidMotif(format!(
                    "motif order {} below minimum {} for this kind",
                    order, min
                )));
            }
        }
        Ok(())
    }
}

/// Builds the motif graph for a spec. Paths are `0-1-...-(n-1)`, stars have
/// center `0`, cliques and cycles use the natural vertex order. File motifs
/// are loaded from disk and must be connected with at least two vertices.
pub fn build_motif(spec: &MotifSpec) -> Result<Graph> {
    match spec {
        MotifSpec::Family { kind, order } => {
            spec.validate()?;
            let n = *order;
            let mut g = Graph::new(n);
            match kind {
                MotifKind::Path => {
                    for i in 0..n - 1 {
                        g.add_edge(i as u32, i as u32 + 1)?;
                    }
                }
                MotifKind::Star => {
                    for i in 1..n {
                        g.add_edge(0, i as u32)?;
                    }
                }
                MotifKind::Clique => {
                    for i in 0..n {
                        for j in i + 1..n {
                            g.add_edge(i as u32, j as u32)?;
                        }
                    }
                }
                MotifKind::Cycle => {
                    for i in 0..n - 1 {
                        g.add_edge(i as u32, i as u32 + 1)?;
                    }
                    g.add_edge(n as u32 - 1, 0)?;
                }
            }
            Ok(g)
        }
        MotifSpec::File(path) => {
            let g = load_edge_list_path(path)?;
            if g.n() < 2 {
                return Err(Error::InvalidMotif(format!(
                    "motif from {:?} has {} vertices, need at least 2",
                    path,
                    g.n()
                )));
            }
            if !g.is_connected() {
                return Err(Error::InvalidMotif(format!(
                    "motif from {:?} is not connected",
                    path
                )));
            }
            Ok(g)
        }
    }
}
