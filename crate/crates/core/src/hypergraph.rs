//! Uniform hypergraphs, simple graphs and their text/JSON encodings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// A k-uniform hypergraph on the dense vertex set `0..n`.
///
/// Edges are stored sorted, the edge list is sorted lexicographically, and
/// every vertex lies in at least one edge. Edge ids are positions in that list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        let g = make_hypergraph(raw.k, raw.edges)?;
        if g.n != raw.n {
            return Err(Error::Parse(format!(
                "declared n={} but edges cover {} vertices",
                raw.n, g.n
            )));
        }
        Ok(g)
    }
}

/// Builds a normalized hypergraph from arbitrary vertex ids.
///
/// Ids are compacted to `0..n` preserving their relative order.
pub fn make_hypergraph(k: usize, edges: Vec<Vec<Vertex>>) -> Result<Hypergraph> {
    make_hypergraph_with_map(k, edges).map(|(g, _)| g)
}

/// Like [`make_hypergraph`], also returning the map from input id to compacted id.
pub fn make_hypergraph_with_map(k: usize, edges: Vec<Vec<Vertex>>) -> Result<(Hypergraph, BTreeMap<Vertex, Vertex>)> {
    if k < 2 {
        return Err(Error::InvalidUniformity { k, min: 2 });
    }
    if edges.is_empty() {
        return Err(Error::EmptyEdgeList);
    }
    let mut ids = BTreeSet::new();
    for (index, edge) in edges.iter().enumerate() {
        let distinct: BTreeSet<_> = edge.iter().copied().collect();
        if distinct.len() != k || edge.len() != k {
            return Err(Error::EdgeSize {
                index,
                size: distinct.len(),
                k,
            });
        }
        ids.extend(distinct);
    }
    let map: BTreeMap<Vertex, Vertex> = ids.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out: Vec<Vec<Vertex>> = edges
        .into_iter()
        .map(|e| {
            let mut e: Vec<_> = e.into_iter().map(|v| map[&v]).collect();
            e.sort_unstable();
            e
        })
        .collect();
    out.sort();
    for w in out.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateEdge { edge: w[0].clone() });
        }
    }
    let g = Hypergraph {
        k,
        n: map.len(),
        edges: out,
    };
    Ok((g, map))
}

impl Hypergraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &[Vertex] {
        &self.edges[e]
    }

    /// Position of `edge` (any vertex order) in the sorted edge list.
    pub fn edge_id(&self, edge: &[Vertex]) -> Option<EdgeId> {
        let mut key = edge.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Edge ids incident to each vertex, in increasing order.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.m() {
            Ok(())
        } else {
            Err(Error::InvalidEdge { edge: e, m: self.m() })
        }
    }

    /// Applies a vertex relabeling `v -> perm[v]` and renormalizes.
    pub fn relabeled(&self, perm: &[Vertex]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        make_hypergraph(self.k, edges)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("hypergraph serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Hypergraph> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Plain-text form: a `k m` header, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.k, self.m());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let nums = parse_numbers(header)?;
        if nums.len() != 2 {
            return Err(Error::Parse(format!("header must be `k m`, got `{header}`")));
        }
        let (k, m) = (nums[0], nums[1]);
        let edges = lines.map(parse_numbers).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges, found {}",
                edges.len()
            )));
        }
        make_hypergraph(k, edges)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
        .collect()
}

/// A simple graph on `0..n`. Edge order is kept as given; it fixes the ids of
/// the fresh vertices created by [`power_hypergraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            let e = [a.min(b), a.max(b)];
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("multi-edge ({a}, {b})")));
            }
            out.push(e);
        }
        Ok(SimpleGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[Vertex; 2]] {
        &self.edges
    }

    pub fn neighbors(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// The graph viewed as a 2-uniform hypergraph (same vertex ids).
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        self.require_no_isolated()?;
        make_hypergraph(2, self.edges.iter().map(|e| e.to_vec()).collect())
    }

    fn require_no_isolated(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let mut covered = vec![false; self.n];
        for &[a, b] in &self.edges {
            covered[a] = true;
            covered[b] = true;
        }
        match covered.iter().position(|c| !c) {
            Some(v) => Err(Error::InvalidGraph(format!("vertex {v} is isolated"))),
            None => Ok(()),
        }
    }

    pub fn star(s: usize) -> Result<Self> {
        SimpleGraph::new(s + 1, (1..=s).map(|i| (0, i)))
    }

    pub fn cycle(g: usize) -> Result<Self> {
        if g < 3 {
            return Err(Error::OutOfDomain(format!("cycle length {g} < 3")));
        }
        SimpleGraph::new(g, (0..g).map(|i| (i, (i + 1) % g)))
    }

    /// Cycle `C_g` (vertices `0..g`) with a star of `m - g` edges at vertex 0.
    pub fn cycle_with_star(m: usize, g: usize) -> Result<Self> {
        if g < 3 || m < g {
            return Err(Error::OutOfDomain(format!("S_{{{m},{g}}} needs m >= g >= 3")));
        }
        let mut edges: Vec<_> = (0..g).map(|i| (i, (i + 1) % g)).collect();
        edges.extend((g..m).map(|v| (0, v)));
        SimpleGraph::new(m, edges)
    }

    /// Adds `count` pendant edges at `v`, each to a fresh vertex.
    pub fn with_pendants(&self, v: Vertex, count: usize) -> Result<Self> {
        let mut edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        edges.extend((0..count).map(|i| (v, self.n + i)));
        SimpleGraph::new(self.n + count, edges)
    }
}

/// The k-th power of a simple graph: each edge gets `k - 2` fresh vertices,
/// numbered after the original ids in edge order.
pub fn power_hypergraph(g: &SimpleGraph, k: usize) -> Result<Hypergraph> {
    if k < 3 {
        return Err(Error::InvalidUniformity { k, min: 3 });
    }
    g.require_no_isolated()?;
    let mut next = g.n;
    let edges = g
        .edges
        .iter()
        .map(|&[a, b]| {
            let mut e = vec![a, b];
            e.extend(next..next + k - 2);
            next += k - 2;
            e
        })
        .collect();
    make_hypergraph(k, edges)
}
