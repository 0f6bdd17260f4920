//! Canonical forms via canonical labeling of the vertex-edge incidence graph.
//!
//! Nodes `0..n` are vertices and `n..n+m` are edges; the two classes start in
//! different colour cells. Colour refinement is followed by individualization
//! of the first non-singleton cell, searching for the lexicographically least
//! certificate. Automorphisms found at leaves prune sibling branches.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{make_hypergraph, Hypergraph};

/// Isomorphism-invariant byte string. Two hypergraphs have equal forms iff
/// they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonically labeled hypergraph this form encodes.
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        let bad = || Error::Parse(format!("malformed canonical form `{}`", self.0));
        let mut parts = self.0.splitn(3, ':');
        let k: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        let _n: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        let body = parts.next().ok_or_else(bad)?;
        let edges = body
            .split(';')
            .map(|e| e.split(',').map(|v| v.parse::<usize>().map_err(|_| bad())).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        make_hypergraph(k, edges)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Hypergraph) -> CanonicalForm {
    let labeling = canonical_labeling(g);
    let mut edges: Vec<Vec<usize>> = g
        .edges()
        .iter()
        .map(|e| {
            let mut e: Vec<usize> = e.iter().map(|&v| labeling[v]).collect();
            e.sort_unstable();
            e
        })
        .collect();
    edges.sort();
    let body: Vec<String> = edges
        .iter()
        .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    CanonicalForm(format!("{}:{}:{}", g.k(), g.n(), body.join(";")))
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    a.k() == b.k() && a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

/// Canonical vertex labeling: `labeling[v]` is the canonical id of vertex `v`.
pub fn canonical_labeling(g: &Hypergraph) -> Vec<usize> {
    let n = g.n();
    let m = g.m();
    let mut adj = vec![Vec::new(); n + m];
    for (i, e) in g.edges().iter().enumerate() {
        for &v in e {
            adj[v].push(n + i);
            adj[n + i].push(v);
        }
    }
    let mut colors = vec![0; n + m];
    for c in colors.iter_mut().skip(n) {
        *c = n;
    }
    let mut search = Search {
        adj: &adj,
        n,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut path = Vec::new();
    search.visit(colors, &mut path);
    let (_, labels, _) = search.best.expect("search reaches a leaf");
    labels[..n].to_vec()
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    n: usize,
    /// Certificate, labeling and individualization path of the first leaf.
    first: Option<(Vec<u32>, Vec<usize>, Vec<usize>)>,
    best: Option<(Vec<u32>, Vec<usize>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

enum Outcome {
    Continue,
    /// Unwind to the given depth: the subtree just left mirrors the first path.
    Jump(usize),
}

impl Search<'_> {
    fn visit(&mut self, mut colors: Vec<usize>, path: &mut Vec<usize>) -> Outcome {
        refine(self.adj, &mut colors);
        let Some(cell) = target_cell(&colors) else {
            return self.leaf(colors, path);
        };
        let depth = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.in_tried_orbit(v, &tried, path) {
                continue;
            }
            tried.push(v);
            let mut child = colors.clone();
            let c = colors[v];
            for &u in &cell {
                if u != v {
                    child[u] = c + 1;
                }
            }
            path.push(v);
            let outcome = self.visit(child, path);
            path.pop();
            if let Outcome::Jump(level) = outcome {
                if level < depth {
                    return outcome;
                }
            }
        }
        Outcome::Continue
    }

    fn leaf(&mut self, labels: Vec<usize>, path: &[usize]) -> Outcome {
        let cert = certificate(self.adj, self.n, &labels);
        let Some((first_cert, first_labels, first_path)) = &self.first else {
            self.best = Some((cert.clone(), labels.clone(), path.to_vec()));
            self.first = Some((cert, labels, path.to_vec()));
            return Outcome::Continue;
        };
        if cert == *first_cert {
            self.automorphisms.push(automorphism(first_labels, &labels));
            let common = first_path.iter().zip(path).take_while(|(a, b)| a == b).count();
            return Outcome::Jump(common);
        }
        let (best_cert, best_labels, _) = self.best.as_ref().expect("best set with first");
        match cert.cmp(best_cert) {
            std::cmp::Ordering::Less => self.best = Some((cert, labels, path.to_vec())),
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(best_labels, &labels);
                self.automorphisms.push(gamma);
            }
            std::cmp::Ordering::Greater => {}
        }
        Outcome::Continue
    }

    /// Whether `v` lies in the orbit of an already-tried sibling under the
    /// automorphisms found so far that fix the current path pointwise.
    fn in_tried_orbit(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.adj.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&x| gamma[x] != x) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

/// Automorphism mapping node `a` to the node that `second` places where `first` placed `a`.
fn automorphism(first: &[usize], second: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0; second.len()];
    for (node, &pos) in second.iter().enumerate() {
        inverse[pos] = node;
    }
    first.iter().map(|&pos| inverse[pos]).collect()
}

/// Equitable refinement. A colour is the start position of its cell in the
/// ordered partition; cells split in order of their neighbour-colour multisets.
fn refine(adj: &[Vec<usize>], colors: &mut [usize]) {
    let total = colors.len();
    let mut cells = count_cells(colors);
    let mut order: Vec<usize> = (0..total).collect();
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|x| {
                let mut nb: Vec<usize> = adj[x].iter().map(|&y| colors[y]).collect();
                nb.sort_unstable();
                (colors[x], nb)
            })
            .collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut start = 0;
        for i in 0..total {
            if i > 0 && keys[order[i]] != keys[order[i - 1]] {
                start = i;
            }
            colors[order[i]] = start;
        }
        let now = count_cells(colors);
        if now == cells {
            return;
        }
        cells = now;
    }
}

fn count_cells(colors: &[usize]) -> usize {
    let mut seen = vec![false; colors.len()];
    colors
        .iter()
        .filter(|&&c| !std::mem::replace(&mut seen[c], true))
        .count()
}

/// Members of the first non-singleton cell, or `None` when discrete.
fn target_cell(colors: &[usize]) -> Option<Vec<usize>> {
    let mut size = vec![0usize; colors.len()];
    for &c in colors {
        size[c] += 1;
    }
    let c = (0..colors.len()).find(|&c| size[c] > 1)?;
    Some((0..colors.len()).filter(|&x| colors[x] == c).collect())
}

fn certificate(adj: &[Vec<usize>], n: usize, labels: &[usize]) -> Vec<u32> {
    let m = adj.len() - n;
    let mut rows: Vec<(usize, Vec<u32>)> = (0..m)
        .map(|e| {
            let mut vs: Vec<u32> = adj[n + e].iter().map(|&v| labels[v] as u32).collect();
            vs.sort_unstable();
            (labels[n + e], vs)
        })
        .collect();
    rows.sort();
    rows.into_iter().flat_map(|(_, vs)| vs).collect()
}
