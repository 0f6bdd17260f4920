//! Structural queries: degrees, cored vertices, pendent edges, cycle analysis.

use serde::{Deserialize, Serialize};

use crate::hypergraph::{EdgeId, Hypergraph, SimpleGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Hypertree,
    Unicyclic,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub degrees: Vec<usize>,
    pub cored: Vec<Vertex>,
    pub pendent_edges: Vec<EdgeId>,
    pub classification: Classification,
    /// Number of edges on the unique cycle, for unicyclic input.
    pub girth: Option<usize>,
    pub linear: bool,
    pub connected: bool,
}

pub fn structural_profile(g: &Hypergraph) -> StructuralProfile {
    let degrees = g.degrees();
    let cored: Vec<_> = (0..g.n()).filter(|&v| degrees[v] == 1).collect();
    let pendent_edges = (0..g.m())
        .filter(|&e| g.edge(e).iter().filter(|&&v| degrees[v] == 1).count() + 1 >= g.k())
        .collect();
    let connected = is_connected(g);
    let linear = is_linear(g);

    // Cyclomatic number of the vertex-edge incidence graph.
    let incidences = g.m() * g.k();
    let nodes = g.n() + g.m();
    let cycle_rank = (incidences + 1).saturating_sub(nodes);

    let mut girth = None;
    let classification = if !connected {
        Classification::Other
    } else if cycle_rank == 0 {
        debug_assert_eq!(g.m() * (g.k() - 1), g.n() - 1);
        Classification::Hypertree
    } else if cycle_rank == 1 && linear {
        let cycle = unique_cycle(g).expect("one independent cycle");
        debug_assert_eq!(g.m() * (g.k() - 1), g.n());
        girth = Some(cycle.len());
        Classification::Unicyclic
    } else {
        Classification::Other
    };

    StructuralProfile {
        degrees,
        cored,
        pendent_edges,
        classification,
        girth,
        linear,
        connected,
    }
}

pub fn is_connected(g: &Hypergraph) -> bool {
    let inc = g.incidence();
    let mut seen = vec![false; g.n()];
    let mut used = vec![false; g.m()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &e in &inc[v] {
            if std::mem::replace(&mut used[e], true) {
                continue;
            }
            for &u in g.edge(e) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
    }
    count == g.n()
}

pub fn is_linear(g: &Hypergraph) -> bool {
    let edges = g.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if shared(&edges[i], &edges[j]) > 1 {
                return false;
            }
        }
    }
    true
}

fn shared(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

/// The unique cycle of a hypergraph whose incidence graph has exactly one
/// cycle, as steps `(v_{i-1}, e_i)`: edge `e_i` joins `v_{i-1}` and `v_i`,
/// with `v_l = v_0`. Starts at the smallest cycle vertex and leaves through
/// its smaller cycle edge. Returns `None` when the incidence graph has no
/// cycle or more than one.
pub fn unique_cycle(g: &Hypergraph) -> Option<Vec<(Vertex, EdgeId)>> {
    let n = g.n();
    let m = g.m();
    if g.m() * g.k() != n + m || !is_connected(g) {
        return None;
    }
    // Peel leaves of the incidence graph; what remains is the cycle.
    let inc = g.incidence();
    let mut vdeg: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut edeg = vec![g.k(); m];
    let mut vgone = vec![false; n];
    let mut egone = vec![false; m];
    let mut queue: Vec<(bool, usize)> = (0..n).filter(|&v| vdeg[v] <= 1).map(|v| (true, v)).collect();
    while let Some((is_vertex, x)) = queue.pop() {
        if is_vertex {
            if vgone[x] {
                continue;
            }
            vgone[x] = true;
            for &e in &inc[x] {
                if !egone[e] {
                    edeg[e] -= 1;
                    if edeg[e] <= 1 {
                        queue.push((false, e));
                    }
                }
            }
        } else {
            if egone[x] {
                continue;
            }
            egone[x] = true;
            for &v in g.edge(x) {
                if !vgone[v] {
                    vdeg[v] -= 1;
                    if vdeg[v] <= 1 {
                        queue.push((true, v));
                    }
                }
            }
        }
    }
    let start = (0..n).find(|&v| !vgone[v])?;
    let cycle_edges = |v: Vertex| -> Vec<EdgeId> { inc[v].iter().copied().filter(|&e| !egone[e]).collect() };
    let mut steps = Vec::new();
    let mut v = start;
    let mut e = *cycle_edges(start).first()?;
    loop {
        steps.push((v, e));
        let next = g.edge(e).iter().copied().find(|&u| u != v && !vgone[u])?;
        let next_edge = cycle_edges(next).into_iter().find(|&f| f != e)?;
        v = next;
        e = next_edge;
        if v == start {
            break;
        }
        if steps.len() > m {
            return None;
        }
    }
    Some(steps)
}

/// Recovers a simple graph `H` with `power_hypergraph(H, k)` isomorphic to
/// `g`, when `g` is a power hypergraph (k >= 3). Vertex ids of `H` are the
/// ids of `g` restricted to the chosen endpoints, compacted in order.
pub fn as_power_of(g: &Hypergraph) -> Option<SimpleGraph> {
    let k = g.k();
    if k < 3 {
        return None;
    }
    let degrees = g.degrees();
    let mut pairs = Vec::with_capacity(g.m());
    for e in g.edges() {
        let core: Vec<_> = e.iter().copied().filter(|&v| degrees[v] > 1).collect();
        let mut cored = e.iter().copied().filter(|&v| degrees[v] == 1);
        let pair = match core.len() {
            2 => (core[0], core[1]),
            1 => (core[0], cored.next()?),
            0 => (cored.next()?, cored.next()?),
            _ => return None,
        };
        pairs.push(pair);
    }
    let mut ids: Vec<Vertex> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let index = |v: Vertex| ids.binary_search(&v).expect("endpoint present");
    SimpleGraph::new(ids.len(), pairs.iter().map(|&(a, b)| (index(a), index(b)))).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{make_hypergraph, power_hypergraph};

    #[test]
    fn four_cycle_power() {
        let g = power_hypergraph(&SimpleGraph::cycle(4).unwrap(), 3).unwrap();
        let p = structural_profile(&g);
        assert_eq!(p.classification, Classification::Unicyclic);
        assert_eq!(p.girth, Some(4));
        assert!(p.linear && p.connected);
        assert_eq!(p.cored.len(), 4);
        assert_eq!(p.degrees.iter().filter(|&&d| d == 2).count(), 4);
    }

    #[test]
    fn single_edge_is_hypertree() {
        let g = make_hypergraph(3, vec![vec![0, 1, 2]]).unwrap();
        let p = structural_profile(&g);
        assert_eq!(p.classification, Classification::Hypertree);
        assert_eq!(p.cored, vec![0, 1, 2]);
        assert_eq!(p.pendent_edges, vec![0]);
        assert_eq!(p.girth, None);
    }

    #[test]
    fn two_edges_sharing_two_vertices() {
        let g = make_hypergraph(3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let p = structural_profile(&g);
        assert!(!p.linear);
        assert_eq!(p.classification, Classification::Other);
    }

    #[test]
    fn disconnected_is_other() {
        let g = make_hypergraph(3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let p = structural_profile(&g);
        assert!(!p.connected);
        assert_eq!(p.classification, Classification::Other);
    }

    #[test]
    fn paw_power_is_unicyclic_girth_three() {
        let paw = SimpleGraph::cycle_with_star(4, 3).unwrap();
        let g = power_hypergraph(&paw, 3).unwrap();
        assert_eq!((g.n(), g.m()), (8, 4));
        let p = structural_profile(&g);
        assert_eq!(p.classification, Classification::Unicyclic);
        assert_eq!(p.girth, Some(3));
    }

    #[test]
    fn cycle_walk_is_closed() {
        let g = power_hypergraph(&SimpleGraph::cycle_with_star(6, 4).unwrap(), 4).unwrap();
        let cycle = unique_cycle(&g).unwrap();
        assert_eq!(cycle.len(), 4);
        for (i, &(v, e)) in cycle.iter().enumerate() {
            let (next, _) = cycle[(i + 1) % cycle.len()];
            assert!(g.edge(e).contains(&v) && g.edge(e).contains(&next));
        }
        assert_eq!(cycle[0].0, 0);
    }

    #[test]
    fn power_recognition() {
        let s = SimpleGraph::cycle_with_star(6, 3).unwrap();
        let g = power_hypergraph(&s, 4).unwrap();
        let h = as_power_of(&g).unwrap();
        assert_eq!((h.n(), h.m()), (6, 6));
        let single = make_hypergraph(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(as_power_of(&single).unwrap().m(), 1);
        let cored_attach =
            make_hypergraph(3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0], vec![1, 6, 7]]).unwrap();
        // vertex 1 is an interior vertex of the cycle edge, so that edge has three non-cored vertices
        assert!(as_power_of(&cored_attach).is_none());
    }
}
