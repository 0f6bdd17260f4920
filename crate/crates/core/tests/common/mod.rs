#![allow(dead_code)]

use hyperspec::enumeration::enumerate_linear_unicyclic;
use hyperspec::structure::unique_cycle;
use hyperspec::{EdgeId, Hypergraph, Vertex};

/// Every class with `3..=m_max` edges.
pub fn pool(k: usize, m_max: usize) -> Vec<Hypergraph> {
    (3..=m_max)
        .flat_map(|m| enumerate_linear_unicyclic(k, m).expect("pool enumerates"))
        .collect()
}

/// Isomorphism by exhaustive degree-respecting vertex matching.
pub fn brute_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.k() != b.k() || a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let target: std::collections::BTreeSet<Vec<Vertex>> = b.edges().iter().cloned().collect();
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend(a, &da, &db, &target, &mut map, &mut used, 0)
}

fn extend(
    a: &Hypergraph,
    da: &[usize],
    db: &[usize],
    target: &std::collections::BTreeSet<Vec<Vertex>>,
    map: &mut [usize],
    used: &mut [bool],
    v: usize,
) -> bool {
    if v == a.n() {
        return a.edges().iter().all(|e| {
            let mut img: Vec<Vertex> = e.iter().map(|&x| map[x]).collect();
            img.sort_unstable();
            target.contains(&img)
        });
    }
    for w in 0..used.len() {
        if used[w] || da[v] != db[w] {
            continue;
        }
        map[v] = w;
        used[w] = true;
        // prune on edges whose vertices are all mapped
        let ok = a.edges().iter().all(|e| {
            if e.iter().any(|&x| x > v) {
                return true;
            }
            let mut img: Vec<Vertex> = e.iter().map(|&x| map[x]).collect();
            img.sort_unstable();
            target.contains(&img)
        });
        if ok && extend(a, da, db, target, map, used, v + 1) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

/// Vertex of maximum degree (smallest id on ties).
pub fn max_degree_vertex(g: &Hypergraph) -> Vertex {
    let d = g.degrees();
    (0..g.n()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap()
}

/// Edges of the unique cycle.
pub fn cycle_edges(g: &Hypergraph) -> Vec<EdgeId> {
    unique_cycle(g)
        .expect("unicyclic")
        .into_iter()
        .map(|(_, e)| e)
        .collect()
}
