//! Edge-moving operations that increase the spectral radius under their
//! respective preconditions.

use crate::error::{Error, Result};
use crate::hypergraph::{make_hypergraph, make_hypergraph_with_map, EdgeId, Hypergraph, Vertex};
use crate::structure::is_connected;

/// Replace `from` by `to` in edge `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeMove {
    pub edge: EdgeId,
    pub from: Vertex,
    pub to: Vertex,
}

/// Result of [`move_edges`]: the new hypergraph and, for every old vertex,
/// its id after isolated vertices are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moved {
    pub graph: Hypergraph,
    pub id_map: Vec<Option<Vertex>>,
}

/// Moves edges `e_i` from `v_i` to a common vertex `u`.
pub fn move_edges(g: &Hypergraph, moves: &[EdgeMove]) -> Result<Moved> {
    let first = moves
        .first()
        .ok_or_else(|| Error::InvalidMove("no edges to move".into()))?;
    let u = first.to;
    g.check_vertex(u)?;
    let mut edges: Vec<Vec<Vertex>> = g.edges().to_vec();
    let mut touched = vec![false; g.m()];
    for mv in moves {
        g.check_edge(mv.edge)?;
        g.check_vertex(mv.from)?;
        if mv.to != u {
            return Err(Error::InvalidMove(format!(
                "all moves must share one target: {} vs {u}",
                mv.to
            )));
        }
        if std::mem::replace(&mut touched[mv.edge], true) {
            return Err(Error::InvalidMove(format!("edge {} moved twice", mv.edge)));
        }
        let edge = &mut edges[mv.edge];
        if edge.contains(&u) {
            return Err(Error::InvalidMove(format!(
                "target {u} already lies in edge {}",
                mv.edge
            )));
        }
        let slot = edge
            .iter()
            .position(|&v| v == mv.from)
            .ok_or_else(|| Error::InvalidMove(format!("vertex {} is not in edge {}", mv.from, mv.edge)))?;
        edge[slot] = u;
    }
    let (graph, map) = make_hypergraph_with_map(g.k(), edges)?;
    let id_map = (0..g.n()).map(|v| map.get(&v).copied()).collect();
    Ok(Moved { graph, id_map })
}

/// Identification hypergraphs `(G1(v2) * G2(u), G1(v1) * G2(u))`: the second
/// is the first with `G2` relocated from `v2` to `v1`.
///
/// Vertices of `G2` other than `u` are numbered after those of `G1`.
pub fn relocate(
    g1: &Hypergraph,
    v1: Vertex,
    v2: Vertex,
    g2: &Hypergraph,
    u: Vertex,
) -> Result<(Hypergraph, Hypergraph)> {
    g1.check_vertex(v1)?;
    g1.check_vertex(v2)?;
    g2.check_vertex(u)?;
    if v1 == v2 {
        return Err(Error::InvalidMove(format!(
            "relocation needs two distinct vertices, got {v1} twice"
        )));
    }
    if g1.k() != g2.k() {
        return Err(Error::InvalidUniformity { k: g2.k(), min: g1.k() });
    }
    let glue = |root: Vertex| {
        let map = |x: Vertex| match x.cmp(&u) {
            std::cmp::Ordering::Equal => root,
            std::cmp::Ordering::Less => g1.n() + x,
            std::cmp::Ordering::Greater => g1.n() + x - 1,
        };
        let mut edges = g1.edges().to_vec();
        edges.extend(g2.edges().iter().map(|e| e.iter().map(|&x| map(x)).collect()));
        make_hypergraph(g1.k(), edges)
    };
    Ok((glue(v2)?, glue(v1)?))
}

/// The pendent-pattern move `G_{e,f}`.
///
/// With `V1 = e ∩ f`, `|V1| = k - r` for `2 <= r <= k - 1`, `e \ V1` must hold
/// exactly one non-cored vertex `u1` and `f \ V1` exactly one `v1`, all others
/// cored. Every edge at `v1` except `f` moves from `v1` to the smallest cored
/// vertex `u2` of `e \ V1`.
pub fn yss_move(g: &Hypergraph, e: EdgeId, f: EdgeId) -> Result<Hypergraph> {
    g.check_edge(e)?;
    g.check_edge(f)?;
    if e == f {
        return Err(Error::YssPrecondition("e and f must be distinct edges".into()));
    }
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let k = g.k();
    let (ee, ff) = (g.edge(e), g.edge(f));
    let shared = ee.iter().filter(|v| ff.contains(v)).count();
    if shared < 1 || shared + 2 > k {
        return Err(Error::YssPrecondition(format!(
            "|e ∩ f| = {shared}, need 1 <= |e ∩ f| <= k - 2 = {}",
            k.saturating_sub(2)
        )));
    }
    let degrees = g.degrees();
    let split = |own: &[Vertex], other: &[Vertex], name: &str| -> Result<(Vertex, Vec<Vertex>)> {
        let rest: Vec<Vertex> = own.iter().copied().filter(|v| !other.contains(v)).collect();
        let core: Vec<Vertex> = rest.iter().copied().filter(|&v| degrees[v] > 1).collect();
        if core.len() != 1 {
            return Err(Error::YssPrecondition(format!(
                "{name} minus the intersection has {} non-cored vertices, need exactly 1",
                core.len()
            )));
        }
        let cored = rest.into_iter().filter(|&v| degrees[v] == 1).collect();
        Ok((core[0], cored))
    };
    let (_u1, e_cored) = split(ee, ff, "e")?;
    let (v1, _) = split(ff, ee, "f")?;
    let u2 = *e_cored
        .first()
        .ok_or_else(|| Error::YssPrecondition("e has no cored vertex outside f".into()))?;
    let moves: Vec<EdgeMove> = g
        .incidence()
        .swap_remove(v1)
        .into_iter()
        .filter(|&x| x != f)
        .map(|edge| EdgeMove { edge, from: v1, to: u2 })
        .collect();
    Ok(move_edges(g, &moves)?.graph)
}
