use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use super::scalar::gamma;
use crate::error::{Error, Result};
use crate::families::{labeled_triangle_family, Family, FamilySpec, TriangleLabels};
use crate::format::{f17, f17_opt, f17_vec, fmt17};
use crate::hypergraph::{EdgeId, Hypergraph, Vertex};
use crate::structure::{is_connected, unique_cycle};

pub const DEFAULT_NORMALITY_TOLERANCE: f64 = 1e-10;

/// Positive weights `B(v, e)` on the incident pairs of a hypergraph.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedIncidence {
    graph: Hypergraph,
    /// `weights[e][j]` belongs to vertex `graph.edge(e)[j]`; zero means unset.
    weights: Vec<Vec<f64>>,
}

impl WeightedIncidence {
    /// All weights unset.
    pub fn new(graph: Hypergraph) -> Self {
        let weights = graph.edges().iter().map(|e| vec![0.0; e.len()]).collect();
        WeightedIncidence { graph, weights }
    }

    pub fn from_triples(graph: Hypergraph, triples: &[(Vertex, EdgeId, f64)]) -> Result<Self> {
        let mut w = WeightedIncidence::new(graph);
        for &(v, e, b) in triples {
            w.set(v, e, b)?;
        }
        Ok(w)
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    fn slot(&self, v: Vertex, e: EdgeId) -> Result<usize> {
        self.graph.check_vertex(v)?;
        self.graph.check_edge(e)?;
        self.graph
            .edge(e)
            .iter()
            .position(|&u| u == v)
            .ok_or(Error::NonIncidentWeight { vertex: v, edge: e })
    }

    pub fn set(&mut self, v: Vertex, e: EdgeId, weight: f64) -> Result<()> {
        let j = self.slot(v, e)?;
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::OutOfDomain(format!(
                "weight B({v}, {e}) = {weight} must be positive and finite"
            )));
        }
        self.weights[e][j] = weight;
        Ok(())
    }

    /// `B(v, e)`; zero for non-incident or unset pairs.
    pub fn get(&self, v: Vertex, e: EdgeId) -> f64 {
        self.slot(v, e).map(|j| self.weights[e][j]).unwrap_or(0.0)
    }

    fn require_complete(&self) -> Result<()> {
        for (e, row) in self.weights.iter().enumerate() {
            if let Some(j) = row.iter().position(|&b| !(b > 0.0)) {
                return Err(Error::MissingWeight {
                    vertex: self.graph.edge(e)[j],
                    edge: e,
                });
            }
        }
        Ok(())
    }

    /// Incident `(vertex, edge, weight)` triples ordered by edge, then vertex.
    pub fn triples(&self) -> Vec<(Vertex, EdgeId, f64)> {
        let mut out = Vec::new();
        for (e, row) in self.weights.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                out.push((self.graph.edge(e)[j], e, b));
            }
        }
        out
    }

    /// One `vertex edge weight` line per incident pair, weights to 17 digits.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, e, b) in self.triples() {
            let _ = writeln!(s, "{v} {e} {}", fmt17(b));
        }
        s
    }

    pub fn row_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.graph.n()];
        for (e, row) in self.weights.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                sums[self.graph.edge(e)[j]] += b;
            }
        }
        sums
    }

    pub fn edge_products(&self) -> Vec<f64> {
        self.weights.iter().map(|row| row.iter().product()).collect()
    }

    /// Largest `|log|` of a cycle ratio product over a cycle basis of the
    /// incidence graph; zero iff the weighting is consistent.
    ///
    /// Consistency means `log B(v, e) = p(v) - q(e)` for potentials `p`, `q`;
    /// potentials are fixed along a spanning tree and every other incidence
    /// closes exactly one fundamental cycle.
    fn log_inconsistency(&self) -> f64 {
        let g = &self.graph;
        let inc = g.incidence();
        let mut pv: Vec<Option<f64>> = vec![None; g.n()];
        let mut qe: Vec<Option<f64>> = vec![None; g.m()];
        let mut tree = vec![Vec::new(); g.m()];
        let mut worst: f64 = 0.0;
        let mut queue = VecDeque::new();
        for root in 0..g.n() {
            if pv[root].is_some() {
                continue;
            }
            pv[root] = Some(0.0);
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &e in &inc[v] {
                    if qe[e].is_none() {
                        qe[e] = Some(pv[v].unwrap() - self.get(v, e).ln());
                        tree[e].push(v);
                        for &u in g.edge(e) {
                            if pv[u].is_none() {
                                pv[u] = Some(qe[e].unwrap() + self.get(u, e).ln());
                                tree[e].push(u);
                                queue.push_back(u);
                            }
                        }
                    }
                }
            }
        }
        for e in 0..g.m() {
            for &v in g.edge(e) {
                if !tree[e].contains(&v) {
                    let dev = self.get(v, e).ln() - (pv[v].unwrap() - qe[e].unwrap());
                    worst = worst.max(dev.abs());
                }
            }
        }
        worst
    }
}

/// How a weighting relates to α.
///
/// `Normal` and `SupernormalStrict` are the two consistent cases that certify
/// `rho = α^{-1/k}` and `rho > α^{-1/k}` respectively. `SupernormalNonstrict`
/// covers weightings whose vertex sums are `>= 1` and edge products `<= α` but
/// which are not consistent, so they certify nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalityMode {
    Normal,
    SupernormalStrict,
    SupernormalNonstrict,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalityReport {
    pub mode: NormalityMode,
    #[serde(serialize_with = "f17_vec")]
    pub row_sums: Vec<f64>,
    #[serde(serialize_with = "f17_vec")]
    pub edge_products: Vec<f64>,
    /// Ratio product around the unique cycle, when there is exactly one.
    #[serde(serialize_with = "f17_opt")]
    pub cycle_product: Option<f64>,
    pub consistent: bool,
    #[serde(serialize_with = "f17")]
    pub alpha: f64,
    #[serde(serialize_with = "f17")]
    pub tolerance: f64,
}

impl NormalityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn check_normal(w: &WeightedIncidence, alpha: f64, tol: f64) -> Result<NormalityReport> {
    if !is_connected(w.graph()) {
        return Err(Error::NotConnected);
    }
    w.require_complete()?;
    let row_sums = w.row_sums();
    let edge_products = w.edge_products();
    let cycle_product = unique_cycle(w.graph()).map(|_| cycle_consistency(w)).transpose()?;
    let consistent = match cycle_product {
        Some(c) => (c - 1.0).abs() <= tol,
        None => w.log_inconsistency().exp_m1().abs() <= tol,
    };

    let rows_tight = row_sums.iter().all(|s| (s - 1.0).abs() <= tol);
    let products_tight = edge_products.iter().all(|p| (p - alpha).abs() <= tol);
    let rows_super = row_sums.iter().all(|&s| s >= 1.0 - tol);
    let products_super = edge_products.iter().all(|&p| p <= alpha + tol);

    let mode = if rows_tight && products_tight && consistent {
        NormalityMode::Normal
    } else if rows_super && products_super {
        if consistent {
            NormalityMode::SupernormalStrict
        } else {
            NormalityMode::SupernormalNonstrict
        }
    } else {
        NormalityMode::Neither
    };
    Ok(NormalityReport {
        mode,
        row_sums,
        edge_products,
        cycle_product,
        consistent,
        alpha,
        tolerance: tol,
    })
}

/// `prod_i B(v_i, e_i) / B(v_{i-1}, e_i)` around the unique cycle.
pub fn cycle_consistency(w: &WeightedIncidence) -> Result<f64> {
    let cycle = unique_cycle(w.graph()).ok_or(Error::NotUnicyclic)?;
    w.require_complete()?;
    let l = cycle.len();
    let mut product = 1.0;
    for i in 0..l {
        let (prev, e) = cycle[i];
        let (next, _) = cycle[(i + 1) % l];
        product *= w.get(next, e) / w.get(prev, e);
    }
    Ok(product)
}

/// Weight 1 on every cored vertex, the rest unset.
fn with_cored_ones(g: Hypergraph) -> WeightedIncidence {
    let degrees = g.degrees();
    let mut w = WeightedIncidence::new(g);
    for e in 0..w.graph.m() {
        for j in 0..w.graph.k() {
            if degrees[w.graph.edge(e)[j]] == 1 {
                w.weights[e][j] = 1.0;
            }
        }
    }
    w
}

/// Sets `B(anchor, e) = alpha` on every pendent edge hanging at `anchor`.
fn set_pendants(w: &mut WeightedIncidence, anchor: Vertex, cycle: [EdgeId; 3], alpha: f64) -> Result<()> {
    for e in 0..w.graph.m() {
        if !cycle.contains(&e) && w.graph.edge(e).contains(&anchor) {
            w.set(anchor, e, alpha)?;
        }
    }
    Ok(())
}

fn triangle(family: Family, k: usize) -> Result<(Hypergraph, TriangleLabels)> {
    labeled_triangle_family(FamilySpec::new(family, k))
}

fn require_open(name: &str, alpha: f64, hi: f64) -> Result<()> {
    if alpha > 0.0 && alpha < hi {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("{name}: alpha = {alpha} outside (0, {hi})")))
    }
}

/// Consistently α-normal weighting of `P_m` when `f_P(α) = 1`.
pub fn build_b_p(m: usize, k: usize, alpha: f64) -> Result<WeightedIncidence> {
    require_open("build_B_P", alpha, 0.5)?;
    let (g, l) = triangle(Family::P { m }, k)?;
    let beta = (alpha / (1.0 - alpha)).sqrt();
    let mut w = with_cored_ones(g);
    let cycle = [l.e1, l.e2, l.e3];
    set_pendants(&mut w, l.v2, cycle, alpha)?;
    set_pendants(&mut w, l.w, cycle, alpha)?;
    w.set(l.w, l.e3, 1.0 - alpha)?;
    w.set(l.v1, l.e3, beta)?;
    w.set(l.v3, l.e3, beta)?;
    w.set(l.v1, l.e1, 1.0 - beta)?;
    w.set(l.v3, l.e2, 1.0 - beta)?;
    w.set(l.v2, l.e1, alpha / (1.0 - beta))?;
    w.set(l.v2, l.e2, alpha / (1.0 - beta))?;
    Ok(w)
}

/// Consistently α-normal weighting of `O_m` when `f_O(α) = 1`, `r = m - 4`.
pub fn build_b_o(m: usize, k: usize, alpha: f64) -> Result<WeightedIncidence> {
    let (g, l) = triangle(Family::O { m }, k)?;
    let r = (m - 4) as f64;
    require_open("build_B_O", alpha, 1.0 / (r + 2.0))?;
    let beta = (alpha / (1.0 - (r + 1.0) * alpha)).sqrt();
    let mut w = with_cored_ones(g);
    set_pendants(&mut w, l.w, [l.e1, l.e2, l.e3], alpha)?;
    w.set(l.w, l.e3, 1.0 - (r + 1.0) * alpha)?;
    w.set(l.v1, l.e3, beta)?;
    w.set(l.v3, l.e3, beta)?;
    w.set(l.v1, l.e1, 1.0 - beta)?;
    w.set(l.v3, l.e2, 1.0 - beta)?;
    w.set(l.v2, l.e1, alpha / (1.0 - beta))?;
    w.set(l.v2, l.e2, alpha / (1.0 - beta))?;
    Ok(w)
}

/// Consistent weighting of `Q_m` with `x = γ(α)`; strictly α-supernormal at
/// the root of `f_P(α) = 1`, which certifies `rho(Q_m) > rho(P_m)`.
pub fn build_b_q_supernormal(m: usize, k: usize, alpha: f64) -> Result<WeightedIncidence> {
    if !(alpha > 0.0 && alpha <= 0.2) {
        return Err(Error::OutOfDomain(format!(
            "build_B_Q_supernormal: alpha = {alpha} outside (0, 1/5]"
        )));
    }
    let (g, l) = triangle(Family::Q { m }, k)?;
    let x = gamma(alpha)?;
    let beta = alpha / (1.0 - x);
    let mut w = with_cored_ones(g);
    let cycle = [l.e1, l.e2, l.e3];
    set_pendants(&mut w, l.v2, cycle, alpha)?;
    set_pendants(&mut w, l.w, cycle, alpha)?;
    w.set(l.w, l.e2, 1.0 - alpha)?;
    w.set(l.v3, l.e2, x)?;
    w.set(l.v2, l.e2, alpha / ((1.0 - alpha) * x))?;
    w.set(l.v3, l.e3, 1.0 - x)?;
    w.set(l.v1, l.e3, beta)?;
    w.set(l.v1, l.e1, 1.0 - beta)?;
    w.set(l.v2, l.e1, alpha / (1.0 - beta))?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::scalar::{phi, solve_alpha_o, solve_alpha_p, ROOT_TOLERANCE};
    use crate::hypergraph::make_hypergraph;

    const TOL: f64 = DEFAULT_NORMALITY_TOLERANCE;

    #[test]
    fn single_edge_unit_weights() {
        let g = make_hypergraph(3, vec![vec![0, 1, 2]]).unwrap();
        let w = WeightedIncidence::from_triples(g, &[(0, 0, 1.0), (1, 0, 1.0), (2, 0, 1.0)]).unwrap();
        let r = check_normal(&w, 1.0, TOL).unwrap();
        assert_eq!(r.mode, NormalityMode::Normal);
        assert_eq!(r.cycle_product, None);
    }

    #[test]
    fn missing_and_non_incident_weights() {
        let g = make_hypergraph(3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let w = WeightedIncidence::from_triples(g.clone(), &[(0, 0, 1.0)]).unwrap();
        assert!(matches!(check_normal(&w, 1.0, TOL), Err(Error::MissingWeight { .. })));
        assert!(matches!(
            WeightedIncidence::from_triples(g, &[(3, 0, 1.0)]),
            Err(Error::NonIncidentWeight { .. })
        ));
    }

    #[test]
    fn p5_is_normal_at_one_fifth() {
        let w = build_b_p(5, 3, 0.2).unwrap();
        let r = check_normal(&w, 0.2, TOL).unwrap();
        assert_eq!(r.mode, NormalityMode::Normal);
        assert!((cycle_consistency(&w).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn p6_is_normal_at_its_root() {
        let a = solve_alpha_p(2, ROOT_TOLERANCE).unwrap();
        for k in 3..=5 {
            let w = build_b_p(6, k, a).unwrap();
            assert_eq!(check_normal(&w, a, TOL).unwrap().mode, NormalityMode::Normal);
        }
    }

    #[test]
    fn p5_at_wrong_alpha() {
        // too small: the max-degree vertex sum f_P(0.1) < 1
        let low = build_b_p(5, 3, 0.1).unwrap();
        assert_eq!(check_normal(&low, 0.1, TOL).unwrap().mode, NormalityMode::Neither);
        // too large: every constraint holds, one vertex sum strictly exceeds 1
        let high = build_b_p(5, 3, 0.4).unwrap();
        let r = check_normal(&high, 0.4, TOL).unwrap();
        assert_eq!(r.mode, NormalityMode::SupernormalStrict);
        assert!(r.row_sums.iter().any(|&s| s > 1.0 + 1e-3));
    }

    #[test]
    fn q5_supernormal() {
        let w = build_b_q_supernormal(5, 3, 0.2).unwrap();
        let r = check_normal(&w, 0.2, TOL).unwrap();
        assert_eq!(r.mode, NormalityMode::SupernormalStrict);
        let max = r.row_sums.iter().copied().fold(0.0, f64::max);
        assert!((max - 1.0125).abs() < 1e-12, "{max}");
        // h(γ) = 1 + α²/((1-α)²(1-2α)) φ(α) at α = 1/5
        let a: f64 = 0.2;
        let h = 1.0 + a * a / ((1.0 - a).powi(2) * (1.0 - 2.0 * a)) * phi(a).unwrap();
        assert!((max - h).abs() < 1e-14);
        assert!((cycle_consistency(&w).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn o_weighting() {
        let a = solve_alpha_o(1, ROOT_TOLERANCE).unwrap();
        let w = build_b_o(5, 3, a).unwrap();
        assert_eq!(check_normal(&w, a, TOL).unwrap().mode, NormalityMode::Normal);
        assert!((cycle_consistency(&w).unwrap() - 1.0).abs() < 1e-14);
        let a0 = solve_alpha_o(0, ROOT_TOLERANCE).unwrap();
        let w0 = build_b_o(4, 4, a0).unwrap();
        assert_eq!(check_normal(&w0, a0, TOL).unwrap().mode, NormalityMode::Normal);
        assert!(build_b_o(5, 3, 0.34).is_err());
    }

    #[test]
    fn inconsistent_cycle() {
        let g = make_hypergraph(3, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]).unwrap();
        let mut w = WeightedIncidence::new(g.clone());
        for e in 0..3 {
            for &v in g.edge(e) {
                w.set(v, e, 0.5).unwrap();
            }
        }
        for v in [1, 3, 5] {
            let e = g.incidence()[v][0];
            w.set(v, e, 1.0).unwrap();
        }
        assert!((cycle_consistency(&w).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(check_normal(&w, 0.25, TOL).unwrap().mode, NormalityMode::Normal);
        w.set(2, 0, 1.0).unwrap();
        let c = cycle_consistency(&w).unwrap();
        assert!((c - 2.0).abs() < 1e-15 || (c - 0.5).abs() < 1e-15, "{c}");
        let r = check_normal(&w, 0.5, TOL).unwrap();
        assert!(!r.consistent);
        assert_eq!(r.mode, NormalityMode::SupernormalNonstrict);
    }

    #[test]
    fn potential_check_on_two_cycles() {
        // two triangles sharing vertex 0; uniform weights are consistent
        let g = make_hypergraph(
            2,
            vec![vec![0, 1], vec![1, 2], vec![2, 0], vec![0, 3], vec![3, 4], vec![4, 0]],
        )
        .unwrap();
        let mut w = WeightedIncidence::new(g.clone());
        for (v, e, _) in WeightedIncidence::new(g).triples() {
            w.set(v, e, 0.5).unwrap();
        }
        let r = check_normal(&w, 0.25, TOL).unwrap();
        assert!(r.consistent && r.cycle_product.is_none());
        let e = w.graph().edge_id(&[3, 4]).unwrap();
        w.set(4, e, 0.25).unwrap();
        assert!(!check_normal(&w, 0.25, TOL).unwrap().consistent);
    }

    #[test]
    fn triples_text() {
        let w = build_b_p(5, 3, 0.2).unwrap();
        let text = w.to_text();
        assert_eq!(text.lines().count(), 15);
        assert!(text.lines().all(|l| l.split(' ').count() == 3));
        let json = check_normal(&w, 0.2, TOL).unwrap().to_json();
        assert!(json.contains("\"mode\":\"normal\""));
    }
}
