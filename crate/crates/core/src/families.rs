//! Named linear unicyclic families and hyperstars.
//!
//! `S`, `T1`, `T2`, `U1`, `CyclePower` and `Hyperstar` are powers of simple
//! graphs and are emitted exactly as [`power_hypergraph`] would emit them.
//! `P`, `Q` and `O` attach at cored vertices of the triangle and are built
//! directly with a fixed layout: cycle vertices `v1 = 0`, `v2 = 1`, `v3 = 2`,
//! cycle edges `e1 ⊃ {v1, v2}`, `e2 ⊃ {v2, v3}`, `e3 ⊃ {v3, v1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{make_hypergraph, power_hypergraph, EdgeId, Hypergraph, SimpleGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Power of the star `K_{1,s}`.
    Hyperstar { s: usize },
    /// Power of the cycle `C_g`.
    CyclePower { g: usize },
    /// Power of `C_g` with a star of `m - g` edges at one cycle vertex.
    S { m: usize, g: usize },
    /// Power of `S_{m-1,3}` plus one pendant edge at a degree-2 cycle vertex.
    T1 { m: usize },
    /// Power of `S_{m-2,3}` plus two pendant edges at a degree-2 cycle vertex.
    T2 { m: usize },
    /// Power of `S_{m-1,3}` plus one pendant edge at a leaf of the star.
    U1 { m: usize },
    /// Power triangle with a hyperstar of `m - 3` edges centred at a cored vertex.
    O { m: usize },
    /// `S^k_{m-1,3}` plus a pendent edge at a cored vertex of the cycle edge
    /// opposite the maximum-degree vertex.
    P { m: usize },
    /// As `P`, but on a cycle edge through the maximum-degree vertex.
    Q { m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: usize,
}

impl FamilySpec {
    pub fn new(family: Family, k: usize) -> Self {
        FamilySpec { family, k }
    }
}

impl Family {
    pub fn edge_count(&self) -> usize {
        match *self {
            Family::Hyperstar { s } => s,
            Family::CyclePower { g } => g,
            Family::S { m, .. }
            | Family::T1 { m }
            | Family::T2 { m }
            | Family::U1 { m }
            | Family::O { m }
            | Family::P { m }
            | Family::Q { m } => m,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::Hyperstar { .. } => "Hyperstar",
            Family::CyclePower { .. } => "CyclePower",
            Family::S { .. } => "S",
            Family::T1 { .. } => "T1",
            Family::T2 { .. } => "T2",
            Family::U1 { .. } => "U1",
            Family::O { .. } => "O",
            Family::P { .. } => "P",
            Family::Q { .. } => "Q",
        }
    }

    /// Builds a family from its tag, edge count `m` and (for `S`/`CyclePower`) girth.
    pub fn from_tag(tag: &str, m: usize, g: Option<usize>) -> Result<Family> {
        let need_g = || g.ok_or_else(|| Error::OutOfDomain(format!("family {tag} needs a girth")));
        let family = match tag.to_ascii_uppercase().as_str() {
            "HYPERSTAR" | "STAR" => Family::Hyperstar { s: m },
            "CYCLEPOWER" | "CYCLE" | "C" => Family::CyclePower { g: g.unwrap_or(m) },
            "S" => Family::S { m, g: need_g()? },
            "T1" => Family::T1 { m },
            "T2" => Family::T2 { m },
            "U1" => Family::U1 { m },
            "O" => Family::O { m },
            "P" => Family::P { m },
            "Q" => Family::Q { m },
            _ => return Err(Error::Parse(format!("unknown family `{tag}`"))),
        };
        if let Family::CyclePower { g } = family {
            if g != m {
                return Err(Error::OutOfDomain(format!(
                    "cycle power with girth {g} has {g} edges, not {m}"
                )));
            }
        }
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        let (ok, rule) = match *self {
            Family::Hyperstar { s } => (s >= 1, "s >= 1"),
            Family::CyclePower { g } => (g >= 3, "g >= 3"),
            Family::S { m, g } => (m >= g && g >= 3, "m >= g >= 3"),
            Family::T1 { m } => (m >= 4, "m >= 4"),
            Family::T2 { m } => (m >= 5, "m >= 5"),
            Family::U1 { m } => (m >= 5, "m >= 5"),
            Family::O { m } => (m >= 4, "m >= 4"),
            Family::P { m } => (m >= 5, "m >= 5 (r = m - 4 >= 1)"),
            Family::Q { m } => (m >= 5, "m >= 5 (r = m - 4 >= 1)"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfDomain(format!("{self} requires {rule}")))
        }
    }

    /// The underlying simple graph for the power families.
    pub fn simple_graph(&self) -> Option<SimpleGraph> {
        self.validate().ok()?;
        let g = match *self {
            Family::Hyperstar { s } => SimpleGraph::star(s),
            Family::CyclePower { g } => SimpleGraph::cycle(g),
            Family::S { m, g } => SimpleGraph::cycle_with_star(m, g),
            // cycle 0-1-2 with the star at 0; vertex 1 has degree 2
            Family::T1 { m } => SimpleGraph::cycle_with_star(m - 1, 3).and_then(|s| s.with_pendants(1, 1)),
            Family::T2 { m } => SimpleGraph::cycle_with_star(m - 2, 3).and_then(|s| s.with_pendants(1, 2)),
            // vertex 3 is the first star leaf
            Family::U1 { m } => SimpleGraph::cycle_with_star(m - 1, 3).and_then(|s| s.with_pendants(3, 1)),
            Family::O { .. } | Family::P { .. } | Family::Q { .. } => return None,
        };
        g.ok()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Hyperstar { s } => write!(f, "Hyperstar(s={s})"),
            Family::CyclePower { g } => write!(f, "CyclePower(g={g})"),
            Family::S { m, g } => write!(f, "S(m={m},g={g})"),
            other => write!(f, "{}(m={})", other.tag(), other.edge_count()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `TAG:m` or `S:m:g`, e.g. `Q:8`, `S:6:4`, `CyclePower:5`.
    fn from_str(s: &str) -> Result<Family> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|e| Error::Parse(format!("`{t}`: {e}")));
        match parts.as_slice() {
            [tag, m] => Family::from_tag(tag, num(m)?, None),
            [tag, m, g] => Family::from_tag(tag, num(m)?, Some(num(g)?)),
            _ => Err(Error::Parse(format!("family must look like TAG:m or S:m:g, got `{s}`"))),
        }
    }
}

/// Named landmarks of the triangle families `P`, `Q` and `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleLabels {
    pub v1: Vertex,
    pub v2: Vertex,
    pub v3: Vertex,
    /// The cored cycle vertex carrying the attachment.
    pub w: Vertex,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub e3: EdgeId,
}

pub fn family(spec: FamilySpec) -> Result<Hypergraph> {
    spec.family.validate()?;
    if spec.k < 3 {
        return Err(Error::InvalidUniformity { k: spec.k, min: 3 });
    }
    match spec.family {
        Family::O { .. } | Family::P { .. } | Family::Q { .. } => labeled_triangle_family(spec).map(|(g, _)| g),
        f => power_hypergraph(&f.simple_graph().expect("power family"), spec.k),
    }
}

/// Builds `P`, `Q` or `O` together with its landmarks.
pub fn labeled_triangle_family(spec: FamilySpec) -> Result<(Hypergraph, TriangleLabels)> {
    spec.family.validate()?;
    let k = spec.k;
    if k < 3 {
        return Err(Error::InvalidUniformity { k, min: 3 });
    }
    let (v1, v2, v3) = (0, 1, 2);
    let mut next = 3;
    let mut fresh = |count: usize| {
        let r: Vec<Vertex> = (next..next + count).collect();
        next += count;
        r
    };
    let with = |mut base: Vec<Vertex>, extra: Vec<Vertex>| {
        base.extend(extra);
        base
    };
    let e1 = with(vec![v1, v2], fresh(k - 2));
    let e2 = with(vec![v2, v3], fresh(k - 2));
    let e3 = with(vec![v3, v1], fresh(k - 2));
    let mut edges = vec![e1.clone(), e2.clone(), e3.clone()];

    let w = match spec.family {
        Family::P { m } => {
            for _ in 0..m - 4 {
                edges.push(with(vec![v2], fresh(k - 1)));
            }
            let w = e3[2];
            edges.push(with(vec![w], fresh(k - 1)));
            w
        }
        Family::Q { m } => {
            for _ in 0..m - 4 {
                edges.push(with(vec![v2], fresh(k - 1)));
            }
            let w = e2[2];
            edges.push(with(vec![w], fresh(k - 1)));
            w
        }
        Family::O { m } => {
            let w = e3[2];
            for _ in 0..m - 3 {
                edges.push(with(vec![w], fresh(k - 1)));
            }
            w
        }
        other => {
            return Err(Error::OutOfDomain(format!(
                "{other} is not a triangle attachment family"
            )));
        }
    };
    let g = make_hypergraph(k, edges)?;
    let id = |e: &[Vertex]| g.edge_id(e).expect("edge present");
    let labels = TriangleLabels {
        v1,
        v2,
        v3,
        w,
        e1: id(&e1),
        e2: id(&e2),
        e3: id(&e3),
    };
    Ok((g, labels))
}

/// All families with `m` edges whose parameter domain admits `m`, in a fixed order.
pub fn families_with_edges(m: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for g in 3..=m {
        out.push(Family::S { m, g });
    }
    out.extend([
        Family::T1 { m },
        Family::T2 { m },
        Family::U1 { m },
        Family::O { m },
        Family::P { m },
        Family::Q { m },
    ]);
    out.retain(|f| f.validate().is_ok());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{structural_profile, Classification};

    fn build(f: Family, k: usize) -> Hypergraph {
        family(FamilySpec::new(f, k)).unwrap()
    }

    #[test]
    fn o5_degrees() {
        let g = build(Family::O { m: 5 }, 3);
        assert_eq!(g.n(), 10);
        let mut d = g.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn q5_shape() {
        let (g, l) = labeled_triangle_family(FamilySpec::new(Family::Q { m: 5 }, 3)).unwrap();
        let d = g.degrees();
        assert_eq!(d[l.v2], 3);
        assert_eq!(d[l.w], 2);
        assert!(g.edge(l.e2).contains(&l.w));
        let p = structural_profile(&g);
        assert_eq!(p.classification, Classification::Unicyclic);
        assert_eq!(p.girth, Some(3));
        assert!(p.linear);
    }

    #[test]
    fn p_domain() {
        assert!(matches!(
            family(FamilySpec::new(Family::P { m: 4 }, 3)),
            Err(Error::OutOfDomain(_))
        ));
        assert!(family(FamilySpec::new(Family::S { m: 4, g: 5 }, 3)).is_err());
        assert!(family(FamilySpec::new(Family::T1 { m: 5 }, 2)).is_err());
    }

    #[test]
    fn cycle_power_matches_power_of_cycle() {
        let g = build(Family::CyclePower { g: 3 }, 3);
        let h = power_hypergraph(&SimpleGraph::cycle(3).unwrap(), 3).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn family_invariants() {
        for k in 3..=5 {
            for m in 4..=8 {
                for f in families_with_edges(m) {
                    let g = build(f, k);
                    let p = structural_profile(&g);
                    assert_eq!(g.m(), m, "{f}");
                    assert_eq!(g.n(), m * (k - 1), "{f}");
                    assert!(p.connected && p.linear, "{f}");
                    assert_eq!(p.classification, Classification::Unicyclic, "{f}");
                    let girth = if let Family::S { g, .. } = f { g } else { 3 };
                    assert_eq!(p.girth, Some(girth), "{f}");
                }
            }
            let star = build(Family::Hyperstar { s: 4 }, k);
            assert_eq!(star.n() - 1, star.m() * (k - 1));
            assert_eq!(structural_profile(&star).classification, Classification::Hypertree);
        }
    }

    #[test]
    fn parse_family() {
        assert_eq!("Q:8".parse::<Family>().unwrap(), Family::Q { m: 8 });
        assert_eq!("S:6:4".parse::<Family>().unwrap(), Family::S { m: 6, g: 4 });
        assert!("S:6".parse::<Family>().is_err());
        assert!("X:6".parse::<Family>().is_err());
    }
}
