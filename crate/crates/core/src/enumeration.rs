//! Exhaustive generation of connected linear unicyclic hypergraphs up to
//! isomorphism, and ranking by spectral radius.
//!
//! Every such hypergraph with `m` edges arises from the power of its cycle by
//! repeatedly attaching a fresh edge that meets the current hypergraph in
//! exactly one vertex: meeting it in two or more vertices would either create
//! a second cycle or break linearity.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::families::{families_with_edges, family, Family, FamilySpec};
use crate::format::{f17, fmt17};
use crate::hypergraph::{make_hypergraph, Hypergraph};
use crate::spectral::{spectral_radius_tensor, IterationOptions};

/// Edge counts from which enumeration requires an explicit opt-in.
pub const LARGE_M: usize = 7;

/// Default cap on the number of classes kept at any level.
pub const DEFAULT_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationJob {
    pub k: usize,
    pub m: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub cap: usize,
    pub allow_large: bool,
    /// Permutes attachment order; the output must not depend on it.
    pub shuffle_seed: Option<u64>,
}

impl EnumerationJob {
    pub fn new(k: usize, m: usize) -> Self {
        EnumerationJob {
            k,
            m,
            jobs: None,
            cap: DEFAULT_CAP,
            allow_large: false,
            shuffle_seed: None,
        }
    }

    pub fn run(&self) -> Result<Vec<Hypergraph>> {
        Ok(self
            .run_forms()?
            .into_iter()
            .map(|f| f.to_hypergraph().expect("canonical forms decode"))
            .collect())
    }

    /// Sorted canonical forms of all classes.
    pub fn run_forms(&self) -> Result<Vec<CanonicalForm>> {
        if self.k < 3 {
            return Err(Error::InvalidUniformity { k: self.k, min: 3 });
        }
        if self.m < 3 {
            return Err(Error::OutOfDomain(format!(
                "linear unicyclic hypergraphs need m >= 3, got {}",
                self.m
            )));
        }
        if self.m >= LARGE_M && !self.allow_large {
            return Err(Error::Budget(format!(
                "enumeration at m = {} needs an explicit opt-in",
                self.m
            )));
        }
        match self.jobs {
            Some(threads) => rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| Error::Budget(e.to_string()))?
                .install(|| self.grow()),
            None => self.grow(),
        }
    }

    fn grow(&self) -> Result<Vec<CanonicalForm>> {
        let mut done = BTreeSet::new();
        for g in 3..=self.m {
            let seed = family(FamilySpec::new(Family::CyclePower { g }, self.k))?;
            done.extend(self.expand_until(vec![canonical_form(&seed)], g)?);
        }
        Ok(done.into_iter().collect())
    }

    /// Grows every form with `edges` edges up to `m` edges.
    fn expand_until(&self, mut level: Vec<CanonicalForm>, mut edges: usize) -> Result<BTreeSet<CanonicalForm>> {
        while edges < self.m && !level.is_empty() {
            let next: BTreeSet<CanonicalForm> = level
                .par_iter()
                .enumerate()
                .flat_map_iter(|(i, form)| self.children(form, i))
                .collect();
            if next.len() > self.cap {
                return Err(Error::Budget(format!(
                    "{} classes at {} edges exceed the cap of {}",
                    next.len(),
                    edges + 1,
                    self.cap
                )));
            }
            level = next.into_iter().collect();
            edges += 1;
        }
        Ok(level.into_iter().collect())
    }

    fn children(&self, form: &CanonicalForm, index: usize) -> Vec<CanonicalForm> {
        let g = form.to_hypergraph().expect("canonical forms decode");
        let mut anchors: Vec<usize> = (0..g.n()).collect();
        if let Some(seed) = self.shuffle_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            anchors.shuffle(&mut rng);
        }
        anchors
            .into_iter()
            .map(|v| {
                let mut edges = g.edges().to_vec();
                let mut fresh = vec![v];
                fresh.extend(g.n()..g.n() + self.k - 1);
                edges.push(fresh);
                canonical_form(&make_hypergraph(self.k, edges).expect("fresh edge is new"))
            })
            .collect()
    }
}

/// All classes of connected linear unicyclic `k`-uniform hypergraphs with
/// `m` edges (`m < 7`), sorted by canonical form.
pub fn enumerate_linear_unicyclic(k: usize, m: usize) -> Result<Vec<Hypergraph>> {
    EnumerationJob::new(k, m).run()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub canonical: CanonicalForm,
    #[serde(serialize_with = "f17")]
    pub rho: f64,
    /// Whether `rho` lies within [`TIE_TOLERANCE`] of the previous entry.
    pub tied: bool,
    pub family: Option<String>,
}

pub const TIE_TOLERANCE: f64 = 1e-9;

/// Sorts by decreasing spectral radius; values within [`TIE_TOLERANCE`] are
/// tied and ordered by canonical form.
pub fn rank_by_rho(instances: &[Hypergraph], opts: &IterationOptions) -> Result<Vec<RankedEntry>> {
    let mut rows: Vec<(CanonicalForm, f64)> = instances
        .par_iter()
        .map(|g| Ok((canonical_form(g), spectral_radius_tensor(g, opts)?.rho)))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    // reorder each run of near-equal values by canonical form
    let mut start = 0;
    while start < rows.len() {
        let mut end = start + 1;
        while end < rows.len() && rows[end - 1].1 - rows[end].1 <= TIE_TOLERANCE {
            end += 1;
        }
        rows[start..end].sort_by(|a, b| a.0.cmp(&b.0));
        start = end;
    }
    let labels = family_labels(instances);
    let mut out: Vec<RankedEntry> = Vec::with_capacity(rows.len());
    for (i, (canonical, rho)) in rows.into_iter().enumerate() {
        let tied = out.last().is_some_and(|p| (p.rho - rho).abs() <= TIE_TOLERANCE);
        let family = labels.get(&canonical).cloned();
        out.push(RankedEntry {
            rank: i + 1,
            canonical,
            rho,
            tied,
            family,
        });
    }
    Ok(out)
}

/// Names of the known families among `instances`, by canonical form.
pub fn family_labels(instances: &[Hypergraph]) -> BTreeMap<CanonicalForm, String> {
    let shapes: BTreeSet<(usize, usize)> = instances.iter().map(|g| (g.k(), g.m())).collect();
    let mut labels = BTreeMap::new();
    for (k, m) in shapes {
        if k < 3 {
            continue;
        }
        for f in families_with_edges(m)
            .into_iter()
            .chain(std::iter::once(Family::CyclePower { g: m }))
        {
            if let Ok(g) = family(FamilySpec::new(f, k)) {
                labels.entry(canonical_form(&g)).or_insert_with(|| f.to_string());
            }
        }
    }
    labels
}

#[derive(Serialize)]
struct JsonLine<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    canonical: &'a CanonicalForm,
    k: usize,
    n: usize,
    m: usize,
    edges: &'a [Vec<usize>],
    #[serde(serialize_with = "f17")]
    rho: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tied: Option<bool>,
    family: &'a Option<String>,
}

/// One JSON object per line: the hypergraph with its rank and radius.
pub fn ranking_to_jsonl(entries: &[RankedEntry]) -> Result<String> {
    let mut out = String::new();
    for e in entries {
        let g = e.canonical.to_hypergraph()?;
        let line = JsonLine {
            rank: Some(e.rank),
            canonical: &e.canonical,
            k: g.k(),
            n: g.n(),
            m: g.m(),
            edges: g.edges(),
            rho: e.rho,
            tied: Some(e.tied),
            family: &e.family,
        };
        out.push_str(&serde_json::to_string(&line).map_err(|err| Error::Parse(err.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

/// One JSON object per line in the given order, without ranks.
pub fn enumeration_to_jsonl(instances: &[Hypergraph], opts: &IterationOptions) -> Result<String> {
    let rhos: Vec<f64> = instances
        .par_iter()
        .map(|g| Ok(spectral_radius_tensor(g, opts)?.rho))
        .collect::<Result<_>>()?;
    let labels = family_labels(instances);
    let mut out = String::new();
    for (g, rho) in instances.iter().zip(rhos) {
        let canonical = canonical_form(g);
        let line = JsonLine {
            rank: None,
            canonical: &canonical,
            k: g.k(),
            n: g.n(),
            m: g.m(),
            edges: g.edges(),
            rho,
            tied: None,
            family: &labels.get(&canonical).cloned(),
        };
        out.push_str(&serde_json::to_string(&line).map_err(|err| Error::Parse(err.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

pub fn ranking_to_csv(entries: &[RankedEntry]) -> String {
    let mut out = String::from("rank,canonical,family,rho,tied\n");
    for e in entries {
        out.push_str(&format!(
            "{},\"{}\",{},{},{}\n",
            e.rank,
            e.canonical,
            e.family.as_deref().unwrap_or(""),
            fmt17(e.rho),
            e.tied
        ));
    }
    out
}

pub fn ranking_to_markdown(entries: &[RankedEntry]) -> String {
    let mut out = String::from("| rank | family | rho | tied | canonical |\n|---:|---|---:|---|---|\n");
    for e in entries {
        out.push_str(&format!(
            "| {} | {} | {} | {} | `{}` |\n",
            e.rank,
            e.family.as_deref().unwrap_or("-"),
            fmt17(e.rho),
            if e.tied { "yes" } else { "" },
            e.canonical
        ));
    }
    out
}
