//! Numerical verification of the ordering claims among the named families.
//!
//! Each claim is a strict inequality `lhs < rhs` between spectral radii,
//! evaluated per edge count. An instance passes when `rhs - lhs` exceeds ten
//! times the iteration tolerance. Every family radius is computed by tensor
//! iteration and cross-checked against a second method where one exists.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alpha::{rho_from_alpha, solve_alpha_o, solve_alpha_p, ROOT_TOLERANCE};
use crate::canon::canonical_form;
use crate::enumeration::{rank_by_rho, EnumerationJob, LARGE_M};
use crate::error::{Error, Result};
use crate::families::{families_with_edges, family, Family, FamilySpec};
use crate::format::{f17_opt, fmt17};
use crate::spectral::{spectral_radius_power_formula, spectral_radius_tensor, IterationOptions};

/// Largest accepted disagreement between two methods for the same radius.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub m: usize,
    pub lhs_label: String,
    #[serde(serialize_with = "f17_opt")]
    pub lhs: Option<f64>,
    pub rhs_label: String,
    #[serde(serialize_with = "f17_opt")]
    pub rhs: Option<f64>,
    /// `rhs - lhs`.
    #[serde(serialize_with = "f17_opt")]
    pub gap: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub statement: String,
    pub k: usize,
    pub instances: Vec<Instance>,
    #[serde(serialize_with = "crate::format::f17")]
    pub tolerance: f64,
    #[serde(serialize_with = "crate::format::f17")]
    pub threshold: f64,
    /// `Fail` if any instance failed, `Pass` if some passed, else `NotApplicable`.
    pub verdict: Status,
}

impl VerificationReport {
    fn finish(claim: &str, statement: &str, k: usize, instances: Vec<Instance>, opts: &SuiteOptions) -> Self {
        let verdict = if instances.iter().any(|i| i.status == Status::Fail) {
            Status::Fail
        } else if instances.iter().any(|i| i.status == Status::Pass) {
            Status::Pass
        } else {
            Status::NotApplicable
        };
        VerificationReport {
            claim: claim.into(),
            statement: statement.into(),
            k,
            instances,
            tolerance: opts.iteration.tolerance,
            threshold: opts.threshold(),
            verdict,
        }
    }

    /// Smallest gap over the instances that were evaluated.
    pub fn min_gap(&self) -> Option<f64> {
        self.instances.iter().filter_map(|i| i.gap).reduce(f64::min)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteOptions {
    pub iteration: IterationOptions,
    /// Also rank a full enumeration for the second/third-largest claims.
    pub exhaustive: bool,
    pub allow_large: bool,
    pub jobs: Option<usize>,
}

impl SuiteOptions {
    pub fn threshold(&self) -> f64 {
        10.0 * self.iteration.tolerance
    }
}

/// Cached family radii with their cross-method checks.
struct Radii<'a> {
    k: usize,
    opts: &'a SuiteOptions,
    cache: BTreeMap<Family, Result<f64>>,
    checks: Vec<Instance>,
}

impl<'a> Radii<'a> {
    fn new(k: usize, opts: &'a SuiteOptions) -> Self {
        Radii {
            k,
            opts,
            cache: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn get(&mut self, f: Family) -> Result<f64> {
        if let Some(r) = self.cache.get(&f) {
            return r.clone();
        }
        let r = self.compute(f);
        self.cache.insert(f, r.clone());
        r
    }

    fn compute(&mut self, f: Family) -> Result<f64> {
        let g = family(FamilySpec::new(f, self.k))?;
        let tensor = spectral_radius_tensor(&g, &self.opts.iteration)?.rho;
        let (label, other) = match f {
            Family::P { m } => (
                "alpha-normal",
                rho_from_alpha(solve_alpha_p(m - 4, ROOT_TOLERANCE)?, self.k)?,
            ),
            Family::O { m } => (
                "alpha-normal",
                rho_from_alpha(solve_alpha_o(m - 4, ROOT_TOLERANCE)?, self.k)?,
            ),
            _ => match f.simple_graph() {
                Some(sg) => (
                    "power-formula",
                    spectral_radius_power_formula(&sg, self.k, &self.opts.iteration)?,
                ),
                None => return Ok(tensor),
            },
        };
        let diff = (tensor - other).abs();
        self.checks.push(Instance {
            m: f.edge_count(),
            lhs_label: format!("{f} tensor"),
            lhs: Some(tensor),
            rhs_label: format!("{f} {label}"),
            rhs: Some(other),
            gap: Some(diff),
            status: if diff <= CROSS_CHECK_TOLERANCE {
                Status::Pass
            } else {
                Status::Fail
            },
            note: None,
        });
        Ok(tensor)
    }

    /// `lhs < rhs`, or not applicable when either family is out of its domain.
    fn compare(&mut self, m: usize, lhs: Family, rhs: Family) -> Result<Instance> {
        let domain = lhs.validate().and(rhs.validate());
        let mut inst = Instance {
            m,
            lhs_label: lhs.to_string(),
            lhs: None,
            rhs_label: rhs.to_string(),
            rhs: None,
            gap: None,
            status: Status::NotApplicable,
            note: None,
        };
        if let Err(e) = domain {
            inst.note = Some(e.to_string());
            return Ok(inst);
        }
        let (a, b) = (self.get(lhs)?, self.get(rhs)?);
        Ok(graded(inst, a, b, self.opts.threshold()))
    }
}

fn graded(mut inst: Instance, lhs: f64, rhs: f64, threshold: f64) -> Instance {
    inst.lhs = Some(lhs);
    inst.rhs = Some(rhs);
    inst.gap = Some(rhs - lhs);
    inst.status = if rhs - lhs > threshold {
        Status::Pass
    } else {
        Status::Fail
    };
    inst
}

fn not_applicable(m: usize, lhs: &str, rhs: &str, note: String) -> Instance {
    Instance {
        m,
        lhs_label: lhs.into(),
        lhs: None,
        rhs_label: rhs.into(),
        rhs: None,
        gap: None,
        status: Status::NotApplicable,
        note: Some(note),
    }
}

struct Pairwise {
    claim: &'static str,
    statement: &'static str,
    min_m: usize,
    lhs: fn(usize) -> Family,
    rhs: fn(usize) -> Family,
}

const PAIRWISE: [Pairwise; 6] = [
    Pairwise {
        claim: "q-below-t1",
        statement: "rho(Q_m) < rho(T1_m) for m >= 4",
        min_m: 4,
        lhs: |m| Family::Q { m },
        rhs: |m| Family::T1 { m },
    },
    Pairwise {
        claim: "p-below-q",
        statement: "rho(P_m) < rho(Q_m) for m >= 5",
        min_m: 5,
        lhs: |m| Family::P { m },
        rhs: |m| Family::Q { m },
    },
    Pairwise {
        claim: "o-below-p",
        statement: "rho(O_m) < rho(P_m) for m >= 5",
        min_m: 5,
        lhs: |m| Family::O { m },
        rhs: |m| Family::P { m },
    },
    Pairwise {
        claim: "s4-below-o",
        statement: "rho(S_{m,4}) < rho(O_m) for m >= 4",
        min_m: 4,
        lhs: |m| Family::S { m, g: 4 },
        rhs: |m| Family::O { m },
    },
    Pairwise {
        claim: "t2-below-u1",
        statement: "rho(T2_m) < rho(U1_m) for m >= 8",
        min_m: 8,
        lhs: |m| Family::T2 { m },
        rhs: |m| Family::U1 { m },
    },
    Pairwise {
        claim: "u1-below-q",
        statement: "rho(U1_m) < rho(Q_m) for m >= 5",
        min_m: 5,
        lhs: |m| Family::U1 { m },
        rhs: |m| Family::Q { m },
    },
];

/// Runs every claim for `k` over `m_lo..=m_hi`. The final report collects the
/// cross-method checks of all family radii that were computed.
pub fn verify_suite(k: usize, m_lo: usize, m_hi: usize, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    if k < 3 {
        return Err(Error::InvalidUniformity { k, min: 3 });
    }
    if m_lo > m_hi {
        return Err(Error::OutOfDomain(format!("empty edge-count range {m_lo}..{m_hi}")));
    }
    let mut radii = Radii::new(k, opts);
    let mut reports = Vec::new();
    for claim in &PAIRWISE {
        let mut instances = Vec::new();
        for m in m_lo..=m_hi {
            let (lhs, rhs) = ((claim.lhs)(m), (claim.rhs)(m));
            if m < claim.min_m {
                instances.push(not_applicable(
                    m,
                    &lhs.to_string(),
                    &rhs.to_string(),
                    format!("claim needs m >= {}", claim.min_m),
                ));
            } else {
                instances.push(radii.compare(m, lhs, rhs)?);
            }
        }
        reports.push(VerificationReport::finish(
            claim.claim,
            claim.statement,
            k,
            instances,
            opts,
        ));
    }

    let mut instances = Vec::new();
    for m in m_lo..=m_hi {
        if m < 4 {
            instances.push(not_applicable(
                m,
                "S_{m,g}",
                "S_{m,g-1}",
                "claim needs 4 <= g <= m".into(),
            ));
        }
        for g in 4..=m {
            instances.push(radii.compare(m, Family::S { m, g }, Family::S { m, g: g - 1 })?);
        }
    }
    reports.push(VerificationReport::finish(
        "s-girth-monotone",
        "rho(S_{m,g}) < rho(S_{m,g-1}) for 4 <= g <= m",
        k,
        instances,
        opts,
    ));

    reports.push(placement_claim(
        &mut radii,
        "t1-second",
        "T1_m has the second largest spectral radius for m >= 5",
        m_lo..=m_hi,
        5,
        &[Family::S { m: 0, g: 3 }],
        |m| Family::T1 { m },
        opts,
    )?);
    reports.push(placement_claim(
        &mut radii,
        "q-third",
        "Q_m has the third largest spectral radius for m >= 8",
        m_lo..=m_hi,
        8,
        &[Family::S { m: 0, g: 3 }, Family::T1 { m: 0 }],
        |m| Family::Q { m },
        opts,
    )?);

    let checks = std::mem::take(&mut radii.checks);
    reports.push(VerificationReport::finish(
        "cross-method",
        "tensor iteration agrees with the alpha-normal value (P, O) or the power formula (power families)",
        k,
        checks,
        opts,
    ));
    Ok(reports)
}

fn with_m(f: Family, m: usize) -> Family {
    match f {
        Family::S { g, .. } => Family::S { m, g },
        Family::T1 { .. } => Family::T1 { m },
        other => other,
    }
}

/// `target` sits directly below each family in `above` and above every other
/// named family; with `exhaustive`, also at the right place in a full ranking.
#[allow(clippy::too_many_arguments)]
fn placement_claim(
    radii: &mut Radii,
    claim: &str,
    statement: &str,
    ms: std::ops::RangeInclusive<usize>,
    min_m: usize,
    above: &[Family],
    target: fn(usize) -> Family,
    opts: &SuiteOptions,
) -> Result<VerificationReport> {
    let mut instances = Vec::new();
    for m in ms {
        let t = target(m);
        if m < min_m {
            instances.push(not_applicable(
                m,
                "others",
                &t.to_string(),
                format!("claim needs m >= {min_m}"),
            ));
            continue;
        }
        let above: Vec<Family> = above.iter().map(|&f| with_m(f, m)).collect();
        if let Some(&next) = above.last() {
            instances.push(radii.compare(m, t, next)?);
        }
        let k = radii.k;
        let form = |f: Family| family(FamilySpec::new(f, k)).map(|g| canonical_form(&g));
        let mut named = vec![(t, form(t)?)];
        for &f in &above {
            named.push((f, form(f)?));
        }
        for f in families_with_edges(m) {
            if named.iter().any(|(g, _)| *g == f) {
                continue;
            }
            let this = form(f)?;
            match named.iter().find(|(_, c)| *c == this) {
                Some((same, _)) => instances.push(not_applicable(
                    m,
                    &f.to_string(),
                    &t.to_string(),
                    format!("isomorphic to {same}"),
                )),
                None => instances.push(radii.compare(m, f, t)?),
            }
        }
        if opts.exhaustive {
            instances.push(exhaustive_place(radii, m, above.len(), t)?);
        }
    }
    Ok(VerificationReport::finish(claim, statement, radii.k, instances, opts))
}

/// Ranks all classes with `m` edges and checks that `target` is at 0-based
/// position `place` strictly above the next class.
fn exhaustive_place(radii: &mut Radii, m: usize, place: usize, target: Family) -> Result<Instance> {
    let opts = radii.opts;
    let rhs_label = format!("{target} (enumerated)");
    if m >= LARGE_M && !opts.allow_large {
        return Ok(not_applicable(
            m,
            "next class",
            &rhs_label,
            "full enumeration not enabled for this m".into(),
        ));
    }
    let job = EnumerationJob {
        jobs: opts.jobs,
        allow_large: opts.allow_large,
        ..EnumerationJob::new(radii.k, m)
    };
    let ranked = rank_by_rho(&job.run()?, &opts.iteration)?;
    let want = canonical_form(&family(FamilySpec::new(target, radii.k))?);
    let (Some(at), Some(below)) = (ranked.get(place), ranked.get(place + 1)) else {
        return Ok(not_applicable(m, "next class", &rhs_label, "too few classes".into()));
    };
    let lhs_label = format!(
        "rank {} {}",
        place + 2,
        below.family.clone().unwrap_or_else(|| below.canonical.to_string())
    );
    let inst = Instance {
        m,
        lhs_label,
        lhs: None,
        rhs_label,
        rhs: None,
        gap: None,
        status: Status::Fail,
        note: None,
    };
    let mut inst = graded(inst, below.rho, at.rho, opts.threshold());
    if at.canonical != want {
        inst.status = Status::Fail;
        inst.note = Some(format!("rank {} is {}", place + 1, at.canonical));
    }
    Ok(inst)
}

pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

pub fn reports_to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("claim,k,m,lhs_label,lhs,rhs_label,rhs,gap,status\n");
    let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
    for r in reports {
        for i in &r.instances {
            out.push_str(&format!(
                "{},{},{},\"{}\",{},\"{}\",{},{},{}\n",
                r.claim,
                r.k,
                i.m,
                i.lhs_label,
                opt(i.lhs),
                i.rhs_label,
                opt(i.rhs),
                opt(i.gap),
                i.status.as_str()
            ));
        }
    }
    out
}

pub fn reports_to_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_else(|| "-".into());
    for r in reports {
        out.push_str(&format!(
            "### {} (k = {}): {}\n\n{}\n\nthreshold {}\n\n| m | lhs | value | rhs | value | gap | status |\n|---:|---|---:|---|---:|---:|---|\n",
            r.claim,
            r.k,
            r.verdict.as_str(),
            r.statement,
            fmt17(r.threshold)
        ));
        for i in &r.instances {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                i.m,
                i.lhs_label,
                opt(i.lhs),
                i.rhs_label,
                opt(i.rhs),
                opt(i.gap),
                i.status.as_str()
            ));
        }
        out.push('\n');
    }
    out
}
