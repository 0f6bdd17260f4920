//! Spectral radius of the adjacency tensor by shifted power iteration.
//!
//! For a connected k-uniform hypergraph the iteration
//! `x <- (A x^{k-1} + s x^{[k-1]})^{[1/(k-1)]}` converges to the Perron vector;
//! the ratios `(A x^{k-1} + s x^{[k-1]})_i / x_i^{k-1}` enclose `rho + s`
//! from both sides at every step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{f17, f17_vec};
use crate::hypergraph::{Hypergraph, SimpleGraph};
use crate::structure::is_connected;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TensorPower,
    MatrixPower,
    AlphaNormal,
    PowerFormula,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub shift: f64,
}

impl Default for IterationOptions {
    fn default() -> Self {
        IterationOptions {
            tolerance: 1e-12,
            max_iterations: 100_000,
            shift: 1.0,
        }
    }
}

impl IterationOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        IterationOptions {
            tolerance,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::OutOfDomain(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !(self.shift >= 0.0) {
            return Err(Error::OutOfDomain(format!(
                "shift must be nonnegative, got {}",
                self.shift
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub rho: f64,
    /// Positive eigenvector scaled to unit maximum entry.
    pub perron: Vec<f64>,
    /// `max_i |(A x^{k-1})_i - rho x_i^{k-1}|` at the returned pair.
    pub residual: f64,
    pub iterations: usize,
    pub method: Method,
}

#[derive(Serialize)]
struct SpectralJson<'a> {
    #[serde(serialize_with = "f17")]
    rho: f64,
    #[serde(serialize_with = "f17")]
    residual: f64,
    iterations: usize,
    method: Method,
    #[serde(serialize_with = "perron_json", skip_serializing_if = "Option::is_none")]
    perron: Option<&'a [f64]>,
}

fn perron_json<S: serde::Serializer>(x: &Option<&[f64]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    f17_vec(x.unwrap_or_default(), s)
}

impl SpectralResult {
    /// JSON object with `rho`, `residual`, `iterations`, `method`, plus
    /// `perron` when `verbose`.
    pub fn to_json(&self, verbose: bool) -> String {
        serde_json::to_string(&SpectralJson {
            rho: self.rho,
            residual: self.residual,
            iterations: self.iterations,
            method: self.method,
            perron: verbose.then_some(self.perron.as_slice()),
        })
        .expect("spectral result serializes")
    }
}

/// `(A x^{k-1})_i = sum over edges e containing i of the product of x_j, j in e \ {i}`.
pub fn apply_adjacency(g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    check_len(g, x)?;
    Ok(apply_unchecked(g, x))
}

fn apply_unchecked(g: &Hypergraph, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; g.n()];
    for e in g.edges() {
        for &i in e {
            let mut p = 1.0;
            for &j in e {
                if j != i {
                    p *= x[j];
                }
            }
            y[i] += p;
        }
    }
    y
}

/// `A x^k = k * sum over edges of the product of x_v, v in e`.
pub fn rayleigh(g: &Hypergraph, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    let sum: f64 = g.edges().iter().map(|e| e.iter().map(|&v| x[v]).product::<f64>()).sum();
    Ok(g.k() as f64 * sum)
}

fn check_len(g: &Hypergraph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(())
}

pub fn spectral_radius_tensor(g: &Hypergraph, opts: &IterationOptions) -> Result<SpectralResult> {
    spectral_radius_tensor_from(g, opts, &vec![1.0; g.n()])
}

/// As [`spectral_radius_tensor`] but starting from a given positive vector.
pub fn spectral_radius_tensor_from(g: &Hypergraph, opts: &IterationOptions, start: &[f64]) -> Result<SpectralResult> {
    check_len(g, start)?;
    if start.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::OutOfDomain("start vector must be finite and positive".into()));
    }
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    iterate(g, opts, start, Method::TensorPower)
}

pub fn spectral_radius_graph(g: &SimpleGraph, opts: &IterationOptions) -> Result<SpectralResult> {
    let h = g.to_hypergraph()?;
    if h.n() != g.n() || !is_connected(&h) {
        return Err(Error::NotConnected);
    }
    iterate(&h, opts, &vec![1.0; h.n()], Method::MatrixPower)
}

/// `rho(G)^{2/k}`, the spectral radius of the k-th power of `g`.
pub fn spectral_radius_power_formula(g: &SimpleGraph, k: usize, opts: &IterationOptions) -> Result<f64> {
    if k < 3 {
        return Err(Error::InvalidUniformity { k, min: 3 });
    }
    let rho = spectral_radius_graph(g, opts)?.rho;
    Ok(rho.powf(2.0 / k as f64))
}

fn iterate(g: &Hypergraph, opts: &IterationOptions, start: &[f64], method: Method) -> Result<SpectralResult> {
    opts.validate()?;
    let order = (g.k() - 1) as i32;
    let root = |y: f64| match order {
        1 => y,
        2 => y.sqrt(),
        _ => y.powf(1.0 / order as f64),
    };
    let mut x = start.to_vec();
    normalize_max(&mut x);
    let mut width = f64::INFINITY;
    for it in 1..=opts.max_iterations {
        let ax = apply_unchecked(g, &x);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut y = Vec::with_capacity(x.len());
        for (i, &a) in ax.iter().enumerate() {
            let p = x[i].powi(order);
            let yi = a + opts.shift * p;
            let ratio = yi / p;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            y.push(yi);
        }
        width = hi - lo;
        if width < opts.tolerance {
            let rho = 0.5 * (lo + hi) - opts.shift;
            let residual = ax
                .iter()
                .zip(&x)
                .map(|(&a, &xi)| (a - rho * xi.powi(order)).abs())
                .fold(0.0, f64::max);
            return Ok(SpectralResult {
                rho,
                perron: x,
                residual,
                iterations: it,
                method,
            });
        }
        x = y.into_iter().map(root).collect();
        normalize_max(&mut x);
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iterations,
        width,
    })
}

fn normalize_max(x: &mut [f64]) {
    let max = x.iter().copied().fold(0.0, f64::max);
    for v in x.iter_mut() {
        *v /= max;
    }
}
