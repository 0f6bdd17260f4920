use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperspec::alpha::{
    build_b_o, build_b_p, build_b_q_supernormal, check_normal, f_o, f_p, gamma, phi, psi, rho_from_alpha,
    solve_alpha_o, solve_alpha_p, DEFAULT_NORMALITY_TOLERANCE, ROOT_TOLERANCE,
};
use hyperspec::enumeration::{
    enumeration_to_jsonl, rank_by_rho, ranking_to_csv, ranking_to_jsonl, ranking_to_markdown, EnumerationJob,
    DEFAULT_CAP,
};
use hyperspec::format::{f17, fmt17};
use hyperspec::structure::as_power_of;
use hyperspec::transforms::{move_edges, relocate, yss_move, EdgeMove};
use hyperspec::verify::{reports_to_csv, reports_to_json, reports_to_markdown, verify_suite, Status, SuiteOptions};
use hyperspec::{
    canonical_form, family, power_hypergraph, structural_profile, Error, Family, FamilySpec, Hypergraph,
    IterationOptions, SimpleGraph, StructuralProfile,
};
use serde::Serialize;

const EXIT_CLAIM_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;

/// Spectral radii of uniform hypergraphs and the ordering of linear unicyclic hypergraphs.
#[derive(Parser)]
#[command(name = "hyperspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named family or the power of a simple graph.
    Build(BuildArgs),
    /// Structural report of a hypergraph file.
    Profile {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spectral radius of a hypergraph file.
    Rho(RhoArgs),
    /// Scalar functions and weighted incidence matrices.
    Alpha {
        #[command(subcommand)]
        action: AlphaAction,
    },
    /// Edge moving, relocation and the pendent-pattern move.
    Transform {
        #[command(subcommand)]
        action: TransformAction,
    },
    /// All linear unicyclic classes with m edges, one JSON line each.
    Enumerate(EnumerateArgs),
    /// Enumerated classes sorted by decreasing spectral radius.
    Rank {
        #[command(flatten)]
        job: EnumerateArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Check the ordering claims over a range of edge counts.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Family tag: S, T1, T2, U1, O, P, Q, CyclePower, Hyperstar.
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    family: Option<String>,
    #[arg(long)]
    k: usize,
    /// Edge count (star size for Hyperstar).
    #[arg(long, required_unless_present = "graph")]
    m: Option<usize>,
    /// Girth, for S.
    #[arg(long)]
    g: Option<usize>,
    /// Simple graph edges such as `0-1,1-2,2-0`; writes its k-th power.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    format: FileFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RhoArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = RhoMethod::Tensor)]
    method: RhoMethod,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iterations: usize,
    /// Include the Perron vector.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RhoMethod {
    Tensor,
    Alpha,
    PowerFormula,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Jsonl,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum AlphaAction {
    /// Evaluate one scalar function.
    Eval {
        #[arg(value_enum)]
        function: ScalarFn,
        #[arg(long)]
        alpha: f64,
        /// Pendent-edge count for f-p and f-o.
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Root of f(alpha) = 1 and the resulting radius.
    Solve {
        #[arg(value_enum)]
        family: AlphaFamily,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Weighted incidence matrix of P, O or Q with its normality report.
    Matrix {
        #[arg(value_enum)]
        family: MatrixFamily,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Defaults to the root for P and O, and to the P root for Q.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarFn {
    FP,
    FO,
    Gamma,
    Phi,
    Psi,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaFamily {
    P,
    O,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFamily {
    P,
    O,
    Q,
}

#[derive(Subcommand)]
enum TransformAction {
    /// Move edges to a common vertex; each move is EDGE:FROM:TO.
    Move {
        input: PathBuf,
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Attach G2 at v2 and at v1 of G1; writes both as one JSON object.
    Relocate {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        u: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The pendent-pattern move for edges e and f.
    Yss {
        input: PathBuf,
        #[arg(long)]
        e: usize,
        #[arg(long)]
        f: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, env = "HYPERSPEC_JOBS")]
    jobs: Option<usize>,
    /// Permit m >= 7.
    #[arg(long)]
    allow_large: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, value_parser = parse_range)]
    m: (usize, usize),
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    format: TableFormat,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Also rank full enumerations for the second/third-place claims.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    allow_large: bool,
    #[arg(long, env = "HYPERSPEC_JOBS")]
    jobs: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => num(s).map(|m| (m, m)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::NonConvergence { .. }) => EXIT_NON_CONVERGENCE,
                _ => EXIT_INVALID,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Build(args) => build(args)?,
        Command::Profile { input, output } => {
            let g = read_hypergraph(&input)?;
            emit(output.as_deref(), &(to_json(&ProfileJson::new(&g))? + "\n"))?;
        }
        Command::Rho(args) => rho(args)?,
        Command::Alpha { action } => alpha(action)?,
        Command::Transform { action } => transform(action)?,
        Command::Enumerate(args) => {
            let graphs = job(&args).run()?;
            emit(
                args.output.as_deref(),
                &enumeration_to_jsonl(&graphs, &IterationOptions::with_tolerance(args.tol))?,
            )?;
        }
        Command::Rank { job: args, format } => {
            let ranked = rank_by_rho(&job(&args).run()?, &IterationOptions::with_tolerance(args.tol))?;
            let text = match format {
                TableFormat::Csv => ranking_to_csv(&ranked),
                TableFormat::Md => ranking_to_markdown(&ranked),
                TableFormat::Jsonl => ranking_to_jsonl(&ranked)?,
                TableFormat::Json => serde_json::to_string_pretty(&ranked)? + "\n",
            };
            emit(args.output.as_deref(), &text)?;
        }
        Command::Verify(args) => return verify(args),
    }
    Ok(0)
}

fn build(args: BuildArgs) -> anyhow::Result<()> {
    let g = match (&args.family, &args.graph) {
        (Some(tag), None) => {
            let m = args.m.ok_or_else(|| anyhow!("--m is required with --family"))?;
            family(FamilySpec::new(Family::from_tag(tag, m, args.g)?, args.k))?
        }
        (None, Some(spec)) => power_hypergraph(&parse_simple_graph(spec)?, args.k)?,
        _ => bail!("give exactly one of --family and --graph"),
    };
    let text = match args.format {
        FileFormat::Json => g.to_json(),
        FileFormat::Text => g.to_text(),
    };
    emit(args.output.as_deref(), &text)
}

fn parse_simple_graph(spec: &str) -> anyhow::Result<SimpleGraph> {
    let mut pairs = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = item
            .split_once('-')
            .ok_or_else(|| anyhow!("graph edge `{item}` must look like a-b"))?;
        pairs.push((a.trim().parse::<usize>()?, b.trim().parse::<usize>()?));
    }
    let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    Ok(SimpleGraph::new(n, pairs)?)
}

#[derive(Serialize)]
struct ProfileJson {
    k: usize,
    n: usize,
    m: usize,
    canonical: String,
    #[serde(flatten)]
    profile: StructuralProfile,
}

impl ProfileJson {
    fn new(g: &Hypergraph) -> Self {
        ProfileJson {
            k: g.k(),
            n: g.n(),
            m: g.m(),
            canonical: canonical_form(g).to_string(),
            profile: structural_profile(g),
        }
    }
}

#[derive(Serialize)]
struct CertifiedRho {
    #[serde(serialize_with = "f17")]
    rho: f64,
    method: &'static str,
    family: String,
    #[serde(serialize_with = "f17")]
    alpha: f64,
}

#[derive(Serialize)]
struct FormulaRho {
    #[serde(serialize_with = "f17")]
    rho: f64,
    method: &'static str,
    graph: Vec<[usize; 2]>,
}

fn rho(args: RhoArgs) -> anyhow::Result<()> {
    let g = read_hypergraph(&args.input)?;
    let opts = IterationOptions {
        tolerance: args.tol,
        max_iterations: args.max_iterations,
        ..Default::default()
    };
    let text = match args.method {
        RhoMethod::Tensor => hyperspec::spectral::spectral_radius_tensor(&g, &opts)?.to_json(args.verbose),
        RhoMethod::Alpha => {
            let form = canonical_form(&g);
            let m = g.m();
            let candidates = [Family::P { m }, Family::O { m }];
            let f = candidates
                .into_iter()
                .find(|&f| family(FamilySpec::new(f, g.k())).is_ok_and(|h| canonical_form(&h) == form))
                .ok_or_else(|| Error::OutOfDomain("the alpha-normal method covers P_m and O_m only".into()))?;
            let alpha = match f {
                Family::P { .. } => solve_alpha_p(m - 4, ROOT_TOLERANCE)?,
                _ => solve_alpha_o(m - 4, ROOT_TOLERANCE)?,
            };
            to_json(&CertifiedRho {
                rho: rho_from_alpha(alpha, g.k())?,
                method: "alpha-normal",
                family: f.to_string(),
                alpha,
            })?
        }
        RhoMethod::PowerFormula => {
            let sg =
                as_power_of(&g).ok_or_else(|| Error::OutOfDomain("input is not the power of a simple graph".into()))?;
            to_json(&FormulaRho {
                rho: hyperspec::spectral::spectral_radius_power_formula(&sg, g.k(), &opts)?,
                method: "power-formula",
                graph: sg.edges().to_vec(),
            })?
        }
    };
    emit(None, &(text + "\n"))
}

fn alpha(action: AlphaAction) -> anyhow::Result<()> {
    match action {
        AlphaAction::Eval { function, alpha, r } => {
            let value = match function {
                ScalarFn::FP => f_p(alpha, r)?,
                ScalarFn::FO => f_o(alpha, r)?,
                ScalarFn::Gamma => gamma(alpha)?,
                ScalarFn::Phi => phi(alpha)?,
                ScalarFn::Psi => psi(alpha)?,
            };
            emit(None, &format!("{}\n", fmt17(value)))
        }
        AlphaAction::Solve { family, r, k } => {
            let alpha = match family {
                AlphaFamily::P => solve_alpha_p(r, ROOT_TOLERANCE)?,
                AlphaFamily::O => solve_alpha_o(r, ROOT_TOLERANCE)?,
            };
            emit(
                None,
                &format!("alpha {}\nrho {}\n", fmt17(alpha), fmt17(rho_from_alpha(alpha, k)?)),
            )
        }
        AlphaAction::Matrix {
            family,
            m,
            k,
            alpha,
            output,
        } => {
            let r = m
                .checked_sub(4)
                .ok_or_else(|| Error::OutOfDomain(format!("m = {m} is below the family domain")))?;
            let (w, alpha) = match family {
                MatrixFamily::P => {
                    let a = alpha.map_or_else(|| solve_alpha_p(r, ROOT_TOLERANCE), Ok)?;
                    (build_b_p(m, k, a)?, a)
                }
                MatrixFamily::O => {
                    let a = alpha.map_or_else(|| solve_alpha_o(r, ROOT_TOLERANCE), Ok)?;
                    (build_b_o(m, k, a)?, a)
                }
                MatrixFamily::Q => {
                    let a = alpha.map_or_else(|| solve_alpha_p(r, ROOT_TOLERANCE), Ok)?;
                    (build_b_q_supernormal(m, k, a)?, a)
                }
            };
            let report = check_normal(&w, alpha, DEFAULT_NORMALITY_TOLERANCE)?;
            emit(output.as_deref(), &format!("{}{}\n", w.to_text(), report.to_json()))
        }
    }
}

#[derive(Serialize)]
struct RelocateJson {
    attached_at_v2: Hypergraph,
    attached_at_v1: Hypergraph,
}

fn transform(action: TransformAction) -> anyhow::Result<()> {
    match action {
        TransformAction::Move { input, moves, output } => {
            let g = read_hypergraph(&input)?;
            let moves = moves
                .iter()
                .map(|s| parse_move(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let moved = move_edges(&g, &moves)?;
            note_nonlinear(&moved.graph);
            emit(output.as_deref(), &moved.graph.to_json())
        }
        TransformAction::Relocate {
            g1,
            g2,
            v1,
            v2,
            u,
            output,
        } => {
            let (at_v2, at_v1) = relocate(&read_hypergraph(&g1)?, v1, v2, &read_hypergraph(&g2)?, u)?;
            let json = to_json(&RelocateJson {
                attached_at_v2: at_v2,
                attached_at_v1: at_v1,
            })?;
            emit(output.as_deref(), &(json + "\n"))
        }
        TransformAction::Yss { input, e, f, output } => {
            let moved = yss_move(&read_hypergraph(&input)?, e, f)?;
            note_nonlinear(&moved);
            emit(output.as_deref(), &moved.to_json())
        }
    }
}

fn note_nonlinear(g: &Hypergraph) {
    if !hyperspec::structure::is_linear(g) {
        eprintln!("note: the result is not linear");
    }
}

fn parse_move(s: &str) -> anyhow::Result<EdgeMove> {
    let parts: Vec<&str> = s.split(':').collect();
    let [edge, from, to] = parts.as_slice() else {
        bail!("move `{s}` must look like EDGE:FROM:TO");
    };
    Ok(EdgeMove {
        edge: edge.parse()?,
        from: from.parse()?,
        to: to.parse()?,
    })
}

fn job(args: &EnumerateArgs) -> EnumerationJob {
    EnumerationJob {
        jobs: args.jobs,
        cap: args.cap,
        allow_large: args.allow_large,
        ..EnumerationJob::new(args.k, args.m)
    }
}

fn verify(args: VerifyArgs) -> anyhow::Result<u8> {
    let opts = SuiteOptions {
        iteration: IterationOptions::with_tolerance(args.tol),
        exhaustive: args.exhaustive,
        allow_large: args.allow_large,
        jobs: args.jobs,
    };
    let reports = verify_suite(args.k, args.m.0, args.m.1, &opts)?;
    let text = match args.format {
        TableFormat::Json | TableFormat::Jsonl => reports_to_json(&reports),
        TableFormat::Csv => reports_to_csv(&reports),
        TableFormat::Md => reports_to_markdown(&reports),
    };
    emit(args.output.as_deref(), &text)?;
    Ok(if reports.iter().any(|r| r.verdict == Status::Fail) {
        EXIT_CLAIM_FAILED
    } else {
        0
    })
}

fn read_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = if text.trim_start().starts_with('{') {
        Hypergraph::from_json(&text)
    } else {
        Hypergraph::from_text(&text)
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string(value)?)
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
