//! Command-line front end. Reports go to stdout as JSON; exit status is 0 for
//! yes/valid/pass, 1 for no/invalid/fail and 2 for usage or I/O errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matchforest::classify::classify;
use matchforest::corpus::{random_cnf, random_graph, random_sggf};
use matchforest::exact::{solve_exact, ExactConfig, DEFAULT_MAX_EDGES};
use matchforest::gadgets::{build_gadget, verify_gadget, GadgetKind, PinSidecar, PinnedGadget, Status};
use matchforest::io::{parse_graph, write_graph, Certificate};
use matchforest::mbsfd::{chain_profile, solve_mbsfd_traced, ChainShape, EndKind};
use matchforest::sat::{
    assignment_to_decomposition, brute_force_sat, build_reduction_graph, decomposition_to_assignment, load_instance,
    AssignmentFile, CnfInstance,
};
use matchforest::sggf::{parse_sggf, solve_sggf, solve_sggf_oracle, write_sggf};
use matchforest::{DecompositionSpec, Execution, KBound};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "matchforest", version, about = "Matching + bounded forest decompositions")]
struct Cli {
    /// Run library code on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or verify hardness gadgets.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Reductions to decomposition problems.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Formula tools.
    #[command(subcommand)]
    Sat(SatCmd),
    /// Decide decomposition and factor instances.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Check certificates.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Complexity of LINEAR(k,l).
    Classify {
        #[arg(long)]
        k: KBound,
        #[arg(long)]
        l: KBound,
    },
    /// Inspect intermediate structures.
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Generate seeded random inputs.
    Gen(GenArgs),
}

#[derive(Args)]
struct GadgetSel {
    #[arg(long, value_parser = parse_kind)]
    kind: GadgetKind,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    ell: Option<u32>,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Write a gadget graph; pins go to `<out>.pins.json`.
    Build {
        #[command(flatten)]
        sel: GadgetSel,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a built-in gadget, or a graph with a pin sidecar.
    Verify {
        #[arg(long, value_parser = parse_kind, required_unless_present = "graph")]
        kind: Option<GadgetKind>,
        #[arg(long, required_unless_present = "graph")]
        k: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, requires = "pins")]
        graph: Option<PathBuf>,
        #[arg(long)]
        pins: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Formula to LINEAR(k,1) instance.
    Sat2blfd {
        cnf: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SatCmd {
    /// Exhaustive satisfiability check.
    Brute { cnf: PathBuf },
    /// Certificate for the reduction graph from a satisfying assignment.
    Assign2dec {
        cnf: PathBuf,
        assignment: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assignment read off a reduction-graph certificate.
    Dec2assign {
        cnf: PathBuf,
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Backtracking search; LINEAR(k,l), or STAR(k) with `--star`.
    Exact {
        graph: PathBuf,
        #[arg(long)]
        k: KBound,
        #[arg(long, default_value = "1")]
        l: KBound,
        #[arg(long)]
        star: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
        max_edges: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matching + k-bounded star forest in polynomial time.
    Mbsfd {
        graph: PathBuf,
        #[arg(long)]
        k: KBound,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Small-gap general factor.
    Sggf {
        instance: PathBuf,
        /// Use the exhaustive search instead.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Validate a certificate against a graph.
    Cert { graph: PathBuf, cert: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum EndArg {
    High,
    Leaf,
}

impl From<EndArg> for EndKind {
    fn from(e: EndArg) -> Self {
        match e {
            EndArg::High => EndKind::High,
            EndArg::Leaf => EndKind::Leaf,
        }
    }
}

#[derive(Subcommand)]
enum ProfileCmd {
    /// Boundary profile of one chain.
    Chain {
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value = "high")]
        start: EndArg,
        #[arg(long, value_enum, default_value = "high")]
        end: EndArg,
        /// A cycle instead of a path; `--start high` puts a high vertex on it.
        #[arg(long)]
        cycle: bool,
        #[arg(long, default_value = "2")]
        k: KBound,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Cnf,
    Sggf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    what: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertices (graph) or variables (cnf).
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    max_edges: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<GadgetKind, String> {
    s.parse()
}

/// Usage and I/O failures; both exit with status 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Fatal>;

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fatal> {
    fs::write(path, text).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn cnf(path: &Path) -> Result<CnfInstance, Fatal> {
    Ok(load_instance(&read(path)?)?)
}

fn graph(path: &Path) -> Result<matchforest::Graph, Fatal> {
    Ok(parse_graph(&read(path)?)?)
}

fn pins_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".pins.json");
    PathBuf::from(s)
}

fn certificate_value(d: &matchforest::Decomposition, out: Option<&Path>) -> Result<Value, Fatal> {
    let cert = Certificate::of(d);
    if let Some(p) = out {
        write(p, &serde_json::to_string_pretty(&cert)?)?;
    }
    Ok(serde_json::to_value(cert)?)
}

fn gadget_cmd(cmd: GadgetCmd, exec: Execution) -> Outcome {
    match cmd {
        GadgetCmd::Build { sel, out } => {
            let g = build_gadget(sel.kind, sel.k, sel.ell)?;
            let text = write_graph(&g.graph);
            let side = g.sidecar();
            if let Some(p) = &out {
                write(p, &text)?;
                write(&pins_path(p), &serde_json::to_string_pretty(&side)?)?;
            }
            let mut v = json!({
                "kind": g.kind, "k": g.k, "ell": g.ell,
                "vertices": g.graph.n(), "edges": g.graph.m(), "pins": side,
            });
            if out.is_none() {
                v["graph"] = json!(text);
            }
            Ok((v, true))
        }
        GadgetCmd::Verify { kind, k, ell, graph: gpath, pins, max_edges } => {
            let g: PinnedGadget = match (gpath, pins) {
                (Some(gp), Some(pp)) => {
                    let side: PinSidecar = serde_json::from_str(&read(&pp)?)?;
                    PinnedGadget::from_sidecar(graph(&gp)?, &side)?
                }
                _ => build_gadget(kind.expect("required by clap"), k.expect("required by clap"), ell)?,
            };
            let r = verify_gadget(&g, &ExactConfig { max_edges, execution: exec });
            let ok = r.status == Status::Pass;
            Ok((serde_json::to_value(r)?, ok))
        }
    }
}

fn sat_cmd(cmd: SatCmd) -> Outcome {
    match cmd {
        SatCmd::Brute { cnf: path } => {
            let inst = cnf(&path)?;
            let a = brute_force_sat(&inst)?;
            let v = json!({
                "satisfiable": a.is_some(),
                "assignment": a.as_deref().map(AssignmentFile::from_values),
            });
            Ok((v, a.is_some()))
        }
        SatCmd::Assign2dec { cnf: path, assignment, k, out } => {
            let inst = cnf(&path)?;
            let file: AssignmentFile = serde_json::from_str(&read(&assignment)?)?;
            let values = file.values(inst.num_vars()).map_err(Fatal)?;
            if let Some(c) = inst.first_unsatisfied(&values) {
                return Ok((json!({ "valid": false, "unsatisfied_clause": c }), false));
            }
            let red = build_reduction_graph(&inst, k)?;
            let d = assignment_to_decomposition(&inst, &red, &values)?;
            Ok((json!({ "valid": true, "certificate": certificate_value(&d, out.as_deref())? }), true))
        }
        SatCmd::Dec2assign { cnf: path, graph: gpath, cert, k } => {
            let inst = cnf(&path)?;
            let red = build_reduction_graph(&inst, k)?;
            let g = graph(&gpath)?;
            if g != red.graph {
                return Err(Fatal("graph is not the reduction graph of this formula".into()));
            }
            let c: Certificate = serde_json::from_str(&read(&cert)?)?;
            let d = c.attach(g)?;
            match decomposition_to_assignment(&inst, &red.pins, &d) {
                Ok(a) => Ok((json!({ "valid": true, "assignment": AssignmentFile::from_values(&a) }), true)),
                Err(e) => Ok((json!({ "valid": false, "error": e.to_string() }), false)),
            }
        }
    }
}

fn solve_cmd(cmd: SolveCmd, exec: Execution) -> Outcome {
    match cmd {
        SolveCmd::Exact { graph: gpath, k, l, star, max_edges, out } => {
            let g = graph(&gpath)?;
            let spec = if star { DecompositionSpec::Star { k } } else { DecompositionSpec::Linear { k, l } };
            let d = solve_exact(&g, spec, &ExactConfig { max_edges, execution: exec })?;
            let cert = d.as_ref().map(|d| certificate_value(d, out.as_deref())).transpose()?;
            Ok((json!({ "spec": spec.to_string(), "found": d.is_some(), "certificate": cert }), d.is_some()))
        }
        SolveCmd::Mbsfd { graph: gpath, k, out } => {
            if k == KBound::Finite(0) {
                return Err(Fatal("--k must be at least 1".into()));
            }
            let g = graph(&gpath)?;
            let (d, route) = solve_mbsfd_traced(&g, k, exec);
            let cert = d.as_ref().map(|d| certificate_value(d, out.as_deref())).transpose()?;
            Ok((json!({ "found": d.is_some(), "route": route, "certificate": cert }), d.is_some()))
        }
        SolveCmd::Sggf { instance, oracle } => {
            let inst = parse_sggf(&read(&instance)?)?;
            let s = if oracle { solve_sggf_oracle(&inst)? } else { solve_sggf(&inst)? };
            Ok((json!({ "found": s.is_some(), "edges": s }), s.is_some()))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Gadget(c) => gadget_cmd(c, exec),
        Command::Reduce(ReduceCmd::Sat2blfd { cnf: path, k, out }) => {
            let inst = cnf(&path)?;
            let red = build_reduction_graph(&inst, k)?;
            let text = write_graph(&red.graph);
            let mut v = json!({
                "k": k, "vertices": red.graph.n(), "edges": red.graph.m(), "pins": red.pins,
            });
            match &out {
                Some(p) => {
                    write(p, &text)?;
                    write(&pins_path(p), &serde_json::to_string_pretty(&red.pins)?)?;
                }
                None => v["graph"] = json!(text),
            }
            Ok((v, true))
        }
        Command::Sat(c) => sat_cmd(c),
        Command::Solve(c) => solve_cmd(c, exec),
        Command::Verify(VerifyCmd::Cert { graph: gpath, cert }) => {
            let g = graph(&gpath)?;
            let c: Certificate = serde_json::from_str(&read(&cert)?)?;
            let d = c.attach(g)?;
            let violations = d.validate();
            let ok = violations.is_empty();
            Ok((json!({ "spec": d.spec.to_string(), "valid": ok, "violations": violations }), ok))
        }
        Command::Classify { k, l } => {
            if k == KBound::Finite(0) || l == KBound::Finite(0) {
                return Err(Fatal("bounds start at 1".into()));
            }
            Ok((json!({ "k": k, "l": l, "complexity": classify(k, l) }), true))
        }
        Command::Profile(ProfileCmd::Chain { length, start, end, cycle, k }) => {
            if length == 0 || (cycle && length < 3) {
                return Err(Fatal("chains need at least one edge, cycles at least three".into()));
            }
            let shape = if cycle {
                ChainShape::cycle(length, matches!(start, EndArg::High))
            } else {
                ChainShape::path(length, start.into(), end.into())
            };
            Ok((serde_json::to_value(chain_profile(&shape, k))?, true))
        }
        Command::Gen(a) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let text = match a.what {
                GenKind::Graph => write_graph(&random_graph(&mut rng, a.n, a.max_edges, a.max_degree)),
                GenKind::Cnf => {
                    if a.n < 2 {
                        return Err(Fatal("formulas need at least two variables".into()));
                    }
                    random_cnf(&mut rng, a.n).to_dimacs()
                }
                GenKind::Sggf => write_sggf(&random_sggf(&mut rng, a.max_edges, a.max_degree, 4)),
            };
            match &a.out {
                Some(p) => {
                    write(p, &text)?;
                    Ok((json!({ "out": p }), true))
                }
                None => Ok((json!({ "content": text }), true)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((v, ok)) => {
            let text = serde_json::to_string_pretty(&v).expect("values serialize");
            if writeln!(std::io::stdout().lock(), "{text}").is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
