//! Command-line front end: generate instances, enumerate lattices, emit
//! Hasse diagrams and run the invariant suite.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orient_lattice::families::{generate, FamilySpec, Instance};
use orient_lattice::io::{
    asm_value, dfactor_value, face_heights_value, hasse_dot, hasse_value, heights_value, instance_to_json, is_region,
    orientation_value, parse_instance_value, parse_json, parse_region, phase_value, region_cells, render, tree_value,
};
use orient_lattice::matching::{asm_of_orientation, DFactorLattice, MatchingSpace};
use orient_lattice::orientation::{CSpace, HasseDiagram};
use orient_lattice::torus::TorusGraph;
use orient_lattice::trees::{OuterHamiltonian, Tree, TreeLattice, TreeSpace};
use orient_lattice::verify::{verify_instance, Status};
use orient_lattice::{Config, Error, Orientation, OrientationLattice};
use serde_json::{json, Value};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INSTANCE: u8 = 3;

#[derive(Parser)]
#[command(name = "orient-lattice", version, about = "Lattices of c-orientations, d-factors and spanning trees")]
struct Cli {
    /// Output format: json everywhere, dot for hasse; verify defaults to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Report errors as JSON on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    /// Disable parallel enumeration.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Orientations,
    Dfactors,
    Trees,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family instance.
    Gen(Source),
    /// List the elements of a lattice in canonical order.
    Enumerate(KindArgs),
    /// Hasse diagram of a lattice.
    Hasse(KindArgs),
    /// Height functions of the c-orientations.
    Heights(Selected),
    /// Alternating sign matrices of a pinned grid.
    Asm(Selected),
    /// Tilings of a region with their face heights.
    Tilings(Source),
    /// Cohomology classes of a torus instance.
    Phase(Source),
    /// Spanning trees ordered by swings.
    Trees(Source),
    /// Run every applicable invariant check.
    Verify(Source),
}

#[derive(Args)]
struct Source {
    /// Instance or region JSON; `-` reads stdin, which is also the default
    /// when no family is given.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Family tag: cycle, path, grid, rectangle, hexagon, aztec, torus, kn, square_with_chord.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
}

#[derive(Args)]
struct KindArgs {
    #[command(flatten)]
    source: Source,
    /// Lattice to build; chosen from the instance when omitted.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
}

#[derive(Args)]
struct Selected {
    #[command(flatten)]
    source: Source,
    /// Only the element with this canonical index.
    #[arg(long)]
    index: Option<usize>,
}

enum Failure {
    Usage(String),
    Instance(Error),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Instance(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

/// A loaded instance, remembering the region kind for region input.
struct Loaded {
    inst: Instance,
    region: Option<String>,
}

impl Source {
    fn spec(&self) -> Option<std::result::Result<FamilySpec, Failure>> {
        let tag = self.family.as_deref()?;
        let get = |name: &str| match name {
            "n" => self.n,
            "k" => self.k,
            "width" => self.width,
            "height" => self.height,
            "a" => self.a,
            "b" => self.b,
            "c" => self.c,
            _ => None,
        };
        Some(FamilySpec::from_tag(tag, get).map_err(|e| Failure::Usage(e.to_string())))
    }

    fn load(&self) -> std::result::Result<Loaded, Failure> {
        if let Some(spec) = self.spec() {
            if self.input.is_some() {
                return Err(Failure::Usage("give either --input or --family, not both".into()));
            }
            return Ok(Loaded { inst: generate(spec?)?, region: None });
        }
        let text = match self.input.as_deref() {
            Some(p) if p.as_os_str() != "-" => {
                std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?
            }
            _ => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
                s
            }
        };
        let value = parse_json(&text)?;
        if is_region(&value) {
            let kind = value["kind"].as_str().unwrap_or_default().to_string();
            return Ok(Loaded { inst: parse_region(&value)?, region: Some(kind) });
        }
        Ok(Loaded { inst: parse_instance_value(&value)?, region: None })
    }
}

fn default_kind(inst: &Instance) -> Kind {
    if inst.degrees.is_some() {
        Kind::Dfactors
    } else if inst.reference.is_some() || inst.fstar.is_none() {
        Kind::Orientations
    } else {
        Kind::Trees
    }
}

fn planar_only(inst: &Instance) -> std::result::Result<(), Failure> {
    match inst.torus {
        Some(_) => Err(Error::NotSphere { euler: 0 }.into()),
        None => Ok(()),
    }
}

fn orientation_lattice(inst: &Instance, cfg: &Config) -> Result<OrientationLattice, Error> {
    let g = &inst.graph;
    let reference = inst.reference.clone().unwrap_or_else(|| Orientation::canonical(g));
    let space = CSpace::new(g.clone(), reference, inst.vstar)?;
    match &inst.bias {
        Some(b) => OrientationLattice::with_bias(space, b.clone(), cfg),
        None => OrientationLattice::new(space, cfg),
    }
}

fn dfactor_lattice(inst: &Instance, cfg: &Config) -> Result<DFactorLattice, Error> {
    let degrees =
        inst.degrees.clone().ok_or_else(|| Error::WrongFamily("instance has no degree specification".into()))?;
    let fstar = inst.fstar.ok_or(Error::NoRotation)?;
    let space = MatchingSpace::new(inst.graph.clone(), degrees, fstar, inst.black.clone())?;
    DFactorLattice::new(space, cfg)
}

fn tree_diagram(inst: &Instance, cfg: &Config) -> Result<HasseDiagram<Tree>, Error> {
    match inst.fstar {
        Some(fstar) => {
            Ok(TreeLattice::new(TreeSpace::new(inst.graph.clone(), inst.vstar, fstar)?, cfg)?.hasse().clone())
        }
        None => OuterHamiltonian::from_instance(inst)?.swing_poset(cfg),
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Orientations => "orientations",
        Kind::Dfactors => "dfactors",
        Kind::Trees => "trees",
    }
}

/// Hasse diagram of the chosen lattice with elements as JSON.
fn diagram(inst: &Instance, kind: Kind, cfg: &Config) -> Result<HasseDiagram<Value>, Error> {
    let g = &inst.graph;
    Ok(match kind {
        Kind::Orientations => orientation_lattice(inst, cfg)?.hasse()?.map(|r| orientation_value(g, &r)),
        Kind::Dfactors => dfactor_lattice(inst, cfg)?.hasse()?.map(|m| dfactor_value(g, &m)),
        Kind::Trees => tree_diagram(inst, cfg)?.map(|t| tree_value(g, &t)),
    })
}

fn select<T>(items: Vec<T>, index: Option<usize>) -> std::result::Result<Vec<(usize, T)>, Failure> {
    let n = items.len();
    let all = items.into_iter().enumerate();
    match index {
        None => Ok(all.collect()),
        Some(i) if i < n => Ok(all.filter(|&(j, _)| j == i).collect()),
        Some(i) => Err(Failure::Usage(format!("--index {i} out of range (lattice has {n} elements)"))),
    }
}

fn run(cli: &Cli) -> Outcome {
    let mut cfg = Config::from_env().map_err(|e| Failure::Usage(e.to_string()))?;
    if cli.sequential {
        cfg = cfg.sequential();
    }
    let is_hasse = matches!(cli.command, Command::Hasse(_));
    if cli.format == Some(Format::Dot) && !is_hasse {
        return Err(Failure::Usage("--format dot is only available for hasse".into()));
    }
    match &cli.command {
        Command::Gen(src) => {
            let spec = src.spec().ok_or_else(|| Failure::Usage("gen needs --family".into()))??;
            if src.input.is_some() {
                return Err(Failure::Usage("gen takes no --input".into()));
            }
            Ok(instance_to_json(&generate(spec)?))
        }
        Command::Enumerate(args) => {
            let inst = args.source.load()?.inst;
            planar_only(&inst)?;
            let kind = args.kind.unwrap_or_else(|| default_kind(&inst));
            let d = diagram(&inst, kind, &cfg)?;
            Ok(render(&json!({"kind": kind_name(kind), "count": d.len(), "elements": d.elements})))
        }
        Command::Hasse(args) => {
            let inst = args.source.load()?.inst;
            planar_only(&inst)?;
            let kind = args.kind.unwrap_or_else(|| default_kind(&inst));
            let d = diagram(&inst, kind, &cfg)?;
            Ok(match cli.format {
                Some(Format::Dot) => hasse_dot(&d),
                _ => render(&hasse_value(&d, |v| v.clone())),
            })
        }
        Command::Heights(args) => {
            let inst = args.source.load()?.inst;
            planar_only(&inst)?;
            let l = orientation_lattice(&inst, &cfg)?;
            let g = &inst.graph;
            let rows = select(l.elements().to_vec(), args.index)?
                .into_iter()
                .map(|(i, r)| json!({"index": i, "orientation": orientation_value(g, &r), "heights": heights_value(g, l.height(i))}))
                .collect::<Vec<_>>();
            Ok(render(&json!(rows)))
        }
        Command::Asm(args) => {
            let inst = args.source.load()?.inst;
            let Some(FamilySpec::GridPinned { n }) = inst.spec else {
                return Err(Error::WrongFamily("asm needs a pinned grid instance (--family grid)".into()).into());
            };
            let l = orientation_lattice(&inst, &cfg)?;
            let mut rows = Vec::new();
            for (i, r) in select(l.elements().to_vec(), args.index)? {
                rows.push(json!({"index": i, "asm": asm_value(&asm_of_orientation(&inst.graph, &r, n)?)}));
            }
            Ok(render(&json!(rows)))
        }
        Command::Tilings(src) => {
            let Loaded { inst, region } = src.load()?;
            planar_only(&inst)?;
            let l = dfactor_lattice(&inst, &cfg)?;
            let g = &inst.graph;
            let space = l.space();
            let bottom = &l.factors()[l.lattice().bottom()];
            let mut tilings = Vec::new();
            for m in l.factors() {
                let h = space.relative_face_height(m, bottom)?;
                tilings.push(json!({"edges": dfactor_value(g, m), "face_heights": face_heights_value(&h)}));
            }
            let mut out = json!({"count": tilings.len(), "tilings": tilings});
            if let Some(kind) = region {
                let cells = region_cells(&kind, &inst);
                let edges: serde_json::Map<String, Value> = g
                    .edges()
                    .map(|e| {
                        let (u, v) = g.ends(e);
                        (g.edge_label(e).to_string(), json!([[cells[u].0, cells[u].1], [cells[v].0, cells[v].1]]))
                    })
                    .collect();
                out["kind"] = json!(kind);
                out["edges"] = Value::Object(edges);
            }
            Ok(render(&out))
        }
        Command::Phase(src) => {
            let inst = src.load()?.inst;
            let (w, h) = inst.torus.ok_or_else(|| Error::WrongFamily("phase needs a torus instance".into()))?;
            let pd = TorusGraph::from_graph(inst.graph.clone(), w, h)?.phase_diagram(&cfg)?;
            Ok(render(&phase_value(&pd)))
        }
        Command::Trees(src) => {
            let inst = src.load()?.inst;
            planar_only(&inst)?;
            let d = tree_diagram(&inst, &cfg)?;
            let g = &inst.graph;
            let gf = d.rank_generating_function()?;
            let trees: Vec<Value> = d.elements.iter().map(|t| tree_value(g, t)).collect();
            Ok(render(&json!({"count": trees.len(), "rank_generating_function": gf, "trees": trees})))
        }
        Command::Verify(src) => {
            let inst = src.load()?.inst;
            let report = verify_instance(&inst, &cfg)?;
            let text = match cli.format {
                Some(Format::Json) => render(&serde_json::to_value(&report).expect("reports serialize")),
                _ => text_report(&report),
            };
            match report.first_failure() {
                None => Ok(text),
                Some(c) => {
                    print!("{text}");
                    Err(Failure::Checks(format!("{}: {}", c.name, c.detail)))
                }
            }
        }
    }
}

fn text_report(report: &orient_lattice::verify::Report) -> String {
    let mut out = format!("verify {}\n", report.instance);
    for c in &report.checks {
        let tag = match c.status {
            Status::Passed => "pass",
            Status::Failed => "FAIL",
            Status::Skipped => "skip",
        };
        out.push_str(&format!("  {tag}  {}: {}\n", c.name, c.detail));
    }
    let (p, f, s) = (report.count(Status::Passed), report.count(Status::Failed), report.count(Status::Skipped));
    out.push_str(&format!("{p} passed, {f} failed, {s} skipped\n"));
    out
}

fn report_error(json_errors: bool, kind: &str, code: u8, message: &str) -> ExitCode {
    if json_errors {
        eprintln!("{}", json!({"error": {"kind": kind, "code": code, "message": message}}));
    } else {
        eprintln!("error: {message}");
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let json_errors = std::env::args().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if json_errors => return report_error(true, "usage", EXIT_USAGE, e.to_string().trim()),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_FAILED);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => report_error(cli.json_errors, "usage", EXIT_USAGE, &msg),
        Err(Failure::Instance(e)) => report_error(cli.json_errors, e.kind(), EXIT_INSTANCE, &e.to_string()),
        Err(Failure::Checks(msg)) => {
            report_error(cli.json_errors, "check_failed", EXIT_FAILED, &format!("first counterexample: {msg}"))
        }
    }
}
