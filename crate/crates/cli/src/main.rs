use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frozenqp::birs::{admissible_orientation, build_birs_qp, last_occurrences};
use frozenqp::coxeter::parse_word;
use frozenqp::io::{self, ComplexJson, ModuleJson, PresentationJson, QpJson, QuiverJson};
use frozenqp::modrep::{check_complex_exact, end_gabriel_quiver, global_dimension, hom_space, lambda_w, projective_resolution, tw_from};
use frozenqp::subalgebra::{bar_jacobian_qp, bar_quotient_presentation, degree_zero_presentation, DerivedPresentation};
use frozenqp::verify::{verify_mutated, verify_triangle};
use frozenqp::{AlgebraPresentation, CoxeterSystem, Error, FrozenQp, Graph, Quiver, VertexId, Word, DEFAULT_MAX_LEN};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "frozenqp", version, about = "Frozen quivers with potentials and Coxeter-word constructions")]
struct Cli {
    /// Longest path length explored before giving up on finiteness.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclic derivatives, hypotheses and reducedness of a frozen QP.
    #[command(subcommand)]
    Qp(QpCmd),
    /// The algebras A, Abar and the QP of Abar.
    #[command(subcommand)]
    Subalgebra(SubCmd),
    #[command(subcommand)]
    Keller(KellerCmd),
    #[command(subcommand)]
    Coxeter(CoxCmd),
    #[command(subcommand)]
    Birs(BirsCmd),
    /// Finite dimensional quotients of path algebras.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Modules over preprojective algebras.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Re-run one of the worked examples and report every check.
    VerifyExample {
        #[arg(value_parser = ["5.1", "5.2"])]
        id: String,
    },
}

#[derive(Args)]
struct QpArg {
    /// Frozen QP in JSON.
    #[arg(long)]
    qp: PathBuf,
}

#[derive(Args)]
struct WordArgs {
    /// Graph in JSON: `{"vertices": [...], "edges": [[i, j], ...]}`.
    #[arg(long)]
    graph: PathBuf,
    /// Letters separated by commas.
    #[arg(long)]
    word: String,
}

#[derive(Subcommand)]
enum QpCmd {
    Derive(QpArg),
    Check {
        #[command(flatten)]
        qp: QpArg,
        /// Vertices whose projectives are injective; defaults to the frozen ones.
        #[arg(long)]
        projective_injective: Option<String>,
    },
    Reduced(QpArg),
}

#[derive(Subcommand)]
enum SubCmd {
    A(QpArg),
    Abar(QpArg),
    Bbar(QpArg),
}

#[derive(Subcommand)]
enum KellerCmd {
    Extend {
        #[arg(long)]
        presentation: PathBuf,
    },
    Verify {
        #[command(flatten)]
        qp: QpArg,
        #[arg(long)]
        projective_injective: Option<String>,
    },
}

#[derive(Subcommand)]
enum CoxCmd {
    System {
        #[arg(long)]
        graph: PathBuf,
    },
    Reduced(WordArgs),
    Reduce(WordArgs),
    Equal {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        other: String,
    },
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum BirsCmd {
    Last {
        #[arg(long)]
        word: String,
    },
    Orient(WordArgs),
    Build {
        #[command(flatten)]
        w: WordArgs,
        /// Also write the quiver in DOT form here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PresArg {
    /// Presentation in JSON: a quiver and relations.
    #[arg(long)]
    presentation: PathBuf,
}

#[derive(Subcommand)]
enum AlgCmd {
    Basis(PresArg),
    Dim(PresArg),
    Gldim {
        #[command(flatten)]
        p: PresArg,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    Resolve {
        #[command(flatten)]
        p: PresArg,
        /// Resolve the simple module at this vertex.
        #[arg(long)]
        vertex: VertexId,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    Exact {
        /// Complex in JSON: a quiver, modules and maps.
        #[arg(long)]
        complex: PathBuf,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    Lambda(WordArgs),
    Tw(WordArgs),
    Hom {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Only maps of this degree; both modules must be graded.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    Endquiver(WordArgs),
}

/// A failed run: `Usage` exits 2, `Failed` exits 1 after printing.
enum Stop {
    Usage(String),
    Failed(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesisViolated { .. } => Stop::Failed(e.to_string()),
            _ => Stop::Usage(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn json(v: Value) -> Self {
        Output { text: serde_json::to_string_pretty(&v).expect("json values serialize") + "\n", pass: true }
    }

    fn verdict(v: Value, pass: bool) -> Self {
        Output { pass, ..Output::json(v) }
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Stop> {
    let text = fs::read_to_string(path).map_err(|e| Stop::Usage(format!("{}: {e}", path.display())))?;
    Ok(io::parse(&text)?)
}

fn read_qp(a: &QpArg) -> Result<FrozenQp, Stop> {
    Ok(io::qp_from_json(&read::<QpJson>(&a.qp)?)?)
}

fn read_pres(p: &PresArg) -> Result<AlgebraPresentation, Stop> {
    Ok(io::presentation_from_json(&read::<PresentationJson>(&p.presentation)?)?)
}

fn read_graph(path: &PathBuf) -> Result<Graph, Stop> {
    Ok(io::graph_checked(&read(path)?)?)
}

fn read_word(w: &WordArgs) -> Result<(Graph, Word), Stop> {
    Ok((read_graph(&w.graph)?, parse_word(&w.word)?))
}

fn vertex_set(s: &Option<String>, qp: &FrozenQp) -> Result<BTreeSet<VertexId>, Stop> {
    Ok(match s {
        Some(s) => parse_word(s)?.into_iter().collect(),
        None => qp.frozen.frozen_vertices.clone(),
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn derived(d: &DerivedPresentation) -> Value {
    json!({
        "presentation": io::presentation_to_json(&d.presentation),
        "relation_arrows": d.relation_arrows,
        "zero_relations": d.zero_relations,
    })
}

fn quiver_out(q: &Quiver, format: Format, frozen: Option<&frozenqp::FrozenData>) -> Output {
    match format {
        Format::Dot => Output { text: q.to_dot(frozen, None), pass: true },
        Format::Json => Output::json(to_value(&io::quiver_to_json(q))),
    }
}

fn run(cli: &Cli) -> Result<Output, Stop> {
    let max_len = cli.max_len;
    let quiver_only = matches!(
        cli.command,
        Command::Birs(BirsCmd::Orient(_) | BirsCmd::Build { .. }) | Command::Rep(RepCmd::Endquiver(_))
    );
    if cli.format == Format::Dot && !quiver_only {
        return Err(Stop::Usage("--format dot applies only to commands that produce a quiver".into()));
    }
    Ok(match &cli.command {
        Command::Qp(QpCmd::Derive(a)) => {
            let qp = read_qp(a)?;
            let rels: Vec<Value> = qp
                .jacobian_relations()
                .iter()
                .map(|r| json!({"arrow": r.arrow, "relation": io::element_to_json(&r.relation), "zero": r.zero}))
                .collect();
            Output::json(json!({ "relations": rels }))
        }
        Command::Qp(QpCmd::Check { qp, projective_injective }) => {
            let qp = read_qp(qp)?;
            let report = qp.check_hypotheses(&vertex_set(projective_injective, &qp)?)?;
            Output::verdict(to_value(&report), report.all_pass())
        }
        Command::Qp(QpCmd::Reduced(a)) => {
            let report = read_qp(a)?.is_reduced();
            Output::verdict(to_value(&report), report.reduced)
        }
        Command::Subalgebra(SubCmd::A(a)) => Output::json(derived(&degree_zero_presentation(&read_qp(a)?)?)),
        Command::Subalgebra(SubCmd::Abar(a)) => Output::json(derived(&bar_quotient_presentation(&read_qp(a)?)?)),
        Command::Subalgebra(SubCmd::Bbar(a)) => Output::json(to_value(&io::qp_to_json(&bar_jacobian_qp(&read_qp(a)?)?))),
        Command::Keller(KellerCmd::Extend { presentation }) => {
            let pres = io::presentation_from_json(&read::<PresentationJson>(presentation)?)?;
            let k = frozenqp::keller_extend(&pres)?;
            let potential: Vec<Value> =
                k.potential.terms().map(|(p, c)| json!({"coef": frozenqp::rational::format(c), "cycle": p.arrows()})).collect();
            Output::json(json!({"quiver": io::quiver_to_json(&k.quiver), "potential": potential, "added": k.added}))
        }
        Command::Keller(KellerCmd::Verify { qp, projective_injective }) => {
            let qp = read_qp(qp)?;
            let pi = vertex_set(projective_injective, &qp)?;
            let report = frozenqp::verify_endomorphism_match(&qp, Some(&pi), max_len)?;
            Output::verdict(to_value(&report), report.matched())
        }
        Command::Coxeter(CoxCmd::System { graph }) => {
            let g = read_graph(graph)?;
            let sys = CoxeterSystem::new(&g);
            let vs = sys.vertices().to_vec();
            let m: Vec<Vec<Option<u32>>> = vs.iter().map(|&i| vs.iter().map(|&j| sys.m(i, j)).collect()).collect();
            Output::json(json!({"vertices": vs, "m": m}))
        }
        Command::Coxeter(CoxCmd::Reduced(w)) => {
            let (g, word) = read_word(w)?;
            Output::json(json!(CoxeterSystem::new(&g).is_reduced(&word)?))
        }
        Command::Coxeter(CoxCmd::Reduce(w)) => {
            let (g, word) = read_word(w)?;
            Output::json(json!(CoxeterSystem::new(&g).reduce_word(&word)?))
        }
        Command::Coxeter(CoxCmd::Equal { w, other }) => {
            let (g, word) = read_word(w)?;
            Output::json(json!(CoxeterSystem::new(&g).elements_equal(&word, &parse_word(other)?)?))
        }
        Command::Coxeter(CoxCmd::Enumerate { graph, cap }) => {
            Output::json(json!(CoxeterSystem::new(&read_graph(graph)?).enumerate_group(*cap)?))
        }
        Command::Birs(BirsCmd::Last { word }) => Output::json(json!(last_occurrences(&parse_word(word)?))),
        Command::Birs(BirsCmd::Orient(w)) => {
            let (g, word) = read_word(w)?;
            quiver_out(&admissible_orientation(&g, &word)?, cli.format, None)
        }
        Command::Birs(BirsCmd::Build { w, dot }) => {
            let (g, word) = read_word(w)?;
            let b = build_birs_qp(&g, &word)?;
            let q = b.qp.graded_quiver();
            if let Some(path) = dot {
                fs::write(path, q.to_dot(Some(&b.qp.frozen), None)).map_err(|e| Stop::Usage(format!("{}: {e}", path.display())))?;
            }
            match cli.format {
                Format::Dot => quiver_out(&q, Format::Dot, Some(&b.qp.frozen)),
                Format::Json => Output::json(json!({"qp": io::birs_to_json(&b), "hypotheses": b.hypotheses})),
            }
        }
        Command::Alg(AlgCmd::Basis(p)) => {
            let pres = read_pres(p)?;
            let alg = pres.quotient_basis(max_len)?;
            let basis: Vec<Value> = alg
                .basis()
                .iter()
                .map(|b| json!({"path": b.arrows(), "src": b.source(), "tgt": b.target(), "word": b.display(&pres.quiver)}))
                .collect();
            Output::json(json!(basis))
        }
        Command::Alg(AlgCmd::Dim(p)) => Output::json(json!(read_pres(p)?.dimension(max_len)?)),
        Command::Alg(AlgCmd::Gldim { p, bound }) => {
            let alg = read_pres(p)?.quotient_basis(max_len)?;
            Output::json(to_value(&global_dimension(&alg, *bound)))
        }
        Command::Alg(AlgCmd::Resolve { p, vertex, bound }) => {
            let alg = read_pres(p)?.quotient_basis(max_len)?;
            if !alg.quiver().has_vertex(*vertex) {
                return Err(Error::UnknownVertex(*vertex).into());
            }
            Output::json(to_value(&projective_resolution(&alg, *vertex, *bound)))
        }
        Command::Alg(AlgCmd::Exact { complex }) => {
            let (modules, maps) = io::complex_from_json(&read::<ComplexJson>(complex)?)?;
            let report = check_complex_exact(&modules, &maps)?;
            Output::verdict(to_value(&report), report.exact)
        }
        Command::Rep(RepCmd::Lambda(w)) => {
            let (g, word) = read_word(w)?;
            let lw = lambda_w(&admissible_orientation(&g, &word)?, &word, max_len)?;
            Output::json(to_value(&lw.report()))
        }
        Command::Rep(RepCmd::Tw(w)) => {
            let (g, word) = read_word(w)?;
            let lw = lambda_w(&admissible_orientation(&g, &word)?, &word, max_len)?;
            let t: Vec<ModuleJson> = tw_from(&lw, &word)?.iter().map(io::module_to_json).collect();
            Output::json(json!({"quiver": io::quiver_to_json(lw.algebra.quiver()), "summands": t}))
        }
        Command::Rep(RepCmd::Hom { quiver, from, to, degree }) => {
            let q = io::quiver_from_json(&read::<QuiverJson>(quiver)?)?;
            let m = io::module_from_json(&q, &read(from)?)?;
            let n = io::module_from_json(&q, &read(to)?)?;
            if degree.is_some() && (m.grading().is_none() || n.grading().is_none()) {
                return Err(Stop::Usage("--degree needs graded modules".into()));
            }
            let basis: Vec<_> = hom_space(&m, &n, *degree).iter().map(io::map_to_json).collect();
            Output::json(json!({"dim": basis.len(), "basis": basis}))
        }
        Command::Rep(RepCmd::Endquiver(w)) => {
            let (g, word) = read_word(w)?;
            let lw = lambda_w(&admissible_orientation(&g, &word)?, &word, max_len)?;
            quiver_out(&end_gabriel_quiver(&tw_from(&lw, &word)?)?, cli.format, None)
        }
        Command::VerifyExample { id } => {
            let report = if id == "5.1" { verify_triangle(max_len)? } else { verify_mutated(max_len)? };
            Output::verdict(to_value(&report), report.pass)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &out.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Stop::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Stop::Failed(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
    }
}
