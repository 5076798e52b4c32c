//! The `opennet` command line. Every subcommand reads documents, calls one
//! library operation and prints its result.
//!
//! Exit status is 0 on success, 1 on a domain error (its name is printed on
//! stderr) and 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use opennet::circuits::{blackbox, resistor_relation, Resistance};
use opennet::dynamics::{euler, is_steady, vector_field, Concentration};
use opennet::functor::{petri_to_cmc, reachable};
use opennet::hypergraph::check_frobenius;
use opennet::instances::{GraphInstance, LGraphInstance, Multiset, PetriInstance, PetriRatesInstance};
use opennet::io::{self, NetworkDocument};
use opennet::{Error, FinSet};

#[derive(Parser, Debug)]
#[command(name = "opennet", version, about = "Compose open graphs, circuits and Petri nets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on open networks.
    #[command(subcommand)]
    Cospan(CospanCommand),
    /// Frobenius structure on interfaces.
    #[command(subcommand)]
    Frobenius(FrobeniusCommand),
    /// Resistor circuits and their behaviour.
    #[command(subcommand)]
    Circuit(CircuitCommand),
    /// Petri nets as presentations and as token games.
    #[command(subcommand)]
    Petri(PetriCommand),
    /// Mass-action dynamics of nets with rates.
    #[command(subcommand)]
    Dynamics(DynamicsCommand),
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Pair {
    first: PathBuf,
    second: PathBuf,
    /// Print the iso-class representative instead of the chosen colimit.
    #[arg(long)]
    canonical: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum CospanCommand {
    /// Glue the output of the first network to the input of the second.
    Compose(Pair),
    /// Place two networks side by side.
    Tensor(Pair),
    /// Find a leg-preserving isomorphism between two networks.
    Iso { first: PathBuf, second: PathBuf },
    /// The identity network on n interface points.
    Id {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value = "graph")]
        instance: InstanceTag,
        #[command(flatten)]
        output: Output,
    },
    /// Render a network in DOT.
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InstanceTag {
    Graph,
    Lgraph,
    Petri,
    PetriRates,
}

impl InstanceTag {
    fn tag(self) -> &'static str {
        match self {
            InstanceTag::Graph => "graph",
            InstanceTag::Lgraph => "lgraph",
            InstanceTag::Petri => "petri",
            InstanceTag::PetriRates => "petri_rates",
        }
    }
}

#[derive(Subcommand, Debug)]
enum FrobeniusCommand {
    /// Check the special commutative Frobenius laws on an interface of size n.
    Check {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value = "graph")]
        instance: InstanceTag,
    },
}

#[derive(Subcommand, Debug)]
enum CircuitCommand {
    /// The relation a circuit imposes on boundary potentials and currents.
    Blackbox { file: PathBuf },
    /// The relation of a single resistor.
    Relation {
        #[arg(long, allow_hyphen_values = true)]
        resistor: String,
    },
}

#[derive(Subcommand, Debug)]
enum PetriCommand {
    /// The free commutative monoidal category presented by a net.
    ToCmc { file: PathBuf },
    /// Search for a firing sequence between two markings.
    Reachable {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 10)]
        max_steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DynamicsCommand {
    /// Evaluate the vector field.
    Eval {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Whether the vector field vanishes.
    Steady {
        file: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Explicit Euler integration, clamped at zero.
    Euler {
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
}

/// What a command can fail with besides a library error.
enum Failure {
    Domain(Error),
    Io(String),
    NoWitness(&'static str, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<NetworkDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(io::parse(&text)?)
}

fn emit(text: String, output: &Output) -> Outcome {
    match &output.output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn emit_document(doc: NetworkDocument, canonical: bool, output: &Output) -> Outcome {
    let doc = if canonical { io::canonicalize(&doc) } else { doc };
    emit(io::print(&doc), output)
}

fn label(names: &Option<Vec<String>>, i: usize) -> String {
    names.as_ref().map_or_else(|| i.to_string(), |n| n[i].clone())
}

fn cospan(cmd: &CospanCommand) -> Outcome {
    match cmd {
        CospanCommand::Compose(p) => {
            let doc = io::compose(&read(&p.first)?, &read(&p.second)?)?;
            emit_document(doc, p.canonical, &p.output)
        }
        CospanCommand::Tensor(p) => {
            let doc = io::tensor(&read(&p.first)?, &read(&p.second)?)?;
            emit_document(doc, p.canonical, &p.output)
        }
        CospanCommand::Iso { first, second } => {
            let (a, b) = (read(first)?, read(second)?);
            let Some((nodes, edges)) = io::find_iso(&a, &b)? else {
                return Err(Failure::NoWitness("not-isomorphic", "no leg-preserving isomorphism".into()));
            };
            let mut out = String::from("isomorphic\n");
            for (i, &j) in nodes.table().iter().enumerate() {
                out += &format!("node {} -> {}\n", label(&a.names.nodes, i), label(&b.names.nodes, j));
            }
            for (i, &j) in edges.table().iter().enumerate() {
                out += &format!("edge {} -> {}\n", label(&a.names.edges, i), label(&b.names.edges, j));
            }
            Ok(out)
        }
        CospanCommand::Id { n, instance, output } => {
            emit_document(io::identity_document(instance.tag(), *n)?, false, output)
        }
        CospanCommand::ExportDot { file, output } => emit(io::export_dot(&read(file)?), output),
    }
}

fn frobenius(cmd: &FrobeniusCommand) -> Outcome {
    let FrobeniusCommand::Check { n, instance } = cmd;
    let a = FinSet::new(*n);
    let report = match instance {
        InstanceTag::Graph => check_frobenius::<GraphInstance>(a)?,
        InstanceTag::Lgraph => check_frobenius::<LGraphInstance<String>>(a)?,
        InstanceTag::Petri => check_frobenius::<PetriInstance>(a)?,
        InstanceTag::PetriRates => check_frobenius::<PetriRatesInstance>(a)?,
    };
    if report.all_hold() {
        Ok(report.to_string())
    } else {
        Err(Failure::NoWitness("law-fails", report.to_string()))
    }
}

fn circuit(cmd: &CircuitCommand) -> Outcome {
    match cmd {
        CircuitCommand::Blackbox { file } => Ok(blackbox(&io::circuit(&read(file)?)?).to_string()),
        CircuitCommand::Relation { resistor } => {
            let r: Resistance = resistor.parse()?;
            Ok(resistor_relation(&r).to_string())
        }
    }
}

fn multiset(m: &Multiset, names: &Option<Vec<String>>) -> String {
    let terms: Vec<String> = m.support().map(|(p, k)| format!("{k}·{}", label(names, p))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn petri(cmd: &PetriCommand) -> Outcome {
    match cmd {
        PetriCommand::ToCmc { file } => {
            let doc = read(file)?;
            let pres = petri_to_cmc(io::petri(&doc)?.apex());
            let objects: Vec<String> =
                (0..pres.object_generators().size).map(|p| label(&doc.names.nodes, p)).collect();
            let mut out = format!("objects: {}\n", objects.join(", "));
            for (t, g) in pres.morphism_generators().iter().enumerate() {
                out += &format!(
                    "{}: {} -> {}\n",
                    label(&doc.names.edges, t),
                    multiset(&g.source, &doc.names.nodes),
                    multiset(&g.target, &doc.names.nodes)
                );
            }
            Ok(out)
        }
        PetriCommand::Reachable { file, from, to, max_steps } => {
            let doc = read(file)?;
            let net = io::petri(&doc)?;
            let (a, b) = (io::parse_marking(from, &doc)?, io::parse_marking(to, &doc)?);
            match reachable(net.apex(), &a, &b, *max_steps) {
                Some(w) => {
                    let steps: Vec<String> = w.iter().map(|&t| label(&doc.names.edges, t)).collect();
                    Ok(format!("reachable in {} steps: {}\n", w.len(), steps.join(", ")))
                }
                None => Err(Failure::NoWitness("unreachable", format!("no firing sequence within {max_steps} steps"))),
            }
        }
    }
}

fn concentration(doc: &NetworkDocument, at: &str) -> Result<Concentration, Failure> {
    Ok(Concentration::new(io::parse_assignment(at, doc)?)?)
}

fn dynamics(cmd: &DynamicsCommand) -> Outcome {
    match cmd {
        DynamicsCommand::Eval { file, at } => {
            let doc = read(file)?;
            let net = io::rated_petri(&doc)?;
            let v = vector_field(net.apex(), &concentration(&doc, at)?)?;
            Ok(format!("{}\n", opennet::dynamics::format_vector(&v)))
        }
        DynamicsCommand::Steady { file, at } => {
            let doc = read(file)?;
            let net = io::rated_petri(&doc)?;
            let steady = is_steady(net.apex(), &concentration(&doc, at)?)?;
            Ok(if steady { "steady\n" } else { "not steady\n" }.into())
        }
        DynamicsCommand::Euler { file, at, h, steps } => {
            let doc = read(file)?;
            let net = io::rated_petri(&doc)?;
            let h = opennet::rational::parse(h).ok_or_else(|| {
                Failure::Domain(Error::SchemaViolation {
                    path: "--h".into(),
                    message: format!("{h:?} is not a rational"),
                })
            })?;
            let x = concentration(&doc, at)?;
            let mut out = format!("0: {x}\n");
            let mut state = x;
            let mut clamped = false;
            for k in 1..=*steps {
                let step = euler(net.apex(), &state, &h, 1)?;
                clamped |= step.clamped;
                state = step.state;
                out += &format!("{k}: {state}\n");
            }
            if clamped {
                out += "clamped at zero\n";
            }
            Ok(out)
        }
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return status;
        }
    };
    let result = match &cli.command {
        Command::Cospan(c) => cospan(c),
        Command::Frobenius(c) => frobenius(c),
        Command::Circuit(c) => circuit(c),
        Command::Petri(c) => petri(c),
        Command::Dynamics(c) => dynamics(c),
    };
    match result {
        Ok(text) => {
            let _ = write!(stdout, "{text}");
            0
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", e.name());
            1
        }
        Err(Failure::Io(message)) => {
            let _ = writeln!(stderr, "error: io-error: {message}");
            1
        }
        Err(Failure::NoWitness(name, message)) => {
            let _ = writeln!(stderr, "error: {name}: {message}");
            1
        }
    }
}
