//! Command-line front end: reduction, factorization, random walks, the
//! relation census, triangulation round trips, flip translation, and diagram
//! rendering. Structured results go to stdout as JSON (except `render`,
//! which emits the requested text format); errors go to stderr as JSON.
//!
//! Exit codes: 0 success, 1 bad input, 2 a reduction or translation
//! diagnostic (stuck domain, multi-arc discrepancy).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cutslide::chord::{render, to_chord_diagram};
use cutslide::domain::PolygonDomain;
use cutslide::error::Error;
use cutslide::io::{
    CensusFile, DomainFile, FactorizationFile, FlipPathFile, MapFile, PathFile, TraceFile,
    TriangulationFile, WalkFile,
};
use cutslide::reduction::{factorize_mapping_class, reduce};
use cutslide::relations::find_loops;
use cutslide::triangulation::{fan_triangulate, flips_to_cs, greedy_extract};
use cutslide::walk::random_walk;
use cutslide::word::GenusContext;

#[derive(Parser)]
#[command(name = "cutslide", version, about = "Polygon domains and cut-slide moves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DomainInput {
    /// Domain source: a JSON file path, `-` for stdin, or `standard`.
    #[arg(long, default_value = "standard")]
    domain: String,
    /// Genus, required with `--domain standard`.
    #[arg(long)]
    genus: Option<usize>,
}

#[derive(Args)]
struct OutputArg {
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a domain to the standard symplectic domain.
    Reduce {
        #[command(flatten)]
        input: DomainInput,
        /// Emit one JSON line per step on stderr.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Factorize a boundary-preserving map into cut-slide moves.
    Factorize {
        /// Mapping class JSON file (`-` for stdin).
        #[arg(long)]
        map: String,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Apply seeded random moves to a domain.
    RandomWalk {
        #[command(flatten)]
        input: DomainInput,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Check relation families and mine short loops.
    Verify {
        /// Mine and classify relation loops.
        #[arg(long)]
        relations: bool,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 3)]
        max_loop: usize,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Fan-triangulate a domain.
    Triangulate {
        #[command(flatten)]
        input: DomainInput,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Recover the polygon domain of a triangulation greedily.
    Extract {
        /// Triangulation JSON file (`-` for stdin).
        #[arg(long)]
        triangulation: String,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Translate a flip path into a cut-slide path.
    TranslateFlips {
        /// Flip path JSON file (`-` for stdin).
        #[arg(long)]
        flips: String,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Draw the chord diagram of a domain.
    Render {
        #[command(flatten)]
        input: DomainInput,
        /// ascii, dot, or svg.
        #[arg(long)]
        format: String,
        #[command(flatten)]
        output: OutputArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, code) = classify(&err);
            let record = serde_json::json!({
                "error": { "kind": kind, "message": err.to_string() }
            });
            eprintln!("{record}");
            ExitCode::from(code)
        }
    }
}

fn classify(err: &Error) -> (&'static str, u8) {
    match err {
        Error::StuckDomain { .. } => ("stuck-domain", 2),
        Error::MultiArcDiscrepancy { .. } => ("multi-arc-discrepancy", 2),
        Error::InternalInvariantViolation(_) | Error::CompositionMismatch => ("defect", 2),
        Error::UnknownLetter { .. }
        | Error::InvalidGenus(_)
        | Error::Validation(_)
        | Error::BoundaryNotPreserved
        | Error::MalformedFile(_)
        | Error::MalformedTriangulation(_)
        | Error::Usage(_) => ("input", 1),
        _ => ("input", 1),
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Reduce {
            input,
            trace,
            output,
        } => {
            let domain = load_domain(&input)?;
            let result = reduce(&domain)?;
            if trace {
                for step in &result.steps {
                    let line = serde_json::json!({
                        "mv": step.mv.to_string(),
                        "rationale": step.rationale.to_string(),
                        "len_before": step.len_before,
                        "len_after": step.len_after,
                        "substitution": step.nielsen.describe(),
                    });
                    eprintln!("{line}");
                }
            }
            emit_json(&TraceFile::from_trace(&result), &output)
        }
        Command::Factorize { map, trace, output } => {
            let text = read_input(&map)?;
            let file: MapFile = parse_json(&text)?;
            let (mapping, ctx) = file.to_mapping_class()?;
            let factorization = factorize_mapping_class(&mapping, ctx)?;
            if trace {
                for step in &factorization.steps {
                    eprintln!("{}", serde_json::json!({ "substitution": step.describe() }));
                }
            }
            emit_json(
                &FactorizationFile::new(&mapping, &ctx, &factorization),
                &output,
            )
        }
        Command::RandomWalk {
            input,
            steps,
            seed,
            output,
        } => {
            let domain = load_domain(&input)?;
            let (end, path) = random_walk(&domain, steps, seed)?;
            emit_json(&WalkFile::new(&end, &path, seed), &output)
        }
        Command::Verify {
            relations,
            genus,
            max_loop,
            output,
        } => {
            if !relations {
                return Err(Error::Usage(
                    "nothing to verify: pass --relations".into(),
                ));
            }
            let ctx = GenusContext::new(genus)?;
            let base = PolygonDomain::standard(ctx);
            let census = find_loops(&base, max_loop)?;
            emit_json(&CensusFile::from_census(&census), &output)
        }
        Command::Triangulate { input, output } => {
            let domain = load_domain(&input)?;
            let t = fan_triangulate(&domain)?;
            emit_json(&TriangulationFile::from_triangulation(&t), &output)
        }
        Command::Extract {
            triangulation,
            output,
        } => {
            let text = read_input(&triangulation)?;
            let file: TriangulationFile = parse_json(&text)?;
            let t = file.to_triangulation()?;
            let domain = greedy_extract(&t)?;
            emit_json(&DomainFile::from_domain(&domain), &output)
        }
        Command::TranslateFlips { flips, output } => {
            let text = read_input(&flips)?;
            let file: FlipPathFile = parse_json(&text)?;
            let path = file.to_flip_path()?;
            let cs = flips_to_cs(&path)?;
            emit_json(&PathFile::from_path(&cs), &output)
        }
        Command::Render {
            input,
            format,
            output,
        } => {
            let domain = load_domain(&input)?;
            let diagram = to_chord_diagram(&domain);
            let text = render(&diagram, &format)?;
            emit_text(&text, &output)
        }
    }
}

fn load_domain(input: &DomainInput) -> Result<PolygonDomain, Error> {
    if input.domain == "standard" {
        let genus = input
            .genus
            .ok_or_else(|| Error::Usage("--genus is required with --domain standard".into()))?;
        return Ok(PolygonDomain::standard(GenusContext::new(genus)?));
    }
    let text = read_input(&input.domain)?;
    let file: DomainFile = parse_json(&text)?;
    if let Some(genus) = input.genus {
        if genus != file.genus {
            return Err(Error::Usage(format!(
                "--genus {genus} disagrees with the file genus {}",
                file.genus
            )));
        }
    }
    file.to_domain()
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::MalformedFile(format!("cannot read stdin: {e}")))?;
        Ok(buffer)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::MalformedFile(format!("cannot read {path}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::MalformedFile(format!("bad JSON: {e}")))
}

fn emit_json<T: serde::Serialize>(value: &T, output: &OutputArg) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::MalformedFile(format!("serialization failed: {e}")))?;
    emit_text(&format!("{text}\n"), output)
}

fn emit_text(text: &str, output: &OutputArg) -> Result<(), Error> {
    match &output.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::MalformedFile(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
