use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hibi_core::classify::classify_checked;
use hibi_core::ladder::{Cell, LadderSpec};
use hibi_core::lattice::{join_irreducibles, LatticePoset};
use hibi_core::poset::{InputKind, PosetSpec};
use hibi_core::report::{sweep_text, AnalysisReport, LadderReport};
use hibi_core::{sweep, Error, Poset};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "hibi", version, about = "Almost Gorenstein classification of Hibi rings and 2-minor ladder rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of the Hibi ring of a poset (or lattice) file.
    Analyze { input: String },
    /// Shape classification with its witness.
    Classify { input: String },
    /// Classify a corner-encoded ladder and analyse its poset.
    Ladder { input: String },
    /// Exhaustive sweep of all small posets and ladders.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_poset: usize,
        #[arg(long, default_value = "5x5", value_parser = parse_dims)]
        max_ladder: (usize, usize),
    },
    /// Lattice or ladder file to a poset file.
    Convert { input: String },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected MxN, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(m)?, parse(n)?))
}

/// Input failures; both carry the offending JSON field path.
#[derive(Debug, Serialize)]
#[serde(tag = "error")]
enum InputError {
    ParseError { path: String, message: String },
    ValidationError { path: String, message: String },
}

impl InputError {
    fn parse(path: impl Into<String>, message: impl ToString) -> Self {
        InputError::ParseError { path: path.into(), message: message.to_string() }
    }

    fn validation(path: impl Into<String>, e: &Error) -> Self {
        InputError::ValidationError { path: path.into(), message: e.to_string() }
    }
}

fn read_input(input: &str) -> Result<Value, InputError> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        std::fs::read_to_string(Path::new(input)).map_err(|e| InputError::parse("", format!("{input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| InputError::parse("", e))
}

fn deserialize<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, InputError> {
    serde_path_to_error::deserialize(v).map_err(|e| InputError::parse(e.path().to_string(), e.inner()))
}

fn poset_field(e: &Error) -> &'static str {
    match e {
        Error::DuplicateLabel(_) | Error::EmptyPoset | Error::TooLarge { .. } => "elements",
        _ => "covers",
    }
}

fn corner_path(spec: &LadderSpec, e: &Error) -> String {
    let find = |list: &[Cell], name: &str, cell: Cell| match list.iter().position(|&c| c == cell) {
        Some(i) => format!("{name}[{i}]"),
        None => name.to_string(),
    };
    match *e {
        Error::InvalidDimensions { .. } => "m".into(),
        Error::CornerOutOfRange { side, row, col } | Error::RedundantCorner { side, row, col } => {
            let (list, name) = if side == "upper" {
                (&spec.upper_corners, "upper_corners")
            } else {
                (&spec.lower_corners, "lower_corners")
            };
            find(list, name, (row, col))
        }
        Error::CrossingCorners(u, v, ..) => find(&spec.upper_corners, "upper_corners", (u, v)),
        _ => "".into(),
    }
}

/// Reads a poset file, converting lattice input to its join-irreducibles.
fn load_poset(input: &str) -> Result<Poset, InputError> {
    let spec: PosetSpec = deserialize(read_input(input)?)?;
    let p = spec.build().map_err(|e| InputError::validation(poset_field(&e), &e))?;
    if spec.kind == Some(InputKind::Lattice) {
        let lattice = LatticePoset::new(p).map_err(|e| InputError::validation("covers", &e))?;
        join_irreducibles(&lattice).map_err(|e| InputError::validation("covers", &e))
    } else {
        Ok(p)
    }
}

fn load_ladder(v: Value) -> Result<hibi_core::Ladder, InputError> {
    let spec: LadderSpec = deserialize(v)?;
    spec.build().map_err(|e| InputError::validation(corner_path(&spec, &e), &e))
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes") + "\n",
        Format::Text => text(),
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

#[derive(Serialize)]
struct ClassifyOutput {
    canonical_hash: String,
    classification: hibi_core::ClassificationKind,
    level: bool,
    shape_witness: Option<hibi_core::ShapeWitness>,
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { input } => {
            let p = load_poset(&input)?;
            let report = AnalysisReport::new(&p).map_err(|e| InputError::validation("", &e))?;
            emit(format, &report, || report.to_text());
        }
        Command::Classify { input } => {
            let p = load_poset(&input)?;
            let (class, _) = classify_checked(&p).map_err(|e| InputError::validation("", &e))?;
            let out = ClassifyOutput {
                canonical_hash: p.canonical_hash(),
                classification: class.kind,
                level: class.level,
                shape_witness: class.witness,
            };
            emit(format, &out, || {
                let mut t = format!("classification {}\nlevel          {}\n", out.classification.name(), out.level);
                if let Some(w) = &out.shape_witness {
                    t += &format!("witness        {}\n", serde_json::to_string(w).expect("witness serializes"));
                }
                t
            });
        }
        Command::Ladder { input } => {
            let l = load_ladder(read_input(&input)?)?;
            let report = LadderReport::new(&l).map_err(|e| InputError::validation("", &e))?;
            emit(format, &report, || report.to_text());
        }
        Command::Verify { max_poset, max_ladder: (m, n) } => {
            let report = sweep(max_poset, m, n).map_err(|e| InputError::validation("", &e))?;
            emit(format, &report, || sweep_text(&report));
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Convert { input } => {
            let v = read_input(&input)?;
            let p = if v.get("m").is_some() {
                load_ladder(v)?.to_poset().map_err(|e| InputError::validation("", &e))?
            } else {
                load_poset(&input)?
            };
            let spec = p.to_spec();
            emit(format, &spec, || {
                let covers: Vec<String> = spec.covers.iter().map(|(a, b)| format!("{a} < {b}")).collect();
                format!("elements: {}\ncovers:\n  {}\n", spec.elements.join(" "), covers.join("\n  "))
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            match format {
                Format::Json => eprintln!("{}", serde_json::to_string(&e).expect("error serializes")),
                Format::Text => {
                    let (kind, path, message) = match &e {
                        InputError::ParseError { path, message } => ("parse error", path, message),
                        InputError::ValidationError { path, message } => ("validation error", path, message),
                    };
                    eprintln!("{kind} at `{path}`: {message}");
                }
            }
            ExitCode::from(2)
        }
    }
}
