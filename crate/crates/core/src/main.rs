use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use bisetcalc::burnside::{burnside_table, classify, BurnsideTable, OmegaElement};
use bisetcalc::fixtures;
use bisetcalc::json::{from_str, to_value, JsonError};
use bisetcalc::laws::{run_laws, summary_table, Corpus, Law, LawConfig};
use bisetcalc::scat::{bicoproduct, bipullback, sim_factorize, CellError, OneCell, ZeroCell};
use bisetcalc::slice::{pullback_star, push_bullet, push_plus, SliceError, SliceObject};

const FIXTURES_ENV: &str = "BISETCALC_FIXTURES";

#[derive(Parser, Debug)]
#[command(
    name = "bisetcalc",
    version,
    about = "Slice functors and Burnside rings for finite sets with variable group actions"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Size bound for enumerations.
    #[arg(long, default_value_t = 3, global = true)]
    bound: usize,
    /// Seed for sampled naturality checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Fixture directory (overrides BISETCALC_FIXTURES).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Functor {
    Star,
    Plus,
    Bullet,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply f*, f₊ or f• to a slice object.
    Apply {
        #[arg(value_enum)]
        functor: Functor,
        /// Fixture cell name or path to a cell JSON file.
        #[arg(long)]
        cell: String,
        /// Path to a slice object JSON file, or `terminal`.
        #[arg(long)]
        object: String,
    },
    /// Multiplication table of Ω(pt/G) in the basis of transitive G-sets.
    BurnsideTable { group: String },
    /// The SIm-factorization of a cell.
    Sim {
        #[arg(long)]
        cell: String,
    },
    /// The bipullback of two cells with a common target.
    Bipullback {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The bicoproduct of two 0-cells (group names for points, or G-set JSON files).
    Bicoproduct {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Run law checks over the fixture corpus.
    Verify {
        /// A law id or `all`.
        law: String,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {what}: {source}")]
    Parse { what: String, source: JsonError },
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("unknown cell {0:?} (not a file, not in the fixture directory, not built in)")]
    UnknownCell(String),
    #[error("unknown law {0:?}")]
    UnknownLaw(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::BaseMismatch(_) => 4,
            CliError::UnknownGroup(_) | CliError::UnknownCell(_) | CliError::UnknownLaw(_) => 5,
            CliError::Io { .. } => 6,
            CliError::Other(_) => 7,
        }
    }
}

fn slice_err(e: SliceError) -> CliError {
    match e {
        SliceError::BaseMismatch => {
            CliError::BaseMismatch("object is not over the expected 0-cell".into())
        }
        other => CliError::Other(other.into()),
    }
}

fn cell_err(e: CellError) -> CliError {
    match e {
        CellError::CellMismatch(m) => CliError::BaseMismatch(m.into()),
        other => CliError::Other(other.into()),
    }
}

fn fixture_dir(cli: &Cli) -> Option<PathBuf> {
    if let Some(dir) = &cli.fixtures {
        return Some(dir.clone());
    }
    if let Some(dir) = std::env::var_os(FIXTURES_ENV) {
        return Some(PathBuf::from(dir));
    }
    let default = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    default.is_dir().then_some(default)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: bisetcalc::json::Json>(path: &Path) -> Result<T, CliError> {
    from_str(&read(path)?).map_err(|source| CliError::Parse {
        what: path.display().to_string(),
        source,
    })
}

fn load_cell(spec: &str, dir: Option<&Path>) -> Result<OneCell, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse(path);
    }
    if let Some(dir) = dir {
        let candidate = dir.join("cells").join(format!("{spec}.json"));
        if candidate.is_file() {
            return parse(&candidate);
        }
    }
    fixtures::cell(spec)
        .map(|c| c.cell)
        .ok_or_else(|| CliError::UnknownCell(spec.to_string()))
}

fn load_object(spec: &str, base: &ZeroCell) -> Result<SliceObject, CliError> {
    if spec == "terminal" {
        return Ok(SliceObject::terminal(base.clone()));
    }
    parse(Path::new(spec))
}

fn load_zero_cell(spec: &str) -> Result<ZeroCell, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse(path);
    }
    fixtures::group(spec)
        .map(ZeroCell::point)
        .ok_or_else(|| CliError::UnknownGroup(spec.to_string()))
}

/// Cells from `DIR/cells/*.json` in file-name order, or the built-in corpus.
fn load_corpus(dir: Option<&Path>) -> Result<Corpus, CliError> {
    let Some(cells_dir) = dir.map(|d| d.join("cells")).filter(|d| d.is_dir()) else {
        return Ok(Corpus::builtin());
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&cells_dir)
        .map_err(|source| CliError::Io {
            path: cells_dir.clone(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let cells = paths
        .iter()
        .map(|p| {
            let name = p
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("cell")
                .to_string();
            parse::<OneCell>(p).map(|c| (name, c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Corpus { cells })
}

fn describe_zero_cell(z: &ZeroCell) -> String {
    format!("{}-point {}-set", z.size(), z.group().name())
}

fn describe_object(obj: &SliceObject) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "object: {} points over a {}",
        obj.size(),
        describe_zero_cell(obj.base())
    );
    let _ = writeln!(out, "structure: {:?}", obj.structure().images());
    let _ = writeln!(out, "action: {:?}", obj.total().table());
    let _ = writeln!(out, "class: {}", classify(obj));
    out
}

fn print_json(v: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn table_text(t: &BurnsideTable) -> String {
    let mut out = format!("Omega(pt/{}), {} basis classes\n", t.group, t.basis.len());
    for (i, d) in t.basis.iter().enumerate() {
        let _ = writeln!(out, "b{i} = G/K with K = {:?}", d.subgroup);
    }
    for (i, row) in t.products.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let _ = writeln!(out, "b{i} * b{j} = {v:?}");
        }
    }
    out
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let dir = fixture_dir(cli);
    let dir = dir.as_deref();
    match &cli.command {
        Command::Apply {
            functor,
            cell,
            object,
        } => {
            let f = load_cell(cell, dir)?;
            let base = match functor {
                Functor::Star => f.target(),
                Functor::Plus | Functor::Bullet => f.source(),
            };
            let a = load_object(object, base)?;
            let result = match functor {
                Functor::Star => pullback_star(&f, &a).map(|p| p.object),
                Functor::Plus => push_plus(&f, &a).map(|p| p.object),
                Functor::Bullet => push_bullet(&f, &a).map(|p| p.object),
            }
            .map_err(slice_err)?;
            match cli.format {
                Format::Json => {
                    let class = classify(&result);
                    print_json(&json!({
                        "object": to_value(&result),
                        "class": to_value(&class),
                        "omega": to_value(&OmegaElement::from_class(&class)),
                    }))
                }
                Format::Text => print!("{}", describe_object(&result)),
            }
        }
        Command::BurnsideTable { group } => {
            let g = fixtures::group(group).ok_or_else(|| CliError::UnknownGroup(group.clone()))?;
            let table = burnside_table(&ZeroCell::point(g));
            match cli.format {
                Format::Json => {
                    print_json(&serde_json::to_value(&table).context("serializing the table")?)
                }
                Format::Text => print!("{}", table_text(&table)),
            }
        }
        Command::Sim { cell } => {
            let f = load_cell(cell, dir)?;
            let sim = sim_factorize(&f);
            match cli.format {
                Format::Json => print_json(&json!({
                    "sim": to_value(&sim.sim),
                    "u": to_value(&sim.u),
                    "a_tilde": to_value(&sim.a_tilde),
                })),
                Format::Text => {
                    println!("SIm: {}", describe_zero_cell(&sim.sim));
                    println!("classes: {:?}", sim.classes.reps);
                    println!("u: {:?}", sim.u.base_map());
                    println!("a_tilde: {:?}", sim.a_tilde.images());
                }
            }
        }
        Command::Bipullback { f, g } => {
            let f = load_cell(f, dir)?;
            let g = load_cell(g, dir)?;
            let bp = bipullback(&f, &g).map_err(cell_err)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "cell": to_value(&bp.cell),
                    "points": bp.points,
                    "left": to_value(&bp.left),
                    "right": to_value(&bp.right),
                    "kappa": to_value(&bp.kappa),
                })),
                Format::Text => {
                    println!("bipullback: {}", describe_zero_cell(&bp.cell));
                    println!("points (x, y, k): {:?}", bp.points);
                }
            }
        }
        Command::Bicoproduct { x, y } => {
            let x = load_zero_cell(x)?;
            let y = load_zero_cell(y)?;
            let bc = bicoproduct(&x, &y).map_err(cell_err)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "cell": to_value(&bc.cell),
                    "left": to_value(&bc.left),
                    "right": to_value(&bc.right),
                })),
                Format::Text => {
                    println!("bicoproduct: {}", describe_zero_cell(&bc.cell));
                    println!("left: {:?}", bc.left.base_map());
                    println!("right: {:?}", bc.right.base_map());
                }
            }
        }
        Command::Verify { law } => {
            let laws: Vec<Law> = if law == "all" {
                Law::ALL.to_vec()
            } else {
                vec![law.parse().map_err(|_| CliError::UnknownLaw(law.clone()))?]
            };
            let corpus = load_corpus(dir)?;
            let cfg = LawConfig {
                bound: cli.bound,
                seed: cli.seed,
                ..LawConfig::default()
            };
            let reports = run_laws(&laws, &corpus, &cfg);
            let failed = reports.iter().filter(|r| !r.holds).count();
            match cli.format {
                Format::Json => print_json(&json!({"reports": reports, "failed": failed})),
                Format::Text => print!("{}", summary_table(&reports)),
            }
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
