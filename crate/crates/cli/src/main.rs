use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ctab::lab::{self, ModelUnderTest, Run};
use ctab::logic::{evaluate, parse};
use ctab::text::{parse_mapping, parse_structure, render_decomposition, render_pretty, render_tsv};
use ctab::{Base, Error, TableAlgebra};

const USAGE: u8 = 1;
const INPUT: u8 = 2;
const LAW_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "ctab", version, about = "Conjunctive table algebra over finite bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a primitive positive query over a structure file.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Check the axioms and derived laws on random cases.
    CheckAxioms {
        #[arg(long, value_enum, default_value_t = Model::Standard)]
        model: Model,
        /// Base elements, one letter each (default `abc`, or `g` for bogus).
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, env = "CTAB_SEED", default_value_t = 1)]
        seed: u64,
        /// Draw variables from x1..xN.
        #[arg(long, default_value_t = lab::POOL_SIZE)]
        pool: u32,
        /// Only run this law (repeatable).
        #[arg(long = "law")]
        laws: Vec<String>,
        /// Print one tab-separated line per law instead of the table.
        #[arg(long)]
        machine: bool,
    },
    /// Factor a map into folding, bijection and inclusion.
    Decompose {
        /// Pairs such as `x1->y1,x2->y1`.
        #[arg(long = "map")]
        map: String,
        #[arg(long)]
        dom: String,
        #[arg(long)]
        cod: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Standard,
    Bogus,
    EmptyBase,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn input_error(e: Error) -> Failure {
    Failure::new(INPUT, e.to_string())
}

fn eval(structure: &PathBuf, query: &str, format: Format) -> Result<String, Failure> {
    let src = std::fs::read_to_string(structure)
        .map_err(|e| Failure::new(INPUT, format!("cannot read {}: {e}", structure.display())))?;
    let structure = parse_structure(&src).map_err(|e| match e {
        Error::Parse { line, column, message } => Failure::new(INPUT, format!("structure file line {line}, column {column}: {message}")),
        other => input_error(other),
    })?;
    let phi = parse(query).map_err(|e| Failure::new(INPUT, format!("query {e}")))?;
    let alg = TableAlgebra::new(structure.base().clone());
    let table = evaluate(&phi, &structure, &alg).map_err(input_error)?;
    Ok(match format {
        Format::Tsv => render_tsv(&table),
        Format::Pretty => render_pretty(&table),
    })
}

fn model(kind: Model, base: Option<&str>) -> Result<ModelUnderTest, Failure> {
    let usage = |e: Error| Failure::new(USAGE, e.to_string());
    match (kind, base) {
        (Model::Standard, base) => Ok(ModelUnderTest::Standard(Base::from_letters(base.unwrap_or("abc")))),
        (Model::Bogus, base) => ModelUnderTest::bogus(Base::from_letters(base.unwrap_or("g"))).map_err(usage),
        (Model::EmptyBase, None | Some("")) => Ok(ModelUnderTest::DegenerateEmptyBase),
        (Model::EmptyBase, Some(_)) => Err(Failure::new(USAGE, "the empty-base model takes no --base")),
    }
}

fn check_axioms(model: &ModelUnderTest, laws: &[String], run: &Run, machine: bool) -> Result<String, Failure> {
    let ids: Vec<&str> = laws.iter().map(String::as_str).collect();
    let report = lab::check(model, (!ids.is_empty()).then_some(&ids[..]), run).map_err(|e| match e {
        Error::UnknownLaw(id) => {
            let known: Vec<&str> = lab::LAWS.iter().map(|l| l.id).collect();
            Failure::new(USAGE, format!("unknown law `{id}`; known laws: {}", known.join(" ")))
        }
        other => Failure::new(USAGE, other.to_string()),
    })?;
    let text = if machine {
        report.laws.iter().map(|r| r.machine_line() + "\n").collect()
    } else {
        format!("{report}\n")
    };
    if report.is_ok() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::new(LAW_FAILURE, format!("{} laws behaved unexpectedly", report.unexpected().count())))
    }
}

fn decompose(map: &str, dom: &str, cod: &str) -> Result<String, Failure> {
    let lambda = parse_mapping(map, dom, cod).map_err(|e| Failure::new(USAGE, e.to_string()))?;
    let d = lambda.decompose();
    let text = render_decomposition(&lambda, &d);
    match d.recompose() {
        Ok(back) if back == lambda => Ok(text),
        _ => {
            print!("{text}");
            Err(Failure::new(LAW_FAILURE, "recomposition does not give back the map"))
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Eval { structure, query, format } => eval(&structure, &query, format),
        Command::CheckAxioms { model: kind, base, cases, seed, pool, laws, machine } => {
            check_axioms(&model(kind, base.as_deref())?, &laws, &Run::new(cases, seed).with_pool(pool), machine)
        }
        Command::Decompose { map, dom, cod } => decompose(&map, &dom, &cod),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            eprintln!("ctab: {message}");
            ExitCode::from(code)
        }
    }
}
