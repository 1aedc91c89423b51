use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nnrep::constructions::{bundled, cnf_to_nn};
use nnrep::oracle::{component_bound_check, equiv_check, min_hnn_search, SearchConfig};
use nnrep::repr::{well_defined, Model, NNRep};
use nnrep::transforms::{
    convert_to, hnn_to_depth2, hnn_to_depth3, hnn_to_depth3_slice, run_pass, Depth3Variant, Metrics, PassReport, PASSES,
};
use nnrep::{components, BoolFn, CnfDnf, Error, Evaluator, FamilySpec, FormulaKind};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "nnrep", version, about = "Exact nearest-neighbor and threshold representations of Boolean functions")]
struct Cli {
    /// Worker threads for exhaustive checks and search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a representation of a named family or a formula.
    Construct {
        /// xor, omb-and2, disj, ip, maj, exact-half-cnf, random-cnf or random-dnf.
        #[arg(long)]
        family: Option<String>,
        /// CNF/DNF formula file (`{"arity", "kind", "clauses"}`), instead of a family.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// Block size for exact-half-cnf, clause count for the random formulas.
        #[arg(long)]
        k: Option<usize>,
        /// Target model tag; reached through registered passes when needed.
        #[arg(long)]
        model: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the pass reports, as a JSON array.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply one registered pass.
    Convert {
        #[arg(long)]
        pass: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Skip the exhaustive check of output against input.
        #[arg(long)]
        no_check: bool,
    },
    /// Exhaustively compare two functions or representations.
    Verify {
        /// File path, `family:<name>:<n>` or `table:n=<n>:<hex>`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Count connected components of the ones of a function.
    Components {
        #[arg(long)]
        a: String,
        /// Boolean-anchor representation to check the anchor bound against.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Find the least number of Boolean anchors representing a function.
    SearchMinHnn {
        #[arg(long)]
        a: String,
        /// Cap on candidate evaluations.
        #[arg(long)]
        budget: Option<u64>,
        /// Resumable progress file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Threshold circuit for a Boolean-anchor representation.
    EmitCircuit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Depth3)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest anchor coordinate size of a nearest-neighbor representation.
    Bitcomplexity {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Size metrics and undefined inputs of a representation.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Depth3,
    Depth3OrAnd,
    Depth3AndOr,
    Slice,
    Depth2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A negative verdict, reported with exit code 1.
struct Verdict(String);

enum Failure {
    Verdict(Verdict),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IllDefined(_) | Error::BudgetExhausted(_) | Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn write_out(path: Option<&Path>, text: &str) -> nnrep::Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports always serialize") + "\n"
}

fn read(path: &Path) -> nnrep::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_model(path: &Path) -> nnrep::Result<Model> {
    Model::from_json(&read(path)?)
}

fn read_nn(path: &Path) -> nnrep::Result<NNRep> {
    match read_model(path)? {
        Model::Nn(r) => Ok(r),
        m => Err(Error::InvalidParams(format!("expected an nn model, got {}", m.tag()))),
    }
}

/// Anything that can be compared exhaustively.
enum Source {
    Family(FamilySpec),
    Table(BoolFn),
    Model(Model),
    Formula(CnfDnf),
}

impl Source {
    fn evaluator(&self) -> &dyn Evaluator {
        match self {
            Source::Family(f) => f,
            Source::Table(f) => f,
            Source::Model(m) => m.as_evaluator(),
            Source::Formula(c) => c,
        }
    }
}

fn parse_source(arg: &str) -> nnrep::Result<Source> {
    if arg.starts_with("family:") {
        return Ok(Source::Family(arg.parse()?));
    }
    if let Some(t) = arg.strip_prefix("table:") {
        return Ok(Source::Table(BoolFn::from_hex(t)?));
    }
    let text = read(Path::new(arg))?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    if v.get("model").is_some() {
        Ok(Source::Model(Model::from_json(&text)?))
    } else {
        Ok(Source::Formula(serde_json::from_value(v)?))
    }
}

fn need(v: Option<usize>, flag: &str, family: &str) -> nnrep::Result<usize> {
    v.ok_or_else(|| Error::InvalidParams(format!("family {family} needs --{flag}")))
}

fn random_formula(kind: FormulaKind, n: usize, m: usize, seed: u64) -> nnrep::Result<CnfDnf> {
    if n == 0 {
        return Err(Error::InvalidParams("random formulas need --n >= 1".into()));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let mut vars: Vec<i64> = (1..=n as i64).collect();
            vars.shuffle(&mut rng);
            vars.truncate(rng.gen_range(1..=n.min(5)));
            vars.into_iter().map(|v| if rng.gen_bool(0.5) { v } else { -v }).collect()
        })
        .collect();
    CnfDnf::new(n, kind, clauses)
}

fn base_model(family: &str, n: Option<usize>, k: Option<usize>, seed: u64) -> nnrep::Result<Model> {
    let n = need(n, "n", family)?;
    let literal = match family {
        "random-cnf" => return Ok(cnf_to_nn(&random_formula(FormulaKind::Cnf, n, need(k, "k", family)?, seed)?)?.into()),
        "random-dnf" => return Ok(cnf_to_nn(&random_formula(FormulaKind::Dnf, n, need(k, "k", family)?, seed)?)?.into()),
        "exact-half-cnf" => format!("{family}:{n}:{}", need(k, "k", family)?),
        "xor" | "omb-and2" | "disj" | "ip" | "maj" => format!("{family}:{n}"),
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown family {other:?}; known: xor, omb-and2, disj, ip, maj, exact-half-cnf, random-cnf, random-dnf"
            )))
        }
    };
    bundled(literal.parse()?)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { family, input, n, k, model, seed, out, report } => {
            let mut m = match (&family, &input) {
                (Some(f), None) => base_model(f, n, k, seed)?,
                (None, Some(p)) => {
                    let c: CnfDnf = serde_json::from_str(&read(p)?).map_err(Error::from)?;
                    cnf_to_nn(&c)?.into()
                }
                _ => return Err(Error::InvalidParams("give exactly one of --family and --in".into()).into()),
            };
            let mut reports: Vec<PassReport> = Vec::new();
            if let Some(target) = model {
                (m, reports) = convert_to(m, &target)?;
            }
            write_out(out.as_deref(), &(m.to_json() + "\n"))?;
            if let Some(p) = report {
                write_out(Some(&p), &to_json(&reports))?;
            }
            Ok(())
        }
        Command::Convert { pass, input, out, report, no_check } => {
            if !PASSES.iter().any(|p| p.0 == pass) {
                let known: Vec<&str> = PASSES.iter().map(|p| p.0).collect();
                return Err(Error::InvalidParams(format!("unknown pass {pass:?}; known: {}", known.join(", "))).into());
            }
            let m = read_model(&input)?;
            let (output, rep) = run_pass(&pass, &m)?;
            write_out(out.as_deref(), &(output.to_json() + "\n"))?;
            match report {
                Some(p) => write_out(Some(&p), &to_json(&rep))?,
                None => eprint!("{}", to_json(&rep)),
            }
            if !no_check {
                let eq = equiv_check(m.as_evaluator(), output.as_evaluator())?;
                if !eq.is_equal() {
                    return Err(Failure::Verdict(Verdict(to_json(&eq))));
                }
            }
            if !rep.all_met() {
                return Err(Failure::Verdict(Verdict("a size bound of the pass was not met\n".into())));
            }
            Ok(())
        }
        Command::Verify { a, b } => {
            let (a, b) = (parse_source(&a)?, parse_source(&b)?);
            let eq = equiv_check(a.evaluator(), b.evaluator())?;
            print!("{}", to_json(&eq));
            if eq.is_equal() {
                Ok(())
            } else {
                Err(Failure::Verdict(Verdict("functions differ or a side is undefined\n".into())))
            }
        }
        Command::Components { a, rep } => {
            let f = BoolFn::tabulate(parse_source(&a)?.evaluator())?;
            match rep {
                None => print!("{}", to_json(&serde_json::json!({ "components": components(&f) }))),
                Some(p) => {
                    let check = component_bound_check(&f, &read_nn(&p)?)?;
                    print!("{}", to_json(&check));
                    if !check.computes {
                        return Err(Failure::Verdict(Verdict("representation does not compute the function\n".into())));
                    }
                }
            }
            Ok(())
        }
        Command::SearchMinHnn { a, budget, checkpoint, out } => {
            let f = BoolFn::tabulate(parse_source(&a)?.evaluator())?;
            let res = min_hnn_search(&f, &SearchConfig { budget, checkpoint })?;
            write_out(out.as_deref(), &to_json(&res))?;
            Ok(())
        }
        Command::EmitCircuit { input, variant, format, out } => {
            let r = read_nn(&input)?;
            let pass = match variant {
                Variant::Depth3 => hnn_to_depth3(&r, Depth3Variant::Smallest)?,
                Variant::Depth3OrAnd => hnn_to_depth3(&r, Depth3Variant::OrAnd)?,
                Variant::Depth3AndOr => hnn_to_depth3(&r, Depth3Variant::AndOr)?,
                Variant::Slice => hnn_to_depth3_slice(&r)?,
                Variant::Depth2 => hnn_to_depth2(&r)?,
            };
            let text = match format {
                Format::Json => Model::from(pass.output).to_json() + "\n",
                Format::Dot => pass.output.to_dot(),
            };
            write_out(out.as_deref(), &text)?;
            Ok(())
        }
        Command::Bitcomplexity { input } => {
            let bits = match read_model(&input)? {
                Model::Nn(r) => r.bit_complexity(),
                Model::Knn(r) => r.bit_complexity(),
                m => return Err(Error::InvalidParams(format!("expected an nn or knn model, got {}", m.tag())).into()),
            };
            print!("{}", to_json(&bits));
            Ok(())
        }
        Command::Report { input } => {
            let m = read_model(&input)?;
            let wd = well_defined(m.as_evaluator())?;
            let doc = serde_json::json!({ "model": m.tag(), "metrics": Metrics::of(&m), "well_defined": wd });
            print!("{}", to_json(&doc));
            if wd.is_well_defined() {
                Ok(())
            } else {
                Err(Failure::Verdict(Verdict("representation is ill-defined\n".into())))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(Verdict(msg))) => {
            eprint!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
