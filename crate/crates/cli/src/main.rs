use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grfrob::config::Limits;
use grfrob::constructions::{
    graded_division_ring, group_algebra, matrix_over, named_inner, product_algebra, quaternion_cocycle,
    trivial_extension, GradedDivisionSpec,
};
use grfrob::corpus::{corpus_generate, Budget};
use grfrob::format::{read_algebra, read_corpus, write_algebra};
use grfrob::par::ExecMode;
use grfrob::report::{analyze, classify, render_text};
use grfrob::verify::{run, Suite, VerifyOptions};
use grfrob::{Error, FiniteGroup, GradedAlgebra, PrimeField};

const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "grfrob", version, about = "Graded quasi-Frobenius and σ-graded Frobenius analysis of finite graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for an algebra file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Writes an algebra file for a standard construction to standard output.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Runs the verification suites over a corpus.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `builtin` or a path to a corpus file.
        #[arg(long, default_value = "builtin")]
        corpus: String,
    },
    /// Isoshift classification only.
    Classify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Radicals,
    Qf,
    Frobenius,
    Structure,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cocycle {
    Trivial,
    /// The quaternion twist on V4 (support must be all of V4).
    Quaternion,
}

#[derive(Args)]
struct DivisionArgs {
    #[arg(long)]
    group: String,
    /// `full`, or comma-separated labels generating the support subgroup.
    #[arg(long)]
    support: String,
    #[arg(long)]
    p: u32,
    #[arg(long, value_enum, default_value_t = Cocycle::Trivial)]
    cocycle: Cocycle,
}

#[derive(Subcommand)]
enum Construct {
    /// `M_n(k^α[H])(g_1..g_n)`.
    Matrix {
        #[command(flatten)]
        division: DivisionArgs,
        /// Comma-separated shift labels `g_1,..,g_n`.
        #[arg(long)]
        shifts: String,
    },
    /// `k[G]` graded by `G`.
    GroupAlgebra {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
    },
    /// `E(A) = A ⊕ A*` graded by C2, for a named inner algebra.
    TrivialExtension {
        /// field, dual-numbers, upper-triangular-2, upper-triangular-3,
        /// square-zero-2, matrix-2, kronecker or truncated-<m>.
        #[arg(long)]
        inner: String,
        #[arg(long)]
        p: u32,
    },
    /// Direct product of algebra files over the same field and group.
    Product {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Twisted group algebra `k^α[H]` graded by `G ⊇ H`.
    Division {
        #[command(flatten)]
        division: DivisionArgs,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) => EXIT_CAP,
        Error::Exhausted(_) => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn load(path: &Path, limits: &Limits) -> Result<Arc<GradedAlgebra>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(read_algebra(&text, limits)?))
}

fn field(p: u32, limits: &Limits) -> Result<PrimeField, Error> {
    limits.check(p, 1, 0)?;
    PrimeField::new(p)
}

fn group(name: &str, limits: &Limits) -> Result<Arc<FiniteGroup>, Error> {
    let g = FiniteGroup::named(name)?;
    limits.check(2, g.order(), 0)?;
    Ok(Arc::new(g))
}

fn parse_labels(g: &FiniteGroup, list: &str) -> Result<Vec<usize>, Error> {
    list.split(',').map(|s| g.parse_element(s.trim())).collect()
}

fn division(args: &DivisionArgs, limits: &Limits) -> Result<GradedAlgebra, Error> {
    let f = field(args.p, limits)?;
    let g = group(&args.group, limits)?;
    let spec = match args.cocycle {
        Cocycle::Quaternion => {
            if g.order() != 4 || g.is_abelian() && g.find("ab").is_none() {
                return Err(Error::Validation("the quaternion cocycle needs the group V4".into()));
            }
            if args.support != "full" {
                return Err(Error::Validation("the quaternion cocycle needs support full".into()));
            }
            GradedDivisionSpec { group: g.clone(), support: parse_labels(&g, "e,a,b,ab")?, cocycle: Some(quaternion_cocycle(f)) }
        }
        Cocycle::Trivial => {
            let support =
                if args.support == "full" { g.all() } else { g.subgroup_generated(&parse_labels(&g, &args.support)?) };
            GradedDivisionSpec::untwisted(g.clone(), support)
        }
    };
    graded_division_ring(f, &spec)
}

fn construct(kind: &Construct, limits: &Limits) -> Result<GradedAlgebra, Error> {
    let a = match kind {
        Construct::Matrix { division: d, shifts } => {
            let delta = division(d, limits)?;
            let shifts = parse_labels(delta.group(), shifts)?;
            limits.check(d.p, delta.group().order(), shifts.len() * shifts.len() * delta.dim())?;
            matrix_over(&delta, &shifts)?
        }
        Construct::GroupAlgebra { group: name, p } => group_algebra(group(name, limits)?, field(*p, limits)?)?,
        Construct::TrivialExtension { inner, p } => trivial_extension(&named_inner(inner, field(*p, limits)?)?)?,
        Construct::Product { files } => {
            let factors = files.iter().map(|f| load(f, limits)).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&GradedAlgebra> = factors.iter().map(|a| &**a).collect();
            product_algebra(&refs)?
        }
        Construct::Division { division: d } => division(d, limits)?,
    };
    limits.check(a.field().p(), a.group().order(), a.dim())?;
    a.validate()?;
    Ok(a)
}

fn verify(suite: SuiteArg, seed: u64, corpus: &str, limits: &Limits) -> Result<bool, Error> {
    let entries = if corpus == "builtin" {
        corpus_generate(seed, Budget::default())
    } else {
        let text = std::fs::read_to_string(corpus).map_err(|e| Error::Io(format!("{corpus}: {e}")))?;
        read_corpus(&text, limits)?
    };
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Radicals => vec![Suite::Radicals],
        SuiteArg::Qf => vec![Suite::Qf],
        SuiteArg::Frobenius => vec![Suite::Frobenius],
        SuiteArg::Structure => vec![Suite::Structure],
    };
    let opts = VerifyOptions { seed, limits: *limits, mode: ExecMode::Parallel, ..VerifyOptions::default() };
    let summary = run(&entries, &suites, &opts);
    emit(&json(&summary));
    for s in &summary.suites {
        eprintln!(
            "{}: {} instances, {} checks, {} failures",
            s.suite.name(),
            s.instances,
            s.checks,
            s.failures.len()
        );
    }
    Ok(summary.passed)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::default();
    let result: Result<u8, Error> = (|| match &cli.command {
        Command::Analyze { file, format } => {
            let a = load(file, &limits)?;
            let report = analyze(&a, &limits, 0, ExecMode::Parallel)?;
            match format {
                Format::Json => emit(&json(&report)),
                Format::Text => emit(&render_text(&report)),
            }
            Ok(0)
        }
        Command::Construct { kind } => {
            emit(&write_algebra(&construct(kind, &limits)?));
            Ok(0)
        }
        Command::Verify { suite, seed, corpus } => Ok(if verify(*suite, *seed, corpus, &limits)? { 0 } else { EXIT_VERIFY }),
        Command::Classify { file } => {
            let a = load(file, &limits)?;
            emit(&json(&classify(&a, 0)?));
            Ok(0)
        }
    })();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
