use std::io::{self, Write};
use std::process::ExitCode;

use alcove_compress::battery::{run_criterion, Suite, CRITERIA};
use alcove_compress::chain::{chain_type_a, chain_type_c};
use alcove_compress::formula::{compute, Formula};
use alcove_compress::io::{parse_specialization, PolynomialDocument, SpecializedDocument};
use alcove_compress::partition::Partition;
use alcove_compress::qt::{format_monomial, format_specialized};
use alcove_compress::type_a::{fibers, verify_fiber};
use alcove_compress::type_c::{fibers_c, verify_fiber_c};
use alcove_compress::weyl::CartanType;
use alcove_compress::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "alcove-compress", version, about = "Alcove-walk and filling formulas for Macdonald and Hall-Littlewood polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the λ-chain, one root per line, with factor separators.
    Chain(Shape),
    /// Compute a polynomial by the chosen formula.
    Compute {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum)]
        formula: FormulaArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Evaluate at rational parameters, e.g. `q=1/2,t=-3`.
        #[arg(long, value_name = "q=Q,t=T")]
        specialize: Option<String>,
    },
    /// Compare the compressed formula with the reference formula.
    Compare(Shape),
    /// List fillings with their fiber sizes and verify each fiber identity.
    Fibers {
        #[command(flatten)]
        shape: Shape,
        /// Also print every folding pair in each fiber.
        #[arg(long)]
        dump: bool,
    },
    /// Run the acceptance battery.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(long = "type", value_enum)]
    cartan: TypeArg,
    /// Comma-separated strictly decreasing positive parts, e.g. `4,3,1`.
    #[arg(long)]
    lambda: String,
    /// Rank; defaults to one more than the number of parts in type A and
    /// the number of parts in type C.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Ramyip,
    Compressed,
    Schwer,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

impl From<FormulaArg> for Formula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Ramyip => Formula::RamYip,
            FormulaArg::Compressed => Formula::Compressed,
            FormulaArg::Schwer => Formula::Schwer,
        }
    }
}

struct Resolved {
    cartan: CartanType,
    lambda: Partition,
    n: usize,
}

impl Shape {
    fn resolve(&self) -> Result<Resolved, Failure> {
        let lambda: Partition = self.lambda.parse()?;
        let cartan = match self.cartan {
            TypeArg::A => CartanType::A,
            TypeArg::C => CartanType::C,
        };
        let n = self.n.unwrap_or(match cartan {
            CartanType::A => lambda.len() + 1,
            CartanType::C => lambda.len(),
        });
        Ok(Resolved { cartan, lambda, n })
    }
}

enum Failure {
    Verification(String),
    Core(Error),
    Output(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Output(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotRegular(_)
        | Error::ShapeMismatch { .. }
        | Error::KindMismatch(_)
        | Error::DimensionMismatch(..)
        | Error::Parse(_)
        | Error::EvaluationPole => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Output(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Chain(shape) => {
            let s = shape.resolve()?;
            let chain = match s.cartan {
                CartanType::A => chain_type_a(&s.lambda, s.n)?,
                CartanType::C => chain_type_c(&s.lambda, s.n)?,
            };
            write!(out, "{}", chain.dump())?;
        }
        Command::Compute { shape, formula, format, specialize } => {
            let s = shape.resolve()?;
            let formula = Formula::from(formula);
            let p = compute(s.cartan, &s.lambda, s.n, formula)?;
            match specialize {
                Some(spec) => {
                    let (q, t) = parse_specialization(&spec)?;
                    let values = p.specialize(&q, &t)?;
                    match format {
                        Format::Text => writeln!(out, "{}", format_specialized(&values))?,
                        Format::Json => {
                            let doc = SpecializedDocument::new(s.cartan, &s.lambda, s.n, formula, (&q, &t), &values);
                            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                        }
                    }
                }
                None => match format {
                    Format::Text => writeln!(out, "{p}")?,
                    Format::Json => {
                        let doc = PolynomialDocument::new(s.cartan, &s.lambda, formula, &p);
                        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                    }
                },
            }
        }
        Command::Compare(shape) => {
            let s = shape.resolve()?;
            let reference = Formula::reference(s.cartan);
            let expected = compute(s.cartan, &s.lambda, s.n, reference)?;
            let compressed = compute(s.cartan, &s.lambda, s.n, Formula::Compressed)?;
            match expected.first_difference(&compressed) {
                None => writeln!(out, "EQUAL")?,
                Some((exponent, lhs, rhs)) => {
                    let mono = format_monomial(&exponent);
                    writeln!(out, "DIFFER at {mono}: {reference} {lhs} vs compressed {rhs}")?;
                    return Err(Failure::Verification(format!("formulas differ at {mono}")));
                }
            }
        }
        Command::Fibers { shape, dump } => {
            let s = shape.resolve()?;
            let (total, failed) = match s.cartan {
                CartanType::A => {
                    let chain = chain_type_a(&s.lambda, s.n)?;
                    let map = fibers(&chain)?;
                    let mut failed = 0;
                    for (sigma, fiber) in &map {
                        let report = verify_fiber(sigma, fiber)?;
                        failed += usize::from(!report.passed());
                        writeln!(out, "{report}")?;
                        if dump {
                            for pair in fiber {
                                writeln!(out, "    w={} J={:?}", pair.w(), pair.folds())?;
                            }
                        }
                    }
                    (map.len(), failed)
                }
                CartanType::C => {
                    let chain = chain_type_c(&s.lambda, s.n)?;
                    let map = fibers_c(&chain)?;
                    let mut failed = 0;
                    for (sigma, fiber) in &map {
                        let report = verify_fiber_c(sigma, fiber)?;
                        failed += usize::from(!report.passed());
                        writeln!(out, "{report}")?;
                        if dump {
                            for pair in fiber {
                                writeln!(out, "    w={} J={:?}", pair.w(), pair.folds())?;
                            }
                        }
                    }
                    (map.len(), failed)
                }
            };
            writeln!(out, "{} fillings, {} failed", total, failed)?;
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} of {total} fibers failed")));
            }
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Full => Suite::Full,
            };
            let mut failed = 0;
            for &(id, _) in &CRITERIA {
                let result = run_criterion(id, suite);
                failed += usize::from(!result.passed);
                writeln!(out, "{result}")?;
                out.flush()?;
            }
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} criteria failed")));
            }
        }
    }
    Ok(())
}
