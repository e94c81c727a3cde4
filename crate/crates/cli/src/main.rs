use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use revorder::geninv::{group_inverse, mp_inverse};
use revorder::harness::{run_suite, search_counterexample, InstanceSpec, SearchTarget, WeightMode};
use revorder::io::{matrix_from_json, matrix_to_json};
use revorder::laws::{
    check_equivalence, inclusion_statement_sampled, law_context, law_statement, statement_formula, SampleBudget,
    SampledVerdict, Verdict,
};
use revorder::{is_k_inverse, Error, KSet, LawId, Matrix, ScalarDomain, StatementId};

const EXIT_OK: u8 = 0;
const EXIT_FOUND: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "revorder", version, about = "Exact generalized inverses and weighted reverse order laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moore-Penrose inverse of a matrix.
    Mp(UnaryArgs),
    /// Group inverse of a square matrix.
    Groupinv(UnaryArgs),
    /// Whether X satisfies the Penrose equations in K for A.
    Kcheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
        /// Comma-separated equation numbers, e.g. `1,3`.
        #[arg(long)]
        k: KSet,
    },
    /// Evaluate or search a law.
    #[command(subcommand)]
    Law(LawCommand),
    /// Run a randomized equivalence suite.
    Suite {
        #[arg(long)]
        law: LawId,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        gen: GenArgs,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct UnaryArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also write the result as a matrix file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LawCommand {
    /// Check a law on a given instance.
    Check {
        #[arg(long)]
        law: LawId,
        /// Evaluate a single statement instead of the whole equivalence.
        #[arg(long)]
        stmt: Option<StatementId>,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Weight matrix; defaults to the identity.
        #[arg(long, conflicts_with = "lambda")]
        c: Option<PathBuf>,
        /// Use the scalar weight `lambda * e`.
        #[arg(long)]
        lambda: Option<String>,
        /// Samples for inclusion statements.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search generated instances for a false statement or a violated
    /// equivalence.
    Search {
        #[arg(long)]
        law: LawId,
        /// Look for an instance where this statement is false; without it,
        /// look for statements that disagree.
        #[arg(long)]
        stmt: Option<StatementId>,
        /// Number of instances to try.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 3)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gaussian_rational")]
    domain: ScalarDomain,
    /// `identity`, `commutant` or `scalar:<lambda>`.
    #[arg(long, default_value = "commutant")]
    weight: String,
    #[arg(long)]
    rank_a: Option<usize>,
    #[arg(long)]
    rank_b: Option<usize>,
    /// Draw each instance's size from 1..=size.
    #[arg(long)]
    vary_size: bool,
}

impl GenArgs {
    fn spec(&self) -> Result<InstanceSpec, Failure> {
        let weight_mode = match self.weight.as_str() {
            "identity" => WeightMode::Identity,
            "commutant" => WeightMode::CommutantSample,
            w => match w.strip_prefix("scalar:") {
                Some(l) => WeightMode::Scalar(self.domain.parse_scalar(l)?),
                None => return Err(Failure::input(format!("unknown weight mode `{w}`"))),
            },
        };
        let spec = InstanceSpec {
            domain: self.domain,
            size: self.size,
            vary_size: self.vary_size,
            rank_a: self.rank_a,
            rank_b: self.rank_b,
            weight_mode,
            seed: self.seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoMpInverse | Error::NotGroupInvertible => EXIT_FOUND,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    matrix_from_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn unary(args: &UnaryArgs, f: fn(&Matrix) -> revorder::Result<Matrix>) -> Result<u8, Failure> {
    let a = read_matrix(&args.input)?;
    let x = f(&a)?;
    println!("{x}");
    if let Some(out) = &args.json {
        write_file(out, &matrix_to_json(&x))?;
    }
    Ok(EXIT_OK)
}

fn law_check(
    law: LawId,
    stmt: Option<StatementId>,
    abc: (Matrix, Matrix, Matrix),
    samples: usize,
    seed: u64,
    json: Option<&Path>,
) -> Result<u8, Failure> {
    let ctx = law_context(&abc.0, &abc.1, &abc.2)?;
    if samples == 0 {
        return Err(Failure::input("--samples must be at least 1"));
    }
    if let Some(stmt) = stmt {
        if !law.statements().contains(&stmt) {
            return Err(Failure::input(format!("{law} has no statement ({stmt})")));
        }
        let formula = statement_formula(law, stmt);
        if law.is_exact(stmt) {
            let value = law_statement(law, stmt, &ctx)?;
            println!("{law} ({stmt}) {formula}: {value}");
            if let Some(out) = json {
                write_file(out, &to_json(&serde_json::json!({ "law": law, "stmt": stmt, "value": value })))?;
            }
        } else {
            let verdict = inclusion_statement_sampled(law, &ctx, samples, seed)?;
            match &verdict {
                SampledVerdict::AllPassed { samples } => {
                    println!("{law} ({stmt}) {formula}: all {samples} sampled products passed")
                }
                SampledVerdict::CounterexampleFound { sample_index, .. } => {
                    println!("{law} ({stmt}) {formula}: false, refuted by sample {sample_index}")
                }
            }
            if let Some(out) = json {
                write_file(out, &to_json(&verdict))?;
            }
        }
        return Ok(EXIT_OK);
    }

    let budget = SampleBudget {
        confirm: samples,
        falsify: samples.max(SampleBudget::default().falsify),
    };
    let report = check_equivalence(law, &ctx, budget, seed)?;
    for &s in law.statements() {
        let value = match report.statement_values.get(&s) {
            Some(v) => v.to_string(),
            None if !report.hypotheses_met => "not evaluated".into(),
            None => "undecided".into(),
        };
        println!("{law} ({s}) {}: {value}", statement_formula(law, s));
    }
    if report.trivial_zero_product {
        println!("note: the inverted product is zero");
    }
    let code = match &report.verdict {
        Verdict::Equivalent => {
            println!("verdict: equivalent");
            EXIT_OK
        }
        Verdict::Violation(d) => {
            println!("verdict: violation: {d}");
            EXIT_FOUND
        }
        Verdict::Inconclusive => {
            println!("verdict: inconclusive (no sampled witness for a false statement)");
            EXIT_INCONCLUSIVE
        }
        Verdict::HypothesisNotMet(h) => {
            println!("verdict: hypothesis not met: {h}");
            EXIT_INPUT
        }
    };
    if let Some(out) = json {
        write_file(out, &to_json(&report))?;
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Mp(args) => unary(&args, mp_inverse),
        Command::Groupinv(args) => unary(&args, group_inverse),
        Command::Kcheck { a, x, k } => {
            let (a, x) = (read_matrix(&a)?, read_matrix(&x)?);
            let holds = is_k_inverse(&a, &x, k)?;
            println!("X in A{k}: {holds}");
            Ok(if holds { EXIT_OK } else { EXIT_FOUND })
        }
        Command::Law(LawCommand::Check {
            law,
            stmt,
            a,
            b,
            c,
            lambda,
            samples,
            seed,
            json,
        }) => {
            let (a, b) = (read_matrix(&a)?, read_matrix(&b)?);
            let c = match (c, lambda) {
                (Some(path), _) => read_matrix(&path)?,
                (None, Some(l)) => Matrix::scalar_matrix(&a.domain().parse_scalar(&l)?, a.rows()),
                (None, None) => Matrix::identity(a.domain(), a.rows()),
            };
            law_check(law, stmt, (a, b, c), samples, seed, json.as_deref())
        }
        Command::Law(LawCommand::Search {
            law,
            stmt,
            trials,
            gen,
            json,
        }) => {
            let spec = gen.spec()?;
            let target = match stmt {
                Some(s) => SearchTarget::StatementFalse(law, s),
                None => SearchTarget::EquivalenceViolation(law),
            };
            match search_counterexample(target, &spec, trials)? {
                Some(hit) => {
                    let text = to_json(&hit);
                    println!("found at trial {} (seed {}):\n{text}", hit.trial, hit.seed);
                    if let Some(out) = json {
                        write_file(&out, &text)?;
                    }
                    Ok(EXIT_FOUND)
                }
                None => {
                    println!("no witness in {trials} instances");
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Suite { law, trials, gen, json } => {
            let spec = gen.spec()?;
            let result = run_suite(law, &spec, trials)?;
            println!(
                "{law}: {} trials, {} equivalent, {} violations, {} inconclusive, {} skipped ({:.2}s)",
                result.trials,
                result.equivalent,
                result.violations.len(),
                result.inconclusive,
                result.hypothesis_skips,
                result.elapsed.as_secs_f64()
            );
            for v in &result.violations {
                println!("violation at trial {} (seed {})", v.trial, v.seed);
            }
            if let Some(out) = json {
                write_file(&out, &result.to_json())?;
            }
            Ok(if !result.violations.is_empty() {
                EXIT_FOUND
            } else if result.inconclusive > 0 {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
