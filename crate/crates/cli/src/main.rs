//! The workbench command line.
//!
//! Exit codes: 0 all pass / true, 1 any fail / false, 2 usage or parse
//! error, 3 computation budget exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use workbench_cli::ops::{self, CmdOutput};
use workbench_cli::presfile::{self, FieldSpec, TypedBundle};
use workbench_cli::runner;
use workbench_core::{Budget, Error, MonomialOrder};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(value: OrderArg) -> Self {
        match value {
            OrderArg::Degrevlex => MonomialOrder::DegRevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "workbench",
    about = "Exact computer-algebra workbench: Groebner bases, Jacobian minor ideals, singular loci, Ext annihilator bounds",
    version
)]
struct Cli {
    /// Monomial order for rings loaded from files.
    #[arg(long, global = true, default_value = "degrevlex")]
    order: OrderArg,
    /// Cap on generated S-pairs per Groebner run.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Groebner basis of the relation ideal.
    Groebner { file: PathBuf },
    /// Krull dimension of S/I.
    Dim { file: PathBuf },
    /// Equidimensionality defect from certified minimal primes.
    Edd { file: PathBuf },
    /// Minimal primes with certification flag.
    Minprimes { file: PathBuf },
    /// The Jacobian matrix of the chosen relation generators.
    Jacobian { file: PathBuf },
    /// Ideal of r x r minors of the Jacobian matrix.
    Minors {
        #[arg(short = 'r', long = "r")]
        r: i64,
        file: PathBuf,
    },
    /// Preimage in S of the Jacobian ideal J_n.
    Jn {
        #[arg(short = 'n', long = "n")]
        n: i64,
        file: PathBuf,
    },
    /// Variety containment V(I) in V(J); ideals in the file's ring.
    Contains { file: PathBuf, outer: String, inner: String },
    /// Radical membership f in sqrt(I).
    RadicalMember { file: PathBuf, poly: String, ideal: String },
    /// Defining ideal of the singular locus.
    Sing { file: PathBuf },
    /// Condition checks at index n: Sing in V(J_n), Spec = V(J_{n+1}).
    Check {
        #[arg(short = 'n', long = "n")]
        n: i64,
        file: PathBuf,
    },
    /// Annihilator of Ext^i(M, N) for named default-family modules.
    ExtAnn {
        #[arg(short = 'i', long = "i")]
        i: usize,
        #[arg(long, default_value = "k,k")]
        pair: String,
        file: PathBuf,
    },
    /// Sampled upper bound for ca^i over the default module family.
    CaBound {
        #[arg(short = 'i', long = "i")]
        i: usize,
        file: PathBuf,
    },
    /// Radical stability of sampled bounds over i in {d+1, d+2, d+3}.
    Stability { file: PathBuf },
    /// Eliminate linearly solvable relation generators.
    Minimize { file: PathBuf },
    /// The witness and counterexample constructions.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Run every .pres file in a directory.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructKind {
    /// Tensor product of two presentations over the same field.
    Tensor { file1: PathBuf, file2: PathBuf },
    /// k[X_1..X_n]/(X_1..X_n)^2.
    SquareZero(SquareZeroArgs),
    /// One edd-reduction step (adds one variable, drops edd by one).
    ReduceEdd { file: PathBuf },
    /// Witness rings violating cond_ii / cond_iii at index n.
    Counterexample {
        file: PathBuf,
        #[arg(long)]
        prime: String,
        #[arg(short = 'n', long = "n")]
        n: i64,
    },
}

#[derive(Args, Debug)]
struct SquareZeroArgs {
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// Coefficient field: Q or "GF <p>".
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    Run {
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn load_file(path: &PathBuf, order: MonomialOrder) -> Result<TypedBundle, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    presfile::load(&text, order).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit_for_error(e: &Error) -> ExitCode {
    if runner::is_budget_error(e) {
        ExitCode::from(3)
    } else {
        ExitCode::from(1)
    }
}

fn emit(output: CmdOutput, json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(&output.json).expect("serializable"));
    } else {
        println!("{}", output.text);
    }
    if output.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit_result(result: Result<CmdOutput, Error>, json: bool) -> ExitCode {
    match result {
        Ok(out) => emit(out, json),
        Err(e) => {
            eprintln!("error: {e}");
            exit_for_error(&e)
        }
    }
}

/// Runs a per-field closure against whichever field the file declares.
macro_rules! with_bundle {
    ($bundle:expr, |$b:ident| $body:expr) => {
        match $bundle {
            TypedBundle::Q($b) => $body,
            TypedBundle::Gf($b) => $body,
        }
    };
}

fn parse_field_spec(text: &str) -> Result<FieldSpec, String> {
    let t = text.trim();
    if t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = t.strip_prefix("GF") {
        let p = p.trim().trim_start_matches('(').trim_end_matches(')').trim();
        let p: u64 = p.parse().map_err(|_| format!("invalid modulus {p}"))?;
        return Ok(FieldSpec::PrimeField(p));
    }
    Err(format!("unknown field {t}; use Q or GF <p>"))
}

fn split_ideal_arg(text: &str) -> Vec<String> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let order: MonomialOrder = cli.order.into();
    let budget = Budget::with_max_pairs(cli.budget);
    let json = cli.json;

    let usage_error = |msg: String| -> ExitCode {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    };

    match cli.command {
        Command::Groebner { file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_groebner(&b, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Dim { file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_dim(&b, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Edd { file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_edd(&b, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Minprimes { file } => match load_file(&file, order) {
            Ok(bundle) => {
                with_bundle!(bundle, |b| emit_result(ops::cmd_minprimes(&b, &budget), json))
            }
            Err(e) => usage_error(e),
        },
        Command::Jacobian { file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_jacobian(&b, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Minors { r, file } => match load_file(&file, order) {
            Ok(bundle) => {
                with_bundle!(bundle, |b| emit_result(ops::cmd_minors(&b, r, &budget), json))
            }
            Err(e) => usage_error(e),
        },
        Command::Jn { n, file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_jn(&b, n, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Contains { file, outer, inner } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| {
                match (b.parse_ideal(&split_ideal_arg(&outer)), b.parse_ideal(&split_ideal_arg(&inner))) {
                    (Ok(i), Ok(j)) => emit_result(ops::cmd_contains(&b, &i, &j, &budget), json),
                    (Err(e), _) | (_, Err(e)) => usage_error(e.to_string()),
                }
            }),
            Err(e) => usage_error(e),
        },
        Command::RadicalMember { file, poly, ideal } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| {
                match (b.parse_poly(&poly), b.parse_ideal(&split_ideal_arg(&ideal))) {
                    (Ok(f), Ok(i)) => {
                        emit_result(ops::cmd_radical_member(&b, &f, &i, &budget), json)
                    }
                    (Err(e), _) | (_, Err(e)) => usage_error(e.to_string()),
                }
            }),
            Err(e) => usage_error(e),
        },
        Command::Sing { file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_sing(&b, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Check { n, file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_check(&b, n, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::ExtAnn { i, pair, file } => match load_file(&file, order) {
            Ok(bundle) => {
                with_bundle!(bundle, |b| emit_result(ops::cmd_ext_ann(&b, i, &pair, &budget), json))
            }
            Err(e) => usage_error(e),
        },
        Command::CaBound { i, file } => match load_file(&file, order) {
            Ok(bundle) => {
                with_bundle!(bundle, |b| emit_result(ops::cmd_ca_bound(&b, i, &budget), json))
            }
            Err(e) => usage_error(e),
        },
        Command::Stability { file } => match load_file(&file, order) {
            Ok(bundle) => {
                with_bundle!(bundle, |b| emit_result(ops::cmd_stability(&b, &budget), json))
            }
            Err(e) => usage_error(e),
        },
        Command::Minimize { file } => match load_file(&file, order) {
            Ok(bundle) => with_bundle!(bundle, |b| emit_result(ops::cmd_minimize(&b, &budget), json)),
            Err(e) => usage_error(e),
        },
        Command::Construct { kind } => match kind {
            ConstructKind::Tensor { file1, file2 } => {
                match (load_file(&file1, order), load_file(&file2, order)) {
                    (Ok(TypedBundle::Q(b1)), Ok(TypedBundle::Q(b2))) => {
                        emit_result(ops::cmd_construct_tensor(&b1, &b2, &budget), json)
                    }
                    (Ok(TypedBundle::Gf(b1)), Ok(TypedBundle::Gf(b2))) => {
                        if b1.ring.field() == b2.ring.field() {
                            emit_result(ops::cmd_construct_tensor(&b1, &b2, &budget), json)
                        } else {
                            usage_error("tensor factors use different prime fields".into())
                        }
                    }
                    (Ok(_), Ok(_)) => usage_error("tensor factors use different fields".into()),
                    (Err(e), _) | (_, Err(e)) => usage_error(e),
                }
            }
            ConstructKind::SquareZero(args) => match parse_field_spec(&args.field) {
                Ok(FieldSpec::Rationals) => emit_result(
                    ops::construct_square_zero(
                        workbench_core::Rationals,
                        FieldSpec::Rationals,
                        args.n,
                        &budget,
                    ),
                    json,
                ),
                Ok(FieldSpec::PrimeField(p)) => match workbench_core::PrimeField::new(p) {
                    Ok(f) => emit_result(
                        ops::construct_square_zero(f, FieldSpec::PrimeField(p), args.n, &budget),
                        json,
                    ),
                    Err(e) => usage_error(e.to_string()),
                },
                Err(e) => usage_error(e),
            },
            ConstructKind::ReduceEdd { file } => match load_file(&file, order) {
                Ok(bundle) => with_bundle!(bundle, |b| emit_result(
                    ops::cmd_construct_reduce_edd(&b, &budget),
                    json
                )),
                Err(e) => usage_error(e),
            },
            ConstructKind::Counterexample { file, prime, n } => match load_file(&file, order) {
                Ok(bundle) => with_bundle!(bundle, |b| {
                    match b.parse_ideal(&split_ideal_arg(&prime)) {
                        Ok(p) => emit_result(
                            ops::cmd_construct_counterexample(&b, &p, n, &budget),
                            json,
                        ),
                        Err(e) => usage_error(e.to_string()),
                    }
                }),
                Err(e) => usage_error(e),
            },
        },
        Command::Corpus { action } => match action {
            CorpusAction::Run { dir, jobs } => {
                let jobs = jobs
                    .or_else(|| std::env::var("WORKBENCH_JOBS").ok().and_then(|v| v.parse().ok()))
                    .unwrap_or_else(|| {
                        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
                    });
                match runner::run_corpus(&dir, jobs, order, &budget) {
                    Ok(outcome) => {
                        if json {
                            println!(
                                "{}",
                                serde_json::to_string_pretty(&outcome.report)
                                    .expect("serializable")
                            );
                        } else {
                            for case in &outcome.report.cases {
                                for r in &case.records {
                                    let status = match r.status {
                                        workbench_cli::report::Status::Pass => "pass",
                                        workbench_cli::report::Status::Fail => "FAIL",
                                        workbench_cli::report::Status::SkippedUncertified => {
                                            "skipped-uncertified"
                                        }
                                    };
                                    println!(
                                        "[{status}] {} :: {} -> {}",
                                        r.case, r.operation, r.result
                                    );
                                }
                            }
                            let s = &outcome.report.summary;
                            println!(
                                "total {} pass {} fail {} skipped {}",
                                s.total, s.pass, s.fail, s.skipped
                            );
                        }
                        if outcome.budget_hit {
                            ExitCode::from(3)
                        } else if outcome.report.all_pass() {
                            ExitCode::SUCCESS
                        } else {
                            ExitCode::from(1)
                        }
                    }
                    Err(e) => usage_error(format!("{}: {e}", dir.display())),
                }
            }
        },
    }
}
