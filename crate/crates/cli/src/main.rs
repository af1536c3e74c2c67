//! Batch front end: reads a category presentation file, runs one verification
//! task, and emits a structured report. Exit status: 0 all pass, 1 any fail,
//! 2 inconclusive without fail, 3 input error.

use clap::Parser;
use nangulate::jobs::{exit_code, render_report, run_job, write_report, JobConfig, Task};
use nangulate::report::Budget;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nangulate",
    about = "Axiom checking, mutation-pair validation and quotient construction \
             for finitely presented n-angulated categories"
)]
struct Args {
    /// Category presentation file.
    #[arg(long)]
    input: PathBuf,

    /// One of: validate-category, check-axioms, validate-mutation-pair,
    /// build-quotient, verify-theorem, verify-frobenius.
    #[arg(long)]
    task: Task,

    /// Sequence length; overrides the file header when set.
    #[arg(long)]
    n: Option<usize>,

    /// Object multiplicity cap for enumerations.
    #[arg(long, default_value_t = 2)]
    cap_objects: usize,

    /// Solution-space enumeration cap.
    #[arg(long, default_value_t = 256)]
    cap_solutions: usize,

    /// Instance sample cap.
    #[arg(long, default_value_t = 64)]
    cap_instances: usize,

    /// Seed for deterministic sampling; recorded in the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report output path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Generators of the base subcategory Z (comma separated); default all.
    #[arg(long, value_delimiter = ',')]
    z: Option<Vec<String>>,

    /// Generators of the ideal subcategory D (comma separated); default none.
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<String>>,

    /// Mark the caps as exhaustive: fruitless searches become definite
    /// failures instead of inconclusive verdicts.
    #[arg(long, default_value_t = false)]
    exhaustive: bool,

    /// Mutation witness JSON to replay instead of searching (verify-theorem).
    #[arg(long)]
    witness: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut budget = Budget::new(args.cap_objects, args.cap_solutions, args.cap_instances);
    if args.exhaustive {
        budget = budget.exhaustive();
    }
    let config = JobConfig {
        input: args.input,
        task: args.task,
        n: args.n,
        budget,
        seed: args.seed,
        output: args.output.clone(),
        z: args.z,
        d: args.d,
        witness: args.witness,
    };
    match run_job(&config) {
        Ok(report) => {
            let rendered = render_report(&report);
            match &config.output {
                Some(path) => {
                    if let Err(e) = write_report(path, &rendered) {
                        eprintln!("error: {}", e);
                        return ExitCode::from(3);
                    }
                }
                None => print!("{}", rendered),
            }
            ExitCode::from(exit_code(report.overall) as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(3)
        }
    }
}
