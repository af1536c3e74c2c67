//! Job configuration, the task runner, and report emission.
//!
//! One job reads a category file, runs the named pipeline, and writes a
//! structured report. Identical inputs, configuration, and seed produce
//! byte-identical reports; output files are written atomically.

use crate::addcat::Subcategory;
use crate::angles::{
    check_hom_exact, differential_n4_check, enum_objects, run_axiom_suite, Structure, Variance,
};
use crate::format::{parse_category_file, validate_parsed, ParsedFile};
use crate::mutation::{validate_mutation_pair, MutationPairWitness};
use crate::quotient::{build_quotient, verify_frobenius, verify_theorem};
use crate::report::{AxiomReport, Budget, CheckReport, Verdict};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    ValidateCategory,
    CheckAxioms,
    ValidateMutationPair,
    BuildQuotient,
    VerifyTheorem,
    VerifyFrobenius,
}

impl std::str::FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "validate-category" => Ok(Task::ValidateCategory),
            "check-axioms" => Ok(Task::CheckAxioms),
            "validate-mutation-pair" => Ok(Task::ValidateMutationPair),
            "build-quotient" => Ok(Task::BuildQuotient),
            "verify-theorem" => Ok(Task::VerifyTheorem),
            "verify-frobenius" => Ok(Task::VerifyFrobenius),
            other => Err(format!("unknown task {}", other)),
        }
    }
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::ValidateCategory => "validate-category",
            Task::CheckAxioms => "check-axioms",
            Task::ValidateMutationPair => "validate-mutation-pair",
            Task::BuildQuotient => "build-quotient",
            Task::VerifyTheorem => "verify-theorem",
            Task::VerifyFrobenius => "verify-frobenius",
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub input: PathBuf,
    pub task: Task,
    /// Overrides the file's n when set.
    pub n: Option<usize>,
    pub budget: Budget,
    pub seed: u64,
    pub output: Option<PathBuf>,
    /// Generator names of the base subcategory; defaults to everything.
    pub z: Option<Vec<String>>,
    /// Generator names of the ideal-defining subcategory; defaults to none.
    pub d: Option<Vec<String>>,
    /// Replays an externally supplied mutation witness (JSON).
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error("input: {0}")]
    Input(String),
    #[error("io: {0}")]
    Io(String),
}

/// The single structured document a job emits.
#[derive(Debug, Serialize, Deserialize)]
pub struct JobReport {
    pub task: String,
    pub input: String,
    pub p: u32,
    pub n: usize,
    pub seed: u64,
    pub budget: Budget,
    pub z: Vec<String>,
    pub d: Vec<String>,
    pub overall: Verdict,
    pub checks: Vec<CheckReport>,
    pub choices: Vec<String>,
}

/// Exit status: 0 all pass, 1 any fail, 2 inconclusive without fail,
/// 3 input error.
pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 2,
    }
}

fn subcategory_from_names(
    st: &Structure,
    names: &Option<Vec<String>>,
    default_full: bool,
) -> Result<Subcategory, JobError> {
    match names {
        None => Ok(if default_full {
            Subcategory::full(&st.cat)
        } else {
            Subcategory::empty()
        }),
        Some(list) => {
            let mut gens = Vec::new();
            for name in list.iter().filter(|n| !n.is_empty()) {
                let g = st
                    .cat
                    .gen_index(name)
                    .ok_or_else(|| JobError::Input(format!("unknown generator {}", name)))?;
                gens.push(g);
            }
            Ok(Subcategory::from_gens(gens))
        }
    }
}

fn load(config: &JobConfig) -> Result<(ParsedFile, Structure), JobError> {
    let text = std::fs::read_to_string(&config.input)
        .map_err(|e| JobError::Io(format!("{}: {}", config.input.display(), e)))?;
    let mut parsed = parse_category_file(&text).map_err(|e| JobError::Input(e.to_string()))?;
    if let Some(n) = config.n {
        if n < 3 {
            return Err(JobError::Input("n must be at least 3".into()));
        }
        parsed.n = n;
    }
    let st = parsed.structure();
    Ok((parsed, st))
}

fn load_witness(path: &Path) -> Result<MutationPairWitness, JobError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| JobError::Io(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| JobError::Input(format!("witness file: {}", e)))
}

/// Runs a job and returns the report. Input and configuration errors are
/// returned as `Err` and map to exit status 3.
pub fn run_job(config: &JobConfig) -> Result<JobReport, JobError> {
    config.budget.validate().map_err(JobError::Input)?;
    let (parsed, st) = load(config)?;
    let budget = config.budget;
    let seed = config.seed;
    let (st, class) = match validate_parsed(&parsed, &budget) {
        Ok(pair) => pair,
        Err(e) => {
            // validate-category reports the failure; everything else treats a
            // rejected structure as an input error
            if config.task == Task::ValidateCategory {
                let mut report = AxiomReport::new(Task::ValidateCategory.as_str(), budget, seed);
                let mut check = CheckReport::new("load-time-validation");
                check.fail(e.to_string());
                report.push(check);
                return Ok(finish(config, &parsed, &st, report, &[], &[]));
            }
            return Err(JobError::Input(e.to_string()));
        }
    };
    let z = subcategory_from_names(&st, &config.z, true)?;
    let d = subcategory_from_names(&st, &config.d, false)?;
    if !d.is_subset_of(&z) {
        return Err(JobError::Input("D must be a subset of Z".into()));
    }
    let z_names: Vec<String> = z.gens().map(|g| st.cat.gen_name(g).to_string()).collect();
    let d_names: Vec<String> = d.gens().map(|g| st.cat.gen_name(g).to_string()).collect();
    let witness = match &config.witness {
        Some(path) => Some(load_witness(path)?),
        None => None,
    };
    let report = match config.task {
        Task::ValidateCategory => {
            let mut report = AxiomReport::new(Task::ValidateCategory.as_str(), budget, seed);
            let mut check = CheckReport::new("load-time-validation");
            check.note(format!(
                "presentation valid: {} generators over F_{}; oracle {} passed the screen",
                st.cat.gen_count(),
                st.cat.modulus(),
                class.name()
            ));
            report.push(check);
            // the exactness screen doubles as the report payload
            let probes = enum_objects(&st, budget.cap_objects.min(2));
            let (members, _) = class.enumerate(&st, &budget);
            for member in members.iter().take(8) {
                report.push(check_hom_exact(&st, member, Variance::Covariant, &probes, &budget));
                report.push(check_hom_exact(&st, member, Variance::Contravariant, &probes, &budget));
            }
            report
        }
        Task::CheckAxioms => {
            let mut report = AxiomReport::new(Task::CheckAxioms.as_str(), budget, seed);
            for check in run_axiom_suite(&st, class.as_ref(), &budget, seed) {
                report.push(check);
            }
            report.push(differential_n4_check(&st, class.as_ref(), &budget, seed));
            report
        }
        Task::ValidateMutationPair => {
            let mut report = AxiomReport::new(Task::ValidateMutationPair.as_str(), budget, seed);
            let (found, check) = validate_mutation_pair(&st, class.as_ref(), &z, &d, &budget);
            report.push(check);
            if let Some(w) = found {
                report
                    .choices
                    .push(format!("witness: {}", serde_json::to_string(&w).expect("serializable")));
            }
            report
        }
        Task::BuildQuotient => {
            let mut report = AxiomReport::new(Task::BuildQuotient.as_str(), budget, seed);
            match build_quotient(&st, &z, &d) {
                Ok(quot) => {
                    let mut check = CheckReport::new("quotient-construction");
                    check.note("quotient presentation validated".into());
                    for qg in 0..quot.base_gens.len() {
                        for qh in 0..quot.base_gens.len() {
                            let (g, h) = (quot.base_gens[qg], quot.base_gens[qh]);
                            report.choices.push(format!(
                                "Hom({},{}): quotient dim {} of ambient {}; ideal dim {}",
                                st.cat.gen_name(g),
                                st.cat.gen_name(h),
                                quot.cat.hom_dim(qg, qh),
                                st.cat.hom_dim(g, h),
                                quot.ideal_bases[qg][qh].len()
                            ));
                        }
                    }
                    report.push(check);
                }
                Err(e) => {
                    let mut check = CheckReport::new("quotient-construction");
                    check.fail(e.to_string());
                    report.push(check);
                }
            }
            report
        }
        Task::VerifyTheorem => {
            verify_theorem(&st, class.clone(), &z, &d, &budget, seed, witness).report
        }
        Task::VerifyFrobenius => verify_frobenius(&st, class.clone(), &z, &budget, seed).report,
    };
    Ok(finish(config, &parsed, &st, report, &z_names, &d_names))
}

fn finish(
    config: &JobConfig,
    parsed: &ParsedFile,
    st: &Structure,
    report: AxiomReport,
    z_names: &[String],
    d_names: &[String],
) -> JobReport {
    let overall = report.overall();
    JobReport {
        task: report.task.clone(),
        input: config.input.display().to_string(),
        p: parsed.p,
        n: st.n,
        seed: report.seed,
        budget: report.budget,
        z: z_names.to_vec(),
        d: d_names.to_vec(),
        overall,
        checks: report.checks,
        choices: report.choices,
    }
}

/// Serializes a report deterministically.
pub fn render_report(report: &JobReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Atomic write: the report lands under its final name only when complete.
pub fn write_report(path: &Path, contents: &str) -> Result<(), JobError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(|e| JobError::Io(e.to_string()))?;
    std::fs::rename(&tmp, path).map_err(|e| JobError::Io(e.to_string()))
}
