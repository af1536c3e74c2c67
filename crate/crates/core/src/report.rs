//! Three-valued verdicts, budgets, and the report structures every checker
//! emits. Fail verdicts always carry a replayable witness; inconclusive
//! verdicts always record the exhausted budget.

use serde::{Deserialize, Serialize};

/// Verdict of a bounded axiom check. `Pass` means "no counterexample within
/// budget and every existential witnessed within budget".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// Membership answer of an angle-class oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    In,
    Out,
    Inconclusive,
}

/// Outcome of a bounded search. `NotFound` is definite (the space was
/// exhausted); `Inconclusive` means the budget ran out first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    Inconclusive,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Search budget: object multiplicity cap, solution-space enumeration cap,
/// and instance sample cap. `exhaustive` marks the caps as covering the whole
/// space of interest, which upgrades "no candidate passed" from inconclusive
/// to a definite failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub cap_objects: usize,
    pub cap_solutions: usize,
    pub cap_instances: usize,
    #[serde(default)]
    pub exhaustive: bool,
}

impl Budget {
    pub fn new(cap_objects: usize, cap_solutions: usize, cap_instances: usize) -> Self {
        Self { cap_objects, cap_solutions, cap_instances, exhaustive: false }
    }

    pub fn exhaustive(mut self) -> Self {
        self.exhaustive = true;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.cap_objects == 0 || self.cap_solutions == 0 || self.cap_instances == 0 {
            return Err("budget caps must be positive".into());
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self { cap_objects: 2, cap_solutions: 256, cap_instances: 64, exhaustive: false }
    }
}

/// Report of one named check: verdict, witnesses, and search statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Replayable witnesses: coordinate dumps for failures, or the witnesses
    /// that discharged existential obligations.
    pub witnesses: Vec<String>,
    pub instances_checked: usize,
    pub budget_exhausted: bool,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            instances_checked: 0,
            budget_exhausted: false,
            notes: Vec::new(),
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(witness);
    }

    pub fn inconclusive(&mut self, budget: &Budget, note: String) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Inconclusive;
        }
        self.budget_exhausted = true;
        self.notes.push(format!(
            "{} (budget: objects {}, solutions {}, instances {})",
            note, budget.cap_objects, budget.cap_solutions, budget.cap_instances
        ));
    }

    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }
}

/// Aggregated report for a whole job or pipeline run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub task: String,
    pub checks: Vec<CheckReport>,
    pub budget: Budget,
    pub seed: u64,
    /// Deterministic choices the run committed to (fixed angles, complement
    /// bases, found natural isomorphisms), recorded for replay.
    pub choices: Vec<String>,
}

impl AxiomReport {
    pub fn new(task: &str, budget: Budget, seed: u64) -> Self {
        Self { task: task.to_string(), checks: Vec::new(), budget, seed, choices: Vec::new() }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    pub fn overall(&self) -> Verdict {
        self.checks.iter().fold(Verdict::Pass, |acc, c| acc.combine(c.verdict))
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}
