//! Systematic cross-check of the classifier against the oracle.

use serde::Serialize;

use crate::classify::{classify_single_term, RuleId, RuleSet, Status};
use crate::formula::{Formula, PropId};
use crate::gen::{single_terms, GenConfig};
use crate::oracle::{find_success_counterexample, SearchBounds, SearchError, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// The oracle confirms the verdict within the bound.
    Agrees,
    Disagrees,
    /// Verdict was `Unknown`; nothing to check.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyEntry {
    pub formula: String,
    pub status: Status,
    pub rule: Option<RuleId>,
    pub disputed: bool,
    pub check: Check,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_ops: usize,
    pub agents: usize,
    pub max_worlds: usize,
    pub rules: RuleSet,
    pub agreements: usize,
    pub disagreements: usize,
    pub unknown: usize,
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn disagreeing(&self) -> impl Iterator<Item = &VerifyEntry> {
        self.entries.iter().filter(|e| e.check == Check::Disagrees)
    }
}

/// Oracle judgement of one verdict on `f`.
pub fn check_verdict(f: &Formula, status: Status, witness: Option<&crate::classify::WitnessRecipe>, bounds: &SearchBounds) -> Result<(Check, Option<String>), SearchError> {
    Ok(match (status, witness) {
        (Status::Unknown, _) => (Check::Skipped, None),
        (Status::Unsuccessful, Some(recipe)) => match recipe.materialize(f) {
            Ok(_) => (Check::Agrees, None),
            Err(e) => (Check::Disagrees, Some(e.to_string())),
        },
        (status, _) => {
            let report = find_success_counterexample(f, bounds)?;
            match (status, report.found()) {
                (Status::Successful, false) | (Status::Unsuccessful, true) => (Check::Agrees, None),
                (Status::Successful, true) => {
                    (Check::Disagrees, Some(format!("counter-model found among {} models", report.models_examined)))
                }
                _ => (Check::Disagrees, Some(format!("no counter-model up to {} worlds", bounds.max_worlds))),
            }
        }
    })
}

/// Classify every single term with 1..=`max_ops` operators over `agents`
/// agents (body `p`) and check each verdict.
pub fn verify_single_terms(
    max_ops: usize,
    agents: usize,
    max_worlds: usize,
    rules: RuleSet,
) -> Result<VerifyReport, SearchError> {
    let cfg = GenConfig::new(agents, 1, 0);
    let body = Formula::atom(PropId::new("p").unwrap());
    let bounds = SearchBounds::new(max_worlds, cfg.agents.clone(), Strategy::Exhaustive)?;
    let mut entries = Vec::new();
    for v in single_terms(max_ops, &cfg.agents, &body) {
        let f = v.to_formula();
        let verdict = classify_single_term(&v, rules);
        let (check, detail) = check_verdict(&f, verdict.status, verdict.witness.as_ref(), &bounds)?;
        entries.push(VerifyEntry {
            formula: f.to_string(),
            status: verdict.status,
            rule: verdict.rule.map(|r| r.id),
            disputed: verdict.rule.is_some_and(|r| r.disputed),
            check,
            detail,
        });
    }
    let count = |c: Check| entries.iter().filter(|e| e.check == c).count();
    Ok(VerifyReport {
        max_ops,
        agents,
        max_worlds,
        rules,
        agreements: count(Check::Agrees),
        disagreements: count(Check::Disagrees),
        unknown: count(Check::Skipped),
        entries,
    })
}
