//! Executable theorem checks, corpus sweeps and counterexample searches.
//!
//! Every failing check carries its witness elements; a [`WitnessRecord`]
//! serializes the algebra together with the check id so that
//! [`replay_witness`] can reproduce the failure from the record alone.

mod checks;
mod context;
mod questions;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::element::ElementId;
use crate::families::Budget;
use crate::format::{self, FormatError};

use context::Context;

pub use questions::{search_in, search_question, Question, SearchOutcome, SearchReport};
pub use sweep::{corpus, generated, sweep, sweep_instances, CheckTally, Instance, SkipRecord, SweepSummary};

/// Version tag of the witness record format.
pub const WITNESS_FORMAT: &str = "efa-witness 1";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown question `{0}`")]
    UnknownQuestion(String),
    #[error("unsupported witness format `{0}`")]
    Format(String),
    #[error("witness algebra: {0}")]
    Algebra(#[from] FormatError),
    #[error("witness names unknown element `{0}`")]
    UnknownElement(String),
    #[error("witness did not reproduce: {0}")]
    NotReproduced(String),
    #[error(transparent)]
    Enumerate(#[from] crate::construct::EnumerateError),
}

/// The elements a failing check points at, with a short explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub elements: Vec<ElementId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Failure),
    /// The hypotheses of the result do not hold for this algebra.
    NotApplicable(String),
    /// A search ran out of budget; never counted as a pass.
    Skipped(String),
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "FAIL",
            Outcome::NotApplicable(_) => "n/a",
            Outcome::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub id: &'static str,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub budget: Budget,
    /// Largest subset size for checks quantifying over subsets.
    pub subset_cap: usize,
    /// Run every check even where its hypotheses fail.
    pub ignore_hypotheses: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: Budget::default(),
            subset_cap: 3,
            ignore_hypotheses: false,
        }
    }
}

/// Ids of all checks in suite order.
pub fn check_ids() -> impl Iterator<Item = &'static str> {
    checks::CHECKS.iter().map(|&(id, _)| id)
}

pub fn run_suite(e: &EffectAlgebra) -> Vec<TheoremCheck> {
    run_suite_with(e, &SuiteConfig::default())
}

pub fn run_suite_with(e: &EffectAlgebra, config: &SuiteConfig) -> Vec<TheoremCheck> {
    let ctx = Context::new(e, config.budget, config.subset_cap);
    checks::CHECKS
        .iter()
        .map(|&(id, f)| TheoremCheck {
            id,
            outcome: f(&ctx, config.ignore_hypotheses),
        })
        .collect()
}

/// Runs one check or question by id.
pub fn run_check(e: &EffectAlgebra, id: &str, config: &SuiteConfig) -> Result<TheoremCheck, VerifyError> {
    let ctx = Context::new(e, config.budget, config.subset_cap);
    if let Some(&(id, f)) = checks::CHECKS.iter().find(|(name, _)| *name == id) {
        return Ok(TheoremCheck {
            id,
            outcome: f(&ctx, config.ignore_hypotheses),
        });
    }
    if let Some(q) = Question::from_id(id) {
        return Ok(TheoremCheck {
            id: q.id(),
            outcome: q.check(&ctx),
        });
    }
    Err(VerifyError::UnknownCheck(id.to_string()))
}

/// A self-contained failure: the algebra as `.efa` text, the check id,
/// the settings it ran under and the witness elements by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub format: String,
    pub check: String,
    pub instance: String,
    pub algebra: String,
    pub elements: Vec<String>,
    pub detail: String,
    pub subset_cap: usize,
    pub unconditional: bool,
    #[serde(default)]
    pub budget: Option<u64>,
}

impl WitnessRecord {
    /// The record for `check` if it failed.
    pub fn from_check(instance: &str, e: &EffectAlgebra, check: &TheoremCheck, config: &SuiteConfig) -> Option<Self> {
        let Outcome::Fail(f) = &check.outcome else { return None };
        Some(WitnessRecord {
            format: WITNESS_FORMAT.to_string(),
            check: check.id.to_string(),
            instance: instance.to_string(),
            algebra: format::serialize(e),
            elements: f.elements.iter().map(|&x| e.name(x).to_string()).collect(),
            detail: f.detail.clone(),
            subset_cap: config.subset_cap,
            unconditional: config.ignore_hypotheses,
            budget: config.budget.limit(),
        })
    }

    pub fn config(&self) -> SuiteConfig {
        SuiteConfig {
            budget: self.budget.map_or(Budget::unlimited(), Budget::nodes),
            subset_cap: self.subset_cap,
            ignore_hypotheses: self.unconditional,
        }
    }
}

/// Re-runs the recorded check on the recorded algebra and confirms that it
/// fails with the same witness elements.
pub fn replay_witness(record: &WitnessRecord) -> Result<(), VerifyError> {
    if record.format != WITNESS_FORMAT {
        return Err(VerifyError::Format(record.format.clone()));
    }
    let e = format::parse(&record.algebra)?;
    for name in &record.elements {
        e.id(name).ok_or_else(|| VerifyError::UnknownElement(name.clone()))?;
    }
    let check = run_check(&e, &record.check, &record.config())?;
    match check.outcome {
        Outcome::Fail(f) => {
            let got: Vec<&str> = f.elements.iter().map(|&x| e.name(x)).collect();
            if got == record.elements {
                Ok(())
            } else {
                Err(VerifyError::NotReproduced(format!(
                    "witness {:?} instead of {:?}",
                    got, record.elements
                )))
            }
        }
        other => Err(VerifyError::NotReproduced(format!("check now reports {}", other.label()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;

    fn outcome<'a>(checks: &'a [TheoremCheck], id: &str) -> &'a Outcome {
        &checks.iter().find(|c| c.id == id).unwrap().outcome
    }

    #[test]
    fn r6_equiv_passes_and_homogeneous_checks_do_not_apply() {
        let checks = run_suite(&catalog::r6());
        assert_eq!(outcome(&checks, "equiv"), &Outcome::Pass);
        assert!(matches!(outcome(&checks, "maxcompatisblock"), Outcome::NotApplicable(_)));
        assert!(checks.iter().all(|c| !c.outcome.is_fail()), "{checks:?}");
    }

    #[test]
    fn small_catalog_entries_pass() {
        for e in [catalog::boolean(3), catalog::chain(4), catalog::mo(2), catalog::l18()] {
            for c in run_suite(&e) {
                assert!(c.outcome.is_pass() || matches!(c.outcome, Outcome::NotApplicable(_)), "{c:?}");
            }
        }
    }

    #[test]
    fn ignoring_hypotheses_yields_a_replayable_failure() {
        let e = catalog::r6();
        let config = SuiteConfig {
            ignore_hypotheses: true,
            ..SuiteConfig::default()
        };
        let check = run_check(&e, "blockcover", &config).unwrap();
        let record = WitnessRecord::from_check("r6", &e, &check, &config).expect("fails");
        assert_eq!(record.elements, vec!["b"]);
        let json = serde_json::to_string(&record).unwrap();
        let back: WitnessRecord = serde_json::from_str(&json).unwrap();
        replay_witness(&back).unwrap();

        let mut forged = back.clone();
        forged.elements = vec!["a".into()];
        assert!(matches!(replay_witness(&forged), Err(VerifyError::NotReproduced(_))));
        forged.check = "nope".into();
        assert!(matches!(replay_witness(&forged), Err(VerifyError::UnknownCheck(_))));
    }

    #[test]
    fn check_ids_are_unique() {
        let ids: Vec<_> = check_ids().collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids.len(), sorted.len());
    }
}
