//! Counterexample searches for three unresolved questions about
//! homogeneous effect algebras.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::context::Context;
use super::sweep::{corpus, Instance};
use super::{replay_witness, Failure, Outcome, SuiteConfig, TheoremCheck, VerifyError, WitnessRecord};
use crate::structure::{blocks_by_rdp, central_elements, has_rdp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Question {
    /// Does every compatible subset lie inside some block?
    CompatibleEmbedsInBlock,
    /// Does the compatibility center `K(E)` have the Riesz decomposition
    /// property?
    KRdp,
    /// Is the center `C(B)` of every block `B` a block of `E_S`?
    CbBlockOfEs,
}

impl Question {
    pub const ALL: [Question; 3] = [Question::CompatibleEmbedsInBlock, Question::KRdp, Question::CbBlockOfEs];

    pub fn id(self) -> &'static str {
        match self {
            Question::CompatibleEmbedsInBlock => "compatible-embeds-in-block",
            Question::KRdp => "k-rdp",
            Question::CbBlockOfEs => "cb-block-of-es",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Question::ALL.into_iter().find(|q| q.id() == id)
    }

    pub(crate) fn check(self, ctx: &Context) -> Outcome {
        if ctx.homogeneous().is_err() {
            return Outcome::NotApplicable("not homogeneous".into());
        }
        match self {
            Question::CompatibleEmbedsInBlock => embeds(ctx),
            Question::KRdp => k_rdp(ctx),
            Question::CbBlockOfEs => cb_block(ctx),
        }
    }
}

fn fail(elements: Vec<crate::ElementId>, detail: impl Into<String>) -> Outcome {
    Outcome::Fail(Failure {
        elements,
        detail: detail.into(),
    })
}

fn embeds(ctx: &Context) -> Outcome {
    let blocks = &ctx.blocks().blocks;
    for m in ctx.small_subsets() {
        match ctx.compatible(&m) {
            Ok(true) if !blocks.iter().any(|b| m.is_subset(b)) => {
                return fail(m.to_vec(), "compatible subset lies in no block");
            }
            Ok(_) => {}
            Err(err) => return Outcome::Skipped(err.to_string()),
        }
    }
    Outcome::Pass
}

fn k_rdp(ctx: &Context) -> Outcome {
    let e = ctx.e;
    let k = ctx.blocks().intersection();
    let restricted = match e.restrict(&k) {
        Ok(r) => r,
        Err(err) => return fail(k.to_vec(), format!("K(E) does not restrict to an effect algebra: {err}")),
    };
    match has_rdp(&restricted) {
        Ok(()) => Outcome::Pass,
        Err(w) => fail(
            [w.u, w.v1, w.v2]
                .map(|x| e.id(restricted.name(x)).expect("same names"))
                .to_vec(),
            "K(E) lacks Riesz decomposition",
        ),
    }
}

fn cb_block(ctx: &Context) -> Outcome {
    let e = ctx.e;
    let es = match e.restrict(&ctx.sharp()) {
        Ok(es) => es,
        Err(err) => return fail(ctx.sharp().to_vec(), format!("E_S does not restrict: {err}")),
    };
    let es_blocks: Vec<_> = blocks_by_rdp(&es)
        .iter()
        .map(|b| es.translate(b, e).expect("same names"))
        .collect();
    for b in &ctx.blocks().blocks {
        let b_alg = e.restrict(b).expect("blocks are sub-effect algebras");
        let c_b = b_alg.translate(&central_elements(&b_alg), e).expect("same names");
        if !es_blocks.contains(&c_b) {
            return fail(c_b.to_vec(), "center of a block is not a block of E_S");
        }
    }
    Outcome::Pass
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    NoCounterexample { up_to: usize },
    Counterexample(Box<WitnessRecord>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub question: String,
    pub space: String,
    pub instances: usize,
    pub homogeneous: usize,
    pub outcome: SearchOutcome,
    pub notes: Vec<String>,
}

impl SearchReport {
    /// Counterexamples must reproduce; an empty search replays trivially.
    pub fn replay(&self) -> Result<(), VerifyError> {
        match &self.outcome {
            SearchOutcome::NoCounterexample { .. } => Ok(()),
            SearchOutcome::Counterexample(record) => replay_witness(record),
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "question: {}", self.question);
        let _ = writeln!(s, "space: {}", self.space);
        let _ = writeln!(s, "instances: {} ({} homogeneous)", self.instances, self.homogeneous);
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        match &self.outcome {
            SearchOutcome::NoCounterexample { up_to } => {
                let _ = writeln!(s, "outcome: no counterexample up to n={up_to}");
            }
            SearchOutcome::Counterexample(r) => {
                let _ = writeln!(s, "outcome: counterexample on {}: {} [{}]", r.instance, r.detail, r.elements.join(", "));
            }
        }
        s
    }
}

/// Searches the sweep corpus up to `max_n` elements for a counterexample.
pub fn search_question(id: &str, max_n: usize, config: &SuiteConfig) -> Result<SearchReport, VerifyError> {
    let q = Question::from_id(id).ok_or_else(|| VerifyError::UnknownQuestion(id.to_string()))?;
    let space = format!(
        "all effect algebras with 2..={max_n} elements, the catalog, products, horizontal sums and intervals; subsets up to {}",
        config.subset_cap
    );
    Ok(search_in(q, &corpus(max_n)?, config, max_n, space))
}

/// Searches an explicit list of instances.
pub fn search_in(q: Question, instances: &[Instance], config: &SuiteConfig, up_to: usize, space: String) -> SearchReport {
    let outcomes: Vec<Outcome> = instances
        .par_iter()
        .map(|inst| q.check(&Context::new(&inst.algebra, config.budget, config.subset_cap)))
        .collect();
    let mut notes = Vec::new();
    let mut homogeneous = 0;
    let mut found = None;
    for (inst, out) in instances.iter().zip(outcomes) {
        if !matches!(out, Outcome::NotApplicable(_)) {
            homogeneous += 1;
        }
        match out {
            Outcome::Skipped(reason) => notes.push(format!("{}: {reason}", inst.name)),
            Outcome::Fail(f) if found.is_none() => {
                let check = TheoremCheck {
                    id: q.id(),
                    outcome: Outcome::Fail(f),
                };
                found = WitnessRecord::from_check(&inst.name, &inst.algebra, &check, config);
            }
            _ => {}
        }
    }
    SearchReport {
        question: q.id().to_string(),
        space,
        instances: instances.len(),
        homogeneous,
        outcome: match found {
            Some(r) => SearchOutcome::Counterexample(Box::new(r)),
            None => SearchOutcome::NoCounterexample { up_to },
        },
        notes,
    }
}
