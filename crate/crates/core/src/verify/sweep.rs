//! The sweep corpus and the parallel suite runner over it.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{run_suite_with, check_ids, Outcome, SuiteConfig, VerifyError, WitnessRecord};
use crate::algebra::EffectAlgebra;
use crate::construct::{catalog, direct_product, enumerate_all, horizontal_sum, interval_algebra};

/// A named member of the corpus.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: EffectAlgebra,
}

impl Instance {
    fn new(name: impl Into<String>, algebra: EffectAlgebra) -> Self {
        Instance {
            name: name.into(),
            algebra,
        }
    }
}

fn product_seeds() -> Vec<(&'static str, EffectAlgebra)> {
    vec![
        ("chain(2)", catalog::chain(2)),
        ("chain(3)", catalog::chain(3)),
        ("boolean(2)", catalog::boolean(2)),
        ("r6", catalog::r6()),
        ("mo(2)", catalog::mo(2)),
    ]
}

fn hsum_seeds() -> Vec<(&'static str, EffectAlgebra)> {
    let mut seeds = product_seeds();
    seeds.push(("l18", catalog::l18()));
    seeds.push(("gen18", catalog::gen18()));
    seeds
}

/// One generation of constructions over catalog entries: products of
/// pairs of small seeds, horizontal sums of pairs of seeds and every
/// proper interval of the three worked examples.
pub fn generated() -> Vec<Instance> {
    let mut out = Vec::new();
    let seeds = product_seeds();
    for (i, (na, a)) in seeds.iter().enumerate() {
        for (nb, b) in &seeds[i..] {
            let p = direct_product(a, b).expect("small products fit");
            out.push(Instance::new(format!("product({na},{nb})"), p));
        }
    }
    let seeds = hsum_seeds();
    for (i, (na, a)) in seeds.iter().enumerate() {
        for (nb, b) in &seeds[i..] {
            let h = horizontal_sum(a, b).expect("small sums fit");
            out.push(Instance::new(format!("hsum({na},{nb})"), h));
        }
    }
    for (name, e) in [("r6", catalog::r6()), ("l18", catalog::l18()), ("gen18", catalog::gen18())] {
        for a in e.elements().filter(|&a| a != e.zero() && a != e.one()) {
            let sub = interval_algebra(&e, a).expect("nonzero element");
            out.push(Instance::new(format!("interval({name},{})", e.name(a)), sub));
        }
    }
    out
}

/// Every algebra with `2..=max_n` elements, the catalog and one
/// generation of constructions, in a fixed order.
pub fn corpus(max_n: usize) -> Result<Vec<Instance>, VerifyError> {
    let mut out: Vec<Instance> = Vec::new();
    for e in enumerate_all(max_n)? {
        let k = out.iter().filter(|i| i.algebra.len() == e.len()).count();
        out.push(Instance::new(format!("enum{}#{k}", e.len()), e));
    }
    out.extend(catalog::entries().iter().map(|c| Instance::new(c.label(), c.build())));
    out.extend(generated());
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub id: String,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipRecord {
    pub instance: String,
    pub check: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub tallies: Vec<CheckTally>,
    pub failures: Vec<WitnessRecord>,
    pub skipped: Vec<SkipRecord>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "instances: {}", self.instances);
        let _ = writeln!(s, "{:<18} {:>6} {:>6} {:>6} {:>8}", "check", "pass", "fail", "n/a", "skipped");
        for t in &self.tallies {
            let _ = writeln!(
                s,
                "{:<18} {:>6} {:>6} {:>6} {:>8}",
                t.id, t.pass, t.fail, t.not_applicable, t.skipped
            );
        }
        for k in &self.skipped {
            let _ = writeln!(s, "skipped {} on {}: {}", k.check, k.instance, k.reason);
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAIL {} on {}: {} [{}]", f.check, f.instance, f.detail, f.elements.join(", "));
        }
        let _ = writeln!(s, "failures: {}", self.failures.len());
        s
    }
}

/// Runs the suite over `instances` in parallel; the summary follows the
/// order of `instances`, not the order of completion.
pub fn sweep_instances(instances: &[Instance], config: &SuiteConfig) -> SweepSummary {
    let results: Vec<_> = instances
        .par_iter()
        .map(|inst| run_suite_with(&inst.algebra, config))
        .collect();
    let mut tallies: Vec<CheckTally> = check_ids()
        .map(|id| CheckTally {
            id: id.to_string(),
            ..CheckTally::default()
        })
        .collect();
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    for (inst, checks) in instances.iter().zip(&results) {
        for (tally, check) in tallies.iter_mut().zip(checks) {
            match &check.outcome {
                Outcome::Pass => tally.pass += 1,
                Outcome::NotApplicable(_) => tally.not_applicable += 1,
                Outcome::Skipped(reason) => {
                    tally.skipped += 1;
                    skipped.push(SkipRecord {
                        instance: inst.name.clone(),
                        check: check.id.to_string(),
                        reason: reason.clone(),
                    });
                }
                Outcome::Fail(_) => {
                    tally.fail += 1;
                    failures.extend(WitnessRecord::from_check(&inst.name, &inst.algebra, check, config));
                }
            }
        }
    }
    SweepSummary {
        instances: instances.len(),
        tallies,
        failures,
        skipped,
    }
}

pub fn sweep(max_n: usize, config: &SuiteConfig) -> Result<SweepSummary, VerifyError> {
    Ok(sweep_instances(&corpus(max_n)?, config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_at_two_has_one_enumerated_instance() {
        let c = corpus(2).unwrap();
        assert_eq!(c.iter().filter(|i| i.name.starts_with("enum")).count(), 1);
        assert!(corpus(9).is_err());
    }

    #[test]
    fn enumerated_sweep_is_clean_and_deterministic() {
        let inst: Vec<Instance> = enumerate_all(5)
            .unwrap()
            .into_iter()
            .enumerate()
            .map(|(k, e)| Instance::new(format!("enum#{k}"), e))
            .collect();
        let a = sweep_instances(&inst, &SuiteConfig::default());
        let b = sweep_instances(&inst, &SuiteConfig::default());
        assert!(a.is_clean(), "{}", a.render());
        assert_eq!(a.render(), b.render());
        assert_eq!(a.instances, 9);
    }
}
