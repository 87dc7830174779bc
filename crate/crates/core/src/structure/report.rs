//! Everything the structure module computes about one algebra, in one
//! record.

use serde::Serialize;

use super::blocks::{blocks, is_homogeneous_via_blocks, BlockSet};
use super::center::{central_elements, compatibility_center, principal_elements, sharp_elements};
use super::rdp::{has_rdp, is_homogeneous, RdpWitness};
use super::StructureError;
use crate::algebra::EffectAlgebra;
use crate::classes::{classify, Classes, Verdict, WitnessJson};
use crate::element::ElementSet;
use crate::families::{Budget, CoverJson};

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub classes: Classes,
    pub rdp: Result<(), RdpWitness>,
    pub homogeneous: Result<(), RdpWitness>,
    pub homogeneous_via_blocks: bool,
    pub blocks: BlockSet,
    pub sharp: ElementSet,
    pub principal: ElementSet,
    pub central: ElementSet,
    pub k_center: ElementSet,
    pub sharp_is_subalgebra: bool,
}

pub fn classification_report(e: &EffectAlgebra, budget: Budget) -> Result<ClassificationReport, StructureError> {
    let classes = classify(e, budget)?;
    let blocks = blocks(e, budget)?;
    let sharp = sharp_elements(e);
    Ok(ClassificationReport {
        classes,
        rdp: has_rdp(e),
        homogeneous: is_homogeneous(e),
        homogeneous_via_blocks: is_homogeneous_via_blocks(e, &blocks),
        k_center: compatibility_center(&blocks),
        blocks,
        sharp_is_subalgebra: e.is_sub_effect_algebra(&sharp),
        sharp,
        principal: principal_elements(e),
        central: central_elements(e),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictJson {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

/// Stable JSON view of a report; all elements appear by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub elements: usize,
    pub orthoalgebra: VerdictJson,
    pub omp: VerdictJson,
    pub lattice: VerdictJson,
    pub mv: VerdictJson,
    pub boolean: VerdictJson,
    pub compatible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverJson>,
    pub rdp: VerdictJson,
    pub homogeneous: VerdictJson,
    pub homogeneous_via_blocks: bool,
    pub blocks: Vec<Vec<String>>,
    pub sharp: Vec<String>,
    pub principal: Vec<String>,
    pub central: Vec<String>,
    pub k_center: Vec<String>,
    pub sharp_is_subalgebra: bool,
}

fn verdict(e: &EffectAlgebra, v: &Verdict) -> VerdictJson {
    VerdictJson {
        holds: v.holds(),
        witness: v.witness.as_ref().map(|w| w.to_json(e)),
    }
}

fn triple(e: &EffectAlgebra, r: &Result<(), RdpWitness>) -> VerdictJson {
    VerdictJson {
        holds: r.is_ok(),
        witness: r.err().map(|w| WitnessJson {
            kind: "undecomposable".to_string(),
            elements: w.names(e).to_vec(),
        }),
    }
}

impl ClassificationReport {
    pub fn to_json(&self, e: &EffectAlgebra) -> ReportJson {
        let c = &self.classes;
        ReportJson {
            elements: e.len(),
            orthoalgebra: verdict(e, &c.orthoalgebra),
            omp: verdict(e, &c.omp),
            lattice: verdict(e, &c.lattice),
            mv: verdict(e, &c.mv),
            boolean: verdict(e, &c.boolean),
            compatible: c.compatible.is_some(),
            cover: c.compatible.as_ref().map(|cert| cert.to_json(e)),
            rdp: triple(e, &self.rdp),
            homogeneous: triple(e, &self.homogeneous),
            homogeneous_via_blocks: self.homogeneous_via_blocks,
            blocks: self.blocks.blocks.iter().map(|b| e.set_names(b)).collect(),
            sharp: e.set_names(&self.sharp),
            principal: e.set_names(&self.principal),
            central: e.set_names(&self.central),
            k_center: e.set_names(&self.k_center),
            sharp_is_subalgebra: self.sharp_is_subalgebra,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;

    #[test]
    fn reports_are_internally_consistent() {
        for entry in catalog::entries() {
            let e = entry.build();
            let r = classification_report(&e, Budget::default()).unwrap();
            assert!(r.central.is_subset(&r.principal), "{}", entry.label());
            assert!(r.principal.is_subset(&r.sharp), "{}", entry.label());
            assert_eq!(r.homogeneous.is_ok(), r.homogeneous_via_blocks, "{}", entry.label());
            let x = &entry.expected;
            assert_eq!(e.len(), x.size);
            let checks = [
                (x.lattice, r.classes.lattice.holds(), "lattice"),
                (x.orthoalgebra, r.classes.orthoalgebra.holds(), "orthoalgebra"),
                (x.homogeneous, r.homogeneous.is_ok(), "homogeneous"),
                (x.rdp, r.rdp.is_ok(), "rdp"),
                (x.compatible, r.classes.compatible.is_some(), "compatible"),
            ];
            for (want, got, what) in checks {
                if let Some(want) = want {
                    assert_eq!(want, got, "{} {what}", entry.label());
                }
            }
            if let Some(n) = x.blocks {
                assert_eq!(r.blocks.blocks.len(), n, "{} blocks", entry.label());
            }
            if let Some(n) = x.sharp {
                assert_eq!(r.sharp.len(), n, "{} sharp", entry.label());
            }
        }
    }

    #[test]
    fn json_uses_names() {
        let e = catalog::r6();
        let j = classification_report(&e, Budget::default()).unwrap().to_json(&e);
        assert!(j.compatible && !j.rdp.holds && !j.homogeneous.holds);
        assert_eq!(j.rdp.witness.as_ref().unwrap().elements, vec!["a", "b", "b"]);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"k_center\""));
    }
}
