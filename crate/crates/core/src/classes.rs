//! Membership in the standard subclasses of effect algebras.

use serde::Serialize;

use crate::algebra::EffectAlgebra;
use crate::element::ElementId;
use crate::families::{is_compatible_set, Budget, CoverCertificate, SearchError};

/// Why a class predicate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassWitness {
    /// `a ⊥ a` with `a ≠ 0`.
    SelfOrthogonal(ElementId),
    /// Pairwise orthogonal, but `a ⊕ b ⊕ c` is undefined.
    UnsummableTriple(ElementId, ElementId, ElementId),
    NoMeet(ElementId, ElementId),
    NoJoin(ElementId, ElementId),
    /// The carrier has no orthogonal cover.
    Incompatible,
}

impl ClassWitness {
    pub fn elements(&self) -> Vec<ElementId> {
        match *self {
            ClassWitness::SelfOrthogonal(a) => vec![a],
            ClassWitness::UnsummableTriple(a, b, c) => vec![a, b, c],
            ClassWitness::NoMeet(a, b) | ClassWitness::NoJoin(a, b) => vec![a, b],
            ClassWitness::Incompatible => vec![],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ClassWitness::SelfOrthogonal(_) => "self-orthogonal",
            ClassWitness::UnsummableTriple(..) => "unsummable-triple",
            ClassWitness::NoMeet(..) => "no-meet",
            ClassWitness::NoJoin(..) => "no-join",
            ClassWitness::Incompatible => "incompatible",
        }
    }

    pub fn to_json(&self, e: &EffectAlgebra) -> WitnessJson {
        WitnessJson {
            kind: self.kind().to_string(),
            elements: self.elements().iter().map(|&x| e.name(x).to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub kind: String,
    pub elements: Vec<String>,
}

/// A predicate value; `witness` is set exactly when the predicate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub witness: Option<ClassWitness>,
}

impl Verdict {
    fn from(witness: Option<ClassWitness>) -> Self {
        Verdict { witness }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Classes {
    pub orthoalgebra: Verdict,
    pub omp: Verdict,
    pub lattice: Verdict,
    pub compatible: Option<CoverCertificate>,
    pub mv: Verdict,
    pub boolean: Verdict,
}

/// Least `a ≠ 0` with `a ⊥ a`.
pub fn orthoalgebra_witness(e: &EffectAlgebra) -> Option<ElementId> {
    e.elements().find(|&a| a != e.zero() && e.perp(a, a))
}

/// Least pairwise orthogonal triple whose sum is undefined.
pub fn omp_witness(e: &EffectAlgebra) -> Option<(ElementId, ElementId, ElementId)> {
    for a in e.elements() {
        for b in e.orthogonal(a).iter().filter(|&b| b >= a) {
            let ab = e.sum(a, b).expect("orthogonal");
            for c in e.orthogonal(a).intersection(e.orthogonal(b)).iter().filter(|&c| c >= b) {
                if e.sum(ab, c).is_none() {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Least pair lacking a meet or a join.
pub fn lattice_witness(e: &EffectAlgebra) -> Option<ClassWitness> {
    for a in e.elements() {
        for b in e.elements().filter(|&b| b > a) {
            if e.meet(a, b).is_none() {
                return Some(ClassWitness::NoMeet(a, b));
            }
            if e.join(a, b).is_none() {
                return Some(ClassWitness::NoJoin(a, b));
            }
        }
    }
    None
}

/// Classifies `e`; compatibility of the carrier is decided by cover search.
pub fn classify(e: &EffectAlgebra, budget: Budget) -> Result<Classes, SearchError> {
    let ortho = orthoalgebra_witness(e).map(ClassWitness::SelfOrthogonal);
    let omp = ortho
        .clone()
        .or_else(|| omp_witness(e).map(|(a, b, c)| ClassWitness::UnsummableTriple(a, b, c)));
    let lattice = lattice_witness(e);
    let compatible = is_compatible_set(e, &e.carrier(), budget)?;
    let mv = lattice
        .clone()
        .or_else(|| compatible.is_none().then_some(ClassWitness::Incompatible));
    let boolean = mv.clone().or_else(|| ortho.clone());
    Ok(Classes {
        orthoalgebra: Verdict::from(ortho),
        omp: Verdict::from(omp),
        lattice: Verdict::from(lattice),
        compatible,
        mv: Verdict::from(mv),
        boolean: Verdict::from(boolean),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;

    #[test]
    fn boolean_algebras_are_everything() {
        let c = classify(&catalog::boolean(3), Budget::default()).unwrap();
        for v in [&c.orthoalgebra, &c.omp, &c.lattice, &c.mv, &c.boolean] {
            assert!(v.holds());
        }
        assert!(c.compatible.is_some());
    }

    #[test]
    fn l18_flags() {
        let e = catalog::l18();
        let c = classify(&e, Budget::default()).unwrap();
        assert!(c.lattice.holds());
        assert_eq!(c.orthoalgebra.witness, Some(ClassWitness::SelfOrthogonal(e.id("c").unwrap())));
        assert!(c.compatible.is_none());
        assert_eq!(c.mv.witness, Some(ClassWitness::Incompatible));
    }

    #[test]
    fn gen18_and_wright() {
        let g = catalog::gen18();
        let c = classify(&g, Budget::default()).unwrap();
        assert!(!c.lattice.holds() && !c.orthoalgebra.holds());
        let w = catalog::wright();
        let c = classify(&w, Budget::default()).unwrap();
        assert!(c.orthoalgebra.holds());
        let Some(ClassWitness::UnsummableTriple(a, b, x)) = c.omp.witness else {
            panic!("wright triangle must fail OMP")
        };
        assert!(w.perp(a, b) && w.perp(b, x) && w.perp(a, x));
        assert_eq!(w.sum(w.sum(a, b).unwrap(), x), None);
    }

    #[test]
    fn r6_is_compatible_not_lattice() {
        let r6 = catalog::r6();
        let c = classify(&r6, Budget::default()).unwrap();
        assert!(c.compatible.is_some());
        assert!(!c.lattice.holds());
        let [a, b] = r6.ids(&["a", "b"])[..] else { unreachable!() };
        assert_eq!(r6.meet(a, b), Some(r6.zero()));
    }

    #[test]
    fn flags_are_consistent_on_chains() {
        for n in 1..6 {
            let c = classify(&catalog::chain(n), Budget::default()).unwrap();
            assert!(c.mv.holds());
            assert_eq!(c.boolean.holds(), n == 1);
            assert_eq!(c.omp.holds(), c.orthoalgebra.holds());
        }
    }
}
