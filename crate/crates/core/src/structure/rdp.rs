//! Riesz decomposition and homogeneity.

use serde::Serialize;

use crate::algebra::{DomainError, EffectAlgebra};
use crate::element::{ElementId, ElementSet};
use crate::families::family_sum;

/// A triple `(u, v₁, v₂)` with `v₁ ⊥ v₂`, `u ≤ v₁ ⊕ v₂` and no
/// `u = u₁ ⊕ u₂` with `u₁ ≤ v₁`, `u₂ ≤ v₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RdpWitness {
    pub u: ElementId,
    pub v1: ElementId,
    pub v2: ElementId,
}

impl RdpWitness {
    pub fn names(&self, e: &EffectAlgebra) -> [String; 3] {
        [self.u, self.v1, self.v2].map(|x| e.name(x).to_string())
    }

    pub fn to_json(&self, e: &EffectAlgebra) -> RdpWitnessJson {
        let [u, v1, v2] = self.names(e);
        RdpWitnessJson { u, v1, v2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RdpWitnessJson {
    pub u: String,
    pub v1: String,
    pub v2: String,
}

/// Least `(u₁, u₂)` with `u₁ ≤ v₁`, `u₂ ≤ v₂`, `u = u₁ ⊕ u₂`, both inside
/// `within`.
pub fn decompose2_within(
    e: &EffectAlgebra,
    within: &ElementSet,
    u: ElementId,
    v1: ElementId,
    v2: ElementId,
) -> Option<(ElementId, ElementId)> {
    e.down(u)
        .intersection(e.down(v1))
        .intersection(within)
        .iter()
        .find_map(|u1| {
            let u2 = e.try_ominus(u, u1)?;
            (within.contains(u2) && e.leq(u2, v2)).then_some((u1, u2))
        })
}

/// Least `(u₁, u₂)` with `u₁ ≤ v₁`, `u₂ ≤ v₂` and `u = u₁ ⊕ u₂`.
pub fn decompose2(e: &EffectAlgebra, u: ElementId, v1: ElementId, v2: ElementId) -> Option<(ElementId, ElementId)> {
    decompose2_within(e, &e.carrier(), u, v1, v2)
}

fn scan(e: &EffectAlgebra, within: &ElementSet, homogeneous_only: bool) -> Result<(), RdpWitness> {
    for u in within.iter() {
        for v1 in within.iter() {
            for v2 in e.orthogonal(v1).intersection(within).iter() {
                let s = e.sum(v1, v2).expect("orthogonal");
                if !e.leq(u, s) || (homogeneous_only && !e.leq(u, e.complement(s))) {
                    continue;
                }
                if decompose2_within(e, within, u, v1, v2).is_none() {
                    return Err(RdpWitness { u, v1, v2 });
                }
            }
        }
    }
    Ok(())
}

/// Riesz decomposition with two summands, which implies every arity.
/// The failing triple is least in `(u, v₁, v₂)` order.
pub fn has_rdp(e: &EffectAlgebra) -> Result<(), RdpWitness> {
    scan(e, &e.carrier(), false)
}

/// RDP of the sub-effect algebra `s`, decompositions taken inside `s`.
///
/// The order of a sub-effect algebra is the restriction of the ambient
/// order, so no restricted table is needed.
pub fn has_rdp_within(e: &EffectAlgebra, s: &ElementSet) -> Result<(), RdpWitness> {
    scan(e, s, false)
}

/// Decomposition is demanded only when additionally `u ≤ (v₁ ⊕ v₂)'`.
pub fn is_homogeneous(e: &EffectAlgebra) -> Result<(), RdpWitness> {
    scan(e, &e.carrier(), true)
}

/// For `u ≤ ⊕F` and `u ≤ (⊕F)'`, the least `(u₁, …, uₙ)` with
/// `uᵢ ≤ F[i]` and `u = u₁ ⊕ … ⊕ uₙ`.
///
/// In a homogeneous algebra such a sequence always exists, so `Ok(None)`
/// certifies failure of homogeneity.
pub fn n_ary_decompose(e: &EffectAlgebra, u: ElementId, family: &[ElementId]) -> Result<Option<Vec<ElementId>>, DomainError> {
    let total = family_sum(e, family).ok_or_else(|| DomainError::Precondition("family is not orthogonal".into()))?;
    if !e.leq(u, total) || !e.leq(u, e.complement(total)) {
        return Err(DomainError::Precondition(format!(
            "{} must lie below both {} and its complement",
            e.name(u),
            e.name(total)
        )));
    }

    fn go(e: &EffectAlgebra, family: &[ElementId], rest: ElementId, out: &mut Vec<ElementId>) -> bool {
        match family {
            [] => rest == e.zero(),
            [last] => {
                if e.leq(rest, *last) {
                    out.push(rest);
                    true
                } else {
                    false
                }
            }
            [head, tail @ ..] => {
                for ui in e.down(rest).intersection(e.down(*head)).iter() {
                    let r = e.try_ominus(rest, ui).expect("ui ≤ rest");
                    out.push(ui);
                    if go(e, tail, r, out) {
                        return true;
                    }
                    out.pop();
                }
                false
            }
        }
    }

    let mut out = Vec::with_capacity(family.len());
    Ok(go(e, family, u, &mut out).then_some(out))
}
