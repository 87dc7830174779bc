//! Sharp, principal and central elements, ideals and the compatibility
//! center.

use serde::Serialize;

use super::blocks::BlockSet;
use super::StructureError;
use crate::algebra::EffectAlgebra;
use crate::element::{ElementId, ElementSet};

/// `a` is sharp when 0 is the only common lower bound of `a` and `a'`.
pub fn is_sharp(e: &EffectAlgebra, a: ElementId) -> bool {
    e.down(a).intersection(e.down(e.complement(a))) == ElementSet::singleton(e.zero())
}

pub fn sharp_elements(e: &EffectAlgebra) -> ElementSet {
    e.elements().filter(|&a| is_sharp(e, a)).collect()
}

/// `[0, a]` is closed under `⊕`.
pub fn is_principal(e: &EffectAlgebra, a: ElementId) -> bool {
    let below = e.down(a);
    below
        .iter()
        .all(|x| below.intersection(e.orthogonal(x)).iter().all(|y| below.contains(e.sum(x, y).expect("orthogonal"))))
}

pub fn principal_elements(e: &EffectAlgebra) -> ElementSet {
    e.elements().filter(|&a| is_principal(e, a)).collect()
}

/// `a` and `a'` are principal, and every `b` splits in exactly one way as
/// `b₁ ⊕ b₂` with `b₁ ≤ a`, `b₂ ≤ a'`.
pub fn is_central(e: &EffectAlgebra, a: ElementId) -> bool {
    let ac = e.complement(a);
    if !is_principal(e, a) || !is_principal(e, ac) {
        return false;
    }
    e.elements().all(|b| {
        e.down(b)
            .intersection(e.down(a))
            .iter()
            .filter(|&b1| e.try_ominus(b, b1).is_some_and(|b2| e.leq(b2, ac)))
            .count()
            == 1
    })
}

pub fn central_elements(e: &EffectAlgebra) -> ElementSet {
    e.elements().filter(|&a| is_central(e, a)).collect()
}

/// For orthogonal `a, b`: `a, b ∈ I` exactly when `a ⊕ b ∈ I`.
pub fn is_ideal(e: &EffectAlgebra, ideal: &ElementSet) -> bool {
    e.elements().all(|a| {
        e.orthogonal(a).iter().all(|b| {
            let s = e.sum(a, b).expect("orthogonal");
            (ideal.contains(a) && ideal.contains(b)) == ideal.contains(s)
        })
    })
}

/// An ideal such that `i ∈ I`, `a ⊥ b`, `i ≤ a ⊕ b` give `i₁, i₂ ∈ I` with
/// `i₁ ≤ a`, `i₂ ≤ b` and `i ≤ i₁ ⊕ i₂`.
pub fn is_riesz_ideal(e: &EffectAlgebra, ideal: &ElementSet) -> bool {
    if !is_ideal(e, ideal) {
        return false;
    }
    ideal.iter().all(|i| {
        e.elements().all(|a| {
            e.orthogonal(a).iter().all(|b| {
                let s = e.sum(a, b).expect("orthogonal");
                if !e.leq(i, s) {
                    return true;
                }
                let ia = ideal.intersection(e.down(a));
                let ib = ideal.intersection(e.down(b));
                ia.iter()
                    .any(|i1| ib.iter().any(|i2| e.sum(i1, i2).is_some_and(|t| e.leq(i, t))))
            })
        })
    })
}

/// `E_S` as an algebra. Fails with the offending pair when the sharp
/// elements are not closed under `⊖`.
pub fn sharp_subalgebra(e: &EffectAlgebra) -> Result<EffectAlgebra, StructureError> {
    let sharp = sharp_elements(e);
    if let Some((a, b)) = e.sub_effect_algebra_defect(&sharp) {
        return Err(StructureError::NotSubAlgebra {
            what: "sharp elements",
            a: e.name(a).to_string(),
            b: e.name(b).to_string(),
        });
    }
    Ok(e.restrict(&sharp)?)
}

/// `K(E)`, the intersection of all blocks.
pub fn compatibility_center(blocks: &BlockSet) -> ElementSet {
    blocks.intersection()
}

/// Centrality of an element relative to the blocks containing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCentrality {
    pub in_some: bool,
    pub in_every_containing: bool,
    pub containing_blocks: usize,
}

/// Centrality of `a` inside each block, taken as an algebra of its own.
pub fn central_in_block(e: &EffectAlgebra, blocks: &BlockSet, a: ElementId) -> Result<BlockCentrality, StructureError> {
    let mut in_some = false;
    let mut in_every = true;
    let mut count = 0;
    for b in blocks.containing(a) {
        count += 1;
        let alg = e.restrict(b)?;
        let local = alg.id(e.name(a)).expect("a lies in the block");
        let central = is_central(&alg, local);
        in_some |= central;
        in_every &= central;
    }
    Ok(BlockCentrality {
        in_some,
        in_every_containing: in_every,
        containing_blocks: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;
    use crate::families::Budget;
    use crate::structure::blocks;

    #[test]
    fn centrality_needs_a_principal_complement() {
        let e = EffectAlgebra::build(
            &["0", "a", "a'", "b", "b'", "c", "c'", "1"],
            "0",
            "1",
            &[
                ("a", "a", "a'"),
                ("a", "a'", "1"),
                ("a", "b", "c'"),
                ("a", "c", "b'"),
                ("b", "b'", "1"),
                ("b", "c", "a'"),
                ("c", "c'", "1"),
            ],
        )
        .unwrap();
        let [b, bc] = e.ids(&["b", "b'"])[..] else { unreachable!() };
        assert!(is_principal(&e, b) && !is_principal(&e, bc));
        assert!(!is_central(&e, b));
        assert_eq!(central_elements(&e), e.set_of(&["0", "1"]));
        assert!(!is_riesz_ideal(&e, e.down(b)));
    }

    #[test]
    fn bounds_are_central() {
        for e in [catalog::r6(), catalog::l18(), catalog::gen18(), catalog::chain(3)] {
            for set in [sharp_elements(&e), principal_elements(&e), central_elements(&e)] {
                assert!(set.contains(e.zero()) && set.contains(e.one()));
            }
        }
    }

    #[test]
    fn gen18_sharp_set() {
        let g = catalog::gen18();
        let expected = g.carrier().difference(&g.set_of(&["d", "d'", "c+d", "d+e"]));
        assert_eq!(sharp_elements(&g), expected);
        assert_eq!(sharp_subalgebra(&g).unwrap().len(), 14);
    }

    #[test]
    fn l18_center_and_ideals() {
        let e = catalog::l18();
        let center = e.set_of(&["0", "c+c", "(c+c)'", "1"]);
        assert_eq!(central_elements(&e), center);
        let cc = e.id("c+c").unwrap();
        assert!(is_riesz_ideal(&e, e.down(cc)));
        assert!(is_ideal(&e, &ElementSet::singleton(e.zero())));
        assert!(is_riesz_ideal(&e, &ElementSet::singleton(e.zero())));
        let es = sharp_subalgebra(&e).unwrap();
        assert_eq!(es.len(), 12);
    }

    #[test]
    fn central_iff_riesz_interval() {
        for e in [catalog::r6(), catalog::l18(), catalog::gen18(), catalog::mo(2), catalog::chain(4)] {
            for a in e.elements() {
                assert_eq!(is_central(&e, a), is_riesz_ideal(&e, e.down(a)), "{}", e.name(a));
            }
        }
    }

    #[test]
    fn block_centrality() {
        let g = catalog::gen18();
        let bs = blocks(&g, Budget::default()).unwrap();
        let d = g.id("d").unwrap();
        let r = central_in_block(&g, &bs, d).unwrap();
        assert!(!r.in_some && !r.in_every_containing);
        let r = central_in_block(&g, &bs, g.one()).unwrap();
        assert!(r.in_some && r.in_every_containing);

        let e = catalog::l18();
        let bs = blocks(&e, Budget::default()).unwrap();
        let c = e.id("c").unwrap();
        assert!(!is_sharp(&e, c));
        let r = central_in_block(&e, &bs, c).unwrap();
        assert!(!r.in_some && !r.in_every_containing);
    }
}
