//! Blocks: maximal sub-effect algebras with the Riesz decomposition
//! property.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use super::rdp::{has_rdp_within, is_homogeneous};
use super::StructureError;
use crate::algebra::EffectAlgebra;
use crate::construct::generated_subalgebra;
use crate::element::ElementSet;
use crate::families::{enumerate_families, Budget, OrthogonalFamily, SearchError};

/// How a [`BlockSet`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockMethod {
    /// Maximal RDP members of the full sub-effect algebra lattice.
    RdpMaximal,
    /// Maximal internally compatible sets containing 1, confirmed equal
    /// to the RDP-maximal sub-effect algebras.
    InternallyCompatibleMaximal,
}

/// Blocks sorted by their element sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    pub blocks: Vec<ElementSet>,
    pub method: BlockMethod,
}

impl BlockSet {
    pub fn union(&self) -> ElementSet {
        self.blocks.iter().fold(ElementSet::new(), |acc, b| acc.union(b))
    }

    /// `K(E)`, the intersection of all blocks.
    pub fn intersection(&self) -> ElementSet {
        let mut it = self.blocks.iter();
        let first = *it.next().expect("every algebra has a block");
        it.fold(first, |acc, b| acc.intersection(b))
    }

    pub fn containing(&self, x: crate::ElementId) -> impl Iterator<Item = &ElementSet> {
        self.blocks.iter().filter(move |b| b.contains(x))
    }
}

/// Every sub-effect algebra of `e`, sorted.
///
/// Breadth-first over one-element extensions followed by closure, so every
/// sub-effect algebra is reached from `{0, 1}`.
pub fn sub_effect_algebras(e: &EffectAlgebra) -> Vec<ElementSet> {
    let bottom = generated_subalgebra(e, &ElementSet::new());
    let mut seen: HashSet<ElementSet> = HashSet::from([bottom]);
    let mut queue = VecDeque::from([bottom]);
    while let Some(s) = queue.pop_front() {
        for x in e.carrier().difference(&s).iter() {
            let mut t = s;
            t.insert(x);
            let t = generated_subalgebra(e, &t);
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<ElementSet> = seen.into_iter().collect();
    out.sort();
    out
}

fn maximal(sets: Vec<ElementSet>) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t)))
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    out.sort();
    out
}

/// Maximal RDP sub-effect algebras by exhaustive enumeration.
pub fn blocks_by_rdp(e: &EffectAlgebra) -> Vec<ElementSet> {
    let rdp: Vec<ElementSet> = sub_effect_algebras(e)
        .into_par_iter()
        .filter(|s| has_rdp_within(e, s).is_ok())
        .collect();
    maximal(rdp)
}

/// Set of all sub-sums of a family.
pub fn subset_sums(e: &EffectAlgebra, family: &OrthogonalFamily) -> ElementSet {
    let mut sums = ElementSet::singleton(e.zero());
    for &c in family.members() {
        let mut next = sums;
        for s in sums.iter() {
            next.insert(e.sum(s, c).expect("sub-sums of an orthogonal family are orthogonal"));
        }
        sums = next;
    }
    sums
}

/// Maximal internally compatible sets containing 1.
///
/// Such a set has a cover inside itself whose sum is 1; splitting the
/// members into atoms keeps a cover and only adds sub-sums. So the maximal
/// sets are exactly the maximal sub-sum sets of atomic decompositions of 1.
pub fn blocks_by_compatibility(e: &EffectAlgebra, budget: Budget) -> Result<Vec<ElementSet>, SearchError> {
    if e.len() == 1 {
        return Ok(vec![e.carrier()]);
    }
    let mut meter = budget.meter();
    let mut found = BTreeSet::new();
    for fam in enumerate_families(e, &e.atoms(), None) {
        meter.tick()?;
        if fam.total() == e.one() {
            found.insert(subset_sums(e, &fam));
        }
    }
    Ok(maximal(found.into_iter().collect()))
}

/// The blocks of `e`. For homogeneous `e` both characterizations are
/// computed and must agree.
pub fn blocks(e: &EffectAlgebra, budget: Budget) -> Result<BlockSet, StructureError> {
    let by_rdp = blocks_by_rdp(e);
    if is_homogeneous(e).is_err() {
        return Ok(BlockSet {
            blocks: by_rdp,
            method: BlockMethod::RdpMaximal,
        });
    }
    let by_compat = blocks_by_compatibility(e, budget)?;
    if by_compat != by_rdp {
        return Err(StructureError::BlockMismatch {
            by_rdp,
            by_compatibility: by_compat,
        });
    }
    Ok(BlockSet {
        blocks: by_rdp,
        method: BlockMethod::InternallyCompatibleMaximal,
    })
}

/// Whether the range of every orthogonal family with three members lies in
/// some block. Equivalent to homogeneity.
pub fn is_homogeneous_via_blocks(e: &EffectAlgebra, blocks: &BlockSet) -> bool {
    e.elements().all(|a| {
        e.orthogonal(a).iter().all(|b| {
            let ab = e.sum(a, b).expect("orthogonal");
            e.orthogonal(ab).iter().all(|c| {
                let range = ElementSet::from_iter([a, b, c]);
                blocks.blocks.iter().any(|bl| range.is_subset(bl))
            })
        })
    })
}
