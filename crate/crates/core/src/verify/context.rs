//! Per-algebra cache of everything the checks share.

use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;

use crate::algebra::EffectAlgebra;
use crate::classes::{lattice_witness, orthoalgebra_witness};
use crate::element::ElementSet;
use crate::families::{is_compatible_set, Budget, SearchError};
use crate::structure::{
    blocks_by_compatibility, blocks_by_rdp, central_elements, has_rdp, is_homogeneous, principal_elements,
    sharp_elements, sub_effect_algebras, BlockMethod, BlockSet, RdpWitness,
};

pub(crate) struct Context<'a> {
    pub e: &'a EffectAlgebra,
    pub budget: Budget,
    pub subset_cap: usize,
    homogeneous: OnceCell<Result<(), RdpWitness>>,
    rdp: OnceCell<Result<(), RdpWitness>>,
    subalgebras: OnceCell<Vec<ElementSet>>,
    blocks: OnceCell<BlockSet>,
    blocks_compat: OnceCell<Result<Vec<ElementSet>, SearchError>>,
    sharp: OnceCell<ElementSet>,
    principal: OnceCell<ElementSet>,
    central: OnceCell<ElementSet>,
    compat: RefCell<HashMap<ElementSet, bool>>,
}

impl<'a> Context<'a> {
    pub fn new(e: &'a EffectAlgebra, budget: Budget, subset_cap: usize) -> Self {
        Context {
            e,
            budget,
            subset_cap,
            homogeneous: OnceCell::new(),
            rdp: OnceCell::new(),
            subalgebras: OnceCell::new(),
            blocks: OnceCell::new(),
            blocks_compat: OnceCell::new(),
            sharp: OnceCell::new(),
            principal: OnceCell::new(),
            central: OnceCell::new(),
            compat: RefCell::new(HashMap::new()),
        }
    }

    pub fn homogeneous(&self) -> Result<(), RdpWitness> {
        *self.homogeneous.get_or_init(|| is_homogeneous(self.e))
    }

    pub fn rdp(&self) -> Result<(), RdpWitness> {
        *self.rdp.get_or_init(|| has_rdp(self.e))
    }

    pub fn is_orthoalgebra(&self) -> bool {
        orthoalgebra_witness(self.e).is_none()
    }

    pub fn is_lattice(&self) -> bool {
        lattice_witness(self.e).is_none()
    }

    pub fn subalgebras(&self) -> &[ElementSet] {
        self.subalgebras.get_or_init(|| sub_effect_algebras(self.e))
    }

    /// Blocks as maximal RDP sub-effect algebras.
    pub fn blocks(&self) -> &BlockSet {
        self.blocks.get_or_init(|| BlockSet {
            blocks: blocks_by_rdp(self.e),
            method: BlockMethod::RdpMaximal,
        })
    }

    pub fn blocks_by_compatibility(&self) -> Result<&[ElementSet], SearchError> {
        self.blocks_compat
            .get_or_init(|| blocks_by_compatibility(self.e, self.budget))
            .as_deref()
            .map_err(|e| *e)
    }

    pub fn sharp(&self) -> ElementSet {
        *self.sharp.get_or_init(|| sharp_elements(self.e))
    }

    pub fn principal(&self) -> ElementSet {
        *self.principal.get_or_init(|| principal_elements(self.e))
    }

    pub fn central(&self) -> ElementSet {
        *self.central.get_or_init(|| central_elements(self.e))
    }

    /// Whether `m` is compatible, memoized.
    pub fn compatible(&self, m: &ElementSet) -> Result<bool, SearchError> {
        if let Some(&hit) = self.compat.borrow().get(m) {
            return Ok(hit);
        }
        let got = is_compatible_set(self.e, m, self.budget)?.is_some();
        self.compat.borrow_mut().insert(*m, got);
        Ok(got)
    }

    /// Every subset with `1..=subset_cap` elements, in lexicographic id
    /// order.
    pub fn small_subsets(&self) -> Vec<ElementSet> {
        small_subsets(&self.e.carrier(), self.subset_cap)
    }
}

pub(crate) fn small_subsets(within: &ElementSet, cap: usize) -> Vec<ElementSet> {
    fn go(items: &[crate::ElementId], start: usize, cap: usize, current: &mut Vec<crate::ElementId>, out: &mut Vec<ElementSet>) {
        if !current.is_empty() {
            out.push(current.iter().copied().collect());
        }
        if current.len() == cap {
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            go(items, i + 1, cap, current, out);
            current.pop();
        }
    }
    let items = within.to_vec();
    let mut out = Vec::new();
    go(&items, 0, cap, &mut Vec::new(), &mut out);
    out
}
