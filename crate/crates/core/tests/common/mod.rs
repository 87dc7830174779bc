//! Brute-force reference implementations used as test oracles. They read
//! only the raw sum table through `EffectAlgebra::sum` and recompute
//! everything else from scratch.

#![allow(dead_code)]

use std::collections::BTreeSet;

use efa_core::{EffectAlgebra, ElementId};

pub fn leq(e: &EffectAlgebra, a: ElementId, b: ElementId) -> bool {
    e.elements().any(|c| e.sum(a, c) == Some(b))
}

pub fn ominus(e: &EffectAlgebra, b: ElementId, a: ElementId) -> Option<ElementId> {
    e.elements().find(|&c| e.sum(a, c) == Some(b))
}

pub fn complement(e: &EffectAlgebra, a: ElementId) -> ElementId {
    e.elements().find(|&c| e.sum(a, c) == Some(e.one())).expect("every element has a complement")
}

/// Iterates `M ↦ {x, y ⊖ x : x ≤ y, y'}` from `M` and unions the stages.
pub fn closure(e: &EffectAlgebra, m: &BTreeSet<ElementId>) -> BTreeSet<ElementId> {
    let mut all = m.clone();
    let mut stage = m.clone();
    loop {
        let mut next = BTreeSet::new();
        for &y in &stage {
            let yc = complement(e, y);
            for x in e.elements() {
                if leq(e, x, y) && leq(e, x, yc) {
                    next.insert(x);
                    next.insert(ominus(e, y, x).expect("x ≤ y"));
                }
            }
        }
        if next.is_subset(&all) {
            return all;
        }
        all.extend(next.iter().copied());
        stage = next;
    }
}

/// All subset sums of `family`, by explicit enumeration of index masks.
fn subset_sums(e: &EffectAlgebra, family: &[ElementId]) -> BTreeSet<ElementId> {
    (0u32..1 << family.len())
        .map(|mask| {
            family
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .try_fold(e.zero(), |acc, (_, &x)| e.sum(acc, x))
                .expect("subfamilies of an orthogonal family are orthogonal")
        })
        .collect()
}

/// Whether some orthogonal family with members in `within` has every
/// element of `m` among its subset sums. Families are nondecreasing
/// sequences of nonzero elements of length below `|E|`.
pub fn cover_exists(e: &EffectAlgebra, m: &BTreeSet<ElementId>, within: &BTreeSet<ElementId>) -> bool {
    let pool: Vec<ElementId> = within.iter().copied().filter(|&x| x != e.zero()).collect();
    fn go(e: &EffectAlgebra, m: &BTreeSet<ElementId>, pool: &[ElementId], from: usize, total: ElementId, fam: &mut Vec<ElementId>) -> bool {
        if m.is_subset(&subset_sums(e, fam)) {
            return true;
        }
        if fam.len() + 1 >= e.len() {
            return false;
        }
        for i in from..pool.len() {
            if let Some(t) = e.sum(total, pool[i]) {
                fam.push(pool[i]);
                if go(e, m, pool, i, t, fam) {
                    return true;
                }
                fam.pop();
            }
        }
        false
    }
    go(e, m, &pool, 0, e.zero(), &mut Vec::new())
}

/// Pairs `a < b` with no element strictly between.
pub fn cover_pairs(e: &EffectAlgebra) -> BTreeSet<(usize, usize)> {
    let n = e.len();
    let lt: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a != b && leq(e, ElementId::new(a), ElementId::new(b))).collect())
        .collect();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if lt[a][b] && !(0..n).any(|c| lt[a][c] && lt[c][b]) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Sharp means 0 is the only common lower bound of `a` and `a'`.
pub fn is_sharp(e: &EffectAlgebra, a: ElementId) -> bool {
    let ac = complement(e, a);
    e.elements().filter(|&x| leq(e, x, a) && leq(e, x, ac)).count() == 1
}

/// Checks the four axioms directly on a square table of optional sums
/// over `0..n`, with `0` the zero and `n - 1` the unit.
pub fn table_is_effect_algebra(table: &[Option<usize>], n: usize) -> bool {
    let s = |a: usize, b: usize| table[a * n + b];
    let one = n - 1;
    for a in 0..n {
        for b in 0..n {
            if s(a, b) != s(b, a) {
                return false;
            }
            for c in 0..n {
                let left = s(a, b).and_then(|ab| s(ab, c));
                let right = s(b, c).and_then(|bc| s(a, bc));
                if left != right {
                    return false;
                }
            }
        }
        if (0..n).filter(|&b| s(a, b) == Some(one)).count() != 1 {
            return false;
        }
        if s(one, a).is_some() && a != 0 {
            return false;
        }
    }
    true
}
