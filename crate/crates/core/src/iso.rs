//! Isomorphism search between finite effect algebras.

use crate::algebra::EffectAlgebra;
use crate::element::ElementId;

/// Cheap isomorphism invariant of a single element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) struct Signature {
    below: usize,
    above: usize,
    orthogonal: usize,
    self_orthogonal: bool,
    atoms_below: usize,
}

pub(crate) fn signatures(e: &EffectAlgebra) -> Vec<Signature> {
    let atoms = e.atoms();
    e.elements()
        .map(|x| Signature {
            below: e.down(x).len(),
            above: e.up(x).len(),
            orthogonal: e.orthogonal(x).len(),
            self_orthogonal: e.perp(x, x),
            atoms_below: e.down(x).intersection(&atoms).len(),
        })
        .collect()
}

/// A bijection `φ: E → F` with `φ(0) = 0`, `φ(1) = 1` and
/// `a ⊕ b = c ⟺ φ(a) ⊕ φ(b) = φ(c)`, indexed by the ids of `E`.
///
/// Among all isomorphisms the lexicographically least image sequence
/// `(φ(#0), φ(#1), …)` is returned.
pub fn find_isomorphism(e: &EffectAlgebra, f: &EffectAlgebra) -> Option<Vec<ElementId>> {
    if e.len() != f.len() {
        return None;
    }
    let se = signatures(e);
    let sf = signatures(f);
    let mut a = se.clone();
    let mut b = sf.clone();
    a.sort();
    b.sort();
    if a != b || e.canonical_entries().len() != f.canonical_entries().len() {
        return None;
    }
    let mut search = IsoSearch {
        e,
        f,
        se,
        sf,
        map: vec![None; e.len()],
        inv: vec![None; f.len()],
        order: e.elements().collect(),
    };
    if search.assign(0) {
        let map: Vec<ElementId> = search.map.iter().map(|x| x.expect("complete")).collect();
        debug_assert!(is_isomorphism(e, f, &map));
        Some(map)
    } else {
        None
    }
}

/// Checks every defining condition of an isomorphism directly.
pub fn is_isomorphism(e: &EffectAlgebra, f: &EffectAlgebra, map: &[ElementId]) -> bool {
    if map.len() != e.len() || e.len() != f.len() {
        return false;
    }
    let mut hit = vec![false; f.len()];
    for &y in map {
        if y.index() >= f.len() || std::mem::replace(&mut hit[y.index()], true) {
            return false;
        }
    }
    if map[e.zero().index()] != f.zero() || map[e.one().index()] != f.one() {
        return false;
    }
    e.elements().all(|a| {
        e.elements().all(|b| {
            let lhs = e.sum(a, b).map(|c| map[c.index()]);
            lhs == f.sum(map[a.index()], map[b.index()])
        })
    })
}

struct IsoSearch<'a> {
    e: &'a EffectAlgebra,
    f: &'a EffectAlgebra,
    se: Vec<Signature>,
    sf: Vec<Signature>,
    map: Vec<Option<ElementId>>,
    inv: Vec<Option<ElementId>>,
    order: Vec<ElementId>,
}

impl IsoSearch<'_> {
    fn assign(&mut self, pos: usize) -> bool {
        let Some(&x) = self.order.get(pos) else { return true };
        let fixed = if x == self.e.zero() {
            Some(self.f.zero())
        } else if x == self.e.one() {
            Some(self.f.one())
        } else {
            None
        };
        for y in self.f.elements() {
            if fixed.is_some_and(|z| z != y) || self.inv[y.index()].is_some() {
                continue;
            }
            if self.se[x.index()] != self.sf[y.index()] {
                continue;
            }
            self.map[x.index()] = Some(y);
            self.inv[y.index()] = Some(x);
            if self.consistent(x, y) && self.assign(pos + 1) {
                return true;
            }
            self.map[x.index()] = None;
            self.inv[y.index()] = None;
        }
        false
    }

    fn consistent(&self, x: ElementId, y: ElementId) -> bool {
        for z in self.e.elements() {
            let Some(fz) = self.map[z.index()] else { continue };
            match (self.e.sum(x, z), self.f.sum(y, fz)) {
                (None, None) => {}
                (Some(w), Some(v)) => {
                    if let Some(fw) = self.map[w.index()] {
                        if fw != v {
                            return false;
                        }
                    }
                    if let Some(iv) = self.inv[v.index()] {
                        if iv != w {
                            return false;
                        }
                    }
                }
                _ => return false,
            }
            // `x` as a sum of two mapped elements, in either direction
            if let Some(r) = self.e.try_ominus(x, z) {
                if let Some(fr) = self.map[r.index()] {
                    if self.f.sum(fz, fr) != Some(y) {
                        return false;
                    }
                }
            }
            if let Some(s) = self.f.try_ominus(y, fz) {
                if let Some(is) = self.inv[s.index()] {
                    if self.e.sum(z, is) != Some(x) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
