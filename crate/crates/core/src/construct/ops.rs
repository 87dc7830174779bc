//! New algebras from old: products, horizontal sums, intervals and
//! generated sub-effect algebras.

use crate::algebra::{BuildError, DomainError, EffectAlgebra};
use crate::element::{ElementId, ElementSet, MAX_ELEMENTS};

/// Componentwise sum on pairs; names are `x|y`.
pub fn direct_product(e: &EffectAlgebra, f: &EffectAlgebra) -> Result<EffectAlgebra, BuildError> {
    let (n, m) = (e.len(), f.len());
    if n * m > MAX_ELEMENTS {
        return Err(BuildError::TooLarge(n * m));
    }
    let id = |a: ElementId, b: ElementId| ElementId::new(a.index() * m + b.index());
    let mut names = Vec::with_capacity(n * m);
    for a in e.elements() {
        for b in f.elements() {
            names.push(format!("{}|{}", e.name(a), f.name(b)));
        }
    }
    let size = n * m;
    let mut table = vec![None; size * size];
    for a1 in e.elements() {
        for b1 in f.elements() {
            for a2 in e.orthogonal(a1).iter() {
                let sa = e.sum(a1, a2).expect("orthogonal");
                for b2 in f.orthogonal(b1).iter() {
                    let sb = f.sum(b1, b2).expect("orthogonal");
                    table[id(a1, b1).index() * size + id(a2, b2).index()] = Some(id(sa, sb));
                }
            }
        }
    }
    EffectAlgebra::from_table(names, id(e.zero(), f.zero()), id(e.one(), f.one()), table)
}

/// Disjoint union with the zeros and the units identified. No sum mixes
/// the two summands except through zero.
///
/// Names are kept; if a non-bound name of `f` clashes with a name of `e`,
/// the middle elements are prefixed `1:` and `2:`.
pub fn horizontal_sum(e: &EffectAlgebra, f: &EffectAlgebra) -> Result<EffectAlgebra, BuildError> {
    if e.len() < 2 || f.len() < 2 {
        return Err(BuildError::Axioms(vec![crate::algebra::AxiomViolation {
            axiom: crate::algebra::Axiom::Table,
            witness: vec![],
            message: "horizontal sum needs summands with at least two elements".into(),
        }]));
    }
    let mid_e: Vec<ElementId> = e.elements().filter(|&x| x != e.zero() && x != e.one()).collect();
    let mid_f: Vec<ElementId> = f.elements().filter(|&x| x != f.zero() && x != f.one()).collect();
    let clash = mid_f
        .iter()
        .any(|&y| e.id(f.name(y)).is_some() || f.name(y) == e.name(e.zero()) || f.name(y) == e.name(e.one()));
    let size = 2 + mid_e.len() + mid_f.len();
    if size > MAX_ELEMENTS {
        return Err(BuildError::TooLarge(size));
    }

    // ids: 0 = zero, then mid_e, then mid_f, last = one
    let zero = ElementId::new(0);
    let one = ElementId::new(size - 1);
    let mut names = vec![e.name(e.zero()).to_string()];
    let tag = |p: &str, s: &str| if clash { format!("{p}:{s}") } else { s.to_string() };
    names.extend(mid_e.iter().map(|&x| tag("1", e.name(x))));
    names.extend(mid_f.iter().map(|&x| tag("2", f.name(x))));
    names.push(e.name(e.one()).to_string());

    let mut map_e = vec![zero; e.len()];
    let mut map_f = vec![zero; f.len()];
    map_e[e.one().index()] = one;
    map_f[f.one().index()] = one;
    for (i, &x) in mid_e.iter().enumerate() {
        map_e[x.index()] = ElementId::new(1 + i);
    }
    for (i, &y) in mid_f.iter().enumerate() {
        map_f[y.index()] = ElementId::new(1 + mid_e.len() + i);
    }

    let mut table = vec![None; size * size];
    for (alg, map) in [(e, &map_e), (f, &map_f)] {
        for a in alg.elements() {
            for b in alg.orthogonal(a).iter() {
                let c = alg.sum(a, b).expect("orthogonal");
                table[map[a.index()].index() * size + map[b.index()].index()] = Some(map[c.index()]);
            }
        }
    }
    EffectAlgebra::from_table(names, zero, one, table)
}

/// `[0, a]_E`: the interval below `a` with `a` as the unit.
pub fn interval_algebra(e: &EffectAlgebra, a: ElementId) -> Result<EffectAlgebra, DomainError> {
    if a == e.zero() {
        return Err(DomainError::ZeroInterval);
    }
    e.restrict_with_top(e.down(a), a)
        .map_err(|err| DomainError::Precondition(format!("interval below {} is invalid: {err}", e.name(a))))
}

/// Least superset of `s ∪ {1}` closed under `⊖` of comparable pairs.
pub fn generated_subalgebra(e: &EffectAlgebra, s: &ElementSet) -> ElementSet {
    let mut current = *s;
    current.insert(e.one());
    loop {
        let mut next = current;
        for a in current.iter() {
            for b in e.down(a).intersection(&current).iter() {
                next.insert(e.try_ominus(a, b).expect("b ≤ a"));
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog;
    use crate::iso::find_isomorphism;

    #[test]
    fn product_unit_law() {
        let triv = catalog::trivial();
        for e in [catalog::r6(), catalog::boolean(2), catalog::chain(3)] {
            let p = direct_product(&e, &triv).unwrap();
            assert!(find_isomorphism(&p, &e).is_some());
        }
    }

    #[test]
    fn boolean_products() {
        let p = direct_product(&catalog::boolean(1), &catalog::boolean(1)).unwrap();
        assert!(find_isomorphism(&p, &catalog::boolean(2)).is_some());
        let p = direct_product(&catalog::boolean(2), &catalog::boolean(1)).unwrap();
        assert!(find_isomorphism(&p, &catalog::boolean(3)).is_some());
        assert_eq!(p.id("a|0").map(|x| p.name(x).to_string()), Some("a|0".to_string()));
    }

    #[test]
    fn horizontal_sums() {
        let b2 = catalog::boolean(2);
        let mo2 = horizontal_sum(&b2, &b2).unwrap();
        assert_eq!(mo2.len(), 6);
        assert!(mo2.id("1:a").is_some() && mo2.id("2:a").is_some());
        for e in [catalog::r6(), catalog::l18(), b2.clone()] {
            let h = horizontal_sum(&e, &catalog::chain(1)).unwrap();
            assert!(find_isomorphism(&h, &e).is_some());
        }
        let h = horizontal_sum(&b2, &catalog::chain(2)).unwrap();
        assert_eq!(h.len(), 5);
        assert!(horizontal_sum(&b2, &catalog::trivial()).is_err());
    }

    #[test]
    fn intervals() {
        let l18 = catalog::l18();
        let full = interval_algebra(&l18, l18.one()).unwrap();
        assert!(find_isomorphism(&full, &l18).is_some());
        let cc = interval_algebra(&l18, l18.id("c+c").unwrap()).unwrap();
        assert_eq!(cc.names(), &["0", "c", "c+c"]);
        assert!(find_isomorphism(&cc, &catalog::chain(2)).is_some());
        assert!(interval_algebra(&l18, l18.zero()).is_err());

        let g = catalog::gen18();
        let dd = interval_algebra(&g, g.id("d+d").unwrap()).unwrap();
        for name in ["0", "d", "d+d"] {
            assert!(dd.id(name).is_some());
        }
    }

    #[test]
    fn generated() {
        let r6 = catalog::r6();
        assert_eq!(generated_subalgebra(&r6, &ElementSet::new()), r6.set_of(&["0", "1"]));
        assert_eq!(generated_subalgebra(&r6, &r6.set_of(&["a"])), r6.set_of(&["0", "a", "a'", "1"]));
        let l18 = catalog::l18();
        assert_eq!(
            generated_subalgebra(&l18, &l18.set_of(&["c+c"])),
            l18.set_of(&["0", "c+c", "(c+c)'", "1"])
        );
    }
}
