mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use efa_core::construct::{direct_product, horizontal_sum};
use efa_core::families::{closure, find_cover};
use efa_core::iso::{find_isomorphism, is_isomorphism};
use efa_core::structure::{central_elements, is_homogeneous, principal_elements, sharp_elements};
use efa_core::verify::{corpus, Instance};
use efa_core::{format, Budget, EffectAlgebra, ElementId, ElementSet};
use proptest::prelude::*;
use proptest::sample::Index;

fn pool() -> &'static [Instance] {
    static POOL: OnceLock<Vec<Instance>> = OnceLock::new();
    POOL.get_or_init(|| {
        corpus(5)
            .unwrap()
            .into_iter()
            .filter(|i| i.algebra.len() <= 18)
            .collect()
    })
}

fn pick(ix: &Index) -> &'static EffectAlgebra {
    &pool()[ix.index(pool().len())].algebra
}

fn subset(e: &EffectAlgebra, picks: &[Index]) -> ElementSet {
    picks.iter().map(|p| ElementId::new(p.index(e.len()))).collect()
}

/// `e` with its elements listed in the order `perm`.
fn relabel(e: &EffectAlgebra, perm: &[usize]) -> EffectAlgebra {
    let entries: Vec<(String, String, String)> = e
        .canonical_entries()
        .into_iter()
        .map(|(a, b, c)| (e.name(a).to_string(), e.name(b).to_string(), e.name(c).to_string()))
        .collect();
    let names: Vec<&str> = perm.iter().map(|&i| e.name(ElementId::new(i))).collect();
    EffectAlgebra::build(&names, e.name(e.zero()), e.name(e.one()), &entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_extensive_idempotent_and_monotone(
        ix in any::<Index>(),
        m in prop::collection::vec(any::<Index>(), 0..4),
        extra in any::<Index>(),
    ) {
        let e = pick(&ix);
        let m = subset(e, &m);
        let cl = closure(e, &m);
        prop_assert!(m.is_subset(&cl));
        prop_assert_eq!(closure(e, &cl), cl);
        let mut bigger = m;
        bigger.insert(ElementId::new(extra.index(e.len())));
        prop_assert!(cl.is_subset(&closure(e, &bigger)));
        let naive: BTreeSet<ElementId> = m.iter().collect();
        prop_assert_eq!(cl.iter().collect::<BTreeSet<_>>(), common::closure(e, &naive));
    }

    #[test]
    fn cover_certificates_verify(ix in any::<Index>(), m in prop::collection::vec(any::<Index>(), 1..5)) {
        let e = pick(&ix);
        let m = subset(e, &m);
        if let Some(cert) = find_cover(e, &m, &e.carrier(), Budget::default()).unwrap() {
            prop_assert!(cert.verify(e));
            prop_assert!(m.is_subset(&cert.covered()));
            for (x, idx) in &cert.assignment {
                prop_assert_eq!(cert.family.sub_sum(e, idx), Some(*x));
            }
        }
    }

    #[test]
    fn serialization_round_trips(ix in any::<Index>()) {
        let e = pick(&ix);
        let text = format::serialize(e);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(back.names(), e.names());
        let ident: Vec<ElementId> = e.elements().collect();
        prop_assert!(is_isomorphism(e, &back, &ident));
        prop_assert_eq!(format::serialize(&back), text);
    }

    #[test]
    fn relabelled_copies_are_found_isomorphic(ix in any::<Index>(), seed in any::<u64>()) {
        let e = pick(&ix);
        let mut perm: Vec<usize> = (0..e.len()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let f = relabel(e, &perm);
        let map = find_isomorphism(e, &f);
        prop_assert!(map.is_some());
        prop_assert!(is_isomorphism(e, &f, &map.unwrap()));
        prop_assert_eq!(sharp_elements(&f).len(), sharp_elements(e).len());
    }

    #[test]
    fn distinguished_sets_are_nested(ix in any::<Index>()) {
        let e = pick(&ix);
        let c = central_elements(e);
        let p = principal_elements(e);
        let s = sharp_elements(e);
        prop_assert!(c.is_subset(&p) && p.is_subset(&s));
        for x in s.iter() {
            prop_assert!(common::is_sharp(e, x));
        }
    }

    #[test]
    fn constructions_preserve_homogeneity(a in any::<Index>(), b in any::<Index>()) {
        let (e, f) = (pick(&a), pick(&b));
        if is_homogeneous(e).is_ok() && is_homogeneous(f).is_ok() {
            if e.len() * f.len() <= 72 {
                prop_assert!(is_homogeneous(&direct_product(e, f).unwrap()).is_ok());
            }
            if e.len() > 1 && f.len() > 1 {
                let h = horizontal_sum(e, f).unwrap();
                prop_assert_eq!(h.len(), e.len() + f.len() - 2);
                prop_assert!(is_homogeneous(&h).is_ok());
            }
        }
    }
}
