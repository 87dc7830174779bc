//! Rebuilds the worked examples from their defining relations and checks
//! them against the frozen catalog tables.

use std::collections::BTreeMap;

use efa_core::construct::{catalog, enumerate_size};
use efa_core::iso::find_isomorphism;
use efa_core::structure::{has_rdp, is_homogeneous};
use efa_core::EffectAlgebra;

/// An MV block: a product of chains, one per atom, with the given heights.
struct Block {
    atoms: &'static [&'static str],
    top: &'static [usize],
    /// Atoms the block shares with other blocks.
    shared: &'static [&'static str],
}

impl Block {
    fn vectors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for &h in self.top {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=h).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn word(&self, v: &[usize]) -> String {
        self.atoms
            .iter()
            .zip(v)
            .filter(|(_, &k)| k > 0)
            .map(|(a, k)| format!("{a}{k}"))
            .collect::<Vec<_>>()
            .join("+")
    }

    fn on_shared(&self, v: &[usize]) -> bool {
        self.atoms.iter().zip(v).all(|(a, &k)| k == 0 || self.shared.contains(a))
    }

    /// Elements built from shared atoms, and their complements, get a
    /// global key; everything else is private to the block.
    fn key(&self, tag: &str, v: &[usize]) -> String {
        let rest: Vec<usize> = self.top.iter().zip(v).map(|(t, k)| t - k).collect();
        if v.iter().all(|&k| k == 0) {
            "0".into()
        } else if rest.iter().all(|&k| k == 0) {
            "1".into()
        } else if self.on_shared(v) {
            self.word(v)
        } else if self.on_shared(&rest) {
            format!("({})'", self.word(&rest))
        } else {
            format!("{tag}:{}", self.word(v))
        }
    }
}

/// The pasting of `blocks` along their shared elements.
fn paste(blocks: &[Block]) -> EffectAlgebra {
    let mut names: Vec<String> = Vec::new();
    let mut sums: BTreeMap<(String, String), String> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        let tag = format!("B{i}");
        let vs = b.vectors();
        for v in &vs {
            let k = b.key(&tag, v);
            if !names.contains(&k) {
                names.push(k);
            }
        }
        for v in &vs {
            for w in &vs {
                let s: Vec<usize> = v.iter().zip(w).map(|(x, y)| x + y).collect();
                if s.iter().zip(b.top).all(|(x, t)| x <= t) {
                    let (kv, kw) = (b.key(&tag, v), b.key(&tag, w));
                    if kv == "0" || kw == "0" || kv > kw {
                        continue;
                    }
                    let ks = b.key(&tag, &s);
                    let prev = sums.insert((kv, kw), ks.clone());
                    assert!(prev.is_none_or(|p| p == ks), "pasting is inconsistent");
                }
            }
        }
    }
    let entries: Vec<(String, String, String)> = sums.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    EffectAlgebra::build(&names, "0", "1", &entries).expect("pasting is an effect algebra")
}

#[test]
fn l18_is_the_pasting_of_two_mv_algebras() {
    let e = paste(&[
        Block {
            atoms: &["a", "b", "c"],
            top: &[1, 1, 2],
            shared: &["c"],
        },
        Block {
            atoms: &["c", "d", "e"],
            top: &[2, 1, 1],
            shared: &["c"],
        },
    ]);
    assert_eq!(e.len(), 18);
    assert!(find_isomorphism(&e, &catalog::l18()).is_some());
}

#[test]
fn gen18_is_the_pasting_of_three_blocks() {
    let e = paste(&[
        Block {
            atoms: &["a", "b", "c"],
            top: &[1, 1, 1],
            shared: &["a", "c"],
        },
        Block {
            atoms: &["a", "e", "f"],
            top: &[1, 1, 1],
            shared: &["a", "e"],
        },
        Block {
            atoms: &["c", "d", "e"],
            top: &[1, 2, 1],
            shared: &["c", "e"],
        },
    ]);
    assert_eq!(e.len(), 18);
    assert!(find_isomorphism(&e, &catalog::gen18()).is_some());
}

#[test]
fn r6_is_the_unique_six_element_algebra_from_its_relations() {
    // two atoms x, y with x ⊕ x ⊕ x = x ⊕ y ⊕ y = 1
    let satisfies = |e: &EffectAlgebra| {
        let atoms = e.atoms().to_vec();
        let three = |x, y, z| e.sum(x, y).and_then(|s| e.sum(s, z)) == Some(e.one());
        atoms.len() == 2
            && [(atoms[0], atoms[1]), (atoms[1], atoms[0])]
                .into_iter()
                .any(|(x, y)| three(x, x, x) && three(x, y, y))
    };
    let matches: Vec<_> = enumerate_size(6).unwrap().into_iter().filter(satisfies).collect();
    assert_eq!(matches.len(), 1);
    let r6 = catalog::r6();
    assert!(satisfies(&r6));
    assert!(find_isomorphism(&matches[0], &r6).is_some());
    assert!(has_rdp(&r6).is_err() && is_homogeneous(&r6).is_err());
}

#[test]
fn wright_triangle_is_the_sharp_part_of_gen18() {
    let w = catalog::wright();
    assert_eq!(w.len(), 14);
    let g = catalog::gen18();
    for name in ["d", "d'", "c+d", "d+e"] {
        assert!(w.id(name).is_none() && g.id(name).is_some());
    }
}
