//! Named algebras: the worked examples plus standard parametric families.

use thiserror::Error;

use super::ops::horizontal_sum;
use crate::algebra::EffectAlgebra;
use crate::element::{ElementId, MAX_ELEMENTS};
use crate::format;

const R6: &str = include_str!("../../data/r6.efa");
const L18: &str = include_str!("../../data/l18.efa");
const GEN18: &str = include_str!("../../data/gen18.efa");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
}

fn frozen(text: &str) -> EffectAlgebra {
    format::parse(text).expect("frozen catalog table is valid")
}

/// The one-element algebra, `0 = 1`.
pub fn trivial() -> EffectAlgebra {
    EffectAlgebra::build::<_, &str>(&["0"], "0", "0", &[]).expect("valid")
}

/// The chain `0 < a < 2a < … < n·a = 1` with `n + 1` elements.
pub fn chain(n: usize) -> EffectAlgebra {
    assert!((1..MAX_ELEMENTS).contains(&n), "chain length out of range");
    let name = |k: usize| match k {
        0 => "0".to_string(),
        1 if n > 1 => "a".to_string(),
        k if k == n => "1".to_string(),
        k => format!("{k}a"),
    };
    let names: Vec<String> = (0..=n).map(name).collect();
    let mut table = vec![None; (n + 1) * (n + 1)];
    for i in 0..=n {
        for j in 0..=n - i {
            table[i * (n + 1) + j] = Some(ElementId::new(i + j));
        }
    }
    EffectAlgebra::from_table(names, ElementId::new(0), ElementId::new(n), table).expect("valid")
}

/// The Boolean algebra `2^k`; elements are named by their atoms `a`, `b`, ….
pub fn boolean(k: usize) -> EffectAlgebra {
    assert!((1..=8).contains(&k), "boolean rank out of range");
    let size = 1usize << k;
    let name = |mask: usize| match mask {
        0 => "0".to_string(),
        m if m == size - 1 => "1".to_string(),
        m => (0..k).filter(|i| m & (1 << i) != 0).map(|i| (b'a' + i as u8) as char).collect(),
    };
    let names: Vec<String> = (0..size).map(name).collect();
    let mut table = vec![None; size * size];
    for a in 0..size {
        for b in 0..size {
            if a & b == 0 {
                table[a * size + b] = Some(ElementId::new(a | b));
            }
        }
    }
    EffectAlgebra::from_table(names, ElementId::new(0), ElementId::new(size - 1), table).expect("valid")
}

/// Six elements, atoms `a`, `b`, with `a ⊕ a ⊕ a = a ⊕ b ⊕ b = 1`.
pub fn r6() -> EffectAlgebra {
    frozen(R6)
}

/// Eighteen-element lattice ordered algebra with atoms `a…e` and
/// `a ⊕ b ⊕ c ⊕ c = c ⊕ c ⊕ d ⊕ e = 1`.
pub fn l18() -> EffectAlgebra {
    frozen(L18)
}

/// Eighteen-element homogeneous, non-lattice algebra with atoms `a…f` and
/// `a ⊕ b ⊕ c = c ⊕ d ⊕ d ⊕ e = e ⊕ f ⊕ a = 1`.
pub fn gen18() -> EffectAlgebra {
    frozen(GEN18)
}

/// The sharp elements of [`gen18`]: a 14-element orthoalgebra that is not
/// an orthomodular poset.
pub fn wright() -> EffectAlgebra {
    crate::structure::sharp_subalgebra(&gen18()).expect("gen18 is homogeneous")
}

/// Horizontal sum of `k` copies of `2²`.
pub fn mo(k: usize) -> EffectAlgebra {
    assert!(k >= 1 && 2 * k + 2 <= MAX_ELEMENTS, "mo rank out of range");
    let b2 = boolean(2);
    let mut acc = b2.clone();
    for _ in 1..k {
        acc = horizontal_sum(&acc, &b2).expect("valid");
        let renamed: Vec<String> = (0..acc.len())
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == acc.len() - 1 => "1".to_string(),
                i => format!("{}{}", (b'a' + ((i - 1) / 2) as u8) as char, if i % 2 == 1 { "" } else { "'" }),
            })
            .collect();
        acc = EffectAlgebra::from_table(renamed, acc.zero(), acc.one(), acc.raw_table().to_vec()).expect("valid");
    }
    acc
}

/// Looks an entry up by name.
pub fn catalog(name: &str, params: &[usize]) -> Result<EffectAlgebra, CatalogError> {
    let bad = |reason: &str| CatalogError::BadParams {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let one_param = |lo: usize, hi: usize| -> Result<usize, CatalogError> {
        match params {
            [p] if (lo..=hi).contains(p) => Ok(*p),
            [_] => Err(bad(&format!("parameter must lie in {lo}..={hi}"))),
            _ => Err(bad("expects exactly one parameter")),
        }
    };
    let no_params = || if params.is_empty() { Ok(()) } else { Err(bad("takes no parameters")) };
    match name {
        "trivial" => no_params().map(|_| trivial()),
        "chain" => one_param(1, MAX_ELEMENTS - 1).map(chain),
        "boolean" => one_param(1, 8).map(boolean),
        "mo" => one_param(1, (MAX_ELEMENTS - 2) / 2).map(mo),
        "r6" => no_params().map(|_| r6()),
        "l18" => no_params().map(|_| l18()),
        "gen18" => no_params().map(|_| gen18()),
        "wright" => no_params().map(|_| wright()),
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

/// Known facts about a catalog entry, checked against recomputation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub size: usize,
    pub lattice: Option<bool>,
    pub orthoalgebra: Option<bool>,
    pub homogeneous: Option<bool>,
    pub rdp: Option<bool>,
    pub compatible: Option<bool>,
    pub blocks: Option<usize>,
    pub sharp: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Vec<usize>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn build(&self) -> EffectAlgebra {
        catalog(self.name, &self.params).expect("catalog entries are valid")
    }

    pub fn label(&self) -> String {
        match self.params.as_slice() {
            [] => self.name.to_string(),
            ps => format!(
                "{}({})",
                self.name,
                ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

/// The standing corpus of catalog instances.
pub fn entries() -> Vec<CatalogEntry> {
    let e = |name, params: Vec<usize>, expected| CatalogEntry { name, params, expected };
    let mut out = vec![e(
        "trivial",
        vec![],
        Expected {
            size: 1,
            ..Default::default()
        },
    )];
    for n in 1..=5 {
        out.push(e(
            "chain",
            vec![n],
            Expected {
                size: n + 1,
                lattice: Some(true),
                orthoalgebra: Some(n == 1),
                homogeneous: Some(true),
                rdp: Some(true),
                compatible: Some(true),
                blocks: Some(1),
                sharp: Some(2),
            },
        ));
    }
    for k in 1..=3 {
        out.push(e(
            "boolean",
            vec![k],
            Expected {
                size: 1 << k,
                lattice: Some(true),
                orthoalgebra: Some(true),
                homogeneous: Some(true),
                rdp: Some(true),
                compatible: Some(true),
                blocks: Some(1),
                sharp: Some(1 << k),
            },
        ));
    }
    for k in 2..=3 {
        out.push(e(
            "mo",
            vec![k],
            Expected {
                size: 2 * k + 2,
                lattice: Some(true),
                orthoalgebra: Some(true),
                homogeneous: Some(true),
                rdp: Some(false),
                compatible: Some(false),
                blocks: Some(k),
                sharp: Some(2 * k + 2),
            },
        ));
    }
    out.push(e(
        "r6",
        vec![],
        Expected {
            size: 6,
            orthoalgebra: Some(false),
            homogeneous: Some(false),
            rdp: Some(false),
            compatible: Some(true),
            ..Default::default()
        },
    ));
    out.push(e(
        "l18",
        vec![],
        Expected {
            size: 18,
            lattice: Some(true),
            orthoalgebra: Some(false),
            homogeneous: Some(true),
            rdp: Some(false),
            compatible: Some(false),
            blocks: Some(2),
            sharp: Some(12),
        },
    ));
    out.push(e(
        "gen18",
        vec![],
        Expected {
            size: 18,
            lattice: Some(false),
            orthoalgebra: Some(false),
            homogeneous: Some(true),
            rdp: Some(false),
            compatible: Some(false),
            blocks: Some(3),
            sharp: Some(14),
        },
    ));
    out.push(e(
        "wright",
        vec![],
        Expected {
            size: 14,
            orthoalgebra: Some(true),
            homogeneous: Some(true),
            rdp: Some(false),
            compatible: Some(false),
            blocks: Some(3),
            sharp: Some(14),
            ..Default::default()
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_atoms() {
        assert_eq!(r6().len(), 6);
        assert_eq!(r6().atoms().len(), 2);
        assert_eq!(l18().len(), 18);
        assert_eq!(l18().atoms().len(), 5);
        assert_eq!(gen18().len(), 18);
        assert_eq!(gen18().atoms().len(), 6);
        assert_eq!(chain(1).names(), &["0", "1"]);
        assert_eq!(chain(3).names(), &["0", "a", "2a", "1"]);
        assert_eq!(boolean(2).names(), &["0", "a", "b", "1"]);
        assert_eq!(mo(3).len(), 8);
        assert_eq!(mo(2).names(), &["0", "a", "a'", "b", "b'", "1"]);
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(catalog("nope", &[]), Err(CatalogError::UnknownName(_))));
        assert!(matches!(catalog("chain", &[]), Err(CatalogError::BadParams { .. })));
        assert!(matches!(catalog("r6", &[1]), Err(CatalogError::BadParams { .. })));
        assert!(matches!(catalog("boolean", &[9]), Err(CatalogError::BadParams { .. })));
        assert_eq!(catalog("chain", &[4]).unwrap().len(), 5);
    }

    #[test]
    fn frozen_files_are_canonical() {
        for text in [R6, L18, GEN18] {
            let e = format::parse(text).unwrap();
            let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
            let again: Vec<String> = format::serialize(&e).lines().map(str::to_string).collect();
            assert_eq!(body, again);
        }
    }
}
