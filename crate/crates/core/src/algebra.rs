//! Finite effect algebras given by a partial sum table.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::element::{ElementId, ElementSet, MAX_ELEMENTS};

/// The condition an [`AxiomViolation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// Commutativity of the sum.
    E1,
    /// Associativity of the sum.
    E2,
    /// Existence and uniqueness of the complement.
    E3,
    /// `a + 1` defined forces `a = 0`.
    E4,
    /// Zero must be neutral.
    Zero,
    /// The entry list itself is inconsistent.
    Table,
    /// Cancellativity. Implied by E1-E4, so a hit here means the table
    /// checks above are wrong.
    Cancellation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::E1 => "E1",
            Axiom::E2 => "E2",
            Axiom::E3 => "E3",
            Axiom::E4 => "E4",
            Axiom::Zero => "Zero",
            Axiom::Table => "Table",
            Axiom::Cancellation => "Cancellation",
        };
        f.write_str(s)
    }
}

/// One failed axiom instance; `witness` replays it against the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
    pub message: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("empty element name")]
    EmptyName,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("carrier has {0} elements, limit is {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("carrier is empty")]
    Empty,
    #[error("{} axiom violation(s); first: {}", .0.len(), .0[0])]
    Axioms(Vec<AxiomViolation>),
}

impl BuildError {
    pub fn violations(&self) -> &[AxiomViolation] {
        match self {
            BuildError::Axioms(v) => v,
            _ => &[],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("{b} ⊖ {a} is undefined: {a} is not below {b}")]
    NotBelow { a: String, b: String },
    #[error("interval [0, 0] is not an effect algebra")]
    ZeroInterval,
    #[error("{0}")]
    Precondition(String),
}

/// Upper bound on the number of E2 violations reported by one build.
const MAX_E2_REPORTS: usize = 64;

/// A finite effect algebra `(E; ⊕, 0, 1)`.
///
/// Immutable once built; every constructor validates E1-E4 exhaustively and
/// caches the order, the complement and the orthogonality relation.
#[derive(Clone)]
pub struct EffectAlgebra {
    names: Vec<String>,
    index: HashMap<String, ElementId>,
    zero: ElementId,
    one: ElementId,
    table: Vec<Option<ElementId>>,
    comp: Vec<ElementId>,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
    orth: Vec<ElementSet>,
}

impl fmt::Debug for EffectAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EffectAlgebra")
            .field("names", &self.names)
            .field("zero", &self.name(self.zero))
            .field("one", &self.name(self.one))
            .finish_non_exhaustive()
    }
}

impl EffectAlgebra {
    /// Builds an algebra from element names and defining sum entries.
    ///
    /// Entries are mirrored and the zero row is implied; an entry that
    /// contradicts an earlier one (or the zero row) is a `Table` violation.
    pub fn build<S, T>(names: &[S], zero: &str, one: &str, entries: &[(T, T, T)]) -> Result<Self, BuildError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| BuildError::UnknownName(s.to_string()));
        let zero = lookup(zero)?;
        let one = lookup(one)?;
        let n = names.len();
        let mut table = vec![None; n * n];
        for x in 0..n {
            table[zero.index() * n + x] = Some(ElementId::new(x));
            table[x * n + zero.index()] = Some(ElementId::new(x));
        }
        let mut violations = Vec::new();
        for (a, b, c) in entries {
            let (a, b, c) = (lookup(a.as_ref())?, lookup(b.as_ref())?, lookup(c.as_ref())?);
            for (x, y) in [(a, b), (b, a)] {
                let slot = &mut table[x.index() * n + y.index()];
                match *slot {
                    Some(old) if old != c => {
                        violations.push(AxiomViolation {
                            axiom: Axiom::Table,
                            witness: vec![x, y, c],
                            message: format!(
                                "{} ⊕ {} given as both {} and {}",
                                names[x.index()],
                                names[y.index()],
                                names[old.index()],
                                names[c.index()]
                            ),
                        });
                        break;
                    }
                    _ => *slot = Some(c),
                }
            }
        }
        if !violations.is_empty() {
            return Err(BuildError::Axioms(violations));
        }
        Self::from_table(names, zero, one, table)
    }

    /// Builds an algebra from a complete `n × n` table (row-major,
    /// `table[a * n + b] = a ⊕ b`).
    pub fn from_table(
        names: Vec<String>,
        zero: ElementId,
        one: ElementId,
        table: Vec<Option<ElementId>>,
    ) -> Result<Self, BuildError> {
        let index = index_names(&names)?;
        let n = names.len();
        assert_eq!(table.len(), n * n, "table must be n × n");
        assert!(zero.index() < n && one.index() < n);
        let violations = validate_table(&names, zero, one, &table);
        if !violations.is_empty() {
            return Err(BuildError::Axioms(violations));
        }

        let ids: Vec<ElementId> = (0..n).map(ElementId::new).collect();
        let mut comp = vec![zero; n];
        let mut down = vec![ElementSet::new(); n];
        let mut up = vec![ElementSet::new(); n];
        let mut orth = vec![ElementSet::new(); n];
        for &a in &ids {
            for &b in &ids {
                if let Some(c) = table[a.index() * n + b.index()] {
                    orth[a.index()].insert(b);
                    down[c.index()].insert(a);
                    up[a.index()].insert(c);
                    if c == one {
                        comp[a.index()] = b;
                    }
                }
            }
        }
        let algebra = EffectAlgebra {
            names,
            index,
            zero,
            one,
            table,
            comp,
            down,
            up,
            orth,
        };
        let cancel = algebra.cancellation_violations();
        if !cancel.is_empty() {
            return Err(BuildError::Axioms(cancel));
        }
        Ok(algebra)
    }

    fn cancellation_violations(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        for a in self.elements() {
            let mut seen: HashMap<ElementId, ElementId> = HashMap::new();
            for b in self.elements() {
                if let Some(c) = self.sum(a, b) {
                    if let Some(&b0) = seen.get(&c) {
                        out.push(AxiomViolation {
                            axiom: Axiom::Cancellation,
                            witness: vec![a, b0, b],
                            message: format!(
                                "{} ⊕ {} = {} ⊕ {} with distinct summands",
                                self.name(a),
                                self.name(b0),
                                self.name(a),
                                self.name(b)
                            ),
                        });
                    } else {
                        seen.insert(c, b);
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn id(&self, name: &str) -> Option<ElementId> {
        self.index.get(name).copied()
    }

    /// Resolves names, panicking on an unknown one. Meant for tests and
    /// catalog code where the names are literals.
    pub fn ids(&self, names: &[&str]) -> Vec<ElementId> {
        names
            .iter()
            .map(|s| self.id(s).unwrap_or_else(|| panic!("unknown element `{s}`")))
            .collect()
    }

    pub fn set_of(&self, names: &[&str]) -> ElementSet {
        self.ids(names).into_iter().collect()
    }

    pub fn set_names(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|x| self.name(x).to_string()).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.len()).map(ElementId::new)
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// `a ⊕ b`, or `None` when undefined.
    #[inline]
    pub fn sum(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.table[a.index() * self.len() + b.index()]
    }

    pub(crate) fn raw_table(&self) -> &[Option<ElementId>] {
        &self.table
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.down[b.index()].contains(a)
    }

    #[inline]
    pub fn perp(&self, a: ElementId, b: ElementId) -> bool {
        self.orth[a.index()].contains(b)
    }

    #[inline]
    pub fn complement(&self, a: ElementId) -> ElementId {
        self.comp[a.index()]
    }

    /// `b ⊖ a`, the unique `c` with `a ⊕ c = b`.
    pub fn ominus(&self, b: ElementId, a: ElementId) -> Result<ElementId, DomainError> {
        self.try_ominus(b, a).ok_or_else(|| DomainError::NotBelow {
            a: self.name(a).to_string(),
            b: self.name(b).to_string(),
        })
    }

    pub fn try_ominus(&self, b: ElementId, a: ElementId) -> Option<ElementId> {
        if !self.leq(a, b) {
            return None;
        }
        // a ⊕ c = b  iff  c = (a ⊕ b')'
        let c = self.sum(a, self.complement(b))?;
        Some(self.complement(c))
    }

    /// `{x : x ≤ b}`.
    #[inline]
    pub fn down(&self, b: ElementId) -> &ElementSet {
        &self.down[b.index()]
    }

    /// `{x : a ≤ x}`.
    #[inline]
    pub fn up(&self, a: ElementId) -> &ElementSet {
        &self.up[a.index()]
    }

    /// `{x : a ⊥ x}`, equivalently the down-set of `a'`.
    #[inline]
    pub fn orthogonal(&self, a: ElementId) -> &ElementSet {
        &self.orth[a.index()]
    }

    /// Greatest lower bound of `a` and `b`, if the bound set has a top.
    pub fn meet(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let lower = self.down(a).intersection(self.down(b));
        lower.iter().find(|&x| lower.is_subset(self.down(x)))
    }

    /// Least upper bound of `a` and `b`, if the bound set has a bottom.
    pub fn join(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        let upper = self.up(a).intersection(self.up(b));
        upper.iter().find(|&x| upper.is_subset(self.up(x)))
    }

    /// Elements covering zero.
    pub fn atoms(&self) -> ElementSet {
        self.elements()
            .filter(|&x| x != self.zero && self.down(x).len() == 2)
            .collect()
    }

    /// True iff `1 ∈ s` and `s` is closed under `⊖` of comparable pairs.
    pub fn is_sub_effect_algebra(&self, s: &ElementSet) -> bool {
        self.sub_effect_algebra_defect(s).is_none()
    }

    /// The first pair `(a, b)` with `b ≤ a` and `a ⊖ b ∉ s`, or `(1, 1)`
    /// when `1 ∉ s`.
    pub fn sub_effect_algebra_defect(&self, s: &ElementSet) -> Option<(ElementId, ElementId)> {
        if !s.contains(self.one) {
            return Some((self.one, self.one));
        }
        for a in s.iter() {
            for b in self.down(a).intersection(s).iter() {
                let d = self.try_ominus(a, b).expect("b ≤ a");
                if !s.contains(d) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Restricts the table to `s`, keeping sums whose result lies in `s`.
    ///
    /// For a sub-effect algebra this is the induced algebra. For other sets
    /// the result is validated like any table, so the error names the
    /// axiom that the restriction breaks.
    pub fn restrict(&self, s: &ElementSet) -> Result<EffectAlgebra, BuildError> {
        self.restrict_with_top(s, self.one)
    }

    /// Restriction with a different unit, used for intervals `[0, a]`.
    pub(crate) fn restrict_with_top(&self, s: &ElementSet, top: ElementId) -> Result<EffectAlgebra, BuildError> {
        let members = s.to_vec();
        if members.is_empty() {
            return Err(BuildError::Empty);
        }
        let mut local = vec![usize::MAX; self.len()];
        for (i, x) in members.iter().enumerate() {
            local[x.index()] = i;
        }
        let m = members.len();
        if !s.contains(self.zero) || !s.contains(top) {
            return Err(BuildError::Axioms(vec![AxiomViolation {
                axiom: Axiom::Zero,
                witness: vec![self.zero, top],
                message: "restriction must keep zero and the unit".to_string(),
            }]));
        }
        let mut table = vec![None; m * m];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if let Some(c) = self.sum(a, b) {
                    if s.contains(c) {
                        table[i * m + j] = Some(ElementId::new(local[c.index()]));
                    }
                }
            }
        }
        let names = members.iter().map(|&x| self.name(x).to_string()).collect();
        EffectAlgebra::from_table(
            names,
            ElementId::new(local[self.zero.index()]),
            ElementId::new(local[top.index()]),
            table,
        )
    }

    /// Maps a set of this algebra onto the ids of `other` by name.
    pub fn translate(&self, set: &ElementSet, other: &EffectAlgebra) -> Option<ElementSet> {
        set.iter().map(|x| other.id(self.name(x))).collect()
    }

    /// Every defined `a ⊕ b = c` with `a ≤ b` by id and neither summand
    /// zero, i.e. the canonical entry list of the text format.
    pub fn canonical_entries(&self) -> Vec<(ElementId, ElementId, ElementId)> {
        let mut out = Vec::new();
        for a in self.elements() {
            if a == self.zero {
                continue;
            }
            for b in self.elements().skip(a.index()) {
                if b == self.zero {
                    continue;
                }
                if let Some(c) = self.sum(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, ElementId>, BuildError> {
    if names.is_empty() {
        return Err(BuildError::Empty);
    }
    if names.len() > MAX_ELEMENTS {
        return Err(BuildError::TooLarge(names.len()));
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(BuildError::EmptyName);
        }
        if index.insert(name.clone(), ElementId::new(i)).is_some() {
            return Err(BuildError::DuplicateName(name.clone()));
        }
    }
    Ok(index)
}

/// Exhaustive E1-E4 check of a full table.
fn validate_table(
    names: &[String],
    zero: ElementId,
    one: ElementId,
    table: &[Option<ElementId>],
) -> Vec<AxiomViolation> {
    let n = names.len();
    let at = |a: usize, b: usize| table[a * n + b];
    let nm = |x: usize| names[x].as_str();
    let id = ElementId::new;
    let mut out = Vec::new();

    for a in 0..n {
        for b in a..n {
            if at(a, b) != at(b, a) {
                out.push(AxiomViolation {
                    axiom: Axiom::E1,
                    witness: vec![id(a), id(b)],
                    message: format!("{} ⊕ {} differs from {} ⊕ {}", nm(a), nm(b), nm(b), nm(a)),
                });
            }
        }
    }
    for a in 0..n {
        if at(zero.index(), a) != Some(id(a)) {
            out.push(AxiomViolation {
                axiom: Axiom::Zero,
                witness: vec![id(a)],
                message: format!("0 ⊕ {} is not {}", nm(a), nm(a)),
            });
        }
    }
    let mut e2 = 0;
    'outer: for a in 0..n {
        for b in 0..n {
            let Some(ab) = at(a, b) else { continue };
            for c in 0..n {
                let Some(abc) = at(ab.index(), c) else { continue };
                let ok = match at(b, c) {
                    Some(bc) => at(a, bc.index()) == Some(abc),
                    None => false,
                };
                if !ok {
                    out.push(AxiomViolation {
                        axiom: Axiom::E2,
                        witness: vec![id(a), id(b), id(c)],
                        message: format!(
                            "({} ⊕ {}) ⊕ {} = {} but {} ⊕ ({} ⊕ {}) is not",
                            nm(a),
                            nm(b),
                            nm(c),
                            nm(abc.index()),
                            nm(a),
                            nm(b),
                            nm(c)
                        ),
                    });
                    e2 += 1;
                    if e2 >= MAX_E2_REPORTS {
                        break 'outer;
                    }
                }
            }
        }
    }
    for a in 0..n {
        let comps: Vec<usize> = (0..n).filter(|&b| at(a, b) == Some(one)).collect();
        if comps.len() != 1 {
            let mut witness = vec![id(a)];
            witness.extend(comps.iter().take(2).map(|&b| id(b)));
            let message = if comps.is_empty() {
                format!("{} has no complement", nm(a))
            } else {
                format!("{} has {} complements", nm(a), comps.len())
            };
            out.push(AxiomViolation {
                axiom: Axiom::E3,
                witness,
                message,
            });
        }
    }
    for a in 0..n {
        if a != zero.index() && at(a, one.index()).is_some() {
            out.push(AxiomViolation {
                axiom: Axiom::E4,
                witness: vec![id(a)],
                message: format!("{} ⊕ 1 is defined but {} is not zero", nm(a), nm(a)),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r6() -> EffectAlgebra {
        EffectAlgebra::build(
            &["0", "a", "b", "a'", "b'", "1"],
            "0",
            "1",
            &[("a", "a", "a'"), ("b", "b", "a'"), ("a", "b", "b'"), ("a", "a'", "1"), ("b", "b'", "1")],
        )
        .unwrap()
    }

    #[test]
    fn two_chain() {
        let e = EffectAlgebra::build(&["0", "1"], "0", "1", &[("0", "0", "0")]).unwrap();
        assert_eq!(e.complement(e.one()), e.zero());
        assert_eq!(e.complement(e.zero()), e.one());
        assert!(e.leq(e.zero(), e.one()));
    }

    #[test]
    fn one_element_algebra_is_valid() {
        let e = EffectAlgebra::build::<_, &str>(&["0"], "0", "0", &[]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.complement(e.zero()), e.zero());
    }

    #[test]
    fn e4_violation_reports_one() {
        let err = EffectAlgebra::build(&["0", "1"], "0", "1", &[("1", "1", "1")]).unwrap_err();
        let v = err.violations();
        let e4: Vec<_> = v.iter().filter(|v| v.axiom == Axiom::E4).collect();
        assert_eq!(e4.len(), 1);
        assert_eq!(e4[0].witness, vec![ElementId::new(1)]);
    }

    #[test]
    fn conflicting_entries_are_table_violations() {
        let err = EffectAlgebra::build(&["0", "a", "1"], "0", "1", &[("a", "a", "1"), ("a", "a", "a")]).unwrap_err();
        assert_eq!(err.violations()[0].axiom, Axiom::Table);
        let err = EffectAlgebra::build(&["0", "a", "1"], "0", "1", &[("0", "a", "1")]).unwrap_err();
        assert_eq!(err.violations()[0].axiom, Axiom::Table);
    }

    #[test]
    fn missing_complement_is_e3() {
        let err = EffectAlgebra::build(&["0", "a", "1"], "0", "1", &[("0", "0", "0")]).unwrap_err();
        assert!(err.violations().iter().any(|v| v.axiom == Axiom::E3 && v.witness[0] == ElementId::new(1)));
    }

    #[test]
    fn associativity_failure_is_e2_and_replays() {
        // a' = b, c' = c, and a ⊕ c = b makes (c ⊕ a) ⊕ a = 1 while c ⊕ (a ⊕ a)
        // is undefined.
        let names = ["0", "a", "b", "c", "1"];
        let entries = [("a", "a", "b"), ("a", "b", "1"), ("c", "c", "1"), ("a", "c", "b")];
        let err = EffectAlgebra::build(&names, "0", "1", &entries).unwrap_err();
        let e2: Vec<_> = err.violations().iter().filter(|v| v.axiom == Axiom::E2).collect();
        assert!(!e2.is_empty());
        // replay on a raw mirrored table
        let idx = |s: &str| names.iter().position(|&x| x == s).unwrap();
        let mut t = vec![vec![None; 5]; 5];
        for (x, row) in t.iter_mut().enumerate() {
            row[0] = Some(x);
        }
        t[0] = (0..5).map(Some).collect();
        for (a, b, c) in entries {
            t[idx(a)][idx(b)] = Some(idx(c));
            t[idx(b)][idx(a)] = Some(idx(c));
        }
        for v in e2 {
            let [a, b, c] = [v.witness[0].index(), v.witness[1].index(), v.witness[2].index()];
            let abc = t[t[a][b].unwrap()][c].unwrap();
            let rhs = t[b][c].and_then(|bc| t[a][bc]);
            assert_ne!(rhs, Some(abc));
        }
    }

    #[test]
    fn unknown_and_duplicate_names() {
        assert_eq!(
            EffectAlgebra::build(&["0", "1"], "0", "x", &[("0", "0", "0")]).unwrap_err(),
            BuildError::UnknownName("x".into())
        );
        assert_eq!(
            EffectAlgebra::build(&["0", "0"], "0", "0", &[("0", "0", "0")]).unwrap_err(),
            BuildError::DuplicateName("0".into())
        );
    }

    #[test]
    fn r6_table_and_order() {
        let e = r6();
        let [z, a, b, a_, b_, one] = e.ids(&["0", "a", "b", "a'", "b'", "1"])[..] else { unreachable!() };
        assert!(e.leq(a, a_));
        assert!(!e.leq(a_, b));
        assert!(e.leq(z, b_));
        assert_eq!(e.ominus(one, a).unwrap(), a_);
        assert_eq!(e.ominus(a_, a).unwrap(), a);
        assert_eq!(e.ominus(b_, b).unwrap(), a);
        assert!(e.ominus(b, a).is_err());
        assert!(e.perp(a, b));
        assert_eq!(e.meet(a, b), Some(z));
        assert_eq!(e.complement(b), b_);
        // a ⊕ b' would be a ⊕ a ⊕ b = a' ⊕ b, which nothing supports.
        assert_eq!(e.sum(a, b_), None);
        assert_eq!(e.atoms(), e.set_of(&["a", "b"]));
        for x in e.elements() {
            assert_eq!(e.ominus(x, x).unwrap(), z);
            assert_eq!(e.perp(one, x), x == z);
            assert_eq!(e.meet(x, one), Some(x));
        }
    }

    #[test]
    fn restrict_reports_broken_closure() {
        let e = r6();
        assert!(e.restrict(&e.set_of(&["0", "a", "1"])).is_err());
        assert!(!e.is_sub_effect_algebra(&e.set_of(&["0", "a", "1"])));
        assert!(e.is_sub_effect_algebra(&e.set_of(&["0", "1"])));
        assert!(e.is_sub_effect_algebra(&e.carrier()));
    }
}
