//! Orthogonal families, orthogonal covers, compatibility and the closure
//! operator `M ↦ M̄`.
//!
//! Families are handled in canonical form: zero members are dropped and the
//! remaining members are sorted by id. Zero adds nothing to any sum, and the
//! sum of an orthogonal family does not depend on the order of its members,
//! so this loses no cover. Every canonical family has at most
//! [`chain_height`] members because its partial sums form a strictly
//! increasing chain.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::EffectAlgebra;
use crate::element::{ElementId, ElementSet};

/// Node limit for exponential searches. Exhausting it is reported as
/// [`SearchError::BudgetExceeded`], never as a negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: Option<u64>,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 20_000_000;

    pub fn nodes(limit: u64) -> Self {
        Budget { limit: Some(limit) }
    }

    pub fn unlimited() -> Self {
        Budget { limit: None }
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            used: 0,
            limit: self.limit,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(Self::DEFAULT_NODES)
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },
}

pub(crate) struct Meter {
    used: u64,
    limit: Option<u64>,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), SearchError> {
        self.used += 1;
        match self.limit {
            Some(limit) if self.used > limit => Err(SearchError::BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }
}

/// A finite orthogonal family `(c₁, …, cₙ)` together with its sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthogonalFamily {
    members: Vec<ElementId>,
    total: ElementId,
}

impl OrthogonalFamily {
    /// `None` when the iterated sum is undefined.
    pub fn new(e: &EffectAlgebra, members: Vec<ElementId>) -> Option<Self> {
        let total = family_sum(e, &members)?;
        Some(OrthogonalFamily { members, total })
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn total(&self) -> ElementId {
        self.total
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Ran(C)`.
    pub fn range(&self) -> ElementSet {
        self.members.iter().copied().collect()
    }

    /// Zero members removed, the rest sorted by id.
    pub fn canonical(&self, e: &EffectAlgebra) -> OrthogonalFamily {
        let mut members: Vec<ElementId> = self.members.iter().copied().filter(|&x| x != e.zero()).collect();
        members.sort();
        OrthogonalFamily {
            members,
            total: self.total,
        }
    }

    /// Sum of the members at `indices`; defined for every index set.
    pub fn sub_sum(&self, e: &EffectAlgebra, indices: &[usize]) -> Option<ElementId> {
        family_sum(e, &indices.iter().map(|&i| self.members.get(i).copied()).collect::<Option<Vec<_>>>()?)
    }

    pub fn names(&self, e: &EffectAlgebra) -> Vec<String> {
        self.members.iter().map(|&x| e.name(x).to_string()).collect()
    }
}

/// `c₁ ⊕ … ⊕ cₙ` as a left fold; the empty family sums to zero.
pub fn family_sum(e: &EffectAlgebra, members: &[ElementId]) -> Option<ElementId> {
    members.iter().try_fold(e.zero(), |acc, &x| e.sum(acc, x))
}

/// Number of strict steps in the longest chain from 0 to 1.
pub fn chain_height(e: &EffectAlgebra) -> usize {
    let mut order: Vec<ElementId> = e.elements().collect();
    order.sort_by_key(|&x| e.down(x).len());
    let mut height = vec![0usize; e.len()];
    for &x in &order {
        height[x.index()] = e
            .down(x)
            .iter()
            .filter(|&y| y != x)
            .map(|y| height[y.index()] + 1)
            .max()
            .unwrap_or(0);
    }
    height[e.one().index()]
}

/// `fine` refines `coarse` along `partition`: the blocks of `partition`
/// split the fine indices and `coarse[i]` is the sum of block `i`.
pub fn is_refinement(
    e: &EffectAlgebra,
    fine: &OrthogonalFamily,
    coarse: &OrthogonalFamily,
    partition: &[Vec<usize>],
) -> bool {
    if partition.len() != coarse.len() {
        return false;
    }
    let mut seen = vec![false; fine.len()];
    for block in partition {
        for &j in block {
            if j >= fine.len() || seen[j] {
                return false;
            }
            seen[j] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    partition
        .iter()
        .zip(coarse.members())
        .all(|(block, &c)| fine.sub_sum(e, block) == Some(c))
}

/// Iterator over every canonical orthogonal family with members in a set.
///
/// Families are multisets of nonzero elements in nondecreasing id order,
/// each produced once. Order is depth-first post-order: a family comes after
/// all of its extensions, so maximal families are met first.
pub struct Families<'a> {
    algebra: &'a EffectAlgebra,
    candidates: Vec<ElementId>,
    max_len: usize,
    // (candidate index of the member, running total, next child cursor)
    stack: Vec<(usize, ElementId, usize)>,
    root_cursor: usize,
    done: bool,
}

impl Iterator for Families<'_> {
    type Item = OrthogonalFamily;

    fn next(&mut self) -> Option<OrthogonalFamily> {
        if self.done {
            return None;
        }
        loop {
            let (total, cursor) = match self.stack.last() {
                Some(&(_, total, cursor)) => (total, cursor),
                None => (self.algebra.zero(), self.root_cursor),
            };
            let child = if self.stack.len() < self.max_len {
                (cursor..self.candidates.len()).find(|&i| self.algebra.perp(total, self.candidates[i]))
            } else {
                None
            };
            match child {
                Some(i) => {
                    match self.stack.last_mut() {
                        Some(top) => top.2 = i + 1,
                        None => self.root_cursor = i + 1,
                    }
                    let t = self.algebra.sum(total, self.candidates[i]).expect("perp");
                    self.stack.push((i, t, i));
                }
                None => {
                    if self.stack.is_empty() {
                        self.done = true;
                        return None;
                    }
                    let members = self.stack.iter().map(|&(i, _, _)| self.candidates[i]).collect();
                    let (_, total, _) = self.stack.pop().expect("nonempty");
                    return Some(OrthogonalFamily { members, total });
                }
            }
        }
    }
}

/// Every canonical orthogonal family over `range_within` with at most
/// `max_len` members (default: [`chain_height`]).
pub fn enumerate_families<'a>(
    e: &'a EffectAlgebra,
    range_within: &ElementSet,
    max_len: Option<usize>,
) -> Families<'a> {
    let mut within = *range_within;
    within.remove(e.zero());
    Families {
        algebra: e,
        candidates: within.to_vec(),
        max_len: max_len.unwrap_or_else(|| chain_height(e)),
        stack: Vec::new(),
        root_cursor: 0,
        done: false,
    }
}

/// An orthogonal cover of a finite set together with, for each covered
/// element, the indices of the family members summing to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub family: OrthogonalFamily,
    pub assignment: Vec<(ElementId, Vec<usize>)>,
    pub range_within: ElementSet,
}

impl CoverCertificate {
    /// Re-sums every assignment and checks `Ran(C) ⊆ X`.
    pub fn verify(&self, e: &EffectAlgebra) -> bool {
        family_sum(e, self.family.members()) == Some(self.family.total())
            && self.family.range().is_subset(&self.range_within)
            && self
                .assignment
                .iter()
                .all(|(x, idx)| idx.windows(2).all(|w| w[0] < w[1]) && self.family.sub_sum(e, idx) == Some(*x))
    }

    pub fn covered(&self) -> ElementSet {
        self.assignment.iter().map(|(x, _)| *x).collect()
    }

    pub fn to_json(&self, e: &EffectAlgebra) -> CoverJson {
        CoverJson {
            family: self.family.names(e),
            total: e.name(self.family.total()).to_string(),
            assignment: self
                .assignment
                .iter()
                .map(|(x, idx)| (e.name(*x).to_string(), idx.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverJson {
    pub family: Vec<String>,
    pub total: String,
    pub assignment: Vec<(String, Vec<usize>)>,
}

/// Nonzero members of `x` that are not the sum of two nonzero members of `x`.
pub fn irreducibles(e: &EffectAlgebra, x: &ElementSet) -> ElementSet {
    let mut within = *x;
    within.remove(e.zero());
    let mut out = within;
    for y in within.iter() {
        for z in within.intersection(e.orthogonal(y)).iter() {
            if let Some(s) = e.sum(y, z) {
                out.remove(s);
            }
        }
    }
    out
}

/// Searches for an orthogonal cover of `m` with range inside `range_within`.
///
/// Only families of elements irreducible within `range_within` are tried:
/// splitting a member `f = f₁ ⊕ f₂` with `f₁, f₂` in the range set keeps the
/// family orthogonal and only adds subset sums, so some cover exists iff one
/// made of irreducibles does. The first cover in post-order wins.
pub fn find_cover(
    e: &EffectAlgebra,
    m: &ElementSet,
    range_within: &ElementSet,
    budget: Budget,
) -> Result<Option<CoverCertificate>, SearchError> {
    let candidates = irreducibles(e, range_within).to_vec();
    let mut search = CoverSearch {
        e,
        target: *m,
        candidates: &candidates,
        max_len: chain_height(e),
        path: Vec::new(),
        meter: budget.meter(),
    };
    let start = ElementSet::singleton(e.zero());
    let Some(members) = search.dfs(0, e.zero(), start)? else {
        return Ok(None);
    };
    let family = OrthogonalFamily::new(e, members).expect("search keeps families orthogonal");
    let assignment = m
        .iter()
        .map(|x| {
            let idx = least_index_set(e, &family, x).expect("subset sum was recorded");
            (x, idx)
        })
        .collect();
    Ok(Some(CoverCertificate {
        family,
        assignment,
        range_within: *range_within,
    }))
}

struct CoverSearch<'a> {
    e: &'a EffectAlgebra,
    target: ElementSet,
    candidates: &'a [ElementId],
    max_len: usize,
    path: Vec<ElementId>,
    meter: Meter,
}

impl CoverSearch<'_> {
    fn dfs(&mut self, from: usize, total: ElementId, sums: ElementSet) -> Result<Option<Vec<ElementId>>, SearchError> {
        self.meter.tick()?;
        if self.path.len() < self.max_len {
            for i in from..self.candidates.len() {
                let c = self.candidates[i];
                let Some(t) = self.e.sum(total, c) else { continue };
                let mut next = sums;
                for s in sums.iter() {
                    next.insert(self.e.sum(s, c).expect("sub-sums of an orthogonal family are orthogonal"));
                }
                self.path.push(c);
                let found = self.dfs(i, t, next)?;
                self.path.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        if self.target.is_subset(&sums) {
            return Ok(Some(self.path.clone()));
        }
        Ok(None)
    }
}

/// Lexicographically least sorted index list whose members sum to `x`.
fn least_index_set(e: &EffectAlgebra, family: &OrthogonalFamily, x: ElementId) -> Option<Vec<usize>> {
    fn go(
        e: &EffectAlgebra,
        members: &[ElementId],
        x: ElementId,
        start: usize,
        acc: ElementId,
        prefix: &mut Vec<usize>,
    ) -> bool {
        if acc == x {
            return true;
        }
        for i in start..members.len() {
            let Some(s) = e.sum(acc, members[i]) else { continue };
            if !e.leq(s, x) {
                continue;
            }
            prefix.push(i);
            if go(e, members, x, i + 1, s, prefix) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    let mut prefix = Vec::new();
    go(e, family.members(), x, 0, e.zero(), &mut prefix).then_some(prefix)
}

/// `M` is compatible: it has an orthogonal cover anywhere in `E`.
pub fn is_compatible_set(e: &EffectAlgebra, m: &ElementSet, budget: Budget) -> Result<Option<CoverCertificate>, SearchError> {
    find_cover(e, m, &e.carrier(), budget)
}

/// `M` is internally compatible: it has an orthogonal cover inside itself.
/// For finite `M` a single cover of `M` serves every finite subset.
pub fn is_internally_compatible(
    e: &EffectAlgebra,
    m: &ElementSet,
    budget: Budget,
) -> Result<Option<CoverCertificate>, SearchError> {
    find_cover(e, m, m, budget)
}

/// A witness `(a₁, b₁, c)` of `a ↔ b`: `a₁ ⊕ c = a`, `b₁ ⊕ c = b` and
/// `a₁ ⊕ b₁ ⊕ c` exists. Lexicographically least by id.
pub fn mutually_compatible(e: &EffectAlgebra, a: ElementId, b: ElementId) -> Option<(ElementId, ElementId, ElementId)> {
    e.down(a)
        .intersection(e.down(b))
        .iter()
        .filter_map(|c| {
            let a1 = e.try_ominus(a, c)?;
            let b1 = e.try_ominus(b, c)?;
            e.sum(a1, b1).and_then(|s| e.sum(s, c))?;
            Some((a1, b1, c))
        })
        .min()
}

pub fn is_mutually_compatible_set(e: &EffectAlgebra, m: &ElementSet) -> bool {
    let xs = m.to_vec();
    xs.iter()
        .enumerate()
        .all(|(i, &a)| xs[i + 1..].iter().all(|&b| mutually_compatible(e, a, b).is_some()))
}

/// Least superset of `m` closed under adding `x` and `y ⊖ x` whenever
/// `x ≤ y, y'` for some `y` in the set.
pub fn closure(e: &EffectAlgebra, m: &ElementSet) -> ElementSet {
    let mut current = *m;
    let mut frontier = *m;
    while !frontier.is_empty() {
        let mut added = ElementSet::new();
        for y in frontier.iter() {
            let below = e.down(y).intersection(e.down(e.complement(y)));
            for x in below.iter() {
                let d = e.try_ominus(y, x).expect("x ≤ y");
                for z in [x, d] {
                    if !current.contains(z) {
                        added.insert(z);
                    }
                }
            }
        }
        current = current.union(&added);
        frontier = added;
    }
    current
}
